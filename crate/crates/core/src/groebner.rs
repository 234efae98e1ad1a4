//! Buchberger's algorithm over the carrier field with the product and
//! chain criteria, producing the reduced Gröbner basis in degrevlex.

use std::collections::BTreeSet;

use crate::arith::{Field, Ring};
use crate::error::{Error, Result};
use crate::mpoly::{MPoly, Monomial};

/// Full normal form of `p` modulo `basis` (every term reduced).
pub fn normal_form(p: &MPoly, basis: &[MPoly]) -> MPoly {
    let mut rest = p.clone();
    let mut remainder = MPoly::zero();
    while let Some((lm, lc)) = rest.leading_term().map(|(m, c)| (m.clone(), c.clone())) {
        let divisor = basis.iter().find_map(|g| {
            let (glm, glc) = g.leading_term()?;
            glm.quotient_of(&lm).map(|q| (g, glc, q))
        });
        match divisor {
            Some((g, glc, q)) => {
                let factor = lc.div(glc).expect("nonzero leading coefficient");
                rest = rest.sub(&g.mul_term(&factor, &q));
            }
            None => {
                let t = MPoly::term(lc, lm);
                rest = rest.sub(&t);
                remainder = remainder.add(&t);
            }
        }
    }
    remainder
}

fn s_polynomial(f: &MPoly, g: &MPoly) -> MPoly {
    let (flm, flc) = f.leading_term().expect("nonzero");
    let (glm, glc) = g.leading_term().expect("nonzero");
    let lcm = flm.lcm(glm);
    let a = flm.quotient_of(&lcm).expect("lcm is a multiple");
    let b = glm.quotient_of(&lcm).expect("lcm is a multiple");
    let fa = f.mul_term(&flc.inv().expect("nonzero"), &a);
    let gb = g.mul_term(&glc.inv().expect("nonzero"), &b);
    fa.sub(&gb)
}

fn lm(p: &MPoly) -> &Monomial {
    p.leading_monomial().expect("basis elements are nonzero")
}

/// Reduced Gröbner basis of the ideal generated by `generators`, sorted by
/// leading monomial. At most `budget` S-polynomials are reduced; past that
/// the computation stops with [`Error::BudgetExceeded`].
pub fn groebner_basis(generators: &[MPoly], budget: usize) -> Result<Vec<MPoly>> {
    let mut basis: Vec<MPoly> = Vec::new();
    for g in generators {
        let r = normal_form(g, &basis);
        if !r.is_zero() {
            basis.push(r.monic());
        }
    }
    if basis.iter().any(|g| g.leading_monomial().is_some_and(Monomial::is_one)) {
        return Ok(vec![MPoly::one()]);
    }

    let mut pairs: BTreeSet<(usize, usize)> = BTreeSet::new();
    for j in 0..basis.len() {
        for i in 0..j {
            pairs.insert((i, j));
        }
    }
    let mut reductions = 0usize;
    while !pairs.is_empty() {
        // Normal selection strategy: the pair with the smallest lcm.
        let &(i, j) = pairs
            .iter()
            .min_by(|&&(a, b), &&(c, d)| lm(&basis[a]).lcm(lm(&basis[b])).cmp(&lm(&basis[c]).lcm(lm(&basis[d]))))
            .expect("nonempty");
        pairs.remove(&(i, j));

        let (li, lj) = (lm(&basis[i]), lm(&basis[j]));
        if li.is_coprime(lj) {
            continue;
        }
        let lcm = li.lcm(lj);
        let key = |a: usize, b: usize| (a.min(b), a.max(b));
        let chain = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && lm(&basis[k]).divides(&lcm)
                && !pairs.contains(&key(i, k))
                && !pairs.contains(&key(j, k))
        });
        if chain {
            continue;
        }

        reductions += 1;
        if reductions > budget {
            return Err(Error::BudgetExceeded { budget });
        }
        let r = normal_form(&s_polynomial(&basis[i], &basis[j]), &basis);
        if r.is_zero() {
            continue;
        }
        let r = r.monic();
        if lm(&r).is_one() {
            return Ok(vec![MPoly::one()]);
        }
        let n = basis.len();
        basis.push(r);
        for k in 0..n {
            pairs.insert((k, n));
        }
    }
    Ok(reduce_basis(basis))
}

/// Minimizes and interreduces a Gröbner basis.
fn reduce_basis(basis: Vec<MPoly>) -> Vec<MPoly> {
    let mut minimal: Vec<MPoly> = Vec::new();
    for (i, g) in basis.iter().enumerate() {
        let redundant = basis
            .iter()
            .enumerate()
            .any(|(k, h)| k != i && lm(h).divides(lm(g)) && (lm(h) != lm(g) || k < i));
        if !redundant {
            minimal.push(g.clone());
        }
    }
    let mut reduced = Vec::with_capacity(minimal.len());
    for i in 0..minimal.len() {
        let others: Vec<MPoly> = minimal
            .iter()
            .enumerate()
            .filter(|&(k, _)| k != i)
            .map(|(_, h)| h.clone())
            .collect();
        reduced.push(normal_form(&minimal[i], &others).monic());
    }
    reduced.sort_by(|a, b| lm(a).cmp(lm(b)));
    reduced
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::base_field::OperatorSpec;

    fn p(s: &str) -> MPoly {
        MPoly::parse(&OperatorSpec::shift(), s).unwrap()
    }

    fn basis(gens: &[&str]) -> Vec<String> {
        let gens: Vec<MPoly> = gens.iter().map(|s| p(s)).collect();
        groebner_basis(&gens, 1000).unwrap().iter().map(MPoly::render).collect()
    }

    #[test]
    fn small_bases() {
        assert_eq!(basis(&["Y12", "Y21"]), ["Y21", "Y12"]);
        assert_eq!(basis(&["Y11 - 1", "Y11*Y22 - 1"]), ["Y22 - 1", "Y11 - 1"]);
        assert!(basis(&[]).is_empty());
        assert_eq!(basis(&["Y11 - 1", "Y11 - 2"]), ["1"]);
        assert_eq!(basis(&["2*Y11^2 - 2", "Y11^3 - Y11"]), ["Y11^2 - 1"]);
    }

    #[test]
    fn classic_example() {
        // x² − y, x³ − x over ℚ: the basis is {y² − y, xy − x, x² − y}
        // with x = Y11 > y = Y12.
        assert_eq!(
            basis(&["Y11^2 - Y12", "Y11^3 - Y11"]),
            ["Y12^2 - Y12", "Y11*Y12 - Y11", "Y11^2 - Y12"]
        );
    }

    #[test]
    fn rational_function_coefficients() {
        // (x+1)·Y11 − x and Y11·Y12 − 1 give Y11 = x/(x+1), Y12 = (x+1)/x.
        let b = basis(&["(x+1)*Y11 - x", "Y11*Y12 - 1"]);
        assert_eq!(b, ["Y12 - (x + 1)/x", "Y11 - x/(x + 1)"]);
    }

    #[test]
    fn budget_is_enforced() {
        let gens = [p("Y11^2 - Y12"), p("Y11^3 - Y11")];
        assert_eq!(groebner_basis(&gens, 1), Err(Error::BudgetExceeded { budget: 1 }));
        assert!(groebner_basis(&gens, 10).is_ok());
    }

    #[test]
    fn normal_forms() {
        let g = groebner_basis(&[p("Y12"), p("Y21")], 10).unwrap();
        assert!(normal_form(&p("Y12*Y22"), &g).is_zero());
        assert_eq!(normal_form(&p("Y11 + Y12"), &g), p("Y11"));
    }
}
