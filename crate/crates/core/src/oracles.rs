//! Reference implementations that share no code path with the main
//! algorithms, used to cross-check them.
//!
//! [`bounded_degree_member`] decides whether `p` lies in the span of all
//! products `t·g` with `t` a monomial and `deg(t·g) ≤ D`. That span is
//! contained in the ideal, so a positive answer is a membership
//! certificate. For homogeneous generators and homogeneous `p` with
//! `D ≥ deg p` the answer is exact.

use std::collections::BTreeMap;

use crate::arith::{Field, Ring};
use crate::base_field::RatFunc;
use crate::mpoly::{MPoly, Monomial, Var};

/// All monomials in `vars` of total degree at most `degree`.
pub fn monomials_up_to(vars: &[Var], degree: u32) -> Vec<Monomial> {
    fn extend(vars: &[Var], left: u32, prefix: &mut Vec<(Var, u32)>, out: &mut Vec<Monomial>) {
        match vars.split_first() {
            None => out.push(Monomial::from_powers(prefix.clone())),
            Some((&v, rest)) => {
                for e in 0..=left {
                    prefix.push((v, e));
                    extend(rest, left - e, prefix, out);
                    prefix.pop();
                }
            }
        }
    }
    let mut out = Vec::new();
    extend(vars, degree, &mut Vec::new(), &mut out);
    out
}

/// Row-echelon basis of a row space, keyed by pivot column.
#[derive(Default)]
struct Echelon {
    rows: BTreeMap<usize, Vec<RatFunc>>,
}

impl Echelon {
    /// Reduces `row` against the stored pivots; returns the residue.
    fn reduce(&self, mut row: Vec<RatFunc>) -> Vec<RatFunc> {
        for (&pivot, basis_row) in &self.rows {
            if row[pivot].is_zero() {
                continue;
            }
            let factor = row[pivot].clone();
            for (entry, b) in row.iter_mut().zip(basis_row) {
                if !b.is_zero() {
                    *entry = entry.sub(&factor.mul(b));
                }
            }
        }
        row
    }

    fn insert(&mut self, row: Vec<RatFunc>) {
        let row = self.reduce(row);
        let Some(pivot) = row.iter().position(|c| !c.is_zero()) else {
            return;
        };
        let inv = row[pivot].inv().expect("nonzero pivot");
        let row: Vec<RatFunc> = row.iter().map(|c| c.mul(&inv)).collect();
        // Keep the stored rows fully reduced so one pass suffices.
        for other in self.rows.values_mut() {
            if !other[pivot].is_zero() {
                let factor = other[pivot].clone();
                for (entry, b) in other.iter_mut().zip(&row) {
                    if !b.is_zero() {
                        *entry = entry.sub(&factor.mul(b));
                    }
                }
            }
        }
        self.rows.insert(pivot, row);
    }

    fn rank(&self) -> usize {
        self.rows.len()
    }
}

/// The span of `t·g` over all monomials `t` and generators `g` with
/// `deg(t·g) ≤ degree`, in the variables given at construction.
pub struct BoundedSpan {
    degree: u32,
    columns: BTreeMap<Monomial, usize>,
    span: Echelon,
}

impl BoundedSpan {
    pub fn new(gens: &[MPoly], vars: &[Var], degree: u32) -> Self {
        let columns: BTreeMap<Monomial, usize> = monomials_up_to(vars, degree)
            .into_iter()
            .enumerate()
            .map(|(i, m)| (m, i))
            .collect();
        let mut out = BoundedSpan {
            degree,
            columns,
            span: Echelon::default(),
        };
        for g in gens.iter().filter(|g| !g.is_zero()) {
            let Some(room) = degree.checked_sub(g.total_degree()) else {
                continue;
            };
            for t in monomials_up_to(vars, room) {
                let row = out
                    .dense(&g.mul_term(&RatFunc::one(), &t))
                    .expect("generator variables are listed");
                out.span.insert(row);
            }
        }
        out
    }

    fn dense(&self, poly: &MPoly) -> Option<Vec<RatFunc>> {
        let mut row = vec![RatFunc::zero(); self.columns.len()];
        for (m, c) in poly.terms() {
            row[*self.columns.get(m)?] = c.clone();
        }
        Some(row)
    }

    pub fn dim(&self) -> usize {
        self.span.rank()
    }

    /// Whether `p` lies in the span; `false` when `p` has a monomial
    /// outside the truncation.
    pub fn contains(&self, p: &MPoly) -> bool {
        if p.total_degree() > self.degree {
            return false;
        }
        match self.dense(p) {
            Some(row) => self.span.reduce(row).iter().all(RatFunc::is_zero),
            None => false,
        }
    }
}

/// `p ∈ span{ t·g : g ∈ gens, t monomial, deg(t·g) ≤ degree }`.
pub fn bounded_degree_member(p: &MPoly, gens: &[MPoly], degree: u32) -> bool {
    if p.is_zero() {
        return true;
    }
    let mut vars: Vec<Var> = gens.iter().flat_map(MPoly::variables).chain(p.variables()).collect();
    vars.sort();
    vars.dedup();
    BoundedSpan::new(gens, &vars, degree).contains(p)
}

/// Smallest certificate degree in `deg p ..= max_degree`, if any.
pub fn member_certificate_degree(p: &MPoly, gens: &[MPoly], max_degree: u32) -> Option<u32> {
    (p.total_degree()..=max_degree).find(|&d| bounded_degree_member(p, gens, d))
}
