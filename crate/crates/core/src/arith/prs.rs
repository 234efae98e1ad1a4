//! Gcd in `ℚ(s)[t]` computed by a primitive pseudo-remainder sequence in
//! `ℚ[s][t]`. Field Euclid over `ℚ(s)` swells the coefficients badly.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed};

use super::{Field, RatFn, Rational, UniPoly};

type Coeff = UniPoly<Rational>;

/// Monic gcd of two polynomials over `ℚ(s)`.
pub(super) fn gcd(a: &UniPoly<RatFn<Rational>>, b: &UniPoly<RatFn<Rational>>) -> UniPoly<RatFn<Rational>> {
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    let (mut p, mut r) = (primitive(clear_denominators(a)), primitive(clear_denominators(b)));
    if p.len() < r.len() {
        std::mem::swap(&mut p, &mut r);
    }
    while !r.is_empty() {
        let rem = pseudo_remainder(&p, &r);
        p = r;
        r = if rem.is_empty() { rem } else { primitive(rem) };
    }
    if p.len() == 1 {
        return UniPoly::one();
    }
    UniPoly::from_coeffs(p.into_iter().map(RatFn::from_poly).collect()).monic()
}

fn clear_denominators(a: &UniPoly<RatFn<Rational>>) -> Vec<Coeff> {
    let common = a.coeffs().iter().fold(Coeff::one(), |l, c| {
        let g = Rational::poly_gcd(&l, c.denom());
        l.mul(&c.denom().exact_div(&g))
    });
    a.coeffs()
        .iter()
        .map(|c| c.numer().mul(&common.exact_div(c.denom())))
        .collect()
}

/// Divides out the content in `ℚ[s]` and scales to coprime integers.
fn primitive(mut v: Vec<Coeff>) -> Vec<Coeff> {
    let content = v.iter().filter(|c| !c.is_zero()).fold(Coeff::zero(), |g, c| {
        if g.is_zero() {
            c.monic()
        } else {
            Rational::poly_gcd(&g, c)
        }
    });
    if !content.is_one() {
        for c in &mut v {
            *c = c.exact_div(&content);
        }
    }
    let (mut den_lcm, mut num_gcd) = (BigInt::one(), BigInt::from(0));
    for r in v.iter().flat_map(|c| c.coeffs()) {
        den_lcm = den_lcm.lcm(r.denom());
        num_gcd = num_gcd.gcd(r.numer());
    }
    if num_gcd.is_positive() {
        let factor = Rational::new(den_lcm, num_gcd);
        if !One::is_one(&factor) {
            for c in &mut v {
                *c = c.scale(&factor);
            }
        }
    }
    v
}

fn trim(v: &mut Vec<Coeff>) {
    while v.last().is_some_and(Coeff::is_zero) {
        v.pop();
    }
}

/// A remainder of `p` by `r` up to a factor in `ℚ[s]`.
fn pseudo_remainder(p: &[Coeff], r: &[Coeff]) -> Vec<Coeff> {
    let lead = r.last().expect("nonzero divisor");
    let mut p = p.to_vec();
    while p.len() >= r.len() {
        let shift = p.len() - r.len();
        let lp = p.last().expect("nonempty").clone();
        for c in &mut p {
            *c = c.mul(lead);
        }
        for (i, rc) in r.iter().enumerate() {
            p[i + shift] = p[i + shift].sub(&lp.mul(rc));
        }
        trim(&mut p);
    }
    p
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::Ring;

    fn q_poly(c: &[i64]) -> RatFn<Rational> {
        RatFn::from_poly(UniPoly::from_coeffs(c.iter().map(|&n| Rational::from_i64(n)).collect()))
    }

    #[test]
    fn agrees_with_field_euclid() {
        // (t + s)(t − 1) and (t + s)(s·t + 2) share t + s.
        let s_plus = UniPoly::from_coeffs(vec![q_poly(&[0, 1]), q_poly(&[1])]);
        let a = s_plus.mul(&UniPoly::from_coeffs(vec![q_poly(&[-1]), q_poly(&[1])]));
        let b = s_plus.mul(&UniPoly::from_coeffs(vec![q_poly(&[2]), q_poly(&[0, 1])]));
        assert_eq!(gcd(&a, &b), s_plus);
        assert_eq!(gcd(&a, &b), a.gcd(&b));
        let c = UniPoly::from_coeffs(vec![q_poly(&[1, 1]), q_poly(&[0, 0, 1])]);
        assert_eq!(gcd(&a, &c), UniPoly::one());
        assert_eq!(gcd(&a, &UniPoly::zero()), a.monic());
    }
}
