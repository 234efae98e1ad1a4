//! Coprimality certificates by reduction modulo a prime.
//!
//! If `a` and `b` keep their degrees under a ring map to `F_p[t]` and their
//! images are coprime there, then `a` and `b` are coprime. The converse
//! can fail, so a negative answer only means "unknown".

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::{RatFn, Rational, UniPoly};

const P: u64 = (1 << 61) - 1;
/// Evaluation points for `s` in `ℚ(s)`; fixed so results are reproducible.
const S_POINTS: [u64; 2] = [1_000_003, 7_919_011];

fn mul(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % P as u128) as u64
}

fn add(a: u64, b: u64) -> u64 {
    (a + b) % P
}

fn sub(a: u64, b: u64) -> u64 {
    (a + P - b) % P
}

fn pow(mut a: u64, mut e: u64) -> u64 {
    let mut acc = 1;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul(acc, a);
        }
        a = mul(a, a);
        e >>= 1;
    }
    acc
}

fn inv(a: u64) -> u64 {
    pow(a, P - 2)
}

fn int_mod(n: &BigInt) -> u64 {
    let p = BigInt::from(P);
    let r = ((n % &p) + &p) % &p;
    r.to_u64().expect("reduced below p")
}

fn rational_mod(r: &Rational) -> Option<u64> {
    let d = int_mod(r.denom());
    (d != 0).then(|| mul(int_mod(r.numer()), inv(d)))
}

fn eval_mod(p: &UniPoly<Rational>, s: u64) -> Option<u64> {
    p.coeffs()
        .iter()
        .rev()
        .try_fold(0, |acc, c| Some(add(mul(acc, s), rational_mod(c)?)))
}

fn qfunc_mod(f: &RatFn<Rational>, s: u64) -> Option<u64> {
    let d = eval_mod(f.denom(), s)?;
    (d != 0).then_some(())?;
    Some(mul(eval_mod(f.numer(), s)?, inv(d)))
}

/// Image with its degree intact, or `None` when the reduction is unlucky.
fn image<F: super::Field>(p: &UniPoly<F>, reduce: impl Fn(&F) -> Option<u64>) -> Option<Vec<u64>> {
    let v = p.coeffs().iter().map(reduce).collect::<Option<Vec<u64>>>()?;
    (v.last().is_some_and(|&c| c != 0)).then_some(v)
}

fn trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

/// Degree of `gcd(a, b)` in `F_p[t]`; both inputs nonzero.
fn gcd_degree(mut a: Vec<u64>, mut b: Vec<u64>) -> usize {
    trim(&mut a);
    trim(&mut b);
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    while !b.is_empty() {
        let lead_inv = inv(*b.last().expect("nonempty"));
        while a.len() >= b.len() {
            let shift = a.len() - b.len();
            let f = mul(*a.last().expect("nonempty"), lead_inv);
            for (i, &c) in b.iter().enumerate() {
                a[i + shift] = sub(a[i + shift], mul(f, c));
            }
            trim(&mut a);
        }
        std::mem::swap(&mut a, &mut b);
    }
    a.len() - 1
}

/// True only if `a` and `b` are certainly coprime in `ℚ[t]`.
pub(super) fn certainly_coprime(a: &UniPoly<Rational>, b: &UniPoly<Rational>) -> bool {
    match (image(a, rational_mod), image(b, rational_mod)) {
        (Some(x), Some(y)) => gcd_degree(x, y) == 0,
        _ => false,
    }
}

/// True only if `a` and `b` are certainly coprime in `ℚ(s)[t]`.
pub(super) fn certainly_coprime_over_fractions(a: &UniPoly<RatFn<Rational>>, b: &UniPoly<RatFn<Rational>>) -> bool {
    S_POINTS.iter().any(
        |&s| match (image(a, |c| qfunc_mod(c, s)), image(b, |c| qfunc_mod(c, s))) {
            (Some(x), Some(y)) => gcd_degree(x, y) == 0,
            _ => false,
        },
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::Ring;

    fn p(c: &[i64]) -> UniPoly<Rational> {
        UniPoly::from_coeffs(c.iter().map(|&n| Rational::from_i64(n)).collect())
    }

    #[test]
    fn certificates() {
        assert!(certainly_coprime(&p(&[1, 1]), &p(&[-1, 1])));
        assert!(!certainly_coprime(&p(&[-1, 0, 1]), &p(&[1, 1])));
        assert!(certainly_coprime(&p(&[3]), &p(&[0, 0, 5])));
        assert_eq!(inv(2), P.div_ceil(2));
    }
}
