//! Exact arithmetic in `ℚ(ζ_N)` as polynomials in `ζ` reduced modulo the
//! cyclotomic polynomial `Φ_N`.

use crate::arith::{Field, Rational, Render, Ring, UniPoly};
use crate::error::{Error, Result};

/// Largest supported `N`.
pub const MAX_CYCLOTOMIC_ORDER: u32 = 1024;

/// `Φ_n`, obtained by dividing `tⁿ − 1` by `Φ_d` for every proper divisor.
pub fn cyclotomic_polynomial(n: u32) -> UniPoly<Rational> {
    assert!(n >= 1, "cyclotomic polynomials start at n = 1");
    let mut p = UniPoly::monomial(Rational::one(), n as usize).sub(&UniPoly::one());
    for d in (1..n).filter(|d| n.is_multiple_of(*d)) {
        p = p.exact_div(&cyclotomic_polynomial(d));
    }
    p
}

/// An element of `ℚ(ζ_N)`, reduced below `deg Φ_N`. Only meaningful
/// together with its [`CyclotomicField`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CycNum(UniPoly<Rational>);

impl CycNum {
    pub fn as_poly(&self) -> &UniPoly<Rational> {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclotomicField {
    order: u32,
    modulus: UniPoly<Rational>,
}

impl CyclotomicField {
    pub fn new(order: u32) -> Result<Self> {
        if order == 0 || order > MAX_CYCLOTOMIC_ORDER {
            return Err(Error::InvalidArgument(format!(
                "cyclotomic order must lie in 1..={MAX_CYCLOTOMIC_ORDER}, got {order}"
            )));
        }
        Ok(CyclotomicField {
            order,
            modulus: cyclotomic_polynomial(order),
        })
    }

    /// `N`, the order of `ζ`.
    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn modulus(&self) -> &UniPoly<Rational> {
        &self.modulus
    }

    /// `[ℚ(ζ_N) : ℚ] = φ(N)`.
    pub fn degree(&self) -> usize {
        self.modulus.degree().expect("nonzero modulus")
    }

    fn reduce(&self, p: UniPoly<Rational>) -> CycNum {
        match p.degree() {
            Some(d) if d >= self.degree() => CycNum(p.div_rem(&self.modulus).expect("nonzero modulus").1),
            _ => CycNum(p),
        }
    }

    pub fn zero(&self) -> CycNum {
        CycNum(UniPoly::zero())
    }

    pub fn one(&self) -> CycNum {
        self.reduce(UniPoly::one())
    }

    pub fn rational(&self, r: Rational) -> CycNum {
        self.reduce(UniPoly::constant(r))
    }

    /// `ζᵏ` for any integer `k`.
    pub fn zeta_pow(&self, k: i64) -> CycNum {
        let k = k.rem_euclid(self.order as i64) as usize;
        self.reduce(UniPoly::monomial(Rational::one(), k))
    }

    pub fn add(&self, a: &CycNum, b: &CycNum) -> CycNum {
        CycNum(a.0.add(&b.0))
    }

    pub fn sub(&self, a: &CycNum, b: &CycNum) -> CycNum {
        CycNum(a.0.sub(&b.0))
    }

    pub fn neg(&self, a: &CycNum) -> CycNum {
        CycNum(a.0.neg())
    }

    pub fn mul(&self, a: &CycNum, b: &CycNum) -> CycNum {
        self.reduce(a.0.mul(&b.0))
    }

    pub fn scale(&self, a: &CycNum, r: &Rational) -> CycNum {
        CycNum(a.0.scale(r))
    }

    pub fn pow(&self, a: &CycNum, mut exp: u32) -> CycNum {
        let mut base = a.clone();
        let mut acc = self.one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            exp >>= 1;
            if exp > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    /// Inverse by the extended Euclidean algorithm against `Φ_N`.
    pub fn inv(&self, a: &CycNum) -> Option<CycNum> {
        if a.is_zero() {
            return None;
        }
        // Invariant: r0 ≡ s0·a and r1 ≡ s1·a modulo Φ_N.
        let (mut r0, mut r1) = (self.modulus.clone(), a.0.clone());
        let (mut s0, mut s1) = (UniPoly::<Rational>::zero(), UniPoly::one());
        while !r1.is_zero() {
            let (quot, rem) = r0.div_rem(&r1).expect("nonzero divisor");
            let s2 = s0.sub(&quot.mul(&s1));
            r0 = std::mem::replace(&mut r1, rem);
            s0 = std::mem::replace(&mut s1, s2);
        }
        // Φ_N is irreducible, so the gcd r0 is a nonzero constant.
        let c = r0.leading_coeff().expect("nonzero gcd").inv()?;
        Some(self.reduce(s0.scale(&c)))
    }

    /// Least `k ≥ 1` with `aᵏ = 1`, searched up to `N` (enough for roots of
    /// unity in `ℚ(ζ_N)` of even or odd order alike up to `2N`).
    pub fn multiplicative_order(&self, a: &CycNum) -> Option<u32> {
        let one = self.one();
        let mut p = a.clone();
        for k in 1..=2 * self.order {
            if p == one {
                return Some(k);
            }
            p = self.mul(&p, a);
        }
        None
    }

    /// Renders as a polynomial in `zeta`.
    pub fn render(&self, a: &CycNum) -> String {
        a.0.render(&["zeta"])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational;

    fn poly(c: &[i64]) -> UniPoly<Rational> {
        UniPoly::from_coeffs(c.iter().map(|&n| Rational::from_i64(n)).collect())
    }

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), poly(&[-1, 1]));
        assert_eq!(cyclotomic_polynomial(2), poly(&[1, 1]));
        assert_eq!(cyclotomic_polynomial(4), poly(&[1, 0, 1]));
        assert_eq!(cyclotomic_polynomial(6), poly(&[1, -1, 1]));
        assert_eq!(cyclotomic_polynomial(8), poly(&[1, 0, 0, 0, 1]));
        assert_eq!(cyclotomic_polynomial(12), poly(&[1, 0, -1, 0, 1]));
    }

    #[test]
    fn roots_of_unity() {
        for n in [1, 2, 3, 4, 5, 6, 8, 12] {
            let f = CyclotomicField::new(n).unwrap();
            let z = f.zeta_pow(1);
            assert_eq!(f.pow(&z, n), f.one());
            assert_eq!(f.multiplicative_order(&z), Some(n));
            // Σ_{k<N} ζᵏ = 0 for N > 1.
            let sum = (0..n as i64).fold(f.zero(), |acc, k| f.add(&acc, &f.zeta_pow(k)));
            assert_eq!(sum.is_zero(), n > 1);
            assert_eq!(f.zeta_pow(-1), f.inv(&z).unwrap());
        }
    }

    #[test]
    fn inverses() {
        let f = CyclotomicField::new(12).unwrap();
        let a = f.add(&f.zeta_pow(1), &f.rational(rational(3, 2)));
        let b = f.inv(&a).unwrap();
        assert_eq!(f.mul(&a, &b), f.one());
        assert!(f.inv(&f.zero()).is_none());
        assert_eq!(f.render(&f.zeta_pow(5)), "zeta^3 - zeta");
    }
}
