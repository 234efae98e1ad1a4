use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{Field, RatFn, Render, Ring, UniPoly};

pub type Rational = BigRational;

pub fn rational(num: i64, den: i64) -> Rational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

impl Ring for BigRational {
    fn zero() -> Self {
        <BigRational as Zero>::zero()
    }
    fn one() -> Self {
        <BigRational as One>::one()
    }
    fn from_i64(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }
    fn is_zero(&self) -> bool {
        <BigRational as Zero>::is_zero(self)
    }
    fn is_one(&self) -> bool {
        <BigRational as One>::is_one(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self
    }
}

impl Field for BigRational {
    fn inv(&self) -> Option<Self> {
        if Ring::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }

    fn poly_gcd(a: &UniPoly<Self>, b: &UniPoly<Self>) -> UniPoly<Self> {
        if super::modp::certainly_coprime(a, b) {
            UniPoly::one()
        } else {
            a.gcd(b)
        }
    }

    fn fraction_poly_gcd(a: &UniPoly<RatFn<Self>>, b: &UniPoly<RatFn<Self>>) -> UniPoly<RatFn<Self>> {
        if super::modp::certainly_coprime_over_fractions(a, b) {
            UniPoly::one()
        } else {
            super::prs::gcd(a, b)
        }
    }
}

impl Render for BigRational {
    fn render(&self, _vars: &[&str]) -> String {
        if self.is_integer() {
            self.numer().to_string()
        } else {
            format!("{}/{}", self.numer(), self.denom())
        }
    }

    fn is_rational_constant(&self) -> bool {
        true
    }

    fn is_negative_constant(&self) -> bool {
        self.is_negative()
    }

    fn is_negative_leading(&self) -> bool {
        self.is_negative()
    }
}
