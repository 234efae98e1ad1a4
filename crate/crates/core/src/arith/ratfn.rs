use super::{paren_if_compound, Field, Render, Ring, UniPoly};

/// Element of the rational function field `F(t)` in canonical form: the
/// denominator is monic and coprime to the numerator, and zero is `0/1`.
#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub struct RatFn<F> {
    num: UniPoly<F>,
    den: UniPoly<F>,
}

impl<F: Field> RatFn<F> {
    /// Reduces `num/den`; `None` when `den` is zero.
    pub fn new(num: UniPoly<F>, den: UniPoly<F>) -> Option<Self> {
        if den.is_zero() {
            return None;
        }
        if num.is_zero() {
            return Some(Self::from_poly(UniPoly::zero()));
        }
        let g = F::poly_gcd(&num, &den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (num.exact_div(&g), den.exact_div(&g))
        };
        Some(Self::normalize_coprime(num, den))
    }

    /// Makes the denominator monic without a gcd computation. The caller
    /// guarantees `num` and `den` are coprime and `den` is nonzero.
    pub(crate) fn normalize_coprime(num: UniPoly<F>, den: UniPoly<F>) -> Self {
        if num.is_zero() {
            return Self::from_poly(num);
        }
        let lc = den.leading_coeff().expect("nonzero denominator");
        if lc.is_one() {
            RatFn { num, den }
        } else {
            let inv = lc.inv().expect("nonzero leading coefficient");
            RatFn {
                num: num.scale(&inv),
                den: den.scale(&inv),
            }
        }
    }

    pub fn from_poly(num: UniPoly<F>) -> Self {
        RatFn {
            num,
            den: UniPoly::one(),
        }
    }

    pub fn constant(c: F) -> Self {
        Self::from_poly(UniPoly::constant(c))
    }

    /// The adjoined variable `t`.
    pub fn var() -> Self {
        Self::from_poly(UniPoly::var())
    }

    pub fn numer(&self) -> &UniPoly<F> {
        &self.num
    }

    pub fn denom(&self) -> &UniPoly<F> {
        &self.den
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    /// The coefficient-field element, when the function is constant in `t`.
    pub fn as_constant(&self) -> Option<F> {
        if self.den.is_one() && self.num.is_constant() {
            Some(self.num.coeff(0))
        } else {
            None
        }
    }

    /// Derivative with respect to the adjoined variable.
    ///
    /// With `g = gcd(d, d′)` and `d = g·d₁`, the quotient
    /// `(n′d₁ − n·d′/g) / (d₁·d)` is already reduced, so only the small gcd
    /// `g` is computed.
    pub fn derivative(&self) -> Self {
        let dd = self.den.derivative();
        let g = F::poly_gcd(&self.den, &dd);
        let (d1, dq) = if g.is_one() {
            (self.den.clone(), dd)
        } else {
            (self.den.exact_div(&g), dd.exact_div(&g))
        };
        let num = self.num.derivative().mul(&d1).sub(&self.num.mul(&dq));
        Self::normalize_coprime(num, d1.mul(&self.den))
    }
}

impl<F: Field> Ring for RatFn<F> {
    fn zero() -> Self {
        Self::from_poly(UniPoly::zero())
    }

    fn one() -> Self {
        Self::from_poly(UniPoly::one())
    }

    fn from_i64(n: i64) -> Self {
        Self::constant(F::from_i64(n))
    }

    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    fn add(&self, rhs: &Self) -> Self {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            if self.den.is_one() {
                return Self::from_poly(self.num.add(&rhs.num));
            }
            return Self::new(self.num.add(&rhs.num), self.den.clone()).expect("nonzero");
        }
        let g = F::poly_gcd(&self.den, &rhs.den);
        let a = self.den.exact_div(&g);
        let b = rhs.den.exact_div(&g);
        let num = self.num.mul(&b).add(&rhs.num.mul(&a));
        Self::new(num, a.mul(&rhs.den)).expect("nonzero")
    }

    fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return Self::from_poly(self.num.mul(&rhs.num));
        }
        // Cross-cancel so the product is reduced without a final gcd.
        let g1 = F::poly_gcd(&self.num, &rhs.den);
        let g2 = F::poly_gcd(&rhs.num, &self.den);
        let num = self.num.exact_div(&g1).mul(&rhs.num.exact_div(&g2));
        let den = self.den.exact_div(&g2).mul(&rhs.den.exact_div(&g1));
        Self::normalize_coprime(num, den)
    }

    fn neg(&self) -> Self {
        RatFn {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }
}

impl<F: Field> Field for RatFn<F> {
    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        Some(Self::normalize_coprime(self.den.clone(), self.num.clone()))
    }

    fn poly_gcd(a: &UniPoly<Self>, b: &UniPoly<Self>) -> UniPoly<Self> {
        F::fraction_poly_gcd(a, b)
    }
}

impl<F: Field + Render> Render for RatFn<F> {
    fn render(&self, vars: &[&str]) -> String {
        if self.den.is_one() {
            return self.num.render(vars);
        }
        let negate = self.num.is_negative_leading();
        let num = if negate { self.num.neg() } else { self.num.clone() };
        let body = format!(
            "{}/{}",
            paren_if_compound(&num.render(vars)),
            paren_if_compound(&self.den.render(vars))
        );
        if negate {
            format!("-{body}")
        } else {
            body
        }
    }

    fn is_rational_constant(&self) -> bool {
        self.den.is_one() && self.num.is_rational_constant()
    }

    fn is_negative_constant(&self) -> bool {
        self.den.is_one() && self.num.is_negative_constant()
    }

    fn is_negative_leading(&self) -> bool {
        self.num.is_negative_leading()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::Rational;

    type Q = Rational;

    fn p(c: &[i64]) -> UniPoly<Q> {
        UniPoly::from_coeffs(c.iter().map(|&n| Q::from_i64(n)).collect())
    }

    #[test]
    fn canonical_form() {
        // (2x + 2)/(4x^2 - 4) = (1/2)/(x - 1)
        let f = RatFn::new(p(&[2, 2]), p(&[-4, 0, 4])).unwrap();
        assert_eq!(f.denom(), &p(&[-1, 1]));
        assert_eq!(f.numer().coeff(0), crate::arith::rational(1, 2));
        assert!(RatFn::new(p(&[1]), UniPoly::zero()).is_none());
        assert_eq!(RatFn::new(UniPoly::zero(), p(&[3, 1])).unwrap(), RatFn::<Q>::zero());
    }

    #[test]
    fn field_operations() {
        let x = RatFn::<Q>::var();
        let one = RatFn::<Q>::one();
        let f = one.div(&x).unwrap();
        let g = one.div(&x.add(&one)).unwrap();
        // 1/x - 1/(x+1) = 1/(x^2+x)
        let h = f.sub(&g);
        assert_eq!(h, one.div(&x.mul(&x).add(&x)).unwrap());
        assert_eq!(h.mul(&h.inv().unwrap()), one);
        assert_eq!(f.derivative(), one.div(&x.mul(&x)).unwrap().neg());
    }
}
