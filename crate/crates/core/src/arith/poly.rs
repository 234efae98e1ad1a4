use super::{paren_if_compound, Field, Render};

/// Dense univariate polynomial, coefficients stored low degree first with
/// no trailing zeros (the zero polynomial has no coefficients).
#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub struct UniPoly<F> {
    coeffs: Vec<F>,
}

impl<F: Field> UniPoly<F> {
    pub fn from_coeffs(mut coeffs: Vec<F>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(F::one())
    }

    pub fn constant(c: F) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// `c·t^k`
    pub fn monomial(c: F, k: usize) -> Self {
        let mut coeffs = vec![F::zero(); k + 1];
        coeffs[k] = c;
        Self::from_coeffs(coeffs)
    }

    /// The variable `t`.
    pub fn var() -> Self {
        Self::monomial(F::one(), 1)
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> F {
        self.coeffs.get(k).cloned().unwrap_or_else(F::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coeff(&self) -> Option<&F> {
        self.coeffs.last()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n)
            .map(|i| match (self.coeffs.get(i), rhs.coeffs.get(i)) {
                (Some(a), Some(b)) => a.add(b),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            })
            .collect();
        Self::from_coeffs(coeffs)
    }

    pub fn neg(&self) -> Self {
        UniPoly {
            coeffs: self.coeffs.iter().map(F::neg).collect(),
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![F::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] = coeffs[i + j].add(&a.mul(b));
            }
        }
        Self::from_coeffs(coeffs)
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        UniPoly {
            coeffs: self.coeffs.iter().map(|a| a.mul(c)).collect(),
        }
    }

    /// Euclidean division; `None` when dividing by zero.
    pub fn div_rem(&self, divisor: &Self) -> Option<(Self, Self)> {
        let dd = divisor.degree()?;
        let lc_inv = divisor.coeffs[dd].inv()?;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Some((Self::zero(), self.clone()));
        }
        let mut quot = vec![F::zero(); rem.len() - dd];
        for k in (dd..rem.len()).rev() {
            let c = rem[k].mul(&lc_inv);
            if c.is_zero() {
                continue;
            }
            for (i, d) in divisor.coeffs.iter().enumerate() {
                rem[k - dd + i] = rem[k - dd + i].sub(&c.mul(d));
            }
            quot[k - dd] = c;
        }
        rem.truncate(dd);
        Some((Self::from_coeffs(quot), Self::from_coeffs(rem)))
    }

    /// Exact quotient; panics when `divisor` does not divide `self`.
    pub(crate) fn exact_div(&self, divisor: &Self) -> Self {
        let (q, r) = self.div_rem(divisor).expect("division by zero polynomial");
        debug_assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    /// Scales to leading coefficient one; zero stays zero.
    pub fn monic(&self) -> Self {
        match self.leading_coeff() {
            Some(lc) if !lc.is_one() => self.scale(&lc.inv().expect("nonzero leading coefficient")),
            _ => self.clone(),
        }
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(&self, rhs: &Self) -> Self {
        let mut a = self.monic();
        let mut b = rhs.monic();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b).expect("nonzero divisor");
            a = b;
            b = r.monic();
        }
        a
    }

    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c.mul(&F::from_i64(k as i64)))
            .collect();
        Self::from_coeffs(coeffs)
    }

    /// `p(t + shift)` by Horner's scheme.
    pub fn shift(&self, shift: &F) -> Self {
        let step = UniPoly::from_coeffs(vec![shift.clone(), F::one()]);
        self.coeffs
            .iter()
            .rev()
            .fold(Self::zero(), |acc, c| acc.mul(&step).add(&Self::constant(c.clone())))
    }

    /// `p(factor·t)`.
    pub fn dilate(&self, factor: &F) -> Self {
        let mut power = F::one();
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            coeffs.push(c.mul(&power));
            power = power.mul(factor);
        }
        Self::from_coeffs(coeffs)
    }

    /// `t·p(t)`.
    pub fn mul_var(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(F::zero());
        coeffs.extend(self.coeffs.iter().cloned());
        UniPoly { coeffs }
    }

    pub fn map_coeffs(&self, f: impl Fn(&F) -> F) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(f).collect())
    }

    pub fn eval(&self, at: &F) -> F {
        self.coeffs.iter().rev().fold(F::zero(), |acc, c| acc.mul(at).add(c))
    }
}

impl<F: Field + Render> Render for UniPoly<F> {
    fn render(&self, vars: &[&str]) -> String {
        let (var, inner) = vars.split_first().expect("a variable name per tower level");
        if self.is_zero() {
            return "0".to_string();
        }
        let mut terms = Vec::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let power = match k {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{k}"),
            };
            let negate = !c.is_rational_constant() && c.is_negative_leading();
            let c = if negate { c.neg() } else { c.clone() };
            let coeff = c.render(inner);
            let term = if k == 0 {
                if c.is_rational_constant() {
                    coeff
                } else {
                    paren_if_compound(&coeff)
                }
            } else if c.is_one() {
                power
            } else if c.is_rational_constant() {
                if coeff == "-1" {
                    format!("-{power}")
                } else {
                    format!("{coeff}*{power}")
                }
            } else {
                format!("{}*{power}", paren_if_compound(&coeff))
            };
            let term = if negate { format!("-{term}") } else { term };
            terms.push(term);
        }
        join_signed(&terms)
    }

    fn is_rational_constant(&self) -> bool {
        self.coeffs.len() <= 1 && self.coeffs.first().is_none_or(|c| c.is_rational_constant())
    }

    fn is_negative_constant(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_negative_constant()
    }

    fn is_negative_leading(&self) -> bool {
        self.coeffs.last().is_some_and(Render::is_negative_leading)
    }
}

/// Joins terms with ` + `, folding a leading minus into ` - `.
pub(crate) fn join_signed(terms: &[String]) -> String {
    let mut out = String::new();
    for (i, t) in terms.iter().enumerate() {
        if i == 0 {
            out.push_str(t);
        } else if let Some(rest) = t.strip_prefix('-') {
            out.push_str(" - ");
            out.push_str(rest);
        } else {
            out.push_str(" + ");
            out.push_str(t);
        }
    }
    out
}
