//! Sparse multivariate polynomials in the jet variables `Y⁽ʲ⁾_{ab}` with
//! carrier-field coefficients.
//!
//! Variables are enumerated by `(j, a, b)` lexicographically, and monomials
//! are compared in degree-reverse-lexicographic order over that enumeration.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_bigint::BigInt;

use crate::arith::{Field, Ring};
use crate::base_field::{self, RatFunc};
use crate::error::{Error, Result};
use crate::expr::{self, ExprAlgebra, Symbol};

/// Entry `(row, col)` (0-based) of the `order`-th derivative block.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Var {
    pub order: u32,
    pub row: u32,
    pub col: u32,
}

impl Var {
    pub const fn new(order: u32, row: u32, col: u32) -> Self {
        Var { order, row, col }
    }

    /// The next derivative of this variable.
    pub fn derivative(self) -> Self {
        Var {
            order: self.order + 1,
            ..self
        }
    }
}

/// Power product, sorted by variable with positive exponents.
///
/// `Ord` is degrevlex: higher total degree first, ties broken by the
/// *last* variable where exponents differ, the smaller exponent winning.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Monomial(Vec<(Var, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(v: Var) -> Self {
        Monomial(vec![(v, 1)])
    }

    pub fn from_powers(mut powers: Vec<(Var, u32)>) -> Self {
        powers.retain(|&(_, e)| e > 0);
        powers.sort_by_key(|&(v, _)| v);
        let mut merged: Vec<(Var, u32)> = Vec::with_capacity(powers.len());
        for (v, e) in powers {
            match merged.last_mut() {
                Some((w, f)) if *w == v => *f += e,
                _ => merged.push((v, e)),
            }
        }
        Monomial(merged)
    }

    pub fn powers(&self) -> &[(Var, u32)] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&(_, e)| e).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn exponent(&self, v: Var) -> u32 {
        self.0.binary_search_by_key(&v, |&(w, _)| w).map_or(0, |i| self.0[i].1)
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let (mut i, mut j) = (0, 0);
        let mut out = Vec::with_capacity(self.0.len() + rhs.0.len());
        while i < self.0.len() || j < rhs.0.len() {
            match (self.0.get(i), rhs.0.get(j)) {
                (Some(&(a, e)), Some(&(b, f))) => match a.cmp(&b) {
                    Ordering::Less => {
                        out.push((a, e));
                        i += 1;
                    }
                    Ordering::Greater => {
                        out.push((b, f));
                        j += 1;
                    }
                    Ordering::Equal => {
                        out.push((a, e + f));
                        i += 1;
                        j += 1;
                    }
                },
                (Some(&p), None) => {
                    out.push(p);
                    i += 1;
                }
                (None, Some(&p)) => {
                    out.push(p);
                    j += 1;
                }
                (None, None) => unreachable!(),
            }
        }
        Monomial(out)
    }

    pub fn divides(&self, other: &Self) -> bool {
        self.0.iter().all(|&(v, e)| other.exponent(v) >= e)
    }

    /// `other / self` when `self` divides `other`.
    pub fn quotient_of(&self, other: &Self) -> Option<Self> {
        let mut out = Vec::with_capacity(other.0.len());
        for &(v, f) in &other.0 {
            let e = self.exponent(v);
            match f.cmp(&e) {
                Ordering::Greater => out.push((v, f - e)),
                Ordering::Equal => {}
                Ordering::Less => return None,
            }
        }
        if self.0.iter().all(|&(v, e)| other.exponent(v) >= e) {
            Some(Monomial(out))
        } else {
            None
        }
    }

    pub fn lcm(&self, rhs: &Self) -> Self {
        let mut powers = self.0.clone();
        for &(v, f) in &rhs.0 {
            match powers.binary_search_by_key(&v, |&(w, _)| w) {
                Ok(i) => powers[i].1 = powers[i].1.max(f),
                Err(i) => powers.insert(i, (v, f)),
            }
        }
        Monomial(powers)
    }

    pub fn is_coprime(&self, rhs: &Self) -> bool {
        self.0.iter().all(|&(v, _)| rhs.exponent(v) == 0)
    }

    pub fn render(&self) -> String {
        self.0
            .iter()
            .map(|&(v, e)| {
                let name = expr::format_var(v);
                if e == 1 {
                    name
                } else {
                    format!("{name}^{e}")
                }
            })
            .collect::<Vec<_>>()
            .join("*")
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.degree().cmp(&other.degree()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        // Walk both power lists from the largest variable down.
        let (mut i, mut j) = (self.0.len(), other.0.len());
        loop {
            match (i.checked_sub(1), j.checked_sub(1)) {
                (None, None) => return Ordering::Equal,
                (Some(_), None) => return Ordering::Less,
                (None, Some(_)) => return Ordering::Greater,
                (Some(a), Some(b)) => {
                    let (va, ea) = self.0[a];
                    let (vb, eb) = other.0[b];
                    match va.cmp(&vb) {
                        // `self` has a positive exponent in a variable where
                        // `other` has none: `self` is smaller.
                        Ordering::Greater => return Ordering::Less,
                        Ordering::Less => return Ordering::Greater,
                        Ordering::Equal => match ea.cmp(&eb) {
                            Ordering::Equal => {
                                i = a;
                                j = b;
                            }
                            ord => return ord.reverse(),
                        },
                    }
                }
            }
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Polynomial in jet variables over the carrier field. Terms are kept in a
/// map ordered by degrevlex, so the leading term is the last entry.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct MPoly {
    terms: BTreeMap<Monomial, RatFunc>,
}

/// Alias naming the role of `MPoly` in ideal computations.
pub type JetPolynomial = MPoly;

impl MPoly {
    pub fn constant(c: RatFunc) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::one(), c);
        }
        MPoly { terms }
    }

    pub fn var(v: Var) -> Self {
        Self::term(RatFunc::one(), Monomial::var(v))
    }

    pub fn term(c: RatFunc, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        MPoly { terms }
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &RatFunc)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &RatFunc)> {
        self.terms.last_key_value()
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.last_key_value().map(|(m, _)| m)
    }

    pub fn coeff(&self, m: &Monomial) -> RatFunc {
        self.terms.get(m).cloned().unwrap_or_else(RatFunc::zero)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    /// The constant coefficient when the polynomial has no variables.
    pub fn as_constant(&self) -> Option<RatFunc> {
        match self.terms.len() {
            0 => Some(RatFunc::zero()),
            1 => self.terms.get(&Monomial::one()).cloned(),
            _ => None,
        }
    }

    /// All variables that occur, sorted.
    pub fn variables(&self) -> Vec<Var> {
        let mut vars: Vec<Var> = self
            .terms
            .keys()
            .flat_map(|m| m.powers().iter().map(|&(v, _)| v))
            .collect();
        vars.sort();
        vars.dedup();
        vars
    }

    fn add_term(&mut self, m: Monomial, c: RatFunc) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get().add(&c);
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn scale(&self, c: &RatFunc) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        MPoly {
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a.mul(c))).collect(),
        }
    }

    /// `c·m·self`
    pub fn mul_term(&self, c: &RatFunc, m: &Monomial) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        MPoly {
            terms: self.terms.iter().map(|(n, a)| (n.mul(m), a.mul(c))).collect(),
        }
    }

    pub fn monic(&self) -> Self {
        match self.leading_term() {
            Some((_, c)) if !c.is_one() => self.scale(&c.inv().expect("nonzero leading coefficient")),
            _ => self.clone(),
        }
    }

    pub fn map_coeffs(&self, f: impl Fn(&RatFunc) -> RatFunc) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            out.add_term(m.clone(), f(c));
        }
        out
    }

    /// Ring homomorphism: coefficients through `coeff`, each variable to
    /// `image(v)`.
    pub fn substitute(&self, coeff: impl Fn(&RatFunc) -> RatFunc, image: impl Fn(Var) -> MPoly) -> Self {
        let mut cache: BTreeMap<Var, MPoly> = BTreeMap::new();
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let mut t = MPoly::constant(coeff(c));
            for &(v, e) in m.powers() {
                let img = cache.entry(v).or_insert_with(|| image(v));
                t = t.mul(&img.pow(e));
            }
            out = out.add(&t);
        }
        out
    }

    /// Extends a derivation `delta` of the coefficients by
    /// `δ(Y⁽ʲ⁾) = Y⁽ʲ⁺¹⁾` and the Leibniz rule.
    pub fn derive(&self, delta: impl Fn(&RatFunc) -> RatFunc) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            out.add_term(m.clone(), delta(c));
            for (k, &(v, e)) in m.powers().iter().enumerate() {
                let mut powers = m.powers().to_vec();
                powers[k].1 -= 1;
                powers.push((v.derivative(), 1));
                out.add_term(Monomial::from_powers(powers), c.mul(&base_field::from_int(e as i64)));
            }
        }
        out
    }

    /// Canonical textual form in the expression grammar.
    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let terms: Vec<String> = self.terms.iter().rev().map(|(m, c)| render_term(c, m)).collect();
        crate::arith::poly::join_signed(&terms)
    }

    /// Parses a polynomial in jet variables; `x` (and `q`, when allowed by
    /// `spec`) may appear in coefficients.
    pub fn parse(spec: &base_field::OperatorSpec, text: &str) -> Result<Self> {
        let Jets(p) = expr::parse::<Jets>(text)?;
        for (_, c) in p.terms() {
            if !spec.contains(c) {
                return Err(Error::UnexpectedSymbol {
                    symbol: "q".into(),
                    position: text.find('q').unwrap_or(0),
                });
            }
        }
        Ok(p)
    }
}

fn render_term(c: &RatFunc, m: &Monomial) -> String {
    use crate::arith::Render;
    if m.is_one() {
        return base_field::render_coeff(c);
    }
    let negate = c.is_negative_leading();
    let c = if negate { c.neg() } else { c.clone() };
    let mono = m.render();
    let coeff = base_field::render_coeff(&c);
    let term = if c.is_one() {
        mono
    } else if c.is_rational_constant() {
        format!("{coeff}*{mono}")
    } else {
        format!("{}*{mono}", crate::arith::paren_if_compound(&coeff))
    };
    if negate {
        format!("-{term}")
    } else {
        term
    }
}

impl Ring for MPoly {
    fn zero() -> Self {
        MPoly { terms: BTreeMap::new() }
    }

    fn one() -> Self {
        Self::constant(RatFunc::one())
    }

    fn from_i64(n: i64) -> Self {
        Self::constant(RatFunc::from_i64(n))
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add(&self, rhs: &Self) -> Self {
        let (mut out, other) = if self.terms.len() >= rhs.terms.len() {
            (self.clone(), rhs)
        } else {
            (rhs.clone(), self)
        };
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    fn mul(&self, rhs: &Self) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            for (n, d) in &rhs.terms {
                out.add_term(m.mul(n), c.mul(d));
            }
        }
        out
    }

    fn neg(&self) -> Self {
        MPoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c.neg())).collect(),
        }
    }
}

struct Jets(MPoly);

impl ExprAlgebra for Jets {
    fn integer(n: &BigInt) -> Self {
        Jets(MPoly::constant(base_field::from_rational(
            crate::arith::Rational::from_integer(n.clone()),
        )))
    }

    fn symbol(sym: &Symbol, _position: usize) -> Result<Self> {
        Ok(Jets(match sym {
            Symbol::X => MPoly::constant(base_field::x()),
            Symbol::Q => MPoly::constant(base_field::q()),
            Symbol::Jet(v) => MPoly::var(*v),
        }))
    }

    fn add(&self, rhs: &Self) -> Self {
        Jets(self.0.add(&rhs.0))
    }

    fn sub(&self, rhs: &Self) -> Self {
        Jets(self.0.sub(&rhs.0))
    }

    fn mul(&self, rhs: &Self) -> Self {
        Jets(self.0.mul(&rhs.0))
    }

    fn neg(&self) -> Self {
        Jets(self.0.neg())
    }

    fn div(&self, rhs: &Self, position: usize) -> Result<Self> {
        let c = rhs.0.as_constant().ok_or_else(|| Error::Syntax {
            position,
            message: "division by a non-constant polynomial".into(),
        })?;
        let inv = c.inv().ok_or(Error::ZeroDenominator { position })?;
        Ok(Jets(self.0.scale(&inv)))
    }

    fn pow(&self, exp: i64, position: usize) -> Result<Self> {
        if exp >= 0 {
            return Ok(Jets(self.0.pow(exp as u32)));
        }
        let c = self.0.as_constant().ok_or_else(|| Error::Syntax {
            position,
            message: "negative power of a non-constant polynomial".into(),
        })?;
        let inv = c.inv().ok_or(Error::ZeroDenominator { position })?;
        Ok(Jets(MPoly::constant(inv.pow(exp.unsigned_abs() as u32))))
    }
}
