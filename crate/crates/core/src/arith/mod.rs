//! Exact scalar arithmetic: the ring/field traits, rationals, dense
//! univariate polynomials and their fraction fields.
//!
//! The carrier of every computation is the tower
//! `Rational ⊂ QFunc = Rational(q) ⊂ RatFunc = QFunc(x)`.

mod modp;
pub(crate) mod poly;
mod prs;
mod ratfn;
mod rational;

use std::fmt::Debug;

pub use poly::UniPoly;
pub use ratfn::RatFn;
pub use rational::{rational, Rational};

/// A commutative ring with identity whose elements are canonical values,
/// so `==` decides equality.
pub trait Ring: Clone + PartialEq + Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(n: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool {
        *self == Self::one()
    }
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;

    fn pow(&self, mut exp: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&base);
            }
            exp >>= 1;
            if exp > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }
}

pub trait Field: Ring {
    /// `None` exactly for zero.
    fn inv(&self) -> Option<Self>;

    fn div(&self, rhs: &Self) -> Option<Self> {
        rhs.inv().map(|r| self.mul(&r))
    }

    /// Monic gcd in `Self[t]`.
    fn poly_gcd(a: &UniPoly<Self>, b: &UniPoly<Self>) -> UniPoly<Self> {
        a.gcd(b)
    }

    /// Monic gcd in `Self(s)[t]`, one level up the tower.
    fn fraction_poly_gcd(a: &UniPoly<RatFn<Self>>, b: &UniPoly<RatFn<Self>>) -> UniPoly<RatFn<Self>> {
        a.gcd(b)
    }
}

/// Rendering into the textual expression grammar.
///
/// `vars` names the adjoined variables from the outermost inwards, so a
/// `RatFn<RatFn<Rational>>` renders with `["x", "q"]`.
pub trait Render {
    fn render(&self, vars: &[&str]) -> String;

    /// True when the element lies in the prime field, i.e. renders as a
    /// (possibly signed) integer or fraction.
    fn is_rational_constant(&self) -> bool;

    /// Sign of a rational constant; meaningless otherwise.
    fn is_negative_constant(&self) -> bool {
        false
    }

    /// Whether the innermost leading coefficient is negative, so the
    /// element renders best as `-(…)`.
    fn is_negative_leading(&self) -> bool;
}

/// Whether the first character opens a parenthesis closed by the last.
fn is_wrapped(s: &str) -> bool {
    if !s.starts_with('(') {
        return false;
    }
    let mut depth = 0usize;
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => {
                depth -= 1;
                if depth == 0 {
                    return i == s.len() - 1;
                }
            }
            _ => {}
        }
    }
    false
}

/// Wraps `s` in parentheses unless it is a bare integer, symbol or power.
pub(crate) fn paren_if_compound(s: &str) -> String {
    let simple = s
        .chars()
        .all(|c| c.is_ascii_alphanumeric() || c == '^' || c == '_' || c == '\'');
    if simple || is_wrapped(s) {
        s.to_string()
    } else {
        format!("({s})")
    }
}
