//! Concrete σδ-fields: rational functions under the shift or the
//! q-dilation, with their automorphism, derivation and constants.
//!
//! | kind         | σ           | δ           | constants |
//! |--------------|-------------|-------------|-----------|
//! | `shift`      | x ↦ x + 1   | d/dx        | ℚ         |
//! | `q_dilation` | x ↦ q·x     | x·d/dx      | ℚ(q)      |
//!
//! In both cases σδ = δσ, and the constant field is relatively
//! algebraically closed in the carrier. Those two facts hold by
//! construction and are only sampled, never re-proved, at runtime.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::arith::{Field, RatFn, Rational, Render, Ring, UniPoly};
use crate::error::{Error, Result};
use crate::expr::{self, ExprAlgebra, Symbol};

/// `ℚ(q)`, the constants of the q-dilation field.
pub type QFunc = RatFn<Rational>;

/// An element of the carrier field `ℚ(q)(x)`. Shift-field elements are
/// exactly those whose coefficients are rational.
pub type RatFunc = RatFn<QFunc>;

const VARS: [&str; 2] = ["x", "q"];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OperatorKind {
    Shift,
    QDilation,
}

impl fmt::Display for OperatorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OperatorKind::Shift => "shift",
            OperatorKind::QDilation => "q_dilation",
        })
    }
}

impl FromStr for OperatorKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "shift" => Ok(OperatorKind::Shift),
            "q_dilation" | "q-dilation" => Ok(OperatorKind::QDilation),
            other => Err(Error::Input(format!("unknown operator spec `{other}`"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ConstantField {
    /// ℚ
    Rationals,
    /// ℚ(q) with q transcendental, σ(q) = q, δ(q) = 0.
    RationalFunctionsInQ,
}

/// A σδ-field together with its grammar.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct OperatorSpec {
    pub kind: OperatorKind,
}

/// `x` as a carrier element.
pub fn x() -> RatFunc {
    RatFunc::var()
}

/// `q` as a carrier element.
pub fn q() -> RatFunc {
    RatFunc::constant(QFunc::var())
}

pub fn from_rational(r: Rational) -> RatFunc {
    RatFunc::constant(QFunc::constant(r))
}

pub fn from_int(n: i64) -> RatFunc {
    RatFunc::from_i64(n)
}

impl OperatorSpec {
    pub const fn shift() -> Self {
        OperatorSpec {
            kind: OperatorKind::Shift,
        }
    }

    pub const fn q_dilation() -> Self {
        OperatorSpec {
            kind: OperatorKind::QDilation,
        }
    }

    pub fn all() -> [OperatorSpec; 2] {
        [Self::shift(), Self::q_dilation()]
    }

    pub fn constant_field(&self) -> ConstantField {
        match self.kind {
            OperatorKind::Shift => ConstantField::Rationals,
            OperatorKind::QDilation => ConstantField::RationalFunctionsInQ,
        }
    }

    /// σ(f): x ↦ x + 1 or x ↦ q·x. Both substitutions keep numerator and
    /// denominator coprime, so only the denominator needs renormalizing.
    pub fn apply_sigma(&self, f: &RatFunc) -> RatFunc {
        match self.kind {
            OperatorKind::Shift => {
                let one = QFunc::one();
                RatFunc::normalize_coprime(f.numer().shift(&one), f.denom().shift(&one))
            }
            OperatorKind::QDilation => {
                let q = QFunc::var();
                RatFunc::normalize_coprime(f.numer().dilate(&q), f.denom().dilate(&q))
            }
        }
    }

    pub fn apply_sigma_inv(&self, f: &RatFunc) -> RatFunc {
        match self.kind {
            OperatorKind::Shift => {
                let m1 = QFunc::one().neg();
                RatFunc::normalize_coprime(f.numer().shift(&m1), f.denom().shift(&m1))
            }
            OperatorKind::QDilation => {
                let q_inv = QFunc::var().inv().expect("q is nonzero");
                RatFunc::normalize_coprime(f.numer().dilate(&q_inv), f.denom().dilate(&q_inv))
            }
        }
    }

    /// σⁿ for any integer n.
    pub fn apply_sigma_pow(&self, f: &RatFunc, n: i64) -> RatFunc {
        match self.kind {
            OperatorKind::Shift => {
                let s = QFunc::from_i64(n);
                RatFunc::normalize_coprime(f.numer().shift(&s), f.denom().shift(&s))
            }
            OperatorKind::QDilation => {
                let qn = if n >= 0 {
                    QFunc::var().pow(n as u32)
                } else {
                    QFunc::var().pow(n.unsigned_abs() as u32).inv().expect("q is nonzero")
                };
                RatFunc::normalize_coprime(f.numer().dilate(&qn), f.denom().dilate(&qn))
            }
        }
    }

    /// δ(f): d/dx or x·d/dx.
    pub fn apply_delta(&self, f: &RatFunc) -> RatFunc {
        match self.kind {
            OperatorKind::Shift => f.derivative(),
            OperatorKind::QDilation => {
                // f′ is reduced, so x·f′ can only cancel a single x.
                let d = f.derivative();
                if d.denom().coeff(0).is_zero() {
                    let den = d.denom().exact_div(&UniPoly::var());
                    RatFunc::normalize_coprime(d.numer().clone(), den)
                } else {
                    RatFunc::normalize_coprime(d.numer().mul_var(), d.denom().clone())
                }
            }
        }
    }

    /// Whether σ fixes `f`.
    pub fn is_constant(&self, f: &RatFunc) -> bool {
        self.apply_sigma(f) == *f
    }

    /// Whether `f` lies in the carrier field of this spec (q-free for the
    /// shift).
    pub fn contains(&self, f: &RatFunc) -> bool {
        match self.kind {
            OperatorKind::QDilation => true,
            OperatorKind::Shift => [f.numer(), f.denom()]
                .iter()
                .all(|p| p.coeffs().iter().all(|c| c.is_rational_constant())),
        }
    }

    /// Whether `f` lies in the declared constant field.
    pub fn in_constant_field(&self, f: &RatFunc) -> bool {
        self.contains(f) && f.as_constant().is_some()
    }

    pub fn parse(&self, text: &str) -> Result<RatFunc> {
        let Carrier(f) = expr::parse::<Carrier>(text)?;
        if !self.contains(&f) {
            // Locate the offending `q` for the error message.
            let position = text.find('q').unwrap_or(0);
            return Err(Error::UnexpectedSymbol {
                symbol: "q".into(),
                position,
            });
        }
        Ok(f)
    }
}

impl fmt::Display for OperatorSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.kind.fmt(f)
    }
}

/// Parses `text` in the grammar of `spec` (`q` only for q-dilation).
pub fn parse_ratfunc(spec: &OperatorSpec, text: &str) -> Result<RatFunc> {
    spec.parse(text)
}

/// Canonical textual form; `parse_ratfunc(format_ratfunc(f)) == f`.
pub fn format_ratfunc(f: &RatFunc) -> String {
    f.render(&VARS)
}

pub(crate) fn render_coeff(f: &RatFunc) -> String {
    format_ratfunc(f)
}

/// Carrier elements as an expression target; jet variables are rejected.
struct Carrier(RatFunc);

impl ExprAlgebra for Carrier {
    fn integer(n: &BigInt) -> Self {
        Carrier(from_rational(Rational::from_integer(n.clone())))
    }

    fn symbol(sym: &Symbol, position: usize) -> Result<Self> {
        match sym {
            Symbol::X => Ok(Carrier(x())),
            Symbol::Q => Ok(Carrier(q())),
            Symbol::Jet(v) => Err(Error::UnexpectedSymbol {
                symbol: expr::format_var(*v),
                position,
            }),
        }
    }

    fn add(&self, rhs: &Self) -> Self {
        Carrier(self.0.add(&rhs.0))
    }

    fn sub(&self, rhs: &Self) -> Self {
        Carrier(self.0.sub(&rhs.0))
    }

    fn mul(&self, rhs: &Self) -> Self {
        Carrier(self.0.mul(&rhs.0))
    }

    fn neg(&self) -> Self {
        Carrier(self.0.neg())
    }

    fn div(&self, rhs: &Self, position: usize) -> Result<Self> {
        self.0
            .div(&rhs.0)
            .map(Carrier)
            .ok_or(Error::ZeroDenominator { position })
    }

    fn pow(&self, exp: i64, position: usize) -> Result<Self> {
        let base = if exp < 0 {
            self.0.inv().ok_or(Error::ZeroDenominator { position })?
        } else {
            self.0.clone()
        };
        Ok(Carrier(base.pow(exp.unsigned_abs() as u32)))
    }
}

/// Builds a carrier polynomial from rational coefficients, low degree
/// first.
pub fn poly_from_rationals(coeffs: &[Rational]) -> RatFunc {
    RatFunc::from_poly(UniPoly::from_coeffs(
        coeffs.iter().cloned().map(QFunc::constant).collect(),
    ))
}
