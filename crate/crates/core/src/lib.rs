//! Exact computations for linear difference-differential systems
//! `σ(X) = AX` over rational function fields: prolongation into pure
//! difference towers, truncated jet groups, ideal invariance under the
//! jet action, twisted σ-power products, and idempotent-orbit models of
//! the component group.

pub mod arith;
pub mod base_field;
pub mod cli;
pub mod error;
pub mod expr;
pub mod groebner;
pub mod ideals;
pub mod jet;
pub mod matrix;
pub mod mpoly;
pub mod oracles;
pub mod prolong;
pub mod sampling;
pub mod structure;

pub use error::{Error, Result};

/// Resource bounds shared by every computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Largest prolongation or jet order accepted.
    pub max_order: usize,
    /// Maximum number of S-polynomial reductions per Gröbner basis.
    pub groebner_budget: usize,
    /// Largest automorphism group enumerated exhaustively.
    pub max_group_order: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_order: 4,
            groebner_budget: 10_000,
            max_group_order: 8,
        }
    }
}

impl Limits {
    pub fn check_order(&self, requested: usize) -> Result<()> {
        if requested > self.max_order {
            return Err(Error::OrderLimit {
                requested,
                max: self.max_order,
            });
        }
        Ok(())
    }
}
