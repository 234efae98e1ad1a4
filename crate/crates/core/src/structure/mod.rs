//! Twisted σ-power products and the component structure of explicit
//! monomial models.

pub mod automorphisms;
pub mod compose;
pub mod cyclotomic;
pub mod model;

pub use automorphisms::{
    describe, enumerate_automorphisms, exact_sequence_check, AutomorphismGroup, ExactSequenceReport,
};
pub use compose::{cocycle_check, sigma_power_product};
pub use cyclotomic::{CycNum, CyclotomicField};
pub use model::{primitive_idempotents, sigma_orbits, DecompositionReport, ModelElement, MonomialModel};
