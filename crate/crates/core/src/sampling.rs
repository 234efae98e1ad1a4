//! Seeded random generation of field elements, matrices, jets and jet
//! polynomials. Every sampler is a pure function of its seed.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arith::{rational, Field, Ring};
use crate::base_field::{from_int, from_rational, q, x, OperatorKind, OperatorSpec, RatFunc};
use crate::jet::Jet;
use crate::matrix::SqMatrix;
use crate::mpoly::{MPoly, Monomial, Var};

/// Attempts before giving up on drawing an invertible matrix.
const MAX_DRAWS: usize = 64;

pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    /// Uniform integer in `lo..=hi`.
    pub fn int(&mut self, lo: i64, hi: i64) -> i64 {
        self.rng.gen_range(lo..=hi)
    }

    pub fn below(&mut self, n: usize) -> usize {
        self.rng.gen_range(0..n)
    }

    pub fn coin(&mut self) -> bool {
        self.rng.gen()
    }

    /// A small element of the constant field: an integer or fraction, times
    /// `(1 + k·q)` for q-dilation.
    pub fn constant(&mut self, spec: &OperatorSpec) -> RatFunc {
        let num = self.int(-4, 4);
        let den = self.int(1, 3);
        let c = from_rational(rational(num, den));
        match spec.kind {
            OperatorKind::Shift => c,
            OperatorKind::QDilation => {
                let k = self.int(-2, 2);
                c.mul(&from_int(k).mul(&q()).add(&RatFunc::one()))
            }
        }
    }

    pub fn nonzero_constant(&mut self, spec: &OperatorSpec) -> RatFunc {
        loop {
            let c = self.constant(spec);
            if !c.is_zero() {
                return c;
            }
        }
    }

    /// Polynomial in `x` of degree at most `degree` with constant-field
    /// coefficients.
    pub fn polynomial(&mut self, spec: &OperatorSpec, degree: usize) -> RatFunc {
        (0..=degree).fold(RatFunc::zero(), |acc, k| {
            let c = self.constant(spec);
            acc.add(&c.mul(&x().pow(k as u32)))
        })
    }

    /// `num/den` with both degrees at most `degree`; the denominator is
    /// redrawn until nonzero.
    pub fn ratfunc(&mut self, spec: &OperatorSpec, degree: usize) -> RatFunc {
        let num = self.polynomial(spec, degree);
        loop {
            let den = self.polynomial(spec, degree);
            if let Some(f) = num.div(&den) {
                return f;
            }
        }
    }

    /// Matrix with polynomial entries of degree at most `degree`; about a
    /// quarter of the entries are zero.
    pub fn matrix(&mut self, spec: &OperatorSpec, m: usize, degree: usize) -> SqMatrix {
        self.fill(m, |s| {
            if s.below(4) == 0 {
                RatFunc::zero()
            } else {
                s.polynomial(spec, degree)
            }
        })
    }

    fn fill(&mut self, m: usize, mut entry: impl FnMut(&mut Self) -> RatFunc) -> SqMatrix {
        let rows = (0..m).map(|_| (0..m).map(|_| entry(self)).collect()).collect();
        SqMatrix::from_rows(rows).expect("square by construction")
    }

    /// A matrix with nonzero determinant.
    pub fn invertible_matrix(&mut self, spec: &OperatorSpec, m: usize, degree: usize) -> SqMatrix {
        for _ in 0..MAX_DRAWS {
            let a = self.matrix(spec, m, degree);
            if a.det().is_ok_and(|d| !d.is_zero()) {
                return a;
            }
        }
        // Unreachable in practice; the identity plus x keeps callers total.
        SqMatrix::identity(m).scale(&x().add(&RatFunc::one()))
    }

    pub fn constant_matrix(&mut self, spec: &OperatorSpec, m: usize) -> SqMatrix {
        self.fill(m, |s| s.constant(spec))
    }

    pub fn invertible_constant_matrix(&mut self, spec: &OperatorSpec, m: usize) -> SqMatrix {
        for _ in 0..MAX_DRAWS {
            let b = self.constant_matrix(spec, m);
            if b.det().is_ok_and(|d| !d.is_zero()) {
                return b;
            }
        }
        SqMatrix::identity(m)
    }

    /// A group jet: invertible constant `B⁽⁰⁾`, arbitrary constant higher
    /// terms.
    pub fn group_jet(&mut self, spec: &OperatorSpec, order: usize, m: usize) -> Jet {
        let mut terms = vec![self.invertible_constant_matrix(spec, m)];
        terms.extend((0..order).map(|_| self.constant_matrix(spec, m)));
        Jet::new(terms).expect("square terms of one size")
    }

    /// Polynomial in the jet variables `Y⁽ʲ⁾_{ab}`, `j ≤ order`, with at
    /// most `terms` terms of total degree at most `degree`.
    pub fn jet_polynomial(&mut self, spec: &OperatorSpec, order: usize, m: usize, degree: u32, terms: usize) -> MPoly {
        let vars: Vec<Var> = (0..=order as u32)
            .flat_map(|j| (0..m as u32).flat_map(move |a| (0..m as u32).map(move |b| Var::new(j, a, b))))
            .collect();
        self.polynomial_in(spec, &vars, degree, terms)
    }

    /// Polynomial in the given variables with constant-field coefficients.
    pub fn polynomial_in(&mut self, spec: &OperatorSpec, vars: &[Var], degree: u32, terms: usize) -> MPoly {
        let mut p = MPoly::zero();
        for _ in 0..terms {
            let d = self.int(0, degree as i64) as u32;
            let powers = (0..d).map(|_| (vars[self.below(vars.len())], 1)).collect();
            let c = self.nonzero_constant(spec);
            p = p.add(&MPoly::term(c, Monomial::from_powers(powers)));
        }
        p
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic() {
        let spec = OperatorSpec::q_dilation();
        let draw = |seed| {
            let mut s = Sampler::new(seed);
            (
                s.ratfunc(&spec, 3),
                s.group_jet(&spec, 2, 2),
                s.jet_polynomial(&spec, 1, 2, 3, 4),
            )
        };
        assert_eq!(draw(7), draw(7));
        assert_ne!(draw(7).0, draw(8).0);
    }

    #[test]
    fn shapes_and_fields() {
        let spec = OperatorSpec::shift();
        let mut s = Sampler::new(1);
        for _ in 0..10 {
            let a = s.invertible_matrix(&spec, 2, 2);
            assert!(!a.det().unwrap().is_zero());
            let j = s.group_jet(&spec, 3, 2);
            assert_eq!((j.order(), j.dim()), (3, 2));
            assert!(j.is_constant(&spec));
            assert!(j.term(0).inverse().is_ok());
            let p = s.jet_polynomial(&spec, 1, 2, 3, 3);
            assert!(p.total_degree() <= 3);
            assert!(p.variables().iter().all(|v| v.order <= 1 && v.row < 2 && v.col < 2));
        }
    }
}
