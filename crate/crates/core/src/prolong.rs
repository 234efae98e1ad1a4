//! Prolongation of `σ(X) = AX` to the pure difference system on
//! `(X, X′, …, X⁽ⁿ⁾)`:
//!
//! ```text
//! σ(X⁽ʲ⁾) = Σ_{i=0}^{j} binom(j, i) A⁽ⁱ⁾ X⁽ʲ⁻ⁱ⁾
//! ```
//!
//! whose matrix `𝒜ₙ` has block `(j, i) = binom(j, i)·A⁽ʲ⁻ⁱ⁾`, and whose
//! fundamental solution `𝒳ₙ` has block `(j, i) = binom(j, i)·X⁽ʲ⁻ⁱ⁾`.

use crate::arith::Ring;
use crate::base_field::{OperatorSpec, RatFunc};
use crate::error::{Error, Result};
use crate::jet::{binomial_scalar, BlockLowerTriangular};
use crate::matrix::{mat_delta, Matrix, SqMatrix};
use crate::mpoly::{MPoly, Var};
use crate::Limits;

/// The order-`n` prolonged system of `A`.
#[derive(Clone, Debug, PartialEq)]
pub struct ProlongedSystem {
    spec: OperatorSpec,
    base: SqMatrix,
    /// `A, A′, …, A⁽ⁿ⁾`
    derivatives: Vec<SqMatrix>,
    blocks: BlockLowerTriangular<RatFunc>,
}

impl ProlongedSystem {
    pub fn spec(&self) -> OperatorSpec {
        self.spec
    }

    pub fn base(&self) -> &SqMatrix {
        &self.base
    }

    pub fn order(&self) -> usize {
        self.derivatives.len() - 1
    }

    pub fn dim(&self) -> usize {
        self.base.rows()
    }

    pub fn derivatives(&self) -> &[SqMatrix] {
        &self.derivatives
    }

    pub fn blocks(&self) -> &BlockLowerTriangular<RatFunc> {
        &self.blocks
    }

    pub fn to_matrix(&self) -> SqMatrix {
        self.blocks.to_matrix()
    }
}

/// `A, δA, …, δⁿA`.
pub fn derivative_tower(spec: &OperatorSpec, a: &SqMatrix, n: usize) -> Vec<SqMatrix> {
    let mut out = Vec::with_capacity(n + 1);
    out.push(a.clone());
    for k in 0..n {
        let next = mat_delta(spec, &out[k]);
        out.push(next);
    }
    out
}

fn check_system_matrix(a: &SqMatrix) -> Result<()> {
    if !a.is_square() || a.rows() == 0 {
        return Err(Error::dims("the system matrix must be square and nonempty"));
    }
    if a.det()?.is_zero() {
        return Err(Error::Singular);
    }
    Ok(())
}

pub fn prolong_system(spec: &OperatorSpec, a: &SqMatrix, n: usize, limits: &Limits) -> Result<ProlongedSystem> {
    limits.check_order(n)?;
    check_system_matrix(a)?;
    let derivatives = derivative_tower(spec, a, n);
    let blocks = BlockLowerTriangular::from_sequence(&derivatives);
    Ok(ProlongedSystem {
        spec: *spec,
        base: a.clone(),
        derivatives,
        blocks,
    })
}

/// The formal symbols `X⁽⁰⁾, …, X⁽ⁿ⁾`, each an `m × m` matrix of commuting
/// indeterminates, with σ and δ acting by rewriting.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FormalSolutionVars {
    pub order: usize,
    pub dim: usize,
}

impl FormalSolutionVars {
    pub fn new(order: usize, dim: usize) -> Self {
        FormalSolutionVars { order, dim }
    }

    /// The indeterminate matrix `X⁽ʲ⁾`.
    pub fn symbol(&self, j: usize) -> Matrix<MPoly> {
        Matrix::from_fn(self.dim, self.dim, |a, b| {
            MPoly::var(Var::new(j as u32, a as u32, b as u32))
        })
    }

    /// `σ(X⁽ʲ⁾) = Σᵢ binom(j, i) A⁽ⁱ⁾ X⁽ʲ⁻ⁱ⁾`, given `A, …, A⁽ʲ⁾`.
    pub fn sigma_image(&self, derivatives: &[SqMatrix], j: usize) -> Result<Matrix<MPoly>> {
        (0..=j).try_fold(Matrix::zeros(self.dim, self.dim), |acc, i| {
            let term = lift(&derivatives[i]).mul(&self.symbol(j - i))?;
            acc.add(&term.scale(&binomial_scalar(j, i)))
        })
    }

    /// `δ(X⁽ʲ⁾) = X⁽ʲ⁺¹⁾`; `None` past the top order.
    pub fn delta_image(&self, j: usize) -> Option<Matrix<MPoly>> {
        (j < self.order).then(|| self.symbol(j + 1))
    }
}

/// Embeds a carrier matrix as constant polynomials.
pub fn lift(a: &SqMatrix) -> Matrix<MPoly> {
    a.map(|f| MPoly::constant(f.clone()))
}

/// `𝒳ₙ` with block `(j, i) = binom(j, i)·X⁽ʲ⁻ⁱ⁾`.
pub fn formal_solution_block(n: usize, m: usize) -> Result<BlockLowerTriangular<MPoly>> {
    if m == 0 {
        return Err(Error::InvalidArgument("dimension must be at least 1".into()));
    }
    let vars = FormalSolutionVars::new(n, m);
    let seq: Vec<Matrix<MPoly>> = (0..=n).map(|j| vars.symbol(j)).collect();
    Ok(BlockLowerTriangular::from_sequence(&seq))
}

/// Checks `σ(𝒳ₙ) = candidate·𝒳ₙ` symbolically, where σ acts on the entries
/// of `𝒳ₙ` by the prolonged rewriting rule for `A` and `candidate` is any
/// `(n+1)m`-square matrix (normally the flattened `𝒜ₙ`).
pub fn verify_against(spec: &OperatorSpec, a: &SqMatrix, n: usize, candidate: &SqMatrix) -> Result<bool> {
    let m = a.rows();
    let size = (n + 1) * m;
    if candidate.rows() != size || candidate.cols() != size {
        return Err(Error::dims(format!("candidate must be {size}x{size}")));
    }
    let vars = FormalSolutionVars::new(n, m);
    let derivatives = derivative_tower(spec, a, n);
    let images: Vec<Matrix<MPoly>> = (0..=n)
        .map(|j| vars.sigma_image(&derivatives, j))
        .collect::<Result<_>>()?;
    let x = formal_solution_block(n, m)?.to_matrix();
    let sigma_x = x.map(|p| {
        p.substitute(
            |c| spec.apply_sigma(c),
            |v| images[v.order as usize].get(v.row as usize, v.col as usize).clone(),
        )
    });
    Ok(lift(candidate).mul(&x)? == sigma_x)
}

/// `σ(𝒳ₙ) = 𝒜ₙ·𝒳ₙ` for the prolongation of `A`.
pub fn verify_fundamental(spec: &OperatorSpec, a: &SqMatrix, n: usize, limits: &Limits) -> Result<bool> {
    let system = prolong_system(spec, a, n, limits)?;
    verify_against(spec, a, n, &system.to_matrix())
}

/// Derives `σ(X⁽ʲ⁾) = δʲ(AX)` by repeated Leibniz differentiation, using
/// only `σδ = δσ` and `δ(X⁽ⁱ⁾) = X⁽ⁱ⁺¹⁾`, and compares it with the
/// binomial closed form.
pub fn eq2_from_leibniz(spec: &OperatorSpec, a: &SqMatrix, j: usize, limits: &Limits) -> Result<bool> {
    limits.check_order(j)?;
    if !a.is_square() {
        return Err(Error::dims("the system matrix must be square"));
    }
    let m = a.rows();
    let vars = FormalSolutionVars::new(j, m);
    let mut derived = lift(a).mul(&vars.symbol(0))?;
    for _ in 0..j {
        derived = derived.map(|p| p.derive(|c| spec.apply_delta(c)));
    }
    let closed = vars.sigma_image(&derivative_tower(spec, a, j), j)?;
    Ok(derived == closed)
}
