//! Twisted σ-power products `A_l = σ^{l−1}(A)·…·σ(A)·A`, the matrix of the
//! iterated system `σˡ(X) = A_l X`.

use crate::base_field::OperatorSpec;
use crate::error::{Error, Result};
use crate::matrix::{mat_sigma_pow, SqMatrix};

pub fn sigma_power_product(spec: &OperatorSpec, a: &SqMatrix, l: usize) -> Result<SqMatrix> {
    if l == 0 {
        return Err(Error::InvalidArgument("the power l must be at least 1".into()));
    }
    if !a.is_square() {
        return Err(Error::dims("the system matrix must be square"));
    }
    (1..l).try_fold(a.clone(), |acc, k| mat_sigma_pow(spec, a, k as i64).mul(&acc))
}

/// `A_{a+b} = σᵇ(A_a)·A_b`.
pub fn cocycle_check(spec: &OperatorSpec, a: &SqMatrix, left: usize, right: usize) -> Result<bool> {
    let whole = sigma_power_product(spec, a, left + right)?;
    let head = mat_sigma_pow(spec, &sigma_power_product(spec, a, left)?, right as i64);
    Ok(whole == head.mul(&sigma_power_product(spec, a, right)?)?)
}
