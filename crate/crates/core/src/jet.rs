//! Truncated jets `(B, B′, …, B⁽ⁿ⁾)` under the Leibniz product, and the
//! block lower-triangular matrices they embed into.

use std::sync::OnceLock;

use crate::arith::Ring;
use crate::base_field::{OperatorSpec, RatFunc};
use crate::error::{Error, Result};
use crate::matrix::{Matrix, SqMatrix};

/// Largest `n` for which `binomial(n, k)` is tabulated.
pub const MAX_BINOMIAL_ROW: usize = 63;

fn pascal() -> &'static Vec<Vec<u64>> {
    static TABLE: OnceLock<Vec<Vec<u64>>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut rows: Vec<Vec<u64>> = Vec::with_capacity(MAX_BINOMIAL_ROW + 1);
        for n in 0..=MAX_BINOMIAL_ROW {
            let row = (0..=n)
                .map(|k| {
                    if k == 0 || k == n {
                        1
                    } else {
                        rows[n - 1][k - 1] + rows[n - 1][k]
                    }
                })
                .collect();
            rows.push(row);
        }
        rows
    })
}

/// `n choose k`, zero for `k > n`. Panics past [`MAX_BINOMIAL_ROW`];
/// orders are bounded far below that by configuration.
pub fn binomial(n: usize, k: usize) -> u64 {
    assert!(n <= MAX_BINOMIAL_ROW, "binomial row {n} is not tabulated");
    if k > n {
        0
    } else {
        pascal()[n][k]
    }
}

pub(crate) fn binomial_scalar<T: Ring>(n: usize, k: usize) -> T {
    T::from_i64(binomial(n, k) as i64)
}

/// A jet of `m × m` matrices, `terms[k] = B⁽ᵏ⁾`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Jet {
    terms: Vec<SqMatrix>,
}

impl Jet {
    pub fn new(terms: Vec<SqMatrix>) -> Result<Self> {
        let Some(first) = terms.first() else {
            return Err(Error::InvalidArgument("a jet needs at least B⁽⁰⁾".into()));
        };
        let m = first.rows();
        if terms.iter().any(|t| t.rows() != m || t.cols() != m) {
            return Err(Error::dims("jet terms must be square of one size"));
        }
        if terms.len() - 1 > MAX_BINOMIAL_ROW {
            return Err(Error::OrderLimit {
                requested: terms.len() - 1,
                max: MAX_BINOMIAL_ROW,
            });
        }
        Ok(Jet { terms })
    }

    /// `(B, 0, …, 0)`.
    pub fn constant(b: SqMatrix, order: usize) -> Result<Self> {
        let m = b.rows();
        let mut terms = vec![b];
        terms.extend((0..order).map(|_| SqMatrix::zeros(m, m)));
        Jet::new(terms)
    }

    /// `(I, 0, …, 0)`.
    pub fn unit(order: usize, dim: usize) -> Self {
        Jet::constant(SqMatrix::identity(dim), order).expect("well-formed unit jet")
    }

    pub fn order(&self) -> usize {
        self.terms.len() - 1
    }

    pub fn dim(&self) -> usize {
        self.terms[0].rows()
    }

    pub fn terms(&self) -> &[SqMatrix] {
        &self.terms
    }

    pub fn term(&self, k: usize) -> &SqMatrix {
        &self.terms[k]
    }

    /// The prefix `(B, …, B⁽ⁿ⁾)`.
    pub fn truncate(&self, order: usize) -> Result<Self> {
        if order > self.order() {
            return Err(Error::dims(format!(
                "cannot truncate order {} to {order}",
                self.order()
            )));
        }
        Ok(Jet {
            terms: self.terms[..=order].to_vec(),
        })
    }

    /// Whether every entry lies in the constant field of `spec`.
    pub fn is_constant(&self, spec: &OperatorSpec) -> bool {
        self.terms
            .iter()
            .flat_map(|t| t.entries())
            .all(|f| spec.in_constant_field(f))
    }

    fn check_compatible(&self, rhs: &Self) -> Result<()> {
        if self.order() != rhs.order() || self.dim() != rhs.dim() {
            return Err(Error::dims(format!(
                "jets of order/dimension {}/{} and {}/{}",
                self.order(),
                self.dim(),
                rhs.order(),
                rhs.dim()
            )));
        }
        Ok(())
    }

    /// Leibniz product: `(B·C)⁽ᵏ⁾ = Σᵢ binom(k, i) B⁽ⁱ⁾ C⁽ᵏ⁻ⁱ⁾`.
    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        self.check_compatible(rhs)?;
        let m = self.dim();
        let terms = (0..=self.order())
            .map(|k| {
                (0..=k).try_fold(SqMatrix::zeros(m, m), |acc, i| {
                    let prod = self.terms[i].mul(&rhs.terms[k - i])?;
                    acc.add(&prod.scale(&binomial_scalar(k, i)))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Jet { terms })
    }

    /// Inverse jet, solving `Σᵢ binom(k, i) B⁽ⁱ⁾ C⁽ᵏ⁻ⁱ⁾ = 0` for `C⁽ᵏ⁾`
    /// term by term, `k ≥ 1`.
    pub fn inverse(&self) -> Result<Self> {
        let b0_inv = self.terms[0].inverse()?;
        let m = self.dim();
        let mut inv: Vec<SqMatrix> = vec![b0_inv.clone()];
        for k in 1..=self.order() {
            let mut rest = SqMatrix::zeros(m, m);
            for i in 1..=k {
                let prod = self.terms[i].mul(&inv[k - i])?;
                rest = rest.add(&prod.scale(&binomial_scalar(k, i)))?;
            }
            inv.push(b0_inv.mul(&rest)?.scale(&RatFunc::from_i64(-1)));
        }
        Ok(Jet { terms: inv })
    }

    /// The block matrix with block `(r, c) = binom(r, c)·B⁽ʳ⁻ᶜ⁾`.
    pub fn to_block(&self) -> BlockLowerTriangular<RatFunc> {
        BlockLowerTriangular::from_sequence(&self.terms)
    }
}

/// `(n+1) × (n+1)` grid of `m × m` blocks, zero above the diagonal, with
/// equal diagonal blocks. Only the lower triangle is stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockLowerTriangular<T> {
    dim: usize,
    /// `rows[r][c]` for `c ≤ r`.
    rows: Vec<Vec<Matrix<T>>>,
}

impl<T: Ring> BlockLowerTriangular<T> {
    pub fn new(rows: Vec<Vec<Matrix<T>>>) -> Result<Self> {
        let Some(d) = rows.first().and_then(|r| r.first()) else {
            return Err(Error::InvalidArgument("empty block matrix".into()));
        };
        let dim = d.rows();
        let diag = d.clone();
        for (r, row) in rows.iter().enumerate() {
            if row.len() != r + 1 {
                return Err(Error::dims(format!("block row {r} must have {} blocks", r + 1)));
            }
            if row.iter().any(|b| b.rows() != dim || b.cols() != dim) {
                return Err(Error::dims("blocks must be square of one size"));
            }
            if row[r] != diag {
                return Err(Error::InvalidArgument(format!(
                    "diagonal block {r} differs from block 0"
                )));
            }
        }
        Ok(BlockLowerTriangular { dim, rows })
    }

    /// Block `(r, c) = binom(r, c)·seq[r − c]`, the common pattern of the
    /// prolonged system, the formal solution and the jet embedding.
    pub fn from_sequence(seq: &[Matrix<T>]) -> Self {
        let rows = (0..seq.len())
            .map(|r| (0..=r).map(|c| seq[r - c].scale(&binomial_scalar(r, c))).collect())
            .collect();
        BlockLowerTriangular {
            dim: seq[0].rows(),
            rows,
        }
    }

    pub fn order(&self) -> usize {
        self.rows.len() - 1
    }

    pub fn block_dim(&self) -> usize {
        self.dim
    }

    /// Block `(r, c)`; zero above the diagonal.
    pub fn block(&self, r: usize, c: usize) -> Matrix<T> {
        if c > r {
            Matrix::zeros(self.dim, self.dim)
        } else {
            self.rows[r][c].clone()
        }
    }

    /// The leading `(k+1) × (k+1)` blocks.
    pub fn leading(&self, k: usize) -> Result<Self> {
        if k > self.order() {
            return Err(Error::dims(format!("order {k} exceeds {}", self.order())));
        }
        Ok(BlockLowerTriangular {
            dim: self.dim,
            rows: self.rows[..=k].to_vec(),
        })
    }

    /// The flattened `(n+1)m × (n+1)m` matrix.
    pub fn to_matrix(&self) -> Matrix<T> {
        let size = (self.order() + 1) * self.dim;
        let mut out = Matrix::zeros(size, size);
        for (r, row) in self.rows.iter().enumerate() {
            for (c, b) in row.iter().enumerate() {
                out.set_block(r * self.dim, c * self.dim, b);
            }
        }
        out
    }

    /// Block product; the result is again block lower triangular.
    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        if self.order() != rhs.order() || self.dim != rhs.dim {
            return Err(Error::dims("block matrices of different shapes"));
        }
        let rows = (0..=self.order())
            .map(|r| {
                (0..=r)
                    .map(|c| {
                        (c..=r).try_fold(Matrix::zeros(self.dim, self.dim), |acc, k| {
                            acc.add(&self.rows[r][k].mul(&rhs.rows[k][c])?)
                        })
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(BlockLowerTriangular { dim: self.dim, rows })
    }

    /// Recovers the generating sequence from block column 0, which carries
    /// `binom(r, 0)·seq[r] = seq[r]`.
    pub fn column_zero(&self) -> Vec<Matrix<T>> {
        self.rows.iter().map(|row| row[0].clone()).collect()
    }
}

/// Named wrappers matching the operation list.
pub fn jet_mul(b: &Jet, c: &Jet) -> Result<Jet> {
    b.mul(c)
}

pub fn jet_inv(b: &Jet) -> Result<Jet> {
    b.inverse()
}

pub fn jet_to_block(b: &Jet) -> BlockLowerTriangular<RatFunc> {
    b.to_block()
}
