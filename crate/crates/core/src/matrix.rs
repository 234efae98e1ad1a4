//! Dense exact matrices over any [`Ring`], with determinant and inverse
//! over fields, and the entrywise σ and δ actions on carrier matrices.

use crate::arith::{Field, Ring};
use crate::base_field::{OperatorSpec, RatFunc};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

/// A square matrix over the carrier field.
pub type SqMatrix = Matrix<RatFunc>;

impl<T: Ring> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { T::one() } else { T::zero() })
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> T) -> Self {
        let data = (0..rows * cols).map(|k| f(k / cols, k % cols)).collect();
        Matrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::dims("ragged rows"));
        }
        let n = rows.len();
        Ok(Matrix {
            rows: n,
            cols,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: T) {
        self.data[i * self.cols + j] = value;
    }

    pub fn row_vecs(&self) -> Vec<Vec<T>> {
        self.data
            .chunks(self.cols.max(1))
            .map(<[T]>::to_vec)
            .take(self.rows)
            .collect()
    }

    pub fn entries(&self) -> impl Iterator<Item = &T> {
        self.data.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(T::is_zero)
    }

    pub fn map<U: Ring>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    fn same_shape(&self, rhs: &Self) -> Result<()> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(Error::dims(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        Ok(())
    }

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        self.same_shape(rhs)?;
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a.add(b)).collect(),
        })
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self> {
        self.same_shape(rhs)?;
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a.sub(b)).collect(),
        })
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::dims(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * out.cols + j;
                    out.data[idx] = out.data[idx].add(&a.mul(b));
                }
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &T) -> Self {
        self.map(|a| a.mul(c))
    }

    /// Copies the `rows × cols` submatrix at `(r0, c0)`.
    pub fn submatrix(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Self {
        Self::from_fn(rows, cols, |i, j| self.get(r0 + i, c0 + j).clone())
    }

    /// Writes `block` with its top-left corner at `(r0, c0)`.
    pub fn set_block(&mut self, r0: usize, c0: usize, block: &Self) {
        for i in 0..block.rows {
            for j in 0..block.cols {
                self.set(r0 + i, c0 + j, block.get(i, j).clone());
            }
        }
    }
}

impl<T: Field> Matrix<T> {
    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> Result<T> {
        if !self.is_square() {
            return Err(Error::dims("determinant of a non-square matrix"));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(T::one());
        }
        let mut a = self.row_vecs();
        let mut negate = false;
        let mut prev = T::one();
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                let Some(p) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                    return Ok(T::zero());
                };
                a.swap(k, p);
                negate = !negate;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let t = a[i][j].mul(&a[k][k]).sub(&a[i][k].mul(&a[k][j]));
                    a[i][j] = t.div(&prev).expect("Bareiss pivot is nonzero");
                }
            }
            prev = a[k][k].clone();
        }
        let d = a[n - 1][n - 1].clone();
        Ok(if negate { d.neg() } else { d })
    }

    /// Inverse by Gauss-Jordan elimination.
    pub fn inverse(&self) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::dims("inverse of a non-square matrix"));
        }
        let n = self.rows;
        let mut a = self.row_vecs();
        let mut inv = Self::identity(n).row_vecs();
        for k in 0..n {
            let p = (k..n).find(|&i| !a[i][k].is_zero()).ok_or(Error::Singular)?;
            a.swap(k, p);
            inv.swap(k, p);
            let pivot_inv = a[k][k].inv().expect("nonzero pivot");
            for j in 0..n {
                a[k][j] = a[k][j].mul(&pivot_inv);
                inv[k][j] = inv[k][j].mul(&pivot_inv);
            }
            for i in 0..n {
                if i == k || a[i][k].is_zero() {
                    continue;
                }
                let f = a[i][k].clone();
                for j in 0..n {
                    a[i][j] = a[i][j].sub(&f.mul(&a[k][j]));
                    inv[i][j] = inv[i][j].sub(&f.mul(&inv[k][j]));
                }
            }
        }
        Matrix::from_rows(inv)
    }
}

/// Entrywise σ.
pub fn mat_sigma(spec: &OperatorSpec, a: &SqMatrix) -> SqMatrix {
    a.map(|f| spec.apply_sigma(f))
}

/// Entrywise σⁿ, n any integer.
pub fn mat_sigma_pow(spec: &OperatorSpec, a: &SqMatrix, n: i64) -> SqMatrix {
    a.map(|f| spec.apply_sigma_pow(f, n))
}

/// Entrywise δ.
pub fn mat_delta(spec: &OperatorSpec, a: &SqMatrix) -> SqMatrix {
    a.map(|f| spec.apply_delta(f))
}

/// Parses a matrix of expression strings in the grammar of `spec`.
pub fn parse_matrix(spec: &OperatorSpec, rows: &[Vec<String>]) -> Result<SqMatrix> {
    let parsed = rows
        .iter()
        .map(|r| r.iter().map(|s| spec.parse(s)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    Matrix::from_rows(parsed)
}

pub fn format_matrix(a: &SqMatrix) -> Vec<Vec<String>> {
    a.row_vecs()
        .iter()
        .map(|r| r.iter().map(crate::base_field::format_ratfunc).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::base_field::{from_int, x};

    fn shift() -> OperatorSpec {
        OperatorSpec::shift()
    }

    fn m(rows: &[&[&str]]) -> SqMatrix {
        let rows: Vec<Vec<String>> = rows.iter().map(|r| r.iter().map(|s| s.to_string()).collect()).collect();
        parse_matrix(&shift(), &rows).unwrap()
    }

    #[test]
    fn det_and_inverse() {
        assert_eq!(SqMatrix::identity(2).det().unwrap(), from_int(1));
        assert_eq!(
            m(&[&["x", "0"], &["0", "1"]]).inverse().unwrap(),
            m(&[&["1/x", "0"], &["0", "1"]])
        );
        let a = m(&[&["x", "1", "2"], &["x^2", "0", "1"], &["1", "x", "x+1"]]);
        let id = a.mul(&a.inverse().unwrap()).unwrap();
        assert_eq!(id, SqMatrix::identity(3));
        // Cofactor expansion along the first row, by hand:
        // x(0·(x+1) − x) − 1(x²(x+1) − 1) + 2(x³ − 0) = x³ − 2x² + 1
        assert_eq!(a.det().unwrap(), shift().parse("x^3 - 2*x^2 + 1").unwrap());
    }

    #[test]
    fn pivoting_and_singular() {
        let a = m(&[&["0", "1"], &["1", "0"]]);
        assert_eq!(a.det().unwrap(), from_int(-1));
        let s = m(&[&["x", "x^2"], &["1", "x"]]);
        assert_eq!(s.det().unwrap(), from_int(0));
        assert_eq!(s.inverse(), Err(Error::Singular));
        assert!(m(&[&["1", "2"]]).det().is_err());
        assert!(a.mul(&m(&[&["1", "2", "3"]])).is_err());
    }

    #[test]
    fn entrywise_operators() {
        let a = m(&[&["x", "1"], &["0", "x^2"]]);
        assert_eq!(mat_delta(&shift(), &a), m(&[&["1", "0"], &["0", "2*x"]]));
        assert_eq!(mat_sigma(&shift(), &m(&[&["x"]])), m(&[&["x+1"]]));
        let d2 = mat_delta(&shift(), &mat_delta(&shift(), &m(&[&["x^2"]])));
        assert_eq!(d2, m(&[&["2"]]));
        assert_eq!(
            mat_sigma_pow(&shift(), &m(&[&["x"]]), -1).get(0, 0),
            &x().sub(&from_int(1))
        );
    }
}
