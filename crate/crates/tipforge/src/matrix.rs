//! Dense real square matrices and the two structural transforms used by the
//! stability analyses: diagonal forcing and hollow scaling.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An `n x n` real matrix with finite entries, stored row-major.
///
/// Serializes as `{"n": k, "entries": [[...], ...]}` with one inner array per
/// row, which is also the JSON input format accepted by the CLI.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "MatrixRepr", into = "MatrixRepr")]
pub struct DenseMatrix {
    n: usize,
    entries: Vec<f64>,
}

#[derive(Serialize, Deserialize)]
struct MatrixRepr {
    n: usize,
    entries: Vec<Vec<f64>>,
}

impl TryFrom<MatrixRepr> for DenseMatrix {
    type Error = Error;

    fn try_from(repr: MatrixRepr) -> Result<DenseMatrix> {
        if repr.entries.len() != repr.n {
            return Err(Error::DimensionMismatch {
                message: format!(
                    "declared order {} but found {} rows",
                    repr.n,
                    repr.entries.len()
                ),
            });
        }
        DenseMatrix::from_rows(&repr.entries)
    }
}

impl From<DenseMatrix> for MatrixRepr {
    fn from(m: DenseMatrix) -> MatrixRepr {
        MatrixRepr {
            n: m.n,
            entries: m.rows(),
        }
    }
}

impl DenseMatrix {
    /// Builds a matrix from row slices, validating squareness and finiteness.
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<DenseMatrix> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::DimensionMismatch {
                message: "matrix order must be positive".to_string(),
            });
        }
        let mut entries = Vec::with_capacity(n * n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::DimensionMismatch {
                    message: format!("row {} has {} entries, expected {}", i, row.len(), n),
                });
            }
            for (j, &v) in row.iter().enumerate() {
                if !v.is_finite() {
                    return Err(Error::NonFiniteEntry { row: i, column: j });
                }
                entries.push(v);
            }
        }
        Ok(DenseMatrix { n, entries })
    }

    /// Internal constructor for values produced by our own arithmetic.
    pub(crate) fn from_flat(n: usize, entries: Vec<f64>) -> DenseMatrix {
        debug_assert_eq!(entries.len(), n * n);
        DenseMatrix { n, entries }
    }

    pub fn identity(n: usize) -> DenseMatrix {
        let mut m = DenseMatrix::zeros(n);
        for i in 0..n {
            m[(i, i)] = 1.0;
        }
        m
    }

    pub fn zeros(n: usize) -> DenseMatrix {
        DenseMatrix {
            n,
            entries: vec![0.0; n * n],
        }
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        (0..self.n)
            .map(|i| self.entries[i * self.n..(i + 1) * self.n].to_vec())
            .collect()
    }

    pub fn diagonal(&self) -> Vec<f64> {
        (0..self.n).map(|i| self[(i, i)]).collect()
    }

    pub fn transpose(&self) -> DenseMatrix {
        let mut out = DenseMatrix::zeros(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                out[(j, i)] = self[(i, j)];
            }
        }
        out
    }

    /// Max-row-sum norm.
    pub fn norm_inf(&self) -> f64 {
        (0..self.n)
            .map(|i| {
                (0..self.n)
                    .map(|j| self[(i, j)].abs())
                    .sum::<f64>()
            })
            .fold(0.0, f64::max)
    }

    /// Determinant via LU factorization with partial pivoting. A singular
    /// input simply yields 0 within rounding.
    pub fn determinant(&self) -> f64 {
        let n = self.n;
        let mut a = self.entries.clone();
        let mut det = 1.0;
        for k in 0..n {
            let mut piv = k;
            for i in k + 1..n {
                if a[i * n + k].abs() > a[piv * n + k].abs() {
                    piv = i;
                }
            }
            let pivot = a[piv * n + k];
            if pivot == 0.0 {
                return 0.0;
            }
            if piv != k {
                for j in 0..n {
                    a.swap(k * n + j, piv * n + j);
                }
                det = -det;
            }
            det *= a[k * n + k];
            for i in k + 1..n {
                let f = a[i * n + k] / a[k * n + k];
                for j in k + 1..n {
                    a[i * n + j] -= f * a[k * n + j];
                }
            }
        }
        det
    }

    /// Multiplies every diagonal entry by `sigma`, leaving the off-diagonal
    /// part untouched. `sigma = 1` reproduces the input bit for bit.
    pub fn diagonal_force(&self, sigma: f64) -> DenseMatrix {
        let mut out = self.clone();
        for i in 0..self.n {
            out[(i, i)] = sigma * self[(i, i)];
        }
        out
    }

    /// Divides each row by the magnitude of its diagonal entry and then adds
    /// the identity, producing a matrix with an exactly zero diagonal.
    ///
    /// Requires every diagonal entry to be strictly negative.
    pub fn hollow_scale(&self) -> Result<DenseMatrix> {
        self.require_negative_diagonal()?;
        let mut out = DenseMatrix::zeros(self.n);
        for i in 0..self.n {
            let d = self[(i, i)].abs();
            for j in 0..self.n {
                out[(i, j)] = if i == j { 0.0 } else { self[(i, j)] / d };
            }
        }
        Ok(out)
    }

    /// True when every elementary symmetric polynomial of the negated
    /// diagonal entries is strictly positive. Holds automatically when all
    /// diagonal entries are negative.
    pub fn diagonal_condition(&self) -> bool {
        // Coefficients of prod_i (1 + d_i t) with d_i = -a_ii; e_k is the
        // coefficient of t^k.
        let mut e = vec![0.0; self.n + 1];
        e[0] = 1.0;
        for i in 0..self.n {
            let d = -self[(i, i)];
            for k in (1..=i + 1).rev() {
                e[k] += d * e[k - 1];
            }
        }
        e[1..].iter().all(|&v| v > 0.0)
    }

    pub(crate) fn require_negative_diagonal(&self) -> Result<()> {
        for i in 0..self.n {
            if self[(i, i)] >= 0.0 {
                return Err(Error::NonNegativeDiagonal {
                    index: i,
                    value: self[(i, i)],
                });
            }
        }
        Ok(())
    }

    pub fn mul(&self, rhs: &DenseMatrix) -> DenseMatrix {
        debug_assert_eq!(self.n, rhs.n);
        let n = self.n;
        let mut out = DenseMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let v = self[(i, k)];
                if v == 0.0 {
                    continue;
                }
                for j in 0..n {
                    out[(i, j)] += v * rhs[(k, j)];
                }
            }
        }
        out
    }
}

impl std::ops::Index<(usize, usize)> for DenseMatrix {
    type Output = f64;

    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.entries[i * self.n + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for DenseMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut f64 {
        &mut self.entries[i * self.n + j]
    }
}

impl std::fmt::Display for DenseMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for i in 0..self.n {
            let row: Vec<String> = (0..self.n).map(|j| format!("{}", self[(i, j)])).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}
