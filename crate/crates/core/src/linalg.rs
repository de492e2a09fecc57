//! Small dense complex linear algebra.
//!
//! Matrices here are tall and thin (at most a few hundred rows, a handful of
//! columns in the Gram products), so a column-major `Vec` with naive loops is
//! all that is needed.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Index, IndexMut};

// Shadowed by inherent float methods whenever std is linked.
#[allow(unused_imports)]
use num_traits::Float;

use crate::{Error, Result, C64};

/// Pivot ratio beyond which a Gram matrix counts as singular. The pivots of
/// the Gram factor behave like singular values of the channel matrix, and
/// forming the Gram squares the condition number, so exactly colinear
/// columns leave a residual pivot near `sqrt(eps)` relative to the largest.
pub const SINGULAR_PIVOT_RATIO: f64 = 1e7;

/// Conjugate inner product `a^H b`.
pub fn dot(a: &[C64], b: &[C64]) -> C64 {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

pub fn norm_sq(v: &[C64]) -> f64 {
    v.iter().map(|x| x.norm_sqr()).sum()
}

pub fn norm(v: &[C64]) -> f64 {
    norm_sq(v).sqrt()
}

/// Dense complex matrix in column-major order.
#[derive(Debug, Clone, PartialEq)]
pub struct CMatrix {
    rows: usize,
    cols: usize,
    data: Vec<C64>,
}

impl CMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![C64::new(0.0, 0.0); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = C64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for j in 0..cols {
            for i in 0..rows {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    /// Builds a matrix whose columns are the given vectors. All columns
    /// must have the same length.
    pub fn from_columns<V: AsRef<[C64]>>(columns: &[V]) -> Result<Self> {
        let rows = columns.first().map_or(0, |c| c.as_ref().len());
        let mut data = Vec::with_capacity(rows * columns.len());
        for c in columns {
            let c = c.as_ref();
            if c.len() != rows {
                return Err(Error::DimensionMismatch {
                    expected: (rows, 1),
                    found: (c.len(), 1),
                });
            }
            data.extend_from_slice(c);
        }
        Ok(Self {
            rows,
            cols: columns.len(),
            data,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn col(&self, j: usize) -> &[C64] {
        &self.data[j * self.rows..(j + 1) * self.rows]
    }

    pub fn col_mut(&mut self, j: usize) -> &mut [C64] {
        &mut self.data[j * self.rows..(j + 1) * self.rows]
    }

    pub fn columns(&self) -> impl Iterator<Item = &[C64]> + '_ {
        (0..self.cols).map(move |j| self.col(j))
    }

    /// Raw column-major storage.
    pub fn as_slice(&self) -> &[C64] {
        &self.data
    }

    pub fn push_column(&mut self, column: &[C64]) -> Result<()> {
        if self.cols > 0 && column.len() != self.rows {
            return Err(Error::DimensionMismatch {
                expected: (self.rows, 1),
                found: (column.len(), 1),
            });
        }
        if self.cols == 0 {
            self.rows = column.len();
        }
        self.data.extend_from_slice(column);
        self.cols += 1;
        Ok(())
    }

    /// Copies the listed columns, in order, into a new matrix.
    pub fn select_columns(&self, indices: &[usize]) -> Self {
        let mut data = Vec::with_capacity(self.rows * indices.len());
        for &j in indices {
            data.extend_from_slice(self.col(j));
        }
        Self {
            rows: self.rows,
            cols: indices.len(),
            data,
        }
    }

    /// `self^H * other`.
    pub fn adjoint_mul(&self, other: &CMatrix) -> Result<CMatrix> {
        if self.rows != other.rows {
            return Err(Error::DimensionMismatch {
                expected: (self.rows, other.cols),
                found: other.shape(),
            });
        }
        Ok(CMatrix::from_fn(self.cols, other.cols, |i, j| {
            dot(self.col(i), other.col(j))
        }))
    }

    /// `self * other`.
    pub fn mul(&self, other: &CMatrix) -> Result<CMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                expected: (self.cols, other.cols),
                found: other.shape(),
            });
        }
        let mut out = CMatrix::zeros(self.rows, other.cols);
        for j in 0..other.cols {
            for (k, &b) in other.col(j).iter().enumerate() {
                let a = self.col(k);
                for (o, &x) in out.col_mut(j).iter_mut().zip(a) {
                    *o += x * b;
                }
            }
        }
        Ok(out)
    }

    /// `self^H * self`.
    pub fn gram(&self) -> CMatrix {
        let n = self.cols;
        let mut g = CMatrix::zeros(n, n);
        for j in 0..n {
            for i in 0..=j {
                let v = dot(self.col(i), self.col(j));
                g[(i, j)] = v;
                g[(j, i)] = v.conj();
            }
        }
        g
    }

    pub fn column_norm_sq(&self, j: usize) -> f64 {
        norm_sq(self.col(j))
    }

    /// Squared Euclidean norm of every row, i.e. the diagonal of `A A^H`.
    pub fn row_norms_sq(&self) -> Vec<f64> {
        let mut out = vec![0.0; self.rows];
        for c in self.columns() {
            for (o, x) in out.iter_mut().zip(c) {
                *o += x.norm_sqr();
            }
        }
        out
    }

    /// Largest entrywise deviation from another matrix of the same shape.
    pub fn max_abs_diff(&self, other: &CMatrix) -> f64 {
        assert_eq!(self.shape(), other.shape());
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

impl Index<(usize, usize)> for CMatrix {
    type Output = C64;

    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        &self.data[j * self.rows + i]
    }
}

impl IndexMut<(usize, usize)> for CMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        &mut self.data[j * self.rows + i]
    }
}

/// Lower-triangular Cholesky factor of a Hermitian positive definite matrix.
#[derive(Debug, Clone)]
pub struct Cholesky {
    l: CMatrix,
}

impl Cholesky {
    /// Factors `a = L L^H`. Fails with [`Error::Singular`] when a pivot is
    /// non-positive or the pivot ratio exceeds [`SINGULAR_PIVOT_RATIO`].
    pub fn new(a: &CMatrix) -> Result<Self> {
        let n = a.rows();
        if a.cols() != n {
            return Err(Error::DimensionMismatch {
                expected: (n, n),
                found: a.shape(),
            });
        }
        let mut l = CMatrix::zeros(n, n);
        let (mut min_piv, mut max_piv) = (f64::INFINITY, 0.0f64);
        for j in 0..n {
            let mut d = a[(j, j)].re;
            for k in 0..j {
                d -= l[(j, k)].norm_sqr();
            }
            if d.is_nan() || d <= 0.0 {
                return Err(Error::Singular);
            }
            let d = d.sqrt();
            min_piv = min_piv.min(d);
            max_piv = max_piv.max(d);
            l[(j, j)] = C64::new(d, 0.0);
            for i in j + 1..n {
                let mut s = a[(i, j)];
                for k in 0..j {
                    s -= l[(i, k)] * l[(j, k)].conj();
                }
                l[(i, j)] = s / d;
            }
        }
        if n > 0 && max_piv / min_piv > SINGULAR_PIVOT_RATIO {
            return Err(Error::Singular);
        }
        Ok(Self { l })
    }

    /// Solves `a x = b` in place for one right-hand side.
    pub fn solve_in_place(&self, b: &mut [C64]) {
        let n = self.l.rows();
        let l = &self.l;
        for i in 0..n {
            let mut s = b[i];
            for k in 0..i {
                s -= l[(i, k)] * b[k];
            }
            b[i] = s / l[(i, i)].re;
        }
        for i in (0..n).rev() {
            let mut s = b[i];
            for k in i + 1..n {
                s -= l[(k, i)].conj() * b[k];
            }
            b[i] = s / l[(i, i)].re;
        }
    }

    pub fn inverse(&self) -> CMatrix {
        let n = self.l.rows();
        let mut inv = CMatrix::identity(n);
        for j in 0..n {
            self.solve_in_place(inv.col_mut(j));
        }
        inv
    }
}
