//! Truncated normal-matrix algebra.
//!
//! Every matrix here is a principal `(N+1) x (N+1)` section of an infinite
//! lower-triangular matrix. Because the matrices are triangular, the first
//! `N+1` outputs of any product or transform are exact at truncation.

use crate::error::{Error, Result};
use crate::par::{map_range, Exec};
use crate::scalar::Scalar;

/// Row-packed lower-triangular array. Entry `(n, v)` exists for `v <= n`.
///
/// This is the storage for the bar matrix and the operator matrices of the
/// sufficiency argument, none of which is required to be normal.
#[derive(Debug, Clone, PartialEq)]
pub struct LowerTriangular<T> {
    dim: usize,
    data: Vec<T>,
}

#[inline]
fn offset(n: usize) -> usize {
    n * (n + 1) / 2
}

impl<T: Scalar> LowerTriangular<T> {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            data: vec![T::zero(); offset(dim)],
        }
    }

    /// Build from a closure evaluated at every `(n, v)` with `v <= n < dim`.
    pub fn from_fn(dim: usize, f: impl Fn(usize, usize) -> T + Sync + Send) -> Self {
        Self::from_fn_with(Exec::default(), dim, f)
    }

    pub fn from_fn_with(
        exec: Exec,
        dim: usize,
        f: impl Fn(usize, usize) -> T + Sync + Send,
    ) -> Self {
        let rows = map_range(exec, 0..dim, |n| {
            (0..=n).map(|v| f(n, v)).collect::<Vec<_>>()
        });
        Self::from_rows_unchecked(rows)
    }

    fn from_rows_unchecked(rows: Vec<Vec<T>>) -> Self {
        let dim = rows.len();
        let mut data = Vec::with_capacity(offset(dim));
        for row in rows {
            data.extend(row);
        }
        Self { dim, data }
    }

    /// Build from ragged rows. Row `n` may have `n + 1` entries, or `dim`
    /// entries whose upper part is zero.
    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let dim = rows.len();
        let mut trimmed = Vec::with_capacity(dim);
        for (n, mut row) in rows.into_iter().enumerate() {
            if row.len() == dim && dim != n + 1 {
                if row[n + 1..].iter().any(|x| !x.is_zero()) {
                    return Err(Error::ShapeMismatch {
                        row: n,
                        expected: n + 1,
                        found: row.len(),
                    });
                }
                row.truncate(n + 1);
            } else if row.len() != n + 1 {
                return Err(Error::ShapeMismatch {
                    row: n,
                    expected: n + 1,
                    found: row.len(),
                });
            }
            trimmed.push(row);
        }
        Ok(Self::from_rows_unchecked(trimmed))
    }

    /// Number of rows, i.e. `N + 1`.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Entry `(n, v)`; panics if `v > n` or `n >= dim`.
    #[inline]
    pub fn at(&self, n: usize, v: usize) -> &T {
        assert!(
            v <= n && n < self.dim,
            "entry ({n}, {v}) outside lower triangle"
        );
        &self.data[offset(n) + v]
    }

    /// Entry `(n, v)`, zero above the diagonal.
    pub fn get(&self, n: usize, v: usize) -> T {
        if v > n {
            T::zero()
        } else {
            self.at(n, v).clone()
        }
    }

    pub fn row(&self, n: usize) -> &[T] {
        &self.data[offset(n)..offset(n + 1)]
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> LowerTriangular<U> {
        LowerTriangular {
            dim: self.dim,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn to_f64(&self) -> LowerTriangular<f64> {
        self.map(|x| x.to_f64())
    }

    /// Leading `dim x dim` section.
    pub fn truncate(&self, dim: usize) -> Self {
        let dim = dim.min(self.dim);
        Self {
            dim,
            data: self.data[..offset(dim)].to_vec(),
        }
    }

    pub fn rows(&self) -> Vec<Vec<T>> {
        (0..self.dim).map(|n| self.row(n).to_vec()).collect()
    }

    /// Product of two lower-triangular sections.
    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        if self.dim != rhs.dim {
            return Err(Error::SizeMismatch(format!(
                "product of {} and {} sections",
                self.dim, rhs.dim
            )));
        }
        Ok(Self::from_fn(self.dim, |n, v| {
            T::sum_iter((v..=n).map(|k| self.at(n, k).clone() * rhs.at(k, v).clone()))
        }))
    }
}

/// Lower-triangular matrix with nonzero diagonal.
#[derive(Debug, Clone, PartialEq)]
pub struct NormalMatrix<T>(LowerTriangular<T>);

impl<T: Scalar> NormalMatrix<T> {
    pub fn new(entries: LowerTriangular<T>) -> Result<Self> {
        for n in 0..entries.dim() {
            if entries.at(n, n).is_zero() {
                return Err(Error::ZeroDiagonal(n));
            }
        }
        Ok(Self(entries))
    }

    pub fn identity(order: usize) -> Self {
        Self(LowerTriangular::from_fn(order + 1, |n, v| {
            if n == v {
                T::one()
            } else {
                T::zero()
            }
        }))
    }

    /// Cesaro means `(C, 1)`: the Riesz matrix with unit weights.
    pub fn cesaro(order: usize) -> Self {
        Self(LowerTriangular::from_fn(order + 1, |n, _| {
            T::one() / T::from_usize(n + 1)
        }))
    }

    pub fn dim(&self) -> usize {
        self.0.dim()
    }

    /// Truncation order `N`.
    pub fn order(&self) -> usize {
        self.0.dim() - 1
    }

    pub fn at(&self, n: usize, v: usize) -> &T {
        self.0.at(n, v)
    }

    pub fn get(&self, n: usize, v: usize) -> T {
        self.0.get(n, v)
    }

    pub fn diag(&self, n: usize) -> &T {
        self.0.at(n, n)
    }

    pub fn as_lower(&self) -> &LowerTriangular<T> {
        &self.0
    }

    pub fn into_lower(self) -> LowerTriangular<T> {
        self.0
    }

    pub fn truncate(&self, dim: usize) -> Self {
        Self(self.0.truncate(dim))
    }

    pub fn to_f64(&self) -> NormalMatrix<f64> {
        NormalMatrix(self.0.to_f64())
    }
}

/// Validate raw lower-triangular entries of order `N` as a normal matrix.
pub fn make_normal<T: Scalar>(entries: Vec<Vec<T>>, order: usize) -> Result<NormalMatrix<T>> {
    if entries.len() != order + 1 {
        return Err(Error::ShapeMismatch {
            row: entries.len().min(order + 1),
            expected: order + 1,
            found: entries.len(),
        });
    }
    NormalMatrix::new(LowerTriangular::from_rows(entries)?)
}

/// Positive weights `p_n` with their cumulative sums `P_n`.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightSequence<T> {
    weights: Vec<T>,
    cumulative: Vec<T>,
}

impl<T: Scalar> WeightSequence<T> {
    pub fn new(weights: Vec<T>) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::LengthMismatch {
                expected: 1,
                found: 0,
            });
        }
        for (index, w) in weights.iter().enumerate() {
            if *w <= T::zero() {
                return Err(Error::NonPositiveWeight {
                    index,
                    value: w.to_f64(),
                });
            }
        }
        let mut cumulative = Vec::with_capacity(weights.len());
        let mut acc = T::zero();
        for w in &weights {
            acc = acc + w.clone();
            cumulative.push(acc.clone());
        }
        Ok(Self {
            weights,
            cumulative,
        })
    }

    pub fn constant(value: T, len: usize) -> Result<Self> {
        Self::new(vec![value; len])
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    /// `p_n`.
    pub fn weight(&self, n: usize) -> &T {
        &self.weights[n]
    }

    /// `P_n`.
    pub fn cumulative(&self, n: usize) -> &T {
        &self.cumulative[n]
    }

    /// `P_{n-1}`, with `P_{-1} = 0`.
    pub fn cumulative_before(&self, n: usize) -> T {
        if n == 0 {
            T::zero()
        } else {
            self.cumulative[n - 1].clone()
        }
    }

    pub fn weights(&self) -> &[T] {
        &self.weights
    }
}

/// Riesz matrix `a_nv = p_v / P_n` of order `N`.
pub fn riesz_matrix<T: Scalar>(w: &WeightSequence<T>, order: usize) -> Result<NormalMatrix<T>> {
    if w.len() < order + 1 {
        return Err(Error::LengthMismatch {
            expected: order + 1,
            found: w.len(),
        });
    }
    NormalMatrix::new(LowerTriangular::from_fn(order + 1, |n, v| {
        w.weight(v).clone() / w.cumulative(n).clone()
    }))
}

/// Row tail sums `abar_nv = sum_{i=v}^{n} a_ni`.
pub fn bar_of<T: Scalar>(a: &NormalMatrix<T>) -> LowerTriangular<T> {
    let dim = a.dim();
    let rows = map_range(Exec::default(), 0..dim, |n| {
        let row = a.as_lower().row(n);
        let mut out = vec![T::zero(); n + 1];
        let mut acc = T::zero();
        for v in (0..=n).rev() {
            acc = acc + row[v].clone();
            out[v] = acc.clone();
        }
        out
    });
    LowerTriangular::from_rows_unchecked(rows)
}

/// Series-to-series matrix `ahat_nv = abar_nv - abar_{n-1,v}`, `ahat_00 = a_00`.
pub fn hat_of<T: Scalar>(a: &NormalMatrix<T>) -> NormalMatrix<T> {
    let bar = bar_of(a);
    hat_from_bar(&bar)
}

pub(crate) fn hat_from_bar<T: Scalar>(bar: &LowerTriangular<T>) -> NormalMatrix<T> {
    let hat = LowerTriangular::from_fn(bar.dim(), |n, v| {
        if n == 0 || v == n {
            bar.at(n, v).clone()
        } else {
            bar.at(n, v).clone() - bar.at(n - 1, v).clone()
        }
    });
    // diagonal equals the diagonal of the source matrix, so normality carries over
    NormalMatrix(hat)
}

/// Two-sided inverse of a normal matrix by column-wise forward substitution.
pub fn invert_hat<T: Scalar>(h: &NormalMatrix<T>) -> NormalMatrix<T> {
    invert_hat_with(Exec::default(), h)
}

pub fn invert_hat_with<T: Scalar>(exec: Exec, h: &NormalMatrix<T>) -> NormalMatrix<T> {
    let dim = h.dim();
    let cols = map_range(exec, 0..dim, |j| {
        // column j of the inverse, entries j..dim
        let mut col: Vec<T> = Vec::with_capacity(dim - j);
        col.push(T::one() / h.diag(j).clone());
        for i in j + 1..dim {
            let row = h.as_lower().row(i);
            let s = T::sum_iter((j..i).map(|k| row[k].clone() * col[k - j].clone()));
            col.push(-s / row[i].clone());
        }
        col
    });
    let inv = LowerTriangular::from_fn_with(exec, dim, |n, v| cols[v][n - v].clone());
    NormalMatrix(inv)
}

/// `result_n = sum_{v=0}^{n} m_nv x_v`.
pub fn apply_lower<T: Scalar>(m: &LowerTriangular<T>, x: &[T]) -> Result<Vec<T>> {
    if x.len() < m.dim() {
        return Err(Error::LengthMismatch {
            expected: m.dim(),
            found: x.len(),
        });
    }
    Ok((0..m.dim())
        .map(|n| T::sum_iter(m.row(n).iter().zip(x).map(|(a, b)| a.clone() * b.clone())))
        .collect())
}

/// Largest entry of `|m - I|`.
pub fn identity_defect<T: Scalar>(m: &LowerTriangular<T>) -> T {
    let mut worst = T::zero();
    for n in 0..m.dim() {
        for v in 0..=n {
            let target = if n == v { T::one() } else { T::zero() };
            worst = T::max_of(worst, (m.at(n, v).clone() - target).abs());
        }
    }
    worst
}
