//! Series, partial-sum transforms and truncated `|A|_k` norms.

use crate::error::{Error, Result};
use crate::matrix::{apply_lower, hat_of, NormalMatrix};
use crate::scalar::{index_weight, Scalar};

/// Summability exponent `k >= 1`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Exponent(f64);

impl Exponent {
    pub fn new(k: f64) -> Result<Self> {
        if k.is_finite() && k >= 1.0 {
            Ok(Self(k))
        } else {
            Err(Error::BadExponent(k))
        }
    }

    pub const ONE: Exponent = Exponent(1.0);

    pub fn get(self) -> f64 {
        self.0
    }
}

/// Coefficients `a_0..a_N` with cached partial sums.
#[derive(Debug, Clone, PartialEq)]
pub struct SeriesSample<T> {
    coefficients: Vec<T>,
    partial_sums: Vec<T>,
}

impl<T: Scalar> SeriesSample<T> {
    pub fn new(coefficients: Vec<T>) -> Self {
        let mut partial_sums = Vec::with_capacity(coefficients.len());
        let mut acc = T::zero();
        for a in &coefficients {
            acc = acc + a.clone();
            partial_sums.push(acc.clone());
        }
        Self {
            coefficients,
            partial_sums,
        }
    }

    /// Coordinate vector `e_v` of length `len`.
    pub fn unit(len: usize, v: usize) -> Self {
        let mut c = vec![T::zero(); len];
        c[v] = T::one();
        Self::new(c)
    }

    pub fn len(&self) -> usize {
        self.coefficients.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coefficients.is_empty()
    }

    pub fn coefficients(&self) -> &[T] {
        &self.coefficients
    }

    pub fn partial_sums(&self) -> &[T] {
        &self.partial_sums
    }

    /// Largest `|s_n|`; tolerances in this crate are relative to it.
    pub fn scale(&self) -> f64 {
        self.partial_sums
            .iter()
            .map(|s| s.to_f64().abs())
            .fold(0.0, f64::max)
    }
}

/// Multipliers `lambda_0..lambda_{N+1}`.
#[derive(Debug, Clone, PartialEq)]
pub struct FactorSequence<T> {
    values: Vec<T>,
}

impl<T: Scalar> FactorSequence<T> {
    pub fn new(values: Vec<T>) -> Self {
        Self { values }
    }

    pub fn constant(c: T, len: usize) -> Self {
        Self::new(vec![c; len])
    }

    pub fn from_fn(len: usize, f: impl FnMut(usize) -> T) -> Self {
        Self::new((0..len).map(f).collect())
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn at(&self, n: usize) -> &T {
        &self.values[n]
    }

    pub fn scaled(&self, c: &T) -> Self {
        Self::new(self.values.iter().map(|x| x.clone() * c.clone()).collect())
    }

    /// Fails unless a matrix of order `N` can be paired with these factors.
    pub fn require_order(&self, order: usize) -> Result<()> {
        if self.values.len() < order + 2 {
            Err(Error::LengthMismatch {
                expected: order + 2,
                found: self.values.len(),
            })
        } else {
            Ok(())
        }
    }
}

fn require_len(found: usize, expected: usize) -> Result<()> {
    if found < expected {
        Err(Error::LengthMismatch { expected, found })
    } else {
        Ok(())
    }
}

/// `A_n(s) = sum_v a_nv s_v` for `n = 0..N`.
pub fn transform_partial_sums<T: Scalar>(
    a: &NormalMatrix<T>,
    s: &SeriesSample<T>,
) -> Result<Vec<T>> {
    apply_lower(a.as_lower(), s.partial_sums())
}

/// Backward differences of the partial-sum transform, with `A_{-1}(s) = 0`.
pub fn delta_transform_via_differences<T: Scalar>(
    a: &NormalMatrix<T>,
    s: &SeriesSample<T>,
) -> Result<Vec<T>> {
    let t = transform_partial_sums(a, s)?;
    Ok((0..t.len())
        .map(|n| {
            if n == 0 {
                t[0].clone()
            } else {
                t[n].clone() - t[n - 1].clone()
            }
        })
        .collect())
}

/// `sum_i ahat_ni a_i`, the series-to-series form of the backward difference.
pub fn delta_transform_via_hat<T: Scalar>(
    a: &NormalMatrix<T>,
    s: &SeriesSample<T>,
) -> Result<Vec<T>> {
    delta_with_hat(&hat_of(a), s)
}

/// Same as [`delta_transform_via_hat`] with a precomputed hat matrix.
pub fn delta_with_hat<T: Scalar>(hat: &NormalMatrix<T>, s: &SeriesSample<T>) -> Result<Vec<T>> {
    require_len(s.len(), hat.dim())?;
    apply_lower(hat.as_lower(), s.coefficients())
}

/// Terms `t_n = n^{k-1} |d_n|^k` (n >= 1) of a truncated `|A|_k` series.
#[derive(Debug, Clone, PartialEq)]
pub struct AbsKProfile {
    pub k: Exponent,
    /// `d_n`, the backward differences of the transform, `n = 0..N`.
    pub deltas: Vec<f64>,
    /// `t_1..t_N`.
    pub terms: Vec<f64>,
    pub running_total: Vec<f64>,
}

impl AbsKProfile {
    pub fn from_deltas<T: Scalar>(deltas: &[T], k: Exponent) -> Self {
        let e = k.get();
        let terms: Vec<f64> = deltas
            .iter()
            .enumerate()
            .skip(1)
            .map(|(n, d)| {
                let w: T = index_weight(n, e - 1.0);
                (w * d.abs().powf(e)).to_f64()
            })
            .collect();
        let mut running_total = Vec::with_capacity(terms.len());
        let mut acc = 0.0;
        for t in &terms {
            acc += t;
            running_total.push(acc);
        }
        Self {
            k,
            deltas: deltas.iter().map(Scalar::to_f64).collect(),
            terms,
            running_total,
        }
    }

    pub fn total(&self) -> f64 {
        self.running_total.last().copied().unwrap_or(0.0)
    }

    /// `sum_{n>=0} |d_n|`, the norm of the series space on the `A` side.
    pub fn x_norm(&self) -> f64 {
        x_norm(&self.deltas)
    }

    /// `(|d_0|^k + sum_{n>=1} n^{k-1} |d_n|^k)^{1/k}`.
    pub fn y_norm(&self) -> f64 {
        y_norm(&self.deltas, self.k)
    }
}

/// `sum_n |d_n|` over all indices, including `n = 0`.
pub fn x_norm<T: Scalar>(deltas: &[T]) -> T {
    T::sum_iter(deltas.iter().map(Scalar::abs))
}

/// `|B|_k` norm including the `n = 0` term at weight 1.
pub fn y_norm<T: Scalar>(deltas: &[T], k: Exponent) -> T {
    y_norm_power(deltas, k).powf(1.0 / k.get())
}

/// `k`-th power of [`y_norm`].
pub fn y_norm_power<T: Scalar>(deltas: &[T], k: Exponent) -> T {
    let e = k.get();
    T::sum_iter(
        deltas
            .iter()
            .enumerate()
            .map(|(n, d)| index_weight::<T>(n, e - 1.0) * d.abs().powf(e)),
    )
}

/// Truncated `|A|_k` profile of the series `a`.
pub fn abs_k_profile<T: Scalar>(
    a: &NormalMatrix<T>,
    s: &SeriesSample<T>,
    k: f64,
) -> Result<AbsKProfile> {
    let k = Exponent::new(k)?;
    let deltas = delta_transform_via_hat(a, s)?;
    Ok(AbsKProfile::from_deltas(&deltas, k))
}

/// Coefficient-wise product `a_n lambda_n`.
pub fn factored_series<T: Scalar>(
    a: &SeriesSample<T>,
    lambda: &FactorSequence<T>,
) -> Result<SeriesSample<T>> {
    require_len(lambda.len(), a.len())?;
    Ok(SeriesSample::new(
        a.coefficients()
            .iter()
            .zip(lambda.values())
            .map(|(x, l)| x.clone() * l.clone())
            .collect(),
    ))
}
