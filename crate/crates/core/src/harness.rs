//! Numeric replay of the necessity and sufficiency constructions.
//!
//! A [`ProofContext`] fixes the pair of normal matrices `A`, `B` and the
//! factors `lambda` at order `N`, precomputing `Ahat`, `Bhat`, `Ahat'` and
//! `Abar` once. Every replay below is a method on it.

use crate::conditions::{c16_ratios, l1_lk_bound, ColumnBound};
use crate::error::{Error, Result};
use crate::matrix::{bar_of, hat_of, invert_hat, LowerTriangular, NormalMatrix};
use crate::par::{map_range, Exec};
use crate::scalar::{index_weight, Scalar};
use crate::summability::{
    delta_with_hat, factored_series, x_norm, Exponent, FactorSequence, SeriesSample,
};
use crate::Reading;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ProbeKind {
    /// `a = e_v - e_{v+1}`.
    Difference,
    /// `a = e_{v+1}`.
    Shift,
}

impl ProbeKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ProbeKind::Difference => "difference",
            ProbeKind::Shift => "shift",
        }
    }
}

/// Transforms and norms of one probe series.
#[derive(Debug, Clone, PartialEq)]
pub struct ProbeResult<T> {
    pub kind: ProbeKind,
    pub v: usize,
    /// `Delta-bar x_n` from the generic hat transform.
    pub delta_x: Vec<T>,
    /// `Delta-bar y_n` from the generic hat transform of the factored probe.
    pub delta_y: Vec<T>,
    /// The same quantities from the closed piecewise forms.
    pub piecewise_x: Vec<T>,
    pub piecewise_y: Vec<T>,
    /// `||X||` from the piecewise form.
    pub x_norm: T,
    /// `||Y||^k`, split into the `n = v` term and the `n > v` tail.
    pub y_diagonal_term: T,
    pub y_tail_term: T,
    pub y_norm: T,
    pub k: Exponent,
}

impl<T: Scalar> ProbeResult<T> {
    /// Largest disagreement between the generic and piecewise routes.
    pub fn discrepancy(&self) -> T {
        self.delta_x
            .iter()
            .zip(&self.piecewise_x)
            .chain(self.delta_y.iter().zip(&self.piecewise_y))
            .map(|(g, p)| (g.clone() - p.clone()).abs())
            .fold(T::zero(), T::max_of)
    }
}

/// `||Y|| / ||X||` for a probe.
pub fn inequality20_ratio<T: Scalar>(probe: &ProbeResult<T>) -> Result<T> {
    if probe.x_norm.is_zero() {
        return Err(Error::DegenerateProbe(probe.v));
    }
    Ok(probe.y_norm.clone() / probe.x_norm.clone())
}

/// Empirical constant `M` over a probe family.
#[derive(Debug, Clone, PartialEq)]
pub struct EmpiricalConstant {
    pub m: f64,
    pub argmax: Option<(ProbeKind, usize)>,
    pub ratios: Vec<(ProbeKind, usize, f64)>,
}

/// Three-part split of `Delta-bar y_n` from the sufficiency argument.
#[derive(Debug, Clone, PartialEq)]
pub struct Decomposition<T> {
    pub t1: Vec<T>,
    pub t2: Vec<T>,
    /// Terms at `Delta-bar x_0` that vanish when C13 and C14 hold.
    pub boundary: Vec<T>,
    pub delta_x: Vec<T>,
    pub delta_y: Vec<T>,
    /// `max_n |Delta-bar y_n - T_n(1) - T_n(2) - boundary_n|`.
    pub residual: T,
    /// Same, without the boundary terms.
    pub two_term_residual: T,
    /// `B` fails C14, so the `v = 0` column term is kept.
    pub first_column_retained: bool,
    /// `ahat'_{10} != 0`, so the `(v, r) = (1, 0)` term is kept.
    pub corner_retained: bool,
    /// Largest `|s_n|` over the series and its factored form.
    pub scale: f64,
}

/// Inputs of the `T_n(2)` bound gated on condition C16.
#[derive(Debug, Clone, PartialEq)]
pub struct T2Reduction {
    /// `sum_n n^{k-1} |T_n(2)|^k`.
    pub lhs: f64,
    /// Supremum of the condition C16 ratios.
    pub c16_sup: f64,
    /// `l1_lk_bound(d_nr)`.
    pub dnr_bound: f64,
    /// `sum_r |Delta-bar x_r|`.
    pub x_l1: f64,
    /// `(2 C)^k * dnr_bound * x_l1^k`.
    pub rhs: f64,
}

impl T2Reduction {
    pub fn holds(&self) -> bool {
        self.lhs <= self.rhs * (1.0 + 1e-12) + f64::MIN_POSITIVE
    }
}

#[derive(Debug, Clone)]
pub struct ProofContext<T> {
    pub a: NormalMatrix<T>,
    pub b: NormalMatrix<T>,
    pub lambda: FactorSequence<T>,
    pub hat_a: NormalMatrix<T>,
    pub hat_b: NormalMatrix<T>,
    pub hat_a_inv: NormalMatrix<T>,
    pub bar_a: LowerTriangular<T>,
}

impl<T: Scalar> ProofContext<T> {
    /// Context at the order of `A`; `B` is truncated to match.
    pub fn new(
        a: &NormalMatrix<T>,
        b: &NormalMatrix<T>,
        lambda: &FactorSequence<T>,
    ) -> Result<Self> {
        let order = a.order();
        if b.order() < order {
            return Err(Error::SizeMismatch(format!(
                "B has order {}, A has order {order}",
                b.order()
            )));
        }
        lambda.require_order(order)?;
        let b = b.truncate(order + 1);
        let hat_a = hat_of(a);
        let hat_b = hat_of(&b);
        let hat_a_inv = invert_hat(&hat_a);
        Ok(Self {
            a: a.clone(),
            b,
            lambda: lambda.clone(),
            bar_a: bar_of(a),
            hat_a,
            hat_b,
            hat_a_inv,
        })
    }

    pub fn order(&self) -> usize {
        self.a.order()
    }

    fn lam(&self, n: usize) -> T {
        self.lambda.at(n).clone()
    }

    /// `Delta_v(bhat_nv lambda_v) = bhat_nv lambda_v - bhat_{n,v+1} lambda_{v+1}`.
    fn delta_b(&self, n: usize, v: usize) -> T {
        self.hat_b.get(n, v) * self.lam(v) - self.hat_b.get(n, v + 1) * self.lam(v + 1)
    }

    /// Unhatted variant `b_nv lambda_v - b_{n,v+1} lambda_{v+1}`.
    fn delta_b_plain(&self, n: usize, v: usize) -> T {
        self.b.get(n, v) * self.lam(v) - self.b.get(n, v + 1) * self.lam(v + 1)
    }

    /// `(a_vv - a_{v+1,v}) / (a_vv a_{v+1,v+1})`.
    fn corner(&self, v: usize) -> T {
        (self.a.diag(v).clone() - self.a.at(v + 1, v).clone())
            / (self.a.diag(v).clone() * self.a.diag(v + 1).clone())
    }

    /// Apply a probe series and evaluate both routes and both norms.
    pub fn run_probe(
        &self,
        v: usize,
        kind: ProbeKind,
        k: Exponent,
        reading: Reading,
    ) -> Result<ProbeResult<T>> {
        let order = self.order();
        if v + 1 > order {
            return Err(Error::IndexOutOfRange {
                index: v,
                limit: order.saturating_sub(1),
            });
        }
        let dim = order + 1;
        let mut coeffs = vec![T::zero(); dim];
        match kind {
            ProbeKind::Difference => {
                coeffs[v] = T::one();
                coeffs[v + 1] = -T::one();
            }
            ProbeKind::Shift => coeffs[v + 1] = T::one(),
        }
        let series = SeriesSample::new(coeffs);
        let delta_x = delta_with_hat(&self.hat_a, &series)?;
        let delta_y = delta_with_hat(&self.hat_b, &factored_series(&series, &self.lambda)?)?;

        let ha = &self.hat_a;
        let (piecewise_x, piecewise_y): (Vec<T>, Vec<T>) = (0..dim)
            .map(|n| match kind {
                ProbeKind::Difference if n < v => (T::zero(), T::zero()),
                ProbeKind::Difference if n == v => {
                    (ha.diag(v).clone(), self.hat_b.diag(v).clone() * self.lam(v))
                }
                ProbeKind::Difference => (
                    ha.at(n, v).clone() - ha.at(n, v + 1).clone(),
                    self.delta_b(n, v),
                ),
                ProbeKind::Shift if n <= v => (T::zero(), T::zero()),
                ProbeKind::Shift => (
                    ha.at(n, v + 1).clone(),
                    self.hat_b.at(n, v + 1).clone() * self.lam(v + 1),
                ),
            })
            .unzip();

        let e = k.get();
        let tail_y = T::sum_iter(
            (v + 1..dim).map(|n| index_weight::<T>(n, e - 1.0) * piecewise_y[n].abs().powf(e)),
        );
        let diag_y = match kind {
            ProbeKind::Shift => T::zero(),
            ProbeKind::Difference => {
                let w = index_weight::<T>(v, e - 1.0);
                let bvv = self.b.diag(v).clone();
                let lv = self.lam(v).abs().powf(e);
                match reading {
                    Reading::Consistent => w * bvv.abs().powf(e) * lv,
                    Reading::Literal => w * bvv * lv,
                }
            }
        };
        let y_norm = (diag_y.clone() + tail_y.clone()).powf(1.0 / e);
        Ok(ProbeResult {
            kind,
            v,
            x_norm: x_norm(&piecewise_x),
            delta_x,
            delta_y,
            piecewise_x,
            piecewise_y,
            y_diagonal_term: diag_y,
            y_tail_term: tail_y,
            y_norm,
            k,
        })
    }

    /// Largest `||Y|| / ||X||` over `v = 1..N-1` and both probe kinds.
    pub fn empirical_constant(&self, k: Exponent, reading: Reading) -> Result<EmpiricalConstant> {
        self.empirical_constant_with(Exec::default(), k, reading)
    }

    pub fn empirical_constant_with(
        &self,
        exec: Exec,
        k: Exponent,
        reading: Reading,
    ) -> Result<EmpiricalConstant> {
        let order = self.order();
        let per_v = map_range(
            exec,
            1..order,
            |v| -> Result<Vec<(ProbeKind, usize, f64)>> {
                [ProbeKind::Difference, ProbeKind::Shift]
                    .into_iter()
                    .filter_map(|kind| {
                        let probe = match self.run_probe(v, kind, k, reading) {
                            Ok(p) => p,
                            Err(e) => return Some(Err(e)),
                        };
                        match inequality20_ratio(&probe) {
                            Ok(r) => Some(Ok((kind, v, r.to_f64()))),
                            Err(Error::DegenerateProbe(_)) => None,
                            Err(e) => Some(Err(e)),
                        }
                    })
                    .collect()
            },
        );
        let mut ratios = Vec::new();
        for r in per_v {
            ratios.extend(r?);
        }
        let mut m = 0.0f64;
        let mut argmax = None;
        for &(kind, v, r) in &ratios {
            if argmax.is_none() || r > m {
                m = r;
                argmax = Some((kind, v));
            }
        }
        Ok(EmpiricalConstant { m, argmax, ratios })
    }

    /// Split `Delta-bar y` of the factored series into `T(1) + T(2)`.
    pub fn decompose(&self, series: &SeriesSample<T>) -> Result<Decomposition<T>> {
        let dim = self.order() + 1;
        if series.len() < dim {
            return Err(Error::LengthMismatch {
                expected: dim,
                found: series.len(),
            });
        }
        let factored = factored_series(series, &self.lambda)?;
        let delta_x = delta_with_hat(&self.hat_a, series)?;
        let delta_y = delta_with_hat(&self.hat_b, &factored)?;

        let diag_factor = |n: usize| self.b.diag(n).clone() * self.lam(n) / self.a.diag(n).clone();

        let t1: Vec<T> = map_range(Exec::default(), 0..dim, |n| {
            let lead = diag_factor(n) * delta_x[n].clone();
            if n == 0 {
                return lead;
            }
            let rest = T::sum_iter((1..n).map(|v| {
                let coeff = self.delta_b(n, v) / self.a.diag(v).clone()
                    + self.hat_b.at(n, v + 1).clone() * self.lam(v + 1) * self.corner(v);
                coeff * delta_x[v].clone()
            }));
            lead + rest
        });

        let t2: Vec<T> = map_range(Exec::default(), 0..dim, |n| {
            if n < 2 {
                return T::zero();
            }
            T::sum_iter((0..=n - 2).map(|r| {
                let inner = T::sum_iter((r + 2..=n).map(|v| {
                    self.hat_b.at(n, v).clone() * self.lam(v) * self.hat_a_inv.at(v, r).clone()
                }));
                delta_x[r].clone() * inner
            }))
        });

        let tol = if T::is_exact() {
            0.0
        } else {
            crate::conditions::STRUCTURAL_TOL
        };
        let first_column_retained = (1..dim).any(|n| self.hat_b.at(n, 0).abs().to_f64() > tol);
        let corner_retained = dim > 1 && self.hat_a_inv.at(1, 0).abs().to_f64() > tol;

        let boundary: Vec<T> = (0..dim)
            .map(|n| {
                if n == 0 {
                    return T::zero();
                }
                let mut term = T::zero();
                if first_column_retained {
                    term = term
                        + self.hat_b.at(n, 0).clone()
                            * self.lam(0)
                            * self.hat_a_inv.at(0, 0).clone()
                            * delta_x[0].clone();
                }
                if corner_retained {
                    term = term
                        + self.hat_b.at(n, 1).clone()
                            * self.lam(1)
                            * self.hat_a_inv.at(1, 0).clone()
                            * delta_x[0].clone();
                }
                term
            })
            .collect();

        let mut residual = T::zero();
        let mut two_term_residual = T::zero();
        for n in 0..dim {
            let two = delta_y[n].clone() - t1[n].clone() - t2[n].clone();
            residual = T::max_of(residual, (two.clone() - boundary[n].clone()).abs());
            two_term_residual = T::max_of(two_term_residual, two.abs());
        }
        let scale = series.scale().max(factored.scale());
        Ok(Decomposition {
            t1,
            t2,
            boundary,
            delta_x,
            delta_y,
            residual,
            two_term_residual,
            first_column_retained,
            corner_retained,
            scale,
        })
    }

    /// `|LHS - RHS|` of the adjacent-inverse identity at `(n, v)`, `1 <= v <= n-1`.
    ///
    /// The left side reads `ahat'` from the computed inverse; the right side
    /// uses entries of `A` only.
    pub fn key_identity_check(&self, n: usize, v: usize) -> Result<T> {
        if v < 1 || v + 1 > n || n > self.order() {
            return Err(Error::IndexOutOfRange {
                index: v,
                limit: n.saturating_sub(1),
            });
        }
        let inv = &self.hat_a_inv;
        let lhs = self.hat_b.at(n, v).clone() * self.lam(v) * inv.at(v, v).clone()
            + self.hat_b.at(n, v + 1).clone() * self.lam(v + 1) * inv.at(v + 1, v).clone();
        let rhs = self.delta_b(n, v) / self.a.diag(v).clone()
            + self.hat_b.at(n, v + 1).clone() * self.lam(v + 1) * self.corner(v);
        Ok((lhs - rhs).abs())
    }

    /// Intermediate step `ahat_{v+1,v} = abar_{v+1,v} - abar_vv = a_{v+1,v+1} + a_{v+1,v} - a_vv`.
    /// Returns the larger of the two discrepancies.
    pub fn bar_step_check(&self, v: usize) -> Result<T> {
        if v + 1 > self.order() {
            return Err(Error::IndexOutOfRange {
                index: v,
                limit: self.order().saturating_sub(1),
            });
        }
        let via_bar = self.bar_a.at(v + 1, v).clone() - self.bar_a.at(v, v).clone();
        let via_a =
            self.a.diag(v + 1).clone() + self.a.at(v + 1, v).clone() - self.a.diag(v).clone();
        let d1 = (via_bar.clone() - via_a).abs();
        let d2 = (via_bar - self.hat_a.at(v + 1, v).clone()).abs();
        Ok(T::max_of(d1, d2))
    }

    /// Bracketed coefficient of `Delta-bar x_v` in `T_n(1)`, without the `n^{1-1/k}` weight.
    fn cnv_bracket(&self, n: usize, v: usize, reading: Reading) -> T {
        if v == n {
            return self.b.diag(n).clone() * self.lam(n) / self.a.diag(n).clone();
        }
        if v == 0 {
            return T::zero();
        }
        let delta = match reading {
            Reading::Consistent => self.delta_b(n, v),
            Reading::Literal => self.delta_b_plain(n, v),
        };
        delta / self.a.diag(v).clone()
            + self.hat_b.at(n, v + 1).clone() * self.lam(v + 1) * self.corner(v)
    }

    /// Operator `c_nv` with `T_n(1)` weighted by `n^{1-1/k}` equal to `sum_v c_nv Delta-bar x_v`.
    ///
    /// Column 0 is zero below the diagonal. The strict reading uses the
    /// unhatted `b_nv` inside the column difference.
    pub fn build_cnv(&self, k: Exponent, reading: Reading) -> LowerTriangular<T> {
        let e = 1.0 - 1.0 / k.get();
        LowerTriangular::from_fn(self.order() + 1, |n, v| {
            index_weight::<T>(n, e) * self.cnv_bracket(n, v, reading)
        })
    }

    /// Column sums behind the `(l_1, l_k)` test of `c_nv`.
    ///
    /// Consistent reading: `sum_n |c_nv|^k`. Strict reading: the literal
    /// `sum_n n^{1-1/k} |bracket_nv|^k`.
    pub fn cnv_column_sums(&self, k: Exponent, reading: Reading) -> ColumnBound<T> {
        match reading {
            Reading::Consistent => l1_lk_bound(&self.build_cnv(k, reading), k),
            Reading::Literal => {
                let e = k.get();
                let w = 1.0 - 1.0 / e;
                let bracket = LowerTriangular::from_fn(self.order() + 1, |n, v| {
                    index_weight::<T>(n, w / e) * self.cnv_bracket(n, v, Reading::Literal)
                });
                l1_lk_bound(&bracket, k)
            }
        }
    }

    /// Operator `d_nr = n^{1-1/k} b_nn lambda_n / a_nn` for `r <= n-2`.
    pub fn build_dnr(&self, k: Exponent) -> LowerTriangular<T> {
        let e = 1.0 - 1.0 / k.get();
        LowerTriangular::from_fn(self.order() + 1, |n, r| {
            if n >= 2 && r + 2 <= n {
                index_weight::<T>(n, e) * self.b.diag(n).clone() * self.lam(n)
                    / self.a.diag(n).clone()
            } else {
                T::zero()
            }
        })
    }

    /// Evaluate both sides of the `T_n(2)` bound for one series.
    pub fn t2_reduction(&self, series: &SeriesSample<T>, k: Exponent) -> Result<T2Reduction> {
        let dec = self.decompose(series)?;
        let e = k.get();
        let lhs = f64::sum_iter(
            dec.t2
                .iter()
                .enumerate()
                .map(|(n, t)| index_weight::<f64>(n, e - 1.0) * t.to_f64().abs().powf(e)),
        );
        let c16_sup = c16_ratios(&self.a, &self.b, &self.lambda)?
            .iter()
            .map(Scalar::to_f64)
            .fold(0.0, f64::max);
        let dnr_bound = l1_lk_bound(&self.build_dnr(k), k).sup.to_f64();
        let x_l1 = x_norm(&dec.delta_x).to_f64();
        let rhs = (2.0 * c16_sup).powf(e) * dnr_bound * x_l1.powf(e);
        Ok(T2Reduction {
            lhs,
            c16_sup,
            dnr_bound,
            x_l1,
            rhs,
        })
    }
}

/// Free-function form of [`ProofContext::run_probe`].
pub fn run_probe<T: Scalar>(
    a: &NormalMatrix<T>,
    b: &NormalMatrix<T>,
    lambda: &FactorSequence<T>,
    v: usize,
    kind: ProbeKind,
    k: Exponent,
) -> Result<ProbeResult<T>> {
    ProofContext::new(a, b, lambda)?.run_probe(v, kind, k, Reading::Consistent)
}

/// Free-function form of [`ProofContext::decompose`].
pub fn decompose<T: Scalar>(
    a: &NormalMatrix<T>,
    b: &NormalMatrix<T>,
    lambda: &FactorSequence<T>,
    series: &SeriesSample<T>,
) -> Result<Decomposition<T>> {
    ProofContext::new(a, b, lambda)?.decompose(series)
}

/// Free-function form of [`ProofContext::key_identity_check`].
pub fn key_identity_check<T: Scalar>(
    a: &NormalMatrix<T>,
    b: &NormalMatrix<T>,
    lambda: &FactorSequence<T>,
    n: usize,
    v: usize,
) -> Result<T> {
    ProofContext::new(a, b, lambda)?.key_identity_check(n, v)
}

pub fn build_cnv<T: Scalar>(
    a: &NormalMatrix<T>,
    b: &NormalMatrix<T>,
    lambda: &FactorSequence<T>,
    k: Exponent,
) -> Result<LowerTriangular<T>> {
    Ok(ProofContext::new(a, b, lambda)?.build_cnv(k, Reading::Consistent))
}

pub fn build_dnr<T: Scalar>(
    a: &NormalMatrix<T>,
    b: &NormalMatrix<T>,
    lambda: &FactorSequence<T>,
    k: Exponent,
) -> Result<LowerTriangular<T>> {
    Ok(ProofContext::new(a, b, lambda)?.build_dnr(k))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    fn k(x: f64) -> Exponent {
        Exponent::new(x).unwrap()
    }

    #[test]
    fn identity_difference_probe() {
        let id = NormalMatrix::<f64>::identity(6);
        let l = FactorSequence::constant(1.0, 8);
        let ctx = ProofContext::new(&id, &id, &l).unwrap();
        for v in 1..6 {
            let p = ctx
                .run_probe(v, ProbeKind::Difference, k(2.0), Reading::Consistent)
                .unwrap();
            assert_eq!(p.x_norm, 2.0);
            let expected = ((v as f64) + (v as f64 + 1.0)).sqrt();
            assert!((p.y_norm - expected).abs() < 1e-14);
            assert_eq!(p.discrepancy(), 0.0);
        }
    }

    #[test]
    fn identity_shift_probe() {
        let id = NormalMatrix::<f64>::identity(5);
        let l = FactorSequence::constant(1.0, 7);
        let p = run_probe(&id, &id, &l, 2, ProbeKind::Shift, k(1.0)).unwrap();
        assert_eq!(p.x_norm, 1.0);
    }

    #[test]
    fn probe_index_range() {
        let id = NormalMatrix::<f64>::identity(5);
        let l = FactorSequence::constant(1.0, 7);
        assert!(matches!(
            run_probe(&id, &id, &l, 5, ProbeKind::Shift, k(1.0)),
            Err(Error::IndexOutOfRange { .. })
        ));
    }

    #[test]
    fn zero_factors_give_zero_ratio() {
        let c = NormalMatrix::<f64>::cesaro(6);
        let l = FactorSequence::constant(0.0, 8);
        let p = run_probe(&c, &c, &l, 2, ProbeKind::Difference, k(1.0)).unwrap();
        assert_eq!(inequality20_ratio(&p).unwrap(), 0.0);
    }

    #[test]
    fn equal_matrices_k1_ratio_is_one() {
        let c = NormalMatrix::<BigRational>::cesaro(8);
        let l = FactorSequence::constant(BigRational::from_integer(1.into()), 10);
        let ctx = ProofContext::new(&c, &c, &l).unwrap();
        for v in 0..8 {
            let p = ctx
                .run_probe(v, ProbeKind::Difference, k(1.0), Reading::Consistent)
                .unwrap();
            assert_eq!(
                inequality20_ratio(&p).unwrap(),
                BigRational::from_integer(1.into())
            );
        }
    }

    #[test]
    fn degenerate_probe_is_reported() {
        // second column of Ahat vanishes below the diagonal except at n = 1
        let id = NormalMatrix::<f64>::identity(3);
        let l = FactorSequence::constant(1.0, 5);
        let mut p = run_probe(&id, &id, &l, 0, ProbeKind::Shift, k(1.0)).unwrap();
        p.x_norm = 0.0;
        assert_eq!(inequality20_ratio(&p), Err(Error::DegenerateProbe(0)));
    }

    #[test]
    fn identity_decomposition() {
        let id = NormalMatrix::<f64>::identity(7);
        let l = FactorSequence::constant(1.0, 9);
        let a = SeriesSample::new(vec![1.0, -2.0, 0.5, 3.0, -1.0, 0.25, 2.0, -0.75]);
        let d = decompose(&id, &id, &l, &a).unwrap();
        assert_eq!(d.t1, a.coefficients());
        assert!(d.t2.iter().all(|&x| x == 0.0));
        assert_eq!(d.residual, 0.0);
        assert!(!d.first_column_retained && !d.corner_retained);
    }

    #[test]
    fn key_identity_index_checks() {
        let id = NormalMatrix::<f64>::identity(4);
        let l = FactorSequence::constant(1.0, 6);
        assert!(key_identity_check(&id, &id, &l, 3, 0).is_err());
        assert!(key_identity_check(&id, &id, &l, 3, 3).is_err());
        assert_eq!(key_identity_check(&id, &id, &l, 3, 1).unwrap(), 0.0);
    }

    #[test]
    fn zero_factors_zero_operators() {
        let c = NormalMatrix::<f64>::cesaro(6);
        let l = FactorSequence::constant(0.0, 8);
        let cnv = build_cnv(&c, &c, &l, k(2.0)).unwrap();
        assert!(cnv.rows().iter().flatten().all(|&x| x == 0.0));
    }

    #[test]
    fn dnr_identity_support() {
        let id = NormalMatrix::<f64>::identity(3);
        let l = FactorSequence::constant(1.0, 5);
        let d = build_dnr(&id, &id, &l, k(1.0)).unwrap();
        assert_eq!(
            d.rows(),
            vec![
                vec![0.0],
                vec![0.0, 0.0],
                vec![1.0, 0.0, 0.0],
                vec![1.0, 1.0, 0.0, 0.0]
            ]
        );
    }

    #[test]
    fn dnr_boundary_factors_are_one() {
        let c = NormalMatrix::<f64>::cesaro(9);
        let b = NormalMatrix::<f64>::identity(9);
        let kk = 2.0;
        // lambda_n = n^{1/k-1} a_nn / b_nn
        let l = FactorSequence::from_fn(11, |n| {
            if n == 0 || n > 9 {
                1.0
            } else {
                (n as f64).powf(1.0 / kk - 1.0) * c.diag(n) / b.diag(n)
            }
        });
        let d = build_dnr(&c, &b, &l, k(kk)).unwrap();
        for n in 2..=9 {
            for r in 0..=n - 2 {
                assert!((d.at(n, r) - 1.0).abs() < 1e-14);
            }
        }
    }
}
