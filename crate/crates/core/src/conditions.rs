//! Summability factor conditions evaluated at truncation.
//!
//! None of these checks decides an `O(.)` statement. Each produces the ratio
//! sequence whose boundedness the statement asserts, its running supremum, and
//! a heuristic [`Trend`] verdict. Infinite tail sums are cut at
//! [`TailSpec::cutoff`] and flagged when the last retained term is still large.

use std::fmt;

use crate::error::{Error, Result};
use crate::matrix::{bar_of, hat_of, invert_hat, LowerTriangular, NormalMatrix, WeightSequence};
use crate::par::{map_range, Exec};
use crate::scalar::{index_weight, Scalar};
use crate::summability::{Exponent, FactorSequence};
use crate::Reading;

/// Tolerance for the structural checks C12-C14 on the floating path.
pub const STRUCTURAL_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ConditionId {
    C9,
    C10,
    C11,
    C12,
    C13,
    C14,
    C15,
    C16,
    TaA,
    TaB,
    TaC,
    L1Lk,
}

impl ConditionId {
    pub const ALL: [ConditionId; 12] = [
        ConditionId::C9,
        ConditionId::C10,
        ConditionId::C11,
        ConditionId::C12,
        ConditionId::C13,
        ConditionId::C14,
        ConditionId::C15,
        ConditionId::C16,
        ConditionId::TaA,
        ConditionId::TaB,
        ConditionId::TaC,
        ConditionId::L1Lk,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ConditionId::C9 => "C9",
            ConditionId::C10 => "C10",
            ConditionId::C11 => "C11",
            ConditionId::C12 => "C12",
            ConditionId::C13 => "C13",
            ConditionId::C14 => "C14",
            ConditionId::C15 => "C15",
            ConditionId::C16 => "C16",
            ConditionId::TaA => "TA_a",
            ConditionId::TaB => "TA_b",
            ConditionId::TaC => "TA_c",
            ConditionId::L1Lk => "L1LK",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Self::ALL
            .into_iter()
            .find(|c| c.as_str().eq_ignore_ascii_case(s))
    }
}

impl fmt::Display for ConditionId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Trend {
    BoundedLooking,
    Growing,
    Inconclusive,
    /// A structural hypothesis C12-C14 fails at some index.
    Violated,
}

impl Trend {
    pub fn as_str(self) -> &'static str {
        match self {
            Trend::BoundedLooking => "bounded-looking",
            Trend::Growing => "growing",
            Trend::Inconclusive => "inconclusive",
            Trend::Violated => "violated",
        }
    }
}

impl fmt::Display for Trend {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Finite surrogate for an infinite tail sum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TailSpec {
    pub cutoff: usize,
    pub warn_threshold: f64,
}

impl TailSpec {
    pub const DEFAULT_FACTOR: usize = 16;
    pub const DEFAULT_WARN: f64 = 1e-6;

    pub fn new(cutoff: usize, warn_threshold: f64, order: usize) -> Result<Self> {
        if cutoff <= order {
            return Err(Error::BadTail(format!(
                "cutoff {cutoff} must exceed the order {order}"
            )));
        }
        if !(warn_threshold > 0.0 && warn_threshold < 1.0) {
            return Err(Error::BadTail(format!(
                "warn_threshold {warn_threshold} must lie in (0, 1)"
            )));
        }
        Ok(Self {
            cutoff,
            warn_threshold,
        })
    }

    /// `cutoff = 16 N`, `warn_threshold = 1e-6`.
    pub fn for_order(order: usize) -> Self {
        Self {
            cutoff: (Self::DEFAULT_FACTOR * order).max(order + 1),
            warn_threshold: Self::DEFAULT_WARN,
        }
    }

    fn warns(&self, last: f64, total: f64) -> bool {
        total > 0.0 && last > self.warn_threshold * total
    }
}

/// Ratio sequence and diagnostics for one condition.
#[derive(Debug, Clone, PartialEq)]
pub struct ConditionReport {
    pub id: ConditionId,
    /// Index (`n` or `v`) of each ratio.
    pub indices: Vec<usize>,
    pub ratios: Vec<f64>,
    pub running_sup: Vec<f64>,
    pub sup_ratio: f64,
    pub trend: Trend,
    pub tail_cutoff: Option<usize>,
    pub tail_warnings: Vec<bool>,
}

impl ConditionReport {
    fn build(
        id: ConditionId,
        indices: Vec<usize>,
        ratios: Vec<f64>,
        tail_cutoff: Option<usize>,
        tail_warnings: Option<Vec<bool>>,
        trend: Trend,
    ) -> Self {
        debug_assert!(
            ratios.iter().all(|r| r.is_finite()),
            "{id}: non-finite ratio"
        );
        let mut running_sup = Vec::with_capacity(ratios.len());
        let mut sup = 0.0f64;
        for &r in &ratios {
            sup = sup.max(r);
            running_sup.push(sup);
        }
        let tail_warnings = tail_warnings.unwrap_or_else(|| vec![false; ratios.len()]);
        Self {
            id,
            indices,
            ratios,
            running_sup,
            sup_ratio: sup,
            trend,
            tail_cutoff,
            tail_warnings,
        }
    }

    fn asymptotic(
        id: ConditionId,
        indices: Vec<usize>,
        ratios: Vec<f64>,
        tail: Option<(usize, Vec<bool>)>,
    ) -> Self {
        let trend = classify_trend(&indices, &ratios);
        let (cutoff, warnings) = match tail {
            Some((c, w)) => (Some(c), Some(w)),
            None => (None, None),
        };
        Self::build(id, indices, ratios, cutoff, warnings, trend)
    }

    fn structural(id: ConditionId, indices: Vec<usize>, ratios: Vec<f64>, tol: f64) -> Self {
        let trend = if ratios.iter().all(|&r| r <= tol) {
            Trend::BoundedLooking
        } else {
            Trend::Violated
        };
        Self::build(id, indices, ratios, None, None, trend)
    }

    pub fn any_tail_warning(&self) -> bool {
        self.tail_warnings.iter().any(|&w| w)
    }

    /// Ratio recorded at index `i`, if any.
    pub fn ratio_at(&self, i: usize) -> Option<f64> {
        self.indices
            .iter()
            .position(|&j| j == i)
            .map(|p| self.ratios[p])
    }
}

fn structural_tol<T: Scalar>() -> f64 {
    if T::is_exact() {
        0.0
    } else {
        STRUCTURAL_TOL
    }
}

/// Least-squares slope of `y` against `x`.
fn ls_slope(x: &[f64], y: &[f64]) -> f64 {
    let m = x.len() as f64;
    let mx = x.iter().sum::<f64>() / m;
    let my = y.iter().sum::<f64>() / m;
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = x.iter().map(|a| (a - mx) * (a - mx)).sum();
    if sxx == 0.0 {
        0.0
    } else {
        sxy / sxx
    }
}

/// Ratios at or below this are treated as zero by [`classify_trend`].
pub const ZERO_FLOOR: f64 = 1e-9;

/// Power-law exponent above which a sequence is reported as growing.
pub const GROWTH_EXPONENT: f64 = 0.25;

/// Heuristic boundedness verdict on a ratio sequence.
///
/// * growing: the ratio at least doubles between index `N/2` and `N`, or a
///   log-log fit over the second half gives exponent `>=` [`GROWTH_EXPONENT`];
/// * bounded-looking: least-squares slope against `ln n` over the last
///   quartile is `<= 0` (up to rounding noise);
/// * inconclusive otherwise, or with fewer than four points.
///
/// Ratios are normalised so that `O(1)` is their natural scale; a sequence
/// that never exceeds [`ZERO_FLOOR`] is rounding noise around zero and is
/// reported bounded-looking.
pub fn classify_trend(indices: &[usize], ratios: &[f64]) -> Trend {
    let m = ratios.len();
    if m > 0 && ratios.iter().all(|r| r.abs() <= ZERO_FLOOR) {
        return Trend::BoundedLooking;
    }
    if m < 4 {
        return Trend::Inconclusive;
    }
    let last = indices[m - 1];
    let first = indices[0];
    let mid_pos = indices
        .iter()
        .position(|&i| i >= first + (last - first) / 2)
        .unwrap_or(m / 2);
    let r_mid = ratios[mid_pos];
    let r_end = ratios[m - 1];
    if r_end > 0.0 && r_end >= 2.0 * r_mid {
        return Trend::Growing;
    }

    let half: Vec<(f64, f64)> = indices[mid_pos..]
        .iter()
        .zip(&ratios[mid_pos..])
        .filter(|(i, r)| **i > 0 && **r > 0.0)
        .map(|(&i, &r)| ((i as f64).ln(), r.ln()))
        .collect();
    if half.len() >= 2 && half.len() == m - mid_pos {
        let (x, y): (Vec<f64>, Vec<f64>) = half.into_iter().unzip();
        if ls_slope(&x, &y) >= GROWTH_EXPONENT {
            return Trend::Growing;
        }
    }

    let q_pos = indices
        .iter()
        .position(|&i| i >= first + 3 * (last - first) / 4)
        .unwrap_or(3 * m / 4)
        .min(m - 2);
    let x: Vec<f64> = indices[q_pos..]
        .iter()
        .map(|&i| (i.max(1) as f64).ln())
        .collect();
    let y = &ratios[q_pos..];
    let scale = y.iter().fold(0.0f64, |a, &b| a.max(b.abs()));
    if ls_slope(&x, y) <= 1e-9 * scale {
        Trend::BoundedLooking
    } else {
        Trend::Inconclusive
    }
}

fn require_dim<T: Scalar>(m: &NormalMatrix<T>, order: usize, name: &str) -> Result<()> {
    if m.order() < order {
        Err(Error::SizeMismatch(format!(
            "{name} has order {}, need at least {order}",
            m.order()
        )))
    } else {
        Ok(())
    }
}

fn require_tail<T: Scalar>(m: &NormalMatrix<T>, tail: &TailSpec) -> Result<()> {
    if m.order() < tail.cutoff {
        Err(Error::TailUnavailable {
            needed: tail.cutoff,
            available: m.order(),
        })
    } else {
        Ok(())
    }
}

/// Condition C9: `r_n = |lambda_n| / (n^{1/k-1} a_nn / b_nn)`, `n = 1..N`.
pub fn check_c9<T: Scalar>(
    a: &NormalMatrix<T>,
    b: &NormalMatrix<T>,
    lambda: &FactorSequence<T>,
    k: Exponent,
) -> Result<ConditionReport> {
    let order = a.order();
    require_dim(b, order, "B")?;
    lambda.require_order(order)?;
    let e = 1.0 / k.get() - 1.0;
    let ratios = (1..=order)
        .map(|n| {
            let bound = index_weight::<T>(n, e) * a.diag(n).clone() / b.diag(n).clone();
            (lambda.at(n).abs() / bound.abs()).to_f64()
        })
        .collect();
    Ok(ConditionReport::asymptotic(
        ConditionId::C9,
        (1..=order).collect(),
        ratios,
        None,
    ))
}

/// Tail sum `sum_{n=from}^{cutoff} term(n)` with the last-term warning.
fn tail_sum<T: Scalar>(from: usize, tail: &TailSpec, term: impl Fn(usize) -> T) -> (T, bool) {
    if from > tail.cutoff {
        return (T::zero(), false);
    }
    // smallest terms first
    let total = T::sum_iter((from..=tail.cutoff).rev().map(&term));
    let last = term(tail.cutoff).to_f64();
    let warn = tail.warns(last, total.to_f64());
    (total, warn)
}

/// Numerators of condition C10 at `v = 0..N` with a precomputed hat of `B`.
pub(crate) fn c10_sums<T: Scalar>(
    exec: Exec,
    hat_b: &NormalMatrix<T>,
    lambda: &FactorSequence<T>,
    k: Exponent,
    order: usize,
    tail: &TailSpec,
) -> Vec<(T, bool)> {
    let e = k.get();
    map_range(exec, 0..order + 1, |v| {
        let lv = lambda.at(v).clone();
        let lv1 = lambda.at(v + 1).clone();
        tail_sum(v + 1, tail, |n| {
            let d = hat_b.at(n, v).clone() * lv.clone() - hat_b.get(n, v + 1) * lv1.clone();
            index_weight::<T>(n, e - 1.0) * d.abs().powf(e)
        })
    })
}

/// Condition C10: `r_v = sum_{n>v} n^{k-1} |Delta_v(bhat_nv lambda_v)|^k / a_vv^k`.
///
/// `B` must extend to the tail cutoff; the report covers `v = 0..=order`.
pub fn check_c10<T: Scalar>(
    a: &NormalMatrix<T>,
    b: &NormalMatrix<T>,
    lambda: &FactorSequence<T>,
    k: Exponent,
    order: usize,
    tail: &TailSpec,
) -> Result<ConditionReport> {
    check_c10_with(Exec::default(), a, b, lambda, k, order, tail)
}

pub fn check_c10_with<T: Scalar>(
    exec: Exec,
    a: &NormalMatrix<T>,
    b: &NormalMatrix<T>,
    lambda: &FactorSequence<T>,
    k: Exponent,
    order: usize,
    tail: &TailSpec,
) -> Result<ConditionReport> {
    require_dim(a, order, "A")?;
    require_tail(b, tail)?;
    lambda.require_order(order)?;
    let hat_b = hat_of(&b.truncate(tail.cutoff + 1));
    let sums = c10_sums(exec, &hat_b, lambda, k, order, tail);
    let (ratios, warnings): (Vec<f64>, Vec<bool>) = sums
        .into_iter()
        .enumerate()
        .map(|(v, (s, w))| ((s / a.diag(v).abs().powf(k.get())).to_f64(), w))
        .unzip();
    Ok(ConditionReport::asymptotic(
        ConditionId::C10,
        (0..=order).collect(),
        ratios,
        Some((tail.cutoff, warnings)),
    ))
}

/// Sums of condition C11 at `v = 0..N` with a precomputed hat of `B`.
pub(crate) fn c11_sums<T: Scalar>(
    exec: Exec,
    hat_b: &NormalMatrix<T>,
    lambda: &FactorSequence<T>,
    k: Exponent,
    order: usize,
    tail: &TailSpec,
) -> Vec<(T, bool)> {
    let e = k.get();
    map_range(exec, 0..order + 1, |v| {
        let lv1 = lambda.at(v + 1).clone();
        tail_sum(v + 1, tail, |n| {
            let d = hat_b.at(n, v + 1).clone() * lv1.clone();
            index_weight::<T>(n, e - 1.0) * d.abs().powf(e)
        })
    })
}

/// Condition C11: `r_v = sum_{n>v} n^{k-1} |bhat_{n,v+1} lambda_{v+1}|^k`.
pub fn check_c11<T: Scalar>(
    b: &NormalMatrix<T>,
    lambda: &FactorSequence<T>,
    k: Exponent,
    order: usize,
    tail: &TailSpec,
) -> Result<ConditionReport> {
    check_c11_with(Exec::default(), b, lambda, k, order, tail)
}

pub fn check_c11_with<T: Scalar>(
    exec: Exec,
    b: &NormalMatrix<T>,
    lambda: &FactorSequence<T>,
    k: Exponent,
    order: usize,
    tail: &TailSpec,
) -> Result<ConditionReport> {
    require_tail(b, tail)?;
    lambda.require_order(order)?;
    let hat_b = hat_of(&b.truncate(tail.cutoff + 1));
    let (ratios, warnings): (Vec<f64>, Vec<bool>) = c11_sums(exec, &hat_b, lambda, k, order, tail)
        .into_iter()
        .map(|(s, w)| (s.to_f64(), w))
        .unzip();
    Ok(ConditionReport::asymptotic(
        ConditionId::C11,
        (0..=order).collect(),
        ratios,
        Some((tail.cutoff, warnings)),
    ))
}

/// Condition C12: per row `n >= 1`, the largest `max(0, a_nv - a_{n-1,v})`.
pub fn check_c12<T: Scalar>(a: &NormalMatrix<T>) -> ConditionReport {
    let order = a.order();
    let ratios = (1..=order)
        .map(|n| {
            (0..n)
                .map(|v| a.at(n, v).clone() - a.at(n - 1, v).clone())
                .fold(T::zero(), T::max_of)
                .to_f64()
        })
        .collect();
    ConditionReport::structural(
        ConditionId::C12,
        (1..=order).collect(),
        ratios,
        structural_tol::<T>(),
    )
}

fn first_bar_column<T: Scalar>(m: &NormalMatrix<T>, id: ConditionId) -> ConditionReport {
    let bar = bar_of(m);
    let ratios = (0..m.dim())
        .map(|n| (bar.at(n, 0).clone() - T::one()).abs().to_f64())
        .collect();
    ConditionReport::structural(id, (0..m.dim()).collect(), ratios, structural_tol::<T>())
}

/// Condition C13: `r_n = |abar_n0 - 1|`.
pub fn check_c13<T: Scalar>(a: &NormalMatrix<T>) -> ConditionReport {
    first_bar_column(a, ConditionId::C13)
}

/// Condition C14: `r_n = |bbar_n0 - 1|`.
pub fn check_c14<T: Scalar>(b: &NormalMatrix<T>) -> ConditionReport {
    first_bar_column(b, ConditionId::C14)
}

/// Condition C15: `r_n = |a_nn - a_{n+1,n}| / |a_nn a_{n+1,n+1}|`, `n = 0..N-1`.
pub fn check_c15<T: Scalar>(a: &NormalMatrix<T>) -> ConditionReport {
    let order = a.order();
    let ratios = (0..order)
        .map(|n| {
            let num = (a.diag(n).clone() - a.at(n + 1, n).clone()).abs();
            let den = (a.diag(n).clone() * a.diag(n + 1).clone()).abs();
            (num / den).to_f64()
        })
        .collect();
    ConditionReport::asymptotic(ConditionId::C15, (0..order).collect(), ratios, None)
}

/// Per-row maxima of condition C16 in the scalar type, `n = 0..N`.
pub fn c16_ratios<T: Scalar>(
    a: &NormalMatrix<T>,
    b: &NormalMatrix<T>,
    lambda: &FactorSequence<T>,
) -> Result<Vec<T>> {
    let order = a.order();
    require_dim(b, order, "B")?;
    lambda.require_order(order)?;
    let b = b.truncate(order + 1);
    let hat_b = hat_of(&b);
    let hat_a_inv = invert_hat(&hat_of(a));
    let rows = map_range(Exec::default(), 0..order + 1, |n| {
        if n < 2 {
            return Ok(T::zero());
        }
        let den = (b.diag(n).clone() / a.diag(n).clone()).abs() * lambda.at(n).abs();
        let mut worst = T::zero();
        for r in 0..=n - 2 {
            let num = T::sum_iter((r + 2..=n).map(|v| {
                hat_b.at(n, v).abs() * (hat_a_inv.at(v, r).clone() * lambda.at(v).clone()).abs()
            }));
            if den.is_zero() {
                if !num.is_zero() {
                    return Err(Error::DivisionByZero(n));
                }
                continue;
            }
            worst = T::max_of(worst, num / den.clone());
        }
        Ok(worst)
    });
    rows.into_iter().collect()
}

/// Condition C16: `max_{r <= n-2} sum_{v=r+2}^n |bhat_nv| |ahat'_vr lambda_v| / ((b_nn/a_nn) |lambda_n|)`.
pub fn check_c16<T: Scalar>(
    a: &NormalMatrix<T>,
    b: &NormalMatrix<T>,
    lambda: &FactorSequence<T>,
) -> Result<ConditionReport> {
    let ratios = c16_ratios(a, b, lambda)?
        .iter()
        .map(Scalar::to_f64)
        .collect::<Vec<_>>();
    Ok(ConditionReport::asymptotic(
        ConditionId::C16,
        (0..ratios.len()).collect(),
        ratios,
        None,
    ))
}

/// Truncated `W_n` for `n = 0..=order` with per-entry tail warnings.
#[derive(Debug, Clone, PartialEq)]
pub struct WSequence<T> {
    pub values: Vec<T>,
    pub warnings: Vec<bool>,
    pub cutoff: usize,
}

/// `W_n = (sum_{v=n+1}^{cutoff} v^{k-1} (q_v / (Q_v Q_{v-1}))^k)^{1/k}`.
pub fn w_sequence<T: Scalar>(
    q: &WeightSequence<T>,
    k: Exponent,
    order: usize,
    tail: &TailSpec,
) -> Result<WSequence<T>> {
    if q.len() < tail.cutoff + 1 {
        return Err(Error::TailUnavailable {
            needed: tail.cutoff,
            available: q.len().saturating_sub(1),
        });
    }
    let e = k.get();
    let term = |v: usize| {
        let x = q.weight(v).clone() / (q.cumulative(v).clone() * q.cumulative_before(v));
        index_weight::<T>(v, e - 1.0) * x.powf(e)
    };
    let (values, warnings) = map_range(Exec::default(), 0..order + 1, |n| {
        let (s, w) = tail_sum(n + 1, tail, term);
        (s.powf(1.0 / e), w)
    })
    .into_iter()
    .unzip();
    Ok(WSequence {
        values,
        warnings,
        cutoff: tail.cutoff,
    })
}

/// Reports for the Riesz conditions (a), (b), (c) on the pair `(p, q)`.
#[derive(Debug, Clone, PartialEq)]
pub struct RieszReports {
    pub a: ConditionReport,
    pub b: ConditionReport,
    pub c: ConditionReport,
}

/// Ratio sequences of the Riesz conditions at order `N`.
///
/// * (a) `|lambda_n| / (n^{1/k-1} p_n Q_n / (P_n q_n))`, `n = 1..N`; under
///   [`Reading::Literal`] the bound is the reciprocal
///   `n^{1/k-1} q_n P_n / (p_n Q_n)`.
/// * (b) `W_n |Q_{n-1} lambda_n - Q_n lambda_{n+1}| / (p_n / P_n)`, `n = 0..N`.
/// * (c) `Q_n |lambda_{n+1}| W_n`, `n = 0..N`.
pub fn check_theorem_a<T: Scalar>(
    p: &WeightSequence<T>,
    q: &WeightSequence<T>,
    lambda: &FactorSequence<T>,
    k: Exponent,
    order: usize,
    tail: &TailSpec,
    reading: Reading,
) -> Result<RieszReports> {
    if p.len() < order + 1 {
        return Err(Error::LengthMismatch {
            expected: order + 1,
            found: p.len(),
        });
    }
    lambda.require_order(order)?;
    let w = w_sequence(q, k, order, tail)?;
    let e = 1.0 / k.get() - 1.0;

    let ratios_a = (1..=order)
        .map(|n| {
            let (num, den) = match reading {
                Reading::Consistent => (
                    p.weight(n).clone() * q.cumulative(n).clone(),
                    p.cumulative(n).clone() * q.weight(n).clone(),
                ),
                Reading::Literal => (
                    q.weight(n).clone() * p.cumulative(n).clone(),
                    p.weight(n).clone() * q.cumulative(n).clone(),
                ),
            };
            let bound = index_weight::<T>(n, e) * num / den;
            (lambda.at(n).abs() / bound).to_f64()
        })
        .collect();

    let ratios_b = (0..=order)
        .map(|n| {
            let diff = q.cumulative_before(n) * lambda.at(n).clone()
                - q.cumulative(n).clone() * lambda.at(n + 1).clone();
            let bound = p.weight(n).clone() / p.cumulative(n).clone();
            (w.values[n].clone() * diff.abs() / bound).to_f64()
        })
        .collect();

    let ratios_c = (0..=order)
        .map(|n| (q.cumulative(n).clone() * lambda.at(n + 1).abs() * w.values[n].clone()).to_f64())
        .collect();

    let tail_info = || Some((tail.cutoff, w.warnings.clone()));
    Ok(RieszReports {
        a: ConditionReport::asymptotic(ConditionId::TaA, (1..=order).collect(), ratios_a, None),
        b: ConditionReport::asymptotic(
            ConditionId::TaB,
            (0..=order).collect(),
            ratios_b,
            tail_info(),
        ),
        c: ConditionReport::asymptotic(
            ConditionId::TaC,
            (0..=order).collect(),
            ratios_c,
            tail_info(),
        ),
    })
}

/// Column norms `sum_{n>=v} |c_nv|^k` of a lower-triangular operator.
#[derive(Debug, Clone, PartialEq)]
pub struct ColumnBound<T> {
    pub sup: T,
    pub argmax: usize,
    pub columns: Vec<T>,
}

/// `sup_v sum_n |c_nv|^k`, the `(l_1, l_k)` membership quantity.
pub fn l1_lk_bound<T: Scalar>(c: &LowerTriangular<T>, k: Exponent) -> ColumnBound<T> {
    l1_lk_bound_with(Exec::default(), c, k)
}

pub fn l1_lk_bound_with<T: Scalar>(
    exec: Exec,
    c: &LowerTriangular<T>,
    k: Exponent,
) -> ColumnBound<T> {
    let e = k.get();
    let columns = map_range(exec, 0..c.dim(), |v| {
        T::sum_iter((v..c.dim()).map(|n| c.at(n, v).abs().powf(e)))
    });
    let mut argmax = 0;
    for (v, s) in columns.iter().enumerate() {
        if *s > columns[argmax] {
            argmax = v;
        }
    }
    ColumnBound {
        sup: columns.get(argmax).cloned().unwrap_or_else(T::zero),
        argmax,
        columns,
    }
}

/// Column norms as an `L1LK` report indexed by column.
pub fn l1_lk_report<T: Scalar>(bound: &ColumnBound<T>) -> ConditionReport {
    let ratios: Vec<f64> = bound.columns.iter().map(Scalar::to_f64).collect();
    ConditionReport::asymptotic(ConditionId::L1Lk, (0..ratios.len()).collect(), ratios, None)
}
