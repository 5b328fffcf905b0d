//! `check`, `transform` and `verify` on a materialised experiment.

use log::{info, warn};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use super::config::{ConfigError, Experiment, ExperimentConfig};
use super::report::{push_condition, Cell, Table, CONDITION_COLUMNS};
use crate::conditions::{
    check_c10, check_c11, check_c12, check_c13, check_c14, check_c15, check_c16, check_c9,
    check_theorem_a, l1_lk_bound, l1_lk_report, ConditionId, ConditionReport, Trend,
};
use crate::error::Error;
use crate::harness::{inequality20_ratio, ProbeKind, ProofContext};
use crate::summability::{
    delta_transform_via_hat, transform_partial_sums, AbsKProfile, SeriesSample,
};
use crate::Reading;

/// Options shared by all subcommands.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct RunOptions {
    pub reading: Reading,
    pub seed: u64,
}

/// Tolerances used by `verify`.
pub const PROBE_TOL: f64 = 1e-12;
pub const DECOMPOSITION_TOL: f64 = 1e-10;
pub const KEY_IDENTITY_TOL: f64 = 1e-11;
pub const BAR_STEP_TOL: f64 = 1e-12;

fn needs_tail(id: ConditionId) -> bool {
    matches!(
        id,
        ConditionId::C10 | ConditionId::C11 | ConditionId::TaB | ConditionId::TaC
    )
}

fn is_theorem_a(id: ConditionId) -> bool {
    matches!(id, ConditionId::TaA | ConditionId::TaB | ConditionId::TaC)
}

fn both_riesz(config: &ExperimentConfig) -> bool {
    config.matrix_a.riesz_weights(1).ok().flatten().is_some()
        && config.matrix_b.riesz_weights(1).ok().flatten().is_some()
}

/// Conditions a `check` run will report, in canonical order.
pub fn planned_conditions(config: &ExperimentConfig) -> Result<Vec<ConditionId>, ConfigError> {
    let riesz = both_riesz(config);
    match config.requested_conditions() {
        None => Ok(ConditionId::ALL
            .into_iter()
            .filter(|&c| riesz || !is_theorem_a(c))
            .collect()),
        Some(mut list) => {
            if !riesz {
                if let Some(c) = list.iter().find(|&&c| is_theorem_a(c)) {
                    return Err(ConfigError::Invalid(format!(
                        "conditions: {c} needs Riesz or Cesaro matrices for both matrix_a and matrix_b"
                    )));
                }
            }
            list.sort();
            list.dedup();
            Ok(list)
        }
    }
}

/// Report for a condition C16 row whose denominator vanishes.
fn c16_division_report(n: usize) -> ConditionReport {
    ConditionReport {
        id: ConditionId::C16,
        indices: vec![n],
        ratios: vec![f64::INFINITY],
        running_sup: vec![f64::INFINITY],
        sup_ratio: f64::INFINITY,
        trend: Trend::Growing,
        tail_cutoff: None,
        tail_warnings: vec![false],
    }
}

/// Materialise `config` and evaluate the requested conditions.
pub fn run_check(
    config: ExperimentConfig,
    opts: RunOptions,
) -> Result<Vec<ConditionReport>, ConfigError> {
    config.validate()?;
    let plan = planned_conditions(&config)?;
    let extend = plan.iter().any(|&c| needs_tail(c));
    let exp = Experiment::from_config(config, extend)?;
    if extend {
        exp.require_tail()?;
    }
    let (a, b) = (exp.a_at_order(), exp.b_at_order());
    let (k, order, tail) = (exp.k, exp.order, &exp.tail);
    let lam = &exp.lambda;
    let riesz = if plan.iter().any(|&c| is_theorem_a(c)) {
        exp.riesz_pair()?
    } else {
        None
    };
    let mut theorem_a = None;

    let mut reports = Vec::with_capacity(plan.len());
    for id in plan {
        info!("evaluating {id}");
        let report = match id {
            ConditionId::C9 => check_c9(&a, &b, lam, k)?,
            ConditionId::C10 => check_c10(&a, &exp.b, lam, k, order, tail)?,
            ConditionId::C11 => check_c11(&exp.b, lam, k, order, tail)?,
            ConditionId::C12 => check_c12(&a),
            ConditionId::C13 => check_c13(&a),
            ConditionId::C14 => check_c14(&b),
            ConditionId::C15 => check_c15(&a),
            ConditionId::C16 => match check_c16(&a, &b, lam) {
                Ok(r) => r,
                Err(Error::DivisionByZero(n)) => {
                    warn!("C16: lambda_{n} = 0 with a nonzero numerator");
                    c16_division_report(n)
                }
                Err(e) => return Err(e.into()),
            },
            ConditionId::TaA | ConditionId::TaB | ConditionId::TaC => {
                if theorem_a.is_none() {
                    let (p, q) = riesz.as_ref().expect("riesz pair");
                    theorem_a = Some(check_theorem_a(p, q, lam, k, order, tail, opts.reading)?);
                }
                let ta = theorem_a.as_ref().expect("theorem a");
                match id {
                    ConditionId::TaA => ta.a.clone(),
                    ConditionId::TaB => ta.b.clone(),
                    _ => ta.c.clone(),
                }
            }
            ConditionId::L1Lk => {
                let ctx = ProofContext::new(&a, &b, lam)?;
                l1_lk_report(&ctx.cnv_column_sums(k, opts.reading))
            }
        };
        if report.any_tail_warning() {
            warn!(
                "{id}: tail sum truncated at {} with a large last term",
                tail.cutoff
            );
        }
        reports.push(report);
    }
    Ok(reports)
}

pub fn check_table(reports: &[ConditionReport]) -> Table {
    let mut table = Table::new(&CONDITION_COLUMNS);
    for r in reports {
        push_condition(&mut table, r);
    }
    table
}

pub const TRANSFORM_COLUMNS: [&str; 7] = [
    "n",
    "a_n",
    "s_n",
    "A_n",
    "delta_A_n",
    "t_n",
    "running_total",
];

/// `A_n(s)`, its backward differences and the `|A|_k` terms of the series.
pub fn run_transform(config: ExperimentConfig) -> Result<Table, ConfigError> {
    if config.series.is_none() {
        return Err(ConfigError::Invalid(
            "series: required for transform".into(),
        ));
    }
    let exp = Experiment::from_config(config, false)?;
    let a = exp.a_at_order();
    let series = exp.series.as_ref().expect("series");
    let transformed = transform_partial_sums(&a, series)?;
    let deltas = delta_transform_via_hat(&a, series)?;
    let profile = AbsKProfile::from_deltas(&deltas, exp.k);

    let mut table = Table::new(&TRANSFORM_COLUMNS);
    for n in 0..=exp.order {
        let (t, total) = if n == 0 {
            (Cell::Empty, Cell::Float(0.0))
        } else {
            (
                profile.terms[n - 1].into(),
                profile.running_total[n - 1].into(),
            )
        };
        table.push(vec![
            n.into(),
            series.coefficients()[n].into(),
            series.partial_sums()[n].into(),
            transformed[n].into(),
            deltas[n].into(),
            t,
            total,
        ]);
    }
    Ok(table)
}

pub const VERIFY_COLUMNS: [&str; 5] = ["check", "index", "value", "tolerance", "pass"];

fn verdict(table: &mut Table, ok: &mut bool, check: &str, index: usize, value: f64, tol: f64) {
    let pass = value <= tol;
    if !pass {
        warn!("{check} at {index}: {value:e} exceeds {tol:e}");
    }
    *ok &= pass;
    table.push(vec![
        check.into(),
        index.into(),
        value.into(),
        tol.into(),
        pass.into(),
    ]);
}

fn note(table: &mut Table, check: &str, index: usize, value: f64) {
    info!("{check} at {index}: {value:e}");
    table.push(vec![
        check.into(),
        index.into(),
        value.into(),
        Cell::Empty,
        Cell::Empty,
    ]);
}

fn max_abs<'a>(xs: impl IntoIterator<Item = &'a f64>) -> f64 {
    xs.into_iter().fold(0.0f64, |m, x| m.max(x.abs()))
}

/// Seeded series with coefficients uniform in `[-1, 1)`.
pub fn random_series(seed: u64, count: usize, len: usize) -> Vec<SeriesSample<f64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| SeriesSample::new((0..len).map(|_| rng.gen_range(-1.0..1.0)).collect()))
        .collect()
}

/// Replay the probe, decomposition and operator constructions at order `N`. Returns the table and whether every check passed.
pub fn run_verify(
    config: ExperimentConfig,
    opts: RunOptions,
) -> Result<(Table, bool), ConfigError> {
    let exp = Experiment::from_config(config, false)?;
    let (a, b) = (exp.a_at_order(), exp.b_at_order());
    let (k, order) = (exp.k, exp.order);
    let ctx = ProofContext::new(&a, &b, &exp.lambda)?;
    let mut table = Table::new(&VERIFY_COLUMNS);
    let mut ok = true;

    for kind in [ProbeKind::Difference, ProbeKind::Shift] {
        let name = format!("probe_{}", kind.as_str());
        for v in 0..order {
            let p = ctx.run_probe(v, kind, k, Reading::Consistent)?;
            let mag = max_abs(p.piecewise_x.iter().chain(&p.piecewise_y)).max(1.0);
            verdict(
                &mut table,
                &mut ok,
                &name,
                v,
                p.discrepancy() / mag,
                PROBE_TOL,
            );
        }
    }
    let m = ctx.empirical_constant(k, Reading::Consistent)?;
    note(
        &mut table,
        "empirical_m",
        m.argmax.map_or(0, |(_, v)| v),
        m.m,
    );

    let mut samples: Vec<SeriesSample<f64>> = exp.series.iter().cloned().collect();
    samples.extend(random_series(
        opts.seed,
        exp.config.random_series,
        order + 1,
    ));
    for (i, s) in samples.iter().enumerate() {
        let d = ctx.decompose(s)?;
        if d.first_column_retained || d.corner_retained {
            info!(
                "decomposition {i}: boundary terms kept (first column {}, corner {})",
                d.first_column_retained, d.corner_retained
            );
        }
        verdict(
            &mut table,
            &mut ok,
            "decomposition",
            i,
            d.residual / d.scale.max(1.0),
            DECOMPOSITION_TOL,
        );
    }

    let mag = |m: &[f64]| max_abs(m).max(1.0);
    let key_scale = mag(&ctx.hat_b.as_lower().rows().concat())
        * mag(exp.lambda.values())
        * mag(&ctx.hat_a_inv.as_lower().rows().concat());
    for n in 2..=order {
        let worst = (1..n)
            .map(|v| ctx.key_identity_check(n, v))
            .collect::<Result<Vec<_>, _>>()?
            .into_iter()
            .fold(0.0, f64::max);
        verdict(
            &mut table,
            &mut ok,
            "key_identity",
            n,
            worst / key_scale,
            KEY_IDENTITY_TOL,
        );
    }
    let a_scale = mag(&a.as_lower().rows().concat());
    for v in 0..order {
        verdict(
            &mut table,
            &mut ok,
            "bar_step",
            v,
            ctx.bar_step_check(v)? / a_scale,
            BAR_STEP_TOL,
        );
    }

    let cnv = ctx.cnv_column_sums(k, Reading::Consistent);
    note(&mut table, "cnv_column_sup", cnv.argmax, cnv.sup);
    let dnr = l1_lk_bound(&ctx.build_dnr(k), k);
    note(&mut table, "dnr_column_sup", dnr.argmax, dnr.sup);

    for (i, s) in samples.iter().enumerate() {
        match ctx.t2_reduction(s, k) {
            Ok(t) => {
                let pass = t.holds();
                if !pass {
                    warn!("t2_reduction {i}: {} exceeds {}", t.lhs, t.rhs);
                }
                ok &= pass;
                table.push(vec![
                    "t2_reduction".into(),
                    i.into(),
                    t.lhs.into(),
                    t.rhs.into(),
                    pass.into(),
                ]);
            }
            Err(Error::DivisionByZero(n)) => {
                warn!("t2_reduction {i}: condition C16 undefined at row {n}, skipped");
                table.push(vec![
                    "t2_reduction".into(),
                    i.into(),
                    Cell::Empty,
                    Cell::Empty,
                    Cell::Empty,
                ]);
            }
            Err(e) => return Err(e.into()),
        }
    }

    if opts.reading == Reading::Literal {
        strict_differences(&exp, &ctx, &mut table)?;
    }
    Ok((table, ok))
}

/// Informational rows comparing the strict and consistent readings.
fn strict_differences(
    exp: &Experiment,
    ctx: &ProofContext<f64>,
    table: &mut Table,
) -> Result<(), ConfigError> {
    let k = exp.k;
    let mut worst_y = (0, 0.0f64);
    let mut worst_ratio = (0, 0.0f64);
    for v in 0..exp.order {
        let c = ctx.run_probe(v, ProbeKind::Difference, k, Reading::Consistent)?;
        let s = ctx.run_probe(v, ProbeKind::Difference, k, Reading::Literal)?;
        let dy = (c.y_norm - s.y_norm).abs();
        if dy > worst_y.1 {
            worst_y = (v, dy);
        }
        if let (Ok(rc), Ok(rs)) = (inequality20_ratio(&c), inequality20_ratio(&s)) {
            if (rc - rs).abs() > worst_ratio.1 {
                worst_ratio = (v, (rc - rs).abs());
            }
        }
    }
    note(table, "strict_y_norm_diff", worst_y.0, worst_y.1);
    note(table, "strict_ineq20_diff", worst_ratio.0, worst_ratio.1);

    let c = ctx.cnv_column_sums(k, Reading::Consistent);
    let s = ctx.cnv_column_sums(k, Reading::Literal);
    note(
        table,
        "strict_cnv_sup_diff",
        s.argmax,
        (s.sup - c.sup).abs(),
    );

    let len = exp.order + 1;
    if let (Some(p), Some(q)) = (
        exp.config.matrix_a.riesz_weights(len)?,
        exp.config.matrix_b.riesz_weights(len)?,
    ) {
        let tail = crate::conditions::TailSpec::new(len, exp.tail.warn_threshold, exp.order)?;
        let q_ext = exp.config.matrix_b.riesz_weights(len + 1)?.unwrap_or(q);
        let ca = check_theorem_a(
            &p,
            &q_ext,
            &exp.lambda,
            k,
            exp.order,
            &tail,
            Reading::Consistent,
        )?;
        let sa = check_theorem_a(
            &p,
            &q_ext,
            &exp.lambda,
            k,
            exp.order,
            &tail,
            Reading::Literal,
        )?;
        let (i, d) =
            ca.a.ratios
                .iter()
                .zip(&sa.a.ratios)
                .enumerate()
                .map(|(i, (x, y))| (ca.a.indices[i], (x - y).abs()))
                .fold(
                    (0, 0.0f64),
                    |best, cur| if cur.1 > best.1 { cur } else { best },
                );
        note(table, "strict_ta_a_diff", i, d);
    }
    Ok(())
}

/// JSON metadata header for a report.
pub fn metadata(command: &str, config: &ExperimentConfig, opts: RunOptions) -> Value {
    let tail = config.tail_spec().ok();
    json!({
        "tool": "summakit",
        "version": env!("CARGO_PKG_VERSION"),
        "command": command,
        "reading": match opts.reading {
            Reading::Consistent => "consistent",
            Reading::Literal => "literal",
        },
        "seed": opts.seed,
        "N": config.order,
        "k": config.k,
        "tail_cutoff": tail.map(|t| t.cutoff),
        "tail_warn_threshold": tail.map(|t| t.warn_threshold),
        "config": serde_json::to_value(config).expect("config serialises"),
    })
}
