//! Experiment configuration files (JSON) and their materialisation.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::conditions::{ConditionId, TailSpec};
use crate::error::Error;
use crate::matrix::{make_normal, riesz_matrix, NormalMatrix, WeightSequence};
use crate::summability::{Exponent, FactorSequence, SeriesSample};

/// Closed-form weight generators for Riesz matrices.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "name", rename_all = "snake_case", deny_unknown_fields)]
pub enum WeightGenerator {
    /// `p_n = value`.
    Constant { value: f64 },
    /// `p_n = (n + 1)^alpha`.
    Power { alpha: f64 },
    /// `p_n = ratio^n`.
    Geometric { ratio: f64 },
}

impl WeightGenerator {
    fn weight(&self, n: usize) -> f64 {
        match *self {
            WeightGenerator::Constant { value } => value,
            WeightGenerator::Power { alpha } => ((n + 1) as f64).powf(alpha),
            WeightGenerator::Geometric { ratio } => ratio.powi(n as i32),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum MatrixSpec {
    Identity,
    Cesaro,
    /// Riesz matrix from explicit weights or a generator (exactly one).
    Riesz {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        weights: Option<Vec<f64>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        generator: Option<WeightGenerator>,
    },
    /// Lower-triangular rows; row `n` holds `n + 1` entries.
    Explicit {
        entries: Vec<Vec<f64>>,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum LambdaSpec {
    Constant {
        c: f64,
    },
    /// `lambda_n = (n + shift)^alpha`; a zero base with `alpha <= 0` gives 1.
    Power {
        alpha: f64,
        #[serde(default)]
        shift: usize,
    },
    Explicit {
        values: Vec<f64>,
    },
    /// Boundary of condition C9: `lambda_n = n^{1/k-1} a_nn / b_nn` (`lambda_0 = a_00 / b_00`).
    RieszAdapted,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ProbeKindSpec {
    Difference,
    Shift,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum SeriesSpec {
    Explicit {
        values: Vec<f64>,
    },
    /// `a_n = (-1)^n / (n + 1)^beta`.
    Alternating {
        beta: f64,
    },
    Probe {
        probe: ProbeKindSpec,
        v: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OutputFormat {
    #[default]
    Csv,
    Json,
}

impl std::str::FromStr for OutputFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            other => Err(format!("unknown format {other:?}, expected csv or json")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TailConfig {
    pub cutoff: Option<usize>,
    #[serde(default = "default_warn")]
    pub warn_threshold: f64,
}

fn default_warn() -> f64 {
    TailSpec::DEFAULT_WARN
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputConfig {
    #[serde(default)]
    pub format: OutputFormat,
    pub path: Option<String>,
}

fn default_random_series() -> usize {
    3
}

/// Contents of a `--config` file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub matrix_a: MatrixSpec,
    pub matrix_b: MatrixSpec,
    pub lambda: LambdaSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub series: Option<SeriesSpec>,
    pub k: f64,
    #[serde(rename = "N")]
    pub order: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tail: Option<TailConfig>,
    #[serde(default)]
    pub output: OutputConfig,
    /// Conditions to report; all applicable ones when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub conditions: Option<Vec<String>>,
    /// Number of seeded random series in `verify` sweeps.
    #[serde(default = "default_random_series")]
    pub random_series: usize,
}

/// Failure while loading or materialising a config.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ConfigError {
    #[error("{0}")]
    Invalid(String),
    #[error(transparent)]
    Math(#[from] Error),
}

impl ConfigError {
    fn field(name: &str, msg: impl std::fmt::Display) -> Self {
        ConfigError::Invalid(format!("{name}: {msg}"))
    }

    /// Exit status: 3 for an unavailable tail, 2 for everything else.
    pub fn exit_code(&self) -> i32 {
        match self {
            ConfigError::Math(Error::TailUnavailable { .. }) => 3,
            _ => 2,
        }
    }
}

impl ExperimentConfig {
    pub fn from_json(text: &str) -> Result<Self, ConfigError> {
        serde_json::from_str(text)
            .map_err(|e| ConfigError::Invalid(format!("config parse error: {e}")))
    }

    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| ConfigError::Invalid(format!("cannot read {}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serialises")
    }

    pub fn validate(&self) -> Result<Exponent, ConfigError> {
        if self.order < 2 {
            return Err(ConfigError::field(
                "N",
                format!("must be at least 2, got {}", self.order),
            ));
        }
        let k = Exponent::new(self.k).map_err(|_| {
            ConfigError::field("k", format!("must be a finite real >= 1, got {}", self.k))
        })?;
        for (name, spec) in [("matrix_a", &self.matrix_a), ("matrix_b", &self.matrix_b)] {
            if let MatrixSpec::Riesz { weights, generator } = spec {
                if weights.is_some() == generator.is_some() {
                    return Err(ConfigError::field(
                        name,
                        "riesz needs exactly one of `weights` or `generator`",
                    ));
                }
            }
        }
        if let Some(list) = &self.conditions {
            for c in list {
                if ConditionId::parse(c).is_none() {
                    return Err(ConfigError::field(
                        "conditions",
                        format!("unknown condition {c:?}"),
                    ));
                }
            }
        }
        Ok(k)
    }

    pub fn tail_spec(&self) -> Result<TailSpec, ConfigError> {
        let default = TailSpec::for_order(self.order);
        let (cutoff, warn) = match &self.tail {
            Some(t) => (t.cutoff.unwrap_or(default.cutoff), t.warn_threshold),
            None => (default.cutoff, default.warn_threshold),
        };
        TailSpec::new(cutoff, warn, self.order).map_err(|e| ConfigError::field("tail", e))
    }

    pub fn requested_conditions(&self) -> Option<Vec<ConditionId>> {
        self.conditions
            .as_ref()
            .map(|list| list.iter().filter_map(|c| ConditionId::parse(c)).collect())
    }
}

impl MatrixSpec {
    /// Whether the matrix can be generated to any order.
    pub fn extensible(&self) -> bool {
        match self {
            MatrixSpec::Identity | MatrixSpec::Cesaro => true,
            MatrixSpec::Riesz { generator, .. } => generator.is_some(),
            MatrixSpec::Explicit { .. } => false,
        }
    }

    /// Largest order available, `None` when unbounded.
    pub fn max_order(&self) -> Option<usize> {
        match self {
            MatrixSpec::Riesz {
                weights: Some(w), ..
            } => Some(w.len().saturating_sub(1)),
            MatrixSpec::Explicit { entries } => Some(entries.len().saturating_sub(1)),
            _ => None,
        }
    }

    /// Weight sequence when this is a Riesz-type matrix.
    pub fn riesz_weights(&self, len: usize) -> Result<Option<WeightSequence<f64>>, Error> {
        let w = match self {
            MatrixSpec::Cesaro => vec![1.0; len],
            MatrixSpec::Riesz {
                weights: Some(w), ..
            } => {
                if w.len() < len {
                    return Err(Error::TailUnavailable {
                        needed: len - 1,
                        available: w.len().saturating_sub(1),
                    });
                }
                w[..len].to_vec()
            }
            MatrixSpec::Riesz {
                generator: Some(g), ..
            } => (0..len).map(|n| g.weight(n)).collect(),
            _ => return Ok(None),
        };
        WeightSequence::new(w).map(Some)
    }

    /// Materialise at order `min(order, max_order)`.
    pub fn build(&self, order: usize) -> Result<NormalMatrix<f64>, Error> {
        let order = self.max_order().map_or(order, |m| m.min(order));
        match self {
            MatrixSpec::Identity => Ok(NormalMatrix::identity(order)),
            MatrixSpec::Cesaro => Ok(NormalMatrix::cesaro(order)),
            MatrixSpec::Riesz { .. } => {
                let w = self.riesz_weights(order + 1)?.expect("riesz weights");
                riesz_matrix(&w, order)
            }
            MatrixSpec::Explicit { entries } => make_normal(entries[..=order].to_vec(), order),
        }
    }
}

/// Weights `(p, q)` of a Riesz-type `(A, B)`.
pub type RieszPair = (WeightSequence<f64>, WeightSequence<f64>);

/// A config turned into concrete floating-point objects.
#[derive(Debug, Clone)]
pub struct Experiment {
    pub config: ExperimentConfig,
    pub k: Exponent,
    pub order: usize,
    pub tail: TailSpec,
    /// `A` and `B` at the largest order needed (at least `N`, up to the tail cutoff).
    pub a: NormalMatrix<f64>,
    pub b: NormalMatrix<f64>,
    /// `lambda_0..lambda_{N+1}`.
    pub lambda: FactorSequence<f64>,
    pub series: Option<SeriesSample<f64>>,
}

impl Experiment {
    /// Validate and materialise. `extend` requests matrices up to the tail cutoff.
    pub fn from_config(config: ExperimentConfig, extend: bool) -> Result<Self, ConfigError> {
        let k = config.validate()?;
        let order = config.order;
        let tail = config.tail_spec()?;
        let target = if extend { tail.cutoff } else { order + 1 };

        let build = |name: &str, spec: &MatrixSpec| -> Result<NormalMatrix<f64>, ConfigError> {
            if let Some(max) = spec.max_order() {
                if max < order {
                    return Err(ConfigError::field(
                        name,
                        format!("has order {max}, below N = {order}"),
                    ));
                }
            }
            spec.build(target).map_err(|e| ConfigError::field(name, e))
        };
        let a = build("matrix_a", &config.matrix_a)?;
        let b = build("matrix_b", &config.matrix_b)?;

        let lambda = build_lambda(&config.lambda, &a, &b, k, order)?;
        let series = match &config.series {
            None => None,
            Some(spec) => Some(build_series(spec, order)?),
        };
        Ok(Self {
            k,
            order,
            tail,
            a,
            b,
            lambda,
            series,
            config,
        })
    }

    pub fn a_at_order(&self) -> NormalMatrix<f64> {
        self.a.truncate(self.order + 1)
    }

    pub fn b_at_order(&self) -> NormalMatrix<f64> {
        self.b.truncate(self.order + 1)
    }

    /// Extended matrices must reach the cutoff for tail sums.
    pub fn require_tail(&self) -> Result<(), ConfigError> {
        for m in [&self.a, &self.b] {
            if m.order() < self.tail.cutoff {
                return Err(Error::TailUnavailable {
                    needed: self.tail.cutoff,
                    available: m.order(),
                }
                .into());
            }
        }
        Ok(())
    }

    /// Riesz weights of `(A, B)` up to the cutoff, when both are Riesz-type.
    pub fn riesz_pair(&self) -> Result<Option<RieszPair>, ConfigError> {
        let len = self.tail.cutoff + 1;
        let p = self.config.matrix_a.riesz_weights(len)?;
        let q = self.config.matrix_b.riesz_weights(len)?;
        Ok(p.zip(q))
    }
}

fn build_lambda(
    spec: &LambdaSpec,
    a: &NormalMatrix<f64>,
    b: &NormalMatrix<f64>,
    k: Exponent,
    order: usize,
) -> Result<FactorSequence<f64>, ConfigError> {
    let len = order + 2;
    let values = match spec {
        LambdaSpec::Constant { c } => vec![*c; len],
        LambdaSpec::Power { alpha, shift } => (0..len)
            .map(|n| {
                let base = (n + shift) as f64;
                if base == 0.0 && *alpha <= 0.0 {
                    1.0
                } else {
                    base.powf(*alpha)
                }
            })
            .collect(),
        LambdaSpec::Explicit { values } => {
            if values.len() < len {
                return Err(ConfigError::field(
                    "lambda",
                    format!("needs at least N + 2 = {len} values, got {}", values.len()),
                ));
            }
            values[..len].to_vec()
        }
        LambdaSpec::RieszAdapted => {
            let e = 1.0 / k.get() - 1.0;
            (0..len)
                .map(|n| {
                    // explicit matrices of order N repeat the last diagonal ratio
                    let m = n.min(a.order()).min(b.order());
                    let w = if n == 0 { 1.0 } else { (n as f64).powf(e) };
                    w * a.diag(m) / b.diag(m)
                })
                .collect()
        }
    };
    if values.iter().any(|v| !v.is_finite()) {
        return Err(ConfigError::field("lambda", "values must be finite"));
    }
    Ok(FactorSequence::new(values))
}

fn build_series(spec: &SeriesSpec, order: usize) -> Result<SeriesSample<f64>, ConfigError> {
    let len = order + 1;
    let coeffs = match spec {
        SeriesSpec::Explicit { values } => {
            if values.is_empty() {
                return Err(ConfigError::field("series", "explicit series is empty"));
            }
            if values.len() < len {
                return Err(ConfigError::field(
                    "series",
                    format!("needs N + 1 = {len} values, got {}", values.len()),
                ));
            }
            values[..len].to_vec()
        }
        SeriesSpec::Alternating { beta } => (0..len)
            .map(|n| {
                let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
                sign / ((n + 1) as f64).powf(*beta)
            })
            .collect(),
        SeriesSpec::Probe { probe, v } => {
            if v + 1 > order {
                return Err(ConfigError::field(
                    "series",
                    format!("probe index {v} needs v + 1 <= N"),
                ));
            }
            let mut c = vec![0.0; len];
            match probe {
                ProbeKindSpec::Difference => {
                    c[*v] = 1.0;
                    c[v + 1] = -1.0;
                }
                ProbeKindSpec::Shift => c[v + 1] = 1.0,
            }
            c
        }
    };
    Ok(SeriesSample::new(coeffs))
}
