//! Absolute matrix summability `|A|_k` for normal (lower-triangular, nonzero
//! diagonal) matrices.
//!
//! * [`matrix`]: truncated normal matrices, the bar and hat matrices,
//!   triangular inversion, Riesz and Cesaro families.
//! * [`summability`]: series, partial-sum transforms and `|A|_k` profiles.
//! * [`conditions`]: the summability factor conditions and their Riesz
//!   specialisation, reported as ratio sequences with boundedness verdicts.
//! * [`harness`]: numeric replays of the probe, decomposition and operator
//!   constructions used to prove those conditions necessary and sufficient.
//! * [`cli`]: experiment configs and report writers behind the `summakit` binary.
//!
//! Every algorithm is generic over [`Scalar`], implemented for `f64` and for
//! `num_rational::BigRational` so that identities can be checked exactly.

pub mod cli;
pub mod conditions;
pub mod error;
pub mod harness;
pub mod matrix;
pub mod par;
pub mod scalar;
pub mod summability;

pub use conditions::{ConditionId, ConditionReport, TailSpec, Trend};
pub use error::{Error, Result};
pub use matrix::{LowerTriangular, NormalMatrix, WeightSequence};
pub use par::Exec;
pub use scalar::Scalar;
pub use summability::{Exponent, FactorSequence, SeriesSample};

/// Which form of four formulas to evaluate.
///
/// `Consistent` is the default everywhere. `Literal` switches to the
/// alternative forms: the diagonal probe term `v^{k-1} b_vv |lambda_v|^k`,
/// the weight `n^{1-1/k}` in the `c_nv` column sums, the unhatted `b_nv` in
/// the off-diagonal `c_nv`, and the reciprocal bound in Riesz condition (a).
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum Reading {
    #[default]
    Consistent,
    Literal,
}
