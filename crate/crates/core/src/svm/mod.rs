//! Linear soft-margin SVM: scaling, binary dual coordinate descent, one-vs-rest,
//! stratified folds and evaluation.

mod binary;
mod eval;
mod folds;
mod multiclass;
mod scaling;

pub use binary::{train_binary, LinearModel, SvmParams};
pub use eval::{evaluate, ClassMetrics, EvalReport};
pub use folds::{kfold_stratified, DEFAULT_SEED};
pub use multiclass::{train_ovr, MulticlassModel};
pub use scaling::{fit_scaling, ScalingParams};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SvmError {
    #[error("training data needs at least two classes")]
    SingleClassInput,
    #[error("non-finite feature value in row {row}")]
    NonFiniteFeature { row: usize },
    #[error("feature vector touches column {column} but the model has {dim} columns")]
    DimensionMismatch { column: usize, dim: usize },
    #[error("{found} labels for {expected} rows")]
    LengthMismatch { expected: usize, found: usize },
    #[error("{n} samples cannot fill {k} folds")]
    TooFewSamples { n: usize, k: usize },
    #[error("no training rows")]
    EmptyInput,
    #[error("invalid parameter: {0}")]
    InvalidParameter(&'static str),
}
