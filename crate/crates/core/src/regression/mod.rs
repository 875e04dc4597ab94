//! Thread-length OLS model: design matrix, rank-revealing fit, inference and reporting.

mod ols;
mod report;
mod tdist;

pub use ols::{build_design, fit_ols, DesignMatrix, Estimate, OlsFit, TermFit, INTERCEPT, RANK_TOL};
pub use report::{render_table, render_tsv, stars};
pub use tdist::{incomplete_beta, ln_beta, ln_gamma, student_t_p};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum RegressionError {
    #[error("no observations")]
    EmptyInput,
    #[error("column `{name}` has {len} rows, expected {expected}")]
    RaggedColumns { name: String, len: usize, expected: usize },
    #[error("{rows} rows cannot identify {columns} coefficients")]
    InsufficientRows { rows: usize, columns: usize },
    #[error("every column was omitted as collinear or zero")]
    AllColumnsOmitted,
    #[error("non-finite value in column `{0}`")]
    NonFinite(String),
    #[error("degrees of freedom must be at least 1")]
    InvalidDf,
    #[error("fits do not share the same predictor set")]
    MismatchedPredictors,
}
