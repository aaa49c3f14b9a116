//! End-to-end deduction: datasets in and out, parallel evaluation, and the
//! skeleton → square → restore → verify → square-root → render run.

pub mod dataset;
pub mod evaluator;
pub mod factored;
pub mod run;

use thiserror::Error;

use crate::normal_form::NormalFormError;
use crate::pade::PadeError;
use crate::remnant::RemnantError;

pub use dataset::{load_dataset, DataPoint, DataSet};
pub use evaluator::{evaluate_parallel, parameter_points, ClosedForm, Evaluator, NormalFormEvaluator, XMode};
pub use factored::{render_factored, FactoredPoly};
pub use run::{run, PipelineConfig, Report, RestoreMode, SlotReport, StageMemory, Transform};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PipelineError {
    #[error("line {line}: {msg}")]
    Dataset { line: usize, msg: String },
    #[error("{0}")]
    Io(String),
    #[error("configuration: {0}")]
    Config(String),
    #[error("evaluation failed at point {index}: {msg}")]
    Evaluation { index: usize, msg: String },
    #[error("structure analysis: {0}")]
    Skeleton(#[from] RemnantError),
    #[error("point {index}: {what} is not rational; try squaring")]
    NotRational { index: usize, what: &'static str },
    #[error("slot {slot}: {source}")]
    Restore { slot: usize, source: PadeError },
    #[error("slot {slot}: restored function fails at held-out points {failed:?}")]
    Unverified { slot: usize, failed: Vec<usize> },
    #[error(transparent)]
    NormalForm(#[from] NormalFormError),
    #[error("internal: {0}")]
    Internal(String),
}

impl PipelineError {
    /// 2 unverified (including fit points no function of the window
    /// passes through), 3 insufficient data, 4 parse or configuration error,
    /// 1 anything else.
    pub fn exit_code(&self) -> i32 {
        match self {
            PipelineError::Unverified { .. } => 2,
            PipelineError::Restore {
                source: PadeError::NoSolution,
                ..
            } => 2,
            PipelineError::Restore {
                source: PadeError::InsufficientData { .. } | PadeError::DataExhausted { .. },
                ..
            } => 3,
            PipelineError::Dataset { .. } | PipelineError::Config(_) | PipelineError::Io(_) => 4,
            PipelineError::NormalForm(NormalFormError::File { .. } | NormalFormError::BadQuantity(_)) => 4,
            _ => 1,
        }
    }
}
