use thiserror::Error;

use crate::deform::StepKind;

/// Errors reported by the engine.
///
/// `Input` variants describe a violated precondition on caller-supplied data.
/// `Invariant` means the engine itself reached a state its own rules forbid,
/// which is a bug rather than a bad input.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed partition {0:?}: {1}")]
    Parse(String, String),

    #[error("parts must be weakly decreasing, got {0:?}")]
    NotDecreasing(Vec<usize>),

    #[error("partition {inner} is not contained in {outer}")]
    NotContained { outer: String, inner: String },

    #[error("partition {partition} does not fit in a {k}x{width} rectangle")]
    DoesNotFit { partition: String, k: usize, width: usize },

    #[error("invalid rectangle: k = {k}, width = {width} (both must be positive)")]
    BadRectangle { k: usize, width: usize },

    #[error("partition {partition} has more than k = {k} parts")]
    TooManyRows { partition: String, k: usize },

    #[error("row {row} is not the active row (active row is {active:?})")]
    NotActiveRow { row: usize, active: Option<usize> },

    #[error("step {step:?} is not applicable at row {row}")]
    StepNotApplicable { row: usize, step: StepKind },

    #[error("diagram is not terminal: row {0} is still active")]
    NotTerminal(usize),

    #[error("tableau size mismatch: shape has {shape} boxes, weight sums to {weight}")]
    SizeMismatch { shape: usize, weight: usize },

    #[error("tableau is malformed: {0}")]
    BadTableau(String),

    #[error("tableau is not semistandard")]
    NotSemistandard,

    #[error("trace does not match the labeled run: {0}")]
    TraceMismatch(String),

    #[error("diagram has {n} boxes, above the bound of {bound}")]
    TooLarge { n: usize, bound: usize },

    #[error("invalid diagram: {0}")]
    BadDiagram(String),

    #[error("path count overflowed 64 bits")]
    Overflow,

    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

impl Error {
    /// True for errors caused by the engine rather than its inputs.
    pub fn is_internal(&self) -> bool {
        matches!(self, Error::Invariant(_) | Error::Overflow)
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

macro_rules! ensure_invariant {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err($crate::error::Error::Invariant(format!($($fmt)+)));
        }
    };
}

pub(crate) use ensure_invariant;
