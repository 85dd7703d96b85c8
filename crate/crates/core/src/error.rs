use thiserror::Error;

use crate::scalar::Rational;

pub type Result<T> = std::result::Result<T, Error>;

/// Every failure the library can report.
///
/// Contract violations (bad shapes, bad parameters, unmet hypotheses) are
/// distinguished from [`Error::WitnessNotFound`], which is a legitimate
/// outcome of a bounded search rather than a misuse.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("invalid scalar {0:?}: expected an integer or p/q")]
    InvalidScalar(String),

    #[error("dimension mismatch in {op}: {left_rows}x{left_cols} vs {right_rows}x{right_cols}")]
    DimensionMismatch {
        op: &'static str,
        left_rows: usize,
        left_cols: usize,
        right_rows: usize,
        right_cols: usize,
    },

    #[error("{op} requires a square matrix, got {rows}x{cols}")]
    NotSquare { op: &'static str, rows: usize, cols: usize },

    #[error("invalid matrix shape: {0}")]
    InvalidShape(String),

    #[error("matrix is not invertible")]
    Singular,

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("the zero polynomial is not allowed here")]
    ZeroPolynomial,

    #[error("no matrix supplied for variable X{0}")]
    MissingVariable(u32),

    #[error("invalid model spectrum: {0}")]
    InvalidSpectrum(String),

    #[error("invalid coefficients: {0}")]
    InvalidCoefficients(String),

    #[error("{op} requires a nonscalar matrix")]
    ScalarMatrix { op: &'static str },

    #[error("trace mismatch: matrix has trace {found}, targets sum to {expected}")]
    TraceMismatch {
        expected: Box<Rational>,
        found: Box<Rational>,
    },

    #[error("matrix must have trace zero, found trace {0}")]
    NonzeroTrace(Rational),

    #[error("matrix is not similar to the model: {0}")]
    NotSimilarToModel(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("hypothesis violated: {0}")]
    Hypothesis(String),

    #[error("no diagonal witness found within budget {budget} (seed {seed})")]
    WitnessNotFound { budget: u64, seed: u64 },

    #[error("internal verification failed: {0}")]
    VerificationFailed(String),

    #[error("malformed input: {0}")]
    Format(String),
}

impl Error {
    /// Short stable tag used as a machine-parsable error prefix.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::DivisionByZero => "division-by-zero",
            Error::InvalidScalar(_) => "invalid-scalar",
            Error::DimensionMismatch { .. } => "dimension-mismatch",
            Error::NotSquare { .. } => "not-square",
            Error::InvalidShape(_) => "invalid-shape",
            Error::Singular => "singular",
            Error::InvalidPermutation(_) => "invalid-permutation",
            Error::Syntax { .. } => "syntax",
            Error::ZeroPolynomial => "zero-polynomial",
            Error::MissingVariable(_) => "missing-variable",
            Error::InvalidSpectrum(_) => "invalid-spectrum",
            Error::InvalidCoefficients(_) => "invalid-coefficients",
            Error::ScalarMatrix { .. } => "scalar-matrix",
            Error::TraceMismatch { .. } => "trace-mismatch",
            Error::NonzeroTrace(_) => "nonzero-trace",
            Error::NotSimilarToModel(_) => "not-similar",
            Error::Precondition(_) => "precondition",
            Error::Hypothesis(_) => "hypothesis",
            Error::WitnessNotFound { .. } => "not-found",
            Error::VerificationFailed(_) => "verification-failed",
            Error::Format(_) => "format",
        }
    }
}
