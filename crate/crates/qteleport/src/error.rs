use thiserror::Error;

/// Errors surfaced by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch in {context}: expected {expected}, got {actual}")]
    DimensionMismatch {
        context: &'static str,
        expected: String,
        actual: String,
    },

    #[error("matrix is not Hermitian within tolerance")]
    NotHermitian,

    #[error("not a density matrix: {0}")]
    NotDensityMatrix(String),

    #[error("probability {0} outside [0, 1]")]
    InvalidProbability(f64),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("measurement outcome index {0} outside 1..=4")]
    OutcomeIndex(usize),

    #[error("unknown noise code {0:?} (expected BF, PF, D, AD or NONE)")]
    BadNoiseCode(String),

    #[error("bad arrangement code {0:?} (expected three comma-separated noise codes)")]
    BadArrangementCode(String),

    #[error("postselection set is empty")]
    EmptySelection,

    #[error("combined success rate below floor; postselected efficiency undefined")]
    ZeroSuccess,

    #[error("no feasible point: every candidate has success rate below q_min")]
    Infeasible,

    #[error("malformed {what}: {detail}")]
    Malformed { what: &'static str, detail: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    pub(crate) fn dims(context: &'static str, expected: impl Into<String>, actual: impl Into<String>) -> Self {
        Error::DimensionMismatch {
            context,
            expected: expected.into(),
            actual: actual.into(),
        }
    }
}
