use thiserror::Error;

/// Errors raised by state construction, measurement and correlation routines.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("duplicate party label `{0}`")]
    DuplicateLabel(String),

    #[error("unknown party label `{0}`")]
    UnknownLabel(String),

    #[error("party set must not be empty")]
    EmptyPartySet,

    #[error("invalid layout: {0}")]
    InvalidLayout(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix is not Hermitian (max deviation {deviation:e})")]
    NotHermitian { deviation: f64 },

    #[error("invalid state: {0}")]
    InvalidState(String),

    #[error("probability {0} outside [0, 1]")]
    ProbabilityOutOfRange(f64),

    #[error("POVM needs at least as many outcomes as the local dimension (K = {outcomes}, d = {dim})")]
    TooFewOutcomes { outcomes: usize, dim: usize },

    #[error("expected {expected} POVM parameters, found {found}")]
    ParameterCount { expected: usize, found: usize },

    #[error("expected a {expected}-party state, found {found} parties")]
    PartyCount { expected: usize, found: usize },

    #[error("state is not pure (purity {purity})")]
    NotPure { purity: f64 },

    #[error("operation requires two qubits, found dimensions {0:?}")]
    NotTwoQubit(Vec<usize>),

    #[error("unknown state family `{0}`")]
    UnknownFamily(String),

    #[error("theta {0} outside [0, pi/2]")]
    ThetaOutOfRange(f64),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
