use thiserror::Error;

/// Errors produced by the numerical core.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("operator is not self-adjoint (deviation {0:.3e})")]
    NotSelfAdjoint(f64),

    #[error("operator is not positive semidefinite (eigenvalue {0:.3e})")]
    NotPositive(f64),

    #[error("trace is {0}, expected 1")]
    NotUnitTrace(f64),

    #[error("operator is not unitary (deviation {0:.3e})")]
    NotUnitary(f64),

    #[error("state is outside the channel domain: {0}")]
    OutsideDomain(String),

    #[error("outcome ({i},{j}) has probability {probability:.3e}")]
    ZeroProbabilityOutcome { i: usize, j: usize, probability: f64 },

    #[error("operation requires a linear channel")]
    NonlinearChannel,

    #[error("operation requires a trace-preserving channel")]
    NotTracePreserving,

    #[error("matrix is not row-stochastic: {0}")]
    NonStochastic(String),

    #[error("dilation function invalid: {0}")]
    InvalidDilation(String),

    #[error("orbit left the domain box at step {step}: {point:?}")]
    OrbitEscape { step: usize, point: Vec<f64> },

    #[error("map `{0}` has no analytic Jacobian")]
    MissingJacobian(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("value has imaginary residue {0:.3e}")]
    ImaginaryResidue(f64),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
