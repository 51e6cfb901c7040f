use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("state is not normalized: |norm² - 1| = {deviation:e} exceeds tolerance {tolerance:e}")]
    NotNormalized { deviation: f64, tolerance: f64 },

    #[error("expectation value has imaginary residue {imag:e} beyond tolerance {tolerance:e}; matrix is not Hermitian")]
    ComplexExpectation { imag: f64, tolerance: f64 },

    #[error("observable invariant violated: {0}")]
    InvalidObservable(String),

    #[error("scenario has no measurement stages")]
    NoStages,

    #[error("scenario has {stages} stages, above the cap of {cap}")]
    StageCapExceeded { stages: usize, cap: usize },

    #[error("non-finite angle in {0}")]
    NonFiniteAngle(String),

    #[error("number of trials must be at least 1")]
    ZeroTrials,
}
