use alloc::string::String;

use crate::quantum::Basis;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("matrix entry ({row}, {col}) is not finite")]
    NonFinite { row: usize, col: usize },

    #[error("matrix is not Hermitian (max deviation {deviation:e})")]
    NotHermitian { deviation: f64 },

    #[error("state vector is not normalized (squared norm {norm_sqr})")]
    NotNormalized { norm_sqr: f64 },

    #[error("mixing parameter p = {0} lies outside [0, 1]")]
    ProbabilityOutOfRange(f64),

    #[error("density matrix trace is {0}, expected 1")]
    TraceNotUnit(f64),

    #[error("density matrix has negative eigenvalue {0:e}")]
    NegativeEigenvalue(f64),

    #[error("local bound of an empty observable list is undefined")]
    EmptyObservables,

    #[error("matrix is not unitary (max deviation of U†U from I is {deviation:e})")]
    NotUnitary { deviation: f64 },

    #[error("observable set has negative local bound {0}")]
    NegativeBound(f64),

    #[error("a separable mixture needs at least one product term")]
    NoMixtureTerms,

    #[error("need at least {required} shots, got {got}")]
    TooFewShots { required: u64, got: u64 },

    #[error("no count table for the {0} basis")]
    MissingBasis(Basis),

    #[error("more than one count table for the {0} basis")]
    DuplicateBasis(Basis),

    #[error("invalid state spec `{0}`")]
    InvalidStateSpec(String),

    #[error("expectation value has imaginary part {0:e}")]
    ComplexExpectation(f64),

    #[error("numerical invariant violated: {0}")]
    InvariantViolation(&'static str),
}

impl Error {
    /// True for errors that signal a numerical bug rather than bad input.
    pub fn is_internal(&self) -> bool {
        matches!(
            self,
            Error::ComplexExpectation(_) | Error::InvariantViolation(_)
        )
    }
}
