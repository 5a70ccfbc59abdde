use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// A matrix that must be Hermitian is not, beyond tolerance.
    #[error("matrix is not Hermitian: max |m - m^dagger| = {defect:e}")]
    NotHermitian { defect: f64 },

    #[error("trace deviates from 1 by {deviation:e}")]
    TraceNotUnit { deviation: f64 },

    #[error("matrix is not positive semidefinite: smallest eigenvalue {min_eigenvalue:e}")]
    NotPositive { min_eigenvalue: f64 },

    #[error("centre-of-mass energy {energy} MeV is below the threshold {threshold} MeV")]
    BelowThreshold { energy: f64, threshold: f64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// The explicit element-list path only covers real coefficients.
    #[error("unsupported input: {0}")]
    Unsupported(String),
}

impl Error {
    /// True for violations of a numerical contract (as opposed to bad user input).
    pub fn is_contract_violation(&self) -> bool {
        matches!(
            self,
            Error::NotHermitian { .. } | Error::TraceNotUnit { .. } | Error::NotPositive { .. }
        )
    }
}
