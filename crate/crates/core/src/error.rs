use thiserror::Error;

/// Every failure the engine can report. Domain errors name the invariant
/// that failed; `Format` is reserved for malformed input files.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("structure error: {0}")]
    Structure(String),

    #[error("orientation character is not a cocycle: twisted boundary squares to nonzero at {0}")]
    SignCocycle(String),

    #[error("not a closed pseudomanifold: {0}")]
    NotManifold(String),

    #[error("degree error: {0}")]
    Degree(String),

    #[error("bi-chain is not transverse to the diagonal: {0}")]
    NotTransverse(String),

    #[error(
        "translation perturbation failed after {attempts} attempts (radius {radius}): {reason}"
    )]
    PerturbationFailure {
        attempts: usize,
        radius: String,
        reason: String,
    },

    #[error("chain is not a cycle: {0}")]
    NotACycle(String),

    #[error("missing data: {0}")]
    MissingData(String),

    #[error("extension problem in the Gysin sequence at degree {degree}: {detail}")]
    ExtensionAmbiguity { degree: usize, detail: String },

    #[error("invalid input: {0}")]
    Format(String),
}

impl Error {
    /// Input-format errors map to a different process exit status than
    /// domain errors.
    pub fn is_format(&self) -> bool {
        matches!(self, Error::Format(_))
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
