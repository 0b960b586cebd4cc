use thiserror::Error;

/// Errors raised by the numerical kernels.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("non-finite input for {0}")]
    NonFinite(&'static str),

    #[error("oscillator index {n} beyond the stable recurrence range (max {max})")]
    OscillatorIndex { n: usize, max: usize },

    #[error("sector infeasible: {0}")]
    SectorInfeasible(String),

    #[error("target sector is not present in the basis")]
    TargetSectorAbsent,

    #[error("shape mismatch: expected {expected}, found {found}")]
    ShapeMismatch { expected: String, found: String },

    #[error("problem too large for the dense first-quantized oracle: {0}")]
    SizeGuard(String),

    #[error("grid spacing {spacing} does not resolve the magnetic length (need < {required})")]
    GridTooCoarse { spacing: f64, required: f64 },

    #[error("wrong multipole class: expected {expected}, found {found}")]
    WrongMultipole {
        expected: &'static str,
        found: &'static str,
    },

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("coherent-state truncation n_max = {n_max} is below the required {required}")]
    TruncationInsufficient { n_max: usize, required: usize },

    #[error("continuum energies must be strictly increasing and uniformly spaced")]
    NonUniformGrid,

    #[error("duplicate continuum energies")]
    DuplicateEnergies,

    #[error("under-resolved: {0}")]
    UnderResolved(String),

    #[error("fit failed: {0}")]
    FitFailed(String),
}

pub type Result<T> = std::result::Result<T, Error>;
