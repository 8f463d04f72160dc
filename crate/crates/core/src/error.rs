use thiserror::Error;

/// Errors raised by state construction, grid evaluation and the experiment drivers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("truncation n_max={n_max} too small for amplitude {alpha}: tail mass {tail_mass:e} >= tolerance {tolerance:e}")]
    TruncationTooSmall {
        alpha: f64,
        n_max: usize,
        tail_mass: f64,
        tolerance: f64,
    },
    #[error("amplitude must be real and non-negative, got {0}")]
    NegativeAmplitude(f64),
    #[error("grid too narrow: density {boundary_density:e} at the grid boundary exceeds {threshold:e}")]
    GridTooNarrow { boundary_density: f64, threshold: f64 },
    #[error("conditioning region carries probability {mass:e}, below {threshold:e}")]
    EmptyCondition { mass: f64, threshold: f64 },
    #[error("angle {0} is not a multiple of pi/8")]
    InvalidAngle(String),
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
    #[error("nonlinearity exponent k={0} must be even and >= 2")]
    InvalidExponent(u32),
    #[error("evolution time must be non-negative, got {0}")]
    NegativeTime(f64),
    #[error("state is not normalized: squared norm {0}")]
    NotNormalized(f64),
    #[error("invalid mixture weights: {0}")]
    InvalidWeights(String),
    #[error("truncation policy invalid: {0}")]
    InvalidTruncation(String),
    #[error("cannot parse angle {0:?}")]
    AngleParse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
