use core::fmt;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// All four confusion counts are zero.
    EmptyMatrix,
    /// F-beta weight that is not a finite positive number.
    InvalidBeta(f64),
    /// Objective point with no coordinates.
    EmptyPoint,
    NonFiniteCoordinate {
        index: usize,
    },
    DimensionMismatch {
        expected: usize,
        found: usize,
    },
    EmptySolutionSet,
    /// The exact sweep only handles one and two objectives.
    ExactHypervolumeUnsupported {
        dims: usize,
    },
    ZeroSamples,
    InvalidBetaGrid(&'static str),
    EmptyFront,
    /// Isocurve level outside the open unit interval.
    InvalidLevel(f64),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::EmptyMatrix => f.write_str("confusion matrix has no observations"),
            Error::InvalidBeta(b) => write!(f, "beta must be finite and positive, got {b}"),
            Error::EmptyPoint => f.write_str("objective point needs at least one coordinate"),
            Error::NonFiniteCoordinate { index } => {
                write!(f, "objective coordinate {index} is not finite")
            }
            Error::DimensionMismatch { expected, found } => {
                write!(f, "dimension mismatch: expected {expected} objectives, found {found}")
            }
            Error::EmptySolutionSet => f.write_str("solution set is empty"),
            Error::ExactHypervolumeUnsupported { dims } => write!(
                f,
                "exact hypervolume supports at most 2 objectives, got {dims}; use the Monte Carlo estimator"
            ),
            Error::ZeroSamples => f.write_str("Monte Carlo estimator needs at least one sample"),
            Error::InvalidBetaGrid(why) => write!(f, "invalid beta grid: {why}"),
            Error::EmptyFront => f.write_str("front has no members"),
            Error::InvalidLevel(l) => write!(f, "isocurve level must lie in (0, 1), got {l}"),
        }
    }
}

impl core::error::Error for Error {}
