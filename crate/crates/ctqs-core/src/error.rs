//! Error type shared by all modules.

use core::fmt;

/// Errors reported by the simulation kernel.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A matrix failed the `M = M†` check.
    NotHermitian { max_asymmetry: f64 },
    /// Two operands live in different Hilbert-space dimensions.
    DimensionMismatch { left: usize, right: usize },
    /// An amplitude or matrix entry was NaN or infinite.
    NonFinite,
    /// Fenner's Hamiltonian is undefined for orthogonal source and target.
    OrthogonalSourceTarget,
    /// The time-optimal generator is undefined for coincident endpoints.
    CoincidentStates,
    /// An overlap sat on (or outside) the open interval the formula needs.
    DegenerateOverlap { overlap: f64 },
    /// The integrator let the state norm drift past the configured tolerance.
    StepTooLarge { norm_drift: f64, tolerance: f64 },
    /// A trajectory with fewer than two points carries no path information.
    EmptyTrajectory,
    /// The two path-length routes (dispersion integral vs. discrete
    /// Fubini-Study increments) disagreed beyond tolerance.
    PathLengthMismatch {
        dispersion_route: f64,
        fubini_route: f64,
    },
    /// The population imbalance parameter must satisfy |epsilon| < 1.
    EpsilonOutOfRange { epsilon: f64 },
    /// The involution requires orthogonal swap states.
    NotOrthogonal { overlap: f64 },
    /// A rotation axis must be a unit vector.
    NonUnitAxis { norm: f64 },
    /// The search iteration never rose above the starting probability.
    NoProgress,
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::NotHermitian { max_asymmetry } => {
                write!(f, "matrix is not Hermitian (max |M - M†| entry = {max_asymmetry:e})")
            }
            Self::DimensionMismatch { left, right } => {
                write!(f, "dimension mismatch: {left} vs {right}")
            }
            Self::NonFinite => write!(f, "non-finite component rejected"),
            Self::OrthogonalSourceTarget => {
                write!(f, "Fenner construction excluded for orthogonal source and target")
            }
            Self::CoincidentStates => {
                write!(f, "time-optimal Hamiltonian undefined for coincident states")
            }
            Self::DegenerateOverlap { overlap } => {
                write!(f, "overlap {overlap} outside the open interval required here")
            }
            Self::StepTooLarge { norm_drift, tolerance } => {
                write!(f, "norm drift {norm_drift:e} exceeds tolerance {tolerance:e}")
            }
            Self::EmptyTrajectory => write!(f, "trajectory has fewer than two points"),
            Self::PathLengthMismatch { dispersion_route, fubini_route } => write!(
                f,
                "path-length routes disagree: dispersion integral {dispersion_route} vs discrete Fubini-Study {fubini_route}"
            ),
            Self::EpsilonOutOfRange { epsilon } => {
                write!(f, "epsilon {epsilon} outside (-1, 1)")
            }
            Self::NotOrthogonal { overlap } => {
                write!(f, "states are not orthogonal (|<A|B>| = {overlap:e})")
            }
            Self::NonUnitAxis { norm } => write!(f, "rotation axis has norm {norm}, expected 1"),
            Self::NoProgress => write!(f, "search iteration made no progress"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
