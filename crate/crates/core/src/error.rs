use core::fmt;

pub type Result<T> = core::result::Result<T, Error>;

/// Failure modes shared by every kernel in the crate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Error {
    /// An argument lies outside the domain of the formula.
    Domain(&'static str),
    /// A requested radius lies where the squared velocity is negative.
    ForbiddenRegion { radius: f64, boundary: f64 },
    /// The residual does not change sign over the bracket.
    NoSignChange { lo: f64, hi: f64 },
    /// An iterative solver hit its iteration cap.
    NoConvergence { iterations: usize },
    /// Quadrature could not reach the requested tolerance.
    Accuracy { estimate: f64, error_estimate: f64 },
    /// The ODE stepper shrank its step below representable resolution.
    StepUnderflow { x: f64 },
}

impl Error {
    /// True for numerical failures, false for rejected inputs.
    pub fn is_solver_failure(&self) -> bool {
        !matches!(self, Error::Domain(_) | Error::ForbiddenRegion { .. })
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Domain(what) => write!(f, "domain error: {what}"),
            Error::ForbiddenRegion { radius, boundary } => write!(
                f,
                "radius {radius:e} m lies in the forbidden region past the turning radius {boundary:e} m"
            ),
            Error::NoSignChange { lo, hi } => {
                write!(f, "residual has no sign change on [{lo:e}, {hi:e}]")
            }
            Error::NoConvergence { iterations } => {
                write!(f, "no convergence after {iterations} iterations")
            }
            Error::Accuracy {
                estimate,
                error_estimate,
            } => write!(
                f,
                "quadrature tolerance not met: estimate {estimate:e}, error estimate {error_estimate:e}"
            ),
            Error::StepUnderflow { x } => write!(f, "ODE step size underflow at x = {x:e}"),
        }
    }
}

impl core::error::Error for Error {}
