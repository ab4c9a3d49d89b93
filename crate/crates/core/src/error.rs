use num_complex::Complex64;
use thiserror::Error;

/// Errors raised by the special-function and integration routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// The argument sits on a pole of the named function.
    #[error("{function}: pole at {at}")]
    Pole {
        function: &'static str,
        at: Complex64,
    },

    /// A precondition on the arguments was violated.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// A series, extrapolation or quadrature did not converge.
    #[error("no convergence: {0}")]
    Convergence(String),

    /// An asymptotic series diverges from its first term on.
    #[error("asymptotic series diverges: {0}")]
    Divergent(String),

    /// A parameter degeneracy whose finite limit could not be formed.
    #[error("degenerate parameters: {0}")]
    Degenerate(String),
}

pub type Result<T> = std::result::Result<T, Error>;
