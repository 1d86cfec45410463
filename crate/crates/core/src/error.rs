use alloc::string::String;
use core::fmt;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// An argument lies outside the domain of the function.
    Domain { what: &'static str, value: f64 },
    /// A series, extrapolation or quadrature did not reach its tolerance
    /// within its budget.
    Convergence { what: &'static str },
    /// The integrand or evaluator produced a non-finite value.
    Evaluation { at: f64 },
    /// A parameter set failed validation; `constraint` names the first
    /// violated constraint.
    Precondition { constraint: String },
    /// The operation is not available for this domain or dimension.
    Unsupported { what: &'static str },
    /// Input carries no information, e.g. an identically zero profile.
    Degenerate { what: &'static str },
    /// Malformed user data (profiles, grids).
    Invalid { what: String },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Domain { what, value } => write!(f, "domain error: {what} (got {value})"),
            Error::Convergence { what } => write!(f, "no convergence: {what}"),
            Error::Evaluation { at } => write!(f, "non-finite evaluation at {at}"),
            Error::Precondition { constraint } => {
                write!(f, "parameters violate constraint `{constraint}`")
            }
            Error::Unsupported { what } => write!(f, "unsupported: {what}"),
            Error::Degenerate { what } => write!(f, "degenerate input: {what}"),
            Error::Invalid { what } => write!(f, "invalid input: {what}"),
        }
    }
}

impl core::error::Error for Error {}
