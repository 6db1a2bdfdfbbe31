//! Error types shared by the whole crate.

use std::fmt;

/// Errors produced while evaluating Wright functions or generating
/// expansion data.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Gamma evaluated at a nonpositive integer.
    GammaPole(String),
    /// Argument outside the domain of the operation.
    Domain(String),
    /// Invalid Wright parameter lists (weights, pole condition).
    Parameter(String),
    /// The defining series diverges for the given parameters.
    DivergentSeries(String),
    /// Working precision escalation exceeded the configured cap.
    PrecisionCeiling { requested_digits: u32, needed_digits: u32 },
    /// Algebraic expansion would need multiple-pole residues (log z terms).
    MultiplePole(String),
    /// arg z lies on (or within eps of) a ray the expansions do not cover.
    BorderlineRay(String),
    /// The 1/w part of a Laurent expansion failed its exactness check.
    SingularResidual(String),
    /// Closed form not available for the requested index.
    Unsupported(String),
    /// Misuse of the truncated-series engine (division by a series with
    /// zero leading coefficient, log of a series not starting at 1, ...).
    Series(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::GammaPole(s) => write!(f, "gamma pole at {}", s),
            Error::Domain(s) => write!(f, "domain error: {}", s),
            Error::Parameter(s) => write!(f, "invalid parameters: {}", s),
            Error::DivergentSeries(s) => write!(f, "series diverges: {}", s),
            Error::PrecisionCeiling { requested_digits, needed_digits } => write!(
                f,
                "precision ceiling: {} digits requested, escalation wanted {}",
                requested_digits, needed_digits
            ),
            Error::MultiplePole(s) => {
                write!(f, "algebraic expansion has multiple poles (log z terms): {}", s)
            }
            Error::BorderlineRay(s) => write!(f, "borderline ray: {}", s),
            Error::SingularResidual(s) => write!(f, "singular part mismatch: {}", s),
            Error::Unsupported(s) => write!(f, "unsupported: {}", s),
            Error::Series(s) => write!(f, "series engine: {}", s),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
