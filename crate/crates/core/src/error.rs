use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

pub type Result<T, E = Error> = core::result::Result<T, E>;

/// Axis of the probability/impact lattice.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    Probability,
    Impact,
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Axis::Probability => f.write_str("probability"),
            Axis::Impact => f.write_str("impact"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    Domain { what: &'static str, value: f64 },
    /// The base curve has a horizontal tangent, so its normal is vertical.
    SingularNormal { x: f64 },
    /// A curve could not be built from the supplied function.
    InvalidCurve(String),
    /// Grid coordinates violate the lattice invariants.
    InvalidGrid { axis: Axis, reason: String },
    /// A random-variable sample violates its invariants.
    InvalidSample(String),
    /// A numeric parameter is out of range.
    InvalidParameter { name: &'static str, value: f64 },
    /// Sampling produced fewer than two usable vertices.
    DegenerateRange { kept: usize, dropped: usize },
    /// No parameter maps onto the requested abscissa.
    OutOfRange { target: f64 },
    /// Several parameters map onto the requested abscissa.
    Ambiguous { target: f64, candidates: Vec<f64> },
    /// The foot-of-normal quartic has no positive real root.
    NoPositiveRoot { a: f64, b: f64 },
    /// The normal projection of the point falls outside the curve domain.
    NoFoot { a: f64, b: f64 },
}

impl Error {
    /// `true` for failures of a numerical procedure, `false` for rejected input.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::DegenerateRange { .. }
                | Error::OutOfRange { .. }
                | Error::Ambiguous { .. }
                | Error::NoPositiveRoot { .. }
                | Error::NoFoot { .. }
        )
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Domain { what, value } => write!(f, "{what} out of domain: {value}"),
            Error::SingularNormal { x } => {
                write!(f, "derivative vanishes at x = {x}; the normal is undefined")
            }
            Error::InvalidCurve(reason) => write!(f, "invalid curve: {reason}"),
            Error::InvalidGrid { axis, reason } => write!(f, "invalid {axis} axis: {reason}"),
            Error::InvalidSample(reason) => write!(f, "invalid sample: {reason}"),
            Error::InvalidParameter { name, value } => {
                write!(f, "invalid parameter {name} = {value}")
            }
            Error::DegenerateRange { kept, dropped } => write!(
                f,
                "degenerate sampling range: {kept} vertices kept, {dropped} dropped as non-monotone"
            ),
            Error::OutOfRange { target } => write!(f, "abscissa {target} is not reached by the curve"),
            Error::Ambiguous { target, candidates } => {
                write!(f, "abscissa {target} is reached at several parameters: {candidates:?}")
            }
            Error::NoPositiveRoot { a, b } => {
                write!(f, "no positive foot of the normal found for point ({a}, {b})")
            }
            Error::NoFoot { a, b } => write!(
                f,
                "the normal projection of point ({a}, {b}) falls outside the curve domain"
            ),
        }
    }
}

impl core::error::Error for Error {}
