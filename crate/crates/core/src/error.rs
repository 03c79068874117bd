use alloc::string::String;
use core::fmt;

/// Errors shared across the crate.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Vector/matrix/spec dimension does not match the owning algebra.
    DimensionMismatch { expected: usize, got: usize },
    /// Structure constants violate antisymmetry.
    NotAntisymmetric { max_violation: f64 },
    /// Jacobi identity fails beyond tolerance.
    JacobiFailure { residual: f64, tolerance: f64 },
    /// A basis index lies outside `0..dim`.
    IndexOutOfRange { index: usize, dim: usize },
    /// Unknown catalog name.
    UnknownCatalog(String),
    /// Contraction parameter outside its admissible range.
    InvalidParameter(String),
    /// The requested contraction is refused by the IW-tensor criterion.
    InvalidContraction(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DimensionMismatch { expected, got } => {
                write!(f, "dimension mismatch: expected {expected}, got {got}")
            }
            Error::NotAntisymmetric { max_violation } => {
                write!(f, "structure constants not antisymmetric (max violation {max_violation:e})")
            }
            Error::JacobiFailure { residual, tolerance } => {
                write!(f, "Jacobi identity fails: residual {residual:e} > tolerance {tolerance:e}")
            }
            Error::IndexOutOfRange { index, dim } => {
                write!(f, "basis index {index} out of range for dimension {dim}")
            }
            Error::UnknownCatalog(name) => write!(f, "unknown catalog algebra '{name}'"),
            Error::InvalidParameter(msg) => write!(f, "invalid parameter: {msg}"),
            Error::InvalidContraction(msg) => write!(f, "invalid contraction: {msg}"),
        }
    }
}
