//! Crate-wide error type.
//!
//! Every fallible operation returns [`Error`]; variants carry enough data
//! that a caller (in particular the CLI) can name the offending field or
//! threshold without re-deriving it.

use thiserror::Error;

#[derive(Debug, Clone, Error)]
pub enum Error {
    /// Two points (or a matrix and a point) live in different dimensions.
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    /// A planar vector must have even, positive length 2n.
    #[error("planar dimension must be even and positive, got {0}")]
    BadPlanarDim(usize),

    /// Group dimension n must be at least 1.
    #[error("group dimension must be >= 1, got {0}")]
    BadGroupDim(usize),

    /// A coordinate was NaN or infinite.
    #[error("non-finite coordinate in {context}")]
    NonFinite { context: &'static str },

    /// Dilation factors must be strictly positive.
    #[error("dilation factor must be > 0, got {0}")]
    BadDilation(f64),

    /// Exponents p must lie in [1, inf].
    #[error("exponent p must lie in [1, inf], got {0}")]
    BadExponent(f64),

    /// The (p, a) pair does not define a norm at this dimension; the bound
    /// that was violated is carried along.
    #[error("(p, a) = ({p}, {a}) is not a norm on H^{n}: requires 0 < a <= {bound}")]
    InvalidLpa { p: String, a: f64, n: usize, bound: f64 },

    /// A violation witness was requested for parameters that are valid.
    #[error("no violation witness: (p, a) = ({p}, {a}) is valid on H^{n}")]
    WitnessForValidLpa { p: String, a: f64, n: usize },

    /// Curve grids must be strictly increasing.
    #[error("sample grid must be strictly increasing (offending index {0})")]
    GridNotIncreasing(usize),

    /// An operation needed more samples than it was given.
    #[error("need at least {need} samples, got {got}")]
    TooFewSamples { need: usize, got: usize },

    /// Stored heights do not satisfy the horizontality recurrence.
    #[error("heights violate the lift recurrence at segment {segment} (defect {defect:.3e})")]
    NotHorizontal { segment: usize, defect: f64 },

    /// A norm that is only defined on part of the group was evaluated
    /// outside that part, or a construction is restricted to n = 1.
    #[error("unsupported evaluation: {0}")]
    Unsupported(String),

    /// Catch-all for malformed arguments; the message names the field.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// Parse failure for descriptors, points or CSV rows.
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
