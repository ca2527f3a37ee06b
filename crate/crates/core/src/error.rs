use thiserror::Error;

/// Errors raised by the core library.
///
/// Scalar payloads (certificates, offending points) are carried in their
/// exact text form so the error type stays independent of the field.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("sqrt({0}) does not define a real quadratic field (need square-free D >= 2)")]
    InvalidField(u64),

    #[error("empty input")]
    EmptyInput,

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("dimension {dim} exceeds the supported bound {cap}")]
    DimensionTooLarge { dim: usize, cap: usize },

    #[error("the system defines an unbounded polyhedron")]
    Unbounded,

    #[error("point ({point}) is not a member of the polytope")]
    NotAMember { point: String },

    #[error("invalid convex weights: {0}")]
    InvalidWeights(String),

    #[error("inconsistent assignment: affine dependency ({dependency}) of the sources is violated by the targets")]
    InconsistentAssignment { dependency: String },

    #[error("form map must send {0}")]
    UnitPreservation(&'static str),

    #[error("point ({point}) lies outside the domain of the map")]
    OutsideDomain { point: String },

    #[error("no supported exact field for regular {n}-gon coordinates")]
    UnsupportedField { n: usize },

    #[error("out of range: {0}")]
    Range(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
