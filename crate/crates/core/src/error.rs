use thiserror::Error;

use crate::fan::LatticeVector;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("the zero vector has no primitive generator")]
    ZeroVector,

    #[error("invalid cone: {0}")]
    InvalidCone(String),

    #[error("invalid fan: {0}")]
    InvalidFan(String),

    #[error("cone spanned by {0} and {1} is not smooth")]
    NotSmooth(LatticeVector, LatticeVector),

    #[error("fan is not complete")]
    NotComplete,

    #[error("{0} is not a ray of the fan")]
    UnknownRay(LatticeVector),

    #[error("cone is not a two-dimensional maximal cone of the fan")]
    ConeNotInFan,

    #[error("divisors are defined on different fans")]
    FanMismatch,

    #[error("divisor has {got} coefficients but the fan has {expected} rays")]
    CoefficientCount { expected: usize, got: usize },

    #[error("rays must be distinct, got {0} twice")]
    RepeatedRay(LatticeVector),

    #[error("tropical polynomial has no monomials")]
    EmptyPolynomial,

    #[error("divisor polytope is unbounded, the section module is not finitely generated")]
    Unbounded,

    #[error("expected {expected} points, got {got}")]
    PointCount { expected: usize, got: usize },

    #[error("point has a -inf coordinate")]
    InfiniteCoordinate,

    #[error("monomial is not a member of the generating set")]
    NotAMember,

    #[error("section module is empty")]
    EmptyModule,

    #[error("brute force limited to {limit} {what}, got {got}")]
    TooLarge {
        what: &'static str,
        limit: usize,
        got: usize,
    },

    #[error("ray {0} was given twice, use the self-intersection")]
    SameRay(LatticeVector),

    #[error("no integer b with u1 + u2 + b*u = 0 for ray {0}")]
    NoIntegerSolution(LatticeVector),

    #[error("parse error: {0}")]
    Parse(String),
}
