use thiserror::Error;

/// Errors raised by the exact-arithmetic and group machinery.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("conductor mismatch: {0} vs {1} (embed into a common field first)")]
    ConductorMismatch(u32, u32),
    #[error("cannot embed conductor {from} into conductor {to}: {to} is not a multiple")]
    NotDivisible { from: u32, to: u32 },
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("closure cap {cap} exceeded ({partial} elements found so far)")]
    CapExceeded { cap: usize, partial: usize },
    #[error("element order exceeds cap {0} (element may have infinite order)")]
    InfiniteOrder(usize),
    #[error("identity transformation has no homology data")]
    IdentityTransform,
    #[error("point does not lie on the curve")]
    NotOnCurve,
    #[error("point is a singular point of the curve")]
    SingularPoint,
    #[error("line is contained in the curve")]
    LineInCurve,
    #[error("point does not lie on the line")]
    PointNotOnLine,
    #[error("generator {index} does not preserve the curve")]
    NotAutomorphism { index: usize },
    #[error("curve is singular")]
    SingularCurve,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("eigenvalue search failed: {0}")]
    EigenSearch(String),
    #[error("classification failed: {0}")]
    Unclassified(String),
}

pub type Result<T> = std::result::Result<T, Error>;
