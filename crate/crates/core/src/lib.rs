//! Exact computations with plane curves, their projective automorphism
//! groups and the classification of finite groups acting on them.
//!
//! Everything is exact: scalars live in cyclotomic fields `Q(ζₙ)`.

pub mod bounds;
pub mod classify;
pub mod curves;
pub mod cyclo;
pub mod error;
pub mod formats;
pub mod linalg;
pub mod polyring;
pub mod projgroup;
pub mod suites;
pub mod upoly;

pub use cyclo::{parse_scalar, CycloElem};
pub use error::{Error, Result};
