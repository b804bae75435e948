//! Projective transformations, finite groups of them and their geometry.

mod closure;
mod config;
mod eigen;
mod fingerprint;
mod pbd;

pub use closure::{closure, MatrixGroup, DEFAULT_CAP};
pub use config::{fixed_configuration, FixedConfiguration, Triangle};
pub use eigen::{eigen_structure, homology_data, EigenStructure, HomologyData};
pub use fingerprint::{fingerprint, reference_order_multiset, GroupLabel};
pub use pbd::{conjugate_group, pbd_split, standard_position, PbdSplit};

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::cyclo::{CycloElem, Rational};
use crate::error::{Error, Result};
use crate::linalg::{self, Mat3};
use crate::polyring::ProjPoint;

/// An element of `PGL(3)`: an invertible matrix scaled so that its first
/// nonzero entry in row-major order is 1.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProjTransform {
    m: Mat3,
}

impl ProjTransform {
    pub fn new(m: Mat3) -> Result<Self> {
        if linalg::det(&m).is_zero() {
            return Err(Error::SingularMatrix);
        }
        Ok(Self::normalized(m))
    }

    fn normalized(m: Mat3) -> Self {
        let lead = m
            .iter()
            .flatten()
            .find(|c| !c.is_zero())
            .expect("invertible matrix")
            .clone();
        if lead.is_one() {
            return ProjTransform { m };
        }
        let inv = lead.inverse().expect("nonzero lead");
        ProjTransform {
            m: linalg::scale(&m, &inv),
        }
    }

    pub fn from_int_rows(rows: [[i64; 3]; 3]) -> Result<Self> {
        Self::new(rows.map(|r| r.map(CycloElem::from_int)))
    }

    pub fn identity() -> Self {
        ProjTransform { m: linalg::identity() }
    }

    /// `[aX, bY, cZ]`.
    pub fn diagonal(a: CycloElem, b: CycloElem, c: CycloElem) -> Result<Self> {
        Self::new(linalg::diag([a, b, c]))
    }

    /// The coordinate permutation `[X_{p0}, X_{p1}, X_{p2}]`, e.g. `[1, 2, 0]`
    /// is `[Y, Z, X]`.
    pub fn permutation(p: [usize; 3]) -> Self {
        let m = std::array::from_fn(|r| std::array::from_fn(|c| CycloElem::from_int((p[r] == c) as i64)));
        ProjTransform { m }
    }

    pub fn matrix(&self) -> &Mat3 {
        &self.m
    }

    /// Matrix product `self · other` (apply `other` first).
    pub fn compose(&self, other: &Self) -> Self {
        Self::normalized(linalg::mat_mul(&self.m, &other.m))
    }

    pub fn inverse_matrix(&self) -> Mat3 {
        linalg::inverse(&self.m).expect("invertible by construction")
    }

    pub fn inverse(&self) -> Self {
        Self::normalized(linalg::adjugate(&self.m))
    }

    pub fn pow(&self, k: i64) -> Self {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = Self::identity();
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.compose(&sq);
            }
            e >>= 1;
            if e > 0 {
                sq = sq.compose(&sq);
            }
        }
        acc
    }

    pub fn transpose(&self) -> Self {
        Self::normalized(linalg::transpose(&self.m))
    }

    /// `t⁻¹ · self · t`.
    pub fn conjugate_by(&self, t: &Self) -> Self {
        t.inverse().compose(self).compose(t)
    }

    pub fn is_identity(&self) -> bool {
        (0..3).all(|i| (0..3).all(|j| if i == j { self.m[i][j].is_one() } else { self.m[i][j].is_zero() }))
    }

    pub fn is_diagonal(&self) -> bool {
        (0..3).all(|i| (0..3).all(|j| i == j || self.m[i][j].is_zero()))
    }

    pub fn apply(&self, p: &ProjPoint) -> ProjPoint {
        ProjPoint::new(linalg::mat_vec(&self.m, p.coords())).expect("invertible map")
    }

    pub fn conductor(&self) -> u32 {
        linalg::mat_conductor(&self.m)
    }

    pub fn embed_to(&self, n: u32) -> Result<Self> {
        Ok(ProjTransform {
            m: linalg::embed_mat(&self.m, n)?,
        })
    }

    /// Coefficients at conductor `n`, usable as a hash key.
    pub fn key(&self, n: u32) -> Vec<Rational> {
        let mut out = Vec::with_capacity(9 * n as usize);
        for c in self.m.iter().flatten() {
            if c.conductor() == n {
                c.extend_key(&mut out);
            } else {
                c.embed_to(n).expect("conductor divides key conductor").extend_key(&mut out);
            }
        }
        out
    }

    /// Least `k ≥ 1` with `selfᵏ` scalar.
    pub fn element_order(&self, cap: usize) -> Result<usize> {
        let mut p = self.clone();
        for k in 1..=cap {
            if p.is_identity() {
                return Ok(k);
            }
            p = p.compose(self);
        }
        Err(Error::InfiniteOrder(cap))
    }
}

impl fmt::Display for ProjTransform {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .m
            .iter()
            .map(|r| {
                let cells: Vec<String> = r.iter().map(CycloElem::to_expr).collect();
                cells.join(", ")
            })
            .collect();
        write!(f, "[{}]", rows.join("; "))
    }
}

impl fmt::Debug for ProjTransform {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ProjTransform{self}")
    }
}
