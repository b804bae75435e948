//! Groups of block-diagonal classes `[[A, 0], [0, c]]` (a 2×2 block and a
//! scalar) and their image in `PGL(2)`.

use std::collections::{HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use super::fingerprint::{identify, GroupLabel};
use super::{closure, MatrixGroup, ProjTransform};
use crate::cyclo::{CycloElem, Rational};
use crate::error::{Error, Result};
use crate::linalg;
use crate::polyring::{ProjLine, ProjPoint};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PbdSplit {
    pub member: bool,
    /// Order of the kernel `N` of the map to `PGL(2)`: elements whose block
    /// is scalar.
    pub kernel_order: usize,
    pub image_order: usize,
    pub image_label: Option<GroupLabel>,
    /// `m` when the image is `Z_m` or `D_2m`.
    pub m: Option<usize>,
}

/// A change of basis `T = [v1 v2 p]` with `v1, v2` spanning `line`, so that
/// conjugating by `T` moves `p` to `(0:0:1)` and `line` to `Z = 0`.
pub fn standard_position(p: &ProjPoint, line: &ProjLine) -> Result<ProjTransform> {
    if line.contains(p) {
        return Err(Error::Domain("the point lies on the line".into()));
    }
    let span = linalg::annihilator(&[line.coeffs().clone()]);
    ProjTransform::new(linalg::from_columns([&span[0], &span[1], p.coords()]))
}

/// The group `{T⁻¹ g T}`.
pub fn conjugate_group(g: &MatrixGroup, t: &ProjTransform, cap: usize) -> Result<MatrixGroup> {
    let gens: Vec<ProjTransform> = g.generators().iter().map(|m| m.conjugate_by(t)).collect();
    closure(&gens, cap)
}

fn is_block(m: &ProjTransform) -> bool {
    let a = m.matrix();
    [a[0][2].is_zero(), a[1][2].is_zero(), a[2][0].is_zero(), a[2][1].is_zero()]
        .iter()
        .all(|&b| b)
}

fn block_is_scalar(m: &ProjTransform) -> bool {
    let a = m.matrix();
    a[0][1].is_zero() && a[1][0].is_zero() && a[0][0] == a[1][1]
}

/// Splits a group already in standard position (fixing `(0:0:1)` and
/// `Z = 0`).
pub fn pbd_split(g: &MatrixGroup, cap: usize) -> Result<PbdSplit> {
    if !g.generators().iter().all(is_block) {
        return Ok(PbdSplit {
            member: false,
            kernel_order: 0,
            image_order: 0,
            image_label: None,
            m: None,
        });
    }
    let kernel_order = g.elements().iter().filter(|m| block_is_scalar(m)).count();
    let blocks: Vec<Block> = g.generators().iter().map(|m| Block::from_matrix(m, g.conductor())).collect();
    let image = BlockGroup::close(&blocks, g.conductor(), cap)?;
    let label = identify(image.elems.len(), image.is_abelian(&blocks), &image.order_multiset());
    Ok(PbdSplit {
        member: true,
        kernel_order,
        image_order: image.elems.len(),
        m: label.cyclic_or_dihedral_m(),
        image_label: Some(label),
    })
}

/// A 2×2 matrix modulo scalars, first nonzero entry 1.
#[derive(Clone)]
struct Block {
    a: [[CycloElem; 2]; 2],
}

impl Block {
    fn from_matrix(m: &ProjTransform, n: u32) -> Self {
        let a = m.matrix();
        let raw = [[a[0][0].clone(), a[0][1].clone()], [a[1][0].clone(), a[1][1].clone()]];
        Self::normalized(raw, n)
    }

    fn normalized(a: [[CycloElem; 2]; 2], n: u32) -> Self {
        let lead = a.iter().flatten().find(|c| !c.is_zero()).expect("invertible block").clone();
        let inv = lead.inverse().expect("nonzero");
        let a = a.map(|r| r.map(|c| (&c * &inv).embed_to(n).expect("group conductor")));
        Block { a }
    }

    fn mul(&self, o: &Self, n: u32) -> Self {
        let a = &self.a;
        let b = &o.a;
        let raw = std::array::from_fn(|i| {
            std::array::from_fn(|j| &(&a[i][0] * &b[0][j]) + &(&a[i][1] * &b[1][j]))
        });
        Self::normalized(raw, n)
    }

    fn key(&self) -> Vec<Rational> {
        self.a.iter().flatten().flat_map(|c| c.coeffs().to_vec()).collect()
    }
}

struct BlockGroup {
    n: u32,
    elems: Vec<Block>,
    index: HashMap<Vec<Rational>, usize>,
}

impl BlockGroup {
    fn close(gens: &[Block], n: u32, cap: usize) -> Result<Self> {
        let one = CycloElem::one;
        let zero = CycloElem::zero;
        let id = Block::normalized([[one(), zero()], [zero(), one()]], n);
        let mut g = BlockGroup {
            n,
            index: HashMap::from([(id.key(), 0)]),
            elems: vec![id],
        };
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for s in gens {
                let next = g.elems[i].mul(s, n);
                let k = next.key();
                if g.index.contains_key(&k) {
                    continue;
                }
                if g.elems.len() >= cap {
                    return Err(Error::CapExceeded {
                        cap,
                        partial: g.elems.len(),
                    });
                }
                g.index.insert(k, g.elems.len());
                queue.push_back(g.elems.len());
                g.elems.push(next);
            }
        }
        Ok(g)
    }

    fn order_multiset(&self) -> Vec<(usize, usize)> {
        let orders: Vec<usize> = self
            .elems
            .iter()
            .map(|e| {
                let mut k = 1;
                let mut cur = e.clone();
                while self.index[&cur.key()] != 0 {
                    cur = cur.mul(e, self.n);
                    k += 1;
                }
                k
            })
            .collect();
        super::closure::multiset(&orders)
    }

    fn is_abelian(&self, gens: &[Block]) -> bool {
        gens.iter().enumerate().all(|(i, a)| {
            gens[i + 1..]
                .iter()
                .all(|b| a.mul(b, self.n).key() == b.mul(a, self.n).key())
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::projgroup::DEFAULT_CAP;

    #[test]
    fn dcurve_group_splits() {
        // σ = [ξX, ξ^{-(d-1)}Y, Z], τ = [Y, X, Z], η = [X, Y, ζ_d Z] at d = 8
        let d = 8i64;
        let xi = CycloElem::zeta(48, 1);
        let one = CycloElem::one;
        let gens = [
            ProjTransform::diagonal(xi.clone(), xi.pow(-(d - 1)).unwrap(), one()).unwrap(),
            ProjTransform::permutation([1, 0, 2]),
            ProjTransform::diagonal(one(), one(), CycloElem::zeta(8, 1)).unwrap(),
        ];
        let g = closure(&gens, DEFAULT_CAP).unwrap();
        assert_eq!(g.order(), 96);
        let s = pbd_split(&g, DEFAULT_CAP).unwrap();
        assert!(s.member);
        assert_eq!(s.kernel_order, 8);
        assert_eq!(s.image_label, Some(GroupLabel::Dihedral { order: 12 }));
        assert_eq!(s.m, Some(6));
        assert_eq!(s.kernel_order * s.image_order, g.order());
    }

    #[test]
    fn non_block_group_is_not_member() {
        let g = closure(&[ProjTransform::permutation([1, 2, 0])], DEFAULT_CAP).unwrap();
        assert!(!pbd_split(&g, DEFAULT_CAP).unwrap().member);
    }

    #[test]
    fn standard_position_moves_point_and_line() {
        let p = ProjPoint::from_ints([1, 1, 1]).unwrap();
        let l = ProjLine::from_ints([1, 1, 0]).unwrap();
        let t = standard_position(&p, &l).unwrap();
        assert_eq!(t.apply(&ProjPoint::basis(2)), p);
        assert!(l.contains(&t.apply(&ProjPoint::basis(0))));
        assert!(l.contains(&t.apply(&ProjPoint::basis(1))));
        assert!(standard_position(&ProjPoint::basis(2), &ProjLine::coordinate(0)).is_err());
    }
}
