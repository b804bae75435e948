use num_integer::Integer;
use serde::{Deserialize, Serialize};

use super::ProjTransform;
use crate::cyclo::{cube_root, CycloElem};
use crate::error::{Error, Result};
use crate::linalg::{self, Vec3};
use crate::polyring::{ProjLine, ProjPoint};

/// Eigen-decomposition of a finite-order projective transformation.
#[derive(Clone, Debug)]
pub struct EigenStructure {
    pub is_identity: bool,
    /// Eigenvalues of one matrix representative, with multiplicities.
    pub eigenvalues: Vec<(CycloElem, usize)>,
    /// Bases of the eigenspaces, aligned with `eigenvalues`.
    pub eigenspaces: Vec<Vec<Vec3>>,
    /// Bases of the eigenspaces of the transpose (invariant lines), aligned
    /// with `eigenvalues`.
    pub dual_eigenspaces: Vec<Vec<Vec3>>,
    /// Isolated fixed points (one-dimensional eigenspaces).
    pub fixed_points: Vec<ProjPoint>,
    /// Isolated invariant lines.
    pub fixed_lines: Vec<ProjLine>,
    pub pointwise_fixed_line: Option<ProjLine>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyData {
    pub is_homology: bool,
    pub center: Option<ProjPoint>,
    pub axis: Option<ProjLine>,
}

/// Eigenvalues of a finite-order matrix. A diagonal matrix reads them off;
/// otherwise the matrix is divided by a cube root of its determinant, after
/// which its linear order divides `3k` (`k` the projective order) and the
/// eigenvalues are found among the `3k`-th roots of unity.
fn eigenvalues(m: &ProjTransform, cap: usize) -> Result<Vec<(CycloElem, usize)>> {
    let a = m.matrix();
    if m.is_diagonal() {
        let mut out: Vec<(CycloElem, usize)> = Vec::new();
        for i in 0..3 {
            match out.iter_mut().find(|(v, _)| *v == a[i][i]) {
                Some((_, mult)) => *mult += 1,
                None => out.push((a[i][i].clone(), 1)),
            }
        }
        return Ok(out);
    }
    let k = m.element_order(cap)?;
    let det = linalg::det(a);
    let s = cube_root(&det).ok_or_else(|| {
        Error::EigenSearch(format!("no cube root of the determinant {} found", det.to_expr()))
    })?;
    let s_inv = s.inverse()?;
    let scaled = linalg::scale(a, &s_inv);
    let e1 = linalg::trace(&scaled);
    let e2 = linalg::principal_minor_sum(&scaled);
    let e3 = linalg::det(&scaled);
    let order = (3 * k) as u32;
    let big = linalg::mat_conductor(&scaled).lcm(&order);
    let chi = |x: &CycloElem| {
        let x2 = x * x;
        &(&(&(&x2 * x) - &(&e1 * &x2)) + &(&e2 * x)) - &e3
    };
    let dchi = |x: &CycloElem| {
        let x2 = x * x;
        &(&(&x2 * &CycloElem::from_int(3)) - &(&(&e1 * x) * &CycloElem::from_int(2))) + &e2
    };
    let mut out = Vec::new();
    for j in 0..order as i64 {
        let eps = CycloElem::zeta(big, j * (big / order) as i64);
        if chi(&eps).is_zero() {
            let mult = if dchi(&eps).is_zero() { 2 } else { 1 };
            out.push((&eps * &s, mult));
        }
    }
    let total: usize = out.iter().map(|(_, m)| m).sum();
    if total != 3 {
        return Err(Error::EigenSearch(format!(
            "found eigenvalues of total multiplicity {total} for {m}"
        )));
    }
    Ok(out)
}

pub fn eigen_structure(m: &ProjTransform, cap: usize) -> Result<EigenStructure> {
    if m.is_identity() {
        let basis: Vec<Vec3> = (0..3).map(|i| ProjPoint::basis(i).coords().clone()).collect();
        return Ok(EigenStructure {
            is_identity: true,
            eigenvalues: vec![(CycloElem::one(), 3)],
            eigenspaces: vec![basis.clone()],
            dual_eigenspaces: vec![basis],
            fixed_points: Vec::new(),
            fixed_lines: Vec::new(),
            pointwise_fixed_line: None,
        });
    }
    let values = eigenvalues(m, cap)?;
    let a = m.matrix();
    let mut spaces = Vec::new();
    for (lambda, mult) in &values {
        let shifted = linalg::sub(a, &linalg::scale(&linalg::identity(), lambda));
        let k = linalg::kernel3(&shifted);
        if k.len() != *mult {
            return Err(Error::EigenSearch(format!(
                "eigenspace of dimension {} for an eigenvalue of multiplicity {mult}",
                k.len()
            )));
        }
        spaces.push(k);
    }
    // the transpose's λ-eigenspace annihilates the other eigenspaces
    let dual: Vec<Vec<Vec3>> = (0..spaces.len())
        .map(|i| {
            let others: Vec<Vec3> = spaces
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .flat_map(|(_, s)| s.iter().cloned())
                .collect();
            linalg::annihilator(&others)
        })
        .collect();
    let fixed_points = spaces
        .iter()
        .filter(|s| s.len() == 1)
        .map(|s| ProjPoint::new(s[0].clone()).expect("eigenvector"))
        .collect();
    let fixed_lines = dual
        .iter()
        .filter(|s| s.len() == 1)
        .map(|s| ProjLine::new(s[0].clone()).expect("eigenvector"))
        .collect();
    let pointwise_fixed_line = spaces.iter().find(|s| s.len() == 2).map(|s| {
        let ann = linalg::annihilator(s);
        ProjLine::new(ann[0].clone()).expect("plane has a normal")
    });
    Ok(EigenStructure {
        is_identity: false,
        eigenvalues: values,
        eigenspaces: spaces,
        dual_eigenspaces: dual,
        fixed_points,
        fixed_lines,
        pointwise_fixed_line,
    })
}

impl EigenStructure {
    pub fn homology(&self) -> HomologyData {
        match &self.pointwise_fixed_line {
            Some(axis) => HomologyData {
                is_homology: true,
                center: self.fixed_points.first().cloned(),
                axis: Some(axis.clone()),
            },
            None => HomologyData {
                is_homology: false,
                center: None,
                axis: None,
            },
        }
    }
}

pub fn homology_data(m: &ProjTransform, cap: usize) -> Result<HomologyData> {
    if m.is_identity() {
        return Err(Error::IdentityTransform);
    }
    Ok(eigen_structure(m, cap)?.homology())
}

#[cfg(test)]
mod tests {
    use super::*;

    const CAP: usize = 1000;

    fn w(k: i64) -> CycloElem {
        CycloElem::zeta(3, k)
    }

    fn h3() -> ProjTransform {
        let one = CycloElem::one;
        ProjTransform::new([[one(), one(), one()], [one(), w(1), w(2)], [one(), w(2), w(1)]]).unwrap()
    }

    #[test]
    fn cyclic_permutation_fixed_points() {
        let e = eigen_structure(&ProjTransform::permutation([1, 2, 0]), CAP).unwrap();
        let mut expected = vec![
            ProjPoint::new([CycloElem::one(), CycloElem::one(), CycloElem::one()]).unwrap(),
            ProjPoint::new([CycloElem::one(), w(1), w(2)]).unwrap(),
            ProjPoint::new([CycloElem::one(), w(2), w(1)]).unwrap(),
        ];
        assert_eq!(e.fixed_points.len(), 3);
        for p in &e.fixed_points {
            let i = expected.iter().position(|q| q == p).expect("expected fixed point");
            expected.remove(i);
        }
        assert!(!e.homology().is_homology);
        assert!(!homology_data(&ProjTransform::permutation([1, 2, 0]), CAP).unwrap().is_homology);
    }

    #[test]
    fn homology_examples() {
        let z5 = CycloElem::zeta(5, 1);
        let e = eigen_structure(&ProjTransform::diagonal(CycloElem::one(), CycloElem::one(), z5).unwrap(), CAP).unwrap();
        assert_eq!(e.fixed_points, vec![ProjPoint::basis(2)]);
        assert_eq!(e.pointwise_fixed_line, Some(ProjLine::coordinate(2)));
        let h = homology_data(
            &ProjTransform::diagonal(CycloElem::one(), CycloElem::one(), CycloElem::zeta(4, 1)).unwrap(),
            CAP,
        )
        .unwrap();
        assert!(h.is_homology);
        assert_eq!(h.center, Some(ProjPoint::basis(2)));
        assert_eq!(h.axis, Some(ProjLine::coordinate(2)));
        let h4 = ProjTransform::diagonal(CycloElem::one(), w(1), w(1)).unwrap();
        let h = homology_data(&h4, CAP).unwrap();
        assert_eq!(h.center, Some(ProjPoint::basis(0)));
        assert_eq!(h.axis, Some(ProjLine::coordinate(0)));
        assert_eq!(homology_data(&ProjTransform::identity(), CAP), Err(Error::IdentityTransform));
    }

    #[test]
    fn identity_is_flagged() {
        let e = eigen_structure(&ProjTransform::identity(), CAP).unwrap();
        assert!(e.is_identity);
        assert!(e.fixed_points.is_empty());
    }

    #[test]
    fn non_monomial_hessian_element() {
        // eigenvalues √3, -√3, i√3; its square is a homology
        let e = eigen_structure(&h3(), CAP).unwrap();
        assert_eq!(e.fixed_points.len(), 3);
        assert!(e.pointwise_fixed_line.is_none());
        let sq = h3().compose(&h3());
        let h = homology_data(&sq, CAP).unwrap();
        assert!(h.is_homology);
        for p in &e.fixed_points {
            assert_eq!(&h3().apply(p), p);
        }
    }

    #[test]
    fn infinite_order_is_an_error() {
        let shear = ProjTransform::from_int_rows([[1, 1, 0], [0, 1, 0], [0, 0, 1]]).unwrap();
        assert_eq!(eigen_structure(&shear, 30).unwrap_err(), Error::InfiniteOrder(30));
    }
}
