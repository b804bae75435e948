use std::fmt;

use serde::{Deserialize, Serialize};

use super::TernaryForm;
use crate::cyclo::CycloElem;
use crate::error::{Error, Result};
use crate::linalg::{self, Vec3};
use crate::upoly::UPoly;

fn normalize(v: Vec3) -> Option<Vec3> {
    let first = v.iter().find(|c| !c.is_zero())?.clone();
    if first.is_one() {
        return Some(v);
    }
    let inv = first.inverse().ok()?;
    Some(v.map(|c| &c * &inv))
}

fn fmt_coords(v: &Vec3, sep: &str) -> String {
    let parts: Vec<String> = v.iter().map(CycloElem::to_expr).collect();
    parts.join(sep)
}

/// A point of the projective plane, scaled so its first nonzero coordinate is 1.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProjPoint {
    coords: Vec3,
}

impl ProjPoint {
    pub fn new(v: Vec3) -> Result<Self> {
        normalize(v)
            .map(|coords| ProjPoint { coords })
            .ok_or_else(|| Error::Domain("the zero vector is not a projective point".into()))
    }

    pub fn from_ints(v: [i64; 3]) -> Result<Self> {
        Self::new(v.map(CycloElem::from_int))
    }

    /// The coordinate point with a 1 in position `i`.
    pub fn basis(i: usize) -> Self {
        let mut v = linalg::zero_vec();
        v[i] = CycloElem::one();
        ProjPoint { coords: v }
    }

    pub fn coords(&self) -> &Vec3 {
        &self.coords
    }

    pub fn embed_to(&self, n: u32) -> Result<Self> {
        let mut v = linalg::zero_vec();
        for (dst, c) in v.iter_mut().zip(&self.coords) {
            *dst = c.embed_to(n)?;
        }
        Ok(ProjPoint { coords: v })
    }

    /// Coefficients in a fixed conductor, usable as a hash key.
    pub fn key(&self, n: u32) -> Vec<crate::cyclo::Rational> {
        let mut out = Vec::new();
        for c in &self.coords {
            c.embed_to(n).expect("conductor divides key conductor").extend_key(&mut out);
        }
        out
    }

    pub fn conductor(&self) -> u32 {
        use num_integer::Integer;
        self.coords.iter().fold(1, |a, c| a.lcm(&c.conductor()))
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", fmt_coords(&self.coords, " : "))
    }
}

impl fmt::Debug for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "P{self}")
    }
}

/// The line `aX + bY + cZ = 0`, scaled like [`ProjPoint`].
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProjLine {
    coeffs: Vec3,
}

impl ProjLine {
    pub fn new(v: Vec3) -> Result<Self> {
        normalize(v)
            .map(|coeffs| ProjLine { coeffs })
            .ok_or_else(|| Error::Domain("the zero vector is not a line".into()))
    }

    pub fn from_ints(v: [i64; 3]) -> Result<Self> {
        Self::new(v.map(CycloElem::from_int))
    }

    /// The coordinate line `X_i = 0`.
    pub fn coordinate(i: usize) -> Self {
        let mut v = linalg::zero_vec();
        v[i] = CycloElem::one();
        ProjLine { coeffs: v }
    }

    pub fn coeffs(&self) -> &Vec3 {
        &self.coeffs
    }

    pub fn contains(&self, p: &ProjPoint) -> bool {
        linalg::dot(&self.coeffs, p.coords()).is_zero()
    }

    pub fn through(p: &ProjPoint, q: &ProjPoint) -> Result<Self> {
        Self::new(linalg::cross(p.coords(), q.coords()))
            .map_err(|_| Error::Domain("a line needs two distinct points".into()))
    }

    pub fn meet(&self, o: &ProjLine) -> Result<ProjPoint> {
        ProjPoint::new(linalg::cross(&self.coeffs, &o.coeffs))
            .map_err(|_| Error::Domain("identical lines have no single meeting point".into()))
    }

    /// The two points spanning the line used by [`TernaryForm::restrict_to_line`].
    /// With pivot `p` the first nonzero coefficient, they are `e_q - c_q·e_p`
    /// for the other two indices `q` in increasing order.
    pub fn parametrization(&self) -> (usize, [usize; 2], [Vec3; 2]) {
        let p = self
            .coeffs
            .iter()
            .position(|c| !c.is_zero())
            .expect("line has a nonzero coefficient");
        let others: Vec<usize> = (0..3).filter(|&q| q != p).collect();
        let basis = |q: usize| {
            let mut v = linalg::zero_vec();
            v[q] = CycloElem::one();
            v[p] = -&self.coeffs[q];
            v
        };
        (p, [others[0], others[1]], [basis(others[0]), basis(others[1])])
    }

    /// Points of the line with respect to the parametrization: `(s, t)`.
    pub fn parameter_of(&self, pt: &ProjPoint) -> Result<(CycloElem, CycloElem)> {
        if !self.contains(pt) {
            return Err(Error::PointNotOnLine);
        }
        let (_, [q1, q2], _) = self.parametrization();
        Ok((pt.coords()[q1].clone(), pt.coords()[q2].clone()))
    }
}

impl fmt::Display for ProjLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (c, v) in self.coeffs.iter().zip(["X", "Y", "Z"]) {
            if c.is_zero() {
                continue;
            }
            let e = c.to_expr();
            parts.push(if e == "1" { v.to_string() } else { format!("({e})*{v}") });
        }
        write!(f, "{} = 0", parts.join(" + "))
    }
}

impl fmt::Debug for ProjLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "L[{}]", fmt_coords(&self.coeffs, ", "))
    }
}

/// `Σ c_k s^{d-k} t^k`; `coeffs[k]` is the coefficient of `s^{d-k} t^k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinaryForm {
    pub degree: u32,
    pub coeffs: Vec<CycloElem>,
}

impl BinaryForm {
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(CycloElem::is_zero)
    }

    /// The dehomogenization `f(1, u)`.
    pub fn affine(&self) -> UPoly<CycloElem> {
        UPoly::new(self.coeffs.clone())
    }

    pub fn from_pairs(degree: u32, pairs: &[(u32, i64)]) -> Self {
        let mut coeffs = vec![CycloElem::zero(); degree as usize + 1];
        for &(k, c) in pairs {
            coeffs[k as usize] = CycloElem::from_int(c);
        }
        BinaryForm { degree, coeffs }
    }
}

pub(super) fn restrict(f: &TernaryForm, line: &ProjLine) -> BinaryForm {
    let (_, _, [b1, b2]) = line.parametrization();
    let m = linalg::from_columns([&b1, &b2, &linalg::zero_vec()]);
    let g = f.substitute(&m);
    let d = f.degree();
    let mut coeffs = vec![CycloElem::zero(); d as usize + 1];
    for (e, c) in g.terms() {
        debug_assert_eq!(e[2], 0);
        coeffs[e[1] as usize] = c.clone();
    }
    BinaryForm { degree: d, coeffs }
}

pub(super) fn intersection_multiplicity(
    f: &TernaryForm,
    line: &ProjLine,
    p: &ProjPoint,
) -> Result<usize> {
    let (s, t) = line.parameter_of(p)?;
    let b = restrict(f, line);
    if b.is_zero() {
        return Err(Error::LineInCurve);
    }
    let affine = b.affine();
    if s.is_zero() {
        let top = affine.degree().expect("nonzero restriction");
        return Ok(b.degree as usize - top);
    }
    let u0 = t.checked_div(&s)?;
    Ok(affine.root_multiplicity(&u0))
}

pub(super) fn tangent_line(f: &TernaryForm, p: &ProjPoint) -> Result<ProjLine> {
    if !f.lies_on(p) {
        return Err(Error::NotOnCurve);
    }
    let g = f.gradient(p.coords());
    ProjLine::new(g).map_err(|_| Error::SingularPoint)
}

pub(super) fn line_meet_count(f: &TernaryForm, line: &ProjLine) -> Result<usize> {
    let b = restrict(f, line);
    if b.is_zero() {
        return Err(Error::LineInCurve);
    }
    let affine = b.affine();
    let top = affine.degree().expect("nonzero restriction");
    let finite = affine.squarefree().degree().unwrap_or(0);
    Ok(finite + usize::from(top < b.degree as usize))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fermat(d: u32) -> TernaryForm {
        TernaryForm::from_int_terms(d, &[([d, 0, 0], 1), ([0, d, 0], 1), ([0, 0, d], 1)]).unwrap()
    }

    fn klein5() -> TernaryForm {
        TernaryForm::from_int_terms(5, &[([1, 4, 0], 1), ([0, 1, 4], 1), ([4, 0, 1], 1)]).unwrap()
    }

    fn f54() -> TernaryForm {
        TernaryForm::from_int_terms(5, &[([0, 1, 4], 1), ([5, 0, 0], 1), ([0, 5, 0], 1)]).unwrap()
    }

    #[test]
    fn restriction_examples() {
        assert_eq!(
            fermat(4).restrict_to_line(&ProjLine::coordinate(2)),
            BinaryForm::from_pairs(4, &[(0, 1), (4, 1)])
        );
        // (s : 0 : t) gives t·s⁴
        assert_eq!(
            klein5().restrict_to_line(&ProjLine::coordinate(1)),
            BinaryForm::from_pairs(5, &[(1, 1)])
        );
        let zf = TernaryForm::from_int_terms(4, &[([3, 0, 1], 1), ([0, 1, 3], 2)]).unwrap();
        let r = zf.restrict_to_line(&ProjLine::coordinate(2));
        assert!(r.is_zero());
        assert_eq!(zf.line_meet_count(&ProjLine::coordinate(2)), Err(Error::LineInCurve));
    }

    #[test]
    fn multiplicity_examples() {
        let y0 = ProjLine::coordinate(1);
        assert_eq!(klein5().intersection_multiplicity(&y0, &ProjPoint::basis(2)).unwrap(), 4);
        let z8 = CycloElem::zeta(8, 1);
        let p = ProjPoint::new([CycloElem::one(), z8.clone(), CycloElem::zero()]).unwrap();
        let tangent = fermat(4).tangent_line(&p).unwrap();
        let expected = ProjLine::new([CycloElem::one(), CycloElem::zeta(8, 3), CycloElem::zero()]).unwrap();
        assert_eq!(tangent, expected);
        assert_eq!(fermat(4).intersection_multiplicity(&tangent, &p).unwrap(), 4);
        let q = ProjPoint::new([CycloElem::one(), CycloElem::zero(), z8]).unwrap();
        assert_eq!(fermat(4).intersection_multiplicity(&y0, &q).unwrap(), 1);
        assert_eq!(
            fermat(4).intersection_multiplicity(&y0, &ProjPoint::basis(1)),
            Err(Error::PointNotOnLine)
        );
    }

    #[test]
    fn tangent_examples() {
        for d in 5..=8u32 {
            let k = TernaryForm::from_int_terms(d, &[([1, d - 1, 0], 1), ([0, 1, d - 1], 1), ([d - 1, 0, 1], 1)]).unwrap();
            assert_eq!(k.tangent_line(&ProjPoint::basis(2)).unwrap(), ProjLine::coordinate(1));
        }
        assert_eq!(f54().tangent_line(&ProjPoint::basis(2)).unwrap(), ProjLine::coordinate(1));
        assert_eq!(fermat(4).tangent_line(&ProjPoint::basis(2)), Err(Error::NotOnCurve));
    }

    #[test]
    fn meet_count_examples() {
        assert_eq!(fermat(4).line_meet_count(&ProjLine::coordinate(2)).unwrap(), 4);
        assert_eq!(klein5().line_meet_count(&ProjLine::coordinate(1)).unwrap(), 2);
        assert_eq!(f54().line_meet_count(&ProjLine::coordinate(2)).unwrap(), 5);
    }

    #[test]
    fn bezout_on_coordinate_lines() {
        // every intersection point of these lines with the curves is constructible
        let z8 = |k| CycloElem::zeta(8, k);
        let fermat_z = (0..4)
            .map(|j| ProjPoint::new([CycloElem::one(), z8(2 * j + 1), CycloElem::zero()]).unwrap());
        let total: usize = fermat_z
            .map(|p| fermat(4).intersection_multiplicity(&ProjLine::coordinate(2), &p).unwrap())
            .sum();
        assert_eq!(total, 4);
        let y0 = ProjLine::coordinate(1);
        let total = klein5().intersection_multiplicity(&y0, &ProjPoint::basis(0)).unwrap()
            + klein5().intersection_multiplicity(&y0, &ProjPoint::basis(2)).unwrap();
        assert_eq!(total, 5);
    }
}
