//! Exact smoothness test for plane curves.
//!
//! A curve is singular iff its three partial derivatives share a projective
//! zero. The affine chart `Z = 1` is handled by elimination: a resultant in
//! `y` bounds the possible `x`-coordinates by a squarefree `g(x)`, and a gcd
//! computation in `(K[x]/g)[y]` that splits `g` whenever a leading
//! coefficient turns out to be a zero divisor decides exactly whether a common
//! zero sits over some root of `g`. The line `Z = 0` reduces to a univariate
//! gcd, and the point `(1:0:0)` is checked directly.

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use super::{ProjPoint, TernaryForm};
use crate::cyclo::{CycloElem, Rational};
use crate::upoly::{interpolate, UPoly};

type KPoly = UPoly<CycloElem>;
/// Polynomial in `y` with coefficients in `K[x]`, low degree first.
type BiPoly = Vec<KPoly>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SmoothnessVerdict {
    pub smooth: bool,
    pub witness: Option<ProjPoint>,
    /// Singular, but no singular point was located over the candidate set.
    pub non_constructive: bool,
}

impl SmoothnessVerdict {
    fn smooth() -> Self {
        SmoothnessVerdict {
            smooth: true,
            witness: None,
            non_constructive: false,
        }
    }

    fn singular(witness: Option<ProjPoint>) -> Self {
        SmoothnessVerdict {
            smooth: false,
            non_constructive: witness.is_none(),
            witness,
        }
    }
}

pub fn is_smooth(f: &TernaryForm) -> SmoothnessVerdict {
    assert!(!f.is_zero(), "smoothness of the zero form");
    let partials: Vec<TernaryForm> = (0..3).map(|i| f.partial(i)).collect();
    let candidates = candidate_values(f.conductor());

    // chart Z = 1
    let affine: Vec<BiPoly> = partials
        .iter()
        .map(chart_z)
        .filter(|p| !p.is_empty())
        .collect();
    match affine_common_zeros(&affine) {
        Affine::Empty => {}
        Affine::Over(branches) => {
            let w = witness_over(&affine, &branches, &candidates);
            return SmoothnessVerdict::singular(w.map(|(x, y)| point([x, y, CycloElem::one()])));
        }
        Affine::Curve => {
            let w = grid_witness(&partials, &candidates);
            return SmoothnessVerdict::singular(w);
        }
    }

    // line Z = 0, chart Y = 1
    let line: Vec<KPoly> = partials
        .iter()
        .map(|p| {
            let mut c = vec![CycloElem::zero(); p.degree() as usize + 1];
            for (e, v) in p.terms() {
                if e[2] == 0 {
                    c[e[0] as usize] = v.clone();
                }
            }
            UPoly::new(c)
        })
        .collect();
    let g = line.iter().fold(KPoly::zero(), |acc, p| acc.gcd(p));
    if g.is_zero() || g.degree().unwrap_or(0) > 0 {
        let w = candidates
            .iter()
            .find(|x| g.is_zero() || g.eval(x).is_zero())
            .map(|x| point([x.clone(), CycloElem::one(), CycloElem::zero()]));
        return SmoothnessVerdict::singular(w);
    }

    // the point (1:0:0)
    let p1 = ProjPoint::basis(0);
    if partials.iter().all(|p| p.evaluate_at(&p1).is_zero()) {
        return SmoothnessVerdict::singular(Some(p1));
    }
    SmoothnessVerdict::smooth()
}

fn point(v: [CycloElem; 3]) -> ProjPoint {
    ProjPoint::new(v).expect("chart points are nonzero")
}

/// `0`, small rationals, then small rationals times roots of unity of order
/// dividing `lcm(n, 12)`.
fn candidate_values(n: u32) -> Vec<CycloElem> {
    let big = n.lcm(&12);
    let rats: Vec<Rational> = [(1, 1), (2, 1), (1, 2), (3, 1), (1, 3)]
        .iter()
        .map(|&(a, b)| Rational::new(a.into(), b.into()))
        .collect();
    let mut out = vec![CycloElem::zero()];
    for r in &rats {
        out.push(CycloElem::from_rational(r.clone()));
        out.push(CycloElem::from_rational(-r.clone()));
    }
    for r in &rats {
        for j in 1..big as i64 {
            if 2 * j == big as i64 {
                continue;
            }
            out.push(CycloElem::zeta(big, j).scale(r));
        }
    }
    out
}

fn chart_z(f: &TernaryForm) -> BiPoly {
    let d = f.degree() as usize;
    let mut raw: Vec<Vec<CycloElem>> = vec![vec![CycloElem::zero(); d + 1]; d + 1];
    for (e, c) in f.terms() {
        raw[e[1] as usize][e[0] as usize] = c.clone();
    }
    trim(raw.into_iter().map(UPoly::new).collect())
}

fn trim(mut p: BiPoly) -> BiPoly {
    while p.last().is_some_and(KPoly::is_zero) {
        p.pop();
    }
    p
}

fn total_degree(p: &BiPoly) -> usize {
    p.iter()
        .enumerate()
        .filter_map(|(j, c)| c.degree().map(|dx| j + dx))
        .max()
        .unwrap_or(0)
}

fn eval_x(p: &BiPoly, x: &CycloElem) -> KPoly {
    UPoly::new(p.iter().map(|c| c.eval(x)).collect())
}

fn combine(a: &BiPoly, b: &BiPoly, c: i64) -> BiPoly {
    let n = a.len().max(b.len());
    let cc = CycloElem::from_int(c);
    let zero = KPoly::zero();
    trim(
        (0..n)
            .map(|j| {
                let x = a.get(j).unwrap_or(&zero);
                let y = b.get(j).unwrap_or(&zero);
                x.add(&y.scale(&cc))
            })
            .collect(),
    )
}

enum Affine {
    Empty,
    /// Common zeros lie over the roots of these pairwise coprime squarefree
    /// polynomials, and over every root of each there is at least one.
    Over(Vec<KPoly>),
    /// The polynomials share a curve component.
    Curve,
}

fn affine_common_zeros(polys: &[BiPoly]) -> Affine {
    if polys.is_empty() {
        return Affine::Curve;
    }
    if polys.iter().any(|p| total_degree(p) == 0) {
        return Affine::Empty;
    }
    if polys.len() == 1 {
        return Affine::Curve;
    }
    let p = &polys[0];
    let rest = &polys[1..];
    let tries: Vec<BiPoly> = if rest.len() == 1 {
        vec![rest[0].clone()]
    } else {
        (0..=(total_degree(p) as i64 + 1))
            .map(|c| {
                rest[1..]
                    .iter()
                    .fold(rest[0].clone(), |acc, r| combine(&acc, r, c))
            })
            .collect()
    };
    let mut elim = None;
    for q in &tries {
        let r = if p.len() == 1 && q.len() == 1 {
            p[0].gcd(&q[0])
        } else {
            resultant_y(p, q)
        };
        if !r.is_zero() {
            elim = Some(r);
            break;
        }
    }
    let Some(r) = elim else {
        return Affine::Curve;
    };
    let g = r.squarefree();
    if g.degree().unwrap_or(0) == 0 {
        return Affine::Empty;
    }
    let branches = common_root_branches(&g, polys);
    if branches.is_empty() {
        Affine::Empty
    } else {
        Affine::Over(branches)
    }
}

/// `Res_y(p, q)` as a polynomial in `x`, by evaluation and interpolation.
fn resultant_y(p: &BiPoly, q: &BiPoly) -> KPoly {
    let bound = total_degree(p) * total_degree(q);
    let xs: Vec<CycloElem> = (0..=bound as i64).map(CycloElem::from_int).collect();
    let ys: Vec<CycloElem> = xs
        .iter()
        .map(|x| {
            let pa: Vec<CycloElem> = p.iter().map(|c| c.eval(x)).collect();
            let qa: Vec<CycloElem> = q.iter().map(|c| c.eval(x)).collect();
            sylvester_det(&pa, &qa)
        })
        .collect();
    interpolate(&xs, &ys)
}

/// Resultant with formal degrees `a.len()-1` and `b.len()-1`.
fn sylvester_det(a: &[CycloElem], b: &[CycloElem]) -> CycloElem {
    let m = a.len() - 1;
    let n = b.len() - 1;
    let size = m + n;
    if size == 0 {
        return CycloElem::one();
    }
    let mut rows = vec![vec![CycloElem::zero(); size]; size];
    for i in 0..n {
        for (k, c) in a.iter().rev().enumerate() {
            rows[i][i + k] = c.clone();
        }
    }
    for i in 0..m {
        for (k, c) in b.iter().rev().enumerate() {
            rows[n + i][i + k] = c.clone();
        }
    }
    dense_det(rows)
}

fn dense_det(mut rows: Vec<Vec<CycloElem>>) -> CycloElem {
    let n = rows.len();
    let mut det = CycloElem::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !rows[r][c].is_zero()) else {
            return CycloElem::zero();
        };
        if p != c {
            rows.swap(p, c);
            det = -det;
        }
        let pivot = rows[c][c].clone();
        det = &det * &pivot;
        let inv = pivot.inverse().expect("nonzero pivot");
        for r in c + 1..n {
            if rows[r][c].is_zero() {
                continue;
            }
            let f = &rows[r][c] * &inv;
            for k in c..n {
                if !rows[c][k].is_zero() {
                    let t = &rows[c][k] * &f;
                    rows[r][k] = &rows[r][k] - &t;
                }
            }
        }
    }
    det
}

/// Arithmetic in `K[x]/(g)`.
struct Quotient<'a> {
    g: &'a KPoly,
}

impl Quotient<'_> {
    fn reduce(&self, a: &KPoly) -> KPoly {
        a.rem(self.g)
    }

    fn reduce_bi(&self, p: &BiPoly) -> BiPoly {
        trim(p.iter().map(|c| self.reduce(c)).collect())
    }

    fn mul(&self, a: &KPoly, b: &KPoly) -> KPoly {
        self.reduce(&a.mul(b))
    }

    /// Inverse of `a`, or the nontrivial factor `gcd(a, g)` when `a` is a
    /// zero divisor.
    fn inverse(&self, a: &KPoly) -> std::result::Result<KPoly, KPoly> {
        let (h, s, _) = a.ext_gcd(self.g);
        if h.degree() == Some(0) {
            Ok(self.reduce(&s))
        } else {
            Err(h)
        }
    }

    fn rem_bi(&self, a: &BiPoly, b: &BiPoly, lc_inv: &KPoly) -> BiPoly {
        let mut r = a.clone();
        let db = b.len() - 1;
        while r.len() > db {
            let top = r.len() - 1;
            let f = self.mul(&r[top], lc_inv);
            for (k, bk) in b.iter().enumerate() {
                let t = self.mul(&f, bk);
                r[top - db + k] = self.reduce(&r[top - db + k].sub(&t));
            }
            r = trim(r);
        }
        r
    }
}

/// Splits `g` so that on each factor the gcd of `polys` in `(K[x]/g_i)[y]`
/// has a unit leading coefficient (or is zero); returns the factors over
/// whose roots a common zero exists.
fn common_root_branches(g: &KPoly, polys: &[BiPoly]) -> Vec<KPoly> {
    let mut state: Vec<(KPoly, BiPoly)> = vec![(g.clone(), Quotient { g }.reduce_bi(&polys[0]))];
    for p in &polys[1..] {
        let mut next = Vec::new();
        for (gi, acc) in state {
            let q = Quotient { g: &gi }.reduce_bi(p);
            next.extend(gcd_split(gi.clone(), acc, q));
        }
        state = next;
    }
    let mut out = Vec::new();
    for (gi, acc) in state {
        for (gj, a) in unit_lc_split(gi, acc) {
            if a.len() != 1 {
                // zero (everything vanishes) or positive degree in y
                out.push(gj);
            }
        }
    }
    out
}

fn gcd_split(g: KPoly, a: BiPoly, b: BiPoly) -> Vec<(KPoly, BiPoly)> {
    let mut work = vec![(g, a, b)];
    let mut done = Vec::new();
    while let Some((g, a, b)) = work.pop() {
        let q = Quotient { g: &g };
        let a = q.reduce_bi(&a);
        let b = q.reduce_bi(&b);
        if b.is_empty() {
            done.push((g, a));
            continue;
        }
        let lc = b.last().expect("nonzero");
        match q.inverse(lc) {
            Ok(inv) => {
                let r = q.rem_bi(&a, &b, &inv);
                work.push((g, b, r));
            }
            Err(h) => {
                let (cof, _) = g.divrem(&h);
                work.push((cof, a.clone(), b.clone()));
                work.push((h, a, b));
            }
        }
    }
    done
}

fn unit_lc_split(g: KPoly, a: BiPoly) -> Vec<(KPoly, BiPoly)> {
    let mut work = vec![(g, a)];
    let mut done = Vec::new();
    while let Some((g, a)) = work.pop() {
        let q = Quotient { g: &g };
        let a = q.reduce_bi(&a);
        let Some(lc) = a.last() else {
            done.push((g, a));
            continue;
        };
        match q.inverse(lc) {
            Ok(_) => done.push((g, a)),
            Err(h) => {
                let (cof, _) = g.divrem(&h);
                work.push((cof, a.clone()));
                work.push((h, a));
            }
        }
    }
    done
}

fn witness_over(
    polys: &[BiPoly],
    branches: &[KPoly],
    candidates: &[CycloElem],
) -> Option<(CycloElem, CycloElem)> {
    for x in candidates {
        if !branches.iter().any(|b| b.eval(x).is_zero()) {
            continue;
        }
        let g = polys
            .iter()
            .fold(KPoly::zero(), |acc, p| acc.gcd(&eval_x(p, x)));
        if let Some(y) = candidates.iter().find(|y| g.is_zero() || g.eval(y).is_zero()) {
            return Some((x.clone(), y.clone()));
        }
    }
    None
}

fn grid_witness(partials: &[TernaryForm], candidates: &[CycloElem]) -> Option<ProjPoint> {
    for x in candidates {
        for y in candidates {
            let v = [x.clone(), y.clone(), CycloElem::one()];
            if partials.iter().all(|p| p.evaluate(&v).is_zero()) {
                return Some(point(v));
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fermat(d: u32) -> TernaryForm {
        TernaryForm::from_int_terms(d, &[([d, 0, 0], 1), ([0, d, 0], 1), ([0, 0, d], 1)]).unwrap()
    }

    fn fprime(m: u32, lambda: i64) -> TernaryForm {
        let d = 3 * m;
        TernaryForm::from_int_terms(
            d,
            &[([d, 0, 0], 1), ([0, d, 0], 1), ([0, 0, d], 1), ([m, m, m], -3 * lambda)],
        )
        .unwrap()
    }

    fn fdoubleprime(m: u32, lambda: i64) -> TernaryForm {
        let d = 2 * m;
        TernaryForm::from_int_terms(
            d,
            &[
                ([d, 0, 0], 1),
                ([0, d, 0], 1),
                ([0, 0, d], 1),
                ([m, m, 0], lambda),
                ([0, m, m], lambda),
                ([m, 0, m], lambda),
            ],
        )
        .unwrap()
    }

    #[test]
    fn fermat_curves_are_smooth() {
        for d in 4..=8 {
            assert!(is_smooth(&fermat(d)).smooth, "d = {d}");
        }
    }

    #[test]
    fn singular_members_have_witness_one_one_one() {
        let one = ProjPoint::from_ints([1, 1, 1]).unwrap();
        let v = is_smooth(&fprime(2, 1));
        assert!(!v.smooth);
        assert_eq!(v.witness, Some(one.clone()));
        let v = is_smooth(&fdoubleprime(4, -1));
        assert!(!v.smooth);
        assert_eq!(v.witness, Some(one));
    }

    #[test]
    fn smooth_parameter_values() {
        assert!(is_smooth(&fprime(2, 2)).smooth);
        assert!(is_smooth(&fdoubleprime(4, 1)).smooth);
        assert!(!is_smooth(&fdoubleprime(4, 2)).smooth);
        assert!(!is_smooth(&fdoubleprime(4, -2)).smooth);
    }

    #[test]
    fn singularities_at_infinity_and_reducible_curves() {
        // Y²Z² = X⁴ + … is singular at (0:0:1); X·Y·Z·(X+Y+Z) at the vertices
        let cusp = TernaryForm::from_int_terms(4, &[([0, 2, 2], 1), ([4, 0, 0], -1), ([0, 4, 0], 1)]).unwrap();
        let v = is_smooth(&cusp);
        assert!(!v.smooth);
        assert_eq!(v.witness, Some(ProjPoint::basis(2)));
        let at_inf = cusp.substitute(&crate::linalg::from_columns([
            &[0, 0, 1].map(CycloElem::from_int),
            &[0, 1, 0].map(CycloElem::from_int),
            &[1, 0, 0].map(CycloElem::from_int),
        ]));
        assert!(!is_smooth(&at_inf).smooth);
        let square = fermat(2).mul(&fermat(2));
        let v = is_smooth(&square);
        assert!(!v.smooth);
        assert!(v.witness.is_some());
    }

    #[test]
    fn sylvester_matches_known_resultant() {
        // Res(x² - 1, x - 2) = (2)² - 1 = 3
        let a = [-1, 0, 1].map(CycloElem::from_int);
        let b = [-2, 1].map(CycloElem::from_int);
        assert_eq!(sylvester_det(&a, &b), CycloElem::from_int(3));
    }
}
