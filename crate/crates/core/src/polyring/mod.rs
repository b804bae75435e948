//! Homogeneous ternary forms over cyclotomic fields.

mod geometry;
mod smooth;

pub use geometry::{BinaryForm, ProjLine, ProjPoint};
pub use smooth::{is_smooth, SmoothnessVerdict};

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::cyclo::CycloElem;
use crate::error::{Error, Result};
use crate::linalg::{Mat3, Vec3};
use crate::projgroup::ProjTransform;

/// Exponents of `X`, `Y`, `Z`.
pub type Exponents = [u32; 3];

/// A homogeneous polynomial `Σ c·XⁱYʲZᵏ` of fixed degree. Zero coefficients
/// are never stored.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "FormRepr", try_from = "FormRepr")]
pub struct TernaryForm {
    degree: u32,
    terms: BTreeMap<Exponents, CycloElem>,
}

#[derive(Serialize, Deserialize)]
struct FormRepr {
    degree: u32,
    terms: Vec<(Exponents, CycloElem)>,
}

impl From<TernaryForm> for FormRepr {
    fn from(f: TernaryForm) -> Self {
        FormRepr {
            degree: f.degree,
            terms: f.terms.into_iter().collect(),
        }
    }
}

impl TryFrom<FormRepr> for TernaryForm {
    type Error = Error;

    fn try_from(r: FormRepr) -> Result<Self> {
        TernaryForm::from_terms(r.degree, r.terms)
    }
}

/// Genus of a smooth plane curve of degree `d`.
pub fn genus(d: u32) -> u64 {
    let d = d as u64;
    (d.saturating_sub(1)) * (d.saturating_sub(2)) / 2
}

impl TernaryForm {
    pub fn zero(degree: u32) -> Self {
        TernaryForm {
            degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_terms<I>(degree: u32, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Exponents, CycloElem)>,
    {
        let mut f = Self::zero(degree);
        for (e, c) in terms {
            f.add_term(e, c)?;
        }
        Ok(f)
    }

    /// Shorthand for forms with integer coefficients.
    pub fn from_int_terms(degree: u32, terms: &[(Exponents, i64)]) -> Result<Self> {
        Self::from_terms(degree, terms.iter().map(|&(e, c)| (e, CycloElem::from_int(c))))
    }

    pub fn add_term(&mut self, e: Exponents, c: CycloElem) -> Result<()> {
        if e.iter().sum::<u32>() != self.degree {
            return Err(Error::InvalidParameter(format!(
                "monomial {e:?} does not have degree {}",
                self.degree
            )));
        }
        if c.is_zero() {
            return Ok(());
        }
        let merged = match self.terms.remove(&e) {
            Some(old) => &old + &c,
            None => c,
        };
        if !merged.is_zero() {
            self.terms.insert(e, merged);
        }
        Ok(())
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &CycloElem)> {
        self.terms.iter()
    }

    pub fn coeff(&self, e: &Exponents) -> CycloElem {
        self.terms.get(e).cloned().unwrap_or_else(CycloElem::zero)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn conductor(&self) -> u32 {
        self.terms.values().fold(1, |acc, c| acc.lcm(&c.conductor()))
    }

    pub fn embed_to(&self, n: u32) -> Result<Self> {
        let mut terms = BTreeMap::new();
        for (e, c) in &self.terms {
            terms.insert(*e, c.embed_to(n)?);
        }
        Ok(TernaryForm {
            degree: self.degree,
            terms,
        })
    }

    pub fn scale(&self, c: &CycloElem) -> Self {
        if c.is_zero() {
            return Self::zero(self.degree);
        }
        TernaryForm {
            degree: self.degree,
            terms: self.terms.iter().map(|(e, v)| (*e, v * c)).collect(),
        }
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        if self.degree != o.degree && !self.is_zero() && !o.is_zero() {
            return Err(Error::InvalidParameter(format!(
                "cannot add forms of degrees {} and {}",
                self.degree, o.degree
            )));
        }
        let degree = if self.is_zero() { o.degree } else { self.degree };
        let mut out = TernaryForm {
            degree,
            terms: self.terms.clone(),
        };
        for (e, c) in &o.terms {
            out.add_term(*e, c.clone())?;
        }
        Ok(out)
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.add(&o.scale(&CycloElem::from_int(-1)))
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut acc: HashMap<Exponents, CycloElem> = HashMap::new();
        for (a, x) in &self.terms {
            for (b, y) in &o.terms {
                let e = [a[0] + b[0], a[1] + b[1], a[2] + b[2]];
                let p = x * y;
                acc.entry(e)
                    .and_modify(|v| *v = &*v + &p)
                    .or_insert(p);
            }
        }
        TernaryForm {
            degree: self.degree + o.degree,
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    /// Value at a representative vector.
    pub fn evaluate(&self, v: &Vec3) -> CycloElem {
        let d = self.degree as usize;
        let powers: Vec<Vec<CycloElem>> = v
            .iter()
            .map(|x| {
                let mut p = Vec::with_capacity(d + 1);
                p.push(CycloElem::one());
                for i in 0..d {
                    let next = &p[i] * x;
                    p.push(next);
                }
                p
            })
            .collect();
        let mut acc = CycloElem::zero();
        for (e, c) in &self.terms {
            let m = &(&powers[0][e[0] as usize] * &powers[1][e[1] as usize]) * &powers[2][e[2] as usize];
            if !m.is_zero() {
                acc = &acc + &(c * &m);
            }
        }
        acc
    }

    /// Value at the canonical representative of `p`.
    pub fn evaluate_at(&self, p: &ProjPoint) -> CycloElem {
        self.evaluate(p.coords())
    }

    pub fn lies_on(&self, p: &ProjPoint) -> bool {
        self.evaluate_at(p).is_zero()
    }

    /// Partial derivative with respect to variable `var` (0 = X, 1 = Y, 2 = Z).
    pub fn partial(&self, var: usize) -> Self {
        let mut out = Self::zero(self.degree.saturating_sub(1));
        for (e, c) in &self.terms {
            if e[var] == 0 {
                continue;
            }
            let mut ne = *e;
            ne[var] -= 1;
            out.terms
                .insert(ne, c * &CycloElem::from_int(e[var] as i64));
        }
        out
    }

    pub fn gradient(&self, v: &Vec3) -> Vec3 {
        std::array::from_fn(|i| self.partial(i).evaluate(v))
    }

    /// `F(M·v)`: each variable is replaced by the corresponding row of `m`
    /// read as a linear form.
    pub fn substitute(&self, m: &Mat3) -> Self {
        if let Some(perm) = monomial_pattern(m) {
            let mut out = Self::zero(self.degree);
            for (e, c) in &self.terms {
                let mut ne = [0u32; 3];
                let mut coef = c.clone();
                for r in 0..3 {
                    let col = perm[r];
                    ne[col] += e[r];
                    if e[r] > 0 {
                        coef = &coef * &m[r][col].pow(e[r] as i64).expect("nonzero entry");
                    }
                }
                out.add_term(ne, coef).expect("degree preserved");
            }
            return out;
        }
        let linear: Vec<TernaryForm> = m
            .iter()
            .map(|row| {
                let mut l = Self::zero(1);
                for (j, c) in row.iter().enumerate() {
                    let mut e = [0; 3];
                    e[j] = 1;
                    l.add_term(e, c.clone()).expect("degree one");
                }
                l
            })
            .collect();
        let d = self.degree as usize;
        let powers: Vec<Vec<TernaryForm>> = linear
            .iter()
            .map(|l| {
                let mut p = vec![Self::monomial_one()];
                for i in 0..d {
                    let next = p[i].mul(l);
                    p.push(next);
                }
                p
            })
            .collect();
        let mut xy_cache: HashMap<(u32, u32), TernaryForm> = HashMap::new();
        let mut out = Self::zero(self.degree);
        for (e, c) in &self.terms {
            let xy = xy_cache
                .entry((e[0], e[1]))
                .or_insert_with(|| powers[0][e[0] as usize].mul(&powers[1][e[1] as usize]));
            let full = xy.mul(&powers[2][e[2] as usize]);
            for (ne, v) in full.terms {
                out.add_term(ne, c * &v).expect("degree preserved");
            }
        }
        out
    }

    fn monomial_one() -> Self {
        let mut f = Self::zero(0);
        f.terms.insert([0, 0, 0], CycloElem::one());
        f
    }

    /// `F^M = F∘M⁻¹`.
    pub fn transform_action(&self, m: &ProjTransform) -> Self {
        self.substitute(&m.inverse_matrix())
    }

    /// `c` with `self = c·other`, if the forms are proportional.
    pub fn ratio_to(&self, other: &Self) -> Option<CycloElem> {
        if self.degree != other.degree || self.terms.len() != other.terms.len() {
            return None;
        }
        let (e0, c0) = self.terms.iter().next()?;
        let c = c0.checked_div(other.terms.get(e0)?).ok()?;
        for (e, v) in &self.terms {
            let w = other.terms.get(e)?;
            if *v != &c * w {
                return None;
            }
        }
        Some(c)
    }

    /// `c` with `F^M = c·F`.
    pub fn preserves_up_to_scalar(&self, m: &ProjTransform) -> Option<CycloElem> {
        self.transform_action(m).ratio_to(self)
    }

    pub fn term_exponent(e: &Exponents) -> u32 {
        *e.iter().max().expect("three exponents")
    }

    /// Terms of maximal exponent, and the remaining terms. Returns zero forms
    /// for the zero input.
    pub fn core_decomposition(&self) -> (Self, Self) {
        let top = self.terms.keys().map(Self::term_exponent).max().unwrap_or(0);
        let mut core = Self::zero(self.degree);
        let mut low = Self::zero(self.degree);
        for (e, c) in &self.terms {
            let dst = if Self::term_exponent(e) == top { &mut core } else { &mut low };
            dst.terms.insert(*e, c.clone());
        }
        (core, low)
    }

    pub fn restrict_to_line(&self, line: &ProjLine) -> BinaryForm {
        geometry::restrict(self, line)
    }

    pub fn intersection_multiplicity(&self, line: &ProjLine, p: &ProjPoint) -> Result<usize> {
        geometry::intersection_multiplicity(self, line, p)
    }

    pub fn tangent_line(&self, p: &ProjPoint) -> Result<ProjLine> {
        geometry::tangent_line(self, p)
    }

    pub fn line_meet_count(&self, line: &ProjLine) -> Result<usize> {
        geometry::line_meet_count(self, line)
    }
}

/// For a matrix with exactly one nonzero entry in each row and column,
/// returns the column of the nonzero entry of each row.
pub(crate) fn monomial_pattern(m: &Mat3) -> Option<[usize; 3]> {
    let mut perm = [0; 3];
    let mut seen = [false; 3];
    for (r, row) in m.iter().enumerate() {
        let mut nz = row.iter().enumerate().filter(|(_, c)| !c.is_zero());
        let (c, _) = nz.next()?;
        if nz.next().is_some() || seen[c] {
            return None;
        }
        seen[c] = true;
        perm[r] = c;
    }
    Some(perm)
}

fn fmt_monomial(e: &Exponents) -> String {
    let parts: Vec<String> = ["X", "Y", "Z"]
        .iter()
        .zip(e)
        .filter(|(_, &k)| k > 0)
        .map(|(v, &k)| if k == 1 { v.to_string() } else { format!("{v}^{k}") })
        .collect();
    parts.join("*")
}

impl fmt::Display for TernaryForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let pieces: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|(e, c)| {
                let mono = fmt_monomial(e);
                let coef = c.to_expr();
                match (coef.as_str(), mono.is_empty()) {
                    (_, true) => format!("({coef})"),
                    ("1", false) => mono,
                    _ => format!("({coef})*{mono}"),
                }
            })
            .collect();
        f.write_str(&pieces.join(" + "))
    }
}

impl fmt::Debug for TernaryForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TernaryForm[d={}; {}]", self.degree, self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg;
    use proptest::prelude::*;

    fn fermat(d: u32) -> TernaryForm {
        TernaryForm::from_int_terms(d, &[([d, 0, 0], 1), ([0, d, 0], 1), ([0, 0, d], 1)]).unwrap()
    }

    fn klein(d: u32) -> TernaryForm {
        TernaryForm::from_int_terms(
            d,
            &[([1, d - 1, 0], 1), ([0, 1, d - 1], 1), ([d - 1, 0, 1], 1)],
        )
        .unwrap()
    }

    fn pt(v: [i64; 3]) -> ProjPoint {
        ProjPoint::new(v.map(CycloElem::from_int)).unwrap()
    }

    fn perm(p: [usize; 3]) -> ProjTransform {
        let mut m = linalg::identity();
        for r in 0..3 {
            for c in 0..3 {
                m[r][c] = CycloElem::from_int((p[r] == c) as i64);
            }
        }
        ProjTransform::new(m).unwrap()
    }

    fn diag(d: [CycloElem; 3]) -> ProjTransform {
        ProjTransform::new(linalg::diag(d)).unwrap()
    }

    #[test]
    fn evaluation_examples() {
        assert!(fermat(4).evaluate_at(&pt([0, 0, 1])).is_one());
        let f54 = TernaryForm::from_int_terms(5, &[([0, 1, 4], 1), ([5, 0, 0], 1), ([0, 5, 0], 1)]).unwrap();
        assert!(f54.lies_on(&pt([0, 0, 1])));
        assert!(klein(5).lies_on(&pt([1, 0, 0])));
    }

    #[test]
    fn action_examples() {
        assert_eq!(fermat(4).transform_action(&perm([1, 2, 0])), fermat(4));
        // [X, Y, ζZ] scales the X^{d-1}Z coefficient by ζ^{-1}
        let d = 5;
        let f = TernaryForm::from_int_terms(d, &[([d - 1, 0, 1], 7)]).unwrap();
        let z = CycloElem::zeta(d, 1);
        let g = f.transform_action(&diag([CycloElem::one(), CycloElem::one(), z.clone()]));
        assert_eq!(g.coeff(&[d - 1, 0, 1]), &CycloElem::from_int(7) * &z.inverse().unwrap());
        // Klein quintic under [ξ⁻³X, ξY, Z] picks up ξ⁻¹; the stored
        // representative ξ³·M contributes a further ξ⁻¹⁵
        let xi = CycloElem::zeta(13, 1);
        let m = diag([xi.pow(-3).unwrap(), xi.clone(), CycloElem::one()]);
        assert_eq!(klein(5).substitute(&linalg::inverse(&linalg::diag([xi.pow(-3).unwrap(), xi.clone(), CycloElem::one()])).unwrap()), klein(5).scale(&xi.inverse().unwrap()));
        assert_eq!(klein(5).preserves_up_to_scalar(&m), Some(xi.pow(-16).unwrap()));
    }

    #[test]
    fn preservation_examples() {
        let z4 = CycloElem::zeta(4, 1);
        let m = diag([z4, CycloElem::one(), CycloElem::one()]);
        assert_eq!(fermat(4).preserves_up_to_scalar(&m), Some(CycloElem::one()));
        let shear = ProjTransform::new([
            [1, 1, 0].map(CycloElem::from_int),
            [0, 1, 0].map(CycloElem::from_int),
            [0, 0, 1].map(CycloElem::from_int),
        ])
        .unwrap();
        assert_eq!(fermat(4).preserves_up_to_scalar(&shear), None);
    }

    #[test]
    fn core_examples() {
        let f = TernaryForm::from_int_terms(4, &[([4, 0, 0], 1), ([0, 4, 0], 1), ([0, 0, 4], 1), ([2, 2, 0], 1)]).unwrap();
        let (core, low) = f.core_decomposition();
        assert_eq!(core, fermat(4));
        assert_eq!(low, TernaryForm::from_int_terms(4, &[([2, 2, 0], 1)]).unwrap());
        let (core, low) = klein(5).core_decomposition();
        assert_eq!(core, klein(5));
        assert!(low.is_zero());
        let fp = TernaryForm::from_int_terms(6, &[([6, 0, 0], 1), ([0, 6, 0], 1), ([0, 0, 6], 1), ([2, 2, 2], -6)]).unwrap();
        assert_eq!(fp.core_decomposition().0, fermat(6));
    }

    #[test]
    fn genus_values() {
        assert_eq!(genus(4), 3);
        assert_eq!(genus(5), 6);
        assert_eq!(genus(6), 10);
    }

    #[test]
    fn general_substitution_matches_evaluation() {
        let f = klein(4);
        let m: Mat3 = [
            [1, 2, 0].map(CycloElem::from_int),
            [0, 1, -1].map(CycloElem::from_int),
            [3, 0, 1].map(CycloElem::from_int),
        ];
        let g = f.substitute(&m);
        let v = [2, -1, 5].map(CycloElem::from_int);
        assert_eq!(g.evaluate(&v), f.evaluate(&linalg::mat_vec(&m, &v)));
    }

    fn small_transform() -> impl Strategy<Value = ProjTransform> {
        (0usize..6, 0i64..5, 0i64..5, any::<bool>()).prop_map(|(p, a, b, shear)| {
            let perms = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
            let d = diag([CycloElem::zeta(5, a), CycloElem::zeta(5, b), CycloElem::one()]);
            let mut m = perm(perms[p]).compose(&d);
            if shear {
                let s = ProjTransform::new([
                    [1, 0, 0].map(CycloElem::from_int),
                    [1, 1, 0].map(CycloElem::from_int),
                    [0, 0, 1].map(CycloElem::from_int),
                ])
                .unwrap();
                m = m.compose(&s);
            }
            m
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        // With F^M = F∘M⁻¹ the action satisfies (F^M)^N = F^{NM}.
        #[test]
        fn action_composes(m in small_transform(), n in small_transform()) {
            let f = klein(5).add(&TernaryForm::from_int_terms(5, &[([2, 2, 1], 3)]).unwrap()).unwrap();
            let lhs = f.transform_action(&m).transform_action(&n);
            let rhs = f.transform_action(&n.compose(&m));
            prop_assert!(lhs.ratio_to(&rhs).is_some());
        }

        #[test]
        fn core_plus_low_is_form(coefs in proptest::collection::vec(-3i64..4, 15)) {
            let mut f = TernaryForm::zero(4);
            let mut k = 0;
            for i in 0..=4u32 {
                for j in 0..=(4 - i) {
                    f.add_term([i, j, 4 - i - j], CycloElem::from_int(coefs[k])).unwrap();
                    k += 1;
                }
            }
            let (core, low) = f.core_decomposition();
            prop_assert_eq!(core.add(&low).unwrap(), f);
            let lo = low.terms().map(|(e, _)| TernaryForm::term_exponent(e)).max();
            let hi = core.terms().map(|(e, _)| TernaryForm::term_exponent(e)).min();
            if let (Some(lo), Some(hi)) = (lo, hi) {
                prop_assert!(hi > lo);
            }
        }
    }
}
