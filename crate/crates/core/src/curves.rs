//! Named families of smooth plane curves with their standard automorphisms.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::cyclo::CycloElem;
use crate::error::{Error, Result};
use crate::polyring::{is_smooth, ProjPoint, TernaryForm};
use crate::projgroup::{eigen_structure, MatrixGroup, ProjTransform};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    /// `X^d + Y^d + Z^d`
    Fermat,
    /// `XY^{d-1} + YZ^{d-1} + ZX^{d-1}`, `d ≥ 5`
    Klein,
    /// `YZ^{d-1} + X^d + Y^d`
    Fdd1,
    /// `Z^d + XY(X^{d-2} + Y^{d-2})`
    Dcurve,
    /// `X^{3m} + Y^{3m} + Z^{3m} - 3λ X^m Y^m Z^m`
    Fprime,
    /// `X^{2m} + Y^{2m} + Z^{2m} + λ(X^m Y^m + Y^m Z^m + Z^m X^m)`
    Fdoubleprime,
    Wiman6,
    Hessian6,
    KleinQuartic,
}

impl Family {
    pub const ALL: [Family; 9] = [
        Family::Fermat,
        Family::Klein,
        Family::Fdd1,
        Family::Dcurve,
        Family::Fprime,
        Family::Fdoubleprime,
        Family::Wiman6,
        Family::Hessian6,
        Family::KleinQuartic,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Fermat => "fermat",
            Family::Klein => "klein",
            Family::Fdd1 => "fdd1",
            Family::Dcurve => "dcurve",
            Family::Fprime => "fprime",
            Family::Fdoubleprime => "fdoubleprime",
            Family::Wiman6 => "wiman6",
            Family::Hessian6 => "hessian6",
            Family::KleinQuartic => "klein_quartic",
        }
    }

    pub fn takes_lambda(self) -> bool {
        matches!(self, Family::Fprime | Family::Fdoubleprime)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key = s.to_ascii_lowercase().replace('-', "_");
        Family::ALL
            .into_iter()
            .find(|f| f.name() == key)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown curve family `{s}`")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveFamilyInstance {
    pub family: Family,
    pub degree: u32,
    pub lambda: Option<CycloElem>,
    pub form: TernaryForm,
    pub generators: Vec<ProjTransform>,
    /// Order of the full automorphism group.
    pub expected_order: Option<u64>,
    /// The generators span a proper subgroup of the full group.
    pub partial: bool,
}

fn zeta(n: u32, k: i64) -> CycloElem {
    CycloElem::zeta(n, k)
}

fn diag(a: CycloElem, b: CycloElem, c: CycloElem) -> ProjTransform {
    ProjTransform::diagonal(a, b, c).expect("roots of unity are nonzero")
}

fn one() -> CycloElem {
    CycloElem::one()
}

fn cycle() -> ProjTransform {
    ProjTransform::permutation([1, 2, 0])
}

fn swap_yz() -> ProjTransform {
    ProjTransform::permutation([0, 2, 1])
}

/// `h₁, h₂, h₃, h₄` generating the Hessian group of order 216.
pub fn hessian_generators() -> [ProjTransform; 4] {
    let w = |k| zeta(3, k);
    let h3 = ProjTransform::new([[one(), one(), one()], [one(), w(1), w(2)], [one(), w(2), w(1)]])
        .expect("invertible");
    [cycle(), diag(one(), w(1), w(2)), h3, diag(one(), w(1), w(1))]
}

/// Generators of the Hessian subgroups of order 36, 72 and 216.
pub fn hessian_subgroup_generators(order: u64) -> Result<Vec<ProjTransform>> {
    let [h1, h2, h3, h4] = hessian_generators();
    match order {
        36 => Ok(vec![h1, h2, h3]),
        72 => {
            let j = h4.compose(&h3).compose(&h4.inverse());
            Ok(vec![h1, h2, h3, j])
        }
        216 => Ok(vec![h1, h2, h3, h4]),
        _ => Err(Error::InvalidParameter(format!("no Hessian subgroup of order {order}"))),
    }
}

pub fn fermat_form(d: u32) -> TernaryForm {
    TernaryForm::from_int_terms(d, &[([d, 0, 0], 1), ([0, d, 0], 1), ([0, 0, d], 1)]).expect("valid terms")
}

pub fn klein_form(d: u32) -> TernaryForm {
    TernaryForm::from_int_terms(d, &[([1, d - 1, 0], 1), ([0, 1, d - 1], 1), ([d - 1, 0, 1], 1)])
        .expect("valid terms")
}

fn lambda_of(family: Family, lambda: Option<&CycloElem>) -> Result<CycloElem> {
    lambda
        .cloned()
        .ok_or_else(|| Error::InvalidParameter(format!("{family} needs a parameter λ")))
}

/// The defining polynomial, without any validity check on `d` or `λ`.
pub fn family_form(family: Family, d: u32, lambda: Option<&CycloElem>) -> Result<TernaryForm> {
    let ints = |terms: &[([u32; 3], i64)]| TernaryForm::from_int_terms(d, terms);
    match family {
        Family::Fermat => Ok(fermat_form(d)),
        Family::Klein | Family::KleinQuartic => Ok(klein_form(d)),
        Family::Fdd1 => ints(&[([0, 1, d - 1], 1), ([d, 0, 0], 1), ([0, d, 0], 1)]),
        Family::Dcurve => ints(&[([0, 0, d], 1), ([d - 1, 1, 0], 1), ([1, d - 1, 0], 1)]),
        Family::Fprime => {
            let l = lambda_of(family, lambda)?;
            let m = d / 3;
            let mut f = fermat_form(d);
            f.add_term([m, m, m], &l * &CycloElem::from_int(-3))?;
            Ok(f)
        }
        Family::Fdoubleprime => {
            let l = lambda_of(family, lambda)?;
            let m = d / 2;
            let mut f = fermat_form(d);
            for e in [[m, m, 0], [0, m, m], [m, 0, m]] {
                f.add_term(e, l.clone())?;
            }
            Ok(f)
        }
        Family::Wiman6 => TernaryForm::from_int_terms(
            6,
            &[
                ([3, 3, 0], 10),
                ([5, 0, 1], 9),
                ([0, 5, 1], 9),
                ([2, 2, 2], -45),
                ([1, 1, 4], -135),
                ([0, 0, 6], 27),
            ],
        ),
        Family::Hessian6 => TernaryForm::from_int_terms(
            6,
            &[
                ([6, 0, 0], 1),
                ([0, 6, 0], 1),
                ([0, 0, 6], 1),
                ([3, 3, 0], -10),
                ([0, 3, 3], -10),
                ([3, 0, 3], -10),
            ],
        ),
    }
}

fn check_params(family: Family, d: u32, lambda: Option<&CycloElem>) -> Result<()> {
    let bad = |msg: String| Err(Error::InvalidParameter(msg));
    match family {
        Family::Fermat | Family::Dcurve if d < 4 => bad(format!("{family} needs d ≥ 4")),
        Family::Klein | Family::Fdd1 if d < 5 => bad(format!("{family} needs d ≥ 5")),
        Family::Wiman6 | Family::Hessian6 if d != 6 => bad(format!("{family} has degree 6")),
        Family::KleinQuartic if d != 4 => bad(format!("{family} has degree 4")),
        Family::Fprime => {
            if d < 6 || !d.is_multiple_of(3) {
                return bad("fprime needs d = 3m ≥ 6".into());
            }
            let l = lambda_of(family, lambda)?;
            if l.is_zero() {
                return bad("fprime is singular for λ = 0".into());
            }
            if (&(&l * &l) * &l).is_one() {
                return bad("fprime is singular for λ³ = 1".into());
            }
            Ok(())
        }
        Family::Fdoubleprime => {
            if d < 8 || !d.is_multiple_of(2) {
                return bad("fdoubleprime needs d = 2m ≥ 8".into());
            }
            let l = lambda_of(family, lambda)?;
            if [0, -1, 2, -2].into_iter().any(|v| l == CycloElem::from_int(v)) {
                return bad("fdoubleprime needs λ ∉ {0, -1, 2, -2}".into());
            }
            Ok(())
        }
        _ => Ok(()),
    }
}

fn standard_generators(family: Family, d: u32) -> Vec<ProjTransform> {
    let z = |k| zeta(d, k);
    match family {
        Family::Fermat => vec![diag(z(1), one(), one()), diag(one(), z(1), one()), cycle(), swap_yz()],
        Family::Klein | Family::KleinQuartic => {
            let n = d * d - 3 * d + 3;
            vec![diag(zeta(n, -(d as i64 - 2)), zeta(n, 1), one()), cycle()]
        }
        Family::Fdd1 => vec![diag(z(1), one(), one()), diag(one(), one(), zeta(d - 1, 1))],
        Family::Dcurve => {
            let n = d * (d - 2);
            vec![
                diag(zeta(n, 1), zeta(n, -(d as i64 - 1)), one()),
                ProjTransform::permutation([1, 0, 2]),
                diag(one(), one(), z(1)),
            ]
        }
        Family::Fprime => vec![
            diag(z(3), one(), one()),
            diag(one(), z(3), one()),
            diag(z(1), z(-1), one()),
            cycle(),
            swap_yz(),
        ],
        Family::Fdoubleprime => vec![diag(z(2), one(), one()), diag(one(), z(2), one()), cycle(), swap_yz()],
        Family::Wiman6 => Vec::new(),
        Family::Hessian6 => hessian_generators().to_vec(),
    }
}

fn expected_order(family: Family, d: u32) -> (Option<u64>, bool) {
    let d = d as u64;
    match family {
        Family::Fermat => (Some(6 * d * d), false),
        Family::Klein => (Some(3 * (d * d - 3 * d + 3)), false),
        Family::KleinQuartic => (Some(168), true),
        Family::Fdd1 => (Some(d * (d - 1)), false),
        Family::Dcurve => match d {
            4 => (Some(96), true),
            6 => (Some(144), true),
            _ => (Some(2 * d * (d - 2)), false),
        },
        Family::Fprime => (Some(2 * d * d), false),
        Family::Fdoubleprime => (Some(6 * (d / 2) * (d / 2)), false),
        Family::Wiman6 => (Some(360), true),
        Family::Hessian6 => (Some(216), false),
    }
}

/// Builds a family member after checking the parameter range, smoothness and
/// invariance under every standard generator.
pub fn make_family(family: Family, d: u32, lambda: Option<CycloElem>) -> Result<CurveFamilyInstance> {
    check_params(family, d, lambda.as_ref())?;
    let lambda = if family.takes_lambda() { lambda } else { None };
    let form = family_form(family, d, lambda.as_ref())?;
    if !is_smooth(&form).smooth {
        return Err(Error::SingularCurve);
    }
    let generators = standard_generators(family, d);
    if let Some(index) = generators
        .iter()
        .position(|g| form.preserves_up_to_scalar(g).is_none())
    {
        return Err(Error::NotAutomorphism { index });
    }
    let (expected_order, partial) = expected_order(family, d);
    Ok(CurveFamilyInstance {
        family,
        degree: d,
        lambda,
        form,
        generators,
        expected_order,
        partial,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GaloisKind {
    Inner,
    Outer,
    None,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GaloisVerdict {
    pub point: ProjPoint,
    pub on_curve: bool,
    /// Homologies centered at the point, plus the identity.
    pub group_order: usize,
    pub kind: GaloisKind,
}

/// The homologies of `g` centered at `p` and whether they make `p` a Galois
/// point.
pub fn galois_group_at(f: &TernaryForm, g: &MatrixGroup, p: &ProjPoint, cap: usize) -> Result<GaloisVerdict> {
    let mut group_order = 1;
    for m in g.elements().iter().filter(|m| !m.is_identity() && &m.apply(p) == p) {
        let h = eigen_structure(m, cap)?.homology();
        if h.is_homology && h.center.as_ref() == Some(p) {
            group_order += 1;
        }
    }
    let d = f.degree() as usize;
    let on_curve = f.lies_on(p);
    let kind = match (on_curve, group_order) {
        (true, k) if k == d - 1 => GaloisKind::Inner,
        (false, k) if k == d => GaloisKind::Outer,
        _ => GaloisKind::None,
    };
    Ok(GaloisVerdict {
        point: p.clone(),
        on_curve,
        group_order,
        kind,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Ancestor {
    Fermat,
    Klein,
}

impl Ancestor {
    pub fn form(self, d: u32) -> TernaryForm {
        match self {
            Ancestor::Fermat => fermat_form(d),
            Ancestor::Klein => klein_form(d),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DescendantCertificate {
    pub ancestor: Ancestor,
    pub is_descendant: bool,
    /// `c` with `core = c·ancestor`.
    pub core_scalar: Option<CycloElem>,
    /// Per generator, the scalar by which it multiplies the ancestor.
    pub generator_scalars: Vec<Option<CycloElem>>,
}

/// Whether the core of `f` is the ancestor polynomial up to a scalar and
/// every generator of `g` preserves the ancestor.
pub fn descendant_check(f: &TernaryForm, g: &MatrixGroup, ancestor: Ancestor) -> DescendantCertificate {
    let reference = ancestor.form(f.degree());
    let (core, _) = f.core_decomposition();
    let core_scalar = core.ratio_to(&reference);
    let generator_scalars: Vec<Option<CycloElem>> =
        g.generators().iter().map(|m| reference.preserves_up_to_scalar(m)).collect();
    DescendantCertificate {
        ancestor,
        is_descendant: core_scalar.is_some() && generator_scalars.iter().all(Option::is_some),
        core_scalar,
        generator_scalars,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::projgroup::{closure, DEFAULT_CAP};

    fn group(inst: &CurveFamilyInstance) -> MatrixGroup {
        closure(&inst.generators, DEFAULT_CAP).unwrap()
    }

    #[test]
    fn expected_orders_from_formulas() {
        assert_eq!(make_family(Family::Fermat, 5, None).unwrap().expected_order, Some(150));
        let f = make_family(Family::Fprime, 6, Some(CycloElem::from_int(2))).unwrap();
        assert_eq!(f.expected_order, Some(72));
        let f = make_family(Family::Fdoubleprime, 8, Some(CycloElem::one())).unwrap();
        assert_eq!(f.expected_order, Some(96));
    }

    #[test]
    fn small_closures_match_expected_orders() {
        for (family, d, lambda) in [
            (Family::Fermat, 4, None),
            (Family::Klein, 5, None),
            (Family::Fdd1, 5, None),
            (Family::Dcurve, 5, None),
            (Family::Fprime, 6, Some(CycloElem::from_int(2))),
        ] {
            let inst = make_family(family, d, lambda).unwrap();
            assert_eq!(Some(group(&inst).order() as u64), inst.expected_order, "{family} d={d}");
        }
    }

    #[test]
    fn parameter_gates() {
        assert!(matches!(
            make_family(Family::Fprime, 6, Some(CycloElem::one())),
            Err(Error::InvalidParameter(_))
        ));
        assert!(matches!(
            make_family(Family::Fprime, 6, Some(CycloElem::zeta(3, 1))),
            Err(Error::InvalidParameter(_))
        ));
        assert!(matches!(
            make_family(Family::Fdoubleprime, 8, Some(CycloElem::from_int(-1))),
            Err(Error::InvalidParameter(_))
        ));
        assert!(make_family(Family::Fdoubleprime, 6, Some(CycloElem::one())).is_err());
        assert!(make_family(Family::Klein, 4, None).is_err());
    }

    #[test]
    fn galois_points() {
        let inst = make_family(Family::Fdd1, 5, None).unwrap();
        let v = galois_group_at(&inst.form, &group(&inst), &ProjPoint::basis(2), DEFAULT_CAP).unwrap();
        assert_eq!((v.kind, v.group_order, v.on_curve), (GaloisKind::Inner, 4, true));

        let inst = make_family(Family::Dcurve, 8, None).unwrap();
        let v = galois_group_at(&inst.form, &group(&inst), &ProjPoint::basis(2), DEFAULT_CAP).unwrap();
        assert_eq!((v.kind, v.group_order), (GaloisKind::Outer, 8));

        let inst = make_family(Family::Fermat, 5, None).unwrap();
        let p = ProjPoint::from_ints([1, 1, 1]).unwrap();
        let v = galois_group_at(&inst.form, &group(&inst), &p, DEFAULT_CAP).unwrap();
        assert_eq!((v.kind, v.group_order), (GaloisKind::None, 1));
    }

    #[test]
    fn descendants() {
        let inst = make_family(Family::Fprime, 6, Some(CycloElem::from_int(2))).unwrap();
        assert!(descendant_check(&inst.form, &group(&inst), Ancestor::Fermat).is_descendant);
        let inst = make_family(Family::Fdoubleprime, 8, Some(CycloElem::one())).unwrap();
        assert!(descendant_check(&inst.form, &group(&inst), Ancestor::Fermat).is_descendant);
        let inst = make_family(Family::Hessian6, 6, None).unwrap();
        let cert = descendant_check(&inst.form, &group(&inst), Ancestor::Fermat);
        assert!(!cert.is_descendant);
        // the core is Fermat; h₃ is what breaks it
        assert!(cert.core_scalar.is_some());
        assert_eq!(cert.generator_scalars[2], None);
    }

    #[test]
    fn dcurve_quartic_is_fermat_quartic() {
        let i = CycloElem::zeta(4, 1);
        let m = [
            [one(), i.clone(), CycloElem::zero()],
            [one(), -&i, CycloElem::zero()],
            [CycloElem::zero(), CycloElem::zero(), one()],
        ];
        let f = family_form(Family::Dcurve, 4, None).unwrap().substitute(&m);
        let expected = TernaryForm::from_int_terms(4, &[([0, 0, 4], 1), ([4, 0, 0], 2), ([0, 4, 0], -2)]).unwrap();
        assert_eq!(f, expected);
    }

    /// Monomials whose scalar under every `m` equals that of `X^d`.
    fn compatible_monomials(d: u32, gens: &[ProjTransform]) -> Vec<[u32; 3]> {
        let mut out = Vec::new();
        for i in 0..=d {
            for j in 0..=d - i {
                let e = [i, j, d - i - j];
                let mono = TernaryForm::from_int_terms(d, &[(e, 1)]).unwrap();
                let lead = TernaryForm::from_int_terms(d, &[([d, 0, 0], 1)]).unwrap();
                if gens
                    .iter()
                    .all(|m| mono.preserves_up_to_scalar(m) == lead.preserves_up_to_scalar(m))
                {
                    out.push(e);
                }
            }
        }
        out
    }

    #[test]
    fn fermat_rigidity() {
        for d in 4..=8 {
            let eta = [
                diag(zeta(d, 1), one(), one()),
                diag(one(), zeta(d, 1), one()),
                diag(one(), one(), zeta(d, 1)),
            ];
            for skip in 0..3 {
                let pair: Vec<ProjTransform> =
                    (0..3).filter(|&t| t != skip).map(|t| eta[t].clone()).collect();
                let mut got = compatible_monomials(d, &pair);
                got.sort();
                assert_eq!(got, vec![[0, 0, d], [0, d, 0], [d, 0, 0]], "d={d}");
            }
        }
    }

    #[test]
    fn family_names_parse() {
        for f in Family::ALL {
            assert_eq!(f.name().parse::<Family>().unwrap(), f);
        }
        assert!("nope".parse::<Family>().is_err());
    }
}
