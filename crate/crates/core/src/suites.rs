//! Self-checks over the named families, grouped into suites.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::bounds::{hurwitz_admits, oikawa, Case};
use crate::classify::{
    classify, homology_law, standard_instances, theorem2_audit, theorem3_audit, verify_action,
};
use crate::curves::{
    descendant_check, family_form, galois_group_at, hessian_subgroup_generators, make_family, Ancestor, Family,
    GaloisKind,
};
use crate::cyclo::CycloElem;
use crate::error::{Error, Result};
use crate::polyring::{genus, is_smooth, ProjPoint, TernaryForm};
use crate::projgroup::{closure, fingerprint, pbd_split, GroupLabel, MatrixGroup};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Suite {
    Fermat,
    Klein,
    Fdd1,
    Dcurve,
    Fprime,
    Fdoubleprime,
    Hessian,
    Galois,
    Theorem2,
    Theorem3,
    All,
}

impl Suite {
    pub const EACH: [Suite; 10] = [
        Suite::Fermat,
        Suite::Klein,
        Suite::Fdd1,
        Suite::Dcurve,
        Suite::Fprime,
        Suite::Fdoubleprime,
        Suite::Hessian,
        Suite::Galois,
        Suite::Theorem2,
        Suite::Theorem3,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Fermat => "fermat",
            Suite::Klein => "klein",
            Suite::Fdd1 => "fdd1",
            Suite::Dcurve => "dcurve",
            Suite::Fprime => "fprime",
            Suite::Fdoubleprime => "fdoubleprime",
            Suite::Hessian => "hessian",
            Suite::Galois => "galois",
            Suite::Theorem2 => "theorem2",
            Suite::Theorem3 => "theorem3",
            Suite::All => "all",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::EACH
            .into_iter()
            .chain([Suite::All])
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown suite `{s}`")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub suite: Suite,
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub checks: Vec<Check>,
    pub passed: bool,
}

struct Checks {
    suite: Suite,
    out: Vec<Check>,
}

impl Checks {
    fn new(suite: Suite) -> Self {
        Checks { suite, out: Vec::new() }
    }

    fn push(&mut self, name: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.out.push(Check {
            suite: self.suite,
            name: name.into(),
            passed,
            detail: detail.into(),
        });
    }

    fn eq<T: PartialEq + fmt::Debug>(&mut self, name: impl Into<String>, got: T, want: T) {
        let passed = got == want;
        self.push(name, passed, format!("got {got:?}, expected {want:?}"));
    }
}

fn instance_group(family: Family, d: u32, lambda: Option<CycloElem>, cap: usize) -> Result<(TernaryForm, MatrixGroup)> {
    let inst = make_family(family, d, lambda)?;
    let g = verify_action(&inst.form, &inst.generators, cap)?.group;
    Ok((inst.form, g))
}

fn has_involution(g: &MatrixGroup) -> bool {
    g.element_orders().contains(&2)
}

fn fermat(c: &mut Checks, cap: usize) -> Result<()> {
    for d in 4..=8u32 {
        let (f, g) = instance_group(Family::Fermat, d, None, cap)?;
        c.eq(format!("d={d} order"), g.order() as u64, 6 * (d as u64).pow(2));
        c.eq(
            format!("d={d} fingerprint"),
            fingerprint(&g),
            GroupLabel::FermatSemidirect { d: d as usize },
        );
        if d <= 5 {
            c.eq(format!("d={d} primary case"), classify(&f, &g, cap)?.primary, Case::BI);
        }
    }
    let bound = oikawa(genus(5), 15)?.value;
    c.eq("oikawa bound at d=5 equals the order", bound, 150);
    Ok(())
}

fn klein(c: &mut Checks, cap: usize) -> Result<()> {
    for d in 5..=7u32 {
        let (_, g) = instance_group(Family::Klein, d, None, cap)?;
        let n = d as u64;
        c.eq(format!("d={d} order"), g.order() as u64, 3 * (n * n - 3 * n + 3));
        c.eq(format!("d={d} has no involution"), has_involution(&g), false);
    }
    let (_, g) = instance_group(Family::KleinQuartic, 4, None, cap)?;
    c.eq("d=4 generators span order", g.order(), 21);
    let (f, g) = instance_group(Family::Klein, 5, None, cap)?;
    c.eq("d=5 primary case", classify(&f, &g, cap)?.primary, Case::BII);
    Ok(())
}

fn fdd1(c: &mut Checks, cap: usize) -> Result<()> {
    for d in 5..=7u32 {
        let (f, g) = instance_group(Family::Fdd1, d, None, cap)?;
        c.eq(format!("d={d} order"), g.order() as u64, (d * (d - 1)) as u64);
        c.eq(format!("d={d} cyclic"), g.is_cyclic(), true);
        let r = classify(&f, &g, cap)?;
        c.eq(format!("d={d} primary case"), r.primary, Case::AI);
        let point = r.witnesses.on_curve.and_then(|w| w.point);
        c.eq(format!("d={d} fixed point on the curve"), point, Some(ProjPoint::basis(2)));
        let v = galois_group_at(&f, &g, &ProjPoint::basis(2), cap)?;
        c.eq(format!("d={d} inner Galois point"), (v.kind, v.group_order), (GaloisKind::Inner, d as usize - 1));
    }
    Ok(())
}

fn dcurve(c: &mut Checks, cap: usize) -> Result<()> {
    for d in [5u32, 7, 8] {
        let (f, g) = instance_group(Family::Dcurve, d, None, cap)?;
        c.eq(format!("d={d} order"), g.order() as u64, (2 * d * (d - 2)) as u64);
        let s = pbd_split(&g, cap)?;
        c.eq(format!("d={d} kernel order"), s.kernel_order, d as usize);
        c.eq(
            format!("d={d} image"),
            s.image_label,
            Some(GroupLabel::Dihedral { order: 2 * (d as usize - 2) }),
        );
        let v = galois_group_at(&f, &g, &ProjPoint::basis(2), cap)?;
        c.eq(format!("d={d} outer Galois point"), (v.kind, v.group_order), (GaloisKind::Outer, d as usize));
    }
    let i = CycloElem::zeta(4, 1);
    let zero = CycloElem::zero;
    let one = CycloElem::one;
    let m = [[one(), i.clone(), zero()], [one(), -&i, zero()], [zero(), zero(), one()]];
    let moved = family_form(Family::Dcurve, 4, None)?.substitute(&m);
    let target = TernaryForm::from_int_terms(4, &[([0, 0, 4], 1), ([4, 0, 0], 2), ([0, 4, 0], -2)])?;
    c.eq("d=4 substitution gives Z^4 + 2(X^4 - Y^4)", moved, target);
    Ok(())
}

fn singular_witness(family: Family, d: u32, lambda: i64) -> Result<Option<ProjPoint>> {
    let form = family_form(family, d, Some(&CycloElem::from_int(lambda)))?;
    Ok(is_smooth(&form).witness)
}

fn fprime(c: &mut Checks, cap: usize) -> Result<()> {
    let (f, g) = instance_group(Family::Fprime, 6, Some(CycloElem::from_int(2)), cap)?;
    c.eq("d=6 λ=2 order", g.order(), 72);
    c.eq("descends from Fermat", descendant_check(&f, &g, Ancestor::Fermat).is_descendant, true);
    let rejected = matches!(make_family(Family::Fprime, 6, Some(CycloElem::one())), Err(Error::InvalidParameter(_)));
    c.eq("λ=1 rejected", rejected, true);
    c.eq("λ=1 singular at (1:1:1)", singular_witness(Family::Fprime, 6, 1)?, Some(ProjPoint::from_ints([1, 1, 1])?));
    Ok(())
}

fn fdoubleprime(c: &mut Checks, cap: usize) -> Result<()> {
    let (f, g) = instance_group(Family::Fdoubleprime, 8, Some(CycloElem::one()), cap)?;
    c.eq("d=8 λ=1 order", g.order(), 96);
    c.eq("descends from Fermat", descendant_check(&f, &g, Ancestor::Fermat).is_descendant, true);
    let rejected = matches!(
        make_family(Family::Fdoubleprime, 8, Some(CycloElem::from_int(-1))),
        Err(Error::InvalidParameter(_))
    );
    c.eq("λ=-1 rejected", rejected, true);
    c.eq(
        "λ=-1 singular at (1:1:1)",
        singular_witness(Family::Fdoubleprime, 8, -1)?,
        Some(ProjPoint::from_ints([1, 1, 1])?),
    );
    Ok(())
}

fn hessian(c: &mut Checks, cap: usize) -> Result<()> {
    let form = family_form(Family::Hessian6, 6, None)?;
    for (order, label) in [
        (216, GroupLabel::Hessian216),
        (72, GroupLabel::Hessian72),
        (36, GroupLabel::Hessian36),
    ] {
        let gens = hessian_subgroup_generators(order)?;
        let preserved = gens.iter().all(|m| form.preserves_up_to_scalar(m).is_some());
        c.eq(format!("order {order} generators preserve the sextic"), preserved, true);
        let g = closure(&gens, cap)?;
        c.eq(format!("order {order} closure"), g.order() as u64, order);
        c.eq(format!("order {order} fingerprint"), fingerprint(&g), label);
        if order == 216 {
            let r = classify(&form, &g, cap)?;
            c.eq("classified as primitive", r.cases, vec![Case::C]);
            c.eq(
                "not a Fermat descendant",
                descendant_check(&form, &g, Ancestor::Fermat).is_descendant,
                false,
            );
        }
    }
    c.eq("the sextic is smooth", is_smooth(&form).smooth, true);
    Ok(())
}

fn galois(c: &mut Checks, cap: usize) -> Result<()> {
    let p3 = ProjPoint::basis(2);
    let (f, g) = instance_group(Family::Fdd1, 5, None, cap)?;
    let v = galois_group_at(&f, &g, &p3, cap)?;
    c.eq("fdd1 d=5 at (0:0:1)", (v.kind, v.group_order), (GaloisKind::Inner, 4));
    let (f, g) = instance_group(Family::Dcurve, 8, None, cap)?;
    let v = galois_group_at(&f, &g, &p3, cap)?;
    c.eq("dcurve d=8 at (0:0:1)", (v.kind, v.group_order), (GaloisKind::Outer, 8));
    let (f, g) = instance_group(Family::Fermat, 5, None, cap)?;
    let v = galois_group_at(&f, &g, &ProjPoint::from_ints([1, 1, 1])?, cap)?;
    c.eq("fermat d=5 at (1:1:1)", v.kind, GaloisKind::None);
    Ok(())
}

fn theorem2(c: &mut Checks, cap: usize) -> Result<()> {
    for d in 4..=8 {
        let r = theorem2_audit(d, &standard_instances(d)?, cap)?;
        c.push(format!("d={d}"), r.passes, format!("max {} by {:?}; {:?}", r.max_order, r.attained_by, r.failures));
    }
    let wiman = family_form(Family::Wiman6, 6, None)?;
    c.eq("wiman sextic smooth", is_smooth(&wiman).smooth, true);
    c.eq("hurwitz admits 360 at genus 10", hurwitz_admits(genus(6), 360)?, true);
    Ok(())
}

fn theorem3(c: &mut Checks, cap: usize) -> Result<()> {
    let r = theorem3_audit(60, cap)?;
    let values: Vec<u64> = r.exceptional.iter().filter_map(|e| e.formula_order).collect();
    c.eq("d=60 exceptional orders", values, vec![21600, 10269, 6960, 7200, 5400]);
    c.push("d=60 audit", r.passes, format!("{:?}", r.failures));
    let r = theorem3_audit(8, cap)?;
    let closures: Vec<(Family, Option<usize>)> =
        r.exceptional.iter().filter(|e| e.applicable).map(|e| (e.family, e.closure_order)).collect();
    c.eq(
        "d=8 closures",
        closures,
        vec![
            (Family::Fermat, Some(384)),
            (Family::Klein, Some(129)),
            (Family::Dcurve, Some(96)),
            (Family::Fdoubleprime, Some(96)),
        ],
    );
    c.push("d=8 audit", r.passes, format!("{:?}", r.failures));
    let r = theorem3_audit(61, cap)?;
    let applicable: Vec<Family> = r.exceptional.iter().filter(|e| e.applicable).map(|e| e.family).collect();
    c.eq("d=61 applicable", applicable, vec![Family::Fermat, Family::Klein, Family::Dcurve]);
    Ok(())
}

fn homology_checks(c: &mut Checks, cap: usize) -> Result<()> {
    let (f, g) = instance_group(c.suite_family(), c.suite_degree(), c.suite_lambda(), cap)?;
    let r = homology_law(&f, &g, cap)?;
    c.push("homology law", r.passes(), format!("{:?}", r.violations));
    Ok(())
}

impl Checks {
    fn suite_family(&self) -> Family {
        match self.suite {
            Suite::Klein => Family::Klein,
            Suite::Fdd1 => Family::Fdd1,
            Suite::Dcurve => Family::Dcurve,
            Suite::Fprime => Family::Fprime,
            Suite::Fdoubleprime => Family::Fdoubleprime,
            Suite::Hessian => Family::Hessian6,
            _ => Family::Fermat,
        }
    }

    fn suite_degree(&self) -> u32 {
        match self.suite {
            Suite::Fprime | Suite::Hessian => 6,
            Suite::Fdoubleprime | Suite::Dcurve => 8,
            _ => 5,
        }
    }

    fn suite_lambda(&self) -> Option<CycloElem> {
        match self.suite {
            Suite::Fprime => Some(CycloElem::from_int(2)),
            Suite::Fdoubleprime => Some(CycloElem::one()),
            _ => None,
        }
    }
}

fn run_one(suite: Suite, cap: usize) -> Result<SuiteReport> {
    let mut c = Checks::new(suite);
    match suite {
        Suite::Fermat => fermat(&mut c, cap)?,
        Suite::Klein => klein(&mut c, cap)?,
        Suite::Fdd1 => fdd1(&mut c, cap)?,
        Suite::Dcurve => dcurve(&mut c, cap)?,
        Suite::Fprime => fprime(&mut c, cap)?,
        Suite::Fdoubleprime => fdoubleprime(&mut c, cap)?,
        Suite::Hessian => hessian(&mut c, cap)?,
        Suite::Galois => galois(&mut c, cap)?,
        Suite::Theorem2 => theorem2(&mut c, cap)?,
        Suite::Theorem3 => theorem3(&mut c, cap)?,
        Suite::All => unreachable!("expanded by run_suite"),
    }
    if !matches!(suite, Suite::Galois | Suite::Theorem2 | Suite::Theorem3) {
        homology_checks(&mut c, cap)?;
    }
    Ok(SuiteReport {
        suite,
        passed: c.out.iter().all(|x| x.passed),
        checks: c.out,
    })
}

/// Runs a suite; `All` runs every suite in a fixed order.
pub fn run_suite(suite: Suite, cap: usize) -> Result<Vec<SuiteReport>> {
    match suite {
        Suite::All => Suite::EACH.into_iter().map(|s| run_one(s, cap)).collect(),
        s => Ok(vec![run_one(s, cap)?]),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::projgroup::DEFAULT_CAP;

    #[test]
    fn suite_names_parse() {
        for s in Suite::EACH.into_iter().chain([Suite::All]) {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
    }

    #[test]
    fn galois_suite_passes() {
        let r = run_suite(Suite::Galois, DEFAULT_CAP).unwrap();
        assert!(r[0].passed, "{:?}", r[0].checks);
    }
}
