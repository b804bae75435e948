//! Decides which of the five cases a finite group acting on a smooth plane
//! curve falls under, with re-checkable witnesses.

mod audit;

pub use audit::{
    homology_law, standard_instances, theorem2_audit, theorem3_audit, AuditEntry, ExceptionalFamily,
    HomologyLawReport, Theorem2Report, Theorem3Report,
};

use serde::{Deserialize, Serialize};

use crate::bounds::{case_bound, Case};
use crate::curves::{descendant_check, Ancestor, DescendantCertificate};
use crate::cyclo::CycloElem;
use crate::error::{Error, Result};
use crate::linalg;
use crate::polyring::{is_smooth, ProjLine, ProjPoint, TernaryForm};
use crate::projgroup::{
    closure, conjugate_group, fingerprint, fixed_configuration, pbd_split, standard_position, FixedConfiguration,
    GroupLabel, MatrixGroup, PbdSplit, ProjTransform, Triangle,
};

/// A group generated by transformations checked to preserve a curve.
#[derive(Clone, Debug)]
pub struct VerifiedAction {
    pub group: MatrixGroup,
    /// Per generator, `c` with `F^g = c·F`.
    pub scalars: Vec<CycloElem>,
}

pub fn verify_action(f: &TernaryForm, gens: &[ProjTransform], cap: usize) -> Result<VerifiedAction> {
    if f.degree() < 4 {
        return Err(Error::Domain(format!("degree {} < 4", f.degree())));
    }
    if !is_smooth(f).smooth {
        return Err(Error::SingularCurve);
    }
    let scalars = gens
        .iter()
        .enumerate()
        .map(|(index, g)| f.preserves_up_to_scalar(g).ok_or(Error::NotAutomorphism { index }))
        .collect::<Result<Vec<_>>>()?;
    Ok(VerifiedAction {
        group: closure(gens, cap)?,
        scalars,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FixedPointWitness {
    pub point: ProjPoint,
    pub on_curve: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OnCurveWitness {
    /// A fixed point on the curve, or `None` when the witness is a
    /// pointwise fixed line (which always meets the curve).
    pub point: Option<ProjPoint>,
    pub pointwise_fixed_line: Option<ProjLine>,
    pub cyclic: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitClaims {
    pub kernel_divides_degree: bool,
    /// `m ≤ d-1`, vacuous when the image is not cyclic or dihedral.
    pub m_at_most_degree_minus_one: bool,
    /// For a dihedral image, `m | d-2` or the kernel is trivial.
    pub dihedral_side_condition: bool,
    pub orders_multiply: bool,
}

impl SplitClaims {
    pub fn all(&self) -> bool {
        self.kernel_divides_degree
            && self.m_at_most_degree_minus_one
            && self.dihedral_side_condition
            && self.orders_multiply
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OffCurveWitness {
    pub point: ProjPoint,
    pub line: ProjLine,
    /// `T` with `T·(0:0:1) = point` and `T` mapping `Z = 0` onto `line`.
    pub conjugator: ProjTransform,
    pub split: PbdSplit,
    pub claims: SplitClaims,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TriangleWitness {
    pub triangle: Triangle,
    /// Columns are the triangle's vertices in the order that matched.
    pub conjugator: ProjTransform,
    pub certificate: DescendantCertificate,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witnesses {
    pub fixed_points: Vec<FixedPointWitness>,
    pub pointwise_fixed_lines: Vec<ProjLine>,
    pub invariant_lines: Vec<ProjLine>,
    pub triangles: Vec<Triangle>,
    pub on_curve: Option<OnCurveWitness>,
    /// Every off-curve fixed point that was tried, the verified ones first.
    pub off_curve: Vec<OffCurveWitness>,
    pub fermat_descendant: Option<TriangleWitness>,
    pub klein_descendant: Option<TriangleWitness>,
    pub primitive: Option<GroupLabel>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundAudit {
    pub case: Case,
    pub bound: u64,
    pub order: u64,
    pub passes: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationReport {
    pub degree: u32,
    pub order: usize,
    pub cases: Vec<Case>,
    pub primary: Case,
    pub witnesses: Witnesses,
    pub bounds: Vec<BoundAudit>,
    /// Informational findings and failed assertions.
    pub flags: Vec<String>,
    /// Every assertion attached to the applicable cases holds.
    pub consistent: bool,
}

impl ClassificationReport {
    pub fn applies(&self, case: Case) -> bool {
        self.cases.contains(&case)
    }
}

/// Lines invariant under the group and missing `p`: isolated invariant lines,
/// pointwise fixed lines, and one member of each invariant pencil.
fn lines_avoiding(cfg: &FixedConfiguration, p: &ProjPoint) -> Vec<ProjLine> {
    let mut out: Vec<ProjLine> = cfg
        .invariant_lines
        .iter()
        .chain(&cfg.pointwise_fixed_lines)
        .filter(|l| !l.contains(p))
        .cloned()
        .collect();
    for q in cfg.invariant_pencils.iter().filter(|q| *q != p) {
        let through = (0..3)
            .map(ProjPoint::basis)
            .filter_map(|e| ProjLine::through(q, &e).ok())
            .find(|l| !l.contains(p));
        out.extend(through);
    }
    out
}

fn split_at(g: &MatrixGroup, d: u32, p: &ProjPoint, line: &ProjLine, cap: usize) -> Result<OffCurveWitness> {
    let conjugator = standard_position(p, line)?;
    let h = conjugate_group(g, &conjugator, cap)?;
    let split = pbd_split(&h, cap)?;
    let d = d as usize;
    let m = split.m;
    let claims = SplitClaims {
        kernel_divides_degree: split.member && d.is_multiple_of(split.kernel_order),
        m_at_most_degree_minus_one: m.is_none_or(|m| m < d),
        dihedral_side_condition: match split.image_label {
            Some(GroupLabel::Dihedral { order }) => (d - 2).is_multiple_of(order / 2) || split.kernel_order == 1,
            _ => true,
        },
        orders_multiply: split.kernel_order * split.image_order == g.order(),
    };
    Ok(OffCurveWitness {
        point: p.clone(),
        line: line.clone(),
        conjugator,
        split,
        claims,
    })
}

const PERMUTATIONS: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];

/// Moves the triangle to the coordinate triangle in each vertex order and
/// looks for an ancestor core preserved by the conjugated group.
fn descendant_at(
    f: &TernaryForm,
    g: &MatrixGroup,
    triangle: &Triangle,
    ancestor: Ancestor,
    cap: usize,
) -> Result<Option<TriangleWitness>> {
    for perm in PERMUTATIONS {
        let v = &triangle.vertices;
        let t = linalg::from_columns([v[perm[0]].coords(), v[perm[1]].coords(), v[perm[2]].coords()]);
        let conjugator = ProjTransform::new(t)?;
        let moved = f.substitute(conjugator.matrix());
        let h = conjugate_group(g, &conjugator, cap)?;
        let certificate = descendant_check(&moved, &h, ancestor);
        if certificate.is_descendant {
            return Ok(Some(TriangleWitness {
                triangle: triangle.clone(),
                conjugator,
                certificate,
            }));
        }
    }
    Ok(None)
}

/// Classifies a group already known to act on the smooth curve `f`.
pub fn classify(f: &TernaryForm, g: &MatrixGroup, cap: usize) -> Result<ClassificationReport> {
    let d = f.degree();
    let mut w = Witnesses::default();
    let mut cases = Vec::new();
    let mut flags = Vec::new();
    let mut consistent = true;

    if g.order() == 1 {
        w.on_curve = Some(OnCurveWitness {
            point: None,
            pointwise_fixed_line: None,
            cyclic: true,
        });
        cases.push(Case::AI);
    } else {
        let cfg = fixed_configuration(g, cap)?;
        w.fixed_points = cfg
            .fixed_points
            .iter()
            .map(|p| FixedPointWitness {
                point: p.clone(),
                on_curve: f.lies_on(p),
            })
            .collect();
        w.pointwise_fixed_lines = cfg.pointwise_fixed_lines.clone();
        w.invariant_lines = cfg.invariant_lines.clone();
        w.triangles = cfg.triangles.clone();

        let on_curve = w.fixed_points.iter().find(|p| p.on_curve).map(|p| p.point.clone());
        let axis = cfg.pointwise_fixed_lines.first().cloned();
        if on_curve.is_some() || axis.is_some() {
            let cyclic = g.is_cyclic();
            if !cyclic {
                consistent = false;
                flags.push("a-i: the group fixes a point on the curve but is not cyclic".into());
            }
            w.on_curve = Some(OnCurveWitness {
                pointwise_fixed_line: if on_curve.is_none() { axis } else { None },
                point: on_curve,
                cyclic,
            });
            cases.push(Case::AI);
        }

        let mut verified = Vec::new();
        let mut unverified = Vec::new();
        for p in w.fixed_points.iter().filter(|p| !p.on_curve) {
            let Some(line) = lines_avoiding(&cfg, &p.point).into_iter().next() else {
                flags.push(format!("a-ii: no invariant line avoids the fixed point {}", p.point));
                continue;
            };
            let split = split_at(g, d, &p.point, &line, cap)?;
            if split.claims.all() {
                verified.push(split);
            } else {
                flags.push(format!("a-ii: claims fail at {}: {:?}", p.point, split.claims));
                unverified.push(split);
            }
        }
        if !verified.is_empty() {
            cases.push(Case::AII);
        }
        w.off_curve = verified.into_iter().chain(unverified).collect();

        for triangle in &cfg.triangles {
            if w.fermat_descendant.is_none() {
                w.fermat_descendant = descendant_at(f, g, triangle, Ancestor::Fermat, cap)?;
            }
            if w.klein_descendant.is_none() {
                w.klein_descendant = descendant_at(f, g, triangle, Ancestor::Klein, cap)?;
            }
        }
        if w.fermat_descendant.is_some() {
            cases.push(Case::BI);
        }
        if w.klein_descendant.is_some() {
            cases.push(Case::BII);
        }

        if !cfg.fixes_a_point() && !cfg.fixes_a_line() && cfg.triangles.is_empty() {
            let label = fingerprint(g);
            if !label.is_primitive_type() {
                return Err(Error::Unclassified(format!(
                    "a primitive group of order {} was fingerprinted as {label}",
                    g.order()
                )));
            }
            w.primitive = Some(label);
            cases.push(Case::C);
        }
    }

    let primary = *cases
        .first()
        .ok_or_else(|| Error::Unclassified(format!("no case applies to a group of order {}", g.order())))?;
    let bounds = cases
        .iter()
        .map(|&case| {
            let bound = case_bound(case, d)?.value;
            let order = g.order() as u64;
            Ok(BoundAudit {
                case,
                bound,
                order,
                passes: order <= bound,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    if bounds.iter().any(|b| !b.passes) {
        consistent = false;
        flags.push("a case bound is violated".into());
    }
    Ok(ClassificationReport {
        degree: d,
        order: g.order(),
        cases,
        primary,
        witnesses: w,
        bounds,
        flags,
        consistent,
    })
}
