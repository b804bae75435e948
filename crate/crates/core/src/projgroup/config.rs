use std::collections::HashMap;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use super::eigen::eigen_structure;
use super::{MatrixGroup, ProjTransform};
use crate::cyclo::Rational;
use crate::error::Result;
use crate::linalg::{self, Vec3};
use crate::polyring::{ProjLine, ProjPoint};

/// Three non-collinear points permuted by a group.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Triangle {
    pub vertices: [ProjPoint; 3],
}

#[derive(Clone, Debug, Default)]
pub struct FixedConfiguration {
    /// Points fixed by every element (isolated ones).
    pub fixed_points: Vec<ProjPoint>,
    /// Lines fixed pointwise by every element.
    pub pointwise_fixed_lines: Vec<ProjLine>,
    /// Lines mapped to themselves by every element (isolated ones).
    pub invariant_lines: Vec<ProjLine>,
    /// Points `Q` such that every line through `Q` is invariant.
    pub invariant_pencils: Vec<ProjPoint>,
    pub triangles: Vec<Triangle>,
}

impl FixedConfiguration {
    pub fn fixes_a_point(&self) -> bool {
        !self.fixed_points.is_empty() || !self.pointwise_fixed_lines.is_empty()
    }

    pub fn fixes_a_line(&self) -> bool {
        !self.invariant_lines.is_empty() || !self.invariant_pencils.is_empty()
    }
}

fn common_subspaces(families: &[Vec<Vec<Vec3>>]) -> Vec<Vec<Vec3>> {
    let mut acc: Vec<Vec<Vec3>> = families[0].clone();
    for fam in &families[1..] {
        let mut next = Vec::new();
        for u in &acc {
            for e in fam {
                let w = linalg::intersect(u, e);
                if !w.is_empty() {
                    next.push(w);
                }
            }
        }
        acc = next;
    }
    acc
}

fn point_key(p: &ProjPoint, n: u32) -> Vec<Rational> {
    p.key(n)
}

/// Fixed points, invariant lines and invariant triangles of a finite group.
pub fn fixed_configuration(g: &MatrixGroup, cap: usize) -> Result<FixedConfiguration> {
    let gens: Vec<&ProjTransform> = g.generators().iter().filter(|m| !m.is_identity()).collect();
    if gens.is_empty() {
        return Ok(FixedConfiguration::default());
    }
    let structures = gens
        .iter()
        .map(|m| eigen_structure(m, cap))
        .collect::<Result<Vec<_>>>()?;
    let mut cfg = FixedConfiguration::default();
    let points = common_subspaces(&structures.iter().map(|s| s.eigenspaces.clone()).collect::<Vec<_>>());
    for s in points {
        match s.len() {
            1 => cfg.fixed_points.push(ProjPoint::new(s[0].clone())?),
            2 => cfg.pointwise_fixed_lines.push(ProjLine::new(linalg::annihilator(&s)[0].clone())?),
            _ => {}
        }
    }
    let lines = common_subspaces(&structures.iter().map(|s| s.dual_eigenspaces.clone()).collect::<Vec<_>>());
    for s in lines {
        match s.len() {
            1 => cfg.invariant_lines.push(ProjLine::new(s[0].clone())?),
            2 => cfg.invariant_pencils.push(ProjPoint::new(linalg::annihilator(&s)[0].clone())?),
            _ => {}
        }
    }
    cfg.triangles = invariant_triangles(g, cap)?;
    Ok(cfg)
}

/// Candidate vertices: fixed points of one generator of each cyclic
/// subgroup, homology centers, and meets of homology axes with each other and
/// with invariant lines of single elements. The triangles are the
/// non-collinear unions of orbits of size at most three.
fn invariant_triangles(g: &MatrixGroup, cap: usize) -> Result<Vec<Triangle>> {
    let mut candidates: Vec<ProjPoint> = Vec::new();
    let mut axes: Vec<ProjLine> = Vec::new();
    let mut lines: Vec<ProjLine> = Vec::new();
    for (i, _) in g.cyclic_subgroup_generators() {
        let e = eigen_structure(&g.elements()[i], cap)?;
        candidates.extend(e.fixed_points.iter().cloned());
        if let Some(axis) = &e.pointwise_fixed_line {
            axes.push(axis.clone());
        } else {
            lines.extend(e.fixed_lines.iter().cloned());
        }
    }
    for (i, a) in axes.iter().enumerate() {
        for b in axes[i + 1..].iter().chain(lines.iter()) {
            if let Ok(p) = a.meet(b) {
                candidates.push(p);
            }
        }
    }
    let n = candidates
        .iter()
        .fold(g.conductor(), |acc, p| acc.lcm(&p.conductor()));
    let gens: Vec<ProjTransform> = g
        .generators()
        .iter()
        .map(|m| m.embed_to(n))
        .collect::<Result<_>>()?;

    let mut seen: HashMap<Vec<Rational>, usize> = HashMap::new();
    let mut orbits: Vec<Vec<(Vec<Rational>, ProjPoint)>> = Vec::new();
    for c in candidates {
        let c = c.embed_to(n)?;
        let key = point_key(&c, n);
        if seen.contains_key(&key) {
            continue;
        }
        let orbit = small_orbit(&gens, c, n, 3);
        let id = orbits.len();
        match orbit {
            Some(o) => {
                for (k, _) in &o {
                    seen.insert(k.clone(), id);
                }
                orbits.push(o);
            }
            None => {
                seen.insert(key, id);
                orbits.push(Vec::new());
            }
        }
    }
    let orbits: Vec<Vec<(Vec<Rational>, ProjPoint)>> = orbits.into_iter().filter(|o| !o.is_empty()).collect();

    let mut found: Vec<(Vec<Vec<Rational>>, Triangle)> = Vec::new();
    let mut push = |pts: [&(Vec<Rational>, ProjPoint); 3]| {
        let [a, b, c] = pts;
        let m = linalg::from_columns([a.1.coords(), b.1.coords(), c.1.coords()]);
        if linalg::det(&m).is_zero() {
            return;
        }
        let mut keys = vec![a.0.clone(), b.0.clone(), c.0.clone()];
        keys.sort();
        if found.iter().any(|(k, _)| *k == keys) {
            return;
        }
        found.push((
            keys,
            Triangle {
                vertices: [a.1.clone(), b.1.clone(), c.1.clone()],
            },
        ));
    };
    let singles: Vec<&(Vec<Rational>, ProjPoint)> = orbits.iter().filter(|o| o.len() == 1).map(|o| &o[0]).collect();
    for o in orbits.iter().filter(|o| o.len() == 3) {
        push([&o[0], &o[1], &o[2]]);
    }
    for o in orbits.iter().filter(|o| o.len() == 2) {
        for s in &singles {
            push([&o[0], &o[1], s]);
        }
    }
    for i in 0..singles.len() {
        for j in i + 1..singles.len() {
            for k in j + 1..singles.len() {
                push([singles[i], singles[j], singles[k]]);
            }
        }
    }
    Ok(found.into_iter().map(|(_, t)| t).collect())
}

/// Orbit of `p`, or `None` once it exceeds `limit` points.
fn small_orbit(
    gens: &[ProjTransform],
    p: ProjPoint,
    n: u32,
    limit: usize,
) -> Option<Vec<(Vec<Rational>, ProjPoint)>> {
    let mut orbit = vec![(point_key(&p, n), p)];
    let mut i = 0;
    while i < orbit.len() {
        for g in gens {
            let q = g.apply(&orbit[i].1).embed_to(n).expect("common conductor");
            let k = point_key(&q, n);
            if orbit.iter().all(|(o, _)| *o != k) {
                orbit.push((k, q));
                if orbit.len() > limit {
                    return None;
                }
            }
        }
        i += 1;
    }
    Some(orbit)
}
