use std::collections::{HashMap, VecDeque};

use num_integer::Integer;

use super::ProjTransform;
use crate::cyclo::Rational;
use crate::error::{Error, Result};

/// Default bound on closure sizes; covers `6d²` for `d ≤ 64`.
pub const DEFAULT_CAP: usize = 25_000;

/// A finite group of projective transformations, all stored at one common
/// conductor.
#[derive(Clone, Debug)]
pub struct MatrixGroup {
    conductor: u32,
    generators: Vec<ProjTransform>,
    elements: Vec<ProjTransform>,
    index: HashMap<Vec<Rational>, usize>,
}

/// Breadth-first closure of `gens` under composition. Elements are listed
/// in discovery order, starting with the identity, which makes the ordering
/// deterministic.
pub fn closure(gens: &[ProjTransform], cap: usize) -> Result<MatrixGroup> {
    let conductor = gens.iter().fold(1u32, |a, g| a.lcm(&g.conductor()));
    let gens: Vec<ProjTransform> = gens
        .iter()
        .map(|g| g.embed_to(conductor))
        .collect::<Result<_>>()?;
    let mut elements = vec![ProjTransform::identity().embed_to(conductor)?];
    let mut index = HashMap::new();
    index.insert(elements[0].key(conductor), 0);
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        for g in &gens {
            let next = elements[i].compose(g);
            let key = next.key(conductor);
            if index.contains_key(&key) {
                continue;
            }
            if elements.len() >= cap {
                return Err(Error::CapExceeded {
                    cap,
                    partial: elements.len(),
                });
            }
            index.insert(key, elements.len());
            queue.push_back(elements.len());
            elements.push(next);
        }
    }
    Ok(MatrixGroup {
        conductor,
        generators: gens,
        elements,
        index,
    })
}

impl MatrixGroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn generators(&self) -> &[ProjTransform] {
        &self.generators
    }

    pub fn elements(&self) -> &[ProjTransform] {
        &self.elements
    }

    pub fn index_of(&self, m: &ProjTransform) -> Option<usize> {
        let n = self.conductor.lcm(&m.conductor());
        if n != self.conductor {
            return None;
        }
        self.index.get(&m.key(self.conductor)).copied()
    }

    pub fn contains(&self, m: &ProjTransform) -> bool {
        self.index_of(m).is_some()
    }

    /// Product `a·b` of two elements, by index.
    pub fn mul_index(&self, a: usize, b: usize) -> usize {
        let p = self.elements[a].compose(&self.elements[b]);
        self.index[&p.key(self.conductor)]
    }

    /// Orders of all elements, aligned with [`MatrixGroup::elements`].
    pub fn element_orders(&self) -> Vec<usize> {
        let mut orders = vec![0usize; self.order()];
        orders[0] = 1;
        for i in 1..self.order() {
            if orders[i] != 0 {
                continue;
            }
            let mut cycle = vec![i];
            let mut cur = i;
            loop {
                cur = self.mul_index(cur, i);
                if cur == 0 {
                    break;
                }
                cycle.push(cur);
            }
            let k = cycle.len() + 1;
            // x^j has order k / gcd(j, k)
            for (j, &e) in cycle.iter().enumerate() {
                if orders[e] == 0 {
                    orders[e] = k / (j + 1).gcd(&k);
                }
            }
        }
        orders
    }

    /// Sorted multiset of element orders as `(order, count)` pairs.
    pub fn order_multiset(&self) -> Vec<(usize, usize)> {
        multiset(&self.element_orders())
    }

    pub fn is_abelian(&self) -> bool {
        let g = &self.generators;
        g.iter().enumerate().all(|(i, a)| {
            g[i + 1..]
                .iter()
                .all(|b| a.compose(b).key(self.conductor) == b.compose(a).key(self.conductor))
        })
    }

    /// One generator per cyclic subgroup, paired with its order.
    pub fn cyclic_subgroup_generators(&self) -> Vec<(usize, usize)> {
        let orders = self.element_orders();
        let mut covered = vec![false; self.order()];
        covered[0] = true;
        let mut by_order: Vec<usize> = (1..self.order()).collect();
        // larger cyclic subgroups first so that their powers get marked
        by_order.sort_by_key(|&i| std::cmp::Reverse(orders[i]));
        let mut out = Vec::new();
        for i in by_order {
            if covered[i] {
                continue;
            }
            out.push((i, orders[i]));
            let mut cur = i;
            for j in 1..orders[i] {
                if (j).gcd(&orders[i]) == 1 {
                    covered[cur] = true;
                }
                cur = self.mul_index(cur, i);
            }
        }
        out
    }

    pub fn is_cyclic(&self) -> bool {
        self.element_orders().iter().any(|&o| o == self.order())
    }
}

pub(crate) fn multiset(orders: &[usize]) -> Vec<(usize, usize)> {
    let mut counts = std::collections::BTreeMap::new();
    for &o in orders {
        *counts.entry(o).or_insert(0) += 1;
    }
    counts.into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclo::CycloElem;

    fn fermat_gens(d: u32) -> Vec<ProjTransform> {
        let z = CycloElem::zeta(d, 1);
        let one = CycloElem::one;
        vec![
            ProjTransform::diagonal(z.clone(), one(), one()).unwrap(),
            ProjTransform::diagonal(one(), z, one()).unwrap(),
            ProjTransform::permutation([1, 2, 0]),
            ProjTransform::permutation([0, 2, 1]),
        ]
    }

    #[test]
    fn fermat_quartic_group() {
        let g = closure(&fermat_gens(4), DEFAULT_CAP).unwrap();
        assert_eq!(g.order(), 96);
        let orders = g.element_orders();
        for (i, &o) in orders.iter().enumerate() {
            assert_eq!(96 % o, 0);
            assert_eq!(g.elements()[i].element_order(100).unwrap(), o);
        }
        assert!(!g.is_abelian());
    }

    #[test]
    fn cap_is_enforced() {
        assert_eq!(
            closure(&fermat_gens(4), 50).unwrap_err(),
            Error::CapExceeded { cap: 50, partial: 50 }
        );
    }

    #[test]
    fn cyclic_subgroups_cover_group() {
        let g = closure(&fermat_gens(4), DEFAULT_CAP).unwrap();
        let reps = g.cyclic_subgroup_generators();
        let mut seen = vec![false; g.order()];
        seen[0] = true;
        for (i, k) in reps {
            let mut cur = i;
            for _ in 0..k {
                seen[cur] = true;
                cur = g.mul_index(cur, i);
            }
        }
        assert!(seen.iter().all(|&s| s));
    }

    #[test]
    fn membership_across_conductors() {
        let g = closure(&fermat_gens(4), DEFAULT_CAP).unwrap();
        let m = ProjTransform::diagonal(CycloElem::from_int(-1), CycloElem::one(), CycloElem::one()).unwrap();
        assert!(g.contains(&m));
        assert!(!g.contains(&ProjTransform::diagonal(CycloElem::zeta(3, 1), CycloElem::one(), CycloElem::one()).unwrap()));
    }
}
