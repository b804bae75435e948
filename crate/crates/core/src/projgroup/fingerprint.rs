//! Identification of small groups by order, commutativity and the multiset
//! of element orders, compared against brute-force models of each candidate.

use std::fmt;
use std::sync::OnceLock;

use num_integer::{Integer, Roots};
use serde::{Deserialize, Serialize};

use super::closure::{multiset, MatrixGroup};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GroupLabel {
    Cyclic { order: usize },
    Dihedral { order: usize },
    A4,
    S4,
    A5,
    A6,
    Psl27,
    Hessian216,
    Hessian72,
    Hessian36,
    /// `Z_d² ⋊ S₃`.
    FermatSemidirect { d: usize },
    Other { order: usize, element_orders: Vec<(usize, usize)> },
}

impl GroupLabel {
    /// The parameter `m` of `Z_m` or `D_2m`.
    pub fn cyclic_or_dihedral_m(&self) -> Option<usize> {
        match self {
            GroupLabel::Cyclic { order } => Some(*order),
            GroupLabel::Dihedral { order } => Some(order / 2),
            _ => None,
        }
    }

    pub fn is_primitive_type(&self) -> bool {
        matches!(
            self,
            GroupLabel::A5
                | GroupLabel::A6
                | GroupLabel::Psl27
                | GroupLabel::Hessian216
                | GroupLabel::Hessian72
                | GroupLabel::Hessian36
        )
    }
}

impl fmt::Display for GroupLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupLabel::Cyclic { order } => write!(f, "cyclic Z_{order}"),
            GroupLabel::Dihedral { order } => write!(f, "dihedral D_{order}"),
            GroupLabel::A4 => f.write_str("A4"),
            GroupLabel::S4 => f.write_str("S4"),
            GroupLabel::A5 => f.write_str("A5"),
            GroupLabel::A6 => f.write_str("A6"),
            GroupLabel::Psl27 => f.write_str("PSL(2,F7)"),
            GroupLabel::Hessian216 => f.write_str("Hessian group H216"),
            GroupLabel::Hessian72 => f.write_str("Hessian subgroup H72"),
            GroupLabel::Hessian36 => f.write_str("Hessian subgroup H36"),
            GroupLabel::FermatSemidirect { d } => write!(f, "Z_{d}^2 x| S3"),
            GroupLabel::Other { order, element_orders } => {
                write!(f, "unidentified group of order {order} with element orders {element_orders:?}")
            }
        }
    }
}

pub fn fingerprint(g: &MatrixGroup) -> GroupLabel {
    identify(g.order(), g.is_abelian(), &g.order_multiset())
}

/// Label for a group given its order, whether it is abelian and its sorted
/// element-order multiset.
pub fn identify(order: usize, abelian: bool, orders: &[(usize, usize)]) -> GroupLabel {
    if abelian && orders.iter().any(|&(o, _)| o == order) {
        return GroupLabel::Cyclic { order };
    }
    if order.is_multiple_of(2) && order >= 4 && orders == dihedral_multiset(order / 2).as_slice() {
        return GroupLabel::Dihedral { order };
    }
    let named = [
        (GroupLabel::A4, 12),
        (GroupLabel::S4, 24),
        (GroupLabel::A5, 60),
        (GroupLabel::A6, 360),
        (GroupLabel::Psl27, 168),
        (GroupLabel::Hessian216, 216),
        (GroupLabel::Hessian72, 72),
        (GroupLabel::Hessian36, 36),
    ];
    for (label, size) in named {
        if size == order && reference_order_multiset(&label).as_deref() == Some(orders) {
            return label;
        }
    }
    if order.is_multiple_of(6) {
        let d = (order / 6).sqrt();
        if d >= 2 && 6 * d * d == order && orders == semidirect_multiset(d).as_slice() {
            return GroupLabel::FermatSemidirect { d };
        }
    }
    GroupLabel::Other {
        order,
        element_orders: orders.to_vec(),
    }
}

/// `(order, count)` pairs, ascending by order.
type OrderMultiset = Vec<(usize, usize)>;

/// Element-order multiset of the model group behind a label.
pub fn reference_order_multiset(label: &GroupLabel) -> Option<Vec<(usize, usize)>> {
    static CACHE: OnceLock<Vec<(GroupLabel, OrderMultiset)>> = OnceLock::new();
    let fixed = CACHE.get_or_init(|| {
        vec![
            (GroupLabel::A4, alternating(4)),
            (GroupLabel::S4, symmetric(4)),
            (GroupLabel::A5, alternating(5)),
            (GroupLabel::A6, alternating(6)),
            (GroupLabel::Psl27, psl27()),
            (GroupLabel::Hessian216, affine_f3(&sl23())),
            (GroupLabel::Hessian72, affine_f3(&quaternion_in_sl23())),
            (GroupLabel::Hessian36, affine_f3(&order4_in_sl23())),
        ]
    });
    match label {
        GroupLabel::Cyclic { order } => Some(cyclic_multiset(*order)),
        GroupLabel::Dihedral { order } => Some(dihedral_multiset(order / 2)),
        GroupLabel::FermatSemidirect { d } => Some(semidirect_multiset(*d)),
        GroupLabel::Other { element_orders, .. } => Some(element_orders.clone()),
        _ => fixed.iter().find(|(l, _)| l == label).map(|(_, m)| m.clone()),
    }
}

fn cyclic_multiset(n: usize) -> Vec<(usize, usize)> {
    let orders: Vec<usize> = (0..n).map(|j| n / j.gcd(&n)).collect();
    multiset(&orders)
}

fn dihedral_multiset(m: usize) -> Vec<(usize, usize)> {
    let mut orders: Vec<usize> = (0..m).map(|j| m / j.gcd(&m)).collect();
    orders.extend(std::iter::repeat_n(2, m));
    multiset(&orders)
}

fn permutation_order(p: &[usize]) -> usize {
    let mut seen = vec![false; p.len()];
    let mut acc = 1;
    for s in 0..p.len() {
        let mut len = 0;
        let mut c = s;
        while !seen[c] {
            seen[c] = true;
            c = p[c];
            len += 1;
        }
        if len > 0 {
            acc = acc.lcm(&len);
        }
    }
    acc
}

fn is_even(p: &[usize]) -> bool {
    let mut inv = 0;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            inv += usize::from(p[i] > p[j]);
        }
    }
    inv % 2 == 0
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..n {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

fn symmetric(n: usize) -> Vec<(usize, usize)> {
    let orders: Vec<usize> = permutations(n).iter().map(|p| permutation_order(p)).collect();
    multiset(&orders)
}

fn alternating(n: usize) -> Vec<(usize, usize)> {
    let orders: Vec<usize> = permutations(n)
        .iter()
        .filter(|p| is_even(p))
        .map(|p| permutation_order(p))
        .collect();
    multiset(&orders)
}

type M2 = [[i64; 2]; 2];

fn mul2(a: &M2, b: &M2, p: i64) -> M2 {
    std::array::from_fn(|i| {
        std::array::from_fn(|j| (a[i][0] * b[0][j] + a[i][1] * b[1][j]).rem_euclid(p))
    })
}

fn sl2(p: i64) -> Vec<M2> {
    let mut out = Vec::new();
    for a in 0..p {
        for b in 0..p {
            for c in 0..p {
                for d in 0..p {
                    if (a * d - b * c).rem_euclid(p) == 1 {
                        out.push([[a, b], [c, d]]);
                    }
                }
            }
        }
    }
    out
}

fn psl27() -> Vec<(usize, usize)> {
    let id: M2 = [[1, 0], [0, 1]];
    let minus: M2 = [[6, 0], [0, 6]];
    let mut orders = Vec::new();
    for m in sl2(7) {
        let mut k = 1;
        let mut cur = m;
        while cur != id && cur != minus {
            cur = mul2(&cur, &m, 7);
            k += 1;
        }
        orders.push(k);
    }
    // each class {A, -A} was counted twice
    multiset(&orders)
        .into_iter()
        .map(|(o, c)| (o, c / 2))
        .collect()
}

fn sl23() -> Vec<M2> {
    sl2(3)
}

fn order_sl23(m: &M2) -> usize {
    let id: M2 = [[1, 0], [0, 1]];
    let mut k = 1;
    let mut cur = *m;
    while cur != id {
        cur = mul2(&cur, m, 3);
        k += 1;
    }
    k
}

fn quaternion_in_sl23() -> Vec<M2> {
    sl23().into_iter().filter(|m| matches!(order_sl23(m), 1 | 2 | 4)).collect()
}

fn order4_in_sl23() -> Vec<M2> {
    let g: M2 = [[0, 1], [2, 0]];
    let mut out = vec![[[1, 0], [0, 1]]];
    let mut cur = g;
    while cur != out[0] {
        out.push(cur);
        cur = mul2(&cur, &g, 3);
    }
    out
}

/// Orders in `F₃² ⋊ H` for a subgroup `H ⊆ SL(2,3)` acting naturally.
fn affine_f3(h: &[M2]) -> Vec<(usize, usize)> {
    let mut orders = Vec::new();
    for a in h {
        for v0 in 0..3 {
            for v1 in 0..3 {
                // (v, A)^k = (v + Av + … + A^{k-1}v, A^k)
                let v = [v0, v1];
                let mut k = 1;
                let mut mat = *a;
                let mut vec = v;
                while !(mat == [[1, 0], [0, 1]] && vec == [0, 0]) {
                    let av = [
                        (a[0][0] * vec[0] + a[0][1] * vec[1]).rem_euclid(3),
                        (a[1][0] * vec[0] + a[1][1] * vec[1]).rem_euclid(3),
                    ];
                    vec = [(v[0] + av[0]) % 3, (v[1] + av[1]) % 3];
                    mat = mul2(&mat, a, 3);
                    k += 1;
                }
                orders.push(k);
            }
        }
    }
    multiset(&orders)
}

/// Orders in the group of monomial matrices with `d`-th root of unity
/// entries modulo scalars.
fn semidirect_multiset(d: usize) -> Vec<(usize, usize)> {
    let d = d as i64;
    let perms = permutations(3);
    let mut orders = Vec::new();
    for p in &perms {
        for a in 0..d {
            for b in 0..d {
                // exponents (a, b, 0) represent the coset of scalars
                let v = [a, b, 0];
                let mut k = 1;
                let mut cur_v = v;
                let mut cur_p = p.clone();
                loop {
                    let is_id = cur_p == [0, 1, 2]
                        && (cur_v[0] - cur_v[2]).rem_euclid(d) == 0
                        && (cur_v[1] - cur_v[2]).rem_euclid(d) == 0;
                    if is_id {
                        break;
                    }
                    // (M·N)[r] has column q[p[r]] and exponent v[r] + w[p[r]]
                    let nv = [0, 1, 2].map(|r| cur_v[r] + v[cur_p[r]]);
                    let np: Vec<usize> = (0..3).map(|r| p[cur_p[r]]).collect();
                    cur_v = nv;
                    cur_p = np;
                    k += 1;
                }
                orders.push(k);
            }
        }
    }
    multiset(&orders)
}
