//! Small dense linear algebra over `Q(ζₙ)`.

use crate::cyclo::CycloElem;
use crate::error::{Error, Result};

pub type Vec3 = [CycloElem; 3];
pub type Mat3 = [[CycloElem; 3]; 3];

pub fn zero_vec() -> Vec3 {
    std::array::from_fn(|_| CycloElem::zero())
}

pub fn identity() -> Mat3 {
    std::array::from_fn(|i| std::array::from_fn(|j| CycloElem::from_int((i == j) as i64)))
}

pub fn diag(d: [CycloElem; 3]) -> Mat3 {
    let [a, b, c] = d;
    let z = CycloElem::zero;
    [[a, z(), z()], [z(), b, z()], [z(), z(), c]]
}

pub fn mat_mul(a: &Mat3, b: &Mat3) -> Mat3 {
    std::array::from_fn(|i| {
        std::array::from_fn(|j| {
            let mut acc = CycloElem::zero();
            for k in 0..3 {
                if !a[i][k].is_zero() && !b[k][j].is_zero() {
                    acc = &acc + &(&a[i][k] * &b[k][j]);
                }
            }
            acc
        })
    })
}

pub fn mat_vec(a: &Mat3, v: &Vec3) -> Vec3 {
    std::array::from_fn(|i| {
        let mut acc = CycloElem::zero();
        for k in 0..3 {
            if !a[i][k].is_zero() && !v[k].is_zero() {
                acc = &acc + &(&a[i][k] * &v[k]);
            }
        }
        acc
    })
}

pub fn transpose(a: &Mat3) -> Mat3 {
    std::array::from_fn(|i| std::array::from_fn(|j| a[j][i].clone()))
}

pub fn scale(a: &Mat3, c: &CycloElem) -> Mat3 {
    std::array::from_fn(|i| std::array::from_fn(|j| &a[i][j] * c))
}

pub fn sub(a: &Mat3, b: &Mat3) -> Mat3 {
    std::array::from_fn(|i| std::array::from_fn(|j| &a[i][j] - &b[i][j]))
}

fn minor(a: &Mat3, r0: usize, r1: usize, c0: usize, c1: usize) -> CycloElem {
    &(&a[r0][c0] * &a[r1][c1]) - &(&a[r0][c1] * &a[r1][c0])
}

pub fn det(a: &Mat3) -> CycloElem {
    let t0 = &a[0][0] * &minor(a, 1, 2, 1, 2);
    let t1 = &a[0][1] * &minor(a, 1, 2, 0, 2);
    let t2 = &a[0][2] * &minor(a, 1, 2, 0, 1);
    &(&t0 - &t1) + &t2
}

pub fn trace(a: &Mat3) -> CycloElem {
    &(&a[0][0] + &a[1][1]) + &a[2][2]
}

/// Sum of the principal 2×2 minors.
pub fn principal_minor_sum(a: &Mat3) -> CycloElem {
    &(&minor(a, 0, 1, 0, 1) + &minor(a, 0, 2, 0, 2)) + &minor(a, 1, 2, 1, 2)
}

pub fn adjugate(a: &Mat3) -> Mat3 {
    let cof = |i: usize, j: usize| {
        let rows: Vec<usize> = (0..3).filter(|&r| r != i).collect();
        let cols: Vec<usize> = (0..3).filter(|&c| c != j).collect();
        let m = minor(a, rows[0], rows[1], cols[0], cols[1]);
        if (i + j) % 2 == 1 {
            -m
        } else {
            m
        }
    };
    // adj = transpose of the cofactor matrix
    std::array::from_fn(|i| std::array::from_fn(|j| cof(j, i)))
}

pub fn inverse(a: &Mat3) -> Result<Mat3> {
    let d = det(a);
    if d.is_zero() {
        return Err(Error::SingularMatrix);
    }
    let inv = d.inverse()?;
    Ok(scale(&adjugate(a), &inv))
}

/// Row-reduces in place and returns the pivot columns.
fn rref(rows: &mut Vec<Vec<CycloElem>>, ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].inverse().expect("nonzero pivot");
        for v in rows[r].iter_mut() {
            *v = &*v * &inv;
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                for j in 0..ncols {
                    let t = &rows[r][j] * &f;
                    rows[i][j] = &rows[i][j] - &t;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    pivots
}

/// Basis of `{v : rows·v = 0}`.
pub fn kernel(rows: &[Vec<CycloElem>], ncols: usize) -> Vec<Vec<CycloElem>> {
    let mut m = rows.to_vec();
    let pivots = rref(&mut m, ncols);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![CycloElem::zero(); ncols];
            v[f] = CycloElem::one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = -&m[r][f];
            }
            v
        })
        .collect()
}

pub fn rank(rows: &[Vec<CycloElem>], ncols: usize) -> usize {
    let mut m = rows.to_vec();
    rref(&mut m, ncols).len()
}

pub fn mat_rows(a: &Mat3) -> Vec<Vec<CycloElem>> {
    a.iter().map(|r| r.to_vec()).collect()
}

fn to_vec3(v: Vec<CycloElem>) -> Vec3 {
    v.try_into().expect("length 3")
}

pub fn kernel3(a: &Mat3) -> Vec<Vec3> {
    kernel(&mat_rows(a), 3).into_iter().map(to_vec3).collect()
}

/// Basis of the subspace of vectors orthogonal (bilinear pairing) to `basis`.
pub fn annihilator(basis: &[Vec3]) -> Vec<Vec3> {
    let rows: Vec<Vec<CycloElem>> = basis.iter().map(|v| v.to_vec()).collect();
    kernel(&rows, 3).into_iter().map(to_vec3).collect()
}

pub fn intersect(a: &[Vec3], b: &[Vec3]) -> Vec<Vec3> {
    let mut eqs = annihilator(a);
    eqs.extend(annihilator(b));
    annihilator(&eqs)
}

pub fn cross(a: &Vec3, b: &Vec3) -> Vec3 {
    [
        &(&a[1] * &b[2]) - &(&a[2] * &b[1]),
        &(&a[2] * &b[0]) - &(&a[0] * &b[2]),
        &(&a[0] * &b[1]) - &(&a[1] * &b[0]),
    ]
}

pub fn dot(a: &Vec3, b: &Vec3) -> CycloElem {
    let mut acc = CycloElem::zero();
    for k in 0..3 {
        if !a[k].is_zero() && !b[k].is_zero() {
            acc = &acc + &(&a[k] * &b[k]);
        }
    }
    acc
}

pub fn is_zero_vec(v: &Vec3) -> bool {
    v.iter().all(CycloElem::is_zero)
}

/// Matrix whose columns are `cols`.
pub fn from_columns(cols: [&Vec3; 3]) -> Mat3 {
    std::array::from_fn(|i| std::array::from_fn(|j| cols[j][i].clone()))
}

pub fn embed_mat(a: &Mat3, n: u32) -> Result<Mat3> {
    let mut out = identity();
    for i in 0..3 {
        for j in 0..3 {
            out[i][j] = a[i][j].embed_to(n)?;
        }
    }
    Ok(out)
}

pub fn mat_conductor(a: &Mat3) -> u32 {
    use num_integer::Integer;
    a.iter().flatten().fold(1, |acc, x| acc.lcm(&x.conductor()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(v: [[i64; 3]; 3]) -> Mat3 {
        std::array::from_fn(|i| std::array::from_fn(|j| CycloElem::from_int(v[i][j])))
    }

    #[test]
    fn inverse_and_det() {
        let a = m([[2, 1, 0], [0, 1, 3], [1, 0, 1]]);
        assert_eq!(det(&a), CycloElem::from_int(5));
        assert_eq!(mat_mul(&a, &inverse(&a).unwrap()), identity());
        assert_eq!(inverse(&m([[1, 2, 3], [2, 4, 6], [0, 0, 1]])), Err(Error::SingularMatrix));
    }

    #[test]
    fn kernels_and_intersections() {
        let a = m([[1, 1, 0], [0, 0, 0], [0, 0, 0]]);
        let k = kernel3(&a);
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(is_zero_vec(&mat_vec(&a, v)));
        }
        let xy = annihilator(&[m([[0, 0, 1], [0; 3], [0; 3]])[0].clone()]);
        let yz = annihilator(&[m([[1, 0, 0], [0; 3], [0; 3]])[0].clone()]);
        let meet = intersect(&xy, &yz);
        assert_eq!(meet.len(), 1);
        assert!(meet[0][0].is_zero() && meet[0][2].is_zero());
    }

    #[test]
    fn char_poly_coefficients() {
        let a = m([[1, 2, 0], [0, 3, 0], [4, 0, 5]]);
        assert_eq!(trace(&a), CycloElem::from_int(9));
        assert_eq!(principal_minor_sum(&a), CycloElem::from_int(3 + 5 + 15));
        assert_eq!(det(&a), CycloElem::from_int(15));
    }
}
