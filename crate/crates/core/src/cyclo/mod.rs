//! Exact arithmetic in cyclotomic fields `Q(ζₙ)`.
//!
//! An element is stored in the power basis `1, ζ, …, ζ^{φ(n)-1}` reduced
//! modulo the cyclotomic polynomial `Φₙ`, so equality within one field is a
//! coefficient comparison. Binary operations on elements of different
//! conductors embed both operands into `Q(ζ_lcm)` first.

mod parse;

pub use parse::parse_scalar;

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::upoly::{self, UPoly};

pub type Rational = BigRational;

/// Euler's totient.
pub fn euler_phi(n: u32) -> u32 {
    let mut n = n;
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

fn phi_cache() -> &'static RwLock<HashMap<u32, Arc<Vec<i64>>>> {
    static CACHE: OnceLock<RwLock<HashMap<u32, Arc<Vec<i64>>>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// Coefficients of `Φₙ`, lowest degree first. Computed by exact division of
/// `xⁿ - 1` by the cyclotomic polynomials of the proper divisors of `n`.
pub fn cyclotomic_poly(n: u32) -> Arc<Vec<i64>> {
    assert!(n >= 1, "cyclotomic polynomial of conductor 0");
    if let Some(p) = phi_cache().read().expect("poisoned cache").get(&n) {
        return Arc::clone(p);
    }
    let mut num: Vec<i128> = vec![0; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in divisors(n as u64) {
        let d = d as u32;
        if d == n {
            continue;
        }
        let den = cyclotomic_poly(d);
        num = monic_exact_div(&num, &den);
    }
    let poly: Vec<i64> = num
        .into_iter()
        .map(|c| i64::try_from(c).expect("cyclotomic coefficient overflow"))
        .collect();
    let poly = Arc::new(poly);
    phi_cache()
        .write()
        .expect("poisoned cache")
        .entry(n)
        .or_insert_with(|| Arc::clone(&poly));
    poly
}

fn monic_exact_div(num: &[i128], den: &[i64]) -> Vec<i128> {
    let dd = den.len() - 1;
    let mut r = num.to_vec();
    let mut q = vec![0i128; num.len() - dd];
    for i in (dd..r.len()).rev() {
        let c = r[i];
        if c == 0 {
            continue;
        }
        for (j, &dj) in den.iter().enumerate() {
            r[i - dd + j] -= c * dj as i128;
        }
        q[i - dd] = c;
    }
    debug_assert!(r.iter().all(|&c| c == 0), "inexact cyclotomic division");
    q
}

/// An element of `Q(ζₙ)` in canonical reduced form.
#[derive(Clone)]
pub struct CycloElem {
    n: u32,
    coeffs: Vec<Rational>,
}

impl CycloElem {
    /// Reduces `Σ raw[i] ζₙ^i` (any length) to canonical form.
    pub fn from_power_coeffs(n: u32, raw: &[Rational]) -> Self {
        assert!(n >= 1, "conductor must be positive");
        let nu = n as usize;
        let mut folded = vec![Rational::zero(); nu];
        for (i, c) in raw.iter().enumerate() {
            if !c.is_zero() {
                folded[i % nu] += c;
            }
        }
        Self::reduce_folded(n, folded)
    }

    fn reduce_folded(n: u32, mut a: Vec<Rational>) -> Self {
        let phi = cyclotomic_poly(n);
        let deg = phi.len() - 1;
        for i in (deg..a.len()).rev() {
            if a[i].is_zero() {
                continue;
            }
            let c = std::mem::replace(&mut a[i], Rational::zero());
            for (j, &pj) in phi.iter().enumerate().take(deg) {
                if pj != 0 {
                    a[i - deg + j] -= &c * Rational::from_integer(BigInt::from(pj));
                }
            }
        }
        a.truncate(deg);
        a.resize(deg, Rational::zero());
        CycloElem { n, coeffs: a }
    }

    pub fn zero() -> Self {
        CycloElem {
            n: 1,
            coeffs: vec![Rational::zero()],
        }
    }

    pub fn one() -> Self {
        Self::from_rational(Rational::one())
    }

    pub fn from_rational(q: Rational) -> Self {
        CycloElem {
            n: 1,
            coeffs: vec![q],
        }
    }

    pub fn from_int(v: i64) -> Self {
        Self::from_rational(Rational::from_integer(v.into()))
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        Self::from_rational(Rational::new(num.into(), den.into()))
    }

    /// `ζₙᵏ` (exponent taken modulo `n`).
    pub fn zeta(n: u32, k: i64) -> Self {
        assert!(n >= 1, "conductor must be positive");
        let e = k.rem_euclid(n as i64) as usize;
        let mut raw = vec![Rational::zero(); e + 1];
        raw[e] = Rational::one();
        Self::from_power_coeffs(n, &raw)
    }

    pub fn conductor(&self) -> u32 {
        self.n
    }

    /// Power-basis coefficients, length `φ(n)`.
    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        self.coeffs[1..]
            .iter()
            .all(Zero::is_zero)
            .then(|| &self.coeffs[0])
    }

    /// Single nonzero power-basis term `(c, i)` if the element is `c·ζⁱ`.
    fn single_term(&self) -> Option<(&Rational, usize)> {
        let mut found = None;
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                if found.is_some() {
                    return None;
                }
                found = Some((c, i));
            }
        }
        found
    }

    /// Image under `Q(ζₙ) → Q(ζ_N)`, `ζₙ ↦ ζ_N^{N/n}`.
    pub fn embed_to(&self, big: u32) -> Result<Self> {
        if big == 0 || !big.is_multiple_of(self.n) {
            return Err(Error::NotDivisible {
                from: self.n,
                to: big,
            });
        }
        if big == self.n {
            return Ok(self.clone());
        }
        let step = (big / self.n) as usize;
        let mut raw = vec![Rational::zero(); big as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                raw[(i * step) % big as usize] = c.clone();
            }
        }
        Ok(Self::reduce_folded(big, raw))
    }

    fn embed_unchecked(&self, big: u32) -> Self {
        self.embed_to(big).expect("conductor divides lcm")
    }

    fn aligned<'a>(a: &'a Self, b: &'a Self) -> (std::borrow::Cow<'a, Self>, std::borrow::Cow<'a, Self>) {
        use std::borrow::Cow;
        if a.n == b.n {
            (Cow::Borrowed(a), Cow::Borrowed(b))
        } else {
            let l = a.n.lcm(&b.n);
            let ea = if a.n == l { Cow::Borrowed(a) } else { Cow::Owned(a.embed_unchecked(l)) };
            let eb = if b.n == l { Cow::Borrowed(b) } else { Cow::Owned(b.embed_unchecked(l)) };
            (ea, eb)
        }
    }

    fn add_impl(&self, o: &Self) -> Self {
        let (a, b) = Self::aligned(self, o);
        let coeffs = a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x + y).collect();
        CycloElem { n: a.n, coeffs }
    }

    fn sub_impl(&self, o: &Self) -> Self {
        let (a, b) = Self::aligned(self, o);
        let coeffs = a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x - y).collect();
        CycloElem { n: a.n, coeffs }
    }

    fn mul_impl(&self, o: &Self) -> Self {
        let (a, b) = Self::aligned(self, o);
        let n = a.n;
        if let Some(q) = a.as_rational() {
            return b.scale(q);
        }
        if let Some(q) = b.as_rational() {
            return a.scale(q);
        }
        let nu = n as usize;
        let mut folded = vec![Rational::zero(); nu];
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                folded[(i + j) % nu] += x * y;
            }
        }
        Self::reduce_folded(n, folded)
    }

    pub fn scale(&self, q: &Rational) -> Self {
        CycloElem {
            n: self.n,
            coeffs: self.coeffs.iter().map(|c| c * q).collect(),
        }
    }

    /// Addition that refuses to embed across conductors.
    pub fn add_in_field(&self, o: &Self) -> Result<Self> {
        if self.n != o.n {
            return Err(Error::ConductorMismatch(self.n, o.n));
        }
        Ok(self.add_impl(o))
    }

    /// Multiplication that refuses to embed across conductors.
    pub fn mul_in_field(&self, o: &Self) -> Result<Self> {
        if self.n != o.n {
            return Err(Error::ConductorMismatch(self.n, o.n));
        }
        Ok(self.mul_impl(o))
    }

    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let Some((c, i)) = self.single_term() {
            let inv = Self::zeta(self.n, -(i as i64));
            return Ok(inv.scale(&c.recip()));
        }
        let phi: Vec<Rational> = cyclotomic_poly(self.n)
            .iter()
            .map(|&c| Rational::from_integer(c.into()))
            .collect();
        let a = UPoly::new(self.coeffs.clone());
        let (g, s, _) = a.ext_gcd(&UPoly::new(phi));
        debug_assert_eq!(g.degree(), Some(0), "Φₙ is irreducible");
        Ok(Self::from_power_coeffs(self.n, s.coeffs()))
    }

    pub fn checked_div(&self, o: &Self) -> Result<Self> {
        Ok(self.mul_impl(&o.inverse()?))
    }

    /// Integer power; negative exponents invert first.
    pub fn pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.inverse()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = CycloElem::one();
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_impl(&sq);
            }
            e >>= 1;
            if e > 0 {
                sq = sq.mul_impl(&sq);
            }
        }
        Ok(acc)
    }

    /// Least `k ≥ 1` with `xᵏ = 1`, searched up to `lcm(2, n)`; every root of
    /// unity in `Q(ζₙ)` has order dividing that bound.
    pub fn root_of_unity_order(&self) -> Option<u64> {
        if self.is_zero() {
            return None;
        }
        let bound = (self.n as u64).lcm(&2);
        let mut p = self.clone();
        for k in 1..=bound {
            if p.is_one() {
                return Some(k);
            }
            p = p.mul_impl(self);
        }
        None
    }

    /// Textual form in the scalar syntax, with `z` standing for `ζₙ`.
    pub fn to_expr(&self) -> String {
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            let body = match i {
                0 => mag.to_string(),
                _ => {
                    let z = if i == 1 { "z".to_string() } else { format!("z^{i}") };
                    if mag.is_one() {
                        z
                    } else {
                        format!("{mag}*{z}")
                    }
                }
            };
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            out.push_str(&body);
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }

    /// Hashable representation valid for comparing elements of one conductor.
    pub fn key(&self) -> (u32, Vec<Rational>) {
        (self.n, self.coeffs.clone())
    }

    pub(crate) fn extend_key(&self, out: &mut Vec<Rational>) {
        out.extend(self.coeffs.iter().cloned());
    }
}

impl PartialEq for CycloElem {
    fn eq(&self, other: &Self) -> bool {
        if self.n == other.n {
            return self.coeffs == other.coeffs;
        }
        let (a, b) = Self::aligned(self, other);
        a.coeffs == b.coeffs
    }
}

impl Eq for CycloElem {}

impl fmt::Debug for CycloElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]@z{}", self.to_expr(), self.n)
    }
}

impl fmt::Display for CycloElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.n == 1 {
            f.write_str(&self.to_expr())
        } else {
            write!(f, "{} (z = ζ_{})", self.to_expr(), self.n)
        }
    }
}

impl From<i64> for CycloElem {
    fn from(v: i64) -> Self {
        CycloElem::from_int(v)
    }
}

impl From<Rational> for CycloElem {
    fn from(q: Rational) -> Self {
        CycloElem::from_rational(q)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident, $imp:ident) => {
        impl $tr<&CycloElem> for &CycloElem {
            type Output = CycloElem;
            fn $m(self, rhs: &CycloElem) -> CycloElem {
                self.$imp(rhs)
            }
        }
        impl $tr<CycloElem> for CycloElem {
            type Output = CycloElem;
            fn $m(self, rhs: CycloElem) -> CycloElem {
                (&self).$imp(&rhs)
            }
        }
        impl $tr<&CycloElem> for CycloElem {
            type Output = CycloElem;
            fn $m(self, rhs: &CycloElem) -> CycloElem {
                (&self).$imp(rhs)
            }
        }
        impl $tr<CycloElem> for &CycloElem {
            type Output = CycloElem;
            fn $m(self, rhs: CycloElem) -> CycloElem {
                self.$imp(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, add_impl);
forward_binop!(Sub, sub, sub_impl);
forward_binop!(Mul, mul, mul_impl);

impl Div<&CycloElem> for &CycloElem {
    type Output = CycloElem;
    /// Panics on division by zero; use [`CycloElem::checked_div`] otherwise.
    fn div(self, rhs: &CycloElem) -> CycloElem {
        self.checked_div(rhs).expect("division by zero")
    }
}

impl Div<CycloElem> for CycloElem {
    type Output = CycloElem;
    fn div(self, rhs: CycloElem) -> CycloElem {
        &self / &rhs
    }
}

impl Neg for &CycloElem {
    type Output = CycloElem;
    fn neg(self) -> CycloElem {
        CycloElem {
            n: self.n,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for CycloElem {
    type Output = CycloElem;
    fn neg(self) -> CycloElem {
        -&self
    }
}

impl upoly::Field for CycloElem {
    fn zero() -> Self {
        CycloElem::zero()
    }
    fn one() -> Self {
        CycloElem::one()
    }
    fn from_int(v: i64) -> Self {
        CycloElem::from_int(v)
    }
    fn is_zero(&self) -> bool {
        CycloElem::is_zero(self)
    }
    fn plus(&self, o: &Self) -> Self {
        self.add_impl(o)
    }
    fn minus(&self, o: &Self) -> Self {
        self.sub_impl(o)
    }
    fn times(&self, o: &Self) -> Self {
        self.mul_impl(o)
    }
    fn negated(&self) -> Self {
        -self
    }
    fn recip(&self) -> Self {
        self.inverse().expect("inverse of zero")
    }
}

#[derive(Serialize, Deserialize)]
struct CycloRepr {
    zeta: u32,
    expr: String,
}

impl Serialize for CycloElem {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        CycloRepr {
            zeta: self.n,
            expr: self.to_expr(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for CycloElem {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = CycloRepr::deserialize(d)?;
        if r.zeta == 0 {
            return Err(serde::de::Error::custom("conductor must be positive"));
        }
        let v = parse_scalar(&r.expr, r.zeta).map_err(serde::de::Error::custom)?;
        // keep the declared conductor even when the value lies in a subfield
        v.embed_to(r.zeta).map_err(serde::de::Error::custom)
    }
}

/// Finds `r` with `r³ = e` among `ζ_N^j·q` and `ζ_N^j·q·√-3` for rational `q`,
/// where `N = lcm(n, 36)`.
pub fn cube_root(e: &CycloElem) -> Option<CycloElem> {
    if e.is_zero() {
        return Some(CycloElem::zero());
    }
    if let Some(m) = e.root_of_unity_order() {
        let m32 = m as u32;
        for j in 0..m as i64 {
            if CycloElem::zeta(m32, j) == *e {
                return Some(CycloElem::zeta(3 * m32, j));
            }
        }
    }
    let big = e.conductor().lcm(&36);
    let e = e.embed_unchecked(big);
    // √-3 = 2ζ₃ + 1, (√-3)³ = -3√-3
    let sqrt_m3 = &(&CycloElem::zeta(3, 1) * &CycloElem::from_int(2)) + &CycloElem::one();
    let sqrt_m3_cubed = &(&sqrt_m3 * &sqrt_m3) * &sqrt_m3;
    let surd_inv = sqrt_m3_cubed.inverse().ok()?;
    for j in 0..big as i64 {
        let unit = CycloElem::zeta(big, j);
        let rest = &e * &CycloElem::zeta(big, -3 * j);
        if let Some(q) = rest.as_rational().and_then(rational_cube_root) {
            return Some(unit.scale(&q));
        }
        let rest2 = &rest * &surd_inv;
        if let Some(q) = rest2.as_rational().and_then(rational_cube_root) {
            return Some(&unit * &sqrt_m3.scale(&q));
        }
    }
    None
}

fn rational_cube_root(q: &Rational) -> Option<Rational> {
    let n = integer_cube_root(q.numer())?;
    let d = integer_cube_root(q.denom())?;
    Some(Rational::new(n, d))
}

fn integer_cube_root(v: &BigInt) -> Option<BigInt> {
    let r = v.abs().cbrt();
    if (&r * &r * &r) == v.abs() {
        Some(if v.is_negative() { -r } else { r })
    } else {
        None
    }
}
