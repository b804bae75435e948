//! Dense univariate polynomials over an exact field.
//!
//! Used for the reduction and inversion machinery of the cyclotomic fields
//! (over `Q`) and for the elimination steps of the smoothness test (over
//! `Q(ζ)`).

use std::fmt::Debug;

use num_rational::BigRational;

/// Minimal exact-field interface shared by `Q` and `Q(ζₙ)`.
pub trait Field: Clone + PartialEq + Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_int(v: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn plus(&self, o: &Self) -> Self;
    fn minus(&self, o: &Self) -> Self;
    fn times(&self, o: &Self) -> Self;
    fn negated(&self) -> Self;
    /// Multiplicative inverse. Panics on zero; callers only invert leading
    /// coefficients, which are nonzero by construction.
    fn recip(&self) -> Self;
}

impl Field for BigRational {
    fn zero() -> Self {
        <BigRational as num_traits::Zero>::zero()
    }
    fn one() -> Self {
        <BigRational as num_traits::One>::one()
    }
    fn from_int(v: i64) -> Self {
        BigRational::from_integer(v.into())
    }
    fn is_zero(&self) -> bool {
        <BigRational as num_traits::Zero>::is_zero(self)
    }
    fn plus(&self, o: &Self) -> Self {
        self + o
    }
    fn minus(&self, o: &Self) -> Self {
        self - o
    }
    fn times(&self, o: &Self) -> Self {
        self * o
    }
    fn negated(&self) -> Self {
        -self
    }
    fn recip(&self) -> Self {
        num_traits::Inv::inv(self)
    }
}

/// Coefficients are stored low degree first with no trailing zeros; the zero
/// polynomial is the empty vector.
#[derive(Clone, Debug, PartialEq)]
pub struct UPoly<F> {
    coeffs: Vec<F>,
}

impl<F: Field> UPoly<F> {
    pub fn new(mut coeffs: Vec<F>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UPoly { coeffs }
    }

    pub fn zero() -> Self {
        UPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: F) -> Self {
        Self::new(vec![c])
    }

    pub fn monomial(c: F, deg: usize) -> Self {
        let mut v = vec![F::zero(); deg + 1];
        v[deg] = c;
        Self::new(v)
    }

    /// `x - a`
    pub fn linear_root(a: &F) -> Self {
        Self::new(vec![a.negated(), F::one()])
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<F> {
        self.coeffs
    }

    pub fn coeff(&self, i: usize) -> F {
        self.coeffs.get(i).cloned().unwrap_or_else(F::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lc(&self) -> Option<&F> {
        self.coeffs.last()
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i).plus(&o.coeff(i))).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i).minus(&o.coeff(i))).collect())
    }

    pub fn neg(&self) -> Self {
        UPoly {
            coeffs: self.coeffs.iter().map(F::negated).collect(),
        }
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self::new(self.coeffs.iter().map(|a| a.times(c)).collect())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut out = vec![F::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                out[i + j] = out[i + j].plus(&a.times(b));
            }
        }
        Self::new(out)
    }

    pub fn eval(&self, x: &F) -> F {
        let mut acc = F::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.times(x).plus(c);
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c.times(&F::from_int(i as i64)))
                .collect(),
        )
    }

    pub fn monic(&self) -> Self {
        match self.lc() {
            None => Self::zero(),
            Some(lc) => self.scale(&lc.recip()),
        }
    }

    /// Euclidean division; panics if `d` is zero.
    pub fn divrem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("polynomial division by zero");
        let inv = d.coeffs[dd].recip();
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut q = vec![F::zero(); r.len() - dd];
        for i in (dd..r.len()).rev() {
            if r[i].is_zero() {
                continue;
            }
            let c = r[i].times(&inv);
            for j in 0..=dd {
                r[i - dd + j] = r[i - dd + j].minus(&c.times(&d.coeffs[j]));
            }
            q[i - dd] = c;
        }
        r.truncate(dd);
        (Self::new(q), Self::new(r))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.divrem(d).1
    }

    /// Monic greatest common divisor (zero iff both inputs are zero).
    pub fn gcd(&self, o: &Self) -> Self {
        let mut a = self.clone();
        let mut b = o.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Returns `(g, s, t)` with `s·self + t·o = g`, `g` monic.
    pub fn ext_gcd(&self, o: &Self) -> (Self, Self, Self) {
        let (mut r0, mut r1) = (self.clone(), o.clone());
        let (mut s0, mut s1) = (Self::constant(F::one()), Self::zero());
        let (mut t0, mut t1) = (Self::zero(), Self::constant(F::one()));
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1);
            let s = s0.sub(&q.mul(&s1));
            let t = t0.sub(&q.mul(&t1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
            t0 = std::mem::replace(&mut t1, t);
        }
        match r0.lc().cloned() {
            None => (r0, s0, t0),
            Some(lc) => {
                let inv = lc.recip();
                (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
            }
        }
    }

    /// Squarefree part `p / gcd(p, p')`, made monic.
    pub fn squarefree(&self) -> Self {
        if self.degree().unwrap_or(0) == 0 {
            return self.monic();
        }
        let g = self.gcd(&self.derivative());
        self.divrem(&g).0.monic()
    }

    /// Multiplicity of `a` as a root (0 if not a root). Panics on the zero
    /// polynomial.
    pub fn root_multiplicity(&self, a: &F) -> usize {
        assert!(!self.is_zero(), "root multiplicity of the zero polynomial");
        let lin = Self::linear_root(a);
        let mut p = self.clone();
        let mut k = 0;
        loop {
            let (q, r) = p.divrem(&lin);
            if !r.is_zero() {
                return k;
            }
            k += 1;
            p = q;
        }
    }
}

/// Interpolates the unique polynomial of degree `< xs.len()` through the
/// given points (Newton divided differences). The abscissae must be distinct.
pub fn interpolate<F: Field>(xs: &[F], ys: &[F]) -> UPoly<F> {
    let n = xs.len();
    let mut dd = ys.to_vec();
    for level in 1..n {
        for i in (level..n).rev() {
            let num = dd[i].minus(&dd[i - 1]);
            let den = xs[i].minus(&xs[i - level]);
            dd[i] = num.times(&den.recip());
        }
    }
    let mut acc = UPoly::zero();
    for i in (0..n).rev() {
        acc = acc
            .mul(&UPoly::linear_root(&xs[i]))
            .add(&UPoly::constant(dd[i].clone()));
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(v: i64) -> BigRational {
        BigRational::from_int(v)
    }

    fn p(v: &[i64]) -> UPoly<BigRational> {
        UPoly::new(v.iter().map(|&c| q(c)).collect())
    }

    #[test]
    fn divrem_and_gcd() {
        // (x^2 - 1) = (x - 1)(x + 1)
        let a = p(&[-1, 0, 1]);
        let b = p(&[-1, 1]);
        let (qq, r) = a.divrem(&b);
        assert_eq!(qq, p(&[1, 1]));
        assert!(r.is_zero());
        assert_eq!(a.gcd(&p(&[1, 1])), p(&[1, 1]));
        assert_eq!(p(&[1, 0, 1]).gcd(&p(&[-1, 1])), p(&[1]));
    }

    #[test]
    fn ext_gcd_bezout() {
        let a = p(&[1, 2, 0, 5]);
        let b = p(&[3, 0, 1]);
        let (g, s, t) = a.ext_gcd(&b);
        assert_eq!(s.mul(&a).add(&t.mul(&b)), g);
        assert_eq!(g, p(&[1]));
    }

    #[test]
    fn squarefree_and_multiplicity() {
        // (x-1)^3 (x+2)
        let f = p(&[-1, 1]).mul(&p(&[-1, 1])).mul(&p(&[-1, 1])).mul(&p(&[2, 1]));
        assert_eq!(f.squarefree(), p(&[-1, 1]).mul(&p(&[2, 1])));
        assert_eq!(f.root_multiplicity(&q(1)), 3);
        assert_eq!(f.root_multiplicity(&q(-2)), 1);
        assert_eq!(f.root_multiplicity(&q(5)), 0);
    }

    #[test]
    fn interpolation_recovers_polynomial() {
        let f = p(&[7, -3, 0, 2]);
        let xs: Vec<_> = (0..4).map(q).collect();
        let ys: Vec<_> = xs.iter().map(|x| f.eval(x)).collect();
        assert_eq!(interpolate(&xs, &ys), f);
    }
}
