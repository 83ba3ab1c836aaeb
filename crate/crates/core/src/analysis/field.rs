//! Univariate polynomials over Q and over a simple algebraic extension
//! `K = Q[x]/(p)`, enough to work modulo zero-dimensional ideals of the
//! shape `(p(g), G(g, h))`.

use crate::poly::{MultiPoly, VarList};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub type Q = BigRational;

/// Dense univariate polynomial over Q, low degree first, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QPoly(pub Vec<Q>);

impl QPoly {
    pub fn zero() -> Self {
        QPoly(Vec::new())
    }

    pub fn constant(c: Q) -> Self {
        QPoly(vec![c]).trim()
    }

    fn trim(mut self) -> Self {
        while self.0.last().is_some_and(|c| c.is_zero()) {
            self.0.pop();
        }
        self
    }

    /// `f` viewed as a polynomial in variable `x`; must not involve others.
    pub fn from_multipoly(f: &MultiPoly, x: usize) -> Option<Self> {
        let mut c = vec![Q::zero(); f.degree_in(x) as usize + 1];
        for (m, k) in f.terms() {
            if (0..f.nvars()).any(|i| i != x && m.exponent(i) > 0) {
                return None;
            }
            c[m.exponent(x) as usize] += Q::from_integer(k.clone());
        }
        Some(QPoly(c).trim())
    }

    /// Primitive integer multiple as a polynomial in variable `x` of `vars`.
    pub fn to_multipoly(&self, vars: &VarList, x: usize) -> MultiPoly {
        let coeffs = integral_multiple(&self.0);
        let cs: Vec<MultiPoly> = coeffs.into_iter().map(|c| MultiPoly::constant(vars, c)).collect();
        MultiPoly::from_univariate(vars, x, &cs).normalized()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn deg(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    pub fn lc(&self) -> &Q {
        self.0.last().expect("nonzero polynomial")
    }

    pub fn add(&self, o: &QPoly) -> QPoly {
        let n = self.0.len().max(o.0.len());
        let z = Q::zero();
        QPoly((0..n).map(|i| self.0.get(i).unwrap_or(&z) + o.0.get(i).unwrap_or(&z)).collect()).trim()
    }

    pub fn neg(&self) -> QPoly {
        QPoly(self.0.iter().map(|c| -c).collect())
    }

    pub fn sub(&self, o: &QPoly) -> QPoly {
        self.add(&o.neg())
    }

    pub fn scale(&self, k: &Q) -> QPoly {
        QPoly(self.0.iter().map(|c| c * k).collect()).trim()
    }

    pub fn mul(&self, o: &QPoly) -> QPoly {
        if self.is_zero() || o.is_zero() {
            return QPoly::zero();
        }
        let mut c = vec![Q::zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in o.0.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        QPoly(c).trim()
    }

    pub fn divrem(&self, d: &QPoly) -> (QPoly, QPoly) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let mut r = self.0.clone();
        if r.len() < d.0.len() {
            return (QPoly::zero(), self.clone());
        }
        let mut q = vec![Q::zero(); r.len() - d.0.len() + 1];
        let inv = d.lc().recip();
        for k in (0..q.len()).rev() {
            let c = &r[k + d.deg()] * &inv;
            if c.is_zero() {
                continue;
            }
            for (j, dj) in d.0.iter().enumerate() {
                r[k + j] -= &c * dj;
            }
            q[k] = c;
        }
        (QPoly(q).trim(), QPoly(r).trim())
    }

    pub fn rem(&self, d: &QPoly) -> QPoly {
        self.divrem(d).1
    }

    pub fn monic(&self) -> QPoly {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&self.lc().recip())
    }

    pub fn gcd(&self, o: &QPoly) -> QPoly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Inverse of `self` modulo `m`, if they are coprime.
    pub fn inverse_mod(&self, m: &QPoly) -> Option<QPoly> {
        let (mut r0, mut r1) = (m.clone(), self.rem(m));
        let (mut s0, mut s1) = (QPoly::zero(), QPoly::constant(Q::one()));
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1);
            let s = s0.sub(&q.mul(&s1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
        }
        if r0.deg() != 0 {
            return None;
        }
        Some(s0.scale(&r0.0[0].recip()).rem(m))
    }
}

/// Primitive integer vector proportional to `v`.
pub fn integral_multiple(v: &[Q]) -> Vec<BigInt> {
    let mut den = BigInt::one();
    for c in v {
        den = den.lcm(c.denom());
    }
    let mut ints: Vec<BigInt> = v.iter().map(|c| (c * Q::from_integer(den.clone())).to_integer()).collect();
    let mut g = BigInt::zero();
    for c in &ints {
        g = g.gcd(c);
    }
    if !g.is_zero() {
        for c in ints.iter_mut() {
            *c = &*c / &g;
        }
    }
    ints
}

/// `Q[x]/(p)` for an irreducible `p`.
#[derive(Clone, Debug)]
pub struct NumberField {
    pub modulus: QPoly,
}

impl NumberField {
    pub fn new(p: &QPoly) -> Self {
        NumberField { modulus: p.monic() }
    }

    pub fn degree(&self) -> usize {
        self.modulus.deg()
    }

    pub fn reduce(&self, a: &QPoly) -> QPoly {
        a.rem(&self.modulus)
    }

    pub fn mul(&self, a: &QPoly, b: &QPoly) -> QPoly {
        self.reduce(&a.mul(b))
    }

    pub fn inv(&self, a: &QPoly) -> QPoly {
        a.inverse_mod(&self.modulus).expect("nonzero element of a field")
    }

    /// Coordinates of `a` in the power basis.
    pub fn coords(&self, a: &QPoly) -> Vec<Q> {
        let mut c = a.0.clone();
        c.resize(self.degree(), Q::zero());
        c
    }

    /// `f(α, h)` for `f ∈ Z[g, h]`, with `g` variable `gx` and `h` variable `hx`.
    pub fn specialise(&self, f: &MultiPoly, gx: usize, hx: usize) -> KPoly {
        let mut c: Vec<QPoly> = vec![QPoly::zero(); f.degree_in(hx) as usize + 1];
        for (m, k) in f.terms() {
            let mut t = vec![Q::zero(); m.exponent(gx) as usize + 1];
            t[m.exponent(gx) as usize] = Q::from_integer(k.clone());
            let j = m.exponent(hx) as usize;
            c[j] = c[j].add(&QPoly(t));
        }
        KPoly(c.into_iter().map(|x| self.reduce(&x)).collect()).trim()
    }
}

/// Univariate polynomial over a [`NumberField`], low degree first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KPoly(pub Vec<QPoly>);

impl KPoly {
    fn trim(mut self) -> Self {
        while self.0.last().is_some_and(|c| c.is_zero()) {
            self.0.pop();
        }
        self
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn deg(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    pub fn rem(&self, d: &KPoly, k: &NumberField) -> KPoly {
        assert!(!d.is_zero(), "division by zero polynomial");
        let mut r = self.0.clone();
        let inv = k.inv(d.0.last().unwrap());
        while r.len() >= d.0.len() && !r.is_empty() {
            let shift = r.len() - d.0.len();
            let c = k.mul(r.last().unwrap(), &inv);
            for (j, dj) in d.0.iter().enumerate() {
                r[shift + j] = k.reduce(&r[shift + j].sub(&c.mul(dj)));
            }
            r.pop();
            while r.last().is_some_and(|x| x.is_zero()) {
                r.pop();
            }
        }
        KPoly(r).trim()
    }

    pub fn monic(&self, k: &NumberField) -> KPoly {
        match self.0.last() {
            None => self.clone(),
            Some(lc) => {
                let inv = k.inv(lc);
                KPoly(self.0.iter().map(|c| k.mul(c, &inv)).collect())
            }
        }
    }

    pub fn gcd(&self, o: &KPoly, k: &NumberField) -> KPoly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b, k);
            a = b;
            b = r;
        }
        a.monic(k)
    }

    /// Whether every coefficient lies in Q.
    pub fn is_rational(&self) -> bool {
        self.0.iter().all(|c| c.deg() == 0)
    }

    /// Lift to `Z[g, h]` (representatives of degree `< [K:Q]` in `g`),
    /// cleared of denominators and made primitive.
    pub fn lift(&self, vars: &VarList, gx: usize, hx: usize) -> MultiPoly {
        let mut flat: Vec<Q> = Vec::new();
        let mut idx: Vec<(usize, usize)> = Vec::new();
        for (j, c) in self.0.iter().enumerate() {
            for (i, a) in c.0.iter().enumerate() {
                if !a.is_zero() {
                    flat.push(a.clone());
                    idx.push((i, j));
                }
            }
        }
        let ints = integral_multiple(&flat);
        let terms = idx.into_iter().zip(ints).map(|((i, j), c)| {
            let mut e = vec![0u32; vars.len()];
            e[gx] = i as u32;
            e[hx] = j as u32;
            (crate::poly::Monomial::from_exponents(&e), c)
        });
        MultiPoly::from_terms(vars, terms).normalized()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qp(v: &[i64]) -> QPoly {
        QPoly(v.iter().map(|&c| Q::from_integer(c.into())).collect()).trim()
    }

    #[test]
    fn field_inverse() {
        // in Q(√2): (1 + x)⁻¹ = x − 1
        let k = NumberField::new(&qp(&[-2, 0, 1]));
        let inv = k.inv(&qp(&[1, 1]));
        assert_eq!(inv, qp(&[-1, 1]));
        assert_eq!(k.mul(&inv, &qp(&[1, 1])), qp(&[1]));
    }

    #[test]
    fn gcd_over_extension() {
        // over Q(√2): gcd(h² − 2, h − x) = h − x
        let v = VarList::new(&["g", "h"]);
        let k = NumberField::new(&qp(&[-2, 0, 1]));
        let a = k.specialise(&MultiPoly::parse("h^2 - 2", &v).unwrap(), 0, 1);
        let b = k.specialise(&MultiPoly::parse("h - g", &v).unwrap(), 0, 1);
        let g = a.gcd(&b, &k);
        assert_eq!(g.deg(), 1);
        assert_eq!(g.lift(&v, 0, 1), MultiPoly::parse("g - h", &v).unwrap());
        assert!(!g.is_rational());
    }

    #[test]
    fn integral_vectors() {
        let v = [Q::new(1.into(), 2.into()), Q::new((-3).into(), 4.into())];
        assert_eq!(integral_multiple(&v), vec![BigInt::from(2), BigInt::from(-3)]);
    }
}
