//! Dense univariate polynomials over a word-size prime field.

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Polynomial over F_p, coefficients low to high, no trailing zeros.
/// The prime must satisfy `p < 2^31` so products fit in a `u64`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FpPoly {
    p: u64,
    c: Vec<u64>,
}

pub fn inv_mod(a: u64, p: u64) -> u64 {
    assert!(!a.is_multiple_of(p), "inverse of zero mod {p}");
    // extended Euclid on i128
    let (mut r0, mut r1) = (p as i128, (a % p) as i128);
    let (mut s0, mut s1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    s0.rem_euclid(p as i128) as u64
}

impl FpPoly {
    pub fn new(p: u64, mut c: Vec<u64>) -> Self {
        for x in c.iter_mut() {
            *x %= p;
        }
        while c.last() == Some(&0) {
            c.pop();
        }
        FpPoly { p, c }
    }

    pub fn zero(p: u64) -> Self {
        FpPoly { p, c: vec![] }
    }

    pub fn one(p: u64) -> Self {
        FpPoly { p, c: vec![1] }
    }

    /// The polynomial `x`.
    pub fn x(p: u64) -> Self {
        FpPoly { p, c: vec![0, 1] }
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        if self.c.is_empty() {
            None
        } else {
            Some(self.c.len() - 1)
        }
    }

    pub fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn lc(&self) -> u64 {
        *self.c.last().unwrap_or(&0)
    }

    pub fn is_one(&self) -> bool {
        self.c == [1]
    }

    pub fn monic(&self) -> FpPoly {
        if self.is_zero() {
            return self.clone();
        }
        let inv = inv_mod(self.lc(), self.p);
        self.scale(inv)
    }

    pub fn scale(&self, k: u64) -> FpPoly {
        let p = self.p;
        FpPoly::new(p, self.c.iter().map(|a| a * (k % p) % p).collect())
    }

    pub fn add(&self, o: &FpPoly) -> FpPoly {
        let n = self.c.len().max(o.c.len());
        let mut c = vec![0u64; n];
        for (i, x) in c.iter_mut().enumerate() {
            *x = (self.c.get(i).unwrap_or(&0) + o.c.get(i).unwrap_or(&0)) % self.p;
        }
        FpPoly::new(self.p, c)
    }

    pub fn sub(&self, o: &FpPoly) -> FpPoly {
        let n = self.c.len().max(o.c.len());
        let mut c = vec![0u64; n];
        for (i, x) in c.iter_mut().enumerate() {
            *x = (self.c.get(i).unwrap_or(&0) + self.p - o.c.get(i).unwrap_or(&0)) % self.p;
        }
        FpPoly::new(self.p, c)
    }

    pub fn mul(&self, o: &FpPoly) -> FpPoly {
        if self.is_zero() || o.is_zero() {
            return FpPoly::zero(self.p);
        }
        let p = self.p;
        let mut c = vec![0u64; self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if *a == 0 {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                c[i + j] = (c[i + j] + a * b) % p;
            }
        }
        FpPoly::new(p, c)
    }

    pub fn divrem(&self, d: &FpPoly) -> (FpPoly, FpPoly) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let p = self.p;
        if self.c.len() < d.c.len() {
            return (FpPoly::zero(p), self.clone());
        }
        let inv = inv_mod(d.lc(), p);
        let mut r = self.c.clone();
        let dd = d.c.len() - 1;
        let mut q = vec![0u64; r.len() - dd];
        for k in (0..q.len()).rev() {
            let coef = r[k + dd] * inv % p;
            q[k] = coef;
            if coef == 0 {
                continue;
            }
            for (j, b) in d.c.iter().enumerate() {
                r[k + j] = (r[k + j] + p - coef * b % p) % p;
            }
        }
        (FpPoly::new(p, q), FpPoly::new(p, r))
    }

    pub fn rem(&self, d: &FpPoly) -> FpPoly {
        self.divrem(d).1
    }

    /// Monic gcd (zero if both are zero).
    pub fn gcd(&self, o: &FpPoly) -> FpPoly {
        let mut a = self.clone();
        let mut b = o.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `(g, s, t)` with `s*self + t*o = g`, `g` monic.
    pub fn ext_gcd(&self, o: &FpPoly) -> (FpPoly, FpPoly, FpPoly) {
        let p = self.p;
        let (mut r0, mut r1) = (self.clone(), o.clone());
        let (mut s0, mut s1) = (FpPoly::one(p), FpPoly::zero(p));
        let (mut t0, mut t1) = (FpPoly::zero(p), FpPoly::one(p));
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1);
            r0 = r1;
            r1 = r;
            let s2 = s0.sub(&q.mul(&s1));
            s0 = s1;
            s1 = s2;
            let t2 = t0.sub(&q.mul(&t1));
            t0 = t1;
            t1 = t2;
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = inv_mod(r0.lc(), p);
        (r0.scale(inv), s0.scale(inv), t0.scale(inv))
    }

    pub fn derivative(&self) -> FpPoly {
        let p = self.p;
        FpPoly::new(
            p,
            self.c.iter().enumerate().skip(1).map(|(i, a)| (i as u64 % p) * a % p).collect(),
        )
    }

    /// `self^e mod m`.
    pub fn pow_mod(&self, e: &BigUint, m: &FpPoly) -> FpPoly {
        let mut result = FpPoly::one(self.p).rem(m);
        let base = self.rem(m);
        let bits = e.bits();
        for i in (0..bits).rev() {
            result = result.mul(&result).rem(m);
            if e.bit(i) {
                result = result.mul(&base).rem(m);
            }
        }
        result
    }

    pub fn eval(&self, x: u64) -> u64 {
        let mut acc = 0u64;
        for a in self.c.iter().rev() {
            acc = (acc * x + a) % self.p;
        }
        acc
    }

    pub fn is_squarefree(&self) -> bool {
        if self.deg() == 0 {
            return true;
        }
        let d = self.derivative();
        if d.is_zero() {
            return false;
        }
        self.gcd(&d).is_one()
    }
}

/// Distinct-degree factorisation of a monic squarefree polynomial:
/// pairs `(g_d, d)` where `g_d` is the product of irreducible factors of degree `d`.
pub fn distinct_degree(f: &FpPoly) -> Vec<(FpPoly, usize)> {
    let p = f.prime();
    let mut out = Vec::new();
    let mut rest = f.clone();
    let x = FpPoly::x(p);
    let mut h = x.clone();
    let pe = BigUint::from(p);
    let mut d = 0;
    while rest.deg() >= 2 * (d + 1) {
        d += 1;
        h = h.pow_mod(&pe, &rest);
        let g = h.sub(&x).gcd(&rest);
        if !g.is_one() {
            rest = rest.divrem(&g).0;
            h = h.rem(&rest);
            out.push((g, d));
        }
    }
    if rest.deg() > 0 {
        let dd = rest.deg();
        out.push((rest, dd));
    }
    out
}

/// Equal-degree splitting (Cantor–Zassenhaus, odd `p`).
pub fn equal_degree(f: &FpPoly, d: usize, rng: &mut ChaCha8Rng) -> Vec<FpPoly> {
    let p = f.prime();
    let n = f.deg();
    if n == d {
        return vec![f.clone()];
    }
    let e = (BigUint::from(p).pow(d as u32) - 1u32) / 2u32;
    loop {
        let a = FpPoly::new(p, (0..n).map(|_| rng.gen_range(0..p)).collect());
        if a.deg() == 0 {
            continue;
        }
        let g = a.gcd(f);
        let split = if !g.is_one() {
            g
        } else {
            let b = a.pow_mod(&e, f).sub(&FpPoly::one(p));
            b.gcd(f)
        };
        if !split.is_one() && split.deg() < n {
            let other = f.divrem(&split).0.monic();
            let mut out = equal_degree(&split, d, rng);
            out.extend(equal_degree(&other, d, rng));
            return out;
        }
    }
}

/// Monic irreducible factors of a squarefree polynomial, sorted.
pub fn factor_squarefree(f: &FpPoly) -> Vec<FpPoly> {
    let monic = f.monic();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed ^ f.prime());
    let mut out = Vec::new();
    for (g, d) in distinct_degree(&monic) {
        out.extend(equal_degree(&g, d, &mut rng));
    }
    out.sort();
    out
}

/// Number of irreducible factors (cheap: uses only distinct-degree data).
pub fn count_factors(f: &FpPoly) -> usize {
    distinct_degree(&f.monic()).iter().map(|(g, d)| g.deg() / d).sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factor_small() {
        let p = 101;
        // (x+1)(x+2)(x^2+1) has x^2+1 irreducible mod 101? 101 ≡ 1 mod 4 so it splits.
        let f = FpPoly::new(p, vec![1, 1]).mul(&FpPoly::new(p, vec![2, 1])).mul(&FpPoly::new(p, vec![1, 0, 1]));
        let fs = factor_squarefree(&f);
        assert_eq!(fs.len(), 4);
        assert_eq!(count_factors(&f), 4);
        let prod = fs.iter().fold(FpPoly::one(p), |a, b| a.mul(b));
        assert_eq!(prod, f.monic());
        // mod 103 (≡ 3 mod 4) x^2+1 stays irreducible
        let f = FpPoly::new(103, vec![1, 0, 1]).mul(&FpPoly::new(103, vec![5, 1]));
        assert_eq!(factor_squarefree(&f).len(), 2);
    }

    #[test]
    fn ext_gcd_identity() {
        let p = 97;
        let a = FpPoly::new(p, vec![3, 0, 1, 4]);
        let b = FpPoly::new(p, vec![1, 5, 2]);
        let (g, s, t) = a.ext_gcd(&b);
        assert_eq!(s.mul(&a).add(&t.mul(&b)), g);
        assert_eq!(inv_mod(5, 97) * 5 % 97, 1);
    }
}
