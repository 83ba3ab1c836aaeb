//! Polynomials in at most two variables over a word-size prime field,
//! stored as polynomials in the second variable with coefficients in
//! `F_p[x₀]`. Just enough for gcds and exact division.

use super::modp::{inv_mod, FpPoly};
use crate::poly::{Monomial, MultiPoly, VarList};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FpBivar {
    p: u64,
    /// coefficients in the outer variable, low to high, no trailing zeros
    c: Vec<FpPoly>,
}

impl FpBivar {
    pub fn zero(p: u64) -> Self {
        FpBivar { p, c: Vec::new() }
    }

    fn trim(mut self) -> Self {
        while self.c.last().is_some_and(|x| x.is_zero()) {
            self.c.pop();
        }
        self
    }

    /// Reduction of `f` modulo `p`; `f` may have at most two variables.
    pub fn from_poly(f: &MultiPoly, p: u64) -> Self {
        assert!(f.nvars() <= 2, "at most two variables");
        let pb = BigInt::from(p);
        let mut rows: Vec<Vec<u64>> = Vec::new();
        for (m, c) in f.terms() {
            let (i, j) = match f.nvars() {
                0 => (0, 0),
                1 => (m.exponent(0) as usize, 0),
                _ => (m.exponent(0) as usize, m.exponent(1) as usize),
            };
            let r = c.mod_floor(&pb).to_u64().unwrap();
            if rows.len() <= j {
                rows.resize(j + 1, Vec::new());
            }
            if rows[j].len() <= i {
                rows[j].resize(i + 1, 0);
            }
            rows[j][i] = (rows[j][i] + r) % p;
        }
        FpBivar {
            p,
            c: rows.into_iter().map(|r| FpPoly::new(p, r)).collect(),
        }
        .trim()
    }

    /// Symmetric lift to `Z[x₀, x₁]`.
    pub fn to_poly(&self, vars: &VarList) -> MultiPoly {
        let half = self.p / 2;
        let mut terms = Vec::new();
        for (j, cj) in self.c.iter().enumerate() {
            for (i, &a) in cj.coeffs().iter().enumerate() {
                if a == 0 {
                    continue;
                }
                let v = if a > half { BigInt::from(a) - BigInt::from(self.p) } else { BigInt::from(a) };
                let exps: Vec<u32> = match vars.len() {
                    0 => vec![],
                    1 => vec![i as u32],
                    _ => vec![i as u32, j as u32],
                };
                terms.push((Monomial::from_exponents(&exps), v));
            }
        }
        MultiPoly::from_terms(vars, terms)
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    fn deg(&self) -> usize {
        self.c.len().saturating_sub(1)
    }

    fn lc(&self) -> &FpPoly {
        self.c.last().unwrap()
    }

    fn content(&self) -> FpPoly {
        let mut g = FpPoly::zero(self.p);
        for x in &self.c {
            g = g.gcd(x);
            if g.is_one() {
                break;
            }
        }
        g
    }

    fn div_coeff(&self, d: &FpPoly) -> FpBivar {
        FpBivar {
            p: self.p,
            c: self
                .c
                .iter()
                .map(|x| {
                    let (q, r) = x.divrem(d);
                    debug_assert!(r.is_zero());
                    q
                })
                .collect(),
        }
    }

    fn mul_coeff(&self, d: &FpPoly) -> FpBivar {
        FpBivar {
            p: self.p,
            c: self.c.iter().map(|x| x.mul(d)).collect(),
        }
        .trim()
    }

    fn primitive(&self) -> FpBivar {
        let c = self.content();
        if c.is_one() {
            self.clone()
        } else {
            self.div_coeff(&c)
        }
    }

    /// `lc(b)^k · a mod b` in the outer variable.
    fn prem(&self, b: &FpBivar) -> FpBivar {
        let mut r = self.clone();
        let lb = b.lc().clone();
        while !r.is_zero() && r.deg() >= b.deg() {
            let shift = r.deg() - b.deg();
            let lr = r.lc().clone();
            let mut next: Vec<FpPoly> = r.c.iter().map(|x| x.mul(&lb)).collect();
            for (k, bk) in b.c.iter().enumerate() {
                next[k + shift] = next[k + shift].sub(&bk.mul(&lr));
            }
            r = FpBivar { p: self.p, c: next }.trim();
        }
        r
    }

    /// Normalise so the leading coefficient of the leading coefficient is 1.
    fn monic(&self) -> FpBivar {
        if self.is_zero() {
            return self.clone();
        }
        let inv = inv_mod(self.lc().lc(), self.p);
        FpBivar {
            p: self.p,
            c: self.c.iter().map(|x| x.scale(inv)).collect(),
        }
    }

    pub fn gcd(&self, o: &FpBivar) -> FpBivar {
        if self.is_zero() {
            return o.monic();
        }
        if o.is_zero() {
            return self.monic();
        }
        let c = self.content().gcd(&o.content());
        let (mut a, mut b) = (self.primitive(), o.primitive());
        if a.deg() < b.deg() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.prem(&b);
            a = b;
            b = if r.is_zero() { r } else { r.primitive() };
        }
        a.primitive().mul_coeff(&c).monic()
    }

    /// `self / d`, or `None` if `d` does not divide `self`.
    pub fn div_exact(&self, d: &FpBivar) -> Option<FpBivar> {
        assert!(!d.is_zero());
        let mut r = self.clone();
        let mut q = vec![FpPoly::zero(self.p); self.c.len().saturating_sub(d.deg()) + 1];
        while !r.is_zero() && r.deg() >= d.deg() {
            let shift = r.deg() - d.deg();
            let (qc, rem) = r.lc().divrem(d.lc());
            if !rem.is_zero() {
                return None;
            }
            for (k, dk) in d.c.iter().enumerate() {
                r.c[k + shift] = r.c[k + shift].sub(&dk.mul(&qc));
            }
            q[shift] = qc;
            r = r.trim();
        }
        if !r.is_zero() {
            return None;
        }
        Some(FpBivar { p: self.p, c: q }.trim())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gcd_mod_three() {
        let v = VarList::new(&["g", "h"]);
        let p = |s: &str| MultiPoly::parse(s, &v).unwrap();
        // (g + h)(g - h + 1) and (g + h)(h^2 + g) share g + h mod 3, plus (g+4h) ≡ (g+h)
        let a = FpBivar::from_poly(&p("(g + h)*(g - h + 1)"), 3);
        let b = FpBivar::from_poly(&p("(g + 4*h)*(h^2 + g)"), 3);
        let g = a.gcd(&b);
        assert_eq!(g.to_poly(&v), p("g + h"));
        let q = a.div_exact(&g).unwrap();
        assert_eq!(q.to_poly(&v), p("g - h + 1"));
        assert!(a.div_exact(&FpBivar::from_poly(&p("h^2 + g"), 3)).is_none());
    }
}
