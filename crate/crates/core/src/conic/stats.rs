//! Discriminant decomposition and degree statistics.

use super::form::Conic;
use super::ConicError;
use crate::factor::{factor_bivariate_with, FactorBudget, Factorization};
use crate::poly::{squarefree_decomposition, MultiPoly};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Signed;

/// `Δ = sign · content · Δ₁ · Δ₂` with Δ₁ squarefree and Δ₂ power-full.
#[derive(Clone, Debug)]
pub struct DeltaParts {
    pub delta: MultiPoly,
    /// Positive integer content of Δ.
    pub content: BigInt,
    /// Odd part of the content (all factors of 2 removed).
    pub odd_content: BigInt,
    pub sign: i8,
    /// Product of the prime factors occurring exactly once.
    pub delta1: MultiPoly,
    /// Product of `π^e` over the prime factors with `e > 1`.
    pub delta2: MultiPoly,
}

/// Content, sign and the squarefree split of Δ.
pub fn delta_split(l: &Conic) -> Result<DeltaParts, ConicError> {
    let delta = l.discriminant();
    let (content, pp) = delta.content_and_primitive()?;
    let sign = if delta.leading_coeff().is_negative() { -1 } else { 1 };
    let mut odd = content.clone();
    while odd.is_even() {
        odd /= 2;
    }
    let vars = delta.vars().clone();
    let mut d1 = MultiPoly::one(&vars);
    let mut d2 = MultiPoly::one(&vars);
    for (a, m) in squarefree_decomposition(&pp)? {
        if m == 1 {
            d1 = &d1 * &a;
        } else {
            d2 = &d2 * &a.pow(m);
        }
    }
    Ok(DeltaParts {
        delta,
        content,
        odd_content: odd,
        sign,
        delta1: d1,
        delta2: d2,
    })
}

/// [`delta_split`] together with the factorisation of Δ₂.
pub fn delta_parts(l: &Conic, budget: &FactorBudget) -> Result<(DeltaParts, Factorization), ConicError> {
    let parts = delta_split(l)?;
    let fac = factor_bivariate_with(&parts.delta2, budget)?;
    Ok((parts, fac))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeStats {
    pub diag_degrees: [u32; 3],
    /// Sum of the diagonal degrees.
    pub diag_deg: u32,
    pub delta_degree: u32,
    pub delta2_degree: u32,
    /// `deg Δ₂ + diag_deg − deg Δ`; zero exactly for degree-minimal forms.
    pub deg_score: i64,
}

pub fn degree_stats(l: &Conic) -> Result<DegreeStats, ConicError> {
    let parts = delta_split(l)?;
    Ok(stats_from_parts(l, &parts))
}

pub fn stats_from_parts(l: &Conic, parts: &DeltaParts) -> DegreeStats {
    let dd = l.diag_degrees();
    let diag_deg = dd.iter().sum::<u32>();
    let delta_degree = parts.delta.total_degree();
    let delta2_degree = parts.delta2.total_degree();
    DegreeStats {
        diag_degrees: dd,
        diag_deg,
        delta_degree,
        delta2_degree,
        deg_score: delta2_degree as i64 + diag_deg as i64 - delta_degree as i64,
    }
}

pub fn deg_score(l: &Conic) -> Result<i64, ConicError> {
    Ok(degree_stats(l)?.deg_score)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::VarList;

    #[test]
    fn split_examples() {
        let v = VarList::new(&["g", "h"]);
        let l = Conic::from_strs(&v, ["1", "-21", "-(18*g^2 - 12*g*h - 12*h^2 - 14)", "0", "0", "0"]).unwrap();
        let p = delta_split(&l).unwrap();
        assert_eq!(p.content, BigInt::from(336));
        assert_eq!(p.odd_content, BigInt::from(21));
        assert_eq!(p.delta1, MultiPoly::parse("9*g^2 - 6*g*h - 6*h^2 - 7", &v).unwrap());
        assert!(p.delta2.is_one());
        assert_eq!(degree_stats(&l).unwrap().deg_score, 0);

        let t = VarList::new(&["t1", "t2"]);
        // Δ = 8·3·t1^2·(t2+1)
        let l = Conic::from_strs(&t, ["3", "t1^2", "t2+1", "0", "0", "0"]).unwrap();
        let p = delta_split(&l).unwrap();
        assert_eq!(p.content, BigInt::from(24));
        assert_eq!(p.delta1, MultiPoly::parse("t2 + 1", &t).unwrap());
        assert_eq!(p.delta2, MultiPoly::parse("t1^2", &t).unwrap());
        let s = degree_stats(&l).unwrap();
        assert_eq!(s.deg_score, 2 + 3 - 3);
        let l = Conic::from_strs(&t, ["1", "1", "t1^2", "0", "0", "0"]).unwrap();
        let s = degree_stats(&l).unwrap();
        assert_eq!((s.diag_deg, s.delta_degree, s.deg_score), (2, 2, 2));
    }
}
