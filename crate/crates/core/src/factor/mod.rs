//! Factorisation of integers and of univariate and bivariate integer polynomials.

pub mod bivariate;
pub mod integer;
pub mod fp2;
pub mod modp;
pub mod univariate;
pub mod zpoly;

pub use integer::{factor_integer, factor_integer_with, is_probable_prime, radical, IntegerBudget};

use crate::poly::{squarefree_decomposition, MultiPoly, PolyError, VarList};
use num_bigint::BigInt;
use num_traits::Signed;
use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum FactorError {
    #[error("cannot factor zero")]
    Zero,
    #[error("factorisation budget exhausted; unfactored part: {unfactored}")]
    Budget { unfactored: String },
    #[error("expected at most {expected} variables, found {0}", expected = 2)]
    TooManyVariables(usize),
    #[error("no suitable prime found for modular factorisation")]
    NoGoodPrime,
    #[error("no suitable specialisation point found")]
    NoGoodPoint,
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// Work limits for polynomial factorisation.
#[derive(Clone, Copy, Debug)]
pub struct FactorBudget {
    /// Maximum number of recombination subsets tried per polynomial.
    pub subset_limit: u64,
    pub integer: IntegerBudget,
}

impl Default for FactorBudget {
    fn default() -> Self {
        FactorBudget {
            subset_limit: 200_000,
            integer: IntegerBudget::default(),
        }
    }
}

/// `f = unit · content · ∏ factor^mult`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub unit: i8,
    /// Positive integer content (factor it with [`factor_integer`] if needed).
    pub content: BigInt,
    /// Irreducible, primitive, positive leading coefficient, sorted by
    /// (total degree, leading monomial).
    pub factors: Vec<(MultiPoly, u32)>,
}

impl Factorization {
    pub fn expand(&self, vars: &VarList) -> MultiPoly {
        let mut acc = MultiPoly::constant(vars, &self.content * BigInt::from(self.unit));
        for (f, m) in &self.factors {
            acc = &acc * &f.pow(*m);
        }
        acc
    }

    /// Total number of irreducible factors counted with multiplicity.
    pub fn count(&self) -> u32 {
        self.factors.iter().map(|(_, m)| *m).sum()
    }
}

fn factor_key(f: &MultiPoly) -> (u32, Option<crate::poly::Monomial>, String) {
    (f.total_degree(), f.leading_term().map(|(m, _)| m.clone()), f.to_string())
}

fn assemble(f: &MultiPoly, irreducibles: Vec<(MultiPoly, u32)>) -> Factorization {
    let mut merged: Vec<(MultiPoly, u32)> = Vec::new();
    for (g, m) in irreducibles {
        if let Some(entry) = merged.iter_mut().find(|(h, _)| *h == g) {
            entry.1 += m;
        } else {
            merged.push((g, m));
        }
    }
    merged.sort_by_key(|(a, _)| factor_key(a));
    let content = f.content();
    let mut fac = Factorization {
        unit: 1,
        content,
        factors: merged,
    };
    // fix the unit so that the expansion reproduces f
    let expanded = fac.expand(f.vars());
    if expanded != *f {
        fac.unit = -1;
        debug_assert_eq!(&fac.expand(f.vars()), f);
    }
    fac
}

/// Factor a polynomial in at most one occurring variable.
pub fn factor_univariate(f: &MultiPoly) -> Result<Factorization, FactorError> {
    factor_univariate_with(f, &FactorBudget::default())
}

pub fn factor_univariate_with(f: &MultiPoly, budget: &FactorBudget) -> Result<Factorization, FactorError> {
    let occ = f.occurring_vars();
    if occ.len() > 1 {
        return Err(FactorError::TooManyVariables(occ.len()));
    }
    factor_bivariate_with(f, budget)
}

/// Factor a polynomial in at most two occurring variables.
pub fn factor_bivariate(f: &MultiPoly) -> Result<Factorization, FactorError> {
    factor_bivariate_with(f, &FactorBudget::default())
}

pub fn factor_bivariate_with(f: &MultiPoly, budget: &FactorBudget) -> Result<Factorization, FactorError> {
    if f.is_zero() {
        return Err(FactorError::Zero);
    }
    let occ = f.occurring_vars();
    if occ.len() > 2 {
        return Err(FactorError::TooManyVariables(occ.len()));
    }
    let mut irreducibles = Vec::new();
    for (a, m) in squarefree_decomposition(f)? {
        for g in bivariate::factor_squarefree_bivariate(&a, budget)? {
            irreducibles.push((g, m));
        }
    }
    let fac = assemble(f, irreducibles);
    if fac.expand(f.vars()) != *f {
        // This would indicate an internal error; report instead of lying.
        return Err(FactorError::Budget {
            unfactored: f.to_string(),
        });
    }
    Ok(fac)
}

/// Whether `f` (nonconstant, ≤ 2 variables) is irreducible over Z up to units
/// and integer content.
pub fn is_irreducible(f: &MultiPoly) -> Result<bool, FactorError> {
    if f.is_constant() {
        return Ok(false);
    }
    let fac = factor_bivariate(f)?;
    Ok(fac.factors.len() == 1 && fac.factors[0].1 == 1)
}

/// The sign-normalised form used for factor comparisons.
pub fn normalize_factor(f: &MultiPoly) -> MultiPoly {
    let p = f.primitive_part();
    if p.leading_coeff().is_negative() {
        -p
    } else {
        p
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v() -> VarList {
        VarList::new(&["g", "h"])
    }

    fn p(s: &str) -> MultiPoly {
        MultiPoly::parse(s, &v()).unwrap()
    }

    #[test]
    fn q5_and_q12() {
        let f = factor_bivariate(&p("-6*(10*g+3)*(15*g+2)")).unwrap();
        assert_eq!(f.unit, -1);
        assert_eq!(f.content, BigInt::from(6));
        assert_eq!(f.factors, vec![(p("10*g + 3"), 1), (p("15*g + 2"), 1)]);
        let q12 = p("27*g*h - 27*g - 3*h^4 - 6*h^3 + 13*h^2 + 4*h - 8");
        let f = factor_bivariate(&q12).unwrap();
        assert_eq!(f.factors, vec![(p("h - 1"), 1), (p("3*h^3 + 9*h^2 - 27*g - 4*h - 8"), 1)]);
        assert_eq!(f.unit, -1);
    }

    #[test]
    fn bivariate_products() {
        let a = p("g^2 + h^2 - 1");
        let b = p("g*h + 2*g - 3");
        let c = p("g - h^2");
        let f = &(&a * &b.pow(2)) * &c;
        let fac = factor_bivariate(&f).unwrap();
        assert_eq!(fac.expand(&v()), f);
        assert_eq!(fac.count(), 4);
        assert!(fac.factors.contains(&(b.clone(), 2)));
        // irreducible: q21
        assert!(is_irreducible(&p("9*g^2 - 6*g*h - 6*h^2 - 7")).unwrap());
        assert!(!is_irreducible(&p("g^2 - h^2")).unwrap());
    }

    #[test]
    fn resultant_factorisation() {
        let f = p("746496*(27*h^2 - 1)^2*(3*h^4 + 27*h^2 - 25)^2");
        let fac = factor_bivariate(&f).unwrap();
        assert_eq!(fac.content, BigInt::from(746496));
        assert_eq!(fac.factors, vec![(p("27*h^2 - 1"), 2), (p("3*h^4 + 27*h^2 - 25"), 2)]);
    }

    #[test]
    fn too_many_vars() {
        let w = VarList::new(&["x", "y", "z"]);
        let f = MultiPoly::parse("x*y*z + 1", &w).unwrap();
        assert!(matches!(factor_bivariate(&f), Err(FactorError::TooManyVariables(3))));
    }
}
