//! Exact multivariate polynomial arithmetic over the integers.

mod display;
pub mod gcd;
pub mod monomial;
pub mod multipoly;
pub mod parse;
pub mod rational;
pub mod resultant;
pub mod squarefree;

pub use gcd::{content_in, gcd, lcm, primitive_in, pseudo_remainder};
pub use monomial::Monomial;
pub use multipoly::{MultiPoly, VarList};
pub use rational::{substitute, RationalFunction};
pub use resultant::{bareiss_determinant, resultant};
pub use squarefree::{is_squarefree, squarefree_decomposition, squarefree_part};

use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum PolyError {
    #[error("parse error at offset {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("unknown variable '{0}'")]
    UnknownVariable(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("expression is not a polynomial (inexact division)")]
    NotPolynomial,
    #[error("operation {0} is undefined for the zero polynomial")]
    ZeroPolynomial(&'static str),
    #[error("denominator vanishes identically after substitution")]
    DenominatorVanishes,
    #[error("cannot homogenise a polynomial of degree {degree} to degree {target}")]
    HomogenizeDegree { degree: u32, target: u32 },
    #[error("homogenising variable '{0}' already occurs")]
    HomogenizeVariableOccurs(String),
    #[error("valuation of {0} is undefined")]
    Valuation(&'static str),
}

/// π-adic valuation: the largest `k` with `d^k | f`.
///
/// `d` must be neither zero nor a unit, and `f` must be nonzero.
pub fn valuation(f: &MultiPoly, d: &MultiPoly) -> Result<u32, PolyError> {
    if f.is_zero() {
        return Err(PolyError::Valuation("zero"));
    }
    if d.is_zero() || d.as_constant().is_some_and(|c| num_traits::Signed::abs(&c) == num_bigint::BigInt::from(1)) {
        return Err(PolyError::Valuation("a unit divisor"));
    }
    let mut k = 0;
    let mut cur = f.clone();
    while let Some(q) = cur.div_exact(d) {
        cur = q;
        k += 1;
    }
    Ok(k)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn valuations() {
        let v = VarList::new(&["g", "h"]);
        let f = MultiPoly::parse("12*g^2*(h+1)", &v).unwrap();
        assert_eq!(valuation(&f, &MultiPoly::parse("g", &v).unwrap()).unwrap(), 2);
        assert_eq!(valuation(&f, &MultiPoly::constant(&v, 2)).unwrap(), 2);
        assert_eq!(valuation(&f, &MultiPoly::parse("h+1", &v).unwrap()).unwrap(), 1);
        assert!(valuation(&f, &MultiPoly::one(&v)).is_err());
        assert!(valuation(&MultiPoly::zero(&v), &MultiPoly::constant(&v, 3)).is_err());
    }
}
