//! Exact checks that a rational function is a square, and norm certificates.

use crate::poly::{squarefree_decomposition, MultiPoly, RationalFunction};
use num_bigint::BigInt;
use num_traits::Signed;

/// Whether a polynomial is a square of a polynomial with rational coefficients.
pub fn is_square_poly(p: &MultiPoly) -> bool {
    if p.is_zero() {
        return true;
    }
    let parts = squarefree_decomposition(p).expect("nonzero");
    if parts.iter().any(|(_, m)| m % 2 == 1) {
        return false;
    }
    let mut prod = MultiPoly::one(p.vars());
    for (a, m) in &parts {
        prod = &prod * &a.pow(*m);
    }
    let unit = p.div_exact(&prod).and_then(|q| q.as_constant()).expect("decomposition divides");
    is_square_integer(&unit)
}

pub fn is_square_integer(n: &BigInt) -> bool {
    if n.is_negative() {
        return false;
    }
    let r = n.sqrt();
    &r * &r == *n
}

/// Whether a nonzero rational function is a square in the function field.
pub fn is_square_rational(r: &RationalFunction) -> bool {
    if r.is_zero() {
        return false;
    }
    is_square_poly(&(r.numer() * r.denom()))
}

/// True iff `a² − D·λ·b² = f·s²` for some nonzero rational function `s`.
pub fn norm_certificate_check(
    f: &RationalFunction,
    d: &BigInt,
    lambda: &MultiPoly,
    a: &RationalFunction,
    b: &RationalFunction,
) -> bool {
    if f.is_zero() {
        return false;
    }
    let dl = RationalFunction::from_poly(lambda.scale(d));
    let norm = &(a * a) - &(&dl * &(b * b));
    match norm.checked_div(f) {
        Ok(r) => is_square_rational(&r),
        Err(_) => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::VarList;

    #[test]
    fn certificates() {
        let v = VarList::new(&["g", "h"]);
        let r = |s: &str| RationalFunction::parse(s, &v).unwrap();
        let lam = MultiPoly::parse("g^2 + 1", &v).unwrap();
        let d = BigInt::from(5);
        assert!(norm_certificate_check(&r("(g+h)^2"), &d, &lam, &r("g+h"), &r("0")));
        assert!(norm_certificate_check(&r("1"), &d, &lam, &r("1"), &r("0")));
        assert!(norm_certificate_check(&r("-5*(g^2+1)"), &d, &lam, &r("0"), &r("1")));
        assert!(!norm_certificate_check(&r("2"), &d, &lam, &r("1"), &r("0")));
        assert!(norm_certificate_check(&r("9/(4*h^2)"), &d, &lam, &r("1"), &r("0")));
    }

    #[test]
    fn squares() {
        let v = VarList::new(&["g", "h"]);
        assert!(is_square_poly(&MultiPoly::parse("4*(g - h)^2*(g+1)^4", &v).unwrap()));
        assert!(!is_square_poly(&MultiPoly::parse("-4*(g - h)^2", &v).unwrap()));
        assert!(!is_square_poly(&MultiPoly::parse("2*(g - h)^2", &v).unwrap()));
    }
}
