//! Arithmetic modulo a prime element: an odd rational prime or an
//! irreducible polynomial.
//!
//! Everything here is done with divisibility tests and adjugates; we never
//! invert in the residue ring except for the trivial case of a rational
//! prime acting on integer constants.

use crate::conic::{Conic, Matrix3};
use crate::factor::fp2::FpBivar;
use crate::factor::{is_irreducible, is_probable_prime, normalize_factor, FactorError};
use crate::poly::{gcd, MultiPoly, PolyError, VarList};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum ModularError {
    #[error("{0} is not an odd prime")]
    NotOddPrime(BigInt),
    #[error("{0} is constant; use a rational prime instead")]
    ConstantPolynomial(String),
    #[error("{0} is not primitive")]
    NotPrimitive(String),
    #[error("{0} is reducible")]
    Reducible(String),
    #[error("conic is not scale-minimal at {0}: every coefficient vanishes")]
    NotScaleMinimal(String),
    #[error("vector vanishes modulo {0}")]
    ZeroVector(String),
    #[error(transparent)]
    Factor(#[from] FactorError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// A prime `π ≠ 2` of `Z[t₁, t₂]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PrimeElement {
    Rational(BigInt),
    Poly(MultiPoly),
}

impl PrimeElement {
    pub fn rational(p: impl Into<BigInt>) -> Result<Self, ModularError> {
        let p = p.into();
        if p <= BigInt::from(2) || !is_probable_prime(&p) {
            return Err(ModularError::NotOddPrime(p));
        }
        Ok(PrimeElement::Rational(p))
    }

    /// Checked constructor: `pi` must be primitive, nonconstant and irreducible.
    /// The stored polynomial is sign-normalised.
    pub fn polynomial(pi: &MultiPoly) -> Result<Self, ModularError> {
        if pi.is_constant() {
            return Err(ModularError::ConstantPolynomial(pi.to_string()));
        }
        if !pi.content().is_one() {
            return Err(ModularError::NotPrimitive(pi.to_string()));
        }
        if !is_irreducible(pi)? {
            return Err(ModularError::Reducible(pi.to_string()));
        }
        Ok(PrimeElement::Poly(normalize_factor(pi)))
    }

    /// For factors that are already known to be irreducible (e.g. taken
    /// from a factorisation).
    pub fn polynomial_unchecked(pi: MultiPoly) -> Self {
        PrimeElement::Poly(normalize_factor(&pi))
    }

    pub fn as_poly(&self, vars: &VarList) -> MultiPoly {
        match self {
            PrimeElement::Rational(p) => MultiPoly::constant(vars, p.clone()),
            PrimeElement::Poly(pi) => pi.clone(),
        }
    }

    pub fn is_rational(&self) -> bool {
        matches!(self, PrimeElement::Rational(_))
    }

    /// Whether `π | f`.
    pub fn divides(&self, f: &MultiPoly) -> bool {
        match self {
            PrimeElement::Rational(p) => f.terms().all(|(_, c)| c.is_multiple_of(p)),
            PrimeElement::Poly(pi) => pi.divides(f),
        }
    }

    /// `v_π(f)` for nonzero `f`.
    pub fn valuation(&self, f: &MultiPoly) -> Result<u32, ModularError> {
        if f.is_zero() {
            return Err(PolyError::Valuation("zero").into());
        }
        match self {
            PrimeElement::Rational(p) => {
                let mut c = f.content();
                let mut k = 0;
                while c.is_multiple_of(p) {
                    c /= p;
                    k += 1;
                }
                Ok(k)
            }
            PrimeElement::Poly(pi) => Ok(crate::poly::valuation(f, pi)?),
        }
    }

    /// A smaller representative of `f` modulo `π`.
    ///
    /// Rational primes reduce coefficients into the symmetric range. A
    /// polynomial prime is used for division with remainder in a variable
    /// where its leading coefficient is `±1`; if no such variable exists,
    /// `f` is returned unchanged.
    pub fn reduce(&self, f: &MultiPoly) -> MultiPoly {
        match self {
            PrimeElement::Rational(p) => f.reduce_coeffs_symmetric(p),
            PrimeElement::Poly(pi) => {
                let x = (0..pi.nvars())
                    .filter(|&i| pi.degree_in(i) > 0)
                    .filter(|&i| pi.leading_coeff_in(i).as_constant().is_some_and(|c| c.abs().is_one()))
                    .min_by_key(|&i| pi.degree_in(i));
                let Some(x) = x else { return f.clone() };
                let dp = pi.degree_in(x);
                let lc = pi.leading_coeff_in(x).as_constant().unwrap();
                let mut r = f.clone();
                while !r.is_zero() && r.degree_in(x) >= dp {
                    let dr = r.degree_in(x);
                    let lr = r.leading_coeff_in(x);
                    let shift = MultiPoly::monomial(f.vars(), lc.clone(), crate::poly::Monomial::variable(f.nvars(), x, dr - dp));
                    r = &r - &(&(&lr * &shift) * pi);
                }
                r
            }
        }
    }
}

impl PrimeElement {
    /// Reduce a vector modulo `π` up to a common unit factor.
    ///
    /// Unlike [`PrimeElement::reduce`] this may multiply all entries by the
    /// same power of an integer leading coefficient of `π` (a unit mod `π`),
    /// which lets every polynomial prime with a constant leading coefficient
    /// in some variable eliminate that variable.
    pub fn reduce_vector(&self, v: [MultiPoly; 3]) -> [MultiPoly; 3] {
        let PrimeElement::Poly(pi) = self else { return v.map(|e| self.reduce(&e)) };
        let x = (0..pi.nvars())
            .filter(|&i| pi.degree_in(i) > 0 && pi.leading_coeff_in(i).is_constant())
            .min_by_key(|&i| (pi.degree_in(i), pi.leading_coeff_in(i).max_abs_coeff()));
        let Some(x) = x else { return v };
        let lc = pi.leading_coeff_in(x);
        if lc.as_constant().is_some_and(|c| c.abs().is_one()) {
            return v.map(|e| self.reduce(&e));
        }
        let dp = pi.degree_in(x);
        // lc^e · v_i ≡ r_i with a common exponent e
        let mut rems = Vec::with_capacity(3);
        let mut exps = Vec::with_capacity(3);
        for e in &v {
            let mut r = e.clone();
            let mut k = 0u32;
            while !r.is_zero() && r.degree_in(x) >= dp {
                let dr = r.degree_in(x);
                let lr = r.leading_coeff_in(x);
                let shift = MultiPoly::monomial(e.vars(), BigInt::one(), crate::poly::Monomial::variable(e.nvars(), x, dr - dp));
                r = &(&r * &lc) - &(&(&lr * &shift) * pi);
                k += 1;
            }
            rems.push(r);
            exps.push(k);
        }
        let top = *exps.iter().max().unwrap();
        let out: Vec<MultiPoly> = rems.into_iter().zip(exps).map(|(r, k)| &r * &lc.pow(top - k)).collect();
        out.try_into().unwrap()
    }
}

impl fmt::Display for PrimeElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PrimeElement::Rational(p) => write!(f, "{p}"),
            PrimeElement::Poly(pi) => write!(f, "{pi}"),
        }
    }
}

/// `π | f`.
pub fn is_zero_mod(f: &MultiPoly, pi: &PrimeElement) -> bool {
    pi.divides(f)
}

/// The singular subscheme of the reduction of a conic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SingularLocus {
    /// A single singular point `v`.
    Point([MultiPoly; 3]),
    /// The reduction is the double line `w · x = 0`.
    Line([MultiPoly; 3]),
    Nonsingular,
}

/// Classify the reduction of `l` mod `π` using `M = 2G` and its adjugate.
pub fn singular_locus_mod(l: &Conic, pi: &PrimeElement) -> Result<SingularLocus, ModularError> {
    if l.coeffs().iter().all(|c| pi.divides(c)) {
        return Err(ModularError::NotScaleMinimal(pi.to_string()));
    }
    if !pi.divides(&l.discriminant()) {
        return Ok(SingularLocus::Nonsingular);
    }
    let m = l.gram2();
    let adj = m.adjugate();
    if let Some(v) = smallest_vector((0..3).map(|j| adj.column(j)), pi)? {
        return Ok(SingularLocus::Point(v));
    }
    match smallest_vector((0..3).map(|i| m.row(i)), pi)? {
        Some(w) => Ok(SingularLocus::Line(w)),
        None => unreachable!("a nonzero symmetric matrix has a nonzero row"),
    }
}

/// Normalise every candidate that is nonzero mod `π`; keep the smallest
/// (first on ties).
fn smallest_vector<I>(cands: I, pi: &PrimeElement) -> Result<Option<[MultiPoly; 3]>, ModularError>
where
    I: Iterator<Item = [MultiPoly; 3]>,
{
    let mut best: Option<([MultiPoly; 3], (u32, usize, BigInt))> = None;
    for c in cands {
        if c.iter().all(|e| pi.divides(e)) {
            continue;
        }
        let v = normalise_vector(c, pi)?;
        let key = vector_size(&v);
        if best.as_ref().is_none_or(|(_, b)| key < *b) {
            best = Some((v, key));
        }
    }
    Ok(best.map(|(v, _)| v))
}

fn vector_size(v: &[MultiPoly; 3]) -> (u32, usize, BigInt) {
    let deg = v.iter().map(|e| e.total_degree()).max().unwrap_or(0);
    let terms = v.iter().map(|e| e.num_terms()).sum();
    let big = v.iter().map(|e| e.max_abs_coeff()).max().unwrap_or_default();
    (deg, terms, big)
}

/// Divide out the common factor of the entries over `F_p[t₁, t₂]`.
fn strip_common_factor_mod_p(v: [MultiPoly; 3], p: &BigInt) -> [MultiPoly; 3] {
    let Some(pw) = p.to_u64().filter(|&x| x < (1 << 31)) else { return v };
    if v[0].nvars() > 2 {
        return v;
    }
    let red: Vec<FpBivar> = v.iter().map(|e| FpBivar::from_poly(e, pw)).collect();
    let g = red.iter().fold(FpBivar::zero(pw), |acc, x| acc.gcd(x));
    let vars = v[0].vars().clone();
    let gz = g.to_poly(&vars);
    if gz.is_constant() {
        return v;
    }
    std::array::from_fn(|i| red[i].div_exact(&g).expect("gcd divides").to_poly(&vars))
}

/// Reduce the entries, divide out their common factor and, for a rational
/// prime, scale so that the pivot entry is `1 mod p`.
///
/// Every operation multiplies the vector by a unit mod `π`, so the
/// projective point it represents does not change.
pub fn normalise_vector(v: [MultiPoly; 3], pi: &PrimeElement) -> Result<[MultiPoly; 3], ModularError> {
    let mut v = pi.reduce_vector(v);
    if v.iter().all(|e| pi.divides(e)) {
        return Err(ModularError::ZeroVector(pi.to_string()));
    }
    let g = gcd(&gcd(&v[0], &v[1]), &v[2]);
    if !g.is_one() && !g.is_zero() {
        v = v.map(|e| e.div_exact(&g).expect("gcd divides"));
    }
    if let PrimeElement::Rational(p) = pi {
        v = strip_common_factor_mod_p(v, p);
        let k = pivot_index(&v, pi)?;
        if let Some(c) = v[k].as_constant() {
            let inv = mod_inverse(&c, p);
            v = v.map(|e| e.scale(&inv).reduce_coeffs_symmetric(p));
        }
    }
    if let Some(first) = v.iter().find(|e| !e.is_zero()) {
        if first.leading_coeff().is_negative() {
            v = v.map(|e| -e);
        }
    }
    Ok(v)
}

fn mod_inverse(c: &BigInt, p: &BigInt) -> BigInt {
    let e = c.extended_gcd(p);
    debug_assert!(e.gcd.is_one());
    e.x.mod_floor(p)
}

/// The index `k` with `v_k ≢ 0 mod π` whose entry is smallest; ties go to
/// the larger index so that `(…, 1)` keeps its last coordinate.
pub fn pivot_index(v: &[MultiPoly; 3], pi: &PrimeElement) -> Result<usize, ModularError> {
    let mut best: Option<(usize, (u32, usize, BigInt))> = None;
    for (k, e) in v.iter().enumerate() {
        if pi.divides(e) {
            continue;
        }
        let key = e.size_key();
        if best.as_ref().is_none_or(|(_, b)| key <= *b) {
            best = Some((k, key));
        }
    }
    best.map(|(k, _)| k).ok_or_else(|| ModularError::ZeroVector(pi.to_string()))
}

fn unit_vector(vars: &VarList, i: usize) -> [MultiPoly; 3] {
    std::array::from_fn(|j| if i == j { MultiPoly::one(vars) } else { MultiPoly::zero(vars) })
}

fn complement(k: usize) -> [usize; 2] {
    match k {
        0 => [1, 2],
        1 => [0, 2],
        _ => [0, 1],
    }
}

/// Elementary reduction `v_i ← v_i − q·v_j` (mod `π`) by leading-term
/// division, until no leading monomial divides another.
///
/// Returns the operations `(i, j, q)` in order together with the reduced
/// vector. Entries that vanish mod `π` are replaced by zero.
pub fn elementary_reduce(v: &[MultiPoly; 3], pi: &PrimeElement) -> (Vec<(usize, usize, MultiPoly)>, [MultiPoly; 3]) {
    let vars = v[0].vars().clone();
    let zero = MultiPoly::zero(&vars);
    let mut v: [MultiPoly; 3] = v.clone().map(|e| if pi.divides(&e) { zero.clone() } else { e });
    let mut ops = Vec::new();
    for _ in 0..256 {
        let mut order: Vec<usize> = (0..3).filter(|&i| !v[i].is_zero()).collect();
        order.sort_by(|&a, &b| v[b].leading_term().unwrap().0.cmp(v[a].leading_term().unwrap().0).then(a.cmp(&b)));
        let mut found = None;
        'search: for &i in &order {
            let (mi, ci) = v[i].leading_term().unwrap();
            for &j in order.iter().rev() {
                if i == j {
                    continue;
                }
                let (mj, cj) = v[j].leading_term().unwrap();
                let Some(shift) = mi.div(mj) else { continue };
                let Some(c) = coefficient_quotient(ci, cj, pi) else { continue };
                found = Some((i, j, MultiPoly::monomial(&vars, c, shift)));
                break 'search;
            }
        }
        let Some((i, j, q)) = found else { break };
        let next = pi.reduce(&(&v[i] - &(&q * &v[j])));
        v[i] = if pi.divides(&next) { zero.clone() } else { next };
        ops.push((i, j, q));
    }
    (ops, v)
}

fn coefficient_quotient(a: &BigInt, b: &BigInt, pi: &PrimeElement) -> Option<BigInt> {
    match pi {
        PrimeElement::Rational(p) => {
            let q = (a * mod_inverse(b, p)).mod_floor(p);
            Some(if q > p / 2 { q - p } else { q })
        }
        PrimeElement::Poly(_) => {
            let (q, r) = a.div_rem(b);
            r.is_zero().then_some(q)
        }
    }
}

/// For a rational prime, scale so that a constant pivot entry becomes 1.
fn unit_pivot(v: [MultiPoly; 3], pi: &PrimeElement) -> Result<[MultiPoly; 3], ModularError> {
    let PrimeElement::Rational(p) = pi else { return Ok(v) };
    let k = pivot_index(&v, pi)?;
    Ok(match v[k].as_constant() {
        Some(c) => {
            let inv = mod_inverse(&c, p);
            v.map(|e| e.scale(&inv).reduce_coeffs_symmetric(p))
        }
        None => v,
    })
}

/// A matrix moving the point `v` to `(0:0:1)`.
///
/// The vector is first simplified by elementary operations, which are
/// folded into the result; the remaining vector `w` is completed to
/// `(e_i, e_j, w)` around a pivot `k` with `w_k ≢ 0`, so `det U = ±w_k`.
pub fn lift_point_transform(v: &[MultiPoly; 3], pi: &PrimeElement) -> Result<Matrix3, ModularError> {
    pivot_index(v, pi)?;
    let vars = v[0].vars();
    let (ops, w) = elementary_reduce(v, pi);
    let w = unit_pivot(w, pi)?;
    let k = pivot_index(&w, pi)?;
    let [i, j] = complement(k);
    let base = Matrix3::from_columns([unit_vector(vars, i), unit_vector(vars, j), w]);
    let mut e = Matrix3::identity(vars);
    for (a, b, q) in ops {
        let mut step = Matrix3::identity(vars);
        step.m[a][b] = q;
        e = e.mul(&step);
    }
    Ok(e.mul(&base))
}

/// A matrix moving the double line `w·x = 0` to `Z = 0`.
///
/// After elementary simplification of `w` to `w'`, the core matrix is
/// `(w'_k e_i − w'_i e_k, w'_k e_j − w'_j e_k, e_k)`, whose first two columns
/// span the kernel of `w'·`; `det U = ±w'_k²`.
pub fn lift_line_transform(w: &[MultiPoly; 3], pi: &PrimeElement) -> Result<Matrix3, ModularError> {
    pivot_index(w, pi)?;
    let vars = w[0].vars();
    let (ops, w) = elementary_reduce(w, pi);
    let w = unit_pivot(w, pi)?;
    let k = pivot_index(&w, pi)?;
    let col = |i: usize| -> [MultiPoly; 3] {
        let mut c = unit_vector(vars, i).map(|e| &e * &w[k]);
        c[k] = &c[k] - &w[i];
        c
    };
    let [i, j] = complement(k);
    let core = Matrix3::from_columns([col(i), col(j), unit_vector(vars, k)]);
    let mut e = Matrix3::identity(vars);
    for (a, b, q) in ops {
        // w_a ← w_a − q w_b is right multiplication by I − q·e_b e_aᵀ
        let mut step = Matrix3::identity(vars);
        step.m[b][a] = -q;
        e = e.mul(&step);
    }
    Ok(e.mul(&core))
}

/// Determinant of a lift, for checking that it is a unit at `π`.
pub fn lift_is_unit(u: &Matrix3, pi: &PrimeElement) -> bool {
    let d = u.det();
    !d.is_zero() && !pi.divides(&d)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v() -> VarList {
        VarList::new(&["t1", "t2"])
    }
    fn p(s: &str) -> MultiPoly {
        MultiPoly::parse(s, &v()).unwrap()
    }
    fn vec3(a: &str, b: &str, c: &str) -> [MultiPoly; 3] {
        [p(a), p(b), p(c)]
    }

    #[test]
    fn zero_tests() {
        let pi = PrimeElement::polynomial(&p("t1 - t2")).unwrap();
        assert!(is_zero_mod(&p("t1^2 - t2^2"), &pi));
        assert!(!is_zero_mod(&p("t1"), &pi));
        let five = PrimeElement::rational(5).unwrap();
        assert!(is_zero_mod(&p("15"), &five));
        assert!(PrimeElement::rational(2).is_err());
        assert!(PrimeElement::rational(9).is_err());
        assert!(PrimeElement::polynomial(&p("t1^2 - t2^2")).is_err());
        assert!(PrimeElement::polynomial(&p("2*t1")).is_err());
    }

    #[test]
    fn reduction_mod_polynomial() {
        let pi = PrimeElement::polynomial(&p("t1 - t2^2")).unwrap();
        let f = p("t1^2 + 3*t1*t2 + 1");
        let r = pi.reduce(&f);
        assert_eq!(r.degree_in(0), 0);
        assert!(pi.divides(&(&f - &r)));
    }

    #[test]
    fn locus_examples() {
        let three = PrimeElement::rational(3).unwrap();
        let l = Conic::from_strs(&v(), ["1", "1", "-9", "0", "0", "0"]).unwrap();
        assert_eq!(singular_locus_mod(&l, &three).unwrap(), SingularLocus::Point(vec3("0", "0", "1")));
        let l = Conic::from_strs(&v(), ["1", "3", "3", "0", "0", "0"]).unwrap();
        assert_eq!(singular_locus_mod(&l, &three).unwrap(), SingularLocus::Line(vec3("1", "0", "0")));
        let t2 = PrimeElement::polynomial(&p("t2")).unwrap();
        let l = Conic::from_strs(&v(), ["1", "-t1", "-t2", "0", "0", "0"]).unwrap();
        assert_eq!(singular_locus_mod(&l, &t2).unwrap(), SingularLocus::Point(vec3("0", "0", "1")));
        let l = Conic::from_strs(&v(), ["1", "1", "1", "0", "0", "0"]).unwrap();
        assert_eq!(singular_locus_mod(&l, &three).unwrap(), SingularLocus::Nonsingular);
        let l = Conic::from_strs(&v(), ["3", "3", "3*t1", "0", "0", "0"]).unwrap();
        assert!(matches!(singular_locus_mod(&l, &three), Err(ModularError::NotScaleMinimal(_))));
    }

    #[test]
    fn point_kernel_property() {
        // a non-diagonal example: reduction mod t1 is (X + t2 Z)^2 + Y^2 - ... singular at a moving point
        let t1 = PrimeElement::polynomial(&p("t1")).unwrap();
        let l = Conic::from_strs(&v(), ["1", "1", "t2^2 + t1^2", "0", "-2*t2", "0"]).unwrap();
        let SingularLocus::Point(pt) = singular_locus_mod(&l, &t1).unwrap() else { panic!() };
        let m = l.gram2();
        for i in 0..3 {
            let mut acc = MultiPoly::zero(&v());
            for j in 0..3 {
                acc += &(m.get(i, j) * &pt[j]);
            }
            assert!(t1.divides(&acc));
        }
        let u = lift_point_transform(&pt, &t1).unwrap();
        assert!(lift_is_unit(&u, &t1));
        let moved = l.transform(&u, &crate::poly::RationalFunction::one(&v())).unwrap();
        assert!(t1.valuation(moved.c()).unwrap() >= 2);
        assert!(t1.divides(moved.e()) && t1.divides(moved.f()));
    }

    #[test]
    fn lifts() {
        let t1 = PrimeElement::polynomial(&p("t1")).unwrap();
        let id = Matrix3::identity(&v());
        assert_eq!(lift_point_transform(&vec3("0", "0", "1"), &t1).unwrap(), id);
        let u = lift_point_transform(&vec3("1", "0", "0"), &t1).unwrap();
        assert_eq!(u, Matrix3::permutation(&v(), [1, 2, 0]));
        assert_eq!(u.det(), p("1"));
        let u = lift_point_transform(&vec3("t2", "0", "1"), &t1).unwrap();
        assert_eq!(u.column(2), vec3("t2", "0", "1"));
        assert_eq!(u.det(), p("1"));

        assert_eq!(lift_line_transform(&vec3("0", "0", "1"), &t1).unwrap(), id);
        let u = lift_line_transform(&vec3("1", "0", "0"), &t1).unwrap();
        assert_eq!(u.det().as_constant().unwrap().abs(), BigInt::one());
        let u = lift_line_transform(&vec3("t2", "1", "0"), &t1).unwrap();
        assert_eq!(u.column(0), vec3("1", "-t2", "0"));
        assert_eq!(u.column(1), vec3("0", "0", "1"));
        assert_eq!(u.column(2), vec3("0", "1", "0"));
        assert_eq!(u.det().as_constant().unwrap().abs(), BigInt::one());
    }

    #[test]
    fn rational_pivot_normalised() {
        let seven = PrimeElement::rational(7).unwrap();
        let v = normalise_vector(vec3("3", "0", "5*t1"), &seven).unwrap();
        // pivot is the constant entry, scaled to 1
        assert_eq!(v[0], p("1"));
        assert_eq!(v[2], p("-3*t1"));
    }
}
