//! Seeded random instance generators for property and oracle suites.
//!
//! Every generator takes an explicit RNG so that suites are reproducible
//! from a single seed.

use crate::conic::{Conic, Matrix3};
use crate::modular::PrimeElement;
use crate::poly::{is_squarefree, MultiPoly, RationalFunction, VarList};
use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::Rng;

/// Random polynomial in `vars` of total degree at most `max_deg`, with
/// coefficients in `[-c, c]`.
pub fn random_poly<R: Rng>(rng: &mut R, vars: &VarList, max_deg: u32, c: i64, density: f64) -> MultiPoly {
    let n = vars.len();
    let mut terms = Vec::new();
    let mut push = |exps: &[u32], rng: &mut R| {
        if rng.gen_bool(density) {
            let k = rng.gen_range(-c..=c);
            if k != 0 {
                terms.push((crate::poly::Monomial::from_exponents(exps), BigInt::from(k)));
            }
        }
    };
    match n {
        1 => {
            for i in 0..=max_deg {
                push(&[i], rng);
            }
        }
        2 => {
            for d in 0..=max_deg {
                for i in 0..=d {
                    push(&[i, d - i], rng);
                }
            }
        }
        _ => panic!("random_poly supports one or two variables"),
    }
    MultiPoly::from_terms(vars, terms)
}

/// A random nonconstant primitive squarefree polynomial of degree ≤ `max_deg`.
pub fn random_squarefree<R: Rng>(rng: &mut R, vars: &VarList, max_deg: u32) -> MultiPoly {
    loop {
        let d = rng.gen_range(1..=max_deg);
        let f = random_poly(rng, vars, d, 5, 0.6);
        if f.is_constant() {
            continue;
        }
        let f = f.primitive_part();
        if is_squarefree(&f).unwrap_or(false) {
            return f;
        }
    }
}

/// The determinants used to bloat a minimal model.
pub fn bloat_determinants(vars: &VarList) -> Vec<MultiPoly> {
    let g = MultiPoly::var(vars, 0);
    let h = MultiPoly::var(vars, 1);
    let one = MultiPoly::one(vars);
    let mut out: Vec<MultiPoly> = [3, 5, 7, 11, 13].iter().map(|&k| MultiPoly::constant(vars, k)).collect();
    out.push(g.clone());
    out.push(h.clone());
    out.push(&g + &h);
    out.push(&g - &h);
    out.push(&(&g + &h) + &one);
    out
}

fn unipotent<R: Rng>(rng: &mut R, vars: &VarList, upper: bool) -> Matrix3 {
    let mut u = Matrix3::identity(vars);
    for i in 0..3 {
        for j in 0..3 {
            if (upper && i < j) || (!upper && i > j) {
                u.m[i][j] = MultiPoly::constant(vars, rng.gen_range(-2i64..=2));
            }
        }
    }
    u
}

/// One random transform `(U, s)` with `det U` drawn from
/// [`bloat_determinants`] and a small integer scalar.
pub fn random_bloat_step<R: Rng>(rng: &mut R, vars: &VarList) -> (Matrix3, RationalFunction) {
    let dets = bloat_determinants(vars);
    let d = dets.choose(rng).unwrap().clone();
    let mut diag = [MultiPoly::one(vars), MultiPoly::one(vars), MultiPoly::one(vars)];
    diag[rng.gen_range(0..3)] = d;
    let [a, b, c] = diag;
    let u = unipotent(rng, vars, false).mul(&Matrix3::diag(a, b, c)).mul(&unipotent(rng, vars, true));
    let s = *[1i64, 1, -1, 2, 3, 5].choose(rng).unwrap();
    (u, RationalFunction::from_integer(vars, s))
}

/// An oracle instance: a known minimal form and its bloated version.
#[derive(Clone, Debug)]
pub struct OracleInstance {
    pub d: i64,
    pub q: MultiPoly,
    pub minimal: Conic,
    pub bloated: Conic,
    pub transforms: Vec<(Matrix3, RationalFunction)>,
}

/// `diag(1, −D, −q)` for random `D` and squarefree `q` of degree ≤ 4,
/// bloated by between one and four random transforms.
pub fn oracle_instance<R: Rng>(rng: &mut R, vars: &VarList) -> OracleInstance {
    let d = *[5i64, 8, 12, 13, 17, 21].choose(rng).unwrap();
    let q = random_squarefree(rng, vars, 4);
    let minimal = Conic::diagonal(MultiPoly::one(vars), MultiPoly::constant(vars, -d), -&q).expect("nondegenerate");
    let n = rng.gen_range(1..=4);
    let mut cur = minimal.clone();
    let mut transforms = Vec::new();
    for _ in 0..n {
        let (u, s) = random_bloat_step(rng, vars);
        cur = cur.transform(&u, &s).expect("integral bloat");
        transforms.push((u, s));
    }
    OracleInstance {
        d,
        q,
        minimal,
        bloated: cur,
        transforms,
    }
}

/// A nondegenerate integral constant conic with `|Δ| ≤ bound`.
pub fn random_rational_conic<R: Rng>(rng: &mut R, vars: &VarList, bound: i64) -> Conic {
    loop {
        let mut coeffs: [MultiPoly; 6] = std::array::from_fn(|_| MultiPoly::zero(vars));
        let diagonal = rng.gen_bool(0.5);
        for (i, c) in coeffs.iter_mut().enumerate() {
            if diagonal && i >= 3 {
                continue;
            }
            let v = if rng.gen_bool(0.3) {
                // biased towards square factors so there is something to remove
                let p = *[3i64, 5, 7, 11].choose(rng).unwrap();
                p * p * rng.gen_range(-3i64..=3)
            } else {
                rng.gen_range(-60i64..=60)
            };
            *c = MultiPoly::constant(vars, v);
        }
        let Ok(l) = Conic::new(coeffs) else { continue };
        let delta = l.discriminant().as_constant().unwrap();
        if delta.magnitude() <= &BigInt::from(bound).magnitude().clone() {
            return l;
        }
    }
}

/// A random irreducible polynomial of total degree in `1..=max_deg` in two
/// variables (irreducibility certified by `certify`).
pub fn random_irreducible<R: Rng, F: Fn(&MultiPoly) -> bool>(rng: &mut R, vars: &VarList, max_deg: u32, certify: F) -> MultiPoly {
    loop {
        let d = rng.gen_range(1..=max_deg);
        let f = random_poly(rng, vars, d, 6, 0.7);
        if f.total_degree() == 0 {
            continue;
        }
        let f = crate::factor::normalize_factor(&f);
        if certify(&f) {
            return f;
        }
    }
}

/// Random unimodular matrix: a product of `n` shears with small polynomial entries.
pub fn random_unimodular<R: Rng>(rng: &mut R, vars: &VarList, n: usize) -> Matrix3 {
    let mut u = Matrix3::identity(vars);
    for _ in 0..n {
        let i = rng.gen_range(0..3);
        let j = (i + rng.gen_range(1..3)) % 3;
        let mut e = Matrix3::identity(vars);
        e.m[i][j] = random_poly(rng, vars, 1, 2, 0.7);
        u = u.mul(&e);
    }
    u
}

/// A conic with `π² | Δ` whose reduction modulo `π` is singular, so that
/// a single step at `π` applies. About half are built to take the point
/// branch (`diag(a, b, π²c)`) and half the double-line branch
/// (`diag(a, πb, π^k c)`), each hidden by a unimodular change of variables.
pub fn singular_step_instance<R: Rng>(rng: &mut R, vars: &VarList) -> (Conic, PrimeElement) {
    let pi = if rng.gen_bool(0.3) {
        PrimeElement::Rational(BigInt::from(*[3i64, 5, 7, 11].choose(rng).unwrap()))
    } else {
        let f = random_irreducible(rng, vars, 2, |f| crate::factor::is_irreducible(f).unwrap_or(false));
        PrimeElement::polynomial_unchecked(f)
    };
    let p = pi.as_poly(vars);
    let unit = |rng: &mut R| loop {
        let f = random_poly(rng, vars, 2, 6, 0.5);
        if !f.is_zero() && !pi.divides(&f) {
            return f;
        }
    };
    let (a, b, c) = (unit(rng), unit(rng), unit(rng));
    let diag = if rng.gen_bool(0.5) {
        [a, b, &c * &p.pow(2)]
    } else {
        let k = rng.gen_range(1..=3);
        [a, &b * &p, &c * &p.pow(k)]
    };
    let [x, y, z] = diag;
    let l = Conic::diagonal(x, y, z).expect("nonzero diagonal");
    let u = random_unimodular(rng, vars, 3);
    let l = l.transform(&u, &RationalFunction::one(vars)).expect("integral");
    (l, pi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn bloat_is_equivalent() {
        let v = VarList::new(&["g", "h"]);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..5 {
            let inst = oracle_instance(&mut rng, &v);
            let mut cur = inst.minimal.clone();
            for (u, s) in &inst.transforms {
                cur = cur.transform(u, s).unwrap();
            }
            assert_eq!(cur, inst.bloated);
        }
        let l = random_rational_conic(&mut rng, &v, 1_000_000);
        assert!(l.discriminant().is_constant());
    }
}
