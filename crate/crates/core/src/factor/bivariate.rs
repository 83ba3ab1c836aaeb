//! Bivariate factorisation over Z by specialisation, univariate factoring,
//! linear Hensel lifting in Q[[y - a]][x], and factor recombination.

use super::univariate::{factor_squarefree_zpoly, Subsets};
use super::zpoly::{self, ZPoly};
use super::{FactorBudget, FactorError};
use crate::poly::{content_in, is_squarefree, Monomial, MultiPoly};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

type QPoly = Vec<BigRational>;

fn q_trim(mut f: QPoly) -> QPoly {
    while f.last().is_some_and(|c| c.is_zero()) {
        f.pop();
    }
    f
}

fn q_mul(a: &QPoly, b: &QPoly) -> QPoly {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut c = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            c[i + j] += x * y;
        }
    }
    q_trim(c)
}

fn q_sub(a: &QPoly, b: &QPoly) -> QPoly {
    let n = a.len().max(b.len());
    let z = BigRational::zero();
    q_trim((0..n).map(|i| a.get(i).unwrap_or(&z) - b.get(i).unwrap_or(&z)).collect())
}

fn q_add(a: &QPoly, b: &QPoly) -> QPoly {
    let n = a.len().max(b.len());
    let z = BigRational::zero();
    q_trim((0..n).map(|i| a.get(i).unwrap_or(&z) + b.get(i).unwrap_or(&z)).collect())
}

fn q_divrem(a: &QPoly, b: &QPoly) -> (QPoly, QPoly) {
    let mut r = a.clone();
    if r.len() < b.len() {
        return (vec![], r);
    }
    let db = b.len() - 1;
    let lb = b[db].clone();
    let mut q = vec![BigRational::zero(); r.len() - db];
    for k in (0..q.len()).rev() {
        let coef = &r[k + db] / &lb;
        if coef.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            r[k + j] -= &coef * y;
        }
        q[k] = coef;
    }
    (q_trim(q), q_trim(r))
}

/// Inverse of `a` modulo `m` over Q (they must be coprime).
fn q_inverse_mod(a: &QPoly, m: &QPoly) -> QPoly {
    let (mut r0, mut r1) = (m.clone(), q_divrem(a, m).1);
    let (mut t0, mut t1): (QPoly, QPoly) = (vec![], vec![BigRational::one()]);
    while !r1.is_empty() {
        let (q, r) = q_divrem(&r0, &r1);
        r0 = r1;
        r1 = r;
        let t2 = q_sub(&t0, &q_mul(&q, &t1));
        t0 = t1;
        t1 = t2;
    }
    assert!(r0.len() == 1, "inverse of non-coprime polynomial");
    let inv = BigRational::one() / &r0[0];
    t0.iter().map(|c| c * &inv).collect()
}

/// Truncated power series in y' whose coefficients are polynomials in x.
type Series = Vec<QPoly>;

fn series_mul(a: &Series, b: &Series, prec: usize) -> Series {
    let mut out = vec![QPoly::new(); prec];
    for (i, x) in a.iter().enumerate().take(prec) {
        if x.is_empty() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(prec - i) {
            if y.is_empty() {
                continue;
            }
            out[i + j] = q_add(&out[i + j], &q_mul(x, y));
        }
    }
    out
}

/// Irreducible factors of a squarefree bivariate polynomial that is
/// primitive over Z (output primitive, positive leading coefficient).
pub(crate) fn factor_squarefree_bivariate(f: &MultiPoly, budget: &FactorBudget) -> Result<Vec<MultiPoly>, FactorError> {
    let occ = f.occurring_vars();
    match occ.len() {
        0 => return Ok(vec![]),
        1 => return univariate_factors(f, occ[0], budget),
        2 => {}
        _ => return Err(FactorError::TooManyVariables(occ.len())),
    }
    // strip contents with respect to each variable
    let mut out = Vec::new();
    let mut rest = f.clone();
    for &v in &occ {
        let c = content_in(&rest, v);
        if !c.is_constant() {
            let other = if v == occ[0] { occ[1] } else { occ[0] };
            out.extend(univariate_factors(&c, other, budget)?);
            rest = rest.div_exact(&c).unwrap();
        }
    }
    let rest = rest.normalized();
    let occ = rest.occurring_vars();
    match occ.len() {
        0 => {}
        1 => out.extend(univariate_factors(&rest, occ[0], budget)?),
        _ => out.extend(factor_primitive(&rest, occ[0], occ[1], budget)?),
    }
    Ok(out)
}

fn univariate_factors(f: &MultiPoly, x: usize, budget: &FactorBudget) -> Result<Vec<MultiPoly>, FactorError> {
    let pp = f.normalized();
    let sq = crate::poly::squarefree_decomposition(&pp).expect("nonzero");
    let mut out = Vec::new();
    for (a, m) in sq {
        let z = to_zpoly(&a, x);
        for g in factor_squarefree_zpoly(&z, budget)? {
            let poly = from_zpoly(&g, f, x);
            for _ in 0..m {
                out.push(poly.clone());
            }
        }
    }
    Ok(out)
}

pub(crate) fn to_zpoly(f: &MultiPoly, x: usize) -> ZPoly {
    let mut z = vec![BigInt::zero(); f.degree_in(x) as usize + 1];
    for (m, c) in f.terms() {
        z[m.exponent(x) as usize] = c.clone();
    }
    zpoly::trim(z)
}

pub(crate) fn from_zpoly(z: &ZPoly, like: &MultiPoly, x: usize) -> MultiPoly {
    let n = like.nvars();
    MultiPoly::from_terms(
        like.vars(),
        z.iter()
            .enumerate()
            .map(|(i, c)| (Monomial::variable(n, x, i as u32), c.clone())),
    )
}

/// Factor `f`, primitive in both `x` and `y`, squarefree.
fn factor_primitive(f: &MultiPoly, x0: usize, y0: usize, budget: &FactorBudget) -> Result<Vec<MultiPoly>, FactorError> {
    // linear in some variable and primitive: irreducible
    if f.degree_in(x0) == 1 || f.degree_in(y0) == 1 {
        return Ok(vec![f.normalized()]);
    }
    // main variable: the one of smaller degree
    let (x, y) = if f.degree_in(x0) <= f.degree_in(y0) { (x0, y0) } else { (y0, x0) };
    let lcx = f.leading_coeff_in(x);
    // choose a specialisation point y = a
    let mut best: Option<(usize, BigInt, Vec<ZPoly>)> = None;
    let mut tries = 0;
    for k in 0..200i64 {
        let a = BigInt::from(if k % 2 == 0 { k / 2 } else { -(k + 1) / 2 });
        if lcx.eval_var(y, &a).is_zero() {
            continue;
        }
        let img = f.eval_var(y, &a);
        if img.degree_in(x) != f.degree_in(x) {
            continue;
        }
        let content = img.content();
        let img_pp = img.div_integer(&content).unwrap();
        if !is_squarefree(&img_pp).unwrap_or(false) {
            continue;
        }
        let z = zpoly::primitive(&to_zpoly(&img_pp, x));
        let facs = factor_squarefree_zpoly(&z, budget)?;
        if facs.len() == 1 {
            return Ok(vec![f.normalized()]);
        }
        if best.as_ref().is_none_or(|(c, _, _)| facs.len() < *c) {
            best = Some((facs.len(), a, facs));
        }
        tries += 1;
        if tries >= 3 {
            break;
        }
    }
    let (_, a, facs) = best.ok_or(FactorError::NoGoodPoint)?;
    lift_and_recombine(f, x, y, &a, facs, budget)
}

fn to_series(f: &MultiPoly, x: usize, y: usize, prec: usize) -> Series {
    let mut s: Series = vec![QPoly::new(); prec];
    for (m, c) in f.terms() {
        let k = m.exponent(y) as usize;
        if k >= prec {
            continue;
        }
        let i = m.exponent(x) as usize;
        if s[k].len() <= i {
            s[k].resize(i + 1, BigRational::zero());
        }
        s[k][i] += BigRational::from(c.clone());
    }
    s.into_iter().map(q_trim).collect()
}

fn lift_and_recombine(
    f: &MultiPoly,
    x: usize,
    y: usize,
    a: &BigInt,
    facs: Vec<ZPoly>,
    budget: &FactorBudget,
) -> Result<Vec<MultiPoly>, FactorError> {
    let vars = f.vars().clone();
    let prec = f.degree_in(y) as usize + 1;
    let yv = MultiPoly::var(&vars, y);
    // shift y -> y + a so the expansion point is 0
    let shifted = f.substitute_var(y, &(&yv + &MultiPoly::constant(&vars, a.clone())));
    let lc_shift = shifted.leading_coeff_in(x);
    // lc as a series in y (constant in x)
    let lc_series: Vec<BigRational> = {
        let mut v = vec![BigRational::zero(); prec];
        for (m, c) in lc_shift.terms() {
            let k = m.exponent(y) as usize;
            if k < prec {
                v[k] += BigRational::from(c.clone());
            }
        }
        v
    };
    let lc_inv = series_inverse(&lc_series);
    let fs = to_series(&shifted, x, y, prec);
    // monic target: f / lc_x(f)
    let target: Series = (0..prec)
        .map(|k| {
            let mut acc = QPoly::new();
            for j in 0..=k {
                if lc_inv[k - j].is_zero() || fs[j].is_empty() {
                    continue;
                }
                acc = q_add(&acc, &fs[j].iter().map(|c| c * &lc_inv[k - j]).collect());
            }
            acc
        })
        .collect();
    // monic starting factors over Q
    let g0: Vec<QPoly> = facs
        .iter()
        .map(|z| {
            let l = BigRational::from(zpoly::lc(z));
            z.iter().map(|c| BigRational::from(c.clone()) / &l).collect()
        })
        .collect();
    let r = g0.len();
    // partial fraction multipliers s_i with Σ s_i ∏_{j≠i} g_j = 1
    let total = g0.iter().fold(vec![BigRational::one()], |acc, g| q_mul(&acc, g));
    let cof: Vec<QPoly> = g0.iter().map(|g| q_divrem(&total, g).0).collect();
    let s: Vec<QPoly> = (0..r).map(|i| q_inverse_mod(&cof[i], &g0[i])).collect();
    let mut factors: Vec<Series> = g0
        .iter()
        .map(|g| {
            let mut v = vec![QPoly::new(); prec];
            v[0] = g.clone();
            v
        })
        .collect();
    for k in 1..prec {
        let mut prod: Series = vec![QPoly::new(); k + 1];
        prod[0] = vec![BigRational::one()];
        for g in &factors {
            prod = series_mul(&prod, g, k + 1);
        }
        let e = q_sub(&target[k], &prod[k]);
        if e.is_empty() {
            continue;
        }
        for i in 0..r {
            let delta = q_divrem(&q_mul(&s[i], &e), &g0[i]).1;
            factors[i][k] = delta;
        }
    }
    // recombination
    let mut remaining: Vec<usize> = (0..r).collect();
    let mut rest = f.clone();
    let mut found = Vec::new();
    let mut size = 1;
    let mut tested = 0u64;
    while 2 * size <= remaining.len() {
        let mut progress = false;
        for subset in Subsets::new(remaining.len(), size) {
            tested += 1;
            if tested > budget.subset_limit {
                return Err(FactorError::Budget {
                    unfactored: rest.to_string(),
                });
            }
            let idx: Vec<usize> = subset.iter().map(|&i| remaining[i]).collect();
            let cand = candidate(&rest, &factors, &idx, x, y, a, prec);
            if let Some(cand) = cand {
                if let Some(q) = rest.div_exact(&cand) {
                    rest = q;
                    found.push(cand.normalized());
                    remaining = remaining
                        .iter()
                        .enumerate()
                        .filter(|(i, _)| !subset.contains(i))
                        .map(|(_, v)| *v)
                        .collect();
                    progress = true;
                    break;
                }
            }
        }
        if !progress {
            size += 1;
        }
    }
    if !rest.is_constant() {
        found.push(rest.normalized());
    }
    Ok(found)
}

/// Candidate factor `pp_x(lc_x(rest) · ∏_{i∈idx} g_i mod y'^prec)` shifted back.
fn candidate(
    rest: &MultiPoly,
    factors: &[Series],
    idx: &[usize],
    x: usize,
    y: usize,
    a: &BigInt,
    prec: usize,
) -> Option<MultiPoly> {
    let vars = rest.vars().clone();
    let yv = MultiPoly::var(&vars, y);
    let shifted = rest.substitute_var(y, &(&yv + &MultiPoly::constant(&vars, a.clone())));
    let lc_shift = shifted.leading_coeff_in(x);
    let mut prod = to_series(&lc_shift, x, y, prec);
    for &i in idx {
        prod = series_mul(&prod, &factors[i], prec);
    }
    // clear denominators
    let mut den = BigInt::one();
    for c in prod.iter().flatten() {
        den = den.lcm(c.denom());
    }
    let n = vars.len();
    let mut poly = MultiPoly::zero(&vars);
    for (k, coeffs) in prod.iter().enumerate() {
        for (i, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let v = c.numer() * (&den / c.denom());
            let mut e = vec![0u32; n];
            e[x] = i as u32;
            e[y] = k as u32;
            poly = &poly + &MultiPoly::monomial(&vars, v, Monomial::from_exponents(&e));
        }
    }
    if poly.is_zero() {
        return None;
    }
    let back = poly.substitute_var(y, &(&yv - &MultiPoly::constant(&vars, a.clone())));
    let cont = content_in(&back, x);
    let pp = back.div_exact(&cont)?.primitive_part();
    if pp.degree_in(x) == 0 {
        return None;
    }
    Some(if pp.leading_coeff().is_negative() { -pp } else { pp })
}

fn series_inverse(a: &[BigRational]) -> Vec<BigRational> {
    let n = a.len();
    let mut inv = vec![BigRational::zero(); n];
    inv[0] = BigRational::one() / &a[0];
    for k in 1..n {
        let mut acc = BigRational::zero();
        for j in 1..=k {
            acc += &a[j] * &inv[k - j];
        }
        inv[k] = -acc * &inv[0];
    }
    inv
}
