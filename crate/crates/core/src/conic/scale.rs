//! Scale minimisation: the three rescaling rules applied to a fixpoint.

use super::form::Conic;
use super::log::TransformLog;
use super::matrix::Matrix3;
use super::ConicError;
use crate::factor::radical;
use crate::poly::{gcd, squarefree_part, MultiPoly, RationalFunction};
use num_bigint::BigInt;
use num_traits::One;

const VAR_NAMES: [&str; 3] = ["X", "Y", "Z"];

/// Radical of a nonzero polynomial: product of its distinct prime factors,
/// integer primes of the content included.
pub fn poly_radical(h: &MultiPoly) -> Result<MultiPoly, ConicError> {
    let (c, pp) = h.content_and_primitive()?;
    let rc = radical(&c)?;
    let sp = if pp.is_constant() { MultiPoly::one(h.vars()) } else { squarefree_part(&pp)? };
    Ok(sp.scale(&rc))
}

fn is_unit(p: &MultiPoly) -> bool {
    p.as_constant().is_some_and(|c| c == BigInt::one() || c == -BigInt::one())
}

/// Apply the content, variable-scaling and radical rules until none applies.
pub fn scale_minimise(l: &Conic) -> Result<(Conic, TransformLog), ConicError> {
    let vars = l.vars().clone();
    let one = MultiPoly::one(&vars);
    let mut log = TransformLog::new(&vars);
    let mut cur = l.clone();
    'outer: loop {
        // (i) integer content
        let c = cur.content();
        if c > BigInt::one() {
            let s = RationalFunction::from_ratio(&vars, 1, c.clone())?;
            cur = log.apply(&cur, "scale-content", format!("1/{c}"), Matrix3::identity(&vars), s)?;
            continue;
        }
        // (ii) variable rescaling x_i -> x_i / w
        for i in 0..3 {
            let (j, k) = others(i);
            let h = gcd(&gcd(cur.diag(i), cur.cross(i, j)), cur.cross(i, k));
            if h.is_zero() || is_unit(&h) {
                continue;
            }
            let r = poly_radical(&h)?;
            let quotient = cur.diag(i).div_exact(&r).expect("radical divides");
            let w = gcd(&r, &quotient);
            if is_unit(&w) {
                continue;
            }
            let mut d = [one.clone(), one.clone(), one.clone()];
            d[j] = w.clone();
            d[k] = w.clone();
            let [d0, d1, d2] = d;
            let s = RationalFunction::new(one.clone(), &w * &w)?;
            cur = log.apply(
                &cur,
                "scale-var",
                format!("{} -> {}/({})", VAR_NAMES[i], VAR_NAMES[i], w),
                Matrix3::diag(d0, d1, d2),
                s,
            )?;
            continue 'outer;
        }
        // (iii) radical of the coefficients not involving x_k
        for k in [2usize, 1, 0] {
            let (i, j) = others(k);
            let g = gcd(&gcd(cur.diag(i), cur.diag(j)), cur.cross(i, j));
            if g.is_zero() || is_unit(&g) {
                continue;
            }
            let w = poly_radical(&g)?;
            let mut d = [one.clone(), one.clone(), one.clone()];
            d[k] = w.clone();
            let [d0, d1, d2] = d;
            let s = RationalFunction::new(one.clone(), w.clone())?;
            cur = log.apply(
                &cur,
                "scale-radical",
                format!("{} -> ({})*{}", VAR_NAMES[k], w, VAR_NAMES[k]),
                Matrix3::diag(d0, d1, d2),
                s,
            )?;
            continue 'outer;
        }
        break;
    }
    Ok((cur, log))
}

/// Whether no scale rule applies.
pub fn is_scale_minimal(l: &Conic) -> Result<bool, ConicError> {
    Ok(scale_minimise(l)?.1.is_empty())
}

pub(crate) fn others(i: usize) -> (usize, usize) {
    match i {
        0 => (1, 2),
        1 => (0, 2),
        _ => (0, 1),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::VarList;

    fn v() -> VarList {
        VarList::new(&["t1", "t2"])
    }

    #[test]
    fn removes_square_factors() {
        let l = Conic::from_strs(&v(), ["1", "t1^2", "t1^2", "0", "0", "0"]).unwrap();
        let (m, log) = scale_minimise(&l).unwrap();
        assert_eq!(m, Conic::from_strs(&v(), ["1", "1", "1", "0", "0", "0"]).unwrap());
        assert_eq!(log.replay(&l).unwrap(), m);
    }

    #[test]
    fn content_and_radical() {
        let l = Conic::from_strs(&v(), ["6*t1", "6*t1", "6", "0", "0", "0"]).unwrap();
        let (m, log) = scale_minimise(&l).unwrap();
        // content 6 removed, then Z -> t1 Z with s = 1/t1
        assert_eq!(m, Conic::from_strs(&v(), ["1", "1", "t1", "0", "0", "0"]).unwrap());
        assert_eq!(log.replay(&l).unwrap(), m);
        assert!(is_scale_minimal(&m).unwrap());
    }

    #[test]
    fn minimal_input_untouched() {
        let l = Conic::from_strs(&v(), ["1", "-21", "-(18*t1^2 - 12*t1*t2 - 12*t2^2 - 14)", "0", "0", "0"]).unwrap();
        let (m, log) = scale_minimise(&l).unwrap();
        assert!(log.is_empty());
        assert_eq!(m, l);
    }
}
