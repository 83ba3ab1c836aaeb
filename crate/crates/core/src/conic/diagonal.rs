//! Diagonalisation by completing the square with integral transforms.

use super::form::Conic;
use super::log::TransformLog;
use super::matrix::Matrix3;
use super::ConicError;
use crate::poly::{MultiPoly, RationalFunction};

#[derive(Clone, Debug)]
pub struct Diagonalisation {
    /// Diagonal entries of a form equivalent to the input by a change of
    /// variables alone, so `8αβγ / Δ` is a nonzero square.
    pub alpha: RationalFunction,
    pub beta: RationalFunction,
    pub gamma: RationalFunction,
    /// An integral diagonal conic reached by the logged steps.
    pub conic: Conic,
    pub log: TransformLog,
}

/// Make the diagonal coefficient at `k` nonzero, acting only on variables ≥ `k`.
fn pivot(cur: &Conic, k: usize, log: &mut TransformLog) -> Result<Conic, ConicError> {
    if !cur.diag(k).is_zero() {
        return Ok(cur.clone());
    }
    let vars = cur.vars().clone();
    if let Some(j) = (k + 1..3).find(|&j| !cur.diag(j).is_zero()) {
        let mut p = [0, 1, 2];
        p.swap(k, j);
        let u = Matrix3::permutation(&vars, p);
        return log.apply(cur, "permute", format!("{p:?}"), u, RationalFunction::one(&vars));
    }
    // all remaining diagonal entries vanish: x_k -> x_k + x_j for a nonzero cross term
    let j = (k + 1..3)
        .find(|&j| !cur.cross(k, j).is_zero())
        .expect("nondegenerate form has a nonzero cross term");
    let mut u = Matrix3::identity(&vars);
    u.m[j][k] = MultiPoly::one(&vars);
    log.apply(cur, "shear", format!("x{k} + x{j}"), u, RationalFunction::one(&vars))
}

pub fn diagonalise(l: &Conic) -> Result<Diagonalisation, ConicError> {
    let vars = l.vars().clone();
    let mut log = TransformLog::new(&vars);
    let mut cur = l.clone();
    for k in 0..2 {
        if (k + 1..3).all(|j| cur.cross(k, j).is_zero()) {
            continue;
        }
        cur = pivot(&cur, k, &mut log)?;
        // U = 2a·I with row k carrying −(cross terms); s = 1/a keeps it integral
        let a = cur.diag(k).clone();
        let mut u = Matrix3::identity(&vars).scale(&a.scale(&2.into()));
        for j in k + 1..3 {
            u.m[k][j] = -cur.cross(k, j);
        }
        let s = RationalFunction::new(MultiPoly::one(&vars), a)?;
        cur = log.apply(&cur, "complete-square", format!("pivot x{k}"), u, s)?;
    }
    let (_, s_total) = log.compose();
    let entries: Vec<RationalFunction> = (0..3)
        .map(|i| RationalFunction::from_poly(cur.diag(i).clone()).checked_div(&s_total))
        .collect::<Result<_, _>>()?;
    let [alpha, beta, gamma]: [RationalFunction; 3] = entries.try_into().unwrap();
    Ok(Diagonalisation {
        alpha,
        beta,
        gamma,
        conic: cur,
        log,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::VarList;
    use num_bigint::BigInt;
    use num_traits::Signed;

    fn v() -> VarList {
        VarList::new(&["g", "h"])
    }

    /// Whether a nonzero rational function is a square in Q(g, h).
    fn is_square(r: &RationalFunction) -> bool {
        super::super::norm::is_square_rational(r)
    }

    #[test]
    fn diagonal_input_is_fixed() {
        let l = Conic::from_strs(&v(), ["1", "-5", "g", "0", "0", "0"]).unwrap();
        let d = diagonalise(&l).unwrap();
        assert!(d.log.is_empty());
        assert_eq!(d.conic, l);
    }

    /// Sign times squarefree part of a nonzero rational constant.
    fn square_class(r: &RationalFunction) -> BigInt {
        let n = r.numer().as_constant().unwrap() * r.denom().as_constant().unwrap();
        let mut class = if n.is_negative() { BigInt::from(-1) } else { BigInt::from(1) };
        for (p, e) in crate::factor::factor_integer(&n).unwrap() {
            if e % 2 == 1 {
                class *= p;
            }
        }
        class
    }

    #[test]
    fn hyperbolic_plane() {
        // XY + Z² is diag(1, −1, 1) up to squares and order
        let l = Conic::from_strs(&v(), ["0", "0", "1", "1", "0", "0"]).unwrap();
        let d = diagonalise(&l).unwrap();
        assert!(d.conic.is_diagonal());
        assert_eq!(d.log.replay(&l).unwrap(), d.conic);
        let mut classes: Vec<BigInt> = [&d.alpha, &d.beta, &d.gamma].iter().map(|x| square_class(x)).collect();
        classes.sort();
        assert_eq!(classes, vec![BigInt::from(-1), BigInt::from(1), BigInt::from(1)]);
    }

    #[test]
    fn invariant_mod_squares() {
        let l = Conic::from_strs(&v(), ["g", "h + 1", "3", "2*g", "h", "1 - g"]).unwrap();
        let d = diagonalise(&l).unwrap();
        assert_eq!(d.log.replay(&l).unwrap(), d.conic);
        let prod = &(&d.alpha * &d.beta) * &d.gamma;
        let ratio = prod.scale_integer(&8.into()).checked_div(&RationalFunction::from_poly(l.discriminant())).unwrap();
        assert!(is_square(&ratio));
    }
}
