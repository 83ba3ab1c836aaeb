//! Affine patch swaps `t_i ↦ 1/t_i`, `t_j ↦ t_j/t_i`.
//!
//! The substitution σ is an involution of the function field. On
//! polynomials we use the integral version `t_i^d · σ(f)` for `d ≥ deg f`,
//! which amounts to homogenising, exchanging `t_i` with the homogenising
//! variable, and dehomogenising.

use super::form::Conic;
use super::log::TransformLog;
use super::matrix::Matrix3;
use super::scale::scale_minimise;
use super::ConicError;
use crate::poly::{Monomial, MultiPoly, RationalFunction};

/// `t_i^d · σ(f)`; requires `d ≥ deg f`.
pub fn swap_poly(f: &MultiPoly, i: usize, d: u32) -> MultiPoly {
    MultiPoly::from_terms(
        f.vars(),
        f.terms().map(|(m, c)| {
            assert!(m.degree() <= d, "swap degree below polynomial degree");
            (m.with_exponent(i, d - m.degree()), c.clone())
        }),
    )
}

/// `σ(f)` for a rational function.
pub fn swap_rational(s: &RationalFunction, i: usize) -> RationalFunction {
    let (n, d) = (s.numer(), s.denom());
    let dn = n.total_degree();
    let dd = d.total_degree();
    let num = swap_poly(n, i, dn);
    let den = swap_poly(d, i, dd);
    let r = RationalFunction::new(num, den).expect("nonzero denominator");
    &r * &t_power(s.vars(), i, dd as i64 - dn as i64)
}

/// `t_i^k` as a rational function (`k` may be negative).
pub fn t_power(vars: &crate::poly::VarList, i: usize, k: i64) -> RationalFunction {
    let m = MultiPoly::monomial(vars, 1.into(), Monomial::variable(vars.len(), i, k.unsigned_abs() as u32));
    if k >= 0 {
        RationalFunction::from_poly(m)
    } else {
        RationalFunction::new(MultiPoly::one(vars), m).unwrap()
    }
}

/// `(t_i^m σ(U), m)` with `m` the largest entry degree, so the result is polynomial.
pub fn swap_matrix(u: &Matrix3, i: usize) -> (Matrix3, u32) {
    let m = u.max_entry_degree();
    (u.map(|e| swap_poly(e, i, m)), m)
}

/// Maximal total degree among the six coefficients.
pub fn conic_degree(l: &Conic) -> u32 {
    l.coeffs().iter().map(|c| c.total_degree()).max().unwrap_or(0)
}

/// `t_i^d · σ(L)` with `d` the maximal coefficient degree (no minimisation).
pub fn swap_raw(l: &Conic, i: usize) -> Result<(Conic, u32), ConicError> {
    let d = conic_degree(l);
    let coeffs = std::array::from_fn(|k| swap_poly(&l.coeffs()[k], i, d));
    Ok((Conic::new(coeffs)?, d))
}

/// Result of moving to the other affine patch.
#[derive(Clone, Debug)]
pub struct PatchSwap {
    pub var: usize,
    /// The degree `d` used for `t_i^d σ(L)`.
    pub degree: u32,
    /// The conic in the new patch after scale minimisation.
    pub conic: Conic,
    /// Scale-minimisation steps taken in the new patch, starting from `t_i^d σ(L)`.
    pub log: TransformLog,
}

/// Swap to the affine patch where `t_i` is inverted, then scale-minimise.
pub fn swap_affine_patch(l: &Conic, i: usize) -> Result<PatchSwap, ConicError> {
    if i >= l.vars().len() {
        return Err(ConicError::InvalidTransform(format!("no variable with index {i}")));
    }
    let (raw, d) = swap_raw(l, i)?;
    let (conic, log) = scale_minimise(&raw)?;
    Ok(PatchSwap {
        var: i,
        degree: d,
        conic,
        log,
    })
}

/// Translate an excursion into the swapped patch back into a single step of
/// the original frame.
///
/// `d_in` is the degree used to enter the patch and `patch_log` holds every
/// step taken there (starting from `t_i^{d_in} σ(L)`). Returns the step
/// `(U, s)` such that `s · Uᵀ L U = t_i^{d_out} σ(L_patch)`, along with that conic,
/// where `L_patch` is the last conic of the patch log.
pub fn excursion_step(
    original: &Conic,
    i: usize,
    d_in: u32,
    patch_log: &TransformLog,
    patch_final: &Conic,
) -> Result<(Matrix3, RationalFunction, Conic), ConicError> {
    let (u_sw, s_sw) = patch_log.compose();
    let (w, m) = swap_matrix(&u_sw, i);
    let (back, d_out) = swap_raw(patch_final, i)?;
    let vars = original.vars();
    let s = &swap_rational(&s_sw, i) * &t_power(vars, i, d_out as i64 - d_in as i64 - 2 * m as i64);
    let result = original.transform(&w, &s)?;
    if result != back {
        return Err(ConicError::InvalidTransform("patch excursion does not map back consistently".into()));
    }
    Ok((w, s, result))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::VarList;

    fn v() -> VarList {
        VarList::new(&["t1", "t2"])
    }

    #[test]
    fn swap_is_involution_on_polys() {
        let f = MultiPoly::parse("3*t1^2*t2 + t2^3 - 7*t1 + 2", &v()).unwrap();
        let g = swap_poly(&f, 0, 3);
        assert_eq!(g, MultiPoly::parse("3*t2 + t2^3 - 7*t1^2 + 2*t1^3", &v()).unwrap());
        assert_eq!(swap_poly(&g, 0, 3), f);
        let r = RationalFunction::parse("(t1 + t2)/t1^2", &v()).unwrap();
        assert_eq!(swap_rational(&swap_rational(&r, 1), 1), r);
    }

    #[test]
    fn example_swap() {
        // X² + t1³Y² + t1Z²: t1³σ(L) = t1³X² + Y² + t1²Z², which scale-minimises to t1X² + Y² + Z².
        let l = Conic::from_strs(&v(), ["1", "t1^3", "t1", "0", "0", "0"]).unwrap();
        let sw = swap_affine_patch(&l, 0).unwrap();
        assert_eq!(sw.degree, 3);
        assert_eq!(sw.conic, Conic::from_strs(&v(), ["t1", "1", "1", "0", "0", "0"]).unwrap());
        // and the excursion maps back to a valid original-frame step
        let (_, _, back) = excursion_step(&l, 0, sw.degree, &sw.log, &sw.conic).unwrap();
        assert_eq!(back, Conic::from_strs(&v(), ["1", "t1", "t1", "0", "0", "0"]).unwrap());
    }
}
