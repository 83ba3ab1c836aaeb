//! Univariate factorisation over Z: Berlekamp–Zassenhaus with quadratic
//! Hensel lifting along a factor tree and subset recombination.

use super::modp::{self, FpPoly};
use super::zpoly::{self, ZPoly};
use super::{FactorBudget, FactorError};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Irreducible factors of a primitive squarefree polynomial with positive
/// leading coefficient. Factors are primitive with positive leading coefficient.
pub fn factor_squarefree_zpoly(f: &ZPoly, budget: &FactorBudget) -> Result<Vec<ZPoly>, FactorError> {
    let n = zpoly::degree(f);
    if n == 0 {
        return Ok(vec![]);
    }
    if n == 1 {
        return Ok(vec![zpoly::primitive(f)]);
    }
    // pull out x^k (cannot occur twice in a squarefree polynomial)
    if f[0].is_zero() {
        let rest: ZPoly = f[1..].to_vec();
        let mut out = vec![vec![BigInt::zero(), BigInt::one()]];
        out.extend(factor_squarefree_zpoly(&rest, budget)?);
        return Ok(out);
    }
    let lead = zpoly::lc(f);
    let (p, facs) = choose_prime(f, &lead)?;
    if facs.len() == 1 {
        return Ok(vec![f.clone()]);
    }
    // coefficient bound: any factor has |coeff| ≤ 2^n ‖f‖₂
    let norm2: BigInt = f.iter().map(|c| c * c).sum::<BigInt>().sqrt() + 1;
    let bound: BigInt = BigInt::from(2) * lead.abs() * (BigInt::one() << n) * norm2;
    let pb = BigInt::from(p);
    let mut modulus = pb.clone();
    let mut k = 1u32;
    while modulus <= bound {
        modulus *= &pb;
        k += 1;
    }
    let _ = k;
    let inv_lead = lead.mod_floor(&modulus).modinv(&modulus).expect("lc is a unit mod p");
    let monic = zpoly::mod_nonneg(&zpoly::scale(f, &inv_lead), &modulus);
    let lifted = lift_tree(&monic, &facs, p, &modulus);
    recombine(f, lifted, &modulus, budget)
}

fn choose_prime(f: &ZPoly, lead: &BigInt) -> Result<(u64, Vec<FpPoly>), FactorError> {
    let mut best: Option<(usize, u64, FpPoly)> = None;
    let mut good = 0;
    let disc_ok = |img: &FpPoly| img.deg() == zpoly::degree(f) && img.is_squarefree();
    for p in PrimeIter::new(3) {
        if p > 50_000 {
            break;
        }
        let pb = BigInt::from(p);
        if (lead % &pb).is_zero() {
            continue;
        }
        let img = to_fp(f, p);
        if !disc_ok(&img) {
            continue;
        }
        let count = modp::count_factors(&img);
        if best.as_ref().is_none_or(|(c, _, _)| count < *c) {
            best = Some((count, p, img));
        }
        good += 1;
        if count == 1 || good >= 6 {
            break;
        }
    }
    let (_, p, img) = best.ok_or(FactorError::NoGoodPrime)?;
    Ok((p, modp::factor_squarefree(&img)))
}

pub(crate) fn to_fp(f: &ZPoly, p: u64) -> FpPoly {
    let pb = BigInt::from(p);
    FpPoly::new(p, f.iter().map(|c| c.mod_floor(&pb).to_u64().unwrap()).collect())
}

fn from_fp(f: &FpPoly) -> ZPoly {
    f.coeffs().iter().map(|c| BigInt::from(*c)).collect()
}

/// Lift monic factors modulo `p` of the monic (mod `modulus`) polynomial `f`
/// to monic factors modulo `modulus = p^k`.
fn lift_tree(f: &ZPoly, facs: &[FpPoly], p: u64, modulus: &BigInt) -> Vec<ZPoly> {
    if facs.len() == 1 {
        return vec![zpoly::mod_nonneg(f, modulus)];
    }
    let mid = facs.len() / 2;
    let g0 = facs[..mid].iter().fold(FpPoly::one(p), |a, b| a.mul(b));
    let h0 = facs[mid..].iter().fold(FpPoly::one(p), |a, b| a.mul(b));
    let (one, s0, t0) = g0.ext_gcd(&h0);
    debug_assert!(one.is_one());
    let mut g = from_fp(&g0);
    let mut h = from_fp(&h0);
    let mut s = from_fp(&s0);
    let mut t = from_fp(&t0);
    let mut m = BigInt::from(p);
    while &m < modulus {
        let m2 = &m * &m;
        hensel_step(f, &mut g, &mut h, &mut s, &mut t, &m2);
        m = m2;
    }
    let g = zpoly::mod_nonneg(&g, modulus);
    let h = zpoly::mod_nonneg(&h, modulus);
    let mut out = lift_tree(&g, &facs[..mid], p, modulus);
    out.extend(lift_tree(&h, &facs[mid..], p, modulus));
    out
}

/// One quadratic Hensel step: from `f ≡ gh (mod m)`, `sg + th ≡ 1 (mod m)`
/// to the same relations modulo `m2 = m²`.
fn hensel_step(f: &ZPoly, g: &mut ZPoly, h: &mut ZPoly, s: &mut ZPoly, t: &mut ZPoly, m2: &BigInt) {
    let e = zpoly::mod_nonneg(&zpoly::sub(f, &zpoly::mul(g, h)), m2);
    let (q, r) = zpoly::divrem_mod(&zpoly::mul(s, &e), h, m2);
    let g_new = zpoly::mod_nonneg(&zpoly::add(&zpoly::add(g, &zpoly::mul(t, &e)), &zpoly::mul(&q, g)), m2);
    let h_new = zpoly::mod_nonneg(&zpoly::add(h, &r), m2);
    let b = zpoly::mod_nonneg(
        &zpoly::sub(&zpoly::add(&zpoly::mul(s, &g_new), &zpoly::mul(t, &h_new)), &vec![BigInt::one()]),
        m2,
    );
    let (c, d) = zpoly::divrem_mod(&zpoly::mul(s, &b), &h_new, m2);
    let s_new = zpoly::mod_nonneg(&zpoly::sub(s, &d), m2);
    let t_new = zpoly::mod_nonneg(&zpoly::sub(&zpoly::sub(t, &zpoly::mul(t, &b)), &zpoly::mul(&c, &g_new)), m2);
    *g = g_new;
    *h = h_new;
    *s = s_new;
    *t = t_new;
}

fn recombine(f: &ZPoly, mut lifted: Vec<ZPoly>, modulus: &BigInt, budget: &FactorBudget) -> Result<Vec<ZPoly>, FactorError> {
    let mut rest = f.clone();
    let mut found = Vec::new();
    let mut size = 1;
    let mut tested: u64 = 0;
    while 2 * size <= lifted.len() {
        let mut progress = false;
        for subset in Subsets::new(lifted.len(), size) {
            tested += 1;
            if tested > budget.subset_limit {
                return Err(FactorError::Budget {
                    unfactored: format!("{:?}", rest),
                });
            }
            let lead = zpoly::lc(&rest);
            let mut cand = vec![lead.clone()];
            for &i in &subset {
                cand = zpoly::mul_mod(&cand, &lifted[i], modulus);
            }
            let cand = zpoly::primitive(&zpoly::symmetric_mod(&cand, modulus));
            if !rest[0].is_zero() && !(&rest[0] % &cand[0]).is_zero() {
                continue;
            }
            if let Some(q) = zpoly::div_exact(&rest, &cand) {
                rest = q;
                found.push(cand);
                let mut keep = Vec::with_capacity(lifted.len() - size);
                for (i, u) in lifted.into_iter().enumerate() {
                    if !subset.contains(&i) {
                        keep.push(u);
                    }
                }
                lifted = keep;
                progress = true;
                break;
            }
        }
        if !progress {
            size += 1;
        }
    }
    if zpoly::degree(&rest) > 0 {
        found.push(zpoly::primitive(&rest));
    }
    Ok(found)
}

/// k-subsets of 0..n in lexicographic order.
pub(crate) struct Subsets {
    n: usize,
    idx: Vec<usize>,
    done: bool,
}

impl Subsets {
    pub(crate) fn new(n: usize, k: usize) -> Self {
        Subsets {
            n,
            idx: (0..k).collect(),
            done: k > n,
        }
    }
}

impl Iterator for Subsets {
    type Item = Vec<usize>;
    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let out = self.idx.clone();
        let k = self.idx.len();
        let mut i = k;
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            if self.idx[i] < self.n - k + i {
                self.idx[i] += 1;
                for j in i + 1..k {
                    self.idx[j] = self.idx[j - 1] + 1;
                }
                break;
            }
        }
        Some(out)
    }
}

/// Odd primes in increasing order starting at `start`.
pub(crate) struct PrimeIter {
    cur: u64,
}

impl PrimeIter {
    pub(crate) fn new(start: u64) -> Self {
        PrimeIter { cur: start.max(2) - 1 }
    }
}

impl Iterator for PrimeIter {
    type Item = u64;
    fn next(&mut self) -> Option<u64> {
        loop {
            self.cur += 1;
            let c = self.cur;
            if c < 2 {
                continue;
            }
            if (2..).take_while(|d| d * d <= c).all(|d| !c.is_multiple_of(d)) {
                return Some(c);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(v: &[i64]) -> ZPoly {
        v.iter().map(|x| BigInt::from(*x)).collect()
    }

    #[test]
    fn swinnerton_dyer_like() {
        // x^4 - 10x^2 + 1 is irreducible but splits modulo every prime
        let f = z(&[1, 0, -10, 0, 1]);
        let fs = factor_squarefree_zpoly(&f, &FactorBudget::default()).unwrap();
        assert_eq!(fs, vec![f]);
    }

    #[test]
    fn products() {
        let a = z(&[-25, 0, 27, 0, 3]); // 3h^4 + 27h^2 - 25
        let b = z(&[-1, 0, 27]);
        let c = z(&[3, 10]);
        let f = zpoly::mul(&zpoly::mul(&a, &b), &c);
        let mut fs = factor_squarefree_zpoly(&f, &FactorBudget::default()).unwrap();
        fs.sort();
        let mut want = vec![a, b, c];
        want.sort();
        assert_eq!(fs, want);
    }

    #[test]
    fn subsets_enumeration() {
        let all: Vec<_> = Subsets::new(4, 2).collect();
        assert_eq!(all.len(), 6);
        assert_eq!(all[0], vec![0, 1]);
        assert_eq!(all[5], vec![2, 3]);
    }
}
