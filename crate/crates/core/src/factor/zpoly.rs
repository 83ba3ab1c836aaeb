//! Dense univariate polynomials over Z (coefficients low to high).

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub type ZPoly = Vec<BigInt>;

pub fn trim(mut f: ZPoly) -> ZPoly {
    while f.last().is_some_and(|c| c.is_zero()) {
        f.pop();
    }
    f
}

pub fn degree(f: &ZPoly) -> usize {
    f.len().saturating_sub(1)
}

pub fn lc(f: &ZPoly) -> BigInt {
    f.last().cloned().unwrap_or_default()
}

pub fn mul(a: &ZPoly, b: &ZPoly) -> ZPoly {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut c = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            c[i + j] += x * y;
        }
    }
    trim(c)
}

pub fn sub(a: &ZPoly, b: &ZPoly) -> ZPoly {
    let n = a.len().max(b.len());
    let z = BigInt::zero();
    trim((0..n).map(|i| a.get(i).unwrap_or(&z) - b.get(i).unwrap_or(&z)).collect())
}

pub fn add(a: &ZPoly, b: &ZPoly) -> ZPoly {
    let n = a.len().max(b.len());
    let z = BigInt::zero();
    trim((0..n).map(|i| a.get(i).unwrap_or(&z) + b.get(i).unwrap_or(&z)).collect())
}

pub fn scale(a: &ZPoly, k: &BigInt) -> ZPoly {
    trim(a.iter().map(|x| x * k).collect())
}

pub fn content(a: &ZPoly) -> BigInt {
    a.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
}

/// Primitive part with positive leading coefficient.
pub fn primitive(a: &ZPoly) -> ZPoly {
    let mut c = content(a);
    if c.is_zero() {
        return a.clone();
    }
    if lc(a).is_negative() {
        c = -c;
    }
    a.iter().map(|x| x / &c).collect()
}

/// Exact division over Z; `None` if not divisible.
pub fn div_exact(a: &ZPoly, b: &ZPoly) -> Option<ZPoly> {
    if b.is_empty() {
        return None;
    }
    if a.is_empty() {
        return Some(vec![]);
    }
    if a.len() < b.len() {
        return None;
    }
    let mut r = a.clone();
    let db = b.len() - 1;
    let lb = lc(b);
    let mut q = vec![BigInt::zero(); a.len() - db];
    for k in (0..q.len()).rev() {
        let (coef, rem) = r[k + db].div_rem(&lb);
        if !rem.is_zero() {
            return None;
        }
        if coef.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            r[k + j] -= &coef * y;
        }
        q[k] = coef;
    }
    if r.iter().all(|c| c.is_zero()) {
        Some(trim(q))
    } else {
        None
    }
}

/// Reduce into the symmetric range modulo `m`.
pub fn symmetric_mod(a: &ZPoly, m: &BigInt) -> ZPoly {
    let half: BigInt = m / 2;
    trim(
        a.iter()
            .map(|x| {
                let r = x.mod_floor(m);
                if r > half {
                    r - m
                } else {
                    r
                }
            })
            .collect(),
    )
}

pub fn mod_nonneg(a: &ZPoly, m: &BigInt) -> ZPoly {
    trim(a.iter().map(|x| x.mod_floor(m)).collect())
}

/// Product modulo `m` (coefficients in `[0, m)`).
pub fn mul_mod(a: &ZPoly, b: &ZPoly, m: &BigInt) -> ZPoly {
    mod_nonneg(&mul(a, b), m)
}

/// Division with remainder by a polynomial whose leading coefficient is a
/// unit modulo `m`; results reduced into `[0, m)`.
pub fn divrem_mod(a: &ZPoly, b: &ZPoly, m: &BigInt) -> (ZPoly, ZPoly) {
    let b = mod_nonneg(b, m);
    let mut r = mod_nonneg(a, m);
    if r.len() < b.len() {
        return (vec![], r);
    }
    let inv = lc(&b).modinv(m).expect("leading coefficient must be a unit");
    let db = b.len() - 1;
    let mut q = vec![BigInt::zero(); r.len() - db];
    for k in (0..q.len()).rev() {
        let coef = (&r[k + db] * &inv).mod_floor(m);
        if coef.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            r[k + j] = (&r[k + j] - &coef * y).mod_floor(m);
        }
        q[k] = coef;
    }
    (trim(q), trim(r))
}

pub fn eval(a: &ZPoly, x: &BigInt) -> BigInt {
    let mut acc = BigInt::zero();
    for c in a.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

pub fn derivative(a: &ZPoly) -> ZPoly {
    trim(a.iter().enumerate().skip(1).map(|(i, c)| c * BigInt::from(i)).collect())
}

pub fn max_abs(a: &ZPoly) -> BigInt {
    a.iter().map(|c| c.abs()).max().unwrap_or_default()
}

pub fn is_one(a: &ZPoly) -> bool {
    a.len() == 1 && a[0].is_one()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(v: &[i64]) -> ZPoly {
        v.iter().map(|x| BigInt::from(*x)).collect()
    }

    #[test]
    fn exact_division() {
        let a = z(&[-1, 0, 1]);
        let b = z(&[1, 1]);
        assert_eq!(div_exact(&a, &b), Some(z(&[-1, 1])));
        assert_eq!(div_exact(&a, &z(&[2, 1])), None);
        assert_eq!(primitive(&z(&[4, -6])), z(&[-2, 3]));
        assert_eq!(symmetric_mod(&z(&[6, 4]), &BigInt::from(7)), z(&[-1, -3]));
    }
}
