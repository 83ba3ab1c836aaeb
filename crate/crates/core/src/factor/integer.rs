//! Integer factorisation: trial division, Miller–Rabin and Pollard–Brent rho.

use super::FactorError;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

const SMALL_PRIME_LIMIT: u32 = 10_000;

fn small_primes() -> &'static [u32] {
    use std::sync::OnceLock;
    static PRIMES: OnceLock<Vec<u32>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let n = SMALL_PRIME_LIMIT as usize;
        let mut sieve = vec![true; n + 1];
        sieve[0] = false;
        sieve[1] = false;
        let mut i = 2;
        while i * i <= n {
            if sieve[i] {
                let mut j = i * i;
                while j <= n {
                    sieve[j] = false;
                    j += i;
                }
            }
            i += 1;
        }
        (2..=n as u32).filter(|k| sieve[*k as usize]).collect()
    })
}

/// Miller–Rabin with the first twenty prime bases; deterministic far beyond
/// 64-bit inputs and overwhelmingly reliable above.
pub fn is_probable_prime(n: &BigInt) -> bool {
    let n = n.abs();
    if n < BigInt::from(2) {
        return false;
    }
    for &p in small_primes().iter().take(50) {
        let pb = BigInt::from(p);
        if n == pb {
            return true;
        }
        if (&n % &pb).is_zero() {
            return false;
        }
    }
    let one = BigInt::one();
    let nm1 = &n - &one;
    let s = nm1.trailing_zeros().unwrap_or(0);
    let d = &nm1 >> s;
    'bases: for &a in small_primes().iter().take(20) {
        let mut x = BigInt::from(a).modpow(&d, &n);
        if x == one || x == nm1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % &n;
            if x == nm1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

/// Work limit for integer factorisation (rho iterations per split).
#[derive(Clone, Copy, Debug)]
pub struct IntegerBudget {
    pub rho_iterations: u64,
}

impl Default for IntegerBudget {
    fn default() -> Self {
        IntegerBudget {
            rho_iterations: 2_000_000,
        }
    }
}

/// Prime factorisation of `|n|`, ascending by prime.
pub fn factor_integer(n: &BigInt) -> Result<Vec<(BigInt, u32)>, FactorError> {
    factor_integer_with(n, IntegerBudget::default())
}

pub fn factor_integer_with(n: &BigInt, budget: IntegerBudget) -> Result<Vec<(BigInt, u32)>, FactorError> {
    if n.is_zero() {
        return Err(FactorError::Zero);
    }
    let mut m = n.abs();
    let mut out: Vec<(BigInt, u32)> = Vec::new();
    for &p in small_primes() {
        let pb = BigInt::from(p);
        if &pb * &pb > m {
            break;
        }
        let mut e = 0;
        loop {
            let (q, r) = m.div_rem(&pb);
            if !r.is_zero() {
                break;
            }
            m = q;
            e += 1;
        }
        if e > 0 {
            out.push((pb, e));
        }
    }
    if m > BigInt::one() {
        let mut stack = vec![m];
        let mut big: Vec<BigInt> = Vec::new();
        while let Some(x) = stack.pop() {
            if x.is_one() {
                continue;
            }
            if is_probable_prime(&x) {
                big.push(x);
                continue;
            }
            if let Some(r) = perfect_power_root(&x) {
                let (root, k) = r;
                for _ in 0..k {
                    stack.push(root.clone());
                }
                continue;
            }
            match pollard_brent(&x, budget.rho_iterations) {
                Some(d) => {
                    let q = &x / &d;
                    stack.push(d);
                    stack.push(q);
                }
                None => return Err(FactorError::Budget { unfactored: x.to_string() }),
            }
        }
        big.sort();
        for p in big {
            match out.last_mut() {
                Some((q, e)) if *q == p => *e += 1,
                _ => out.push((p, 1)),
            }
        }
    }
    out.sort();
    Ok(out)
}

/// Detect `x = r^k` for `k ≥ 2`, returning the smallest root.
fn perfect_power_root(x: &BigInt) -> Option<(BigInt, u32)> {
    let bits = x.bits() as u32;
    for k in (2..=bits.max(2)).rev() {
        let r = x.nth_root(k);
        if r > BigInt::one() && r.pow(k) == *x {
            return Some((r, k));
        }
    }
    None
}

fn pollard_brent(n: &BigInt, max_iter: u64) -> Option<BigInt> {
    if n.is_even() {
        return Some(BigInt::from(2));
    }
    let one = BigInt::one();
    let mut spent = 0u64;
    for c in 1u32.. {
        let c = BigInt::from(c);
        let f = |x: &BigInt| (x * x + &c) % n;
        let mut y = BigInt::from(2);
        let mut r: u64 = 1;
        let mut q = BigInt::one();
        let m: u64 = 128;
        let mut g = BigInt::one();
        let mut x = y.clone();
        let mut ys = y.clone();
        while g.is_one() {
            x = y.clone();
            for _ in 0..r {
                y = f(&y);
            }
            let mut k = 0;
            while k < r && g.is_one() {
                ys = y.clone();
                let lim = m.min(r - k);
                for _ in 0..lim {
                    y = f(&y);
                    q = (&q * (&x - &y).abs()) % n;
                }
                g = q.gcd(n);
                k += lim;
                spent += lim;
            }
            r *= 2;
            if spent > max_iter {
                return None;
            }
        }
        if &g == n {
            loop {
                ys = f(&ys);
                g = (&x - &ys).abs().gcd(n);
                if g > one {
                    break;
                }
            }
        }
        if &g != n {
            return Some(g);
        }
        if spent > max_iter {
            return None;
        }
    }
    None
}

/// Radical of a nonzero integer (product of its distinct primes, positive).
pub fn radical(n: &BigInt) -> Result<BigInt, FactorError> {
    Ok(factor_integer(n)?.into_iter().fold(BigInt::one(), |a, (p, _)| a * p))
}

/// Number of distinct odd primes dividing `n`.
pub fn odd_prime_count(n: &BigInt) -> Result<usize, FactorError> {
    Ok(factor_integer(n)?.iter().filter(|(p, _)| p.to_u32() != Some(2)).count())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factors() {
        let f = factor_integer(&BigInt::from(-360)).unwrap();
        assert_eq!(f, vec![(2.into(), 3), (3.into(), 2), (5.into(), 1)]);
        let n: BigInt = "1000000016000000063".parse().unwrap(); // 1000000007 * 1000000009
        let f = factor_integer(&n).unwrap();
        assert_eq!(f, vec![(1000000007.into(), 1), (1000000009.into(), 1)]);
        let sq: BigInt = BigInt::from(1000003u64).pow(2) * 7;
        assert_eq!(factor_integer(&sq).unwrap(), vec![(7.into(), 1), (1000003.into(), 2)]);
        assert!(factor_integer(&BigInt::zero()).is_err());
        assert!(factor_integer(&BigInt::one()).unwrap().is_empty());
    }

    #[test]
    fn primality() {
        assert!(is_probable_prime(&BigInt::from(2147483629u64)));
        assert!(!is_probable_prime(&BigInt::from(561)));
        let m127 = (BigInt::one() << 127) - 1;
        assert!(is_probable_prime(&m127));
    }

    #[test]
    fn budget() {
        // product of two ~40-bit primes with a tiny budget
        let n = BigInt::from(1099511627791u64) * BigInt::from(1099511628401u64);
        let r = factor_integer_with(&n, IntegerBudget { rho_iterations: 10 });
        assert!(matches!(r, Err(FactorError::Budget { .. })));
    }
}
