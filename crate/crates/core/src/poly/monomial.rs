use smallvec::SmallVec;
use std::cmp::Ordering;

/// Exponent vector of a monomial, ordered by graded reverse lexicographic order.
///
/// The total degree is cached because it is the first comparison key.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial {
    deg: u32,
    exps: SmallVec<[u32; 6]>,
}

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial {
            deg: 0,
            exps: SmallVec::from_elem(0, nvars),
        }
    }

    pub fn from_exponents(exps: &[u32]) -> Self {
        Monomial {
            deg: exps.iter().sum(),
            exps: SmallVec::from_slice(exps),
        }
    }

    pub fn variable(nvars: usize, i: usize, power: u32) -> Self {
        let mut m = Monomial::one(nvars);
        m.exps[i] = power;
        m.deg = power;
        m
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.deg
    }

    #[inline]
    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    #[inline]
    pub fn exponent(&self, i: usize) -> u32 {
        self.exps[i]
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn is_one(&self) -> bool {
        self.deg == 0
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.exps.len(), other.exps.len());
        let exps = self
            .exps
            .iter()
            .zip(other.exps.iter())
            .map(|(a, b)| a + b)
            .collect();
        Monomial {
            deg: self.deg + other.deg,
            exps,
        }
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut exps = SmallVec::with_capacity(self.exps.len());
        for (a, b) in self.exps.iter().zip(other.exps.iter()) {
            if a < b {
                return None;
            }
            exps.push(a - b);
        }
        Some(Monomial {
            deg: self.deg - other.deg,
            exps,
        })
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(other.exps.iter()).all(|(a, b)| a <= b)
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        let exps: SmallVec<[u32; 6]> = self
            .exps
            .iter()
            .zip(other.exps.iter())
            .map(|(a, b)| *a.min(b))
            .collect();
        Monomial {
            deg: exps.iter().sum(),
            exps,
        }
    }

    pub fn pow(&self, e: u32) -> Monomial {
        Monomial {
            deg: self.deg * e,
            exps: self.exps.iter().map(|x| x * e).collect(),
        }
    }

    /// Replace the exponent of variable `i`.
    pub fn with_exponent(&self, i: usize, e: u32) -> Monomial {
        let mut m = self.clone();
        m.deg = m.deg - m.exps[i] + e;
        m.exps[i] = e;
        m
    }

    pub fn swap(&self, i: usize, j: usize) -> Monomial {
        let mut m = self.clone();
        m.exps.swap(i, j);
        m
    }

    /// Monomial with variable `i` removed from the exponent vector.
    pub fn remove_var(&self, i: usize) -> Monomial {
        let mut exps = self.exps.clone();
        let e = exps.remove(i);
        Monomial {
            deg: self.deg - e,
            exps,
        }
    }

    /// Monomial with a new variable inserted at position `i`.
    pub fn insert_var(&self, i: usize, e: u32) -> Monomial {
        let mut exps = self.exps.clone();
        exps.insert(i, e);
        Monomial {
            deg: self.deg + e,
            exps,
        }
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.deg.cmp(&other.deg) {
            Ordering::Equal => {}
            ord => return ord,
        }
        // Reverse lexicographic tie-break: a smaller exponent in the last
        // differing variable makes the monomial larger.
        for (a, b) in self.exps.iter().zip(other.exps.iter()).rev() {
            match a.cmp(b) {
                Ordering::Equal => continue,
                Ordering::Less => return Ordering::Greater,
                Ordering::Greater => return Ordering::Less,
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grevlex_order() {
        let m = |e: &[u32]| Monomial::from_exponents(e);
        // x^2 > xy > y^2 > x > y > 1
        let mut v = vec![m(&[0, 0]), m(&[0, 1]), m(&[1, 0]), m(&[0, 2]), m(&[1, 1]), m(&[2, 0])];
        v.sort();
        v.reverse();
        assert_eq!(v, vec![m(&[2, 0]), m(&[1, 1]), m(&[0, 2]), m(&[1, 0]), m(&[0, 1]), m(&[0, 0])]);
        // degree 3 in three variables: x^2y > x y^2 ... and xz^2 < y^3
        assert!(m(&[1, 1, 1]) > m(&[1, 0, 2]));
        assert!(m(&[0, 3, 0]) > m(&[1, 0, 2]));
    }

    #[test]
    fn arithmetic() {
        let a = Monomial::from_exponents(&[2, 1]);
        let b = Monomial::from_exponents(&[1, 3]);
        assert_eq!(a.mul(&b).exponents(), &[3, 4]);
        assert_eq!(a.mul(&b).degree(), 7);
        assert_eq!(a.gcd(&b).exponents(), &[1, 1]);
        assert!(a.div(&b).is_none());
        assert_eq!(a.div(&Monomial::variable(2, 0, 1)).unwrap().exponents(), &[1, 1]);
    }
}
