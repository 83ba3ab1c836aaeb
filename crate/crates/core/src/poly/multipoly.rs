use super::monomial::Monomial;
use super::PolyError;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::sync::Arc;

/// An ordered list of variable names shared by all polynomials of one ring.
#[derive(Clone, Debug)]
pub struct VarList(Arc<Vec<String>>);

impl VarList {
    pub fn new<S: AsRef<str>>(names: &[S]) -> Self {
        VarList(Arc::new(names.iter().map(|s| s.as_ref().to_string()).collect()))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.0
    }

    pub fn name(&self, i: usize) -> &str {
        &self.0[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.0.iter().position(|n| n == name)
    }

    /// The list with `name` appended (or unchanged if already present).
    pub fn with_var(&self, name: &str) -> VarList {
        if self.index_of(name).is_some() {
            return self.clone();
        }
        let mut v = (*self.0).clone();
        v.push(name.to_string());
        VarList(Arc::new(v))
    }

    pub fn without(&self, i: usize) -> VarList {
        let mut v = (*self.0).clone();
        v.remove(i);
        VarList(Arc::new(v))
    }
}

impl PartialEq for VarList {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}

impl Eq for VarList {}

impl fmt::Display for VarList {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0.join(","))
    }
}

/// Sparse multivariate polynomial with integer coefficients.
///
/// Terms are kept in a map sorted ascending by grevlex, so the leading term
/// is the last entry. No stored coefficient is ever zero.
#[derive(Clone, Debug)]
pub struct MultiPoly {
    vars: VarList,
    terms: BTreeMap<Monomial, BigInt>,
}

impl PartialEq for MultiPoly {
    fn eq(&self, other: &Self) -> bool {
        self.vars == other.vars && self.terms == other.terms
    }
}

impl Eq for MultiPoly {}

impl MultiPoly {
    pub fn zero(vars: &VarList) -> Self {
        MultiPoly {
            vars: vars.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(vars: &VarList) -> Self {
        Self::constant(vars, BigInt::one())
    }

    pub fn constant(vars: &VarList, c: impl Into<BigInt>) -> Self {
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::one(vars.len()), c);
        }
        MultiPoly {
            vars: vars.clone(),
            terms,
        }
    }

    /// The variable with index `i`.
    pub fn var(vars: &VarList, i: usize) -> Self {
        Self::monomial(vars, BigInt::one(), Monomial::variable(vars.len(), i, 1))
    }

    pub fn var_named(vars: &VarList, name: &str) -> Option<Self> {
        vars.index_of(name).map(|i| Self::var(vars, i))
    }

    pub fn monomial(vars: &VarList, c: BigInt, m: Monomial) -> Self {
        debug_assert_eq!(m.nvars(), vars.len());
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        MultiPoly {
            vars: vars.clone(),
            terms,
        }
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, BigInt)>>(vars: &VarList, it: I) -> Self {
        let mut p = Self::zero(vars);
        for (m, c) in it {
            p.add_term(m, c);
        }
        p
    }

    pub fn vars(&self) -> &VarList {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.as_constant().is_some_and(|c| c.is_one())
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms.keys().next().unwrap().is_one())
    }

    /// The constant value, if the polynomial is constant.
    pub fn as_constant(&self) -> Option<BigInt> {
        if self.terms.is_empty() {
            return Some(BigInt::zero());
        }
        if self.terms.len() == 1 {
            let (m, c) = self.terms.iter().next().unwrap();
            if m.is_one() {
                return Some(c.clone());
            }
        }
        None
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending grevlex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn constant_term(&self) -> BigInt {
        self.coefficient(&Monomial::one(self.nvars()))
    }

    /// Leading term under grevlex.
    pub fn leading_term(&self) -> Option<(&Monomial, &BigInt)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coeff(&self) -> BigInt {
        self.leading_term().map(|(_, c)| c.clone()).unwrap_or_default()
    }

    /// Total degree; the zero polynomial has degree 0 here.
    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|m| m.degree()).max().unwrap_or(0)
    }

    pub fn degree_in(&self, i: usize) -> u32 {
        self.terms.keys().map(|m| m.exponent(i)).max().unwrap_or(0)
    }

    pub fn min_degree_in(&self, i: usize) -> u32 {
        self.terms.keys().map(|m| m.exponent(i)).min().unwrap_or(0)
    }

    /// Indices of variables that actually occur.
    pub fn occurring_vars(&self) -> Vec<usize> {
        (0..self.nvars()).filter(|&i| self.degree_in(i) > 0).collect()
    }

    pub fn max_abs_coeff(&self) -> BigInt {
        self.terms.values().map(|c| c.abs()).max().unwrap_or_default()
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// `self -= c * m * d`, in place.
    fn sub_scaled_shifted(&mut self, c: &BigInt, m: &Monomial, d: &MultiPoly) {
        for (md, cd) in d.terms.iter() {
            self.add_term(m.mul(md), -(c * cd));
        }
    }

    fn check_vars(&self, other: &MultiPoly) {
        assert!(
            self.vars == other.vars,
            "polynomials over different variable lists: [{}] vs [{}]",
            self.vars,
            other.vars
        );
    }

    pub fn scale(&self, c: &BigInt) -> MultiPoly {
        if c.is_zero() {
            return Self::zero(&self.vars);
        }
        MultiPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, c: &BigInt, m: &Monomial) -> MultiPoly {
        if c.is_zero() {
            return Self::zero(&self.vars);
        }
        MultiPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(k, a)| (k.mul(m), a * c)).collect(),
        }
    }

    /// Exact division by an integer; `None` if some coefficient is not divisible.
    pub fn div_integer(&self, c: &BigInt) -> Option<MultiPoly> {
        if c.is_zero() {
            return None;
        }
        let mut terms = BTreeMap::new();
        for (m, a) in self.terms.iter() {
            let (q, r) = a.div_rem(c);
            if !r.is_zero() {
                return None;
            }
            terms.insert(m.clone(), q);
        }
        Some(MultiPoly {
            vars: self.vars.clone(),
            terms,
        })
    }

    /// Non-negative gcd of the coefficients (zero for the zero polynomial).
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in self.terms.values() {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Content and primitive part with `self = content * primitive`.
    /// The primitive part keeps the sign of `self`.
    pub fn content_and_primitive(&self) -> Result<(BigInt, MultiPoly), PolyError> {
        if self.is_zero() {
            return Err(PolyError::ZeroPolynomial("content_and_primitive"));
        }
        let c = self.content();
        Ok((c.clone(), self.div_integer(&c).expect("content divides")))
    }

    pub fn primitive_part(&self) -> MultiPoly {
        if self.is_zero() {
            return self.clone();
        }
        let c = self.content();
        self.div_integer(&c).expect("content divides")
    }

    /// Associate with positive grevlex leading coefficient.
    pub fn normalize_sign(&self) -> MultiPoly {
        if self.leading_coeff().is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    /// Primitive, with positive leading coefficient.
    pub fn normalized(&self) -> MultiPoly {
        self.primitive_part().normalize_sign()
    }

    pub fn pow(&self, e: u32) -> MultiPoly {
        if e == 0 {
            return Self::one(&self.vars);
        }
        if self.terms.len() == 1 {
            let (m, c) = self.terms.iter().next().unwrap();
            return Self::monomial(&self.vars, c.pow(e), m.pow(e));
        }
        let mut result = Self::one(&self.vars);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Exact division `self / d`; `None` if `d` does not divide `self`.
    pub fn div_exact(&self, d: &MultiPoly) -> Option<MultiPoly> {
        self.check_vars(d);
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(self.clone());
        }
        if let Some(c) = d.as_constant() {
            return self.div_integer(&c);
        }
        for i in 0..self.nvars() {
            if d.degree_in(i) > self.degree_in(i) {
                return None;
            }
        }
        let (lm, lc) = d.leading_term().map(|(m, c)| (m.clone(), c.clone())).unwrap();
        let mut q = Self::zero(&self.vars);
        let mut r = self.clone();
        while let Some((m, c)) = r.leading_term() {
            let mq = m.div(&lm)?;
            let (cq, rem) = c.div_rem(&lc);
            if !rem.is_zero() {
                return None;
            }
            r.sub_scaled_shifted(&cq, &mq, d);
            q.add_term(mq, cq);
        }
        Some(q)
    }

    pub fn divides(&self, f: &MultiPoly) -> bool {
        f.div_exact(self).is_some()
    }

    pub fn derivative(&self, i: usize) -> MultiPoly {
        let mut p = Self::zero(&self.vars);
        for (m, c) in self.terms.iter() {
            let e = m.exponent(i);
            if e > 0 {
                p.add_term(m.with_exponent(i, e - 1), c * BigInt::from(e));
            }
        }
        p
    }

    /// Coefficients with respect to variable `i`: entry `k` is the
    /// coefficient of `x_i^k`, a polynomial in the same ring free of `x_i`.
    pub fn to_univariate(&self, i: usize) -> Vec<MultiPoly> {
        let d = self.degree_in(i) as usize;
        let mut out = vec![Self::zero(&self.vars); if self.is_zero() { 0 } else { d + 1 }];
        for (m, c) in self.terms.iter() {
            let e = m.exponent(i) as usize;
            out[e].terms.insert(m.with_exponent(i, 0), c.clone());
        }
        out
    }

    pub fn from_univariate(vars: &VarList, i: usize, coeffs: &[MultiPoly]) -> MultiPoly {
        let mut p = Self::zero(vars);
        for (k, c) in coeffs.iter().enumerate() {
            for (m, a) in c.terms.iter() {
                let e = m.exponent(i) + k as u32;
                p.add_term(m.with_exponent(i, e), a.clone());
            }
        }
        p
    }

    /// Leading coefficient with respect to variable `i`.
    pub fn leading_coeff_in(&self, i: usize) -> MultiPoly {
        let d = self.degree_in(i);
        let mut p = Self::zero(&self.vars);
        for (m, c) in self.terms.iter() {
            if m.exponent(i) == d {
                p.terms.insert(m.with_exponent(i, 0), c.clone());
            }
        }
        p
    }

    /// Substitute the integer `a` for variable `i` (the ring is unchanged).
    pub fn eval_var(&self, i: usize, a: &BigInt) -> MultiPoly {
        let mut p = Self::zero(&self.vars);
        let maxe = self.degree_in(i) as usize;
        let mut powers = Vec::with_capacity(maxe + 1);
        let mut acc = BigInt::one();
        for _ in 0..=maxe {
            powers.push(acc.clone());
            acc *= a;
        }
        for (m, c) in self.terms.iter() {
            let e = m.exponent(i) as usize;
            p.add_term(m.with_exponent(i, 0), c * &powers[e]);
        }
        p
    }

    /// Evaluate at an integer point.
    pub fn eval_all(&self, point: &[BigInt]) -> BigInt {
        assert_eq!(point.len(), self.nvars());
        let mut total = BigInt::zero();
        for (m, c) in self.terms.iter() {
            let mut t = c.clone();
            for (x, e) in point.iter().zip(m.exponents()) {
                if *e > 0 {
                    t *= x.pow(*e);
                }
            }
            total += t;
        }
        total
    }

    /// Substitute the polynomial `g` (same ring) for variable `i`.
    pub fn substitute_var(&self, i: usize, g: &MultiPoly) -> MultiPoly {
        self.check_vars(g);
        let coeffs = self.to_univariate(i);
        let mut acc = Self::zero(&self.vars);
        for c in coeffs.iter().rev() {
            acc = &(&acc * g) + c;
        }
        acc
    }

    /// Rewrite into a different ring by variable name. Every variable that
    /// occurs in `self` must exist in `target`.
    pub fn embed(&self, target: &VarList) -> Result<MultiPoly, PolyError> {
        if *target == self.vars {
            return Ok(self.clone());
        }
        let mut map = Vec::with_capacity(self.nvars());
        for (i, name) in self.vars.names().iter().enumerate() {
            match target.index_of(name) {
                Some(j) => map.push(Some(j)),
                None => {
                    if self.degree_in(i) > 0 {
                        return Err(PolyError::UnknownVariable(name.clone()));
                    }
                    map.push(None)
                }
            }
        }
        let mut p = Self::zero(target);
        for (m, c) in self.terms.iter() {
            let mut e = vec![0u32; target.len()];
            for (i, j) in map.iter().enumerate() {
                if let Some(j) = j {
                    e[*j] = m.exponent(i);
                }
            }
            p.add_term(Monomial::from_exponents(&e), c.clone());
        }
        Ok(p)
    }

    pub fn swap_vars(&self, i: usize, j: usize) -> MultiPoly {
        MultiPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.swap(i, j), c.clone())).collect(),
        }
    }

    /// Homogenise to degree `d` using the (possibly new) variable `var`.
    pub fn homogenize(&self, d: u32, var: &str) -> Result<MultiPoly, PolyError> {
        if !self.is_zero() && self.total_degree() > d {
            return Err(PolyError::HomogenizeDegree {
                degree: self.total_degree(),
                target: d,
            });
        }
        let (vars, idx) = match self.vars.index_of(var) {
            Some(i) => {
                if self.degree_in(i) > 0 {
                    return Err(PolyError::HomogenizeVariableOccurs(var.to_string()));
                }
                (self.vars.clone(), i)
            }
            None => (self.vars.with_var(var), self.vars.len()),
        };
        let mut p = Self::zero(&vars);
        for (m, c) in self.terms.iter() {
            let base = if idx == self.nvars() { m.insert_var(idx, 0) } else { m.clone() };
            let e = d - m.degree();
            p.add_term(base.with_exponent(idx, e), c.clone());
        }
        Ok(p)
    }

    /// Set `var = 1` and drop it from the ring.
    pub fn dehomogenize(&self, var: &str) -> Result<MultiPoly, PolyError> {
        let idx = self
            .vars
            .index_of(var)
            .ok_or_else(|| PolyError::UnknownVariable(var.to_string()))?;
        let vars = self.vars.without(idx);
        let mut p = Self::zero(&vars);
        for (m, c) in self.terms.iter() {
            p.add_term(m.remove_var(idx), c.clone());
        }
        Ok(p)
    }

    /// Terms divided by the largest monomial dividing all of them.
    pub fn monomial_content(&self) -> Monomial {
        let mut it = self.terms.keys();
        let Some(first) = it.next() else {
            return Monomial::one(self.nvars());
        };
        let mut g = first.clone();
        for m in it {
            g = g.gcd(m);
        }
        g
    }

    pub fn div_monomial(&self, m: &Monomial) -> Option<MultiPoly> {
        let mut terms = BTreeMap::new();
        for (k, c) in self.terms.iter() {
            terms.insert(k.div(m)?, c.clone());
        }
        Some(MultiPoly {
            vars: self.vars.clone(),
            terms,
        })
    }

    /// Reduce every coefficient into the symmetric range modulo `p`.
    pub fn reduce_coeffs_symmetric(&self, p: &BigInt) -> MultiPoly {
        let half = p / 2;
        let mut out = Self::zero(&self.vars);
        for (m, c) in self.terms.iter() {
            let mut r = c.mod_floor(p);
            if r > half {
                r -= p;
            }
            out.add_term(m.clone(), r);
        }
        out
    }

    /// A short size measure used for deterministic tie-breaks:
    /// (total degree, number of terms, largest absolute coefficient).
    pub fn size_key(&self) -> (u32, usize, BigInt) {
        (self.total_degree(), self.num_terms(), self.max_abs_coeff())
    }
}

// ---------------------------------------------------------------------------
// Operators

impl<'a> Add<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        self.check_vars(rhs);
        let (big, small) = if self.terms.len() >= rhs.terms.len() { (self, rhs) } else { (rhs, self) };
        let mut out = big.clone();
        for (m, c) in small.terms.iter() {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        self.check_vars(rhs);
        let mut out = self.clone();
        for (m, c) in rhs.terms.iter() {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl<'a> Mul<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        self.check_vars(rhs);
        if self.is_zero() || rhs.is_zero() {
            return MultiPoly::zero(&self.vars);
        }
        if let Some(c) = self.as_constant() {
            return rhs.scale(&c);
        }
        if let Some(c) = rhs.as_constant() {
            return self.scale(&c);
        }
        let mut acc: std::collections::HashMap<Monomial, BigInt> =
            std::collections::HashMap::with_capacity(self.terms.len() * rhs.terms.len());
        for (ma, ca) in self.terms.iter() {
            for (mb, cb) in rhs.terms.iter() {
                let prod = ca * cb;
                acc.entry(ma.mul(mb))
                    .and_modify(|v| *v += &prod)
                    .or_insert(prod);
            }
        }
        MultiPoly {
            vars: self.vars.clone(),
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(mut self) -> MultiPoly {
        for c in self.terms.values_mut() {
            *c = -std::mem::take(c);
        }
        self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr<MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $f(self, rhs: MultiPoly) -> MultiPoly {
                (&self).$f(&rhs)
            }
        }
        impl<'a> $tr<&'a MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $f(self, rhs: &MultiPoly) -> MultiPoly {
                (&self).$f(rhs)
            }
        }
        impl<'a> $tr<MultiPoly> for &'a MultiPoly {
            type Output = MultiPoly;
            fn $f(self, rhs: MultiPoly) -> MultiPoly {
                self.$f(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl AddAssign<&MultiPoly> for MultiPoly {
    fn add_assign(&mut self, rhs: &MultiPoly) {
        self.check_vars(rhs);
        for (m, c) in rhs.terms.iter() {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl SubAssign<&MultiPoly> for MultiPoly {
    fn sub_assign(&mut self, rhs: &MultiPoly) {
        self.check_vars(rhs);
        for (m, c) in rhs.terms.iter() {
            self.add_term(m.clone(), -c);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vars() -> VarList {
        VarList::new(&["g", "h"])
    }

    fn p(s: &str) -> MultiPoly {
        MultiPoly::parse(s, &vars()).unwrap()
    }

    #[test]
    fn arithmetic_and_division() {
        let a = p("g^2 - h");
        let b = p("g + 3*h - 1");
        let prod = &a * &b;
        assert_eq!(prod.div_exact(&a).unwrap(), b);
        assert_eq!(prod.div_exact(&b).unwrap(), a);
        assert!(prod.div_exact(&p("g + 1")).is_none());
        assert_eq!(&(&a + &b) - &b, a);
        assert_eq!(a.pow(3), &(&a * &a) * &a);
    }

    #[test]
    fn content_primitive() {
        let f = p("-6*g^2 + 4*h");
        let (c, pp) = f.content_and_primitive().unwrap();
        assert_eq!(c, BigInt::from(2));
        assert_eq!(pp, p("-3*g^2 + 2*h"));
        assert!(MultiPoly::zero(&vars()).content_and_primitive().is_err());
    }

    #[test]
    fn homogenize_roundtrip() {
        let v = VarList::new(&["t1", "t2"]);
        let f = MultiPoly::parse("t1^2 + t2", &v).unwrap();
        let h = f.homogenize(2, "t3").unwrap();
        let v3 = VarList::new(&["t1", "t2", "t3"]);
        assert_eq!(h, MultiPoly::parse("t1^2 + t2*t3", &v3).unwrap());
        assert_eq!(h.dehomogenize("t3").unwrap(), f);
        assert!(f.homogenize(1, "t3").is_err());
    }

    #[test]
    fn univariate_views() {
        let f = p("3*g^2*h + g*h^2 - 5");
        let cs = f.to_univariate(0);
        assert_eq!(cs.len(), 3);
        assert_eq!(cs[2], p("3*h"));
        assert_eq!(MultiPoly::from_univariate(&vars(), 0, &cs), f);
        assert_eq!(f.leading_coeff_in(1), p("g"));
        assert_eq!(f.eval_var(1, &BigInt::from(2)), p("6*g^2 + 4*g - 5"));
        assert_eq!(f.substitute_var(1, &p("g")), p("4*g^3 - 5"));
    }

    #[test]
    fn derivative() {
        assert_eq!(p("g^3*h + 2*h^2").derivative(1), p("g^3 + 4*h"));
    }
}
