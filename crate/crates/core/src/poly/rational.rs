use super::gcd::gcd;
use super::multipoly::{MultiPoly, VarList};
use super::PolyError;
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use std::ops::{Add, Mul, Neg, Sub};

/// A quotient of polynomials kept in lowest terms: `gcd(num, den) = 1` and
/// the denominator has positive grevlex leading coefficient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalFunction {
    num: MultiPoly,
    den: MultiPoly,
}

impl RationalFunction {
    pub fn new(num: MultiPoly, den: MultiPoly) -> Result<Self, PolyError> {
        if den.is_zero() {
            return Err(PolyError::DivisionByZero);
        }
        Ok(Self::reduce(num, den))
    }

    fn reduce(num: MultiPoly, den: MultiPoly) -> Self {
        if num.is_zero() {
            return RationalFunction {
                den: MultiPoly::one(num.vars()),
                num,
            };
        }
        let g = gcd(&num, &den);
        let (mut num, mut den) = if g.is_one() {
            (num, den)
        } else {
            (num.div_exact(&g).unwrap(), den.div_exact(&g).unwrap())
        };
        if den.leading_coeff().is_negative() {
            num = -num;
            den = -den;
        }
        RationalFunction { num, den }
    }

    pub fn from_poly(p: MultiPoly) -> Self {
        let den = MultiPoly::one(p.vars());
        RationalFunction { num: p, den }
    }

    pub fn from_integer(vars: &VarList, n: impl Into<BigInt>) -> Self {
        Self::from_poly(MultiPoly::constant(vars, n))
    }

    /// The rational constant `n/d`.
    pub fn from_ratio(vars: &VarList, n: impl Into<BigInt>, d: impl Into<BigInt>) -> Result<Self, PolyError> {
        Self::new(MultiPoly::constant(vars, n), MultiPoly::constant(vars, d))
    }

    pub fn zero(vars: &VarList) -> Self {
        Self::from_poly(MultiPoly::zero(vars))
    }

    pub fn one(vars: &VarList) -> Self {
        Self::from_poly(MultiPoly::one(vars))
    }

    pub fn numer(&self) -> &MultiPoly {
        &self.num
    }

    pub fn denom(&self) -> &MultiPoly {
        &self.den
    }

    pub fn vars(&self) -> &VarList {
        self.num.vars()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn to_polynomial(&self) -> Option<MultiPoly> {
        self.is_polynomial().then(|| self.num.clone())
    }

    pub fn inv(&self) -> Result<Self, PolyError> {
        if self.is_zero() {
            return Err(PolyError::DivisionByZero);
        }
        let (mut num, mut den) = (self.den.clone(), self.num.clone());
        if den.leading_coeff().is_negative() {
            num = -num;
            den = -den;
        }
        Ok(RationalFunction { num, den })
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self, PolyError> {
        Ok(self * &other.inv()?)
    }

    pub fn pow(&self, e: i32) -> Result<Self, PolyError> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let k = e.unsigned_abs();
        Ok(RationalFunction {
            num: base.num.pow(k),
            den: base.den.pow(k),
        })
    }

    /// Multiply a polynomial by this function, requiring an integral result.
    pub fn apply_to(&self, p: &MultiPoly) -> Option<MultiPoly> {
        (p * &self.num).div_exact(&self.den)
    }

    pub fn embed(&self, target: &VarList) -> Result<Self, PolyError> {
        Ok(RationalFunction {
            num: self.num.embed(target)?,
            den: self.den.embed(target)?,
        })
    }

    pub fn scale_integer(&self, c: &BigInt) -> Self {
        self * &Self::from_poly(MultiPoly::constant(self.vars(), c.clone()))
    }

    /// Evaluate at an integer point; `None` when the denominator vanishes.
    pub fn eval_all(&self, point: &[BigInt]) -> Option<num_rational::BigRational> {
        let d = self.den.eval_all(point);
        if d.is_zero() {
            return None;
        }
        Some(num_rational::BigRational::new(self.num.eval_all(point), d))
    }

    /// Substitute rational functions for variables. Unassigned variables are
    /// mapped by name into `target`.
    pub fn substitute(&self, assignment: &[(&str, RationalFunction)], target: &VarList) -> Result<Self, PolyError> {
        let n = substitute(&self.num, assignment, target)?;
        let d = substitute(&self.den, assignment, target)?;
        if d.is_zero() {
            return Err(PolyError::DenominatorVanishes);
        }
        n.checked_div(&d)
    }
}

/// Substitute rational functions (over `target`) for named variables of `f`.
/// Variables without an assignment keep their name and must exist in `target`.
pub fn substitute(f: &MultiPoly, assignment: &[(&str, RationalFunction)], target: &VarList) -> Result<RationalFunction, PolyError> {
    let nv = f.nvars();
    let mut values: Vec<RationalFunction> = Vec::with_capacity(nv);
    for i in 0..nv {
        let name = f.vars().name(i);
        if let Some((_, v)) = assignment.iter().find(|(n, _)| *n == name) {
            if v.vars() != target {
                return Err(PolyError::UnknownVariable(format!("assignment for {name} is over a different ring")));
            }
            values.push(v.clone());
        } else if f.degree_in(i) == 0 {
            values.push(RationalFunction::one(target));
        } else {
            let j = target.index_of(name).ok_or_else(|| PolyError::UnknownVariable(name.to_string()))?;
            values.push(RationalFunction::from_poly(MultiPoly::var(target, j)));
        }
    }
    // Common denominator ∏ d_i^{max e_i}; numerator accumulated termwise.
    let maxe: Vec<u32> = (0..nv).map(|i| f.degree_in(i)).collect();
    let num_pows: Vec<Vec<MultiPoly>> = (0..nv)
        .map(|i| powers(&values[i].num, maxe[i]))
        .collect();
    let den_pows: Vec<Vec<MultiPoly>> = (0..nv)
        .map(|i| powers(&values[i].den, maxe[i]))
        .collect();
    let mut total = MultiPoly::zero(target);
    for (m, c) in f.terms() {
        let mut t = MultiPoly::constant(target, c.clone());
        for i in 0..nv {
            let e = m.exponent(i) as usize;
            if maxe[i] == 0 {
                continue;
            }
            if e > 0 {
                t = &t * &num_pows[i][e];
            }
            let rest = maxe[i] as usize - e;
            if rest > 0 && !values[i].den.is_one() {
                t = &t * &den_pows[i][rest];
            }
        }
        total += &t;
    }
    let mut den = MultiPoly::one(target);
    for i in 0..nv {
        if maxe[i] > 0 && !values[i].den.is_one() {
            den = &den * &den_pows[i][maxe[i] as usize];
        }
    }
    RationalFunction::new(total, den)
}

fn powers(p: &MultiPoly, e: u32) -> Vec<MultiPoly> {
    let mut out = vec![MultiPoly::one(p.vars())];
    for k in 1..=e as usize {
        let next = &out[k - 1] * p;
        out.push(next);
    }
    out
}

impl<'a> Add<&'a RationalFunction> for &'a RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        if self.den == rhs.den {
            return RationalFunction::reduce(&self.num + &rhs.num, self.den.clone());
        }
        let g = gcd(&self.den, &rhs.den);
        let a = self.den.div_exact(&g).unwrap();
        let b = rhs.den.div_exact(&g).unwrap();
        let num = &(&self.num * &b) + &(&rhs.num * &a);
        RationalFunction::reduce(num, &a * &rhs.den)
    }
}

impl<'a> Sub<&'a RationalFunction> for &'a RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: &RationalFunction) -> RationalFunction {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a RationalFunction> for &'a RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        if self.is_zero() || rhs.is_zero() {
            return RationalFunction::zero(self.vars());
        }
        // cross-cancel before multiplying
        let g1 = gcd(&self.num, &rhs.den);
        let g2 = gcd(&rhs.num, &self.den);
        let n1 = self.num.div_exact(&g1).unwrap();
        let d2 = rhs.den.div_exact(&g1).unwrap();
        let n2 = rhs.num.div_exact(&g2).unwrap();
        let d1 = self.den.div_exact(&g2).unwrap();
        let mut num = &n1 * &n2;
        let mut den = &d1 * &d2;
        if den.leading_coeff().is_negative() {
            num = -num;
            den = -den;
        }
        RationalFunction { num, den }
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v() -> VarList {
        VarList::new(&["g", "h"])
    }

    fn r(s: &str) -> RationalFunction {
        RationalFunction::parse(s, &v()).unwrap()
    }

    #[test]
    fn normal_form() {
        let x = r("(g^2 - 1)/(-2*g - 2)");
        assert_eq!(x.numer(), &MultiPoly::parse("-g + 1", &v()).unwrap());
        assert_eq!(x.denom(), &MultiPoly::parse("2", &v()).unwrap());
        assert_eq!(&r("1/g") + &r("1/h"), r("(g+h)/(g*h)"));
        assert_eq!(&r("g/h") * &r("h^2/g^3"), r("h/g^2"));
        assert!(r("0").inv().is_err());
        assert!(RationalFunction::new(MultiPoly::one(&v()), MultiPoly::zero(&v())).is_err());
    }

    #[test]
    fn substitution() {
        let src = VarList::new(&["I2", "I4"]);
        let f = MultiPoly::parse("I2^2 + 3*I4", &src).unwrap();
        let tgt = VarList::new(&["A", "A1"]);
        let i2 = RationalFunction::parse("-24*A/A1", &tgt).unwrap();
        let i4 = RationalFunction::parse("-12*A", &tgt).unwrap();
        let out = substitute(&f, &[("I2", i2), ("I4", i4)], &tgt).unwrap();
        assert_eq!(out, RationalFunction::parse("576*A^2/A1^2 - 36*A", &tgt).unwrap());
        // rational function substitution with vanishing denominator
        let q = RationalFunction::parse("1/(I2 - I4)", &src).unwrap();
        let same = RationalFunction::parse("A", &tgt).unwrap();
        assert!(matches!(
            q.substitute(&[("I2", same.clone()), ("I4", same)], &tgt),
            Err(PolyError::DenominatorVanishes)
        ));
    }
}
