use super::matrix::Matrix3;
use super::ConicError;
use crate::poly::{MultiPoly, RationalFunction, VarList};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

/// The ternary quadratic form `aX² + bY² + cZ² + dXY + eXZ + fYZ` with
/// polynomial coefficients. Its nondegeneracy is checked on construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Conic {
    coeffs: [MultiPoly; 6],
}

pub const COEFF_NAMES: [&str; 6] = ["a", "b", "c", "d", "e", "f"];

impl Conic {
    pub fn new(coeffs: [MultiPoly; 6]) -> Result<Self, ConicError> {
        let vars = coeffs[0].vars().clone();
        if coeffs.iter().any(|c| *c.vars() != vars) {
            return Err(ConicError::VariableMismatch);
        }
        let conic = Conic { coeffs };
        if conic.discriminant().is_zero() {
            return Err(ConicError::Singular);
        }
        Ok(conic)
    }

    pub fn from_strs(vars: &VarList, coeffs: [&str; 6]) -> Result<Self, ConicError> {
        let mut out: Vec<MultiPoly> = Vec::with_capacity(6);
        for s in coeffs {
            out.push(MultiPoly::parse(s, vars)?);
        }
        Self::new(out.try_into().unwrap())
    }

    pub fn diagonal(a: MultiPoly, b: MultiPoly, c: MultiPoly) -> Result<Self, ConicError> {
        let z = MultiPoly::zero(a.vars());
        Self::new([a, b, c, z.clone(), z.clone(), z])
    }

    pub fn vars(&self) -> &VarList {
        self.coeffs[0].vars()
    }

    pub fn coeffs(&self) -> &[MultiPoly; 6] {
        &self.coeffs
    }

    pub fn a(&self) -> &MultiPoly {
        &self.coeffs[0]
    }
    pub fn b(&self) -> &MultiPoly {
        &self.coeffs[1]
    }
    pub fn c(&self) -> &MultiPoly {
        &self.coeffs[2]
    }
    pub fn d(&self) -> &MultiPoly {
        &self.coeffs[3]
    }
    pub fn e(&self) -> &MultiPoly {
        &self.coeffs[4]
    }
    pub fn f(&self) -> &MultiPoly {
        &self.coeffs[5]
    }

    /// Diagonal coefficient of variable `i` (0 = X, 1 = Y, 2 = Z).
    pub fn diag(&self, i: usize) -> &MultiPoly {
        &self.coeffs[i]
    }

    /// Cross coefficient of the monomial `x_i x_j` (`i ≠ j`).
    pub fn cross(&self, i: usize, j: usize) -> &MultiPoly {
        match (i.min(j), i.max(j)) {
            (0, 1) => &self.coeffs[3],
            (0, 2) => &self.coeffs[4],
            (1, 2) => &self.coeffs[5],
            _ => panic!("cross coefficient needs distinct indices"),
        }
    }

    pub fn is_diagonal(&self) -> bool {
        self.coeffs[3..].iter().all(|c| c.is_zero())
    }

    /// `M = 2G`, the symmetric matrix with `xᵀMx = 2Q(x)`.
    pub fn gram2(&self) -> Matrix3 {
        let [a, b, c, d, e, f] = &self.coeffs;
        let two = BigInt::from(2);
        Matrix3::from_rows([
            [a.scale(&two), d.clone(), e.clone()],
            [d.clone(), b.scale(&two), f.clone()],
            [e.clone(), f.clone(), c.scale(&two)],
        ])
    }

    /// Inverse of [`gram2`](Self::gram2); the diagonal must be even and the matrix symmetric.
    pub fn from_gram2(m: &Matrix3) -> Result<Self, ConicError> {
        for i in 0..3 {
            for j in 0..3 {
                if m.m[i][j] != m.m[j][i] {
                    return Err(ConicError::NotSymmetric);
                }
            }
        }
        let two = BigInt::from(2);
        let half = |p: &MultiPoly| p.div_integer(&two).ok_or(ConicError::NotIntegral);
        Self::new([
            half(&m.m[0][0])?,
            half(&m.m[1][1])?,
            half(&m.m[2][2])?,
            m.m[0][1].clone(),
            m.m[0][2].clone(),
            m.m[1][2].clone(),
        ])
    }

    /// `Δ = det M = 8abc + 2def − 2af² − 2be² − 2cd²`.
    pub fn discriminant(&self) -> MultiPoly {
        let [a, b, c, d, e, f] = &self.coeffs;
        let t1 = (&(a * b) * c).scale(&BigInt::from(8));
        let t2 = (&(d * e) * f).scale(&BigInt::from(2));
        let t3 = (&(a * f) * f).scale(&BigInt::from(2));
        let t4 = (&(b * e) * e).scale(&BigInt::from(2));
        let t5 = (&(c * d) * d).scale(&BigInt::from(2));
        &(&(&(&t1 + &t2) - &t3) - &t4) - &t5
    }

    /// The form `s · Q(Ux)`, i.e. Gram matrix `s · UᵀMU`. Fails unless the
    /// result has polynomial coefficients and is nondegenerate.
    pub fn transform(&self, u: &Matrix3, s: &RationalFunction) -> Result<Conic, ConicError> {
        if s.is_zero() {
            return Err(ConicError::InvalidTransform("zero scalar".into()));
        }
        let raw = if u.is_diagonal() {
            self.transform_diagonal(u)
        } else {
            let m = self.gram2();
            let mu = m.mul(u);
            let ut = u.transpose();
            let t = ut.mul(&mu);
            let two = BigInt::from(2);
            [
                t.m[0][0].div_integer(&two).expect("even diagonal"),
                t.m[1][1].div_integer(&two).expect("even diagonal"),
                t.m[2][2].div_integer(&two).expect("even diagonal"),
                t.m[0][1].clone(),
                t.m[0][2].clone(),
                t.m[1][2].clone(),
            ]
        };
        let mut out: Vec<MultiPoly> = Vec::with_capacity(6);
        for c in raw.iter() {
            out.push(s.apply_to(c).ok_or(ConicError::NotIntegral)?);
        }
        Conic::new(out.try_into().unwrap()).map_err(|e| match e {
            ConicError::Singular => ConicError::InvalidTransform("singular transform".into()),
            e => e,
        })
    }

    fn transform_diagonal(&self, u: &Matrix3) -> [MultiPoly; 6] {
        let (x, y, z) = (&u.m[0][0], &u.m[1][1], &u.m[2][2]);
        let [a, b, c, d, e, f] = &self.coeffs;
        [
            &(a * x) * x,
            &(b * y) * y,
            &(c * z) * z,
            &(d * x) * y,
            &(e * x) * z,
            &(f * y) * z,
        ]
    }

    /// Reorder the variables: the new `i`-th variable is the old `p[i]`-th.
    pub fn permute(&self, p: [usize; 3]) -> Conic {
        let d = |i: usize| self.diag(p[i]).clone();
        let x = |i: usize, j: usize| self.cross(p[i], p[j]).clone();
        Conic {
            coeffs: [d(0), d(1), d(2), x(0, 1), x(0, 2), x(1, 2)],
        }
    }

    /// Multiply every coefficient by an integer.
    pub fn scale_integer(&self, k: &BigInt) -> Result<Conic, ConicError> {
        Conic::new(std::array::from_fn(|i| self.coeffs[i].scale(k)))
    }

    /// Integer content of all six coefficients (positive).
    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(&c.content()))
    }

    /// Sign-normalised copy: the first nonzero coefficient gets a positive
    /// grevlex leading coefficient.
    pub fn sign_normalized(&self) -> Conic {
        let first = self.coeffs.iter().find(|c| !c.is_zero()).expect("nonzero");
        if first.leading_coeff().is_negative() {
            Conic {
                coeffs: std::array::from_fn(|i| -&self.coeffs[i]),
            }
        } else {
            self.clone()
        }
    }

    /// A string uniquely identifying the form up to integer scaling and sign.
    pub fn canonical_key(&self) -> String {
        let c = self.content();
        let scaled = Conic {
            coeffs: std::array::from_fn(|i| self.coeffs[i].div_integer(&c).unwrap()),
        }
        .sign_normalized();
        scaled.coeffs.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(";")
    }

    /// Rewrite the conic over another ring by variable name.
    pub fn embed(&self, vars: &VarList) -> Result<Conic, ConicError> {
        let mut out: Vec<MultiPoly> = Vec::with_capacity(6);
        for c in &self.coeffs {
            out.push(c.embed(vars)?);
        }
        Ok(Conic {
            coeffs: out.try_into().unwrap(),
        })
    }

    /// Total degrees of the diagonal coefficients.
    pub fn diag_degrees(&self) -> [u32; 3] {
        [self.coeffs[0].total_degree(), self.coeffs[1].total_degree(), self.coeffs[2].total_degree()]
    }

    /// Evaluate the form at a point `(X, Y, Z)` of polynomials.
    pub fn evaluate(&self, x: &MultiPoly, y: &MultiPoly, z: &MultiPoly) -> MultiPoly {
        let [a, b, c, d, e, f] = &self.coeffs;
        let mut acc = &(a * x) * x;
        acc += &(&(b * y) * y);
        acc += &(&(c * z) * z);
        acc += &(&(d * x) * y);
        acc += &(&(e * x) * z);
        acc += &(&(f * y) * z);
        acc
    }
}

impl std::fmt::Display for Conic {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mons = ["X^2", "Y^2", "Z^2", "X*Y", "X*Z", "Y*Z"];
        let mut first = true;
        for (c, m) in self.coeffs.iter().zip(mons) {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if c.num_terms() == 1 {
                write!(f, "{c}*{m}")?;
            } else {
                write!(f, "({c})*{m}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v() -> VarList {
        VarList::new(&["g", "h"])
    }

    #[test]
    fn discriminant_formula() {
        let l = Conic::from_strs(&v(), ["1", "-21", "-(18*g^2 - 12*g*h - 12*h^2 - 14)", "0", "0", "0"]).unwrap();
        let q = MultiPoly::parse("9*g^2 - 6*g*h - 6*h^2 - 7", &v()).unwrap();
        assert_eq!(l.discriminant(), q.scale(&BigInt::from(336)));
        assert_eq!(l.gram2().det(), l.discriminant());
        assert!(matches!(Conic::from_strs(&v(), ["1", "1", "0", "2", "0", "0"]), Err(ConicError::Singular)));
    }

    #[test]
    fn transform_rule() {
        let l = Conic::from_strs(&v(), ["g", "h+1", "3", "1", "g", "0"]).unwrap();
        let p = |s: &str| MultiPoly::parse(s, &v()).unwrap();
        let u = Matrix3::from_rows([[p("1"), p("g"), p("0")], [p("0"), p("1"), p("h")], [p("2"), p("0"), p("1")]]);
        let s = RationalFunction::from_integer(&v(), 3);
        let t = l.transform(&u, &s).unwrap();
        let det = u.det();
        let expect = &(&l.discriminant() * &det) * &det;
        assert_eq!(t.discriminant(), expect.scale(&BigInt::from(27)));
        // Q'(x) = s Q(Ux): check at a point
        let pt = [p("1"), p("2"), p("g")];
        let ux: Vec<MultiPoly> = (0..3)
            .map(|i| (0..3).fold(MultiPoly::zero(&v()), |acc, j| &acc + &(&u.m[i][j] * &pt[j])))
            .collect();
        assert_eq!(t.evaluate(&pt[0], &pt[1], &pt[2]), l.evaluate(&ux[0], &ux[1], &ux[2]).scale(&BigInt::from(3)));
        let half = RationalFunction::from_ratio(&v(), 1, 2).unwrap();
        assert!(matches!(l.transform(&Matrix3::identity(&v()), &half), Err(ConicError::NotIntegral)));
    }

    #[test]
    fn permutation() {
        let l = Conic::from_strs(&v(), ["g^2", "1", "g", "2", "3", "5"]).unwrap();
        let p = l.permute([1, 2, 0]);
        assert_eq!(p.diag_degrees(), [0, 1, 2]);
        let u = Matrix3::permutation(&v(), [1, 2, 0]);
        assert_eq!(l.transform(&u, &RationalFunction::one(&v())).unwrap(), p);
    }
}
