//! Diagnostics for plane curves in `(g, h)`: factored resultants, singular
//! points as exact conjugacy classes, and interpolation of quadratics
//! through such classes.

pub mod field;
pub mod fixtures;

use crate::factor::{factor_bivariate, factor_univariate, FactorError, Factorization};
use crate::poly::{gcd, is_squarefree, resultant, squarefree_part, MultiPoly, PolyError, VarList};
use field::{integral_multiple, KPoly, NumberField, QPoly, Q};
use num_traits::{One, Zero};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum AnalysisError {
    #[error("expected a polynomial in exactly two variables")]
    NotBivariate,
    #[error("polynomial is zero")]
    Zero,
    #[error("polynomial is not squarefree")]
    NotSquarefree,
    #[error("singular locus is positive-dimensional")]
    PositiveDimensional,
    #[error(transparent)]
    Factor(#[from] FactorError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// A Galois orbit of points: `g` is a root of `g_condition` and `h` a root
/// of `h_condition`. When the two coordinates are linked, `pairing` is a
/// polynomial `G(g, h)` cutting out the orbit together with `g_condition`;
/// otherwise every such pair of roots belongs to the orbit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConditionPair {
    pub g_condition: MultiPoly,
    pub h_condition: MultiPoly,
    pub pairing: Option<MultiPoly>,
}

impl ConditionPair {
    pub fn new(g_condition: MultiPoly, h_condition: MultiPoly) -> Self {
        ConditionPair {
            g_condition: g_condition.normalized(),
            h_condition: h_condition.normalized(),
            pairing: None,
        }
    }

    fn field(&self) -> NumberField {
        NumberField::new(&QPoly::from_multipoly(&self.g_condition, 0).expect("univariate in g"))
    }

    /// The fibre polynomial over `Q(α)`, α a root of the g-condition.
    fn fibre(&self, k: &NumberField) -> KPoly {
        k.specialise(self.pairing.as_ref().unwrap_or(&self.h_condition), 0, 1)
    }

    /// Whether `f` vanishes on every point of the orbit (exact normal form).
    pub fn annihilates(&self, f: &MultiPoly) -> bool {
        let k = self.field();
        k.specialise(f, 0, 1).rem(&self.fibre(&k), &k).is_zero()
    }

    /// Number of points in the orbit.
    pub fn size(&self) -> usize {
        let k = self.field();
        k.degree() * self.fibre(&k).deg()
    }
}

impl fmt::Display for ConditionPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} = 0, {} = 0", self.g_condition, self.h_condition)?;
        if let Some(p) = &self.pairing {
            write!(f, ", {p} = 0")?;
        }
        write!(f, ")")
    }
}

fn check_gh(f: &MultiPoly) -> Result<(), AnalysisError> {
    if f.nvars() != 2 {
        return Err(AnalysisError::NotBivariate);
    }
    if f.is_zero() {
        return Err(AnalysisError::Zero);
    }
    Ok(())
}

/// gcd of the nonzero resultants of the three pairs, eliminating `x`.
fn eliminant(polys: &[&MultiPoly; 3], x: usize) -> Result<Option<MultiPoly>, PolyError> {
    let mut acc = MultiPoly::zero(polys[0].vars());
    for (i, j) in [(0, 1), (0, 2), (1, 2)] {
        if polys[i].is_zero() || polys[j].is_zero() {
            continue;
        }
        let r = resultant(polys[i], polys[j], x)?;
        if !r.is_zero() {
            acc = gcd(&acc, &r);
        }
    }
    Ok(if acc.is_zero() { None } else { Some(acc) })
}

/// Singular points of the curve `f(g, h) = 0`, as orbits.
///
/// Candidates for the `g`-coordinate come from resultant elimination of
/// `h`. For each irreducible candidate `p(g)` the common factor of `f`,
/// `∂f/∂g`, `∂f/∂h` over `Q[g]/(p)` is computed; it is either rational
/// (and then factored into independent `h`-conditions) or used as the
/// pairing polynomial of a linked orbit.
pub fn singular_points(f: &MultiPoly) -> Result<Vec<ConditionPair>, AnalysisError> {
    check_gh(f)?;
    if !is_squarefree(f)? {
        return Err(AnalysisError::NotSquarefree);
    }
    let vars = f.vars().clone();
    let (fg, fh) = (f.derivative(0), f.derivative(1));
    let common = gcd(&gcd(f, &fg), &fh);
    if !common.is_constant() {
        return Err(AnalysisError::PositiveDimensional);
    }
    if f.is_constant() || (fg.is_zero() && fh.is_zero()) {
        return Ok(Vec::new());
    }
    let Some(eg) = eliminant(&[f, &fg, &fh], 1)? else {
        return Err(AnalysisError::PositiveDimensional);
    };
    let eh = eliminant(&[f, &fg, &fh], 0)?;
    let mut out = Vec::new();
    if eg.is_constant() {
        return Ok(out);
    }
    for (p, _) in factor_univariate(&eg)?.factors {
        let qp = QPoly::from_multipoly(&p, 0).expect("eliminant is univariate in g");
        let k = NumberField::new(&qp);
        let mut g = KPoly(Vec::new());
        for q in [f, &fg, &fh] {
            g = g.gcd(&k.specialise(q, 0, 1), &k);
        }
        if g.is_zero() || g.deg() == 0 {
            continue;
        }
        if g.is_rational() {
            let r = g.lift(&vars, 0, 1);
            for (hc, _) in factor_univariate(&r)?.factors {
                out.push(ConditionPair::new(p.clone(), hc));
            }
        } else {
            let pairing = g.lift(&vars, 0, 1);
            let norm = resultant(&p, &pairing, 0)?;
            let hc = squarefree_part(&norm)?.normalized();
            out.push(ConditionPair {
                g_condition: p.normalized(),
                h_condition: hc,
                pairing: Some(pairing),
            });
        }
    }
    // every h-condition must show up in the other eliminant
    if let Some(eh) = eh {
        debug_assert!(out.iter().all(|c| c.h_condition.divides(&eh)));
    }
    Ok(out)
}

/// The monomials `g², gh, h², g, h, 1`.
pub fn quadratic_monomials(vars: &VarList) -> [MultiPoly; 6] {
    let (g, h) = (MultiPoly::var(vars, 0), MultiPoly::var(vars, 1));
    [&g * &g, &g * &h, &h * &h, g.clone(), h.clone(), MultiPoly::one(vars)]
}

/// Basis of the quadratics in `g, h` vanishing on every orbit in
/// `conditions`, each as a primitive integer polynomial.
pub fn quadratic_ansatz(vars: &VarList, conditions: &[ConditionPair]) -> Vec<MultiPoly> {
    let mons = quadratic_monomials(vars);
    let mut rows: Vec<Vec<Q>> = Vec::new();
    for c in conditions {
        let k = c.field();
        let fib = c.fibre(&k);
        let nf: Vec<KPoly> = mons.iter().map(|m| k.specialise(m, 0, 1).rem(&fib, &k)).collect();
        for j in 0..fib.deg() {
            for i in 0..k.degree() {
                rows.push(
                    nf.iter()
                        .map(|p| p.0.get(j).map(|x| k.coords(x)[i].clone()).unwrap_or_else(Q::zero))
                        .collect(),
                );
            }
        }
    }
    nullspace(rows, mons.len())
        .into_iter()
        .map(|v| {
            let ints = integral_multiple(&v);
            let mut acc = MultiPoly::zero(vars);
            for (c, m) in ints.iter().zip(mons.iter()) {
                acc = &acc + &m.scale(c);
            }
            acc.normalized()
        })
        .collect()
}

/// Basis of `{x : A x = 0}` over Q, from the reduced row echelon form.
fn nullspace(mut a: Vec<Vec<Q>>, n: usize) -> Vec<Vec<Q>> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..n {
        let Some(p) = (r..a.len()).find(|&i| !a[i][col].is_zero()) else { continue };
        a.swap(r, p);
        let inv = a[r][col].recip();
        for x in a[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..a.len() {
            if i != r && !a[i][col].is_zero() {
                let f = a[i][col].clone();
                for j in 0..n {
                    let t = &f * &a[r][j];
                    a[i][j] -= t;
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    (0..n)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![Q::zero(); n];
            v[free] = Q::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -a[row][free].clone();
            }
            v
        })
        .collect()
}

/// Both resultants of a pair of curves, factored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResultantReport {
    /// `Res_g(f, q)`, a polynomial in `h`.
    pub res_g: MultiPoly,
    pub res_g_factored: Factorization,
    /// `Res_h(f, q)`, a polynomial in `g`.
    pub res_h: MultiPoly,
    pub res_h_factored: Factorization,
}

/// Resultants with respect to each variable (Sylvester determinant, rows
/// of `f` first), and their factorisations.
pub fn resultant_report(f: &MultiPoly, q: &MultiPoly) -> Result<ResultantReport, AnalysisError> {
    check_gh(f)?;
    check_gh(q)?;
    let res_g = resultant(f, q, 0)?;
    let res_h = resultant(f, q, 1)?;
    if res_g.is_zero() || res_h.is_zero() {
        return Err(AnalysisError::PositiveDimensional);
    }
    Ok(ResultantReport {
        res_g_factored: factor_bivariate(&res_g)?,
        res_g,
        res_h_factored: factor_bivariate(&res_h)?,
        res_h,
    })
}

/// `unit·content·∏ f^e` in the usual notation.
pub fn format_factorization(fac: &Factorization) -> String {
    let mut s = String::new();
    let c = &fac.content * num_bigint::BigInt::from(fac.unit);
    if !c.is_one() || fac.factors.is_empty() {
        if c == num_bigint::BigInt::from(-1) && !fac.factors.is_empty() {
            s.push('-');
        } else {
            s.push_str(&c.to_string());
        }
    }
    for (f, e) in &fac.factors {
        if !s.is_empty() && s != "-" {
            s.push('*');
        }
        s.push('(');
        s.push_str(&f.to_string());
        s.push(')');
        if *e > 1 {
            s.push_str(&format!("^{e}"));
        }
    }
    s
}

/// The plain-text report printed by the command-line tool.
pub fn analysis_report(f: &MultiPoly, q: Option<&MultiPoly>) -> Result<String, AnalysisError> {
    use std::fmt::Write as _;
    let mut out = String::new();
    writeln!(out, "curve: {f}").unwrap();
    if let Some(q) = q {
        let r = resultant_report(f, q)?;
        writeln!(out, "second curve: {q}").unwrap();
        writeln!(out, "Res_{}: {}", f.vars().name(0), format_factorization(&r.res_g_factored)).unwrap();
        writeln!(out, "Res_{}: {}", f.vars().name(1), format_factorization(&r.res_h_factored)).unwrap();
    }
    let sq = squarefree_part(f)?;
    let pts = singular_points(&sq)?;
    writeln!(out, "singular orbits: {}", pts.len()).unwrap();
    for p in &pts {
        writeln!(out, "  {p}  [{} point(s)]", p.size()).unwrap();
    }
    let basis = quadratic_ansatz(f.vars(), &pts);
    writeln!(out, "quadratics through them: dimension {}", basis.len()).unwrap();
    for b in &basis {
        writeln!(out, "  {b}").unwrap();
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;

    fn p(s: &str) -> MultiPoly {
        MultiPoly::parse(s, &gh()).unwrap()
    }

    #[test]
    fn origin_cases() {
        for f in ["g^2 + h^2", "g*h"] {
            let pts = singular_points(&p(f)).unwrap();
            assert_eq!(pts, vec![ConditionPair::new(p("g"), p("h"))], "{f}");
            assert!(pts[0].annihilates(&p(f)));
        }
        assert_eq!(singular_points(&p("g^2 - h")).unwrap(), vec![]);
        assert_eq!(singular_points(&p("(g - h)^2")), Err(AnalysisError::NotSquarefree));
    }

    #[test]
    fn linked_orbit() {
        // nodes at (α, α) for α² = 2
        let f = p("(h - g)^2 - (g^2 - 2)^2*(g + 3)");
        let sq = squarefree_part(&f).unwrap();
        let pts = singular_points(&sq).unwrap();
        assert_eq!(pts.len(), 1);
        let c = &pts[0];
        assert_eq!(c.g_condition, p("g^2 - 2"));
        assert_eq!(c.h_condition, p("h^2 - 2"));
        assert!(c.pairing.is_some());
        assert_eq!(c.size(), 2);
        for q in [&sq, &sq.derivative(0), &sq.derivative(1)] {
            assert!(c.annihilates(q));
        }
    }

    #[test]
    fn ansatz_dimensions() {
        let v = gh();
        assert_eq!(quadratic_ansatz(&v, &[]).len(), 6);
        let pts: Vec<ConditionPair> = [("g", "h"), ("g - 1", "h"), ("g", "h - 1"), ("g - 2", "h - 3")]
            .iter()
            .map(|(a, b)| ConditionPair::new(p(a), p(b)))
            .collect();
        let basis = quadratic_ansatz(&v, &pts);
        assert_eq!(basis.len(), 2);
        for b in &basis {
            assert!(pts.iter().all(|c| c.annihilates(b)));
        }
    }

    #[test]
    fn parallel_lines() {
        let r = resultant_report(&p("g + h"), &p("g + h + 1")).unwrap();
        assert!(r.res_g.is_constant() && r.res_h.is_constant());
        // crossing lines meet in one point: linear eliminants
        let r = resultant_report(&p("g + h"), &p("g - h + 1")).unwrap();
        assert_eq!(r.res_g, p("1 - 2*h"));
    }

    #[test]
    fn lambda21_resultants() {
        let r = resultant_report(&lambda21(), &q21()).unwrap();
        assert_eq!(r.res_g, p(RES_G_21));
        assert_eq!(r.res_h, p(RES_H_21));
        assert_eq!(format_factorization(&r.res_g_factored), "746496*(27*h^2 - 1)^2*(3*h^4 + 27*h^2 - 25)^2");
    }

    #[test]
    fn lambda40_orbits_and_quadric() {
        let f = lambda40();
        let pts = singular_points(&f).unwrap();
        let mut got: Vec<_> = pts.iter().map(|c| (c.g_condition.to_string(), c.h_condition.to_string())).collect();
        got.sort();
        let mut want: Vec<_> = LAMBDA_40_SINGULAR.iter().map(|(a, b)| (p(a).to_string(), p(b).to_string())).collect();
        want.sort();
        assert_eq!(got, want);
        for c in &pts {
            for q in [&f, &f.derivative(0), &f.derivative(1)] {
                assert!(c.annihilates(q));
            }
        }
        let basis = quadratic_ansatz(&gh(), &pts);
        assert_eq!(basis, vec![q40_candidate().normalized()]);
    }

    #[test]
    fn formatting() {
        let fac = factor_bivariate(&p("-6*(10*g + 3)*(15*g + 2)")).unwrap();
        assert_eq!(format_factorization(&fac), "-6*(10*g + 3)*(15*g + 2)");
    }
}
