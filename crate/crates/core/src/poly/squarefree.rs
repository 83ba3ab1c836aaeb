use super::gcd::{content_in, gcd};
use super::multipoly::MultiPoly;
use super::PolyError;

/// Squarefree decomposition `f = ±c · ∏ A_i^i`.
///
/// The integer content and sign of `f` are dropped; the returned factors are
/// primitive, pairwise coprime, squarefree, have positive leading
/// coefficient, and are listed by increasing multiplicity. Constant factors
/// are omitted, so a constant input yields an empty list.
pub fn squarefree_decomposition(f: &MultiPoly) -> Result<Vec<(MultiPoly, u32)>, PolyError> {
    if f.is_zero() {
        return Err(PolyError::ZeroPolynomial("squarefree_decomposition"));
    }
    let mut out = Vec::new();
    decompose(&f.primitive_part(), &mut out);
    merge(&mut out);
    Ok(out)
}

fn decompose(f: &MultiPoly, out: &mut Vec<(MultiPoly, u32)>) {
    if f.is_constant() {
        return;
    }
    let vars = f.occurring_vars();
    let x = vars[0];
    let cont = content_in(f, x);
    let pp = f.div_exact(&cont).expect("content divides");
    if !cont.is_constant() {
        decompose(&cont, out);
    }
    yun(&pp, x, out);
}

/// Yun's algorithm for a polynomial primitive with respect to `x`.
fn yun(f: &MultiPoly, x: usize, out: &mut Vec<(MultiPoly, u32)>) {
    if f.degree_in(x) == 0 {
        return;
    }
    let df = f.derivative(x);
    let g = gcd(f, &df);
    let mut w = f.div_exact(&g).expect("gcd divides");
    let mut y = df.div_exact(&g).expect("gcd divides");
    let mut z = &y - &w.derivative(x);
    let mut i = 1u32;
    while !w.is_constant() {
        let a = gcd(&w, &z);
        w = w.div_exact(&a).expect("gcd divides");
        y = z.div_exact(&a).expect("gcd divides");
        z = &y - &w.derivative(x);
        if !a.is_constant() {
            out.push((a.normalized(), i));
        }
        i += 1;
    }
}

fn merge(out: &mut Vec<(MultiPoly, u32)>) {
    out.sort_by_key(|(_, m)| *m);
    let mut merged: Vec<(MultiPoly, u32)> = Vec::new();
    for (f, m) in out.drain(..) {
        match merged.last_mut() {
            Some((g, k)) if *k == m => *g = (&*g * &f).normalized(),
            _ => merged.push((f, m)),
        }
    }
    *out = merged;
}

/// The squarefree part `∏ A_i` (primitive, positive leading coefficient).
pub fn squarefree_part(f: &MultiPoly) -> Result<MultiPoly, PolyError> {
    let mut acc = MultiPoly::one(f.vars());
    for (a, _) in squarefree_decomposition(f)? {
        acc = &acc * &a;
    }
    Ok(acc)
}

pub fn is_squarefree(f: &MultiPoly) -> Result<bool, PolyError> {
    Ok(squarefree_decomposition(f)?.iter().all(|(_, m)| *m == 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::VarList;

    fn p(s: &str) -> MultiPoly {
        MultiPoly::parse(s, &VarList::new(&["t1", "t2"])).unwrap()
    }

    #[test]
    fn examples() {
        let d = squarefree_decomposition(&p("t1^2*(t1+1)")).unwrap();
        assert_eq!(d, vec![(p("t1 + 1"), 1), (p("t1"), 2)]);
        let f = p("12*t1^2*(t2+1)");
        let d = squarefree_decomposition(&f).unwrap();
        assert_eq!(d, vec![(p("t2 + 1"), 1), (p("t1"), 2)]);
        assert!(squarefree_decomposition(&p("0")).is_err());
        assert!(squarefree_decomposition(&p("5")).unwrap().is_empty());
    }

    #[test]
    fn mixed_multiplicities() {
        let a = p("t1 - t2^2");
        let b = p("t1*t2 + 1");
        let c = p("t2 + 3");
        let f = &(&a * &b.pow(2)) * &c.pow(3).scale(&(-7).into());
        let d = squarefree_decomposition(&f).unwrap();
        assert_eq!(d, vec![(a.normalized(), 1), (b, 2), (c, 3)]);
    }
}
