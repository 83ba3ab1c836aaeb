use super::multipoly::MultiPoly;
use super::PolyError;

/// Resultant of `f` and `g` with respect to variable `x`, computed as the
/// determinant of the Sylvester matrix (so `Res_x(x - a, x - b) = a - b`).
pub fn resultant(f: &MultiPoly, g: &MultiPoly, x: usize) -> Result<MultiPoly, PolyError> {
    if f.is_zero() || g.is_zero() {
        return Err(PolyError::ZeroPolynomial("resultant"));
    }
    let m = f.degree_in(x) as usize;
    let n = g.degree_in(x) as usize;
    if m == 0 {
        return Ok(f.pow(n as u32));
    }
    if n == 0 {
        return Ok(g.pow(m as u32));
    }
    let fc = f.to_univariate(x);
    let gc = g.to_univariate(x);
    let size = m + n;
    let zero = MultiPoly::zero(f.vars());
    let mut mat = vec![vec![zero.clone(); size]; size];
    // rows 0..n: shifts of f (highest coefficient first)
    for r in 0..n {
        for k in 0..=m {
            mat[r][r + k] = fc[m - k].clone();
        }
    }
    for r in 0..m {
        for k in 0..=n {
            mat[n + r][r + k] = gc[n - k].clone();
        }
    }
    Ok(bareiss_determinant(mat))
}

/// Fraction-free Gaussian elimination.
pub fn bareiss_determinant(mut mat: Vec<Vec<MultiPoly>>) -> MultiPoly {
    let n = mat.len();
    if n == 0 {
        panic!("determinant of empty matrix");
    }
    let vars = mat[0][0].vars().clone();
    let mut negate = false;
    let mut prev = MultiPoly::one(&vars);
    for k in 0..n - 1 {
        if mat[k][k].is_zero() {
            let Some(piv) = (k + 1..n).find(|&i| !mat[i][k].is_zero()) else {
                return MultiPoly::zero(&vars);
            };
            mat.swap(k, piv);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &(&mat[i][j] * &mat[k][k]) - &(&mat[i][k] * &mat[k][j]);
                mat[i][j] = v.div_exact(&prev).expect("Bareiss division is exact");
            }
        }
        prev = mat[k][k].clone();
    }
    let d = mat[n - 1][n - 1].clone();
    if negate {
        -d
    } else {
        d
    }
}

/// Discriminant-style helper: `Res_x(f, ∂f/∂x)`.
pub fn resultant_with_derivative(f: &MultiPoly, x: usize) -> Result<MultiPoly, PolyError> {
    resultant(f, &f.derivative(x), x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::VarList;

    #[test]
    fn linear_sign() {
        let v = VarList::new(&["x", "a", "b"]);
        let f = MultiPoly::parse("x - a", &v).unwrap();
        let g = MultiPoly::parse("x - b", &v).unwrap();
        assert_eq!(resultant(&f, &g, 0).unwrap(), MultiPoly::parse("a - b", &v).unwrap());
    }

    #[test]
    fn quadratic_discriminant() {
        let v = VarList::new(&["x", "b", "c"]);
        let f = MultiPoly::parse("x^2 + b*x + c", &v).unwrap();
        let r = resultant_with_derivative(&f, 0).unwrap();
        assert_eq!(r, MultiPoly::parse("4*c - b^2", &v).unwrap());
    }

    #[test]
    fn constant_cases() {
        let v = VarList::new(&["x"]);
        let f = MultiPoly::parse("3", &v).unwrap();
        let g = MultiPoly::parse("x^2 + 1", &v).unwrap();
        assert_eq!(resultant(&f, &g, 0).unwrap(), MultiPoly::parse("9", &v).unwrap());
        assert!(resultant(&MultiPoly::zero(&v), &g, 0).is_err());
    }
}
