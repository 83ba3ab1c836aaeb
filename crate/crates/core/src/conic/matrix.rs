use crate::poly::{MultiPoly, VarList};

/// A 3×3 matrix of polynomials, stored row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix3 {
    pub m: [[MultiPoly; 3]; 3],
}

impl Matrix3 {
    pub fn zero(vars: &VarList) -> Self {
        let z = MultiPoly::zero(vars);
        Matrix3 {
            m: std::array::from_fn(|_| std::array::from_fn(|_| z.clone())),
        }
    }

    pub fn identity(vars: &VarList) -> Self {
        Self::diag(MultiPoly::one(vars), MultiPoly::one(vars), MultiPoly::one(vars))
    }

    pub fn diag(a: MultiPoly, b: MultiPoly, c: MultiPoly) -> Self {
        let mut u = Self::zero(a.vars());
        u.m[0][0] = a;
        u.m[1][1] = b;
        u.m[2][2] = c;
        u
    }

    /// Matrix whose `j`-th column is `cols[j]`.
    pub fn from_columns(cols: [[MultiPoly; 3]; 3]) -> Self {
        let vars = cols[0][0].vars().clone();
        let mut u = Self::zero(&vars);
        for (j, col) in cols.into_iter().enumerate() {
            for (i, x) in col.into_iter().enumerate() {
                u.m[i][j] = x;
            }
        }
        u
    }

    pub fn from_rows(rows: [[MultiPoly; 3]; 3]) -> Self {
        Matrix3 { m: rows }
    }

    /// Permutation matrix with `e_{p[i]}` as its `i`-th column, so that the
    /// new `i`-th variable corresponds to the old `p[i]`-th one.
    pub fn permutation(vars: &VarList, p: [usize; 3]) -> Self {
        let mut u = Self::zero(vars);
        for (i, &pi) in p.iter().enumerate() {
            u.m[pi][i] = MultiPoly::one(vars);
        }
        u
    }

    pub fn vars(&self) -> &VarList {
        self.m[0][0].vars()
    }

    pub fn get(&self, i: usize, j: usize) -> &MultiPoly {
        &self.m[i][j]
    }

    pub fn column(&self, j: usize) -> [MultiPoly; 3] {
        std::array::from_fn(|i| self.m[i][j].clone())
    }

    pub fn row(&self, i: usize) -> [MultiPoly; 3] {
        self.m[i].clone()
    }

    pub fn transpose(&self) -> Self {
        Matrix3 {
            m: std::array::from_fn(|i| std::array::from_fn(|j| self.m[j][i].clone())),
        }
    }

    pub fn mul(&self, o: &Matrix3) -> Matrix3 {
        let vars = self.vars().clone();
        Matrix3 {
            m: std::array::from_fn(|i| {
                std::array::from_fn(|j| {
                    let mut acc = MultiPoly::zero(&vars);
                    for k in 0..3 {
                        if !self.m[i][k].is_zero() && !o.m[k][j].is_zero() {
                            acc += &(&self.m[i][k] * &o.m[k][j]);
                        }
                    }
                    acc
                })
            }),
        }
    }

    pub fn scale(&self, c: &MultiPoly) -> Matrix3 {
        Matrix3 {
            m: std::array::from_fn(|i| std::array::from_fn(|j| &self.m[i][j] * c)),
        }
    }

    pub fn is_diagonal(&self) -> bool {
        (0..3).all(|i| (0..3).all(|j| i == j || self.m[i][j].is_zero()))
    }

    pub fn is_identity(&self) -> bool {
        self.is_diagonal() && (0..3).all(|i| self.m[i][i].is_one())
    }

    fn minor(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> MultiPoly {
        &(&self.m[r0][c0] * &self.m[r1][c1]) - &(&self.m[r0][c1] * &self.m[r1][c0])
    }

    pub fn det(&self) -> MultiPoly {
        let m = &self.m;
        let a = &m[0][0] * &self.minor(1, 2, 1, 2);
        let b = &m[0][1] * &self.minor(1, 2, 0, 2);
        let c = &m[0][2] * &self.minor(1, 2, 0, 1);
        &(&a - &b) + &c
    }

    /// Classical adjugate: `adj(M) · M = det(M) · I`.
    pub fn adjugate(&self) -> Matrix3 {
        let idx = |k: usize| -> (usize, usize) {
            match k {
                0 => (1, 2),
                1 => (0, 2),
                _ => (0, 1),
            }
        };
        Matrix3 {
            m: std::array::from_fn(|i| {
                std::array::from_fn(|j| {
                    // adj[i][j] = (-1)^{i+j} * minor with row j, column i removed
                    let (r0, r1) = idx(j);
                    let (c0, c1) = idx(i);
                    let mnr = self.minor(r0, r1, c0, c1);
                    if (i + j) % 2 == 1 {
                        -mnr
                    } else {
                        mnr
                    }
                })
            }),
        }
    }

    /// Apply a map to every entry.
    pub fn map<F: Fn(&MultiPoly) -> MultiPoly>(&self, f: F) -> Matrix3 {
        Matrix3 {
            m: std::array::from_fn(|i| std::array::from_fn(|j| f(&self.m[i][j]))),
        }
    }

    pub fn entries(&self) -> impl Iterator<Item = &MultiPoly> {
        self.m.iter().flat_map(|r| r.iter())
    }

    pub fn max_entry_degree(&self) -> u32 {
        self.entries().map(|e| e.total_degree()).max().unwrap_or(0)
    }
}

impl std::fmt::Display for Matrix3 {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for (i, row) in self.m.iter().enumerate() {
            write!(f, "[{} , {} , {}]", row[0], row[1], row[2])?;
            if i < 2 {
                writeln!(f)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn det_and_adjugate() {
        let v = VarList::new(&["t"]);
        let p = |s: &str| MultiPoly::parse(s, &v).unwrap();
        let m = Matrix3::from_rows([
            [p("2"), p("t"), p("0")],
            [p("t"), p("2"), p("1")],
            [p("0"), p("1"), p("2*t")],
        ]);
        let d = m.det();
        assert_eq!(d, p("8*t - 2*t^3 - 2"));
        let prod = m.adjugate().mul(&m);
        assert_eq!(prod, Matrix3::identity(&v).scale(&d));
        let perm = Matrix3::permutation(&v, [1, 2, 0]);
        assert_eq!(perm.det().as_constant().unwrap(), 1.into());
    }
}
