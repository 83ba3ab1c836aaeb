//! Ternary quadratic forms over polynomial rings and their statistics.

pub mod diagonal;
pub mod form;
pub mod io;
pub mod log;
pub mod matrix;
pub mod norm;
pub mod patch;
pub mod scale;
pub mod stats;

pub use diagonal::{diagonalise, Diagonalisation};
pub use form::Conic;
pub use io::{format_conic, parse_conic};
pub use log::{LogMismatch, LogStep, TransformLog};
pub use matrix::Matrix3;
pub use norm::{is_square_rational, norm_certificate_check};
pub use patch::{swap_affine_patch, PatchSwap};
pub use scale::{is_scale_minimal, scale_minimise};
pub use stats::{deg_score, degree_stats, delta_parts, delta_split, stats_from_parts, DegreeStats, DeltaParts};

use crate::factor::FactorError;
use crate::poly::{PolyError, RationalFunction};
use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum ConicError {
    #[error("conic is degenerate (discriminant vanishes)")]
    Singular,
    #[error("coefficients live in different polynomial rings")]
    VariableMismatch,
    #[error("transform does not produce polynomial coefficients")]
    NotIntegral,
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("invalid transform: {0}")]
    InvalidTransform(String),
    #[error("format error at line {line}: {msg}")]
    Format { line: usize, msg: String },
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Factor(#[from] FactorError),
}

/// All variable permutations giving non-decreasing diagonal degrees, in
/// lexicographic order of the permutation. Each entry records `p` with
/// new variable `i` = old variable `p[i]`.
pub fn best_permutation(l: &Conic) -> Vec<(Conic, [usize; 3])> {
    const PERMS: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    let dd = l.diag_degrees();
    PERMS
        .iter()
        .filter(|p| dd[p[0]] <= dd[p[1]] && dd[p[1]] <= dd[p[2]])
        .map(|p| (l.permute(*p), *p))
        .collect()
}

/// Apply a permutation and record it in `log`.
pub fn apply_permutation(l: &Conic, p: [usize; 3], log: &mut TransformLog) -> Result<Conic, ConicError> {
    if p == [0, 1, 2] {
        return Ok(l.clone());
    }
    let vars = l.vars().clone();
    log.apply(l, "permute", format!("{},{},{}", p[0], p[1], p[2]), Matrix3::permutation(&vars, p), RationalFunction::one(&vars))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::VarList;

    #[test]
    fn permutations() {
        let v = VarList::new(&["g", "h"]);
        let l = Conic::from_strs(&v, ["g^2", "1", "g", "0", "0", "0"]).unwrap();
        let ps = best_permutation(&l);
        assert_eq!(ps.len(), 1);
        assert_eq!(ps[0].1, [1, 2, 0]);
        assert_eq!(ps[0].0.diag_degrees(), [0, 1, 2]);
        let l = Conic::from_strs(&v, ["1", "2", "3", "0", "0", "0"]).unwrap();
        assert_eq!(best_permutation(&l).len(), 6);
        let l = Conic::from_strs(&v, ["1", "g", "g^2", "0", "0", "0"]).unwrap();
        assert_eq!(best_permutation(&l)[0].1, [0, 1, 2]);
    }
}
