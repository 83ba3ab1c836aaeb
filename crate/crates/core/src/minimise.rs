//! The minimisation passes: at a single prime, at all rational primes, at
//! the places at infinity, and at a polynomial prime.

use crate::conic::patch::excursion_step;
use crate::conic::{
    apply_permutation, best_permutation, degree_stats, delta_split, scale_minimise, swap_affine_patch, Conic, ConicError, Matrix3, TransformLog,
};
use crate::factor::{factor_integer, FactorError};
use crate::modular::{lift_line_transform, lift_point_transform, singular_locus_mod, ModularError, PrimeElement, SingularLocus};
use crate::poly::{MultiPoly, RationalFunction};
use num_bigint::BigInt;
use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum MinimiseError {
    #[error("{pi}^2 does not divide the discriminant (valuation {valuation})")]
    NotPowerful { pi: String, valuation: u32 },
    #[error("reduction modulo {0} is nonsingular")]
    Nonsingular(String),
    #[error("valuation at {pi} did not decrease ({before} -> {after})")]
    NoDecrease { pi: String, before: u32, after: u32 },
    #[error("log replay failed at step {step}: {reason}")]
    Replay { step: usize, reason: String },
    #[error(transparent)]
    Modular(#[from] ModularError),
    #[error(transparent)]
    Conic(#[from] ConicError),
    #[error(transparent)]
    Factor(#[from] FactorError),
}

/// Which branch of the single-prime step was taken.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Branch {
    Point,
    /// Double line, followed by division by `π^k`.
    Line { k: u32 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinimiseStats {
    /// `v_π(Δ)` before and after, for passes tied to a single prime.
    pub valuation: Option<(u32, u32)>,
    pub deg_score: (i64, i64),
    pub branch: Option<Branch>,
}

#[derive(Clone, Debug)]
pub struct MinimiseResult {
    pub conic: Conic,
    /// Replays from the input conic to `conic`.
    pub log: TransformLog,
    pub stats: MinimiseStats,
}

impl MinimiseResult {
    fn unchanged(l: &Conic) -> Result<Self, MinimiseError> {
        let s = degree_stats(l)?.deg_score;
        Ok(MinimiseResult {
            conic: l.clone(),
            log: TransformLog::new(l.vars()),
            stats: MinimiseStats {
                valuation: None,
                deg_score: (s, s),
                branch: None,
            },
        })
    }

    /// Wrap an arbitrary log starting at `l` (e.g. a permutation or a scale pass).
    pub fn from_log(l: &Conic, log: TransformLog) -> Result<Self, MinimiseError> {
        let conic = log.last_result().unwrap_or(l).clone();
        let stats = MinimiseStats {
            valuation: None,
            deg_score: (degree_stats(l)?.deg_score, degree_stats(&conic)?.deg_score),
            branch: None,
        };
        Ok(MinimiseResult { conic, log, stats })
    }

    pub fn changed(&self) -> bool {
        !self.log.is_empty()
    }
}

/// One desingularising step at `π`; the result is not re-scale-minimised.
pub fn minimise_at_pi(l: &Conic, pi: &PrimeElement) -> Result<MinimiseResult, MinimiseError> {
    let mut r = minimise_at_pi_raw(l, pi)?;
    r.stats.deg_score = (degree_stats(l)?.deg_score, degree_stats(&r.conic)?.deg_score);
    Ok(r)
}

/// As [`minimise_at_pi`] but without computing degree scores (they are
/// reported as zero).
pub(crate) fn minimise_at_pi_raw(l: &Conic, pi: &PrimeElement) -> Result<MinimiseResult, MinimiseError> {
    let vars = l.vars().clone();
    let delta = l.discriminant();
    let before = pi.valuation(&delta)?;
    if before < 2 {
        return Err(MinimiseError::NotPowerful {
            pi: pi.to_string(),
            valuation: before,
        });
    }
    let p = pi.as_poly(&vars);
    let one = MultiPoly::one(&vars);
    let mut log = TransformLog::new(&vars);
    let (out, branch) = match singular_locus_mod(l, pi)? {
        SingularLocus::Nonsingular => return Err(MinimiseError::Nonsingular(pi.to_string())),
        SingularLocus::Point(v) => {
            let u = lift_point_transform(&v, pi)?;
            let l1 = log.apply(l, "point-lift", format!("at {pi}"), u, RationalFunction::one(&vars))?;
            let s = RationalFunction::new(one.clone(), &p * &p).map_err(ConicError::from)?;
            let l2 = log.apply(&l1, "z-over-pi", format!("at {pi}"), Matrix3::diag(p.clone(), p.clone(), one.clone()), s)?;
            (l2, Branch::Point)
        }
        SingularLocus::Line(w) => {
            let u = lift_line_transform(&w, pi)?;
            let l1 = log.apply(l, "line-lift", format!("at {pi}"), u, RationalFunction::one(&vars))?;
            // valuations of the coefficients after Z -> πZ: c gains 2, e and f gain 1
            let shifts = [0u32, 0, 2, 0, 1, 1];
            let mut k = u32::MAX;
            for (c, sh) in l1.coeffs().iter().zip(shifts) {
                if !c.is_zero() {
                    k = k.min(pi.valuation(c)? + sh);
                }
            }
            let s = RationalFunction::new(one.clone(), p.pow(k)).map_err(ConicError::from)?;
            let l2 = log.apply(&l1, "z-times-pi", format!("at {pi}, k={k}"), Matrix3::diag(one.clone(), one.clone(), p.clone()), s)?;
            (l2, Branch::Line { k })
        }
    };
    let after = pi.valuation(&out.discriminant())?;
    if after >= before {
        return Err(MinimiseError::NoDecrease {
            pi: pi.to_string(),
            before,
            after,
        });
    }
    Ok(MinimiseResult {
        conic: out,
        log,
        stats: MinimiseStats {
            valuation: Some((before, after)),
            deg_score: (0, 0),
            branch: Some(branch),
        },
    })
}

/// One attempt at `π` followed by scale minimisation, with the log
/// starting from `l`.
fn step_and_rescale(l: &Conic, pi: &PrimeElement) -> Result<(Conic, TransformLog), MinimiseError> {
    let r = minimise_at_pi_raw(l, pi)?;
    let (m, slog) = scale_minimise(&r.conic)?;
    let mut log = r.log;
    log.append(slog);
    Ok((m, log))
}

/// Try `π` on every permutation with non-decreasing diagonal degrees and
/// keep an acceptable result of minimal degree score (lexicographically
/// first permutation on ties).
fn best_permuted_step<F>(l: &Conic, pi: &PrimeElement, accept: F) -> Result<Option<(Conic, TransformLog, i64)>, MinimiseError>
where
    F: Fn(&Conic) -> bool,
{
    let mut best: Option<(Conic, TransformLog, i64)> = None;
    for (pl, perm) in best_permutation(l) {
        let Ok((m, steps)) = step_and_rescale(&pl, pi) else { continue };
        if !accept(&m) {
            continue;
        }
        let score = degree_stats(&m)?.deg_score;
        if best.as_ref().is_some_and(|b| b.2 <= score) {
            continue;
        }
        let mut log = TransformLog::new(l.vars());
        apply_permutation(l, perm, &mut log)?;
        log.append(steps);
        best = Some((m, log, score));
    }
    Ok(best)
}

/// Remove odd rational primes from the content of Δ, largest prime first,
/// without increasing the diagonal degree.
pub fn rational_minimisation(l: &Conic) -> Result<MinimiseResult, MinimiseError> {
    let s0 = degree_stats(l)?.deg_score;
    let (mut cur, mut log) = scale_minimise(l)?;
    let odd = delta_split(&cur)?.odd_content;
    let mut primes: Vec<BigInt> = factor_integer(&odd)?.into_iter().map(|(p, _)| p).collect();
    primes.reverse();
    for p in primes {
        let pi = PrimeElement::Rational(p.clone());
        let sq = &p * &p;
        loop {
            let content = cur.discriminant().content();
            if (&content % &sq) != BigInt::from(0) {
                break;
            }
            let dd = diag_deg(&cur);
            let accept = |m: &Conic| diag_deg(m) <= dd && m.discriminant().content() < content;
            match best_permuted_step(&cur, &pi, accept)? {
                Some((m, steps, _)) => {
                    log.append(steps);
                    cur = m;
                }
                None => break,
            }
        }
    }
    let s1 = degree_stats(&cur)?.deg_score;
    Ok(MinimiseResult {
        conic: cur,
        log,
        stats: MinimiseStats {
            valuation: None,
            deg_score: (s0, s1),
            branch: None,
        },
    })
}

fn diag_deg(l: &Conic) -> u32 {
    l.diag_degrees().iter().sum()
}

/// Excursion into the affine patch where `t_i` is inverted: minimise at
/// `t_i` there (never raising the diagonal degree) and map back. Returns
/// `None` when the patch offers nothing to do.
pub fn patch_minimisation(l: &Conic, i: usize) -> Result<Option<MinimiseResult>, MinimiseError> {
    let vars = l.vars().clone();
    let sw = swap_affine_patch(l, i)?;
    let ti = PrimeElement::polynomial_unchecked(MultiPoly::var(&vars, i));
    let mut patch_log = sw.log;
    let mut li = sw.conic;
    loop {
        let v = ti.valuation(&li.discriminant())?;
        if v < 2 {
            break;
        }
        let dd = diag_deg(&li);
        match best_permuted_step(&li, &ti, |m| diag_deg(m) <= dd)? {
            Some((m, steps, _)) => {
                patch_log.append(steps);
                li = m;
            }
            None => break,
        }
    }
    if patch_log.is_empty() && sw.degree == 0 {
        return Ok(None);
    }
    let (u, s, back) = excursion_step(l, i, sw.degree, &patch_log, &li)?;
    let mut log = TransformLog::new(&vars);
    log.push("patch-excursion", format!("via {}", vars.name(i)), u, s, back.clone());
    let (m, slog) = scale_minimise(&back)?;
    log.append(slog);
    let s0 = degree_stats(l)?.deg_score;
    let s1 = degree_stats(&m)?.deg_score;
    Ok(Some(MinimiseResult {
        conic: m,
        log,
        stats: MinimiseStats {
            valuation: None,
            deg_score: (s0, s1),
            branch: None,
        },
    }))
}

/// Minimise at infinity in each affine patch; return the first of
/// `(L, L₁, L₂)` with the smallest diagonal degree.
pub fn degree_minimisation(l: &Conic) -> Result<MinimiseResult, MinimiseError> {
    let mut best = MinimiseResult::unchanged(l)?;
    let mut best_dd = diag_deg(l);
    for i in 0..l.vars().len() {
        let Some(r) = patch_minimisation(l, i)? else { continue };
        let dd = diag_deg(&r.conic);
        if dd < best_dd {
            best_dd = dd;
            best = MinimiseResult {
                stats: MinimiseStats {
                    deg_score: (best.stats.deg_score.0, r.stats.deg_score.1),
                    ..r.stats
                },
                ..r
            };
        }
    }
    Ok(best)
}

/// One attempt at the polynomial prime `π`, kept only if it does not raise
/// the degree score.
pub fn polynomial_minimisation(l: &Conic, pi: &PrimeElement) -> Result<MinimiseResult, MinimiseError> {
    let s0 = degree_stats(l)?.deg_score;
    let before = pi.valuation(&l.discriminant())?;
    if before < 2 {
        return MinimiseResult::unchanged(l);
    }
    match best_permuted_step(l, pi, |_| true)? {
        Some((m, log, s1)) if s1 <= s0 => {
            let after = pi.valuation(&m.discriminant())?;
            Ok(MinimiseResult {
                conic: m,
                log,
                stats: MinimiseStats {
                    valuation: Some((before, after)),
                    deg_score: (s0, s1),
                    branch: None,
                },
            })
        }
        _ => MinimiseResult::unchanged(l),
    }
}

/// Replay `log` from `source`, returning the final conic.
pub fn verify_log(source: &Conic, log: &TransformLog) -> Result<Conic, MinimiseError> {
    log.replay(source).map_err(|m| MinimiseError::Replay {
        step: m.step,
        reason: m.reason,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::VarList;

    fn v() -> VarList {
        VarList::new(&["t1", "t2"])
    }
    fn c(a: &str, b: &str, cc: &str) -> Conic {
        Conic::from_strs(&v(), [a, b, cc, "0", "0", "0"]).unwrap()
    }
    fn t(i: usize) -> PrimeElement {
        PrimeElement::polynomial_unchecked(MultiPoly::var(&v(), i))
    }

    #[test]
    fn at_pi_point_branch() {
        let three = PrimeElement::rational(3).unwrap();
        let l = c("1", "1", "-9");
        let r = minimise_at_pi(&l, &three).unwrap();
        assert_eq!(r.conic, c("1", "1", "-1"));
        assert_eq!(r.stats.branch, Some(Branch::Point));
        assert_eq!(r.stats.valuation, Some((2, 0)));
        assert_eq!(verify_log(&l, &r.log).unwrap(), r.conic);
    }

    #[test]
    fn at_pi_line_branch() {
        let three = PrimeElement::rational(3).unwrap();
        let l = c("1", "3", "3");
        let r = minimise_at_pi(&l, &three).unwrap();
        assert_eq!(r.stats.branch, Some(Branch::Line { k: 1 }));
        assert_eq!(r.stats.valuation, Some((2, 1)));
        let mut diag: Vec<String> = r.conic.coeffs()[..3].iter().map(|x| x.to_string()).collect();
        diag.sort();
        assert_eq!(diag, ["1", "1", "3"]);

        // k = 2: v drops by 4
        let l = c("1", "t1^2", "t1^4");
        let r = minimise_at_pi(&l, &t(0)).unwrap();
        assert_eq!(r.stats.branch, Some(Branch::Line { k: 2 }));
        assert_eq!(r.stats.valuation, Some((6, 2)));
        assert_eq!(r.conic, c("1", "t1^2", "1"));
        assert_eq!(verify_log(&l, &r.log).unwrap(), r.conic);
    }

    #[test]
    fn at_pi_errors() {
        let three = PrimeElement::rational(3).unwrap();
        assert!(matches!(minimise_at_pi(&c("1", "1", "3"), &three), Err(MinimiseError::NotPowerful { .. })));
    }

    #[test]
    fn rational_pass() {
        let l = c("1", "1", "-9");
        let r = rational_minimisation(&l).unwrap();
        assert_eq!(r.conic, c("1", "1", "-1"));
        assert_eq!(verify_log(&l, &r.log).unwrap(), r.conic);

        let l = c("1", "1", "-3");
        let r = rational_minimisation(&l).unwrap();
        assert!(!r.changed());

        let l = c("25", "1", "-1");
        let r = rational_minimisation(&l).unwrap();
        assert!(delta_split(&r.conic).unwrap().content % BigInt::from(25) != BigInt::from(0));
        assert_eq!(verify_log(&l, &r.log).unwrap(), r.conic);
    }

    #[test]
    fn degree_pass() {
        let l = c("1", "t1^2", "t1^2");
        let r = degree_minimisation(&l).unwrap();
        assert_eq!(diag_deg(&r.conic), 0);
        assert_eq!(verify_log(&l, &r.log).unwrap(), r.conic);

        let l = c("1", "t2^2", "t2^2");
        let r = degree_minimisation(&l).unwrap();
        assert_eq!(diag_deg(&r.conic), 0);

        let l = c("1", "1", "t1 + t2 + 1");
        let r = degree_minimisation(&l).unwrap();
        assert_eq!(r.conic, l);
    }

    #[test]
    fn polynomial_pass() {
        let l = c("1", "1", "-t1^2");
        let r = polynomial_minimisation(&l, &t(0)).unwrap();
        assert_eq!(r.conic, c("1", "1", "-1"));
        assert_eq!(r.stats.deg_score, (2, 0));
        assert_eq!(verify_log(&l, &r.log).unwrap(), r.conic);
    }

    #[test]
    fn tampered_log_rejected() {
        let l = c("1", "1", "-t1^2");
        let r = polynomial_minimisation(&l, &t(0)).unwrap();
        let text = r.log.to_text();
        let bad = text.replacen("s: 1/t1^2", "s: 1/t1", 1);
        assert_ne!(bad, text);
        let log = TransformLog::parse(&bad).unwrap();
        let step = text.lines().filter(|x| x.starts_with("s:")).position(|x| x == "s: 1/t1^2").unwrap() + 1;
        match verify_log(&l, &log) {
            Err(MinimiseError::Replay { step: s, .. }) => assert_eq!(s, step),
            other => panic!("unexpected {other:?}"),
        }
        assert_eq!(verify_log(&l, &TransformLog::new(&v())).unwrap(), l);
    }
}
