//! Replayable transform logs.
//!
//! Every step stores the matrix `U`, the scalar `s` and the resulting conic,
//! so a log can be checked independently of the code that produced it.

use super::form::Conic;
use super::matrix::Matrix3;
use super::ConicError;
use crate::poly::{MultiPoly, RationalFunction, VarList};
use std::fmt::Write as _;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LogStep {
    /// Short machine-readable step label, e.g. `scale-content` or `point-lift`.
    pub kind: String,
    /// Free-form detail (the prime used, a permutation, ...).
    pub note: String,
    pub u: Matrix3,
    pub s: RationalFunction,
    pub result: Conic,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransformLog {
    vars: VarList,
    steps: Vec<LogStep>,
}

/// Where a replay first disagreed with the recorded log.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LogMismatch {
    pub step: usize,
    pub reason: String,
}

impl TransformLog {
    pub fn new(vars: &VarList) -> Self {
        TransformLog {
            vars: vars.clone(),
            steps: Vec::new(),
        }
    }

    pub fn vars(&self) -> &VarList {
        &self.vars
    }

    pub fn steps(&self) -> &[LogStep] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn push(&mut self, kind: &str, note: impl Into<String>, u: Matrix3, s: RationalFunction, result: Conic) {
        self.steps.push(LogStep {
            kind: kind.to_string(),
            note: note.into(),
            u,
            s,
            result,
        });
    }

    /// Apply `u`, `s` to `from`, record the step and return the result.
    pub fn apply(&mut self, from: &Conic, kind: &str, note: impl Into<String>, u: Matrix3, s: RationalFunction) -> Result<Conic, ConicError> {
        let result = from.transform(&u, &s)?;
        self.push(kind, note, u, s, result.clone());
        Ok(result)
    }

    pub fn append(&mut self, other: TransformLog) {
        self.steps.extend(other.steps);
    }

    pub fn truncate(&mut self, n: usize) {
        self.steps.truncate(n);
    }

    /// Final conic of the log, if nonempty.
    pub fn last_result(&self) -> Option<&Conic> {
        self.steps.last().map(|s| &s.result)
    }

    /// Product of all steps: `(U_1 U_2 ⋯, s_1 s_2 ⋯)`.
    pub fn compose(&self) -> (Matrix3, RationalFunction) {
        let mut u = Matrix3::identity(&self.vars);
        let mut s = RationalFunction::one(&self.vars);
        for st in &self.steps {
            u = u.mul(&st.u);
            s = &s * &st.s;
        }
        (u, s)
    }

    /// Replay from `source`, checking every recorded result.
    pub fn replay(&self, source: &Conic) -> Result<Conic, LogMismatch> {
        let mut cur = source.clone();
        for (i, st) in self.steps.iter().enumerate() {
            let next = cur.transform(&st.u, &st.s).map_err(|e| LogMismatch {
                step: i + 1,
                reason: e.to_string(),
            })?;
            if next != st.result {
                return Err(LogMismatch {
                    step: i + 1,
                    reason: "recomputed conic differs from the recorded result".into(),
                });
            }
            cur = next;
        }
        Ok(cur)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "vars: {}", self.vars).unwrap();
        writeln!(out, "steps: {}", self.steps.len()).unwrap();
        for st in &self.steps {
            if st.note.is_empty() {
                writeln!(out, "step: {}", st.kind).unwrap();
            } else {
                writeln!(out, "step: {} {}", st.kind, st.note).unwrap();
            }
            let entries: Vec<String> = st.u.entries().map(|e| e.to_string()).collect();
            writeln!(out, "U: {}", entries.join(" ; ")).unwrap();
            writeln!(out, "s: {}", st.s).unwrap();
            let coeffs: Vec<String> = st.result.coeffs().iter().map(|c| c.to_string()).collect();
            writeln!(out, "L: {}", coeffs.join(" ; ")).unwrap();
        }
        out
    }

    pub fn parse(text: &str) -> Result<TransformLog, ConicError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let bad = |line: usize, msg: &str| ConicError::Format {
            line,
            msg: msg.to_string(),
        };
        let (ln, first) = lines.next().ok_or_else(|| bad(0, "empty log"))?;
        let vars = parse_vars_line(first).ok_or_else(|| bad(ln, "expected 'vars:' line"))?;
        let mut log = TransformLog::new(&vars);
        let mut expected: Option<usize> = None;
        loop {
            let Some((ln, line)) = lines.next() else { break };
            if let Some(n) = line.strip_prefix("steps:") {
                expected = Some(n.trim().parse().map_err(|_| bad(ln, "bad step count"))?);
                continue;
            }
            let header = line.strip_prefix("step:").ok_or_else(|| bad(ln, "expected 'step:'"))?.trim();
            let (kind, note) = match header.split_once(' ') {
                Some((k, n)) => (k.to_string(), n.trim().to_string()),
                None => (header.to_string(), String::new()),
            };
            let (ln_u, uline) = lines.next().ok_or_else(|| bad(ln, "missing U line"))?;
            let ustr = uline.strip_prefix("U:").ok_or_else(|| bad(ln_u, "expected 'U:'"))?;
            let parts: Vec<&str> = ustr.split(';').collect();
            if parts.len() != 9 {
                return Err(bad(ln_u, "U needs 9 entries"));
            }
            let mut ent: Vec<MultiPoly> = Vec::with_capacity(9);
            for p in parts {
                ent.push(MultiPoly::parse(p.trim(), &vars).map_err(|e| bad(ln_u, &e.to_string()))?);
            }
            let mut it = ent.into_iter();
            let rows: [[MultiPoly; 3]; 3] = std::array::from_fn(|_| std::array::from_fn(|_| it.next().unwrap()));
            let (ln_s, sline) = lines.next().ok_or_else(|| bad(ln, "missing s line"))?;
            let sstr = sline.strip_prefix("s:").ok_or_else(|| bad(ln_s, "expected 's:'"))?;
            let s = RationalFunction::parse(sstr.trim(), &vars).map_err(|e| bad(ln_s, &e.to_string()))?;
            let (ln_l, lline) = lines.next().ok_or_else(|| bad(ln, "missing L line"))?;
            let lstr = lline.strip_prefix("L:").ok_or_else(|| bad(ln_l, "expected 'L:'"))?;
            let cs: Vec<&str> = lstr.split(';').collect();
            if cs.len() != 6 {
                return Err(bad(ln_l, "L needs 6 coefficients"));
            }
            let mut coeffs: Vec<MultiPoly> = Vec::with_capacity(6);
            for p in cs {
                coeffs.push(MultiPoly::parse(p.trim(), &vars).map_err(|e| bad(ln_l, &e.to_string()))?);
            }
            let result = Conic::new(coeffs.try_into().unwrap()).map_err(|e| bad(ln_l, &e.to_string()))?;
            log.push(&kind, note, Matrix3::from_rows(rows), s, result);
        }
        if let Some(n) = expected {
            if n != log.len() {
                return Err(bad(0, "step count does not match header"));
            }
        }
        Ok(log)
    }
}

pub(crate) fn parse_vars_line(line: &str) -> Option<VarList> {
    let rest = line.strip_prefix("vars:")?;
    let names: Vec<&str> = rest.split(',').map(|s| s.trim()).filter(|s| !s.is_empty()).collect();
    if names.iter().any(|n| !n.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')) {
        return None;
    }
    Some(VarList::new(&names))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roundtrip_and_replay() {
        let v = VarList::new(&["g", "h"]);
        let l = Conic::from_strs(&v, ["g^2", "1", "g*h", "0", "0", "0"]).unwrap();
        let mut log = TransformLog::new(&v);
        let p = |s: &str| MultiPoly::parse(s, &v).unwrap();
        let u = Matrix3::diag(p("1"), p("g"), p("1"));
        let s = RationalFunction::parse("1/g", &v).unwrap();
        let r = log.apply(&l, "custom", "test step", u, s).unwrap();
        assert_eq!(r, Conic::from_strs(&v, ["g", "g", "h", "0", "0", "0"]).unwrap());
        let text = log.to_text();
        let back = TransformLog::parse(&text).unwrap();
        assert_eq!(back, log);
        assert_eq!(back.replay(&l).unwrap(), r);
        // a corrupted result is detected
        let bad = text.replace("L: g ; g ; h", "L: g ; g ; 2*h");
        let bad = TransformLog::parse(&bad).unwrap();
        assert_eq!(bad.replay(&l).unwrap_err().step, 1);
    }
}
