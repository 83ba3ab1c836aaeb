//! Plain-text conic files:
//!
//! ```text
//! # optional comments
//! vars: g,h
//! a: 1
//! b: -21
//! c: -18*g^2 + 12*g*h + 12*h^2 + 14
//! d: 0
//! e: 0
//! f: 0
//! ```
//!
//! Missing coefficient lines default to zero.

use super::form::{Conic, COEFF_NAMES};
use super::log::parse_vars_line;
use super::ConicError;
use crate::poly::MultiPoly;
use std::fmt::Write as _;

pub fn parse_conic(text: &str) -> Result<Conic, ConicError> {
    let mut vars = None;
    let mut coeffs: [Option<MultiPoly>; 6] = Default::default();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        let ln = i + 1;
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if line.starts_with("vars:") {
            vars = Some(parse_vars_line(line).ok_or(ConicError::Format {
                line: ln,
                msg: "malformed vars line".into(),
            })?);
            continue;
        }
        let Some((key, value)) = line.split_once(':') else {
            return Err(ConicError::Format {
                line: ln,
                msg: "expected 'key: value'".into(),
            });
        };
        let key = key.trim();
        let idx = COEFF_NAMES.iter().position(|n| *n == key).ok_or_else(|| ConicError::Format {
            line: ln,
            msg: format!("unknown key '{key}'"),
        })?;
        let v = vars.as_ref().ok_or(ConicError::Format {
            line: ln,
            msg: "coefficient before 'vars:' line".into(),
        })?;
        if coeffs[idx].is_some() {
            return Err(ConicError::Format {
                line: ln,
                msg: format!("duplicate coefficient '{key}'"),
            });
        }
        coeffs[idx] = Some(MultiPoly::parse(value.trim(), v).map_err(|e| ConicError::Format {
            line: ln,
            msg: e.to_string(),
        })?);
    }
    let vars = vars.ok_or(ConicError::Format {
        line: 0,
        msg: "missing 'vars:' line".into(),
    })?;
    let coeffs = coeffs.map(|c| c.unwrap_or_else(|| MultiPoly::zero(&vars)));
    Conic::new(coeffs)
}

pub fn format_conic(l: &Conic) -> String {
    let mut out = String::new();
    writeln!(out, "vars: {}", l.vars()).unwrap();
    for (name, c) in COEFF_NAMES.iter().zip(l.coeffs()) {
        writeln!(out, "{name}: {c}").unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roundtrip() {
        let text = "# test\nvars: g,h\na: 1\nb: -21\nc: -2*(9*g^2 - 6*g*h - 6*h^2 - 7)\n";
        let l = parse_conic(text).unwrap();
        assert_eq!(parse_conic(&format_conic(&l)).unwrap(), l);
        assert!(l.is_diagonal());
        assert!(matches!(parse_conic("a: 1\n"), Err(ConicError::Format { .. })));
        assert!(matches!(parse_conic("vars: g\na: 1\nq: 2\n"), Err(ConicError::Format { line: 3, .. })));
        assert!(matches!(parse_conic("vars: g\na: 1\nb: 1\n"), Err(ConicError::Singular)));
    }
}
