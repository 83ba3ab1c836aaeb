//! A small recursive-descent parser for polynomial and rational expressions.
//!
//! Grammar (whitespace ignored):
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := ('+' | '-') unary | power
//! power  := atom ('^' integer)?
//! atom   := integer | identifier | '(' expr ')'
//! ```
//!
//! `**` is accepted as a synonym for `^`.

use super::multipoly::{MultiPoly, VarList};
use super::rational::RationalFunction;
use super::PolyError;
use num_bigint::BigInt;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn tokenize(s: &str) -> Result<Vec<(usize, Tok)>, PolyError> {
    let bytes = s.as_bytes();
    let mut i = 0;
    let mut out = Vec::new();
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < bytes.len() && (bytes[i] as char).is_ascii_digit() {
                i += 1;
            }
            let n: BigInt = s[start..i].parse().expect("digits");
            out.push((start, Tok::Num(n)));
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < bytes.len() && ((bytes[i] as char).is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            out.push((start, Tok::Ident(s[start..i].to_string())));
            continue;
        }
        let tok = match c {
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => {
                if i + 1 < bytes.len() && bytes[i + 1] == b'*' {
                    i += 1;
                    Tok::Caret
                } else {
                    Tok::Star
                }
            }
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            _ => {
                return Err(PolyError::Parse {
                    pos: i,
                    msg: format!("unexpected character '{c}'"),
                })
            }
        };
        out.push((i, tok));
        i += 1;
    }
    Ok(out)
}

/// Parse tree; evaluated into either a polynomial or a rational function.
#[derive(Debug)]
enum Expr {
    Num(BigInt),
    Var(String),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    len: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map(|(p, _)| *p).unwrap_or(self.len)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, PolyError> {
        Err(PolyError::Parse {
            pos: self.here(),
            msg: msg.into(),
        })
    }

    fn expr(&mut self) -> Result<Expr, PolyError> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr, PolyError> {
        let mut lhs = self.unary()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                    lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
                }
                Some(Tok::Slash) => {
                    self.pos += 1;
                    lhs = Expr::Div(Box::new(lhs), Box::new(self.unary()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn unary(&mut self) -> Result<Expr, PolyError> {
        match self.peek() {
            Some(Tok::Minus) => {
                self.pos += 1;
                Ok(Expr::Neg(Box::new(self.unary()?)))
            }
            Some(Tok::Plus) => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Expr, PolyError> {
        let base = self.atom()?;
        if let Some(Tok::Caret) = self.peek() {
            self.pos += 1;
            match self.peek().cloned() {
                Some(Tok::Num(n)) => {
                    self.pos += 1;
                    let e: u32 = n
                        .try_into()
                        .map_err(|_| PolyError::Parse {
                            pos: self.here(),
                            msg: "exponent too large".into(),
                        })?;
                    Ok(Expr::Pow(Box::new(base), e))
                }
                _ => self.err("expected a non-negative integer exponent"),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Expr, PolyError> {
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok(Expr::Num(n))
            }
            Some(Tok::Ident(s)) => {
                self.pos += 1;
                Ok(Expr::Var(s))
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let e = self.expr()?;
                match self.peek() {
                    Some(Tok::RParen) => {
                        self.pos += 1;
                        Ok(e)
                    }
                    _ => self.err("expected ')'"),
                }
            }
            Some(t) => self.err(format!("unexpected token {t:?}")),
            None => self.err("unexpected end of input"),
        }
    }
}

fn parse_expr(s: &str) -> Result<Expr, PolyError> {
    let toks = tokenize(s)?;
    let mut p = Parser {
        toks,
        pos: 0,
        len: s.len(),
    };
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return p.err("trailing input");
    }
    Ok(e)
}

fn eval_poly(e: &Expr, vars: &VarList) -> Result<MultiPoly, PolyError> {
    Ok(match e {
        Expr::Num(n) => MultiPoly::constant(vars, n.clone()),
        Expr::Var(v) => MultiPoly::var_named(vars, v).ok_or_else(|| PolyError::UnknownVariable(v.clone()))?,
        Expr::Neg(a) => -eval_poly(a, vars)?,
        Expr::Add(a, b) => eval_poly(a, vars)? + eval_poly(b, vars)?,
        Expr::Sub(a, b) => eval_poly(a, vars)? - eval_poly(b, vars)?,
        Expr::Mul(a, b) => eval_poly(a, vars)? * eval_poly(b, vars)?,
        Expr::Pow(a, k) => eval_poly(a, vars)?.pow(*k),
        Expr::Div(a, b) => {
            let num = eval_poly(a, vars)?;
            let den = eval_poly(b, vars)?;
            if den.is_zero() {
                return Err(PolyError::DivisionByZero);
            }
            num.div_exact(&den).ok_or(PolyError::NotPolynomial)?
        }
    })
}

fn eval_rational(e: &Expr, vars: &VarList) -> Result<RationalFunction, PolyError> {
    Ok(match e {
        Expr::Num(n) => RationalFunction::from_poly(MultiPoly::constant(vars, n.clone())),
        Expr::Var(v) => RationalFunction::from_poly(
            MultiPoly::var_named(vars, v).ok_or_else(|| PolyError::UnknownVariable(v.clone()))?,
        ),
        Expr::Neg(a) => -&eval_rational(a, vars)?,
        Expr::Add(a, b) => &eval_rational(a, vars)? + &eval_rational(b, vars)?,
        Expr::Sub(a, b) => &eval_rational(a, vars)? - &eval_rational(b, vars)?,
        Expr::Mul(a, b) => &eval_rational(a, vars)? * &eval_rational(b, vars)?,
        Expr::Pow(a, k) => eval_rational(a, vars)?.pow(*k as i32)?,
        Expr::Div(a, b) => eval_rational(a, vars)?.checked_div(&eval_rational(b, vars)?)?,
    })
}

impl MultiPoly {
    /// Parse a polynomial over the given ring. Division is allowed only when exact.
    pub fn parse(s: &str, vars: &VarList) -> Result<MultiPoly, PolyError> {
        eval_poly(&parse_expr(s)?, vars)
    }
}

impl RationalFunction {
    pub fn parse(s: &str, vars: &VarList) -> Result<RationalFunction, PolyError> {
        eval_rational(&parse_expr(s)?, vars)
    }
}

/// Identifiers occurring in an expression, in order of first appearance.
pub fn identifiers(s: &str) -> Result<Vec<String>, PolyError> {
    let mut out: Vec<String> = Vec::new();
    for (_, t) in tokenize(s)? {
        if let Tok::Ident(name) = t {
            if !out.contains(&name) {
                out.push(name);
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_prints() {
        let v = VarList::new(&["g", "h"]);
        let f = MultiPoly::parse("2*(9*g^2 - 6*g*h - 6*h^2 - 7)", &v).unwrap();
        assert_eq!(f.to_string(), "18*g^2 - 12*g*h - 12*h^2 - 14");
        assert_eq!(MultiPoly::parse(&f.to_string(), &v).unwrap(), f);
        let g = MultiPoly::parse("-(h-1)*(3*h**3+9*h^2-27*g-4*h-8)", &v).unwrap();
        assert_eq!(g, MultiPoly::parse("27*g*h - 27*g - 3*h^4 - 6*h^3 + 13*h^2 + 4*h - 8", &v).unwrap());
        assert_eq!(MultiPoly::parse("(g^2-1)/(g-1)", &v).unwrap(), MultiPoly::parse("g+1", &v).unwrap());
    }

    #[test]
    fn errors() {
        let v = VarList::new(&["g", "h"]);
        assert!(matches!(MultiPoly::parse("g +* h", &v), Err(PolyError::Parse { .. })));
        assert!(matches!(MultiPoly::parse("x + 1", &v), Err(PolyError::UnknownVariable(_))));
        assert!(matches!(MultiPoly::parse("g/2", &v), Err(PolyError::NotPolynomial)));
        assert!(matches!(MultiPoly::parse("(g", &v), Err(PolyError::Parse { .. })));
        assert!(matches!(MultiPoly::parse("g^-1", &v), Err(PolyError::Parse { .. })));
    }

    #[test]
    fn rational_parse() {
        let v = VarList::new(&["A", "A1"]);
        let r = RationalFunction::parse("-24*A/A1 + 3", &v).unwrap();
        assert_eq!(r.to_string(), "(-24*A + 3*A1)/A1");
        assert_eq!(identifiers("I2^3 - 140*I2*I4").unwrap(), vec!["I2", "I4"]);
    }
}
