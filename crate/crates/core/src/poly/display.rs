use super::monomial::Monomial;
use super::multipoly::{MultiPoly, VarList};
use super::rational::RationalFunction;
use num_bigint::BigInt;
use num_traits::{One, Signed};
use std::fmt;

fn write_monomial(out: &mut String, m: &Monomial, vars: &VarList) {
    let mut first = true;
    for (i, e) in m.exponents().iter().enumerate() {
        if *e == 0 {
            continue;
        }
        if !first {
            out.push('*');
        }
        first = false;
        out.push_str(vars.name(i));
        if *e > 1 {
            out.push('^');
            out.push_str(&e.to_string());
        }
    }
}

fn write_term(out: &mut String, m: &Monomial, c: &BigInt, vars: &VarList, leading: bool) {
    let neg = c.is_negative();
    if leading {
        if neg {
            out.push('-');
        }
    } else {
        out.push_str(if neg { " - " } else { " + " });
    }
    let a = c.abs();
    if m.is_one() {
        out.push_str(&a.to_string());
    } else {
        if !a.is_one() {
            out.push_str(&a.to_string());
            out.push('*');
        }
        write_monomial(out, m, vars);
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut s = String::new();
        for (i, (m, c)) in self.terms().rev().enumerate() {
            write_term(&mut s, m, c, self.vars(), i == 0);
        }
        f.write_str(&s)
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let num = self.numer();
        let den = self.denom();
        if den.is_one() {
            return write!(f, "{num}");
        }
        if num.num_terms() > 1 {
            write!(f, "({num})")?;
        } else {
            write!(f, "{num}")?;
        }
        let simple_den = den.num_terms() == 1 && {
            let (m, c) = den.leading_term().unwrap();
            m.is_one() || (c.is_one() && m.exponents().iter().filter(|e| **e > 0).count() == 1)
        };
        if simple_den {
            write!(f, "/{den}")
        } else {
            write!(f, "/({den})")
        }
    }
}
