//! The `step` command: a small line-oriented loop for minimising by hand.

use crate::conic::{apply_permutation, best_permutation, delta_parts, diagonalise, format_conic, scale_minimise, stats_from_parts, Conic, TransformLog};
use crate::factor::{factor_integer, FactorBudget};
use crate::minimise::{degree_minimisation, minimise_at_pi, patch_minimisation, polynomial_minimisation, rational_minimisation, verify_log, MinimiseResult};
use crate::modular::PrimeElement;
use crate::poly::MultiPoly;
use num_bigint::BigInt;
use std::fmt::Write as _;
use std::io::{self, BufRead, Write};

const HELP: &str = "\
commands:
  show            current conic, discriminant split and degree statistics
  actions         numbered list of applicable steps; type the number to run one
  rational        remove odd rational primes from the content of the discriminant
  degree          minimise at the places at infinity
  poly <i>        minimise at the i-th factor of the power-full part
  at <pi>         one step at an odd prime or an irreducible polynomial
  patch <i>       excursion through the patch where the i-th variable is inverted
  perm            reorder variables by diagonal degree
  scale           scale minimisation
  diag            diagonal form of the current conic
  undo            drop the last command's steps
  log             print the transform log
  save <prefix>   write PREFIX.conic and PREFIX.log
  help, quit
";

/// State of an interactive session: the starting conic and the log so far.
pub struct Session {
    pub source: Conic,
    pub log: TransformLog,
    marks: Vec<usize>,
    actions: Vec<String>,
}

impl Session {
    pub fn new(source: Conic) -> Self {
        let log = TransformLog::new(source.vars());
        Session {
            source,
            log,
            marks: Vec::new(),
            actions: Vec::new(),
        }
    }

    pub fn current(&self) -> &Conic {
        self.log.last_result().unwrap_or(&self.source)
    }

    fn power_full_factors(&self) -> Result<Vec<MultiPoly>, String> {
        let (_, fac) = delta_parts(self.current(), &FactorBudget::default()).map_err(|e| e.to_string())?;
        Ok(fac.factors.into_iter().map(|(f, _)| f).collect())
    }

    fn show(&self) -> Result<String, String> {
        let l = self.current();
        let (parts, fac) = delta_parts(l, &FactorBudget::default()).map_err(|e| e.to_string())?;
        let st = stats_from_parts(l, &parts);
        let mut s = format_conic(l);
        writeln!(s, "delta: {}", parts.delta).unwrap();
        writeln!(s, "content: {}  squarefree part: {}  power-full part: {}", parts.content, parts.delta1, parts.delta2).unwrap();
        for (i, (f, m)) in fac.factors.iter().enumerate() {
            writeln!(s, "  [{}] ({f})^{m}", i + 1).unwrap();
        }
        writeln!(
            s,
            "diagonal degrees: {:?}  deg delta: {}  deg score: {}",
            st.diag_degrees, st.delta_degree, st.deg_score
        )
        .unwrap();
        writeln!(s, "log: {} step(s)", self.log.len()).unwrap();
        Ok(s)
    }

    fn list_actions(&mut self) -> Result<String, String> {
        let l = self.current().clone();
        let mut acts = Vec::new();
        let odd = crate::conic::delta_split(&l).map_err(|e| e.to_string())?.odd_content;
        let odd_sq = factor_integer(&odd).map_err(|e| e.to_string())?.iter().any(|(_, e)| *e >= 2);
        if odd_sq {
            acts.push("rational".to_string());
        }
        for i in 0..self.power_full_factors()?.len() {
            acts.push(format!("poly {}", i + 1));
        }
        for i in 0..l.vars().len() {
            acts.push(format!("patch {}", i + 1));
        }
        if best_permutation(&l).first().is_some_and(|(_, p)| *p != [0, 1, 2]) {
            acts.push("perm".to_string());
        }
        acts.push("scale".to_string());
        let mut s = String::new();
        for (i, a) in acts.iter().enumerate() {
            writeln!(s, "{}: {a}", i + 1).unwrap();
        }
        self.actions = acts;
        Ok(s)
    }

    fn record(&mut self, r: MinimiseResult) -> String {
        if !r.changed() {
            return "no change\n".to_string();
        }
        self.marks.push(self.log.len());
        let n = r.log.len();
        self.log.append(r.log);
        let mut s = format!("applied {n} step(s); deg score {} -> {}", r.stats.deg_score.0, r.stats.deg_score.1);
        if let Some((a, b)) = r.stats.valuation {
            write!(s, "; valuation {a} -> {b}").unwrap();
        }
        s.push('\n');
        s.push_str(&format_conic(self.current()));
        s
    }

    fn parse_prime(&self, arg: &str) -> Result<PrimeElement, String> {
        if let Ok(n) = arg.parse::<BigInt>() {
            return PrimeElement::rational(n).map_err(|e| e.to_string());
        }
        let p = MultiPoly::parse(arg, self.current().vars()).map_err(|e| e.to_string())?;
        PrimeElement::polynomial(&p).map_err(|e| e.to_string())
    }

    fn index(arg: &str, n: usize, what: &str) -> Result<usize, String> {
        if n == 0 {
            return Err(format!("no {what} to choose from"));
        }
        match arg.parse::<usize>() {
            Ok(i) if (1..=n).contains(&i) => Ok(i - 1),
            _ => Err(format!("expected a {what} between 1 and {n}")),
        }
    }

    /// Run one command line. `Ok(None)` means quit.
    pub fn execute(&mut self, line: &str) -> Result<Option<String>, String> {
        let line = line.trim();
        let (cmd, arg) = line.split_once(char::is_whitespace).map_or((line, ""), |(c, a)| (c, a.trim()));
        let l = self.current().clone();
        let err = |e: crate::minimise::MinimiseError| e.to_string();
        let out = match cmd {
            "" => String::new(),
            "quit" | "exit" => return Ok(None),
            "help" => HELP.to_string(),
            "show" => self.show()?,
            "actions" => self.list_actions()?,
            "rational" => self.record(rational_minimisation(&l).map_err(err)?),
            "degree" => self.record(degree_minimisation(&l).map_err(err)?),
            "poly" => {
                let fs = self.power_full_factors()?;
                let i = Self::index(arg, fs.len(), "factor index")?;
                let pi = PrimeElement::polynomial_unchecked(fs[i].clone());
                self.record(polynomial_minimisation(&l, &pi).map_err(err)?)
            }
            "at" => {
                let pi = self.parse_prime(arg)?;
                let r = minimise_at_pi(&l, &pi).map_err(err)?;
                self.record(r)
            }
            "patch" => {
                let i = Self::index(arg, l.vars().len(), "variable index")?;
                match patch_minimisation(&l, i).map_err(err)? {
                    Some(r) => self.record(r),
                    None => "no change\n".to_string(),
                }
            }
            "perm" => {
                let (_, p) = best_permutation(&l).into_iter().next().ok_or("no permutation")?;
                let mut log = TransformLog::new(l.vars());
                apply_permutation(&l, p, &mut log).map_err(|e| e.to_string())?;
                self.record(MinimiseResult::from_log(&l, log).map_err(err)?)
            }
            "scale" => {
                let (_, log) = scale_minimise(&l).map_err(|e| e.to_string())?;
                self.record(MinimiseResult::from_log(&l, log).map_err(err)?)
            }
            "diag" => {
                let d = diagonalise(&l).map_err(|e| e.to_string())?;
                format!("alpha: {}\nbeta: {}\ngamma: {}\n", d.alpha, d.beta, d.gamma)
            }
            "undo" => match self.marks.pop() {
                Some(n) => {
                    self.log.truncate(n);
                    format!("undone; log has {n} step(s)\n")
                }
                None => "nothing to undo\n".to_string(),
            },
            "log" => self.log.to_text(),
            "save" => {
                if arg.is_empty() {
                    return Err("save needs a path prefix".into());
                }
                verify_log(&self.source, &self.log).map_err(err)?;
                let pc = format!("{arg}.conic");
                let pl = format!("{arg}.log");
                std::fs::write(&pc, format_conic(self.current())).map_err(|e| e.to_string())?;
                std::fs::write(&pl, self.log.to_text()).map_err(|e| e.to_string())?;
                format!("wrote {pc}\nwrote {pl}\n")
            }
            _ => match cmd.parse::<usize>() {
                Ok(i) if i >= 1 && i <= self.actions.len() => {
                    let a = self.actions[i - 1].clone();
                    return self.execute(&a);
                }
                _ => return Err(format!("unknown command '{cmd}' (try help)")),
            },
        };
        Ok(Some(out))
    }
}

/// Read commands from `input` until EOF or `quit`. Errors from individual
/// commands are printed and the session continues.
pub fn run_session<R: BufRead, W: Write + ?Sized>(session: &mut Session, input: R, out: &mut W) -> io::Result<()> {
    write!(out, "{}", session.show().unwrap_or_default())?;
    write!(out, "> ")?;
    out.flush()?;
    for line in input.lines() {
        let line = line?;
        match session.execute(&line) {
            Ok(None) => break,
            Ok(Some(s)) => write!(out, "{s}")?,
            Err(e) => writeln!(out, "error: {e}")?,
        }
        write!(out, "> ")?;
        out.flush()?;
    }
    writeln!(out)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::VarList;

    #[test]
    fn scripted_session() {
        let v = VarList::new(&["t1", "t2"]);
        let l = Conic::from_strs(&v, ["1", "1", "-9*t1^2", "0", "0", "0"]).unwrap();
        let mut s = Session::new(l.clone());
        let script = "show\nactions\nat t1\nundo\npoly 1\nlog\nbogus\nquit\nshow\n";
        let mut out = Vec::new();
        run_session(&mut s, script.as_bytes(), &mut out).unwrap();
        let text = String::from_utf8(out).unwrap();
        assert!(text.contains("error: unknown command 'bogus'"));
        assert!(text.contains("undone"));
        assert!(!s.log.is_empty());
        let end = verify_log(&l, &s.log).unwrap();
        assert_eq!(&end, s.current());
        assert!(end.discriminant().total_degree() < l.discriminant().total_degree());
    }
}
