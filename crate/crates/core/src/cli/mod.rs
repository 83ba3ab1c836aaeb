//! Command-line front end. The binary is a thin wrapper around [`run`].
//!
//! Exit codes: 0 success, 1 the requested computation failed (search did
//! not reach a minimal model, a log does not verify), 2 bad input.
//! Every search flag can also be set through an environment variable with
//! the `CONICMIN_` prefix, e.g. `CONICMIN_SEED=7`.

mod manifest;
mod step;

pub use manifest::RunManifest;
pub use step::{run_session, Session};

use crate::analysis::{analysis_report, fixtures};
use crate::conic::{diagonalise, format_conic, is_square_rational, parse_conic, Conic, TransformLog};
use crate::factor::FactorBudget;
use crate::mestre::{ic_from_ek, ic_simplified, mestre_conic, rm_simplified, EkQuantities, IgusaClebsch};
use crate::minimise::verify_log;
use crate::poly::{MultiPoly, RationalFunction, VarList};
use crate::search::{minimisation_search, parse_probability, ScoreKind, SearchConfig, SearchOutcome};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

#[derive(Parser, Debug)]
#[command(name = "conicmin", version, about = "Minimise conics over Z[t1, t2] with replayable certificates")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Search for a minimal model of a conic file.
    Minimise(MinimiseArgs),
    /// Interactive minimisation: inspect the conic and choose steps by hand.
    Step(StepArgs),
    /// Replay a transform log against its source conic.
    Verify(VerifyArgs),
    /// Build the obstruction conic or one of its simplified models.
    Mestre(MestreArgs),
    /// Resultants, singular points and quadratic interpolation for plane curves.
    Analyze(AnalyzeArgs),
    /// Print the built-in reference polynomials.
    Fixtures(FixturesArgs),
}

#[derive(Args, Debug, Clone)]
pub struct SearchArgs {
    /// Path scoring: slope, node or alternating.
    #[arg(long, env = "CONICMIN_SCORE", default_value = "slope")]
    pub score: ScoreKind,
    /// Probability of popping a random leaf instead of the best one (`1/8`, `0.125`, `0`).
    #[arg(long, env = "CONICMIN_RANDOM_PROB", default_value = "1/8", value_parser = parse_probability)]
    pub random_prob: num_rational::Ratio<u32>,
    #[arg(long, env = "CONICMIN_SEED", default_value_t = 0)]
    pub seed: u64,
    #[arg(long, env = "CONICMIN_MAX_STEPS", default_value_t = 10_000)]
    pub max_steps: usize,
    /// Wall-clock budget for the whole search, in seconds.
    #[arg(long, env = "CONICMIN_TIMEOUT")]
    pub timeout: Option<f64>,
    /// Wall-clock budget for the passes on a single node, in seconds.
    #[arg(long, env = "CONICMIN_STEP_TIMEOUT")]
    pub step_timeout: Option<f64>,
    /// Run the rational and degree passes on every child before scoring.
    #[arg(long, env = "CONICMIN_INTERLEAVE")]
    pub interleave: bool,
    /// Recombination subsets tried per factorisation.
    #[arg(long, env = "CONICMIN_FACTOR_BUDGET")]
    pub factor_budget: Option<u64>,
    #[arg(long, env = "CONICMIN_JOBS", default_value_t = 1)]
    pub jobs: usize,
}

impl SearchArgs {
    pub fn config(&self) -> SearchConfig {
        let mut budget = FactorBudget::default();
        if let Some(n) = self.factor_budget {
            budget.subset_limit = n;
        }
        SearchConfig {
            score: self.score,
            random_prob: self.random_prob,
            seed: self.seed,
            max_steps: self.max_steps,
            timeout: self.timeout.map(Duration::from_secs_f64),
            step_timeout: self.step_timeout.map(Duration::from_secs_f64),
            interleave: self.interleave,
            factor_budget: budget,
            jobs: self.jobs.max(1),
        }
    }
}

#[derive(Args, Debug)]
pub struct MinimiseArgs {
    /// Input conic file.
    pub input: PathBuf,
    #[command(flatten)]
    pub search: SearchArgs,
    /// Output prefix (default: the input path without its extension).
    #[arg(long, short)]
    pub out: Option<PathBuf>,
    /// Report the diagonal model against the target shape X² − D·Y² − q·Z².
    #[arg(long, env = "CONICMIN_TARGET_D")]
    pub target_d: Option<i64>,
}

#[derive(Args, Debug)]
pub struct StepArgs {
    pub input: PathBuf,
    /// Read commands from a file instead of standard input.
    #[arg(long)]
    pub script: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// Source conic file.
    pub source: PathBuf,
    /// Transform log file.
    pub log: PathBuf,
    /// Optionally require the replay to end on this conic.
    #[arg(long)]
    pub expect: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum MestreModel {
    /// The obstruction conic itself.
    Base,
    /// The simplified model in Igusa–Clebsch coordinates.
    Ic,
    /// The simplified model in the coordinates A, A1, B, B1, B2.
    Rm,
}

#[derive(Args, Debug)]
pub struct MestreArgs {
    /// Igusa–Clebsch invariants `I2,I4,I6,I10` (rationals or polynomials in --vars).
    #[arg(long, conflicts_with = "ek")]
    pub ic: Option<String>,
    /// Quantities `A,A1,B,B1,B2`.
    #[arg(long)]
    pub ek: Option<String>,
    /// Variables the input values are written in (comma separated).
    #[arg(long, default_value = "")]
    pub vars: String,
    #[arg(long, value_enum, default_value = "ic")]
    pub model: MestreModel,
    /// Output prefix; writes PREFIX.conic, and for chains PREFIX.source.conic and PREFIX.log.
    #[arg(long, short)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct AnalyzeArgs {
    /// Curve, or `@file`, or a fixture name such as `lambda40`.
    pub curve: String,
    /// Second curve for the resultant report.
    #[arg(long)]
    pub with: Option<String>,
    #[arg(long, default_value = "g,h")]
    pub vars: String,
}

#[derive(Args, Debug)]
pub struct FixturesArgs {
    /// Print a single fixture.
    pub name: Option<String>,
}

/// A failure with its exit status.
#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    fn input(msg: impl Into<String>) -> Self {
        CliError { code: 2, message: msg.into() }
    }

    fn failed(msg: impl Into<String>) -> Self {
        CliError { code: 1, message: msg.into() }
    }
}

fn read(p: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(p).map_err(|e| CliError::input(format!("{}: {e}", p.display())))
}

fn write(p: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(p, text).map_err(|e| CliError::failed(format!("{}: {e}", p.display())))
}

fn read_conic(p: &Path) -> Result<Conic, CliError> {
    parse_conic(&read(p)?).map_err(|e| CliError::input(format!("{}: {e}", p.display())))
}

fn with_suffix(prefix: &Path, suffix: &str) -> PathBuf {
    let mut s = prefix.as_os_str().to_owned();
    s.push(suffix);
    PathBuf::from(s)
}

/// Parse arguments and run; returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn std::io::Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = write!(out, "{e}");
            return code;
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(out, "error: {}", e.message);
            e.code
        }
    }
}

fn dispatch(cmd: Command, out: &mut dyn std::io::Write) -> Result<i32, CliError> {
    let text = match cmd {
        Command::Minimise(a) => return cmd_minimise(&a, out),
        Command::Step(a) => {
            let l = read_conic(&a.input)?;
            let mut session = Session::new(l);
            return match &a.script {
                Some(p) => {
                    let script = read(p)?;
                    run_session(&mut session, script.as_bytes(), out).map_err(|e| CliError::failed(e.to_string()))?;
                    Ok(0)
                }
                None => {
                    let stdin = std::io::stdin();
                    run_session(&mut session, stdin.lock(), out).map_err(|e| CliError::failed(e.to_string()))?;
                    Ok(0)
                }
            };
        }
        Command::Verify(a) => cmd_verify(&a)?,
        Command::Mestre(a) => cmd_mestre(&a)?,
        Command::Analyze(a) => cmd_analyze(&a)?,
        Command::Fixtures(a) => cmd_fixtures(&a)?,
    };
    out.write_all(text.as_bytes()).map_err(|e| CliError::failed(e.to_string()))?;
    Ok(0)
}

/// Run the search and write `PREFIX.min.conic`, `PREFIX.log`,
/// `PREFIX.transcript` and `PREFIX.manifest`.
pub fn cmd_minimise(a: &MinimiseArgs, out: &mut dyn std::io::Write) -> Result<i32, CliError> {
    let l0 = read_conic(&a.input)?;
    let cfg = a.search.config();
    let prefix = a.out.clone().unwrap_or_else(|| a.input.with_extension(""));
    let start = Instant::now();
    let report = minimisation_search(&l0, &cfg).map_err(|e| CliError::failed(e.to_string()))?;
    let wall = start.elapsed();
    let outcome = &report.outcome;
    verify_log(&l0, outcome.log()).map_err(|e| CliError::failed(format!("internal error, log does not replay: {e}")))?;

    let paths = [".min.conic", ".log", ".transcript", ".manifest"].map(|s| with_suffix(&prefix, s));
    write(&paths[0], &format_conic(outcome.conic()))?;
    write(&paths[1], &outcome.log().to_text())?;
    write(&paths[2], &report.transcript)?;
    let manifest = RunManifest::new(&a.input, &cfg, &report, wall, [&paths[0], &paths[1], &paths[2]]);
    write(&paths[3], &manifest.to_text())?;

    let mut msg = String::new();
    let st = outcome.stats();
    match outcome {
        SearchOutcome::Success { conic, .. } => {
            writeln!(msg, "success: steps={} depth={}", st.steps, st.depth).unwrap();
            msg.push_str(&format_conic(conic));
            if let Some(d) = a.target_d {
                msg.push_str(&target_report(conic, d).map_err(CliError::failed)?);
            }
        }
        SearchOutcome::Fail { reason, best_conic, .. } => {
            writeln!(msg, "fail ({reason}): steps={} depth={}; best model so far:", st.steps, st.depth).unwrap();
            msg.push_str(&format_conic(best_conic));
        }
    }
    for p in &paths {
        writeln!(msg, "wrote {}", p.display()).unwrap();
    }
    out.write_all(msg.as_bytes()).map_err(|e| CliError::failed(e.to_string()))?;
    Ok(if outcome.is_success() { 0 } else { 1 })
}

/// Diagonalise and compare with `X² − D·Y² − q·Z²`.
pub fn target_report(l: &Conic, d: i64) -> Result<String, String> {
    let dg = diagonalise(l).map_err(|e| e.to_string())?;
    let mut s = String::new();
    writeln!(s, "alpha: {}", dg.alpha).unwrap();
    writeln!(s, "beta: {}", dg.beta).unwrap();
    writeln!(s, "gamma: {}", dg.gamma).unwrap();
    let md = RationalFunction::from_integer(l.vars(), BigInt::from(-d));
    let ratio = dg.beta.checked_div(&(&md * &dg.alpha)).map_err(|e| e.to_string())?;
    let q = -&(dg.gamma.checked_div(&dg.alpha).map_err(|e| e.to_string())?);
    writeln!(s, "beta/(-D*alpha): {ratio}{}", if is_square_rational(&ratio) { " (a square)" } else { "" }).unwrap();
    writeln!(s, "candidate q = -gamma/alpha: {q}").unwrap();
    Ok(s)
}

pub fn cmd_verify(a: &VerifyArgs) -> Result<String, CliError> {
    let source = read_conic(&a.source)?;
    let log = TransformLog::parse(&read(&a.log)?).map_err(|e| CliError::input(format!("{}: {e}", a.log.display())))?;
    if log.vars() != source.vars() {
        return Err(CliError::input("log and conic use different variables"));
    }
    let end = verify_log(&source, &log).map_err(|e| CliError::failed(e.to_string()))?;
    if let Some(p) = &a.expect {
        let want = read_conic(p)?;
        if want != end {
            return Err(CliError::failed("replay does not end on the expected conic"));
        }
    }
    Ok(format!("ok: {} step(s) replayed\n{}", log.len(), format_conic(&end)))
}

fn parse_values(s: &str, n: usize, vars: &VarList) -> Result<Vec<RationalFunction>, CliError> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if parts.len() != n {
        return Err(CliError::input(format!("expected {n} comma-separated values, found {}", parts.len())));
    }
    parts
        .iter()
        .map(|p| RationalFunction::parse(p, vars).map_err(|e| CliError::input(format!("'{p}': {e}"))))
        .collect()
}

fn var_list(s: &str) -> VarList {
    let names: Vec<&str> = s.split(',').map(str::trim).filter(|x| !x.is_empty()).collect();
    VarList::new(&names)
}

pub fn cmd_mestre(a: &MestreArgs) -> Result<String, CliError> {
    let vars = var_list(&a.vars);
    let ic = match &a.ic {
        Some(s) => {
            let v = parse_values(s, 4, &vars)?;
            Some(IgusaClebsch::new(v[0].clone(), v[1].clone(), v[2].clone(), v[3].clone()).map_err(|e| CliError::input(e.to_string()))?)
        }
        None => None,
    };
    let ek = match &a.ek {
        Some(s) => {
            let v = parse_values(s, 5, &vars)?;
            Some(EkQuantities {
                a: v[0].clone(),
                a1: v[1].clone(),
                b: v[2].clone(),
                b1: v[3].clone(),
                b2: v[4].clone(),
            })
        }
        None => None,
    };
    let fail = |e: crate::mestre::MestreError| CliError::input(e.to_string());
    let ic_value = || -> Result<IgusaClebsch, CliError> {
        match (&ic, &ek) {
            (Some(i), _) => Ok(i.clone()),
            (None, Some(e)) => ic_from_ek(e).map_err(fail),
            (None, None) => Ok(IgusaClebsch::formal()),
        }
    };
    let (conic, chain) = match a.model {
        MestreModel::Base => {
            let m = mestre_conic(&ic_value()?).map_err(fail)?;
            (m.conic, None)
        }
        MestreModel::Ic => {
            let ch = ic_simplified(&ic_value()?).map_err(fail)?;
            (ch.conic.clone(), Some(ch))
        }
        MestreModel::Rm => {
            if ic.is_some() {
                return Err(CliError::input("the rm model needs --ek values (or none for the formal model)"));
            }
            let e = ek.clone().unwrap_or_else(EkQuantities::formal);
            let ch = rm_simplified(&e).map_err(fail)?;
            (ch.conic.clone(), Some(ch))
        }
    };
    let mut msg = String::new();
    match &a.out {
        Some(prefix) => {
            let p = with_suffix(prefix, ".conic");
            write(&p, &format_conic(&conic))?;
            writeln!(msg, "wrote {}", p.display()).unwrap();
            if let Some(ch) = &chain {
                let ps = with_suffix(prefix, ".source.conic");
                let pl = with_suffix(prefix, ".log");
                write(&ps, &format_conic(&ch.source))?;
                write(&pl, &ch.log.to_text())?;
                writeln!(msg, "wrote {}\nwrote {}", ps.display(), pl.display()).unwrap();
            }
        }
        None => msg.push_str(&format_conic(&conic)),
    }
    if let Some(ch) = &chain {
        writeln!(msg, "# chain of {} step(s); reference scalar {}", ch.log.len(), ch.scalar).unwrap();
    }
    Ok(msg)
}

fn resolve_curve(s: &str, vars: &VarList) -> Result<MultiPoly, CliError> {
    if let Some(path) = s.strip_prefix('@') {
        let text = read(Path::new(path))?;
        return MultiPoly::parse(text.trim(), vars).map_err(|e| CliError::input(format!("{path}: {e}")));
    }
    let named = match s {
        "lambda21" => Some(fixtures::lambda21()),
        "q21" => Some(fixtures::q21()),
        "lambda40" => Some(fixtures::lambda40()),
        _ => None,
    };
    if let Some(p) = named {
        return p.embed(vars).map_err(|e| CliError::input(e.to_string()));
    }
    MultiPoly::parse(s, vars).map_err(|e| CliError::input(format!("'{s}': {e}")))
}

pub fn cmd_analyze(a: &AnalyzeArgs) -> Result<String, CliError> {
    let vars = var_list(&a.vars);
    if vars.len() != 2 {
        return Err(CliError::input("analysis needs exactly two variables"));
    }
    let f = resolve_curve(&a.curve, &vars)?;
    let q = a.with.as_deref().map(|s| resolve_curve(s, &vars)).transpose()?;
    analysis_report(&f, q.as_ref()).map_err(|e| CliError::failed(e.to_string()))
}

pub fn cmd_fixtures(a: &FixturesArgs) -> Result<String, CliError> {
    let all = fixtures::dump();
    match &a.name {
        None => Ok(all),
        Some(n) => all
            .lines()
            .find(|l| l.split('\t').next() == Some(n.as_str()))
            .map(|l| format!("{}\n", l.split('\t').nth(1).unwrap()))
            .ok_or_else(|| CliError::input(format!("no fixture named '{n}'"))),
    }
}
