//! Best-first search for a degree-minimal model.
//!
//! Each iteration pops the queued node with the lowest path score (or a
//! random one), runs the rational and degree passes on it, and either
//! re-queues the refined conic or, if it was seen before, expands one child
//! per irreducible factor of the power-full part of Δ.

use crate::conic::{delta_parts, degree_stats, delta_split, Conic, ConicError, TransformLog};
use crate::factor::{factor_integer_with, FactorBudget};
use crate::minimise::{degree_minimisation, polynomial_minimisation, rational_minimisation, MinimiseError};
use crate::modular::PrimeElement;
use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sha2::{Digest, Sha256};
use std::collections::HashSet;
use std::fmt::{self, Write as _};
use std::str::FromStr;
use std::sync::mpsc;
use std::time::{Duration, Instant};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum ScoreKind {
    #[default]
    AverageSlope,
    PenalisedNode,
    Alternating,
}

impl FromStr for ScoreKind {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "slope" | "average-slope" => Ok(ScoreKind::AverageSlope),
            "node" | "penalised-node" | "penalized-node" => Ok(ScoreKind::PenalisedNode),
            "alternating" => Ok(ScoreKind::Alternating),
            _ => Err(format!("unknown score kind '{s}' (expected slope, node or alternating)")),
        }
    }
}

impl fmt::Display for ScoreKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ScoreKind::AverageSlope => "slope",
            ScoreKind::PenalisedNode => "node",
            ScoreKind::Alternating => "alternating",
        })
    }
}

#[derive(Clone, Debug)]
pub struct SearchConfig {
    pub score: ScoreKind,
    /// Probability of popping a uniformly random queued node.
    pub random_prob: Ratio<u32>,
    pub seed: u64,
    pub max_steps: usize,
    pub timeout: Option<Duration>,
    /// Optional wall-clock limit for the passes applied to one node; a pass that
    /// overruns is treated as a dead branch (its worker thread is abandoned).
    pub step_timeout: Option<Duration>,
    /// Run the rational and degree passes on every child before scoring it.
    pub interleave: bool,
    pub factor_budget: FactorBudget,
    /// Worker threads for child expansion; results are merged in factor order.
    pub jobs: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            score: ScoreKind::AverageSlope,
            random_prob: Ratio::new(1, 8),
            seed: 0,
            max_steps: 10_000,
            timeout: None,
            step_timeout: None,
            interleave: false,
            factor_budget: FactorBudget::default(),
            jobs: 1,
        }
    }
}

/// Parse `1/8`, `0.125` or `0` as a probability.
pub fn parse_probability(s: &str) -> Result<Ratio<u32>, String> {
    let s = s.trim();
    let r = if let Some((n, d)) = s.split_once('/') {
        let n: u32 = n.trim().parse().map_err(|_| format!("bad numerator in '{s}'"))?;
        let d: u32 = d.trim().parse().map_err(|_| format!("bad denominator in '{s}'"))?;
        if d == 0 {
            return Err("zero denominator".into());
        }
        Ratio::new(n, d)
    } else {
        let (int, frac) = s.split_once('.').unwrap_or((s, ""));
        if frac.len() > 6 || !frac.chars().all(|c| c.is_ascii_digit()) {
            return Err(format!("bad probability '{s}'"));
        }
        let den = 10u32.pow(frac.len() as u32);
        let int: u32 = if int.is_empty() { 0 } else { int.parse().map_err(|_| format!("bad probability '{s}'"))? };
        let fr: u32 = if frac.is_empty() { 0 } else { frac.parse().unwrap() };
        Ratio::new(int * den + fr, den)
    };
    if r > Ratio::from_integer(1) {
        return Err(format!("probability {s} exceeds 1"));
    }
    Ok(r)
}

/// `DegScore + #{odd primes dividing the content of Δ}`.
pub fn node_score(l: &Conic) -> Result<i64, MinimiseError> {
    node_score_with(l, &FactorBudget::default())
}

pub fn node_score_with(l: &Conic, budget: &FactorBudget) -> Result<i64, MinimiseError> {
    let parts = delta_split(l)?;
    let ds = crate::conic::stats::stats_from_parts(l, &parts).deg_score;
    let primes = factor_integer_with(&parts.odd_content, budget.integer)?.len();
    Ok(ds + primes as i64)
}

/// Scoring inputs for one node.
#[derive(Clone, Debug)]
pub struct PathInfo {
    pub node_score: i64,
    pub root_score: i64,
    /// Nodes on the root-to-node path, both ends included.
    pub path_len: usize,
    /// Node scores of the strict ancestors.
    pub ancestor_scores: Vec<i64>,
}

pub fn path_score(info: &PathInfo, kind: ScoreKind, step_index: usize) -> BigRational {
    let kind = match kind {
        ScoreKind::Alternating if step_index.is_multiple_of(2) => ScoreKind::AverageSlope,
        ScoreKind::Alternating => ScoreKind::PenalisedNode,
        k => k,
    };
    match kind {
        ScoreKind::AverageSlope => BigRational::new(BigInt::from(info.node_score - info.root_score), BigInt::from(info.path_len)),
        _ => {
            let n = info.ancestor_scores.iter().filter(|&&s| s == info.node_score).count() as i64;
            BigRational::new(BigInt::from(4 * info.node_score + n * n), BigInt::from(4))
        }
    }
}

/// Search statistics; `steps` and `depth` are the reporting quantities.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SearchStats {
    pub steps: usize,
    pub depth: usize,
    pub nodes: usize,
    pub visited: usize,
    pub elapsed_ms: u128,
}

#[derive(Clone, Debug)]
pub enum SearchOutcome {
    Success {
        conic: Conic,
        log: TransformLog,
        stats: SearchStats,
    },
    Fail {
        reason: String,
        best_conic: Conic,
        best_log: TransformLog,
        stats: SearchStats,
    },
}

impl SearchOutcome {
    pub fn is_success(&self) -> bool {
        matches!(self, SearchOutcome::Success { .. })
    }
    pub fn stats(&self) -> &SearchStats {
        match self {
            SearchOutcome::Success { stats, .. } | SearchOutcome::Fail { stats, .. } => stats,
        }
    }
    pub fn conic(&self) -> &Conic {
        match self {
            SearchOutcome::Success { conic, .. } => conic,
            SearchOutcome::Fail { best_conic, .. } => best_conic,
        }
    }
    pub fn log(&self) -> &TransformLog {
        match self {
            SearchOutcome::Success { log, .. } => log,
            SearchOutcome::Fail { best_log, .. } => best_log,
        }
    }
}

#[derive(Clone, Debug)]
pub struct SearchReport {
    pub outcome: SearchOutcome,
    /// One block per iteration; contains no timing data.
    pub transcript: String,
}

impl SearchReport {
    pub fn transcript_digest(&self) -> String {
        hex(&Sha256::digest(self.transcript.as_bytes()))
    }
}

fn hex(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}

/// Short stable identifier of a canonical key.
pub fn key_hash(key: &str) -> String {
    hex(&Sha256::digest(key.as_bytes())[..8])
}

struct Node {
    conic: Conic,
    key: String,
    /// Predecessor for log reconstruction and the steps leading from it.
    parent: Option<usize>,
    segment: TransformLog,
    depth: usize,
    node_score: i64,
    deg_score: i64,
    ancestor_scores: Vec<i64>,
}

fn run_with_deadline<T: Send + 'static>(limit: Option<Duration>, f: impl FnOnce() -> T + Send + 'static) -> Option<T> {
    match limit {
        None => Some(f()),
        Some(d) => {
            let (tx, rx) = mpsc::channel();
            std::thread::spawn(move || {
                let _ = tx.send(f());
            });
            rx.recv_timeout(d).ok()
        }
    }
}

fn refine(l: &Conic) -> Result<(Conic, TransformLog), MinimiseError> {
    let r = rational_minimisation(l)?;
    let d = degree_minimisation(&r.conic)?;
    let mut log = r.log;
    log.append(d.log);
    Ok((d.conic, log))
}

struct Child {
    conic: Conic,
    log: TransformLog,
    node_score: i64,
    deg_score: i64,
}

fn expand_child(l: &Conic, pi: &PrimeElement, interleave: bool, budget: &FactorBudget) -> Result<Option<Child>, MinimiseError> {
    let before = pi.valuation(&l.discriminant())?;
    let r = polynomial_minimisation(l, pi)?;
    if !r.changed() {
        return Ok(None);
    }
    let after = pi.valuation(&r.conic.discriminant())?;
    if after >= before {
        return Ok(None);
    }
    let (conic, log) = if interleave {
        let (c, more) = refine(&r.conic)?;
        let mut log = r.log;
        log.append(more);
        (c, log)
    } else {
        (r.conic, r.log)
    };
    let deg_score = degree_stats(&conic)?.deg_score;
    let node_score = node_score_with(&conic, budget)?;
    Ok(Some(Child {
        conic,
        log,
        node_score,
        deg_score,
    }))
}

struct Search {
    cfg: SearchConfig,
    nodes: Vec<Node>,
    queue: Vec<usize>,
    visited: HashSet<String>,
    transcript: String,
    root_score: i64,
    pool: Option<rayon::ThreadPool>,
}

impl Search {
    fn info(&self, i: usize) -> PathInfo {
        let n = &self.nodes[i];
        PathInfo {
            node_score: n.node_score,
            root_score: self.root_score,
            path_len: n.depth + 1,
            ancestor_scores: n.ancestor_scores.clone(),
        }
    }

    fn log_to(&self, mut i: usize) -> TransformLog {
        let mut chain = Vec::new();
        loop {
            chain.push(i);
            match self.nodes[i].parent {
                Some(p) => i = p,
                None => break,
            }
        }
        let mut log = TransformLog::new(self.nodes[0].conic.vars());
        for &j in chain.iter().rev() {
            log.append(self.nodes[j].segment.clone());
        }
        log
    }

    fn push(&mut self, node: Node) -> usize {
        self.visited.insert(node.key.clone());
        self.nodes.push(node);
        let i = self.nodes.len() - 1;
        self.queue.push(i);
        i
    }

    fn children(&self, l: &Conic, primes: Vec<PrimeElement>) -> Vec<(String, Option<Child>)> {
        let interleave = self.cfg.interleave;
        let budget = self.cfg.factor_budget;
        let limit = self.cfg.step_timeout;
        let one = |pi: &PrimeElement| -> (String, Option<Child>) {
            let (l, pi2, b) = (l.clone(), pi.clone(), budget);
            let r = run_with_deadline(limit, move || expand_child(&l, &pi2, interleave, &b).ok().flatten());
            (pi.to_string(), r.flatten())
        };
        match &self.pool {
            Some(pool) => pool.install(|| {
                use rayon::prelude::*;
                primes.par_iter().map(one).collect()
            }),
            None => primes.iter().map(one).collect(),
        }
    }
}

fn irreducible_factors(l: &Conic, budget: &FactorBudget) -> Result<Vec<PrimeElement>, ConicError> {
    let (_, fac) = delta_parts(l, budget)?;
    Ok(fac.factors.into_iter().map(|(f, _)| PrimeElement::polynomial_unchecked(f)).collect())
}

/// Run the search from `l0`.
pub fn minimisation_search(l0: &Conic, cfg: &SearchConfig) -> Result<SearchReport, MinimiseError> {
    let start = Instant::now();
    let root_score = node_score_with(l0, &cfg.factor_budget)?;
    let root_deg = degree_stats(l0)?.deg_score;
    let pool = if cfg.jobs > 1 {
        rayon::ThreadPoolBuilder::new().num_threads(cfg.jobs).build().ok()
    } else {
        None
    };
    let mut s = Search {
        cfg: cfg.clone(),
        nodes: Vec::new(),
        queue: Vec::new(),
        visited: HashSet::new(),
        transcript: String::new(),
        root_score,
        pool,
    };
    s.push(Node {
        conic: l0.clone(),
        key: l0.canonical_key(),
        parent: None,
        segment: TransformLog::new(l0.vars()),
        depth: 0,
        node_score: root_score,
        deg_score: root_deg,
        ancestor_scores: Vec::new(),
    });
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut best = 0usize;
    let mut steps = 0usize;
    let stats = |s: &Search, steps: usize, depth: usize| SearchStats {
        steps,
        depth,
        nodes: s.nodes.len(),
        visited: s.visited.len(),
        elapsed_ms: start.elapsed().as_millis(),
    };
    let fail = |s: &Search, reason: &str, best: usize, steps: usize| {
        let mut transcript = s.transcript.clone();
        writeln!(transcript, "fail: {reason}").unwrap();
        SearchReport {
            outcome: SearchOutcome::Fail {
                reason: reason.to_string(),
                best_conic: s.nodes[best].conic.clone(),
                best_log: s.log_to(best),
                stats: stats(s, steps, s.nodes[best].depth),
            },
            transcript,
        }
    };
    loop {
        if let Some(&done) = s.queue.iter().find(|&&i| s.nodes[i].deg_score == 0) {
            let n = &s.nodes[done];
            writeln!(s.transcript, "success: {} depth={} node_score={}", key_hash(&n.key), n.depth, n.node_score).unwrap();
            return Ok(SearchReport {
                outcome: SearchOutcome::Success {
                    conic: n.conic.clone(),
                    log: s.log_to(done),
                    stats: stats(&s, steps, n.depth),
                },
                transcript: s.transcript,
            });
        }
        if s.queue.is_empty() {
            return Ok(fail(&s, "queue exhausted", best, steps));
        }
        if steps >= cfg.max_steps {
            return Ok(fail(&s, "step limit reached", best, steps));
        }
        if cfg.timeout.is_some_and(|t| start.elapsed() >= t) {
            return Ok(fail(&s, "timeout", best, steps));
        }
        // choose a leaf
        let random = *cfg.random_prob.numer() > 0 && rng.gen_ratio(*cfg.random_prob.numer(), *cfg.random_prob.denom());
        let qpos = if random {
            rng.gen_range(0..s.queue.len())
        } else {
            let mut bi = 0;
            let mut bs = path_score(&s.info(s.queue[0]), cfg.score, steps);
            for (k, &i) in s.queue.iter().enumerate().skip(1) {
                let sc = path_score(&s.info(i), cfg.score, steps);
                if sc < bs {
                    bs = sc;
                    bi = k;
                }
            }
            bi
        };
        let cur = s.queue.remove(qpos);
        let ps = path_score(&s.info(cur), cfg.score, steps);
        writeln!(
            s.transcript,
            "step {steps}: pop {} {} depth={} node_score={} path_score={}",
            key_hash(&s.nodes[cur].key),
            if random { "random" } else { "best" },
            s.nodes[cur].depth,
            s.nodes[cur].node_score,
            ps
        )
        .unwrap();
        steps += 1;

        let conic = s.nodes[cur].conic.clone();
        let refined = run_with_deadline(cfg.step_timeout, move || refine(&conic).ok()).flatten();
        let Some((lr, rlog)) = refined else {
            writeln!(s.transcript, "  refine failed").unwrap();
            continue;
        };
        let key = lr.canonical_key();
        if !s.visited.contains(&key) {
            let Ok(ds) = degree_stats(&lr) else { continue };
            let Ok(ns) = node_score_with(&lr, &cfg.factor_budget) else { continue };
            writeln!(s.transcript, "  refined -> {} deg_score={} node_score={ns}", key_hash(&key), ds.deg_score).unwrap();
            let (depth, anc) = (s.nodes[cur].depth, s.nodes[cur].ancestor_scores.clone());
            let i = s.push(Node {
                conic: lr,
                key,
                parent: Some(cur),
                segment: rlog,
                depth,
                node_score: ns,
                deg_score: ds.deg_score,
                ancestor_scores: anc,
            });
            if ns < s.nodes[best].node_score {
                best = i;
            }
            continue;
        }
        // already seen: expand at each irreducible factor of Δ₂
        let primes = match irreducible_factors(&lr, &cfg.factor_budget) {
            Ok(p) => p,
            Err(e) => {
                writeln!(s.transcript, "  factorisation failed: {e}").unwrap();
                continue;
            }
        };
        writeln!(s.transcript, "  expand {} ({} primes)", key_hash(&key), primes.len()).unwrap();
        // the refined conic becomes the parent of the children
        let parent_score = node_score_with(&lr, &cfg.factor_budget).unwrap_or(s.nodes[cur].node_score);
        let mut anc = s.nodes[cur].ancestor_scores.clone();
        anc.push(parent_score);
        let depth = s.nodes[cur].depth + 1;
        let mid = {
            s.nodes.push(Node {
                conic: lr.clone(),
                key: key.clone(),
                parent: Some(cur),
                segment: rlog,
                depth: depth - 1,
                node_score: parent_score,
                deg_score: degree_stats(&lr).map(|d| d.deg_score).unwrap_or(i64::MAX),
                ancestor_scores: s.nodes[cur].ancestor_scores.clone(),
            });
            s.nodes.len() - 1
        };
        for (pi, child) in s.children(&lr, primes) {
            match child {
                None => writeln!(s.transcript, "  at {pi}: rejected").unwrap(),
                Some(c) => {
                    let ck = c.conic.canonical_key();
                    if s.visited.contains(&ck) {
                        writeln!(s.transcript, "  at {pi}: visited {}", key_hash(&ck)).unwrap();
                        continue;
                    }
                    writeln!(s.transcript, "  at {pi}: push {} deg_score={} node_score={}", key_hash(&ck), c.deg_score, c.node_score).unwrap();
                    let i = s.push(Node {
                        conic: c.conic,
                        key: ck,
                        parent: Some(mid),
                        segment: c.log,
                        depth,
                        node_score: c.node_score,
                        deg_score: c.deg_score,
                        ancestor_scores: anc.clone(),
                    });
                    if c.node_score < s.nodes[best].node_score {
                        best = i;
                    }
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::minimise::verify_log;
    use crate::poly::VarList;

    fn gh() -> VarList {
        VarList::new(&["g", "h"])
    }

    #[test]
    fn node_scores() {
        let l = Conic::from_strs(&gh(), ["1", "-21", "-(18*g^2 - 12*g*h - 12*h^2 - 14)", "0", "0", "0"]).unwrap();
        assert_eq!(node_score(&l).unwrap(), 2);
        let l = Conic::from_strs(&gh(), ["1", "1", "1", "0", "0", "0"]).unwrap();
        assert_eq!(node_score(&l).unwrap(), 0);
        let l = Conic::from_strs(&gh(), ["1", "1", "g^2", "0", "0", "0"]).unwrap();
        assert_eq!(node_score(&l).unwrap(), 2);
    }

    #[test]
    fn path_scores() {
        let root = PathInfo {
            node_score: 10,
            root_score: 10,
            path_len: 1,
            ancestor_scores: vec![],
        };
        assert_eq!(path_score(&root, ScoreKind::AverageSlope, 0), BigRational::from_integer(0.into()));
        let p = PathInfo {
            node_score: 4,
            root_score: 10,
            path_len: 4,
            ancestor_scores: vec![10, 7, 5],
        };
        assert_eq!(path_score(&p, ScoreKind::AverageSlope, 0), BigRational::new((-3).into(), 2.into()));
        let p = PathInfo {
            node_score: 5,
            root_score: 10,
            path_len: 4,
            ancestor_scores: vec![10, 5, 5],
        };
        assert_eq!(path_score(&p, ScoreKind::PenalisedNode, 0), BigRational::from_integer(6.into()));
        assert_eq!(path_score(&p, ScoreKind::Alternating, 1), BigRational::from_integer(6.into()));
        assert_eq!(path_score(&p, ScoreKind::Alternating, 2), BigRational::new((-5).into(), 4.into()));
    }

    #[test]
    fn probabilities() {
        assert_eq!(parse_probability("1/8").unwrap(), Ratio::new(1, 8));
        assert_eq!(parse_probability("0.125").unwrap(), Ratio::new(1, 8));
        assert_eq!(parse_probability("0").unwrap(), Ratio::new(0, 1));
        assert!(parse_probability("3/2").is_err());
    }

    #[test]
    fn trivial_success() {
        let l = Conic::from_strs(&gh(), ["1", "1", "g", "0", "0", "0"]).unwrap();
        let r = minimisation_search(&l, &SearchConfig::default()).unwrap();
        assert!(r.outcome.is_success());
        assert_eq!(r.outcome.stats().steps, 0);
    }

    #[test]
    fn recovers_from_scaling() {
        let l = Conic::from_strs(&gh(), ["1", "-5*h^2", "-(g+1)*g^2", "0", "0", "0"]).unwrap();
        let cfg = SearchConfig {
            random_prob: Ratio::new(0, 1),
            ..Default::default()
        };
        let r = minimisation_search(&l, &cfg).unwrap();
        let SearchOutcome::Success { conic, log, .. } = &r.outcome else { panic!("{:?}", r.transcript) };
        assert_eq!(verify_log(&l, log).unwrap(), *conic);
        assert_eq!(degree_stats(conic).unwrap().deg_score, 0);
        let again = minimisation_search(&l, &cfg).unwrap();
        assert_eq!(again.transcript, r.transcript);
    }
}
