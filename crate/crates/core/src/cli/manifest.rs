use crate::search::{SearchConfig, SearchReport};
use std::fmt::Write as _;
use std::path::Path;
use std::time::Duration;

/// Line-oriented `key: value` summary of one `minimise` run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunManifest {
    pub entries: Vec<(String, String)>,
}

impl RunManifest {
    pub fn new(input: &Path, cfg: &SearchConfig, report: &SearchReport, wall: Duration, paths: [&Path; 3]) -> Self {
        let st = report.outcome.stats();
        let secs = |d: Option<Duration>| d.map_or("none".to_string(), |d| format!("{}", d.as_secs_f64()));
        let outcome = match &report.outcome {
            crate::search::SearchOutcome::Success { .. } => "success".to_string(),
            crate::search::SearchOutcome::Fail { reason, .. } => format!("fail ({reason})"),
        };
        let e = |k: &str, v: String| (k.to_string(), v);
        RunManifest {
            entries: vec![
                e("input", input.display().to_string()),
                e("score", cfg.score.to_string()),
                e("random_prob", cfg.random_prob.to_string()),
                e("seed", cfg.seed.to_string()),
                e("max_steps", cfg.max_steps.to_string()),
                e("timeout", secs(cfg.timeout)),
                e("step_timeout", secs(cfg.step_timeout)),
                e("interleave", cfg.interleave.to_string()),
                e("factor_budget", cfg.factor_budget.subset_limit.to_string()),
                e("jobs", cfg.jobs.to_string()),
                e("outcome", outcome),
                e("steps", st.steps.to_string()),
                e("depth", st.depth.to_string()),
                e("nodes", st.nodes.to_string()),
                e("wall_ms", wall.as_millis().to_string()),
                e("conic", paths[0].display().to_string()),
                e("log", paths[1].display().to_string()),
                e("transcript", paths[2].display().to_string()),
                e("transcript_sha256", report.transcript_digest()),
            ],
        }
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.entries.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for (k, v) in &self.entries {
            writeln!(s, "{k}: {v}").unwrap();
        }
        s
    }

    pub fn parse(text: &str) -> Self {
        let entries = text
            .lines()
            .filter_map(|l| l.split_once(": "))
            .map(|(k, v)| (k.trim().to_string(), v.to_string()))
            .collect();
        RunManifest { entries }
    }
}
