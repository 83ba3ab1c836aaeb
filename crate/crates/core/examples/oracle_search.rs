//! Build bloated copies of known minimal conics and check that the search
//! recovers a degree-minimal model for each.
//!
//! Usage: cargo run --release --example oracle_search [COUNT] [SEED]

use conicmin::conic::degree_stats;
use conicmin::instances::oracle_instance;
use conicmin::minimise::verify_log;
use conicmin::poly::VarList;
use conicmin::search::{minimisation_search, SearchConfig};
use num_rational::Ratio;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::time::{Duration, Instant};

fn main() {
    let args: Vec<String> = std::env::args().collect();
    let count: u64 = args.get(1).and_then(|s| s.parse().ok()).unwrap_or(20);
    let seed: u64 = args.get(2).and_then(|s| s.parse().ok()).unwrap_or(7);
    let vars = VarList::new(&["g", "h"]);
    let cfg = SearchConfig {
        random_prob: Ratio::new(0, 1),
        max_steps: 10_000,
        timeout: Some(Duration::from_secs(120)),
        ..Default::default()
    };
    let mut ok = 0;
    let total = Instant::now();
    for i in 0..count {
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_mul(1000).wrapping_add(i));
        let inst = oracle_instance(&mut rng, &vars);
        let t = Instant::now();
        let report = minimisation_search(&inst.bloated, &cfg).expect("search runs");
        let stats = report.outcome.stats().clone();
        let verified = verify_log(&inst.bloated, report.outcome.log()).is_ok();
        let score = degree_stats(report.outcome.conic()).map(|s| s.deg_score).unwrap_or(-1);
        if report.outcome.is_success() && verified {
            ok += 1;
        }
        println!(
            "#{i:3} D={:2} deg q={} success={} verified={verified} deg_score={score} steps={} depth={} {:.2?}",
            inst.d,
            inst.q.total_degree(),
            report.outcome.is_success(),
            stats.steps,
            stats.depth,
            t.elapsed()
        );
    }
    println!("{ok}/{count} recovered in {:.2?}", total.elapsed());
}
