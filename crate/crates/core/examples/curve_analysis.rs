//! Resultants, singular points and the quadric through them.
//!
//! Usage: cargo run --example curve_analysis

use conicmin::analysis::fixtures::{lambda21, lambda40, q21};
use conicmin::analysis::{analysis_report, format_factorization, resultant_report};

fn main() {
    let r = resultant_report(&lambda21(), &q21()).unwrap();
    println!("Res_g = {}", format_factorization(&r.res_g_factored));
    println!("Res_h = {}", format_factorization(&r.res_h_factored));
    println!();
    print!("{}", analysis_report(&lambda40(), None).unwrap());
}
