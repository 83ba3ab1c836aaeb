//! One desingularising step at a prime, on a conic whose discriminant the
//! prime divides to order at least two.
//!
//! Usage: cargo run --example single_prime_step

use conicmin::conic::{format_conic, Conic};
use conicmin::minimise::minimise_at_pi;
use conicmin::modular::PrimeElement;
use conicmin::poly::{MultiPoly, VarList};

fn main() {
    let v = VarList::new(&["t1", "t2"]);
    // X² + t2·Y² + (t1 + 1)²·Z²: modulo t1 + 1 the reduction is singular at a point
    let l = Conic::from_strs(&v, ["1", "t2", "(t1 + 1)^2", "0", "0", "0"]).unwrap();
    let pi = PrimeElement::polynomial(&MultiPoly::parse("t1 + 1", &v).unwrap()).unwrap();
    let r = minimise_at_pi(&l, &pi).unwrap();
    println!("branch: {:?}, valuation {:?}", r.stats.branch, r.stats.valuation);
    print!("{}", format_conic(&r.conic));

    // a double-line reduction: X² + 3Y² + 3Z² at 3
    let l = Conic::from_strs(&v, ["1", "3", "3", "0", "0", "0"]).unwrap();
    let r = minimise_at_pi(&l, &PrimeElement::rational(3).unwrap()).unwrap();
    println!("branch: {:?}, valuation {:?}", r.stats.branch, r.stats.valuation);
    print!("{}", format_conic(&r.conic));
    println!("log:\n{}", r.log.to_text());
}
