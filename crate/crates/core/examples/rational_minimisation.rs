//! Remove square odd primes from the content of the discriminant.
//!
//! Usage: cargo run --example rational_minimisation

use conicmin::conic::{delta_split, format_conic, Conic};
use conicmin::minimise::{rational_minimisation, verify_log};
use conicmin::poly::VarList;

fn main() {
    let v = VarList::new(&["g", "h"]);
    let l = Conic::from_strs(&v, ["25", "-9*g", "45*h^2 + 1", "0", "30", "0"]).unwrap();
    println!("content of delta before: {}", delta_split(&l).unwrap().content);
    let r = rational_minimisation(&l).unwrap();
    println!("content of delta after:  {}", delta_split(&r.conic).unwrap().content);
    print!("{}", format_conic(&r.conic));
    verify_log(&l, &r.log).expect("log replays");
    println!("{} logged step(s) verified", r.log.len());
}
