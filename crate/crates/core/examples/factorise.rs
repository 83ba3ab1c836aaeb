//! Factor bivariate integer polynomials.
//!
//! Usage: cargo run --example factorise [POLY]...

use conicmin::analysis::format_factorization;
use conicmin::factor::factor_bivariate;
use conicmin::poly::{MultiPoly, VarList};

fn main() {
    let v = VarList::new(&["g", "h"]);
    let mut inputs: Vec<String> = std::env::args().skip(1).collect();
    if inputs.is_empty() {
        inputs = vec![
            "-900*g^2 - 390*g - 36".into(),
            "-(h - 1)*(3*h^3 + 9*h^2 - 27*g - 4*h - 8)".into(),
            "(g^2 + h^2 - 1)^2*(g*h + 3)".into(),
        ];
    }
    for s in inputs {
        let f = MultiPoly::parse(&s, &v).expect("a polynomial in g, h");
        let fac = factor_bivariate(&f).unwrap();
        println!("{f}\n  = {}", format_factorization(&fac));
    }
}
