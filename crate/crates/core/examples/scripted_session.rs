//! Drive the interactive minimiser from a fixed script.
//!
//! Usage: cargo run --example scripted_session

use conicmin::cli::{run_session, Session};
use conicmin::conic::Conic;
use conicmin::poly::VarList;

fn main() {
    let v = VarList::new(&["t1", "t2"]);
    let l = Conic::from_strs(&v, ["1", "-5", "-45*t1^2*t2^3", "0", "0", "0"]).unwrap();
    let mut s = Session::new(l);
    let script = "actions\n2\nundo\npoly 2\nrational\nshow\ndiag\nlog\n";
    run_session(&mut s, script.as_bytes(), &mut std::io::stdout()).unwrap();
}
