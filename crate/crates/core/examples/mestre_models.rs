//! The obstruction conic and its two simplified models, formally and at a
//! rational point.
//!
//! Usage: cargo run --example mestre_models

use conicmin::conic::format_conic;
use conicmin::mestre::{ic_simplified, ic_simplified_reference, mestre_conic, rm_simplified, EkQuantities, IgusaClebsch};
use num_rational::BigRational;

fn main() {
    let ic = ic_simplified(&IgusaClebsch::formal()).unwrap();
    assert_eq!(ic.conic, ic_simplified_reference());
    println!("simplified model in I2, I4, I6, I10 ({} steps):", ic.log.len());
    print!("{}", format_conic(&ic.conic));

    let rm = rm_simplified(&EkQuantities::formal()).unwrap();
    println!("\nsimplified model in A, A1, B, B1, B2 ({} steps):", rm.log.len());
    print!("{}", format_conic(&rm.conic));

    let q = |n: i64| BigRational::from_integer(n.into());
    let pt = IgusaClebsch::constant([q(20), q(-20), q(-1), q(8)]);
    let base = mestre_conic(&pt).unwrap();
    println!("\nobstruction conic at (20, -20, -1, 8), scaled by {}:", base.scale);
    print!("{}", format_conic(&base.conic));
    let model = ic_simplified(&pt).unwrap();
    println!("its simplified model:");
    print!("{}", format_conic(&model.conic));
}
