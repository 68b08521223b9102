//! Roots of A_l, Weyl group elements and the length-q layers used by Kostant's theorem.
//!
//! cargo run --example root_system -- 5

use spencer_core::kostant::format_simple;
use spencer_core::roots::{Convention, RootSystem};

fn main() -> Result<(), spencer_core::error::Error> {
    let rank: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(5);
    let r = RootSystem::new(rank, Convention::Alpha)?;
    println!("A_{rank}: {} positive roots", r.positive_roots().len());
    println!("highest root {:?}", r.highest_root());
    println!("rho {:?}", r.rho());
    for q in 0..=3 {
        let layer = r.elements_of_length(q);
        println!("length {q}: {} elements (Poincare coefficient {})", layer.len(), r.poincare_coefficient(q));
    }
    let s = spencer_core::roots::WeylElement::from_word(r.dim(), &[2, 3, 1])?;
    println!("sigma_231 = {} inverts:", s.label());
    for b in r.inversion_set(&s) {
        let c: Vec<i64> = r.simple_coords(&b).iter().map(|x| x.to_integer()).collect();
        println!("  {}", format_simple(&c));
    }
    Ok(())
}
