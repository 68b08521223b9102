//! Spencer cohomology of the pair and its Levi decomposition for q <= 3.
//!
//! cargo run --release --example cohomology_table -- 3

use spencer_core::decomp::{decompose, format_formula};
use spencer_core::spencer::{Complex, Spencer};

fn main() -> Result<(), spencer_core::error::Error> {
    let n: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(2);
    let s = Spencer::new(n)?;
    let m = s.algebra().m();
    for kind in [Complex::Absolute, Complex::Relative] {
        println!("{} cochains, n = {n}", kind.label());
        for q in 0..=3 {
            for p in 0..=2 {
                let h = s.cohomology(p, q, kind)?;
                if h.dim == 0 {
                    continue;
                }
                let comps = decompose(&h.character)?;
                println!("  H^{{{p},{q}}} = {:>5}   {}", h.dim, format_formula(m, &comps));
            }
        }
    }
    let w = s.cohomology_classes(0, 2, Complex::Relative)?;
    println!("H^{{0,2}}(g̃,W) has {} explicit representatives", w.representatives().len());
    Ok(())
}
