//! Hasse diagram W^0(q) and the Kostant description of H^{p,q}(g̃),
//! checked against the direct computation.
//!
//! cargo run --release --example kostant_hasse -- 2

use spencer_core::kostant::{format_simple, hasse_diagram, kostant_dim};
use spencer_core::spencer::{Complex, Spencer};

fn main() -> Result<(), spencer_core::error::Error> {
    let n: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(2);
    let s = Spencer::new(n)?;
    for q in 0..=3 {
        println!("W^0({q}):");
        for e in hasse_diagram(s.algebra(), q)? {
            println!(
                "  {:<8} p={} xi={:<28} {} (dim {})",
                e.label,
                e.p,
                format_simple(&e.xi),
                e.omega_label,
                e.dim
            );
        }
        for p in 0..=2 {
            let direct = s.cohomology(p, q, Complex::Absolute)?.dim as u64;
            let dual = kostant_dim(s.algebra(), p, q)?;
            println!("  H^{{{p},{q}}}: Kostant {dual}, direct {direct}");
        }
    }
    Ok(())
}
