//! Segments of the long exact sequence of the pair (absolute, relative, W).
//!
//! cargo run --release --example long_exact_sequence -- 2 3

use spencer_core::spencer::les::les_segment;
use spencer_core::spencer::Spencer;

fn main() -> Result<(), spencer_core::error::Error> {
    let mut args = std::env::args().skip(1);
    let n: usize = args.next().and_then(|s| s.parse().ok()).unwrap_or(2);
    let mut totals: Vec<i32> = args.map(|a| a.parse().expect("total degree p+q")).collect();
    if totals.is_empty() {
        totals = vec![2, 3, 5];
    }
    let s = Spencer::new(n)?;
    for total in totals {
        let seg = les_segment(&s, total)?;
        println!("p+q = {total}, exact: {}", seg.is_exact());
        for m in &seg.maps {
            println!(
                "  {:<14} -> {:<14} rank {:>4}  {:?}",
                seg.nodes[m.from].label, seg.nodes[m.to].label, m.rank, m.kind
            );
        }
        if seg.truncated {
            println!("  (truncated above q = 3)");
        }
    }
    Ok(())
}
