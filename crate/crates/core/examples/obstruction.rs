//! First-order obstruction of brackets on the quaternionic Heisenberg model.
//! With a directory argument, also writes the sample brackets as JSON files.
//!
//! cargo run --release --example obstruction -- 2 /tmp/brackets

use std::path::PathBuf;

use spencer_core::crq::{deformation_family, standard_contact_bracket, BracketSpec, Obstruction, OBSTRUCTING};
use spencer_core::exactla::{int, rat};

fn show(ob: &Obstruction, name: &str, l: &BracketSpec) -> Result<(), spencer_core::error::Error> {
    let r = ob.r1_class(l)?;
    let parts: Vec<String> = r.components.iter().filter(|(_, &on)| on).map(|(k, _)| k.clone()).collect();
    println!("  {name:<22} vanishes: {:<5} components: {}", r.vanishes, parts.join(" + "));
    Ok(())
}

fn main() -> Result<(), spencer_core::error::Error> {
    let mut args = std::env::args().skip(1);
    let n: usize = args.next().and_then(|s| s.parse().ok()).unwrap_or(2);
    let out: Option<PathBuf> = args.next().map(PathBuf::from);
    let ob = Obstruction::new(n)?;
    println!("n = {n}, U_perp ⊗ Λ²U* has dimension {}", ob.subspace_dim());

    let l0 = standard_contact_bracket(n)?;
    show(&ob, "standard", &l0)?;

    // a single off-pattern entry picks up obstructing components
    let mut l1 = BracketSpec::zero(n)?;
    l1.set(1, 5.min(l1.dim_u()), 2, int(1))?;
    show(&ob, "single entry", &l1)?;

    // its S⁴H part alone is obstructed; the deformation L_t inherits this
    let pure = ob.component_bracket(&l1, OBSTRUCTING[1])?;
    show(&ob, "pure Λ²E*S⁴H part", &pure)?;
    for t in [rat(1, 2), int(1), int(-3)] {
        show(&ob, &format!("L_0 + ({t})·pure"), &deformation_family(&l0, &pure, &t)?)?;
    }

    if let Some(dir) = out {
        std::fs::create_dir_all(&dir)?;
        for (name, l) in [("standard", &l0), ("single", &l1), ("s4h", &pure)] {
            let path = dir.join(format!("{name}_n{n}.json"));
            std::fs::write(&path, l.to_json())?;
            println!("wrote {}", path.display());
        }
    }
    Ok(())
}
