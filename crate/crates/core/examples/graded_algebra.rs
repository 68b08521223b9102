//! The contact grading of sl(2n+2), the subspace W and its stabilizer.
//!
//! cargo run --example graded_algebra -- 3

use spencer_core::gla::{commutator, Degree, GradedAlgebra, SubspaceTable};

fn main() -> Result<(), spencer_core::error::Error> {
    let n: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(2);
    let a = GradedAlgebra::new(n)?;
    let t = SubspaceTable::of(&a)?;
    println!("sl({}) with n = {n}", a.size());
    for d in [Degree::Minus1, Degree::Zero, Degree::Plus1] {
        println!("  g^{:<2} dim {}", d.as_int(), a.dim(d));
    }
    println!("V basis: {}", a.names(Degree::Minus1).join(", "));
    println!("W = U + U_perp: {} = {} + {}", t.dim_w, t.dim_u, t.dim_u_perp);
    println!("stabilizer of W in g^0: {}", t.dim_stabilizer);

    let [h, e, f] = a.levi_sl2();
    println!("[e, f] == h: {}", commutator(&e, &f) == h);
    let x = &a.basis(Degree::Zero)[0];
    let v = &a.basis(Degree::Minus1)[a.rho_index()];
    let img = a.coords(Degree::Minus1, &commutator(x, v))?;
    println!("[{}, rho] has {} nonzero V coordinates", a.names(Degree::Zero)[0], img.len());
    Ok(())
}
