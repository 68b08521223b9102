//! `H^{•,q}(g̃)` through Kostant's theorem for the parabolic of the second
//! node: one irreducible `g_0`-module per element of the Hasse diagram
//! `W⁰(q) = {σ : Φ_σ ⊆ Φ̂⁺}`, where `Φ̂⁺` are the positive roots with a
//! nonzero α_2 coefficient.
//!
//! All root data is kept in the system with simple roots `α_i = -δ_i`
//! (`Convention::Alpha`). The grading element takes the value -1 on α_2,
//! so in coordinates `μ(E) = μ_1 + μ_2`. The bidegree of σ solves
//! `σ(θ)(E) = Σ_{β∈Φ_σ} β(E) + p + q - 1`.

use num_rational::Rational64;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::decomp::{irrep_dim, Irrep};
use crate::error::Error;
use crate::gla::GradedAlgebra;
use crate::roots::{weight_sum, Convention, RootSystem, Weight, WeylElement};

#[derive(Clone, Debug, Serialize)]
pub struct HasseEntry {
    #[serde(skip)]
    pub sigma: WeylElement,
    pub label: String,
    pub word: Vec<usize>,
    /// Inversion set, each root in simple-root coordinates.
    pub inversions: Vec<Vec<i64>>,
    /// σ(θ) in simple-root coordinates.
    pub sigma_theta: Vec<i64>,
    /// ξ_σ = σ(θ) - ΣΦ_σ in simple-root coordinates.
    pub xi: Vec<i64>,
    pub p: i32,
    pub q: usize,
    /// Highest weight in fundamental weights ω_1..ω_ℓ (ω_2 is always 0).
    pub omega: Vec<u32>,
    pub omega_label: String,
    pub dim: u64,
}

fn grading(w: &Weight) -> Rational64 {
    w.coords()[0] + w.coords()[1]
}

fn integral(v: &[Rational64]) -> Result<Vec<i64>, Error> {
    v.iter()
        .map(|x| {
            if x.is_integer() {
                Ok(x.to_integer())
            } else {
                Err(Error::Consistency(format!("non-integral coordinate {x}")))
            }
        })
        .collect()
}

/// Positive roots with nonzero α_2 coefficient.
pub fn is_hat_root(rs: &RootSystem, b: &Weight) -> bool {
    !rs.simple_coords(b)[1].is_zero()
}

/// Hasse diagram `W⁰(q)` for `sl(2n+2)` crossed at node 2, sorted by word.
pub fn hasse_diagram(a: &GradedAlgebra, q: usize) -> Result<Vec<HasseEntry>, Error> {
    if q > 3 {
        return Err(Error::Bidegree(format!("Hasse diagrams are supported for q <= 3, got {q}")));
    }
    let rs = RootSystem::new(a.rank(), Convention::Alpha)?;
    let elems = rs.elements_of_length(q);
    let entries: Vec<Option<Result<HasseEntry, Error>>> = elems
        .par_iter()
        .map(|s| {
            let phi = rs.inversion_set(s);
            if !phi.iter().all(|b| is_hat_root(&rs, b)) {
                return None;
            }
            Some(entry(&rs, s, &phi, q))
        })
        .collect();
    entries.into_iter().flatten().collect()
}

fn entry(rs: &RootSystem, s: &WeylElement, phi: &[Weight], q: usize) -> Result<HasseEntry, Error> {
    let theta = rs.highest_root();
    let st = s.act(&theta);
    let sum = weight_sum(rs.dim(), phi);
    let xi = st.sub(&sum);
    let p = bidegree_p(&st, phi, q)?;
    let omega = omega_coords(&xi)?;
    let dim = levi_dim(&omega);
    Ok(HasseEntry {
        sigma: s.clone(),
        label: s.label(),
        word: s.word().to_vec(),
        inversions: phi.iter().map(|b| integral(&rs.simple_coords(b))).collect::<Result<_, _>>()?,
        sigma_theta: integral(&rs.simple_coords(&st))?,
        xi: integral(&rs.simple_coords(&xi))?,
        p,
        q,
        omega_label: omega_label(&omega),
        omega,
        dim,
    })
}

/// `p` from `σ(θ)(E) = Σ β(E) + p + q - 1`.
pub fn bidegree_p(sigma_theta: &Weight, phi: &[Weight], q: usize) -> Result<i32, Error> {
    let sb: Rational64 = phi.iter().map(grading).sum();
    let p = grading(sigma_theta) - sb - Rational64::from_integer(q as i64) + Rational64::one();
    if !p.is_integer() {
        return Err(Error::Consistency(format!("non-integral bidegree p = {p}")));
    }
    Ok(p.to_integer() as i32)
}

/// Highest weight, in fundamental weights of `sl(2) ⊕ sl(2n)`, of the
/// module with extreme weight ξ. ξ is a lowest weight for the Levi in the
/// ordering of the standard system, so the longest element of the Levi Weyl
/// group (reversal inside the blocks {1,2} and {3..ℓ+1}) is applied first.
pub fn omega_coords(xi: &Weight) -> Result<Vec<u32>, Error> {
    let c = xi.coords();
    let d = c.len();
    let mut mu: Vec<Rational64> = vec![c[1], c[0]];
    mu.extend(c[2..].iter().rev());
    let mut out = Vec::with_capacity(d - 1);
    for i in 0..d - 1 {
        let v = if i == 1 { Rational64::zero() } else { mu[i] - mu[i + 1] };
        if !v.is_integer() || v.is_negative() {
            return Err(Error::Consistency(format!("weight {xi:?} is not Levi-dominant after the flip")));
        }
        out.push(v.to_integer() as u32);
    }
    Ok(out)
}

pub fn omega_label(omega: &[u32]) -> String {
    let terms: Vec<String> = omega
        .iter()
        .enumerate()
        .filter(|(_, &c)| c > 0)
        .map(|(i, &c)| if c == 1 { format!("ω_{}", i + 1) } else { format!("{c}ω_{}", i + 1) })
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join("+")
    }
}

/// Dimension of the `sl(2) ⊕ sl(2n)` irrep with the given ω-coordinates.
pub fn levi_dim(omega: &[u32]) -> u64 {
    irrep_dim(&Irrep::new(omega[0], omega[2..].to_vec()))
}

#[derive(Clone, Debug, Serialize)]
pub struct KostantTerm {
    pub p: i32,
    pub q: usize,
    pub label: String,
    pub omega: Vec<u32>,
    pub omega_label: String,
    pub dim: u64,
}

pub fn kostant_cohomology(a: &GradedAlgebra, q: usize) -> Result<Vec<KostantTerm>, Error> {
    let mut out: Vec<KostantTerm> = hasse_diagram(a, q)?
        .into_iter()
        .map(|e| KostantTerm { p: e.p, q, label: e.label, omega: e.omega, omega_label: e.omega_label, dim: e.dim })
        .collect();
    out.sort_by(|x, y| y.p.cmp(&x.p).then(x.label.cmp(&y.label)));
    Ok(out)
}

/// Total dimension of `H^{p,q}(g̃)` predicted by Kostant's theorem.
pub fn kostant_dim(a: &GradedAlgebra, p: i32, q: usize) -> Result<u64, Error> {
    Ok(kostant_cohomology(a, q)?.iter().filter(|t| t.p == p).map(|t| t.dim).sum())
}

/// `|ξ + ρ| = |θ + ρ|`, checked for one entry.
pub fn norm_identity_holds(a: &GradedAlgebra, e: &HasseEntry) -> Result<bool, Error> {
    let rs = RootSystem::new(a.rank(), Convention::Alpha)?;
    let xi = from_simple_coords(&rs, &e.xi);
    let r = rs.rho();
    let lhs = xi.add(&r);
    let rhs = rs.highest_root().add(&r);
    Ok(lhs.inner(&lhs) == rhs.inner(&rhs))
}

/// ⟨ξ, α⟩ ≥ 0 for every positive root of the Levi factor.
pub fn is_levi_dominant(a: &GradedAlgebra, e: &HasseEntry) -> Result<bool, Error> {
    let rs = RootSystem::new(a.rank(), Convention::Alpha)?;
    let xi = from_simple_coords(&rs, &e.xi);
    Ok(rs
        .positive_roots()
        .iter()
        .filter(|b| !is_hat_root(&rs, b))
        .all(|b| !xi.inner(b).is_negative()))
}

pub fn from_simple_coords(rs: &RootSystem, c: &[i64]) -> Weight {
    let parts: Vec<Weight> = c.iter().enumerate().map(|(i, &k)| rs.simple_root(i + 1).scale(k)).collect();
    weight_sum(rs.dim(), &parts)
}

/// Simple-root combination as text, e.g. `-α_1-3α_2+α_4+α_5`.
pub fn format_simple(c: &[i64]) -> String {
    let mut s = String::new();
    for (i, &k) in c.iter().enumerate() {
        if k == 0 {
            continue;
        }
        let sign = if k < 0 { "-" } else if s.is_empty() { "" } else { "+" };
        let mag = if k.abs() == 1 { String::new() } else { k.abs().to_string() };
        s.push_str(&format!("{sign}{mag}α_{}", i + 1));
    }
    if s.is_empty() {
        "0".into()
    } else {
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn labels(a: &GradedAlgebra, q: usize) -> Vec<String> {
        hasse_diagram(a, q).unwrap().into_iter().map(|e| e.label).collect()
    }

    #[test]
    fn low_hasse_diagrams() {
        for n in 2..=3 {
            let a = GradedAlgebra::new(n).unwrap();
            assert_eq!(labels(&a, 0), vec!["σ_e"]);
            assert_eq!(labels(&a, 1), vec!["σ_2"]);
            assert_eq!(labels(&a, 3), vec!["σ_231", "σ_234"]);
        }
    }

    #[test]
    fn identity_entry_is_theta() {
        let a = GradedAlgebra::new(2).unwrap();
        let e = &hasse_diagram(&a, 0).unwrap()[0];
        assert_eq!(e.xi, vec![1; 5]);
        assert_eq!(e.p, 0);
        assert_eq!(e.dim, 8);
    }

    #[test]
    fn sigma_2_lands_in_p0() {
        for n in 2..=4 {
            let a = GradedAlgebra::new(n).unwrap();
            let e = hasse_diagram(&a, 1).unwrap();
            assert_eq!(e.len(), 1);
            assert_eq!(e[0].p, 0);
        }
    }

    #[test]
    fn degree_three_weights() {
        for n in 2..=4 {
            let a = GradedAlgebra::new(n).unwrap();
            let l = a.rank();
            let e = hasse_diagram(&a, 3).unwrap();
            let s231 = &e[0];
            let s234 = &e[1];
            let mut xi = vec![0i64; l];
            xi[0] = -1;
            xi[1] = -3;
            for c in xi.iter_mut().skip(3) {
                *c = 1;
            }
            assert_eq!(s231.xi, xi);
            let mut xi = vec![0i64; l];
            xi[0] = 1;
            xi[1] = -2;
            xi[2] = -1;
            for c in xi.iter_mut().skip(4) {
                *c = 1;
            }
            assert_eq!(s234.xi, xi);
            assert_eq!((s231.p, s234.p), (1, 0));
            let mut w = vec![0u32; l];
            w[0] = 1;
            w[2] += 1;
            w[l - 2] += 1;
            w[l - 1] += 2;
            assert_eq!(s231.omega, w);
            let mut w = vec![0u32; l];
            w[0] = 4;
            w[2] += 1;
            w[l - 3] += 1;
            assert_eq!(s234.omega, w);
        }
    }

    #[test]
    fn entries_satisfy_kostant_invariants() {
        for n in 2..=3 {
            let a = GradedAlgebra::new(n).unwrap();
            for q in 0..=3 {
                for e in hasse_diagram(&a, q).unwrap() {
                    assert_eq!(e.inversions.len(), q);
                    assert!(e.inversions.iter().all(|b| b[1] != 0));
                    assert!(norm_identity_holds(&a, &e).unwrap());
                    assert!(is_levi_dominant(&a, &e).unwrap());
                }
            }
        }
    }

    #[test]
    fn formatting() {
        assert_eq!(format_simple(&[-1, -3, 0, 1, 1]), "-α_1-3α_2+α_4+α_5");
        assert_eq!(omega_label(&[1, 0, 1, 1, 2]), "ω_1+ω_3+ω_4+2ω_5");
    }
}
