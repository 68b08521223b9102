//! Long exact sequence of the pair `(g̃, W)` in fixed total degree `p + q`:
//!
//! `.. -> H^{p,q-1}(g̃,W) -ι-> H^{p,q}(g̃) -r-> H^{p,q}(g̃,W) -δ-> H^{p-1,q}(g̃,W) -> ..`
//!
//! The groups on either side of `ι` are both relative groups; the one feeding
//! `ι` enters through `H^{p,q}(g̃, W⊥) ≅ H^{p,q-1}(g̃,W)`.
//!
//! `r` drops monomials containing ρ*. `ι` is the inverse of
//! `φ(c) = (-1)^q (ι_ρ c)|_W`, so `ι(X ⊗ w*_I) = -X ⊗ w*_I ∧ ρ*`. `δ` lifts a
//! relative cocycle by zero, applies the absolute differential (the result
//! only has ρ* monomials) and applies `φ`.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::Serialize;

use super::{sparse_add, Classes, Complex, Spencer};
use crate::error::Error;
use crate::exactla::{ExactMatrix, Rational};

/// Largest cochain degree a node may need.
pub const LES_MAX_Q: usize = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum NodeKind {
    /// `H^{p,q}(g̃, W⊥) ≅ H^{p,q-1}(g̃,W)`
    Perp,
    Absolute,
    Relative,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum MapKind {
    Inclusion,
    Restriction,
    Connecting,
}

#[derive(Clone, Debug, Serialize)]
pub struct Node {
    pub kind: NodeKind,
    pub p: i32,
    pub q: i32,
    pub label: String,
    pub dim: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct MapInfo {
    pub kind: MapKind,
    pub from: usize,
    pub to: usize,
    pub rank: usize,
    pub injective: bool,
    pub surjective: bool,
    #[serde(skip)]
    pub matrix: ExactMatrix,
}

#[derive(Clone, Debug, Serialize)]
pub struct ExactnessCheck {
    pub node: usize,
    pub composite_zero: bool,
    pub rank_in: usize,
    pub rank_out: usize,
    pub dim: usize,
    pub exact: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct LesSegment {
    pub n: usize,
    pub total_degree: i32,
    pub nodes: Vec<Node>,
    pub maps: Vec<MapInfo>,
    pub checks: Vec<ExactnessCheck>,
    pub truncated: bool,
}

impl LesSegment {
    pub fn is_exact(&self) -> bool {
        self.checks.iter().all(|c| c.exact)
    }

    pub fn map_between(&self, from: &str, to: &str) -> Option<&MapInfo> {
        self.maps
            .iter()
            .find(|m| self.nodes[m.from].label == from && self.nodes[m.to].label == to)
    }
}

fn node_label(kind: NodeKind, p: i32, q: i32) -> String {
    match kind {
        NodeKind::Perp => format!("H^{{{},{}}}(g̃,W)", p, q - 1),
        NodeKind::Absolute => format!("H^{{{p},{q}}}(g̃)"),
        NodeKind::Relative => format!("H^{{{p},{q}}}(g̃,W)"),
    }
}

/// Cochain degree (in its own complex) that a node lives in.
fn cochain_q(kind: NodeKind, q: i32) -> i32 {
    match kind {
        NodeKind::Perp => q - 1,
        _ => q,
    }
}

fn node_classes(s: &Spencer, kind: NodeKind, p: i32, q: i32) -> Result<Option<Classes>, Error> {
    let cq = cochain_q(kind, q);
    if cq < 0 || !(0..=2).contains(&p) {
        return Ok(None);
    }
    let complex = match kind {
        NodeKind::Absolute => Complex::Absolute,
        _ => Complex::Relative,
    };
    Ok(Some(s.cohomology_classes(p, cq as usize, complex)?))
}

type Vector = BTreeMap<usize, Rational>;

fn apply_map(s: &Spencer, kind: MapKind, src: &Classes, tgt: &Classes, z: &Vector) -> Result<Vector, Error> {
    let rho_bit = 1u64 << s.algebra().rho_index();
    let mut out = Vector::new();
    match kind {
        MapKind::Inclusion => {
            for (&i, x) in z {
                let (a, mask) = src.space.basis()[i];
                let t = tgt
                    .space
                    .index_of(a, mask | rho_bit)
                    .ok_or_else(|| Error::Consistency("ι target missing".into()))?;
                sparse_add(&mut out, t, &-x.clone());
            }
        }
        MapKind::Restriction => {
            for (&i, x) in z {
                let (a, mask) = src.space.basis()[i];
                if mask & rho_bit != 0 {
                    continue;
                }
                let t = tgt
                    .space
                    .index_of(a, mask)
                    .ok_or_else(|| Error::Consistency("restriction target missing".into()))?;
                sparse_add(&mut out, t, x);
            }
        }
        MapKind::Connecting => {
            let (p, q) = (src.space.p, src.space.q);
            let abs_src = s.space(p, q, Complex::Absolute);
            let mut lift = Vector::new();
            for (&i, x) in z {
                let (a, mask) = src.space.basis()[i];
                lift.insert(abs_src.index_of(a, mask).expect("relative monomials are absolute"), x.clone());
            }
            let d = s.differential(p, q, Complex::Absolute);
            for (i, x) in d.apply(&lift) {
                let (a, mask) = d.target.basis()[i];
                if mask & rho_bit == 0 {
                    return Err(Error::Consistency("∂ of a lifted relative cocycle has a ρ-free monomial".into()));
                }
                let t = tgt
                    .space
                    .index_of(a, mask & !rho_bit)
                    .ok_or_else(|| Error::Consistency("φ target missing".into()))?;
                sparse_add(&mut out, t, &-x);
            }
        }
    }
    Ok(out)
}

fn map_matrix(s: &Spencer, kind: MapKind, src: Option<&Classes>, tgt: Option<&Classes>) -> Result<ExactMatrix, Error> {
    let (Some(src), Some(tgt)) = (src, tgt) else {
        return Ok(ExactMatrix::zeros(tgt.map_or(0, |c| c.dim()), src.map_or(0, |c| c.dim())));
    };
    let mut m = ExactMatrix::zeros(tgt.dim(), src.dim());
    for (c, z) in src.representatives().iter().enumerate() {
        let img = apply_map(s, kind, src, tgt, z)?;
        if kind == MapKind::Connecting || kind == MapKind::Restriction || kind == MapKind::Inclusion {
            // the image must be a cocycle of the target complex
            let d = s.differential(tgt.space.p, tgt.space.q, tgt.space.kind);
            if !d.apply(&img).is_empty() {
                return Err(Error::Consistency(format!("{kind:?} image is not a cocycle")));
            }
        }
        for (r, x) in tgt.class_of(&img).into_iter().enumerate() {
            if !x.is_zero() {
                m.set(r, c, x);
            }
        }
    }
    Ok(m)
}

/// Segment of the long exact sequence in total degree `total`, from
/// `H^{3,total-3}(g̃,W) = 0` down to `H^{-1,*}(W) = 0`, truncated before the
/// first node needing cochain degree above [`LES_MAX_Q`].
pub fn les_segment(s: &Spencer, total: i32) -> Result<LesSegment, Error> {
    if total < 0 {
        return Err(Error::Bidegree(format!("total degree {total} is negative")));
    }
    let mut spec = vec![(NodeKind::Relative, 3, total - 3)];
    for p in (0..=2).rev() {
        for kind in [NodeKind::Perp, NodeKind::Absolute, NodeKind::Relative] {
            spec.push((kind, p, total - p));
        }
    }
    spec.push((NodeKind::Perp, -1, total + 1));
    let mut truncated = false;
    if let Some(cut) = spec.iter().position(|&(k, p, q)| (0..=2).contains(&p) && cochain_q(k, q) > LES_MAX_Q as i32) {
        spec.truncate(cut);
        truncated = true;
    }

    let mut nodes = Vec::new();
    let mut classes = Vec::new();
    for &(kind, p, q) in &spec {
        let c = node_classes(s, kind, p, q)?;
        nodes.push(Node { kind, p, q, label: node_label(kind, p, q), dim: c.as_ref().map_or(0, |c| c.dim()) });
        classes.push(c);
    }

    let mut maps = Vec::new();
    for i in 0..nodes.len().saturating_sub(1) {
        let kind = match nodes[i].kind {
            NodeKind::Perp => MapKind::Inclusion,
            NodeKind::Absolute => MapKind::Restriction,
            NodeKind::Relative => MapKind::Connecting,
        };
        let m = map_matrix(s, kind, classes[i].as_ref(), classes[i + 1].as_ref())?;
        let rank = m.rank();
        maps.push(MapInfo {
            kind,
            from: i,
            to: i + 1,
            rank,
            injective: rank == nodes[i].dim,
            surjective: rank == nodes[i + 1].dim,
            matrix: m,
        });
    }

    let mut checks = Vec::new();
    for i in 1..nodes.len().saturating_sub(1) {
        let f = &maps[i - 1];
        let g = &maps[i];
        let composite_zero = g.matrix.mul(&f.matrix)?.is_zero();
        let dim = nodes[i].dim;
        checks.push(ExactnessCheck {
            node: i,
            composite_zero,
            rank_in: f.rank,
            rank_out: g.rank,
            dim,
            exact: composite_zero && f.rank + g.rank == dim,
        });
    }

    Ok(LesSegment { n: s.algebra().n(), total_degree: total, nodes, maps, checks, truncated })
}

/// `r : H^{1,2}(g̃) -> H^{1,2}(g̃,W)` as an explicit matrix on class bases.
pub fn restriction_matrix(s: &Spencer, p: i32, q: usize) -> Result<ExactMatrix, Error> {
    let a = s.cohomology_classes(p, q, Complex::Absolute)?;
    let r = s.cohomology_classes(p, q, Complex::Relative)?;
    map_matrix(s, MapKind::Restriction, Some(&a), Some(&r))
}

/// Checks that `φ^{-1}` intertwines the relative and absolute differentials:
/// `∂_abs(ι c) = ι(∂_rel c)` on every basis cochain of `C^{p,q}(g̃,W)`.
pub fn check_phi_chain_map(s: &Spencer, p: i32, q: usize) -> Result<bool, Error> {
    let rho_bit = 1u64 << s.algebra().rho_index();
    let rel = s.differential(p, q, Complex::Relative);
    let abs_src = s.space(p, q + 1, Complex::Absolute);
    let abs = s.differential(p, q + 1, Complex::Absolute);
    for i in 0..rel.source.dim() {
        let (a, mask) = rel.source.basis()[i];
        let mut lhs_in = Vector::new();
        lhs_in.insert(abs_src.index_of(a, mask | rho_bit).unwrap(), -Rational::one());
        let lhs = abs.apply(&lhs_in);
        let mut rhs = Vector::new();
        for (t, x) in rel.column(i) {
            let (b, m2) = rel.target.basis()[*t];
            sparse_add(&mut rhs, abs.target.index_of(b, m2 | rho_bit).unwrap(), &-x.clone());
        }
        if lhs != rhs {
            return Ok(false);
        }
    }
    Ok(true)
}
