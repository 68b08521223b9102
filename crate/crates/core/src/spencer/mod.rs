//! Spencer cochains `C^{p,q} = g^{p-1} ⊗ Λ^q B*` with `B = V` (absolute)
//! or `B = W` (relative), and the differential
//! `∂c(w_1..w_{q+1}) = Σ_i (-1)^i [c(..ŵ_i..), w_i]`.
//!
//! A basis cochain is a pair (coefficient basis index, increasing subset of
//! `B`-basis indices) and takes the coefficient value on the increasing
//! tuple of its subset. Subsets are bitmasks over the `V` basis, so the
//! relative space is literally the span of the masks avoiding ρ.
//!
//! Every basis cochain is a weight vector for the torus of the stabilizer
//! of `W`; all computations run block by block.

pub mod les;

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::decomp::{Character, SWeight};
use crate::error::Error;
use crate::exactla::{ExactMatrix, Rational, Subquotient};
use crate::gla::{commutator, Degree, GradedAlgebra, Mat, SparseVec, TorusKey};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Complex {
    Absolute,
    Relative,
}

impl Complex {
    pub fn label(self) -> &'static str {
        match self {
            Complex::Absolute => "g̃",
            Complex::Relative => "g̃,W",
        }
    }
}

/// Largest cochain degree `q` accepted by the cohomology entry points.
pub const MAX_Q: usize = 8;

pub fn coefficient_degree(p: i32) -> Option<Degree> {
    Degree::from_int(p - 1)
}

pub fn sparse_add(acc: &mut BTreeMap<usize, Rational>, i: usize, x: &Rational) {
    let e = acc.entry(i).or_insert_with(Rational::zero);
    *e += x;
    if e.is_zero() {
        acc.remove(&i);
    }
}

fn subsets_of(items: &[usize], k: usize) -> Vec<u64> {
    fn go(items: &[usize], k: usize, start: usize, mask: u64, out: &mut Vec<u64>) {
        if k == 0 {
            out.push(mask);
            return;
        }
        for i in start..items.len() {
            if items.len() - i < k {
                break;
            }
            go(items, k - 1, i + 1, mask | (1u64 << items[i]), out);
        }
    }
    let mut out = Vec::new();
    go(items, k, 0, 0, &mut out);
    out
}

#[derive(Debug)]
pub struct CochainSpace {
    pub p: i32,
    pub q: usize,
    pub kind: Complex,
    coeff: Option<Degree>,
    basis: Vec<(usize, u64)>,
    index: HashMap<(usize, u64), usize>,
    keys: Vec<TorusKey>,
    blocks: BTreeMap<TorusKey, Vec<usize>>,
    local: Vec<usize>,
}

impl CochainSpace {
    pub fn new(a: &GradedAlgebra, p: i32, q: usize, kind: Complex) -> Self {
        let coeff = coefficient_degree(p);
        let base: Vec<usize> = match kind {
            Complex::Absolute => (0..a.dim_v()).collect(),
            Complex::Relative => (0..a.dim_w()).collect(),
        };
        let mut basis = Vec::new();
        if let Some(d) = coeff {
            if q <= base.len() {
                let masks = subsets_of(&base, q);
                for x in 0..a.dim(d) {
                    for &m in &masks {
                        basis.push((x, m));
                    }
                }
            }
        }
        let vkeys = a.keys(Degree::Minus1);
        let keys: Vec<TorusKey> = basis
            .iter()
            .map(|&(x, m)| {
                let mut k = a.keys(coeff.unwrap())[x].clone();
                for (j, vk) in vkeys.iter().enumerate() {
                    if m >> j & 1 == 1 {
                        for (t, s) in k.iter_mut().zip(vk) {
                            *t -= s;
                        }
                    }
                }
                k
            })
            .collect();
        let mut blocks: BTreeMap<TorusKey, Vec<usize>> = BTreeMap::new();
        let mut local = vec![0; basis.len()];
        for (i, k) in keys.iter().enumerate() {
            let b = blocks.entry(k.clone()).or_default();
            local[i] = b.len();
            b.push(i);
        }
        let index = basis.iter().enumerate().map(|(i, &b)| (b, i)).collect();
        CochainSpace { p, q, kind, coeff, basis, index, keys, blocks, local }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn coefficient_degree(&self) -> Option<Degree> {
        self.coeff
    }

    pub fn basis(&self) -> &[(usize, u64)] {
        &self.basis
    }

    pub fn index_of(&self, x: usize, mask: u64) -> Option<usize> {
        self.index.get(&(x, mask)).copied()
    }

    pub fn key(&self, i: usize) -> &TorusKey {
        &self.keys[i]
    }

    pub fn blocks(&self) -> &BTreeMap<TorusKey, Vec<usize>> {
        &self.blocks
    }

    pub fn block(&self, k: &TorusKey) -> &[usize] {
        self.blocks.get(k).map_or(&[], |v| v.as_slice())
    }

    /// Position of a global index inside its weight block.
    pub fn local_index(&self, i: usize) -> usize {
        self.local[i]
    }

    pub fn character(&self, m: usize) -> Character {
        let mut c = Character::new(m);
        for (k, idx) in &self.blocks {
            c.add_weight(SWeight::from_key(k), idx.len() as i64);
        }
        c
    }

    /// Splits a global sparse vector into its blocks (dense, block-local).
    pub fn split(&self, v: &BTreeMap<usize, Rational>) -> BTreeMap<TorusKey, Vec<Rational>> {
        let mut out: BTreeMap<TorusKey, Vec<Rational>> = BTreeMap::new();
        for (&i, x) in v {
            let k = &self.keys[i];
            let b = out
                .entry(k.clone())
                .or_insert_with(|| vec![Rational::zero(); self.blocks[k].len()]);
            b[self.local[i]] = x.clone();
        }
        out
    }

    /// Global sparse vector of a dense block-local vector.
    pub fn unsplit(&self, k: &TorusKey, v: &[Rational]) -> BTreeMap<usize, Rational> {
        self.block(k)
            .iter()
            .zip(v)
            .filter(|(_, x)| !x.is_zero())
            .map(|(&i, x)| (i, x.clone()))
            .collect()
    }
}

/// `∂ : C^{p,q} -> C^{p-1,q+1}` as sparse columns.
#[derive(Debug)]
pub struct Differential {
    pub source: Arc<CochainSpace>,
    pub target: Arc<CochainSpace>,
    columns: Vec<SparseVec>,
}

impl Differential {
    pub fn new(a: &GradedAlgebra, source: Arc<CochainSpace>, target: Arc<CochainSpace>) -> Self {
        let base_len = match source.kind {
            Complex::Absolute => a.dim_v(),
            Complex::Relative => a.dim_w(),
        };
        let columns = source
            .basis()
            .iter()
            .map(|&(x, mask)| {
                let mut acc = BTreeMap::new();
                let Some(d) = source.coefficient_degree() else { return vec![] };
                if target.coefficient_degree().is_none() {
                    return vec![];
                }
                for j in 0..base_len {
                    if mask >> j & 1 == 1 {
                        continue;
                    }
                    let pos = (mask & ((1u64 << j) - 1)).count_ones() + 1;
                    let sign = if pos.is_multiple_of(2) { Rational::from_integer(1.into()) } else { Rational::from_integer((-1).into()) };
                    let m2 = mask | (1u64 << j);
                    for (b, c) in a.bracket_with_v(d, x, j) {
                        let t = target.index_of(*b, m2).expect("target basis covers the image");
                        sparse_add(&mut acc, t, &(c * &sign));
                    }
                }
                acc.into_iter().collect()
            })
            .collect();
        Differential { source, target, columns }
    }

    pub fn column(&self, i: usize) -> &SparseVec {
        &self.columns[i]
    }

    pub fn apply(&self, v: &BTreeMap<usize, Rational>) -> BTreeMap<usize, Rational> {
        let mut out = BTreeMap::new();
        for (&i, x) in v {
            for (t, c) in &self.columns[i] {
                sparse_add(&mut out, *t, &(c * x));
            }
        }
        out
    }

    /// Dense block of the differential at a torus weight.
    pub fn block(&self, k: &TorusKey) -> ExactMatrix {
        let src = self.source.block(k);
        let tgt = self.target.block(k);
        let mut m = ExactMatrix::zeros(tgt.len(), src.len());
        for (c, &i) in src.iter().enumerate() {
            for (t, x) in &self.columns[i] {
                debug_assert_eq!(self.target.key(*t), k, "differential preserves weights");
                m.set(self.target.local_index(*t), c, x.clone());
            }
        }
        m
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(|c| c.len()).sum()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CohomologyReport {
    pub n: usize,
    pub p: i32,
    pub q: usize,
    pub kind: Complex,
    pub dim_cochains: usize,
    pub rank_in: usize,
    pub rank_out: usize,
    pub dim: usize,
    #[serde(skip)]
    pub character: Character,
    #[serde(skip)]
    pub boundary_character: Character,
}

type SpaceKey = (i32, usize, Complex);

/// Spencer complexes of one algebra, with cached spaces, differentials and
/// block ranks.
pub struct Spencer {
    alg: Arc<GradedAlgebra>,
    spaces: Mutex<HashMap<SpaceKey, Arc<CochainSpace>>>,
    diffs: Mutex<HashMap<SpaceKey, Arc<Differential>>>,
    ranks: Mutex<HashMap<SpaceKey, Arc<BTreeMap<TorusKey, usize>>>>,
}

impl Spencer {
    pub fn new(n: usize) -> Result<Self, Error> {
        Ok(Self::from_algebra(Arc::new(GradedAlgebra::new(n)?)))
    }

    pub fn from_algebra(alg: Arc<GradedAlgebra>) -> Self {
        Spencer {
            alg,
            spaces: Mutex::new(HashMap::new()),
            diffs: Mutex::new(HashMap::new()),
            ranks: Mutex::new(HashMap::new()),
        }
    }

    pub fn algebra(&self) -> &GradedAlgebra {
        &self.alg
    }

    pub fn algebra_arc(&self) -> Arc<GradedAlgebra> {
        self.alg.clone()
    }

    pub fn space(&self, p: i32, q: usize, kind: Complex) -> Arc<CochainSpace> {
        let key = (p, q, kind);
        if let Some(s) = self.spaces.lock().unwrap().get(&key) {
            return s.clone();
        }
        let s = Arc::new(CochainSpace::new(&self.alg, p, q, kind));
        self.spaces.lock().unwrap().entry(key).or_insert(s).clone()
    }

    /// `∂` out of `C^{p,q}`.
    pub fn differential(&self, p: i32, q: usize, kind: Complex) -> Arc<Differential> {
        let key = (p, q, kind);
        if let Some(d) = self.diffs.lock().unwrap().get(&key) {
            return d.clone();
        }
        let src = self.space(p, q, kind);
        let tgt = self.space(p - 1, q + 1, kind);
        let d = Arc::new(Differential::new(&self.alg, src, tgt));
        self.diffs.lock().unwrap().entry(key).or_insert(d).clone()
    }

    /// Rank of `∂` out of `C^{p,q}`, per weight block.
    pub fn block_ranks(&self, p: i32, q: usize, kind: Complex) -> Arc<BTreeMap<TorusKey, usize>> {
        let key = (p, q, kind);
        if let Some(r) = self.ranks.lock().unwrap().get(&key) {
            return r.clone();
        }
        let d = self.differential(p, q, kind);
        let keys: Vec<&TorusKey> = d.source.blocks().keys().collect();
        let ranks: Vec<(TorusKey, usize)> = keys
            .par_iter()
            .map(|k| {
                let r = if d.target.block(k).is_empty() { 0 } else { d.block(k).rank() };
                ((*k).clone(), r)
            })
            .collect();
        let r = Arc::new(ranks.into_iter().collect::<BTreeMap<_, _>>());
        self.ranks.lock().unwrap().entry(key).or_insert(r).clone()
    }

    fn check_bidegree(&self, q: usize) -> Result<(), Error> {
        if q > MAX_Q {
            return Err(Error::Bidegree(format!("q = {q} exceeds the supported maximum {MAX_Q}")));
        }
        Ok(())
    }

    pub fn cohomology(&self, p: i32, q: usize, kind: Complex) -> Result<CohomologyReport, Error> {
        self.check_bidegree(q)?;
        let m = self.alg.m();
        let space = self.space(p, q, kind);
        let out = self.block_ranks(p, q, kind);
        let inc = if q == 0 { Arc::new(BTreeMap::new()) } else { self.block_ranks(p + 1, q - 1, kind) };
        let mut character = Character::new(m);
        let mut boundary_character = Character::new(m);
        let (mut rank_in, mut rank_out, mut dim) = (0, 0, 0);
        for (k, idx) in space.blocks() {
            let ro = out.get(k).copied().unwrap_or(0);
            let ri = inc.get(k).copied().unwrap_or(0);
            let h = idx.len() - ro - ri;
            rank_in += ri;
            rank_out += ro;
            dim += h;
            let w = SWeight::from_key(k);
            character.add_weight(w.clone(), h as i64);
            boundary_character.add_weight(w, ri as i64);
        }
        Ok(CohomologyReport {
            n: self.alg.n(),
            p,
            q,
            kind,
            dim_cochains: space.dim(),
            rank_in,
            rank_out,
            dim,
            character,
            boundary_character,
        })
    }

    /// Per-block subquotients `ker ∂ / im ∂` at `C^{p,q}`; blocks with zero
    /// cohomology are omitted.
    pub fn cohomology_classes(&self, p: i32, q: usize, kind: Complex) -> Result<Classes, Error> {
        self.check_bidegree(q)?;
        let space = self.space(p, q, kind);
        let out = self.differential(p, q, kind);
        let inc = if q == 0 { None } else { Some(self.differential(p + 1, q - 1, kind)) };
        let keys: Vec<&TorusKey> = space.blocks().keys().collect();
        let blocks: Vec<Result<(TorusKey, Subquotient), Error>> = keys
            .par_iter()
            .map(|k| {
                let o = out.block(k);
                let i = match &inc {
                    Some(d) => d.block(k),
                    None => ExactMatrix::zeros(space.block(k).len(), 0),
                };
                Ok(((*k).clone(), Subquotient::new(&o, &i)?))
            })
            .collect();
        let mut map = BTreeMap::new();
        for b in blocks {
            let (k, sq) = b?;
            if sq.dim() > 0 {
                map.insert(k, sq);
            }
        }
        Ok(Classes { space, blocks: map })
    }
}

/// Action of a `W`-preserving block-diagonal matrix `x ∈ gl(N)` on
/// cochains: `(x·c)(w..) = [x, c(w..)] - Σ_t c(.., [x, w_t], ..)`.
pub struct CochainAction {
    space: Arc<CochainSpace>,
    // coefficient action, sparse columns
    coeff: Vec<SparseVec>,
    // rows of ad x on the base: dual[b] = [(k, A_{bk})]
    dual: Vec<SparseVec>,
}

impl CochainAction {
    pub fn new(a: &GradedAlgebra, x: &Mat, space: Arc<CochainSpace>) -> Result<Self, Error> {
        let coeff = match space.coefficient_degree() {
            Some(d) => a
                .basis(d)
                .iter()
                .map(|b| a.coords(d, &commutator(x, b)))
                .collect::<Result<Vec<_>, _>>()?,
            None => vec![],
        };
        let base_len = match space.kind {
            Complex::Absolute => a.dim_v(),
            Complex::Relative => a.dim_w(),
        };
        let mut dual: Vec<SparseVec> = vec![vec![]; base_len];
        for (k, v) in a.basis(Degree::Minus1).iter().take(base_len).enumerate() {
            for (b, c) in a.coords(Degree::Minus1, &commutator(x, v))? {
                if b >= base_len {
                    return Err(Error::Consistency("matrix does not preserve W".into()));
                }
                dual[b].push((k, c));
            }
        }
        Ok(CochainAction { space, coeff, dual })
    }

    pub fn apply(&self, v: &BTreeMap<usize, Rational>) -> BTreeMap<usize, Rational> {
        let mut out = BTreeMap::new();
        for (&g, x) in v {
            let (a, mask) = self.space.basis()[g];
            for (b, c) in &self.coeff[a] {
                let t = self.space.index_of(*b, mask).unwrap();
                sparse_add(&mut out, t, &(c * x));
            }
            let mut rest = mask;
            while rest != 0 {
                let i = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                let others = mask & !(1u64 << i);
                let t_pos = (others & ((1u64 << i) - 1)).count_ones() as i32;
                // x·w*_i = -Σ_k A_{ik} w*_k
                for (k, c) in &self.dual[i] {
                    if others >> k & 1 == 1 {
                        continue;
                    }
                    let s_pos = (others & ((1u64 << k) - 1)).count_ones() as i32;
                    let sign = if (s_pos - t_pos).rem_euclid(2) == 0 { -Rational::one() } else { Rational::one() };
                    let t = self.space.index_of(a, others | (1u64 << k)).unwrap();
                    sparse_add(&mut out, t, &(c * x * sign));
                }
            }
        }
        out
    }
}

/// Cohomology of one bidegree with explicit representatives, block by block.
pub struct Classes {
    pub space: Arc<CochainSpace>,
    pub blocks: BTreeMap<TorusKey, Subquotient>,
}

impl Classes {
    pub fn dim(&self) -> usize {
        self.blocks.values().map(|b| b.dim()).sum()
    }

    /// Global class index offsets, in block order.
    pub fn offsets(&self) -> BTreeMap<TorusKey, usize> {
        let mut off = 0;
        let mut out = BTreeMap::new();
        for (k, b) in &self.blocks {
            out.insert(k.clone(), off);
            off += b.dim();
        }
        out
    }

    /// Representatives as global sparse vectors, in class order.
    pub fn representatives(&self) -> Vec<BTreeMap<usize, Rational>> {
        let mut out = Vec::new();
        for (k, b) in &self.blocks {
            for i in 0..b.dim() {
                out.push(self.space.unsplit(k, b.representative(i)));
            }
        }
        out
    }

    /// Class coordinates of a cocycle given as a global sparse vector.
    pub fn class_of(&self, z: &BTreeMap<usize, Rational>) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.dim()];
        let off = self.offsets();
        for (k, v) in self.space.split(z) {
            if let Some(b) = self.blocks.get(&k) {
                let o = off[&k];
                for (i, x) in b.class_of(&v).into_iter().enumerate() {
                    out[o + i] = x;
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cochain_dimensions() {
        let s = Spencer::new(2).unwrap();
        assert_eq!(s.space(0, 2, Complex::Relative).dim(), 8 * 21);
        assert_eq!(s.space(1, 2, Complex::Absolute).dim(), 19 * 28);
        assert_eq!(s.space(3, 1, Complex::Absolute).dim(), 0);
        assert_eq!(s.space(-1, 1, Complex::Absolute).dim(), 0);
        assert_eq!(s.space(1, 9, Complex::Absolute).dim(), 0);
    }

    #[test]
    fn differential_squares_to_zero_exhaustively_n2() {
        let s = Spencer::new(2).unwrap();
        for kind in [Complex::Absolute, Complex::Relative] {
            for p in 0..=3 {
                for q in 0..=4 {
                    let d1 = s.differential(p, q, kind);
                    let d2 = s.differential(p - 1, q + 1, kind);
                    for i in 0..d1.source.dim() {
                        let v: BTreeMap<usize, Rational> = d1.column(i).iter().cloned().collect();
                        assert!(d2.apply(&v).is_empty(), "∂² ≠ 0 at ({p},{q}) {kind:?} column {i}");
                    }
                }
            }
        }
    }

    #[test]
    fn low_degree_groups_n2() {
        let s = Spencer::new(2).unwrap();
        let h = |p, q, k| s.cohomology(p, q, k).unwrap().dim;
        // H^{0,0} = V, H^{0,1} = gl(V)/g̃
        assert_eq!(h(0, 0, Complex::Absolute), 8);
        assert_eq!(h(0, 1, Complex::Absolute), 64 - 19);
        assert_eq!(h(1, 0, Complex::Absolute), 0);
        assert_eq!(h(1, 1, Complex::Absolute), 0);
        assert_eq!(h(2, 1, Complex::Absolute), 0);
    }

    #[test]
    fn levi_action_commutes_with_the_differential() {
        let s = Spencer::new(2).unwrap();
        let a = s.algebra();
        let gens = a.levi_generators();
        for kind in [Complex::Absolute, Complex::Relative] {
            let d = s.differential(1, 1, kind);
            for x in &gens {
                let act_src = CochainAction::new(a, x, d.source.clone()).unwrap();
                let act_tgt = CochainAction::new(a, x, d.target.clone()).unwrap();
                for i in (0..d.source.dim()).step_by(7) {
                    let e: BTreeMap<usize, Rational> = [(i, Rational::one())].into();
                    assert_eq!(d.apply(&act_src.apply(&e)), act_tgt.apply(&d.apply(&e)));
                }
            }
        }
    }

    #[test]
    fn classes_match_rank_dimension() {
        let s = Spencer::new(2).unwrap();
        for (p, q) in [(0, 2), (1, 2), (0, 1)] {
            for kind in [Complex::Absolute, Complex::Relative] {
                let c = s.cohomology_classes(p, q, kind).unwrap();
                assert_eq!(c.dim(), s.cohomology(p, q, kind).unwrap().dim);
                for (i, r) in c.representatives().iter().enumerate() {
                    let mut e = vec![Rational::zero(); c.dim()];
                    e[i] = Rational::from_integer(1.into());
                    assert_eq!(c.class_of(r), e);
                }
            }
        }
    }
}
