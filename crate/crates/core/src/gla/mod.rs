//! `sl(N)`, `N = 2n+2`, realized by elementary matrices and graded by the
//! δ_2 coefficient with the sign that puts the subspace `W` in degree -1.
//!
//! Positions (0-based) split as `{0,1}` (the first `H` block), `2..N-2`
//! (the `E` rows) and `{N-2, N-1}` (the second `H` block). Degree -1 is the
//! lower-left block, degree 1 the upper-right block, degree 0 the block
//! diagonal.
//!
//! Basis of `V = g^{-1}`, in order:
//! * `e_{j,i}` for `j` an `E` row and `i ∈ {0,1}` (this is `U = EH`),
//! * `e_{N-2,0} - e_{N-1,1}`, `e_{N-2,1}`, `e_{N-1,0}` (this is `U⊥ = S²H`),
//! * `ρ = e_{N-2,0} + e_{N-1,1}` (spanning `W⊥`).
//!
//! `W` is spanned by all but the last vector.

pub mod quaternion;

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::Error;
use crate::exactla::{int, rat, ExactMatrix, Rational};

/// Sparse matrix in `gl(N)`.
pub type Mat = BTreeMap<(usize, usize), Rational>;

/// Sparse vector in some basis.
pub type SparseVec = Vec<(usize, Rational)>;

pub fn unit(i: usize, j: usize) -> Mat {
    let mut m = Mat::new();
    m.insert((i, j), Rational::one());
    m
}

pub fn mat_add(a: &Mat, b: &Mat, s: &Rational) -> Mat {
    let mut out = a.clone();
    for (k, v) in b {
        let e = out.entry(*k).or_insert_with(Rational::zero);
        *e += v * s;
    }
    out.retain(|_, v| !v.is_zero());
    out
}

pub fn mat_mul(a: &Mat, b: &Mat) -> Mat {
    let mut out = Mat::new();
    for (&(i, k), x) in a {
        for (&(k2, j), y) in b.range((k, 0)..(k + 1, 0)) {
            debug_assert_eq!(k, k2);
            let e = out.entry((i, j)).or_insert_with(Rational::zero);
            *e += x * y;
        }
    }
    out.retain(|_, v| !v.is_zero());
    out
}

pub fn commutator(a: &Mat, b: &Mat) -> Mat {
    mat_add(&mat_mul(a, b), &mat_mul(b, a), &-Rational::one())
}

pub fn mat_scale(a: &Mat, s: &Rational) -> Mat {
    let mut out: Mat = a.iter().map(|(k, v)| (*k, v * s)).collect();
    out.retain(|_, v| !v.is_zero());
    out
}

/// Weight of a torus-weight vector, keyed for the torus of the stabilizer
/// of `W`: coordinates `(μ_0+μ_{N-2}, μ_1+μ_{N-1}, μ_0+μ_1, μ_2, .., μ_{N-3})`.
pub type TorusKey = Vec<i32>;

/// Graded pieces, indexed as `deg + 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Degree {
    Minus1,
    Zero,
    Plus1,
}

impl Degree {
    pub fn from_int(d: i32) -> Option<Degree> {
        match d {
            -1 => Some(Degree::Minus1),
            0 => Some(Degree::Zero),
            1 => Some(Degree::Plus1),
            _ => None,
        }
    }

    pub fn as_int(self) -> i32 {
        match self {
            Degree::Minus1 => -1,
            Degree::Zero => 0,
            Degree::Plus1 => 1,
        }
    }

    fn idx(self) -> usize {
        (self.as_int() + 1) as usize
    }

    pub fn lower(self) -> Option<Degree> {
        Degree::from_int(self.as_int() - 1)
    }
}

#[derive(Clone, Debug)]
pub struct GradedAlgebra {
    n: usize,
    size: usize,
    basis: [Vec<Mat>; 3],
    names: [Vec<String>; 3],
    keys: [Vec<TorusKey>; 3],
    // [deg][a][j] = [X_a, v_j] in the basis of deg - 1
    v_brackets: [Vec<Vec<SparseVec>>; 3],
    off_index: BTreeMap<(usize, usize), usize>,
}

impl GradedAlgebra {
    pub fn new(n: usize) -> Result<Self, Error> {
        if n < 2 {
            return Err(Error::Unsupported(format!(
                "n = {n}: the quaternionic contact setting needs n >= 2 (for n = 1 the space U is zero)"
            )));
        }
        if n > 15 {
            return Err(Error::Unsupported(format!("n = {n} exceeds the supported range")));
        }
        let size = 2 * n + 2;
        let e_rows: Vec<usize> = (2..size - 2).collect();
        let (p, q) = (size - 2, size - 1);

        let mut vb = Vec::new();
        let mut vn = Vec::new();
        for &j in &e_rows {
            for i in 0..2 {
                vb.push(unit(j, i));
                vn.push(format!("e[{},{}]", j + 1, i + 1));
            }
        }
        vb.push(mat_add(&unit(p, 0), &unit(q, 1), &int(-1)));
        vn.push(format!("e[{},1]-e[{},2]", p + 1, q + 1));
        vb.push(unit(p, 1));
        vn.push(format!("e[{},2]", p + 1));
        vb.push(unit(q, 0));
        vn.push(format!("e[{},1]", q + 1));
        vb.push(mat_add(&unit(p, 0), &unit(q, 1), &int(1)));
        vn.push(format!("e[{},1]+e[{},2]", p + 1, q + 1));

        let mut g0 = Vec::new();
        let mut g0n = Vec::new();
        for k in 0..size - 1 {
            g0.push(mat_add(&unit(k, k), &unit(k + 1, k + 1), &int(-1)));
            g0n.push(format!("h[{}]", k + 1));
        }
        let mut off_index = BTreeMap::new();
        let block = |i: usize| usize::from(i >= 2);
        for i in 0..size {
            for j in 0..size {
                if i != j && block(i) == block(j) {
                    off_index.insert((i, j), g0.len());
                    g0.push(unit(i, j));
                    g0n.push(format!("e[{},{}]", i + 1, j + 1));
                }
            }
        }

        let mut g1 = Vec::new();
        let mut g1n = Vec::new();
        for i in 0..2 {
            for j in 2..size {
                g1.push(unit(i, j));
                g1n.push(format!("e[{},{}]", i + 1, j + 1));
            }
        }

        let mut alg = GradedAlgebra {
            n,
            size,
            basis: [vb, g0, g1],
            names: [vn, g0n, g1n],
            keys: [vec![], vec![], vec![]],
            v_brackets: [vec![], vec![], vec![]],
            off_index,
        };
        for d in [Degree::Minus1, Degree::Zero, Degree::Plus1] {
            let keys = alg.basis[d.idx()]
                .iter()
                .map(|m| alg.key_of(m).expect("basis vectors are weight vectors"))
                .collect();
            alg.keys[d.idx()] = keys;
        }
        for d in [Degree::Zero, Degree::Plus1] {
            let lower = d.lower().unwrap();
            let table: Vec<Vec<SparseVec>> = alg.basis[d.idx()]
                .iter()
                .map(|x| {
                    alg.basis[0]
                        .iter()
                        .map(|v| alg.coords(lower, &commutator(x, v)).expect("graded bracket"))
                        .collect()
                })
                .collect();
            alg.v_brackets[d.idx()] = table;
        }
        alg.v_brackets[0] = vec![vec![vec![]; alg.basis[0].len()]; alg.basis[0].len()];
        Ok(alg)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Matrix size `N = 2n+2`.
    pub fn size(&self) -> usize {
        self.size
    }

    /// Rank ℓ = 2n+1 of the root system.
    pub fn rank(&self) -> usize {
        self.size - 1
    }

    /// m = 2n-2, the size of the `E` block.
    pub fn m(&self) -> usize {
        2 * self.n - 2
    }

    pub fn dim(&self, d: Degree) -> usize {
        self.basis[d.idx()].len()
    }

    pub fn total_dim(&self) -> usize {
        self.size * self.size - 1
    }

    pub fn basis(&self, d: Degree) -> &[Mat] {
        &self.basis[d.idx()]
    }

    pub fn names(&self, d: Degree) -> &[String] {
        &self.names[d.idx()]
    }

    pub fn keys(&self, d: Degree) -> &[TorusKey] {
        &self.keys[d.idx()]
    }

    pub fn dim_v(&self) -> usize {
        4 * self.n
    }

    pub fn dim_w(&self) -> usize {
        4 * self.n - 1
    }

    pub fn dim_u(&self) -> usize {
        4 * self.n - 4
    }

    /// Index of ρ in the `V` basis.
    pub fn rho_index(&self) -> usize {
        4 * self.n - 1
    }

    /// Indices of the `U⊥ = S²H` part of the `V` basis.
    pub fn s2h_indices(&self) -> [usize; 3] {
        let b = 4 * self.n - 4;
        [b, b + 1, b + 2]
    }

    /// `[X_a, v_j]` for `X_a` in degree `d`, in the basis of degree `d-1`.
    pub fn bracket_with_v(&self, d: Degree, a: usize, j: usize) -> &SparseVec {
        &self.v_brackets[d.idx()][a][j]
    }

    /// Coordinates of a matrix lying in degree `d`.
    pub fn coords(&self, d: Degree, m: &Mat) -> Result<SparseVec, Error> {
        let size = self.size;
        let mut out: BTreeMap<usize, Rational> = BTreeMap::new();
        let mut push = |i: usize, x: Rational| {
            let e = out.entry(i).or_insert_with(Rational::zero);
            *e += x;
        };
        let bad = |i: usize, j: usize| Error::Consistency(format!("entry ({i},{j}) is not in degree {}", d.as_int()));
        match d {
            Degree::Minus1 => {
                let (p, q) = (size - 2, size - 1);
                let base = 4 * self.n - 4;
                for (&(i, j), x) in m {
                    if !(i >= 2 && j < 2) {
                        return Err(bad(i, j));
                    }
                    if i < p {
                        push((i - 2) * 2 + j, x.clone());
                    } else if (i, j) == (p, 0) {
                        push(base, x * rat(1, 2));
                        push(base + 3, x * rat(1, 2));
                    } else if (i, j) == (q, 1) {
                        push(base, x * rat(-1, 2));
                        push(base + 3, x * rat(1, 2));
                    } else if (i, j) == (p, 1) {
                        push(base + 1, x.clone());
                    } else {
                        push(base + 2, x.clone());
                    }
                }
            }
            Degree::Zero => {
                let mut diag = vec![Rational::zero(); size];
                for (&(i, j), x) in m {
                    if i == j {
                        diag[i] = x.clone();
                    } else {
                        let k = *self.off_index.get(&(i, j)).ok_or_else(|| bad(i, j))?;
                        push(k, x.clone());
                    }
                }
                let tr: Rational = diag.iter().sum();
                if !tr.is_zero() {
                    return Err(Error::Consistency("matrix is not traceless".into()));
                }
                let mut acc = Rational::zero();
                for (k, x) in diag.iter().take(size - 1).enumerate() {
                    acc += x;
                    if !acc.is_zero() {
                        push(k, acc.clone());
                    }
                }
            }
            Degree::Plus1 => {
                for (&(i, j), x) in m {
                    if !(i < 2 && j >= 2) {
                        return Err(bad(i, j));
                    }
                    push(i * (size - 2) + (j - 2), x.clone());
                }
            }
        }
        Ok(out.into_iter().filter(|(_, x)| !x.is_zero()).collect())
    }

    pub fn element(&self, d: Degree, v: &[(usize, Rational)]) -> Mat {
        let mut out = Mat::new();
        for (i, x) in v {
            out = mat_add(&out, &self.basis[d.idx()][*i], x);
        }
        out
    }

    /// Degree of a nonzero homogeneous matrix.
    pub fn degree_of(&self, m: &Mat) -> Option<Degree> {
        let mut deg = None;
        for (&(i, j), x) in m {
            if x.is_zero() {
                continue;
            }
            let d = match (i < 2, j < 2) {
                (true, false) => 1,
                (false, true) => -1,
                _ => 0,
            };
            match deg {
                None => deg = Some(d),
                Some(e) if e != d => return None,
                _ => {}
            }
        }
        deg.and_then(Degree::from_int)
    }

    /// Torus key of a weight vector, `None` if `m` mixes weights.
    pub fn key_of(&self, m: &Mat) -> Option<TorusKey> {
        let mut key: Option<TorusKey> = None;
        for (&(i, j), x) in m {
            if x.is_zero() {
                continue;
            }
            let mut mu = vec![0i32; self.size];
            mu[i] += 1;
            mu[j] -= 1;
            let k = self.key_of_weight(&mu);
            match &key {
                None => key = Some(k),
                Some(k0) if *k0 != k => return None,
                _ => {}
            }
        }
        Some(key.unwrap_or_else(|| vec![0; self.size - 1]))
    }

    pub fn key_of_weight(&self, mu: &[i32]) -> TorusKey {
        let s = self.size;
        let mut k = vec![mu[0] + mu[s - 2], mu[1] + mu[s - 1], mu[0] + mu[1]];
        k.extend_from_slice(&mu[2..s - 2]);
        k
    }

    /// Levi sl(2): (h, e, f) with h = H_{δ1} + H_{δℓ}.
    pub fn levi_sl2(&self) -> [Mat; 3] {
        let (p, q) = (self.size - 2, self.size - 1);
        let h = mat_add(
            &mat_add(&unit(0, 0), &unit(1, 1), &int(-1)),
            &mat_add(&unit(p, p), &unit(q, q), &int(-1)),
            &int(1),
        );
        let e = mat_add(&unit(0, 1), &unit(p, q), &int(1));
        let f = mat_add(&unit(1, 0), &unit(q, p), &int(1));
        [h, e, f]
    }

    /// Chevalley generators (h_k, e_k, f_k) of the Levi sl(2n-2) on the `E` rows.
    pub fn levi_slm_generators(&self) -> Vec<[Mat; 3]> {
        (2..self.size - 3)
            .map(|k| {
                [
                    mat_add(&unit(k, k), &unit(k + 1, k + 1), &int(-1)),
                    unit(k, k + 1),
                    unit(k + 1, k),
                ]
            })
            .collect()
    }

    /// Generators of the Levi subalgebra `s = sl(2) ⊕ sl(2n-2)`.
    pub fn levi_generators(&self) -> Vec<Mat> {
        let mut out: Vec<Mat> = self.levi_sl2().to_vec();
        for g in self.levi_slm_generators() {
            out.extend(g);
        }
        out
    }

    /// Positions of the `E` rows.
    pub fn e_positions(&self) -> std::ops::Range<usize> {
        2..self.size - 2
    }

    /// `ad X` on degree `d`, as sparse columns in the basis of degree `d`.
    /// `X` must lie in degree 0.
    pub fn ad_on(&self, x: &Mat, d: Degree) -> Result<Vec<SparseVec>, Error> {
        self.basis[d.idx()]
            .iter()
            .map(|b| self.coords(d, &commutator(x, b)))
            .collect()
    }

    /// Whether degree-0 `X` maps `W` into `W`.
    pub fn preserves_w(&self, x: &Mat) -> Result<bool, Error> {
        let rho = self.rho_index();
        for (j, col) in self.ad_on(x, Degree::Minus1)?.iter().enumerate() {
            if j == rho {
                continue;
            }
            if col.iter().any(|(i, c)| *i == rho && !c.is_zero()) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Dimension of `{X ∈ g^0 : [X, W] ⊆ W}`.
    pub fn stabilizer_of_w_dim(&self) -> Result<usize, Error> {
        let rho = self.rho_index();
        let g0 = self.dim(Degree::Zero);
        let w = self.dim_w();
        // rows: w_j, columns: X_a, entry: ρ-coordinate of [X_a, w_j]
        let mut m = ExactMatrix::zeros(w, g0);
        for a in 0..g0 {
            for j in 0..w {
                for (i, c) in self.bracket_with_v(Degree::Zero, a, j) {
                    if *i == rho {
                        m.set(j, a, c.clone());
                    }
                }
            }
        }
        Ok(g0 - m.rank())
    }

    /// Basis of all of `sl(N)`, degree by degree.
    pub fn full_basis(&self) -> Vec<(Degree, usize, &Mat)> {
        let mut out = Vec::new();
        for d in [Degree::Minus1, Degree::Zero, Degree::Plus1] {
            for (i, m) in self.basis(d).iter().enumerate() {
                out.push((d, i, m));
            }
        }
        out
    }
}

/// Sizes of the named subspaces and graded pieces.
#[derive(Clone, Debug, Serialize)]
pub struct SubspaceTable {
    pub n: usize,
    pub dim_sl: usize,
    pub dim_g_minus1: usize,
    pub dim_g0: usize,
    pub dim_g1: usize,
    pub dim_w: usize,
    pub dim_u: usize,
    pub dim_u_perp: usize,
    pub dim_w_perp: usize,
    pub dim_stabilizer: usize,
    pub dim_levi: usize,
}

impl SubspaceTable {
    pub fn of(a: &GradedAlgebra) -> Result<Self, Error> {
        let m = a.m();
        Ok(SubspaceTable {
            n: a.n(),
            dim_sl: a.total_dim(),
            dim_g_minus1: a.dim(Degree::Minus1),
            dim_g0: a.dim(Degree::Zero),
            dim_g1: a.dim(Degree::Plus1),
            dim_w: a.dim_w(),
            dim_u: a.dim_u(),
            dim_u_perp: 3,
            dim_w_perp: 1,
            dim_stabilizer: a.stabilizer_of_w_dim()?,
            dim_levi: 3 + m * m - 1,
        })
    }
}
