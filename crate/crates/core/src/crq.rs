//! First-order obstruction for almost CR quaternionic structures modelled
//! on a 2-step nilpotent `m = U + U⊥` with `U = H^{n-1}`, `U⊥ = Im H`.
//!
//! A bracket `L : Λ²U -> U⊥` is embedded as a cochain in `C^{0,2}(g̃,W)`
//! (zero on every pair involving `U⊥`), and its class in
//! `H^{0,2}(g̃,W) = C^{0,2} / ∂C^{1,1}` is the obstruction. The cochain is
//! complex; real and imaginary parts are tested separately against the
//! rational boundary space.
//!
//! Real coordinates: `u_i` is the `i`-th real basis vector of `H^n` (slot
//! major, `(1,i,j,k)` inside a slot) for `i ≤ 4(n-1)`; `z_1, z_2, z_3` are
//! `i, j, k` in the last slot.

use std::collections::{BTreeMap, HashMap};
use std::path::Path;
use std::sync::{Arc, Mutex};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::decomp::{decompose, named_dynkin, Character, Irrep, SWeight};
use crate::error::Error;
use crate::exactla::{int, parse_rational, solve_many, ExactMatrix, Rational};
use crate::gla::quaternion::{embed_real_coords, qconj, qmul, qunit, Gauss, Quat};
use crate::gla::{unit, GradedAlgebra, TorusKey};
use crate::spencer::{CochainAction, CochainSpace, Complex, Differential, Spencer};

/// Brackets `[u_i, u_j] = Σ_α c^α_{ij} z_α`, stored for `i < j` (1-based).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BracketSpec {
    n: usize,
    entries: BTreeMap<(usize, usize, usize), Rational>,
}

#[derive(Deserialize)]
struct RawFile {
    n: i64,
    entries: Vec<RawEntry>,
}

#[derive(Deserialize)]
struct RawEntry {
    i: i64,
    j: i64,
    alpha: i64,
    value: String,
}

#[derive(Serialize)]
struct OutFile {
    n: usize,
    entries: Vec<OutEntry>,
}

#[derive(Serialize)]
struct OutEntry {
    i: usize,
    j: usize,
    alpha: usize,
    value: String,
}

impl BracketSpec {
    pub fn zero(n: usize) -> Result<Self, Error> {
        if n < 2 {
            return Err(Error::Unsupported(format!("n = {n}: brackets need n >= 2")));
        }
        Ok(BracketSpec { n, entries: BTreeMap::new() })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Real dimension of `U`.
    pub fn dim_u(&self) -> usize {
        4 * (self.n - 1)
    }

    fn check(&self, i: usize, j: usize, alpha: usize) -> Result<(), Error> {
        let d = self.dim_u();
        if i < 1 || j < 1 || i > d || j > d || !(1..=3).contains(&alpha) {
            return Err(Error::Shape(format!("index (i={i}, j={j}, alpha={alpha}) out of range for n = {}", self.n)));
        }
        Ok(())
    }

    /// Sets `c^α_{ij}` (and implicitly `c^α_{ji} = -c^α_{ij}`).
    pub fn set(&mut self, i: usize, j: usize, alpha: usize, v: Rational) -> Result<(), Error> {
        self.check(i, j, alpha)?;
        if i == j {
            return if v.is_zero() {
                Ok(())
            } else {
                Err(Error::Shape(format!("diagonal entry ({i},{i}) must vanish")))
            };
        }
        let (key, v) = if i < j { ((i, j, alpha), v) } else { ((j, i, alpha), -v) };
        if v.is_zero() {
            self.entries.remove(&key);
        } else {
            self.entries.insert(key, v);
        }
        Ok(())
    }

    pub fn get(&self, i: usize, j: usize, alpha: usize) -> Rational {
        match i.cmp(&j) {
            std::cmp::Ordering::Less => self.entries.get(&(i, j, alpha)).cloned().unwrap_or_else(Rational::zero),
            std::cmp::Ordering::Greater => -self.get(j, i, alpha),
            std::cmp::Ordering::Equal => Rational::zero(),
        }
    }

    pub fn entries(&self) -> impl Iterator<Item = (&(usize, usize, usize), &Rational)> {
        self.entries.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// `[u, v]` for real vectors of `U`, as coefficients of `z_1, z_2, z_3`.
    pub fn eval(&self, u: &[Rational], v: &[Rational]) -> [Rational; 3] {
        let mut out = [Rational::zero(), Rational::zero(), Rational::zero()];
        for (&(i, j, alpha), c) in &self.entries {
            let w = &u[i - 1] * &v[j - 1] - &u[j - 1] * &v[i - 1];
            out[alpha - 1] += w * c;
        }
        out
    }

    pub fn scaled(&self, t: &Rational) -> BracketSpec {
        let mut out = self.clone();
        out.entries = self.entries.iter().map(|(k, v)| (*k, v * t)).filter(|(_, v)| !v.is_zero()).collect();
        out
    }

    pub fn plus(&self, o: &BracketSpec) -> Result<BracketSpec, Error> {
        if self.n != o.n {
            return Err(Error::Shape(format!("brackets for n = {} and n = {}", self.n, o.n)));
        }
        let mut out = self.clone();
        for (&(i, j, a), v) in &o.entries {
            let cur = out.get(i, j, a);
            out.set(i, j, a, cur + v)?;
        }
        Ok(out)
    }

    pub fn parse_json(text: &str) -> Result<Self, Error> {
        let raw: RawFile = serde_json::from_str(text).map_err(|e| Error::Parse(format!("bracket file: {e}")))?;
        if raw.n < 2 {
            return Err(Error::Parse(format!("bracket file: n = {} is not supported (n >= 2)", raw.n)));
        }
        let n = raw.n as usize;
        let d = 4 * (n - 1) as i64;
        let mut spec = BracketSpec::zero(n)?;
        let mut seen = BTreeMap::new();
        for (k, e) in raw.entries.iter().enumerate() {
            let at = format!("entry {k} (i={}, j={}, alpha={}, value={:?})", e.i, e.j, e.alpha, e.value);
            if e.i < 1 || e.j > d || e.i >= e.j {
                return Err(Error::Parse(format!("{at}: need 1 <= i < j <= {d}")));
            }
            if !(1..=3).contains(&e.alpha) {
                return Err(Error::Parse(format!("{at}: alpha must be 1, 2 or 3")));
            }
            let v = parse_rational(&e.value).map_err(|m| Error::Parse(format!("{at}: {m}")))?;
            let key = (e.i as usize, e.j as usize, e.alpha as usize);
            if let Some(prev) = seen.insert(key, k) {
                return Err(Error::Parse(format!("{at}: duplicates entry {prev}")));
            }
            spec.set(key.0, key.1, key.2, v)?;
        }
        Ok(spec)
    }

    pub fn read(path: &Path) -> Result<Self, Error> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?;
        Self::parse_json(&text)
    }

    pub fn to_json(&self) -> String {
        let doc = OutFile {
            n: self.n,
            entries: self
                .entries
                .iter()
                .map(|(&(i, j, alpha), v)| OutEntry { i, j, alpha, value: v.to_string() })
                .collect(),
        };
        serde_json::to_string_pretty(&doc).expect("bracket serialization")
    }
}

/// `[u, v] = Im(Σ_r ū_r v_r)` on `U = H^{n-1}`.
pub fn standard_contact_bracket(n: usize) -> Result<BracketSpec, Error> {
    let mut spec = BracketSpec::zero(n)?;
    for r in 0..n - 1 {
        for s in 0..4 {
            for t in s + 1..4 {
                let p = qmul(&qconj(&qunit(s)), &qunit(t));
                for alpha in 1..=3 {
                    if !p[alpha].is_zero() {
                        spec.set(4 * r + s + 1, 4 * r + t + 1, alpha, p[alpha].clone())?;
                    }
                }
            }
        }
    }
    Ok(spec)
}

/// `L_t = L_0 + t L`.
pub fn deformation_family(l0: &BracketSpec, l: &BracketSpec, t: &Rational) -> Result<BracketSpec, Error> {
    l0.plus(&l.scaled(t))
}

/// Names of the isotypic pieces of `U⊥ ⊗ Λ²U*`.
pub const COMPONENTS: [&str; 4] = ["Λ²E*", "S²E*S²H", "Λ²E*S²H", "Λ²E*S⁴H"];

/// Pieces whose content is the obstruction.
pub const OBSTRUCTING: [&str; 2] = ["Λ²E*S²H", "Λ²E*S⁴H"];

fn component_irrep(m: usize, name: &str) -> Irrep {
    let (slm, a) = match name {
        "Λ²E*" => ("Λ²E*", 0),
        "S²E*S²H" => ("S²E*", 2),
        "Λ²E*S²H" => ("Λ²E*", 2),
        "Λ²E*S⁴H" => ("Λ²E*", 4),
        _ => unreachable!(),
    };
    Irrep::new(a, named_dynkin(m, slm).expect("named module exists for m >= 2"))
}

fn gsub(a: &Gauss, b: &Gauss) -> Gauss {
    Gauss { re: &a.re - &b.re, im: &a.im - &b.im }
}

/// Complex cochain, split into real and imaginary sparse parts.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ComplexCochain {
    pub re: BTreeMap<usize, Rational>,
    pub im: BTreeMap<usize, Rational>,
}

impl ComplexCochain {
    pub fn is_zero(&self) -> bool {
        self.re.is_empty() && self.im.is_empty()
    }

    pub fn add(&self, o: &ComplexCochain) -> ComplexCochain {
        let mut out = self.clone();
        for (i, x) in &o.re {
            crate::spencer::sparse_add(&mut out.re, *i, x);
        }
        for (i, x) in &o.im {
            crate::spencer::sparse_add(&mut out.im, *i, x);
        }
        out
    }

    fn push(&mut self, i: usize, g: &Gauss) {
        for (part, x) in [(&mut self.re, &g.re), (&mut self.im, &g.im)] {
            crate::spencer::sparse_add(part, i, x);
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CertificateEntry {
    pub index: usize,
    pub re: String,
    pub im: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct ObstructionReport {
    pub n: usize,
    pub vanishes: bool,
    /// Whether the complexified cochain has a nonzero component in each
    /// isotypic piece of `U⊥ ⊗ Λ²U*`.
    pub components: BTreeMap<String, bool>,
    /// Preimage under `∂ : C^{1,1} -> C^{0,2}` when the class vanishes.
    pub certificate: Option<Vec<CertificateEntry>>,
    pub note: String,
}

/// Precomputed data for obstruction classes at one `n`.
pub struct Obstruction {
    spencer: Arc<Spencer>,
    c02: Arc<CochainSpace>,
    d11: Arc<Differential>,
    // complex V-coordinates of the real basis (columns), and the inverse
    to_complex: Vec<Vec<Gauss>>,
    to_real: Vec<Vec<Gauss>>,
    // global indices of U⊥ ⊗ Λ²U* inside C^{0,2}, and the inverse map
    sub: Vec<usize>,
    sub_pos: HashMap<usize, usize>,
    projectors: Vec<(String, ExactMatrix)>,
    block_cache: Mutex<HashMap<TorusKey, Arc<ExactMatrix>>>,
}

impl Obstruction {
    pub fn new(n: usize) -> Result<Self, Error> {
        Self::with_spencer(Arc::new(Spencer::new(n)?))
    }

    pub fn with_spencer(spencer: Arc<Spencer>) -> Result<Self, Error> {
        let a = spencer.algebra();
        let dv = a.dim_v();
        let mut to_complex = Vec::with_capacity(dv);
        for i in 0..dv {
            let mut e = vec![Rational::zero(); dv];
            e[i] = Rational::one();
            to_complex.push(embed_real_coords(a, &e)?);
        }
        let to_real = invert_complex(&to_complex)?;
        let c02 = spencer.space(0, 2, Complex::Relative);
        let d11 = spencer.differential(1, 1, Complex::Relative);
        let du = a.dim_u();
        let mut sub = Vec::new();
        for x in a.s2h_indices() {
            for b in 0..du {
                for c in b + 1..du {
                    sub.push(c02.index_of(x, (1u64 << b) | (1u64 << c)).expect("U⊥ ⊗ Λ²U* ⊂ C^{0,2}"));
                }
            }
        }
        let sub_pos = sub.iter().enumerate().map(|(i, &g)| (g, i)).collect();
        let mut ob = Obstruction {
            spencer: spencer.clone(),
            c02,
            d11,
            to_complex,
            to_real,
            sub,
            sub_pos,
            projectors: vec![],
            block_cache: Mutex::new(HashMap::new()),
        };
        ob.projectors = ob.build_projectors()?;
        Ok(ob)
    }

    pub fn n(&self) -> usize {
        self.spencer.algebra().n()
    }

    pub fn algebra(&self) -> &GradedAlgebra {
        self.spencer.algebra()
    }

    /// Dimension of `U⊥ ⊗ Λ²U*`.
    pub fn subspace_dim(&self) -> usize {
        self.sub.len()
    }

    /// Character of `U⊥ ⊗ Λ²U*` read off the cochain weights.
    pub fn subspace_character(&self) -> Character {
        let m = self.algebra().m();
        let mut c = Character::new(m);
        for &g in &self.sub {
            c.add_weight(SWeight::from_key(self.c02.key(g)), 1);
        }
        c
    }

    fn action_matrix(&self, x: &crate::gla::Mat) -> Result<ExactMatrix, Error> {
        let act = CochainAction::new(self.algebra(), x, self.c02.clone())?;
        let d = self.sub.len();
        let mut m = ExactMatrix::zeros(d, d);
        for (col, &g) in self.sub.iter().enumerate() {
            let e: BTreeMap<usize, Rational> = [(g, Rational::one())].into();
            for (t, v) in act.apply(&e) {
                let row = *self
                    .sub_pos
                    .get(&t)
                    .ok_or_else(|| Error::Consistency("U⊥ ⊗ Λ²U* is not Levi-invariant".into()))?;
                m.set(row, col, v);
            }
        }
        Ok(m)
    }

    fn build_projectors(&self) -> Result<Vec<(String, ExactMatrix)>, Error> {
        let a = self.algebra();
        let m = a.m();
        let d = self.sub.len();
        let add = |x: &ExactMatrix, y: &ExactMatrix, s: &Rational| -> ExactMatrix {
            let mut out = x.clone();
            for i in 0..d {
                for j in 0..d {
                    let v = y.get(i, j);
                    if !v.is_zero() {
                        out.add_to(i, j, &(v * s));
                    }
                }
            }
            out
        };
        // sl(2): h² + 2ef + 2fe
        let [h, e, f] = a.levi_sl2();
        let (h, e, f) = (self.action_matrix(&h)?, self.action_matrix(&e)?, self.action_matrix(&f)?);
        let mut cas2 = h.mul(&h)?;
        cas2 = add(&cas2, &e.mul(&f)?, &int(2));
        cas2 = add(&cas2, &f.mul(&e)?, &int(2));
        // sl(m): Σ E_ij E_ji - (Σ E_ii)²/m over the E rows
        let rows: Vec<usize> = a.e_positions().collect();
        let units: HashMap<(usize, usize), ExactMatrix> = rows
            .iter()
            .flat_map(|&i| rows.iter().map(move |&j| (i, j)))
            .map(|(i, j)| Ok(((i, j), self.action_matrix(&unit(i, j))?)))
            .collect::<Result<_, Error>>()?;
        let mut casm = ExactMatrix::zeros(d, d);
        let mut trace = ExactMatrix::zeros(d, d);
        for &i in &rows {
            trace = add(&trace, &units[&(i, i)], &int(1));
            for &j in &rows {
                casm = add(&casm, &units[&(i, j)].mul(&units[&(j, i)])?, &int(1));
            }
        }
        casm = add(&casm, &trace.mul(&trace)?, &-Rational::new(1.into(), (m as i64).into()));

        let found = decompose(&self.subspace_character())?;
        let expected: Vec<(String, Irrep)> =
            COMPONENTS.iter().map(|c| (c.to_string(), component_irrep(m, c))).collect();
        let mut got: Vec<Irrep> = found.iter().map(|c| c.irrep.clone()).collect();
        got.sort();
        let mut want: Vec<Irrep> = expected.iter().map(|(_, r)| r.clone()).collect();
        want.sort();
        if got != want || found.iter().any(|c| c.multiplicity != 1) {
            return Err(Error::Decomposition(format!(
                "U⊥ ⊗ Λ²U* decomposes as {:?}",
                found.iter().map(|c| (c.name.clone(), c.multiplicity)).collect::<Vec<_>>()
            )));
        }
        let eig = |r: &Irrep| -> (Rational, Rational) {
            let a2 = int(r.sl2 as i64 * (r.sl2 as i64 + 2));
            let mu = r.highest_weight().slm;
            let mut s = Rational::zero();
            let mut tot = 0i64;
            for (i, &x) in mu.iter().enumerate() {
                let x = x as i64;
                s += int(x * (x + m as i64 + 1 - 2 * (i as i64 + 1)));
                tot += x;
            }
            (a2, s - Rational::new((tot * tot).into(), (m as i64).into()))
        };
        let eigs: Vec<(Rational, Rational)> = expected.iter().map(|(_, r)| eig(r)).collect();
        let spectral = |cas: &ExactMatrix, lam: &Rational, all: Vec<&Rational>| -> Result<ExactMatrix, Error> {
            let mut p = ExactMatrix::identity(d);
            let mut done: Vec<&Rational> = vec![];
            for mu in all {
                if mu == lam || done.contains(&mu) {
                    continue;
                }
                done.push(mu);
                let f = add(cas, &ExactMatrix::identity(d), &-mu.clone());
                let mut fs = ExactMatrix::zeros(d, d);
                fs = add(&fs, &f, &(Rational::one() / (lam - mu)));
                p = p.mul(&fs)?;
            }
            Ok(p)
        };
        let mut out = Vec::new();
        let mut total = ExactMatrix::zeros(d, d);
        for (k, (name, r)) in expected.iter().enumerate() {
            let (l2, lm) = &eigs[k];
            if eigs.iter().enumerate().any(|(j, e)| j != k && e == &eigs[k]) {
                return Err(Error::Decomposition(format!("Casimirs do not separate {name}")));
            }
            let p2 = spectral(&cas2, l2, eigs.iter().map(|e| &e.0).collect())?;
            let pm = spectral(&casm, lm, eigs.iter().map(|e| &e.1).collect())?;
            let p = p2.mul(&pm)?;
            if p.mul(&p)? != p {
                return Err(Error::Consistency(format!("projector for {name} is not idempotent")));
            }
            let rank = p.rank() as u64;
            if rank != crate::decomp::irrep_dim(r) {
                return Err(Error::Consistency(format!("projector for {name} has rank {rank}")));
            }
            total = add(&total, &p, &int(1));
            out.push((name.clone(), p));
        }
        if total != ExactMatrix::identity(d) {
            return Err(Error::Consistency("isotypic projectors do not sum to the identity".into()));
        }
        Ok(out)
    }

    /// The embedded cochain of `L` in `C^{0,2}(g̃,W) ⊗ C`.
    pub fn embed(&self, l: &BracketSpec) -> Result<ComplexCochain, Error> {
        let a = self.algebra();
        if l.n() != a.n() {
            return Err(Error::Shape(format!("bracket for n = {} used with n = {}", l.n(), a.n())));
        }
        let du = a.dim_u();
        let zs: Vec<&Vec<Gauss>> = (1..=3).map(|al| &self.to_complex[du + al]).collect();
        // L(e_i, e_j) as complex V-vectors
        let mut val: HashMap<(usize, usize), Vec<Gauss>> = HashMap::new();
        for (&(i, j, alpha), c) in l.entries() {
            let v = val.entry((i - 1, j - 1)).or_insert_with(|| vec![Gauss::zero(); a.dim_v()]);
            for (x, z) in v.iter_mut().zip(zs[alpha - 1]) {
                *x = x.add(&z.mul(&Gauss::real(c.clone())));
            }
        }
        let t = &self.to_real;
        let mut out = ComplexCochain::default();
        for b in 0..du {
            for c in b + 1..du {
                let mut acc = vec![Gauss::zero(); a.dim_v()];
                for ((i, j), v) in &val {
                    let coef = gsub(&t[b][*i].mul(&t[c][*j]), &t[b][*j].mul(&t[c][*i]));
                    if coef.is_zero() {
                        continue;
                    }
                    for (x, y) in acc.iter_mut().zip(v) {
                        *x = x.add(&coef.mul(y));
                    }
                }
                for (x, g) in acc.iter().enumerate() {
                    if g.is_zero() {
                        continue;
                    }
                    let idx = self
                        .c02
                        .index_of(x, (1u64 << b) | (1u64 << c))
                        .ok_or_else(|| Error::Consistency("embedded value outside V".into()))?;
                    out.push(idx, g);
                }
            }
        }
        Ok(out)
    }

    /// Inverse of [`Obstruction::embed`]; fails unless the cochain is real,
    /// supported on `U⊥ ⊗ Λ²U*` and rational.
    pub fn extract(&self, c: &ComplexCochain) -> Result<BracketSpec, Error> {
        let a = self.algebra();
        let du = a.dim_u();
        let mut spec = BracketSpec::zero(a.n())?;
        // value on (v_b, v_c) for b < c
        let mut vals: BTreeMap<(usize, usize), Vec<Gauss>> = BTreeMap::new();
        for (part, is_im) in [(&c.re, false), (&c.im, true)] {
            for (&g, x) in part {
                let (v, mask) = self.c02.basis()[g];
                let b = mask.trailing_zeros() as usize;
                let cc = 63 - mask.leading_zeros() as usize;
                if cc >= du {
                    return Err(Error::Consistency("cochain is nonzero on a U⊥ direction".into()));
                }
                let e = vals.entry((b, cc)).or_insert_with(|| vec![Gauss::zero(); a.dim_v()]);
                if is_im {
                    e[v].im += x;
                } else {
                    e[v].re += x;
                }
            }
        }
        let m = &self.to_complex;
        for i in 0..du {
            for j in i + 1..du {
                let mut acc = vec![Gauss::zero(); a.dim_v()];
                for ((b, c), v) in &vals {
                    let coef = gsub(&m[i][*b].mul(&m[j][*c]), &m[i][*c].mul(&m[j][*b]));
                    if coef.is_zero() {
                        continue;
                    }
                    for (x, y) in acc.iter_mut().zip(v) {
                        *x = x.add(&coef.mul(y));
                    }
                }
                // real coordinates of the value
                for r in 0..a.dim_v() {
                    let mut s = Gauss::zero();
                    for (x, g) in acc.iter().enumerate() {
                        if !g.is_zero() {
                            s = s.add(&self.to_real[x][r].mul(g));
                        }
                    }
                    if !s.im.is_zero() {
                        return Err(Error::Consistency("cochain is not real".into()));
                    }
                    if s.re.is_zero() {
                        continue;
                    }
                    if r <= du || r > du + 3 {
                        return Err(Error::Consistency("value leaves U⊥".into()));
                    }
                    spec.set(i + 1, j + 1, r - du, s.re)?;
                }
            }
        }
        Ok(spec)
    }

    fn to_sub(&self, v: &BTreeMap<usize, Rational>) -> Result<Vec<Rational>, Error> {
        let mut out = vec![Rational::zero(); self.sub.len()];
        for (g, x) in v {
            let p = self
                .sub_pos
                .get(g)
                .ok_or_else(|| Error::Consistency("cochain leaves U⊥ ⊗ Λ²U*".into()))?;
            out[*p] = x.clone();
        }
        Ok(out)
    }

    fn lift_sub(&self, v: &[Rational]) -> BTreeMap<usize, Rational> {
        v.iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .map(|(i, x)| (self.sub[i], x.clone()))
            .collect()
    }

    /// Isotypic projection of a cochain supported on `U⊥ ⊗ Λ²U*`.
    pub fn project(&self, c: &ComplexCochain, component: &str) -> Result<ComplexCochain, Error> {
        let p = &self
            .projectors
            .iter()
            .find(|(n, _)| n == component)
            .ok_or_else(|| Error::Unsupported(format!("unknown component {component}")))?
            .1;
        Ok(ComplexCochain {
            re: self.lift_sub(&p.mul_vec(&self.to_sub(&c.re)?)?),
            im: self.lift_sub(&p.mul_vec(&self.to_sub(&c.im)?)?),
        })
    }

    /// The part of a bracket lying in one isotypic component, as a bracket.
    pub fn component_bracket(&self, l: &BracketSpec, component: &str) -> Result<BracketSpec, Error> {
        self.extract(&self.project(&self.embed(l)?, component)?)
    }

    fn boundary_block(&self, k: &TorusKey) -> Arc<ExactMatrix> {
        if let Some(b) = self.block_cache.lock().unwrap().get(k) {
            return b.clone();
        }
        let b = Arc::new(self.d11.block(k));
        self.block_cache.lock().unwrap().entry(k.clone()).or_insert(b).clone()
    }

    /// Preimage of a complex cochain under `∂ : C^{1,1} -> C^{0,2}` (relative),
    /// or `None` if it is not a boundary.
    pub fn boundary_preimage(&self, c: &ComplexCochain) -> Result<Option<ComplexCochain>, Error> {
        let re = self.c02.split(&c.re);
        let im = self.c02.split(&c.im);
        let mut keys: Vec<&TorusKey> = re.keys().chain(im.keys()).collect();
        keys.sort();
        keys.dedup();
        let src = &self.d11.source;
        let mut out = ComplexCochain::default();
        for k in keys {
            let span = self.boundary_block(k);
            let zero = vec![Rational::zero(); span.rows()];
            let rhs = vec![re.get(k).unwrap_or(&zero).clone(), im.get(k).unwrap_or(&zero).clone()];
            let sols = solve_many(&span, &rhs)?;
            let (Some(x), Some(y)) = (&sols[0], &sols[1]) else {
                return Ok(None);
            };
            out.re.extend(src.unsplit(k, x));
            out.im.extend(src.unsplit(k, y));
        }
        // the certificate is checked, not trusted
        if self.d11.apply(&out.re) != c.re || self.d11.apply(&out.im) != c.im {
            return Err(Error::Consistency("boundary certificate does not reproduce the cochain".into()));
        }
        Ok(Some(out))
    }

    pub fn r1_class(&self, l: &BracketSpec) -> Result<ObstructionReport, Error> {
        let c = self.embed(l)?;
        let mut components = BTreeMap::new();
        for name in COMPONENTS {
            components.insert(name.to_string(), !self.project(&c, name)?.is_zero());
        }
        let pre = self.boundary_preimage(&c)?;
        let certificate = pre.map(|p| {
            let idx: std::collections::BTreeSet<usize> = p.re.keys().chain(p.im.keys()).copied().collect();
            idx.into_iter()
                .map(|i| CertificateEntry {
                    index: i,
                    re: p.re.get(&i).cloned().unwrap_or_else(Rational::zero).to_string(),
                    im: p.im.get(&i).cloned().unwrap_or_else(Rational::zero).to_string(),
                })
                .collect()
        });
        Ok(ObstructionReport {
            n: l.n(),
            vanishes: certificate.is_some(),
            components,
            certificate,
            note: "computed on the complexification; a real class vanishes iff its complexification does".into(),
        })
    }
}

/// Inverse of a complex matrix given by columns, via the real 2d x 2d form.
fn invert_complex(cols: &[Vec<Gauss>]) -> Result<Vec<Vec<Gauss>>, Error> {
    let d = cols.len();
    let mut big = ExactMatrix::zeros(2 * d, 2 * d);
    for (j, col) in cols.iter().enumerate() {
        for (i, g) in col.iter().enumerate() {
            big.set(i, j, g.re.clone());
            big.set(i + d, j + d, g.re.clone());
            big.set(i + d, j, g.im.clone());
            big.set(i, j + d, -g.im.clone());
        }
    }
    let rhs: Vec<Vec<Rational>> = (0..d)
        .map(|b| {
            let mut e = vec![Rational::zero(); 2 * d];
            e[b] = Rational::one();
            e
        })
        .collect();
    let mut out = Vec::with_capacity(d);
    for s in solve_many(&big, &rhs)? {
        let s = s.ok_or_else(|| Error::Consistency("real basis does not span V".into()))?;
        out.push((0..d).map(|i| Gauss { re: s[i].clone(), im: s[i + d].clone() }).collect());
    }
    Ok(out)
}

/// Real quaternion of slot `r` of a real vector.
pub fn slot(v: &[Rational], r: usize) -> Quat {
    [v[4 * r].clone(), v[4 * r + 1].clone(), v[4 * r + 2].clone(), v[4 * r + 3].clone()]
}
