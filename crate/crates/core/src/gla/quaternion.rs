//! Real form of `V`: the identification `H^n ⊗ C ≅ V`.
//!
//! A quaternion is sent to a complex 2x2 matrix by
//! `1 ↦ I`, `i ↦ diag(i, -i)`, `j ↦ [[0,1],[-1,0]]`, `k ↦ [[0,i],[i,0]]`.
//! Slot `r` of a vector in `H^n` occupies rows `2+2r, 3+2r` and columns
//! `0, 1` of the degree -1 block. Left multiplication by `gl_n(H)` becomes
//! left multiplication on rows, right multiplication by `H` becomes right
//! multiplication on columns, which is how the block diagonal of `sl(N)`
//! acts on the lower-left block.
//!
//! The real basis of `H^n` is ordered slot by slot, `(1, i, j, k)` inside
//! each slot.

use num_traits::{One, Zero};

use super::{mat_add, mat_mul, unit, Degree, GradedAlgebra, Mat};
use crate::error::Error;
use crate::exactla::{int, rat, ExactMatrix, Rational};

/// Rational complex number.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gauss {
    pub re: Rational,
    pub im: Rational,
}

impl Gauss {
    pub fn zero() -> Self {
        Gauss { re: Rational::zero(), im: Rational::zero() }
    }

    pub fn real(x: Rational) -> Self {
        Gauss { re: x, im: Rational::zero() }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn mul(&self, o: &Gauss) -> Gauss {
        Gauss {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }

    pub fn add(&self, o: &Gauss) -> Gauss {
        Gauss { re: &self.re + &o.re, im: &self.im + &o.im }
    }
}

/// Complex matrix as a pair of real sparse matrices.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CMat {
    pub re: Mat,
    pub im: Mat,
}

impl CMat {
    pub fn add(&self, o: &CMat, s: &Rational) -> CMat {
        CMat { re: mat_add(&self.re, &o.re, s), im: mat_add(&self.im, &o.im, s) }
    }

    pub fn commutator(&self, o: &CMat) -> CMat {
        let m = |a: &CMat, b: &CMat| CMat {
            re: mat_add(&mat_mul(&a.re, &b.re), &mat_mul(&a.im, &b.im), &-Rational::one()),
            im: mat_add(&mat_mul(&a.re, &b.im), &mat_mul(&a.im, &b.re), &Rational::one()),
        };
        let ab = m(self, o);
        let ba = m(o, self);
        ab.add(&ba, &-Rational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_empty() && self.im.is_empty()
    }
}

/// Real quaternion `a + bi + cj + dk` as `[a, b, c, d]`.
pub type Quat = [Rational; 4];

pub fn qmul(x: &Quat, y: &Quat) -> Quat {
    let [a1, b1, c1, d1] = x;
    let [a2, b2, c2, d2] = y;
    [
        a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
        a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
        a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
        a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
    ]
}

pub fn qconj(x: &Quat) -> Quat {
    [x[0].clone(), -x[1].clone(), -x[2].clone(), -x[3].clone()]
}

pub fn qunit(s: usize) -> Quat {
    let mut q: Quat = [int(0), int(0), int(0), int(0)];
    q[s] = int(1);
    q
}

/// ψ(q) for a unit quaternion `s ∈ {0:1, 1:i, 2:j, 3:k}` as a complex 2x2
/// matrix placed with its top-left corner at `(r0, c0)`.
fn psi_unit(s: usize, r0: usize, c0: usize) -> CMat {
    let mut re = Mat::new();
    let mut im = Mat::new();
    match s {
        0 => {
            re.insert((r0, c0), int(1));
            re.insert((r0 + 1, c0 + 1), int(1));
        }
        1 => {
            im.insert((r0, c0), int(1));
            im.insert((r0 + 1, c0 + 1), int(-1));
        }
        2 => {
            re.insert((r0, c0 + 1), int(1));
            re.insert((r0 + 1, c0), int(-1));
        }
        3 => {
            im.insert((r0, c0 + 1), int(1));
            im.insert((r0 + 1, c0), int(1));
        }
        _ => unreachable!(),
    }
    CMat { re, im }
}

fn psi(q: &Quat, r0: usize, c0: usize) -> CMat {
    let mut out = CMat::default();
    for (s, x) in q.iter().enumerate() {
        if !x.is_zero() {
            out = out.add(&psi_unit(s, r0, c0), x);
        }
    }
    out
}

/// Complex matrix in degree -1 of a real vector of `H^n` (length `4n`).
pub fn embed_real(a: &GradedAlgebra, v: &[Rational]) -> Result<CMat, Error> {
    if v.len() != 4 * a.n() {
        return Err(Error::Shape(format!("expected a real vector of length {}", 4 * a.n())));
    }
    let mut out = CMat::default();
    for r in 0..a.n() {
        let q: Quat = [v[4 * r].clone(), v[4 * r + 1].clone(), v[4 * r + 2].clone(), v[4 * r + 3].clone()];
        out = out.add(&psi(&q, 2 + 2 * r, 0), &int(1));
    }
    Ok(out)
}

/// Complex coordinates in the `V` basis of a real vector of `H^n`.
pub fn embed_real_coords(a: &GradedAlgebra, v: &[Rational]) -> Result<Vec<Gauss>, Error> {
    let m = embed_real(a, v)?;
    complex_coords(a, Degree::Minus1, &m)
}

pub fn complex_coords(a: &GradedAlgebra, d: Degree, m: &CMat) -> Result<Vec<Gauss>, Error> {
    let mut out = vec![Gauss::zero(); a.dim(d)];
    for (i, x) in a.coords(d, &m.re)? {
        out[i].re += x;
    }
    for (i, x) in a.coords(d, &m.im)? {
        out[i].im += x;
    }
    Ok(out)
}

/// Inverse of [`embed_real`]; fails if the matrix is not in the real form.
pub fn extract_real(a: &GradedAlgebra, m: &CMat) -> Result<Vec<Rational>, Error> {
    if a.degree_of(&m.re).is_some_and(|d| d != Degree::Minus1)
        || a.degree_of(&m.im).is_some_and(|d| d != Degree::Minus1)
    {
        return Err(Error::Consistency("not in degree -1".into()));
    }
    let mut out = Vec::with_capacity(4 * a.n());
    for r in 0..a.n() {
        let r0 = 2 + 2 * r;
        let get = |mm: &Mat, i: usize, j: usize| mm.get(&(r0 + i, j)).cloned().unwrap_or_else(Rational::zero);
        let (re, im) = (&m.re, &m.im);
        let (a11, b11) = (get(re, 0, 0), get(im, 0, 0));
        let (a12, b12) = (get(re, 0, 1), get(im, 0, 1));
        let (a21, b21) = (get(re, 1, 0), get(im, 1, 0));
        let (a22, b22) = (get(re, 1, 1), get(im, 1, 1));
        // x1 I + xi diag(i,-i) + xj [[0,1],[-1,0]] + xk [[0,i],[i,0]]
        let x1 = (&a11 + &a22) * rat(1, 2);
        let xi = (&b11 - &b22) * rat(1, 2);
        let xj = (&a12 - &a21) * rat(1, 2);
        let xk = (&b12 + &b21) * rat(1, 2);
        let rebuilt = psi(&[x1.clone(), xi.clone(), xj.clone(), xk.clone()], r0, 0);
        let block = |mm: &Mat| -> Mat {
            mm.iter()
                .filter(|((i, _), _)| *i == r0 || *i == r0 + 1)
                .map(|(k, v)| (*k, v.clone()))
                .collect()
        };
        if block(&m.re) != rebuilt.re || block(&m.im) != rebuilt.im {
            return Err(Error::Consistency(format!("slot {r} is not in the real form")));
        }
        out.extend([x1, xi, xj, xk]);
    }
    Ok(out)
}

/// Degree 1 element dual to a real covector `v*` (length `4n`) under
/// `(Z, Y) ↦ tr(ZY)`: the block of slot `r` is `Σ_q v*_q ψ(q̄)/2`.
pub fn dual_covector(a: &GradedAlgebra, vstar: &[Rational]) -> Result<CMat, Error> {
    if vstar.len() != 4 * a.n() {
        return Err(Error::Shape(format!("expected a covector of length {}", 4 * a.n())));
    }
    let mut out = CMat::default();
    for r in 0..a.n() {
        for s in 0..4 {
            let x = &vstar[4 * r + s];
            if x.is_zero() {
                continue;
            }
            let qbar = qconj(&qunit(s));
            out = out.add(&psi(&qbar, 0, 2 + 2 * r), &(x * rat(1, 2)));
        }
    }
    Ok(out)
}

/// Right multiplication by `-q_α`, `α = 1, 2, 3` for `i, j, k`, on `H^n`.
fn complex_structure(alpha: usize, x: &[Rational]) -> Vec<Rational> {
    let q = qunit(alpha);
    let mut out = Vec::with_capacity(x.len());
    for chunk in x.chunks(4) {
        let h: Quat = [chunk[0].clone(), chunk[1].clone(), chunk[2].clone(), chunk[3].clone()];
        let p = qmul(&h, &q);
        out.extend(p.into_iter().map(|c| -c));
    }
    out
}

fn pair(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Endomorphism of `V_R` (columns = images of the real basis) given by
/// `v' ↦ v*(v)v' + v·v*(v') - Σ_α [v*(I_α v) I_α v' + I_α v · v*(I_α v')]`.
pub fn dual_action_formula(a: &GradedAlgebra, vstar: &[Rational], v: &[Rational]) -> ExactMatrix {
    let d = 4 * a.n();
    let vsv = pair(vstar, v);
    let mut cols = Vec::with_capacity(d);
    for b in 0..d {
        let mut e = vec![Rational::zero(); d];
        e[b] = Rational::one();
        let mut out: Vec<Rational> = e.iter().map(|x| x * &vsv).collect();
        let vse = pair(vstar, &e);
        for (o, x) in out.iter_mut().zip(v) {
            *o += x * &vse;
        }
        for alpha in 1..=3 {
            let iv = complex_structure(alpha, v);
            let ie = complex_structure(alpha, &e);
            let c1 = pair(vstar, &iv);
            let c2 = pair(vstar, &ie);
            for k in 0..d {
                out[k] -= &c1 * &ie[k] + &iv[k] * &c2;
            }
        }
        cols.push(out);
    }
    ExactMatrix::from_columns(d, &cols)
}

/// Endomorphism of `V_R` given by `v' ↦ [[Z_{v*}, v], v']`.
pub fn dual_action_bracket(a: &GradedAlgebra, vstar: &[Rational], v: &[Rational]) -> Result<ExactMatrix, Error> {
    let d = 4 * a.n();
    let z = dual_covector(a, vstar)?;
    let y = embed_real(a, v)?;
    let x = z.commutator(&y);
    let mut cols = Vec::with_capacity(d);
    for b in 0..d {
        let mut e = vec![Rational::zero(); d];
        e[b] = Rational::one();
        let img = x.commutator(&embed_real(a, &e)?);
        cols.push(extract_real(a, &img)?);
    }
    Ok(ExactMatrix::from_columns(d, &cols))
}

/// Constant κ with `[[Z_{v*}, v], ·] = κ · formula`, as produced by this
/// realization.
pub fn dual_action_constant() -> Rational {
    rat(-1, 2)
}

/// Compares both sides for one pair, up to [`dual_action_constant`].
pub fn dual_action_check(a: &GradedAlgebra, vstar: &[Rational], v: &[Rational]) -> Result<bool, Error> {
    let lhs = dual_action_bracket(a, vstar, v)?;
    let rhs = dual_action_formula(a, vstar, v);
    let k = dual_action_constant();
    let d = lhs.rows();
    for i in 0..d {
        for j in 0..d {
            if *lhs.get(i, j) != rhs.get(i, j) * &k {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Trace of the formula endomorphism, `(4n+4) v*(v)`.
pub fn dual_action_trace(a: &GradedAlgebra, vstar: &[Rational], v: &[Rational]) -> Rational {
    let m = dual_action_formula(a, vstar, v);
    (0..m.rows()).map(|i| m.get(i, i).clone()).sum()
}

/// `e_{i,j}` as a complex matrix.
pub fn cunit(i: usize, j: usize) -> CMat {
    CMat { re: unit(i, j), im: Mat::new() }
}

/// Whether degree-0 `X` commutes with the real form, i.e.
/// maps real vectors of `V` to real vectors.
pub fn preserves_real_form(a: &GradedAlgebra, x: &CMat) -> Result<bool, Error> {
    for b in 0..4 * a.n() {
        let mut e = vec![Rational::zero(); 4 * a.n()];
        e[b] = Rational::one();
        let img = x.commutator(&embed_real(a, &e)?);
        if extract_real(a, &img).is_err() {
            return Ok(false);
        }
    }
    Ok(true)
}
