//! Exact linear algebra over the rationals.
//!
//! Elimination runs fraction-free on integer rows (rows are cleared of
//! denominators first, and each updated row is divided by its content).
//! Pivoting is deterministic: the first nonzero entry in column order.
//! An `i128` path is tried first and the computation restarts on `BigInt`
//! if any intermediate overflows.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::Error;

pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `p/q` or `p`.
pub fn parse_rational(s: &str) -> Result<Rational, String> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| format!("bad numerator in {s:?}"))?;
    let den: BigInt = den.parse().map_err(|_| format!("bad denominator in {s:?}"))?;
    if den.is_zero() {
        return Err(format!("zero denominator in {s:?}"));
    }
    Ok(Rational::new(num, den))
}

#[derive(Clone, PartialEq, Eq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl fmt::Debug for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ExactMatrix {}x{}", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl ExactMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ExactMatrix { rows, cols, data: vec![Rational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            data.extend(row);
        }
        ExactMatrix { rows: r, cols: c, data }
    }

    pub fn from_i64(rows: &[Vec<i64>]) -> Self {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect())
    }

    /// Matrix whose columns are the given vectors, all of length `rows`.
    pub fn from_columns(rows: usize, columns: &[Vec<Rational>]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows);
            for (i, x) in col.iter().enumerate() {
                if !x.is_zero() {
                    m.set(i, j, x.clone());
                }
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Rational {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rational) {
        self.data[r * self.cols + c] = v;
    }

    pub fn add_to(&mut self, r: usize, c: usize, v: &Rational) {
        self.data[r * self.cols + c] += v;
    }

    pub fn row(&self, r: usize) -> &[Rational] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<Rational> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                let x = self.get(r, c);
                if !x.is_zero() {
                    t.set(c, r, x.clone());
                }
            }
        }
        t
    }

    pub fn mul(&self, other: &ExactMatrix) -> Result<ExactMatrix, Error> {
        if self.cols != other.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.get(k, c);
                    if !b.is_zero() {
                        out.data[r * other.cols + c] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Result<Vec<Rational>, Error> {
        if v.len() != self.cols {
            return Err(Error::Shape(format!(
                "vector of length {} against {} columns",
                v.len(),
                self.cols
            )));
        }
        let mut out = vec![Rational::zero(); self.rows];
        for (c, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (r, o) in out.iter_mut().enumerate() {
                let a = self.get(r, c);
                if !a.is_zero() {
                    *o += a * x;
                }
            }
        }
        Ok(out)
    }

    pub fn rank(&self) -> usize {
        echelon_rows(self.integer_rows(), self.cols, false).pivots.len()
    }

    /// Basis of the null space. One vector per free column, in column order,
    /// with a 1 in its free column and 0 in every other free column.
    pub fn kernel_basis(&self) -> Vec<Vec<Rational>> {
        let e = echelon_rows(self.integer_rows(), self.cols, true);
        kernel_from_reduced(&e, self.cols)
    }

    /// Indices of the pivot columns, i.e. the lexicographically first set of
    /// columns spanning the column space.
    pub fn pivot_columns(&self) -> Vec<usize> {
        echelon_rows(self.integer_rows(), self.cols, false)
            .pivots
            .iter()
            .map(|&(_, c)| c)
            .collect()
    }

    fn integer_rows(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }
}

/// Coefficients `c` with `span * c = v`, or `None` if `v` is outside the
/// column span.
pub fn membership(span: &ExactMatrix, v: &[Rational]) -> Result<Option<Vec<Rational>>, Error> {
    Ok(solve_many(span, &[v.to_vec()])?.pop().unwrap())
}

/// Batched [`membership`]: one elimination for all right-hand sides.
pub fn solve_many(span: &ExactMatrix, vs: &[Vec<Rational>]) -> Result<Vec<Option<Vec<Rational>>>, Error> {
    for v in vs {
        if v.len() != span.rows() {
            return Err(Error::Shape(format!(
                "vector of length {} against span of {} rows",
                v.len(),
                span.rows()
            )));
        }
    }
    let k = span.cols();
    let rows: Vec<Vec<Rational>> = (0..span.rows())
        .map(|r| {
            let mut row = span.row(r).to_vec();
            row.extend(vs.iter().map(|v| v[r].clone()));
            row
        })
        .collect();
    let e = echelon_rows(rows, k, true);
    let mut out = Vec::with_capacity(vs.len());
    for j in 0..vs.len() {
        let col = k + j;
        let consistent = e.rows[e.pivots.len()..].iter().all(|row| row[col].is_zero());
        if !consistent {
            out.push(None);
            continue;
        }
        let mut c = vec![Rational::zero(); k];
        for (i, &(r, pc)) in e.pivots.iter().enumerate() {
            debug_assert_eq!(r, i);
            c[pc] = &e.rows[i][col] / &e.rows[i][pc];
        }
        out.push(Some(c));
    }
    Ok(out)
}

/// Pivot-complement of a subspace spanned by `vectors` inside `Q^dim`: the
/// standard basis indices that are not pivots of the row echelon form of
/// the spanning set. Together with the subspace they span `Q^dim`.
pub fn complement_indices(dim: usize, vectors: &[Vec<Rational>]) -> Vec<usize> {
    if vectors.is_empty() {
        return (0..dim).collect();
    }
    let e = echelon_rows(vectors.to_vec(), dim, false);
    let mut is_pivot = vec![false; dim];
    for &(_, c) in &e.pivots {
        is_pivot[c] = true;
    }
    (0..dim).filter(|&i| !is_pivot[i]).collect()
}

/// Matrix of the map `source/sub_source -> target/sub_target` induced by
/// `f`, in the pivot-complement bases of both quotients (see
/// [`complement_indices`]). The subspaces are given by spanning columns.
pub fn induced_quotient_map(
    f: &ExactMatrix,
    sub_source: &ExactMatrix,
    sub_target: &ExactMatrix,
) -> Result<ExactMatrix, Error> {
    if sub_source.rows() != f.cols() || sub_target.rows() != f.rows() {
        return Err(Error::Shape("subspace ambient dimension mismatch".into()));
    }
    let src_cols: Vec<Vec<Rational>> = (0..sub_source.cols()).map(|c| sub_source.column(c)).collect();
    let tgt_cols: Vec<Vec<Rational>> = (0..sub_target.cols()).map(|c| sub_target.column(c)).collect();
    let images: Vec<Vec<Rational>> =
        src_cols.iter().map(|v| f.mul_vec(v)).collect::<Result<_, _>>()?;
    for (i, sol) in solve_many(sub_target, &images)?.into_iter().enumerate() {
        if sol.is_none() {
            return Err(Error::Consistency(format!(
                "image of subspace generator {i} leaves the target subspace"
            )));
        }
    }
    let src_comp = complement_indices(f.cols(), &src_cols);
    let tgt_comp = complement_indices(f.rows(), &tgt_cols);
    // basis of target = sub_target generators (independent subset) + complement units
    let mut basis: Vec<Vec<Rational>> = Vec::new();
    let tgt_piv = if sub_target.cols() > 0 { sub_target.pivot_columns() } else { vec![] };
    for &c in &tgt_piv {
        basis.push(sub_target.column(c));
    }
    let offset = basis.len();
    for &i in &tgt_comp {
        let mut e = vec![Rational::zero(); f.rows()];
        e[i] = Rational::one();
        basis.push(e);
    }
    let bmat = ExactMatrix::from_columns(f.rows(), &basis);
    let images: Vec<Vec<Rational>> = src_comp.iter().map(|&j| f.column(j)).collect();
    let sols = solve_many(&bmat, &images)?;
    let mut out = ExactMatrix::zeros(tgt_comp.len(), src_comp.len());
    for (j, sol) in sols.into_iter().enumerate() {
        let sol = sol.expect("complement basis spans the target");
        for i in 0..tgt_comp.len() {
            out.set(i, j, sol[offset + i].clone());
        }
    }
    Ok(out)
}

/// `ker(out) / im(incoming)` for a pair of composable maps
/// `incoming: A -> X`, `out: X -> B` with `out * incoming = 0`.
///
/// Representatives are kernel basis vectors indexed by the pivot-complement
/// of the boundary space written in kernel coordinates.
#[derive(Clone, Debug)]
pub struct Subquotient {
    ambient: usize,
    free: Vec<usize>,
    kernel: Vec<Vec<Rational>>,
    // boundary rows in kernel coordinates, reduced, pivot entries 1
    boundary: Vec<(usize, Vec<Rational>)>,
    reps: Vec<usize>,
}

impl Subquotient {
    pub fn new(out: &ExactMatrix, incoming: &ExactMatrix) -> Result<Self, Error> {
        let ambient = out.cols();
        if incoming.rows() != ambient {
            return Err(Error::Shape("incoming map does not land in the ambient space".into()));
        }
        let e = echelon_rows(out.integer_rows(), ambient, true);
        let kernel = kernel_from_reduced(&e, ambient);
        let mut is_pivot = vec![false; ambient];
        for &(_, c) in &e.pivots {
            is_pivot[c] = true;
        }
        let free: Vec<usize> = (0..ambient).filter(|&c| !is_pivot[c]).collect();
        let boundary_coords: Vec<Vec<Rational>> = (0..incoming.cols())
            .map(|c| {
                let col = incoming.column(c);
                free.iter().map(|&f| col[f].clone()).collect()
            })
            .collect();
        let be = echelon_rows(boundary_coords, free.len(), true);
        let mut boundary = Vec::with_capacity(be.pivots.len());
        let mut is_bpivot = vec![false; free.len()];
        for (i, &(_, pc)) in be.pivots.iter().enumerate() {
            let lead = be.rows[i][pc].clone();
            let row: Vec<Rational> = be.rows[i].iter().map(|x| x / &lead).collect();
            boundary.push((pc, row));
            is_bpivot[pc] = true;
        }
        let reps = (0..free.len()).filter(|&i| !is_bpivot[i]).collect();
        let sq = Subquotient { ambient, free, kernel, boundary, reps };
        for c in 0..incoming.cols() {
            let col = incoming.column(c);
            if !out.mul_vec(&col)?.iter().all(|x| x.is_zero()) {
                return Err(Error::Consistency("composite of consecutive maps is nonzero".into()));
            }
        }
        Ok(sq)
    }

    pub fn dim(&self) -> usize {
        self.reps.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn kernel_dim(&self) -> usize {
        self.kernel.len()
    }

    pub fn boundary_dim(&self) -> usize {
        self.boundary.len()
    }

    /// Ambient representative of the `i`-th class.
    pub fn representative(&self, i: usize) -> &[Rational] {
        &self.kernel[self.reps[i]]
    }

    /// Coordinates of the class of a cycle `z`. The caller guarantees that
    /// `z` lies in the kernel; only kernel coordinates are read.
    pub fn class_of(&self, z: &[Rational]) -> Vec<Rational> {
        let mut c: Vec<Rational> = self.free.iter().map(|&f| z[f].clone()).collect();
        for (pc, row) in &self.boundary {
            let k = c[*pc].clone();
            if k.is_zero() {
                continue;
            }
            for (x, r) in c.iter_mut().zip(row) {
                if !r.is_zero() {
                    *x -= &k * r;
                }
            }
        }
        self.reps.iter().map(|&i| c[i].clone()).collect()
    }

    /// Whether a cycle is a boundary.
    pub fn is_boundary(&self, z: &[Rational]) -> bool {
        self.class_of(z).iter().all(|x| x.is_zero())
    }
}

fn kernel_from_reduced(e: &Echelon<Rational>, cols: usize) -> Vec<Vec<Rational>> {
    let mut is_pivot = vec![false; cols];
    for &(_, c) in &e.pivots {
        is_pivot[c] = true;
    }
    let mut basis = Vec::new();
    for f in (0..cols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![Rational::zero(); cols];
        v[f] = Rational::one();
        for (i, &(_, pc)) in e.pivots.iter().enumerate() {
            let x = &e.rows[i][f];
            if !x.is_zero() {
                v[pc] = -(x / &e.rows[i][pc]);
            }
        }
        basis.push(v);
    }
    basis
}

struct Echelon<T> {
    rows: Vec<Vec<T>>,
    // (row, column); row i holds pivot i
    pivots: Vec<(usize, usize)>,
}

trait Scalar: Clone {
    fn is_zero_s(&self) -> bool;
    fn gcd_s(&self, o: &Self) -> Self;
    fn div_s(&self, d: &Self) -> Self;
    fn is_one_abs(&self) -> bool;
    /// `a*x - b*y`, `None` on overflow.
    fn mul_sub(a: &Self, x: &Self, b: &Self, y: &Self) -> Option<Self>;
}

impl Scalar for i128 {
    fn is_zero_s(&self) -> bool {
        *self == 0
    }
    fn gcd_s(&self, o: &Self) -> Self {
        self.gcd(o)
    }
    fn div_s(&self, d: &Self) -> Self {
        debug_assert_eq!(self % d, 0);
        self / d
    }
    fn is_one_abs(&self) -> bool {
        *self == 1 || *self == -1
    }
    fn mul_sub(a: &Self, x: &Self, b: &Self, y: &Self) -> Option<Self> {
        a.checked_mul(*x)?.checked_sub(b.checked_mul(*y)?)
    }
}

impl Scalar for BigInt {
    fn is_zero_s(&self) -> bool {
        self.is_zero()
    }
    fn gcd_s(&self, o: &Self) -> Self {
        Integer::gcd(self, o)
    }
    fn div_s(&self, d: &Self) -> Self {
        self / d
    }
    fn is_one_abs(&self) -> bool {
        self.abs().is_one()
    }
    fn mul_sub(a: &Self, x: &Self, b: &Self, y: &Self) -> Option<Self> {
        Some(a * x - b * y)
    }
}

fn row_to_integers(row: &[Rational]) -> Vec<BigInt> {
    let mut l = BigInt::one();
    for x in row {
        if !x.denom().is_one() {
            l = l.lcm(x.denom());
        }
    }
    row.iter().map(|x| x.numer() * (&l / x.denom())).collect()
}

/// Row echelon form (reduced if asked) of rational rows. Only columns below
/// `pivot_limit` are used as pivots; later columns are carried along.
/// Rows are rescaled, so entries are only meaningful as ratios within a row.
fn echelon_rows(rows: Vec<Vec<Rational>>, pivot_limit: usize, reduced: bool) -> Echelon<Rational> {
    let ints: Vec<Vec<BigInt>> = rows.iter().map(|r| row_to_integers(r)).collect();
    let small: Option<Vec<Vec<i128>>> = ints
        .iter()
        .map(|r| r.iter().map(|x| x.to_i128()).collect::<Option<Vec<_>>>())
        .collect();
    if let Some(small) = small {
        if let Some(e) = echelon_int(small, pivot_limit, reduced) {
            return Echelon {
                rows: e.rows.into_iter().map(|r| r.into_iter().map(int128).collect()).collect(),
                pivots: e.pivots,
            };
        }
    }
    let e = echelon_int(ints, pivot_limit, reduced).expect("bigint elimination cannot overflow");
    Echelon {
        rows: e
            .rows
            .into_iter()
            .map(|r| r.into_iter().map(Rational::from_integer).collect())
            .collect(),
        pivots: e.pivots,
    }
}

fn int128(x: i128) -> Rational {
    Rational::from_integer(BigInt::from(x))
}

fn echelon_int<T: Scalar>(mut rows: Vec<Vec<T>>, pivot_limit: usize, reduced: bool) -> Option<Echelon<T>> {
    let nrows = rows.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..pivot_limit {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&i| !rows[i][c].is_zero_s()) else {
            continue;
        };
        rows.swap(r, p);
        let prow = rows[r].clone();
        let lo = if reduced { 0 } else { r + 1 };
        for (i, row) in rows.iter_mut().enumerate().skip(lo) {
            if i == r {
                continue;
            }
            if row[c].is_zero_s() {
                continue;
            }
            let g = prow[c].gcd_s(&row[c]);
            let a = prow[c].div_s(&g);
            let b = row[c].div_s(&g);
            // rows above the pivot row carry earlier pivots that must be scaled too
            let start = if i < r { 0 } else { c };
            for j in start..row.len() {
                if prow[j].is_zero_s() && row[j].is_zero_s() {
                    continue;
                }
                row[j] = T::mul_sub(&a, &row[j], &b, &prow[j])?;
            }
            normalize_row(row);
        }
        pivots.push((r, c));
        r += 1;
    }
    Some(Echelon { rows, pivots })
}

fn normalize_row<T: Scalar>(row: &mut [T]) {
    let mut g: Option<T> = None;
    for x in row.iter() {
        if x.is_zero_s() {
            continue;
        }
        g = Some(match g {
            None => x.gcd_s(x),
            Some(g) => g.gcd_s(x),
        });
        if g.as_ref().unwrap().is_one_abs() {
            return;
        }
    }
    if let Some(g) = g {
        for x in row.iter_mut() {
            if !x.is_zero_s() {
                *x = x.div_s(&g);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_of_small_matrices() {
        let m = ExactMatrix::from_i64(&[vec![1, 2], vec![2, 4]]);
        assert_eq!(m.rank(), 1);
        assert_eq!(ExactMatrix::identity(3).rank(), 3);
        assert_eq!(ExactMatrix::zeros(0, 5).rank(), 0);
        assert_eq!(ExactMatrix::zeros(4, 0).rank(), 0);
        assert_eq!(ExactMatrix::zeros(3, 3).rank(), 0);
    }

    #[test]
    fn rational_entries_do_not_confuse_rank() {
        let m = ExactMatrix::from_rows(vec![vec![rat(1, 2), rat(1, 3)], vec![rat(3, 2), int(1)]]);
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn kernel_of_one_row() {
        let m = ExactMatrix::from_i64(&[vec![1, 1, 1]]);
        let k = m.kernel_basis();
        assert_eq!(k, vec![vec![int(-1), int(1), int(0)], vec![int(-1), int(0), int(1)]]);
    }

    #[test]
    fn kernel_needs_rescaled_upper_rows() {
        let m = ExactMatrix::from_i64(&[vec![2, 1, 0], vec![0, 3, 1]]);
        for v in m.kernel_basis() {
            assert!(m.mul_vec(&v).unwrap().iter().all(|x| x.is_zero()));
        }
    }

    #[test]
    fn membership_returns_certificate() {
        let span = ExactMatrix::from_i64(&[vec![1, 0], vec![1, 1], vec![0, 1]]);
        let c = membership(&span, &[int(2), int(5), int(3)]).unwrap().unwrap();
        assert_eq!(c, vec![int(2), int(3)]);
        assert!(membership(&span, &[int(1), int(0), int(0)]).unwrap().is_none());
    }

    #[test]
    fn quotient_map_of_identity_is_identity() {
        let f = ExactMatrix::identity(3);
        let sub = ExactMatrix::from_i64(&[vec![1], vec![1], vec![0]]);
        let q = induced_quotient_map(&f, &sub, &sub).unwrap();
        assert_eq!(q, ExactMatrix::identity(2));
    }

    #[test]
    fn quotient_map_rejects_bad_subspaces() {
        let f = ExactMatrix::identity(2);
        let s = ExactMatrix::from_i64(&[vec![1], vec![0]]);
        let t = ExactMatrix::from_i64(&[vec![0], vec![1]]);
        assert!(induced_quotient_map(&f, &s, &t).is_err());
    }

    #[test]
    fn subquotient_of_zero_maps() {
        let out = ExactMatrix::zeros(0, 3);
        let inc = ExactMatrix::from_i64(&[vec![1], vec![0], vec![0]]);
        let h = Subquotient::new(&out, &inc).unwrap();
        assert_eq!(h.dim(), 2);
        assert!(h.is_boundary(&[int(5), int(0), int(0)]));
        assert_eq!(h.class_of(&[int(5), int(2), int(7)]), vec![int(2), int(7)]);
    }

    #[test]
    fn parse_rationals() {
        assert_eq!(parse_rational("-3/6").unwrap(), rat(-1, 2));
        assert_eq!(parse_rational(" 4 ").unwrap(), int(4));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn matrix() -> impl Strategy<Value = ExactMatrix> {
            (1usize..7, 1usize..7).prop_flat_map(|(r, c)| {
                proptest::collection::vec(proptest::collection::vec(-3i64..4, c), r)
                    .prop_map(|rows| ExactMatrix::from_i64(&rows))
            })
        }

        proptest! {
            #[test]
            fn rank_nullity(m in matrix()) {
                let k = m.kernel_basis();
                prop_assert_eq!(m.rank() + k.len(), m.cols());
                prop_assert_eq!(m.rank(), m.transpose().rank());
                for v in k {
                    prop_assert!(m.mul_vec(&v).unwrap().iter().all(|x| x.is_zero()));
                }
            }

            #[test]
            fn membership_certificates_are_solutions(m in matrix(), seed in proptest::collection::vec(-2i64..3, 6)) {
                let x: Vec<Rational> = (0..m.cols()).map(|i| int(seed[i])).collect();
                let v = m.mul_vec(&x).unwrap();
                let c = membership(&m, &v).unwrap().expect("image lies in the span");
                prop_assert_eq!(m.mul_vec(&c).unwrap(), v);
            }

            #[test]
            fn subquotient_dimension(m in matrix()) {
                // H of 0 -> Q^c -> Q^r with incoming = kernel basis is zero
                let k = m.kernel_basis();
                let inc = ExactMatrix::from_columns(m.cols(), &k);
                let h = Subquotient::new(&m, &inc).unwrap();
                prop_assert_eq!(h.dim(), 0);
                let h0 = Subquotient::new(&m, &ExactMatrix::zeros(m.cols(), 0)).unwrap();
                prop_assert_eq!(h0.dim(), k.len());
                for i in 0..h0.dim() {
                    prop_assert!(m.mul_vec(h0.representative(i)).unwrap().iter().all(|x| x.is_zero()));
                }
            }
        }
    }
}
