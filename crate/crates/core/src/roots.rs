//! Root system of type A_ℓ in the coordinates e_1..e_{ℓ+1}.
//!
//! Weights are stored modulo the all-ones vector, with the mean subtracted.
//! Two sign conventions are supported: `Delta` has simple roots
//! δ_i = e_i - e_{i+1}; `Alpha` has α_i = -δ_i. Reflections agree in both.

use std::collections::BTreeSet;
use std::fmt;

use num_rational::Rational64;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::error::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Convention {
    Delta,
    Alpha,
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Weight {
    coords: Vec<Rational64>,
}

impl fmt::Debug for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c: Vec<String> = self.coords.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", c.join(", "))
    }
}

impl Weight {
    pub fn new(coords: Vec<Rational64>) -> Self {
        let n = coords.len() as i64;
        let mean: Rational64 = coords.iter().sum::<Rational64>() / Rational64::from_integer(n.max(1));
        Weight { coords: coords.into_iter().map(|x| x - mean).collect() }
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        Self::new(coords.iter().map(|&x| Rational64::from_integer(x)).collect())
    }

    pub fn zero(dim: usize) -> Self {
        Weight { coords: vec![Rational64::zero(); dim] }
    }

    /// e_a - e_b, 0-based.
    pub fn root(dim: usize, a: usize, b: usize) -> Self {
        let mut c = vec![0; dim];
        c[a] += 1;
        c[b] -= 1;
        Self::from_ints(&c)
    }

    pub fn coords(&self) -> &[Rational64] {
        &self.coords
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn add(&self, o: &Weight) -> Weight {
        Weight { coords: self.coords.iter().zip(&o.coords).map(|(a, b)| a + b).collect() }
    }

    pub fn sub(&self, o: &Weight) -> Weight {
        Weight { coords: self.coords.iter().zip(&o.coords).map(|(a, b)| a - b).collect() }
    }

    pub fn neg(&self) -> Weight {
        Weight { coords: self.coords.iter().map(|a| -a).collect() }
    }

    pub fn scale(&self, k: i64) -> Weight {
        Weight { coords: self.coords.iter().map(|a| a * k).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|x| x.is_zero())
    }

    pub fn inner(&self, o: &Weight) -> Rational64 {
        self.coords.iter().zip(&o.coords).map(|(a, b)| a * b).sum()
    }

    /// Integer representative with last coordinate 0.
    pub fn integral_coords(&self) -> Option<Vec<i64>> {
        let last = *self.coords.last()?;
        self.coords
            .iter()
            .map(|x| {
                let y = x - last;
                y.is_integer().then(|| y.to_integer())
            })
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeylElement {
    perm: Vec<usize>,
    word: Vec<usize>,
}

impl WeylElement {
    pub fn identity(dim: usize) -> Self {
        WeylElement { perm: (0..dim).collect(), word: vec![] }
    }

    /// Product s_{i_1} s_{i_2} ... of simple reflections (1-based indices).
    pub fn from_word(dim: usize, word: &[usize]) -> Result<Self, Error> {
        let mut perm: Vec<usize> = (0..dim).collect();
        for &i in word {
            if i == 0 || i >= dim {
                return Err(Error::Unsupported(format!("simple reflection index {i} out of range")));
            }
            // perm <- perm ∘ s_i
            perm.swap(i - 1, i);
        }
        Ok(WeylElement { perm, word: word.to_vec() })
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    /// Reduced word as stored (lexicographically largest among reduced words
    /// for elements produced by [`RootSystem::elements_of_length`]).
    pub fn word(&self) -> &[usize] {
        &self.word
    }

    pub fn length(&self) -> usize {
        let p = &self.perm;
        let mut l = 0;
        for i in 0..p.len() {
            for j in i + 1..p.len() {
                if p[i] > p[j] {
                    l += 1;
                }
            }
        }
        l
    }

    pub fn act(&self, w: &Weight) -> Weight {
        let mut c = vec![Rational64::zero(); w.dim()];
        for (i, x) in w.coords().iter().enumerate() {
            c[self.perm[i]] = *x;
        }
        Weight { coords: c }
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.perm.len()];
        for (i, &p) in self.perm.iter().enumerate() {
            inv[p] = i;
        }
        let word = self.word.iter().rev().copied().collect();
        WeylElement { perm: inv, word }
    }

    pub fn compose(&self, o: &WeylElement) -> WeylElement {
        let perm = o.perm.iter().map(|&x| self.perm[x]).collect();
        let mut word = self.word.clone();
        word.extend_from_slice(&o.word);
        WeylElement { perm, word }
    }

    pub fn label(&self) -> String {
        let sep = if self.word.iter().any(|&i| i >= 10) { "," } else { "" };
        let w: Vec<String> = self.word.iter().map(|i| i.to_string()).collect();
        format!("σ_{}", if w.is_empty() { "e".to_string() } else { w.join(sep) })
    }
}

#[derive(Clone, Debug)]
pub struct RootSystem {
    rank: usize,
    convention: Convention,
}

impl RootSystem {
    pub fn new(rank: usize, convention: Convention) -> Result<Self, Error> {
        if rank == 0 {
            return Err(Error::Unsupported("rank must be positive".into()));
        }
        Ok(RootSystem { rank, convention })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn dim(&self) -> usize {
        self.rank + 1
    }

    pub fn convention(&self) -> Convention {
        self.convention
    }

    fn sign(&self) -> i64 {
        match self.convention {
            Convention::Delta => 1,
            Convention::Alpha => -1,
        }
    }

    /// Simple root with 1-based index.
    pub fn simple_root(&self, i: usize) -> Weight {
        assert!(i >= 1 && i <= self.rank);
        Weight::root(self.dim(), i - 1, i).scale(self.sign())
    }

    pub fn positive_roots(&self) -> Vec<Weight> {
        let d = self.dim();
        let mut out = Vec::new();
        for a in 0..d {
            for b in a + 1..d {
                out.push(Weight::root(d, a, b).scale(self.sign()));
            }
        }
        out
    }

    pub fn highest_root(&self) -> Weight {
        Weight::root(self.dim(), 0, self.rank).scale(self.sign())
    }

    /// Half the sum of positive roots.
    pub fn rho(&self) -> Weight {
        let d = self.dim() as i64;
        let coords = (0..d)
            .map(|i| Rational64::new(self.sign() * (d - 1 - 2 * i), 2))
            .collect();
        Weight::new(coords)
    }

    /// Coefficients in the simple roots.
    pub fn simple_coords(&self, w: &Weight) -> Vec<Rational64> {
        let mut acc = Rational64::zero();
        let mut out = Vec::with_capacity(self.rank);
        for i in 0..self.rank {
            acc += w.coords()[i];
            out.push(acc * self.sign());
        }
        out
    }

    pub fn is_root(&self, w: &Weight) -> bool {
        let d = self.dim();
        (0..d).any(|a| (0..d).any(|b| a != b && Weight::root(d, a, b) == *w))
    }

    pub fn is_positive_root(&self, w: &Weight) -> bool {
        self.is_root(w) && self.simple_coords(w).iter().all(|c| !c.is_negative())
    }

    pub fn simple_reflection(&self, i: usize) -> WeylElement {
        WeylElement::from_word(self.dim(), &[i]).expect("index checked by caller")
    }

    /// Φ⁺ ∩ σ(Φ⁻): positive roots sent to negative roots by σ⁻¹.
    pub fn inversion_set(&self, s: &WeylElement) -> Vec<Weight> {
        let inv = s.inverse();
        self.positive_roots()
            .into_iter()
            .filter(|b| !self.is_positive_root(&inv.act(b)))
            .collect()
    }

    /// All elements of length `q`, each carrying its lexicographically
    /// largest reduced word, sorted by that word.
    pub fn elements_of_length(&self, q: usize) -> Vec<WeylElement> {
        let mut level = vec![WeylElement::identity(self.dim())];
        for _ in 0..q {
            let mut seen = BTreeSet::new();
            let mut next = Vec::new();
            // parents sorted with descending words, extensions descending:
            // the first word reaching an element is its largest reduced word
            level.sort_by(|a, b| b.word.cmp(&a.word));
            for s in &level {
                for i in (1..=self.rank).rev() {
                    if !self.is_positive_root(&s.act(&self.simple_root(i))) {
                        continue;
                    }
                    let t = s.compose(&self.simple_reflection(i));
                    if seen.insert(t.perm.clone()) {
                        next.push(t);
                    }
                }
            }
            level = next;
        }
        level.sort_by(|a, b| a.word.cmp(&b.word));
        level
    }

    /// Coefficient of t^q in ∏_{k=1}^{ℓ} (1 + t + ... + t^k).
    pub fn poincare_coefficient(&self, q: usize) -> u64 {
        let mut poly = vec![1u64];
        for k in 1..=self.rank {
            let mut next = vec![0u64; poly.len() + k];
            for (i, c) in poly.iter().enumerate() {
                for j in 0..=k {
                    next[i + j] += c;
                }
            }
            poly = next;
        }
        poly.get(q).copied().unwrap_or(0)
    }
}

/// Sum of a list of weights; `dim` is used when the list is empty.
pub fn weight_sum(dim: usize, ws: &[Weight]) -> Weight {
    ws.iter().fold(Weight::zero(dim), |acc, w| acc.add(w))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn counts_of_small_type_a() {
        let r = RootSystem::new(3, Convention::Delta).unwrap();
        assert_eq!(r.positive_roots().len(), 6);
        let sizes: Vec<usize> = (0..=6).map(|q| r.elements_of_length(q).len()).collect();
        assert_eq!(sizes, vec![1, 3, 5, 6, 5, 3, 1]);
        for q in 0..=6 {
            assert_eq!(sizes[q] as u64, r.poincare_coefficient(q));
        }
        assert!(r.elements_of_length(7).is_empty());
    }

    #[test]
    fn inversion_set_of_word_231() {
        let r = RootSystem::new(5, Convention::Alpha).unwrap();
        let s = WeylElement::from_word(6, &[2, 3, 1]).unwrap();
        let a = |i| r.simple_root(i);
        let mut expected = vec![a(2), a(1).add(&a(2)), a(2).add(&a(3))];
        let mut got = r.inversion_set(&s);
        expected.sort();
        got.sort();
        assert_eq!(got, expected);
    }

    #[test]
    fn largest_reduced_word_is_kept() {
        let r = RootSystem::new(5, Convention::Alpha).unwrap();
        let target = WeylElement::from_word(6, &[2, 1, 3]).unwrap();
        let found = r
            .elements_of_length(3)
            .into_iter()
            .find(|s| s.perm() == target.perm())
            .unwrap();
        assert_eq!(found.word(), &[2, 3, 1]);
    }

    #[test]
    fn highest_root_and_rho() {
        let r = RootSystem::new(4, Convention::Alpha).unwrap();
        let sum = weight_sum(5, &(1..=4).map(|i| r.simple_root(i)).collect::<Vec<_>>());
        assert_eq!(sum, r.highest_root());
        let two_rho = weight_sum(5, &r.positive_roots());
        assert_eq!(two_rho, r.rho().scale(2));
    }

    #[test]
    fn simple_coords_of_roots() {
        let r = RootSystem::new(4, Convention::Delta).unwrap();
        assert_eq!(
            r.simple_coords(&r.highest_root()),
            vec![Rational64::from_integer(1); 4]
        );
        let a = RootSystem::new(4, Convention::Alpha).unwrap();
        assert_eq!(a.simple_coords(&a.simple_root(2))[1], Rational64::from_integer(1));
    }

    proptest! {
        #[test]
        fn inversion_set_size_is_length(word in proptest::collection::vec(1usize..=5, 0..12), flip in any::<bool>()) {
            let conv = if flip { Convention::Alpha } else { Convention::Delta };
            let r = RootSystem::new(5, conv).unwrap();
            let s = WeylElement::from_word(6, &word).unwrap();
            let inv = r.inversion_set(&s);
            prop_assert_eq!(inv.len(), s.length());
            // ρ - σρ is the sum of the inversion set
            prop_assert_eq!(r.rho().sub(&s.act(&r.rho())), weight_sum(6, &inv));
        }

        #[test]
        fn action_preserves_inner_product(word in proptest::collection::vec(1usize..=4, 0..10),
                                          a in proptest::collection::vec(-3i64..4, 5),
                                          b in proptest::collection::vec(-3i64..4, 5)) {
            let s = WeylElement::from_word(5, &word).unwrap();
            let (x, y) = (Weight::from_ints(&a), Weight::from_ints(&b));
            prop_assert_eq!(s.act(&x).inner(&s.act(&y)), x.inner(&y));
            prop_assert_eq!(s.inverse().act(&s.act(&x)), x);
        }
    }
}
