//! Characters and isotypic decomposition for `s = sl(2) ⊕ sl(m)`, `m = 2n-2`.
//!
//! An `sl(m)` weight is stored in e-coordinates normalized so that the last
//! coordinate is 0. The `sl(2)` weight is the eigenvalue of `h`.
//! Irreducible characters of `sl(m)` come from Freudenthal's formula on the
//! dominant weights; the decomposition peels off highest weights.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;

use crate::error::Error;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct SWeight {
    pub sl2: i32,
    pub slm: Vec<i32>,
}

impl SWeight {
    pub fn new(sl2: i32, slm: Vec<i32>) -> Self {
        SWeight { sl2, slm: normalize(slm) }
    }

    /// From a torus key `(μ_0+μ_{N-2}, μ_1+μ_{N-1}, μ_0+μ_1, μ_E...)`.
    pub fn from_key(key: &[i32]) -> Self {
        SWeight::new(key[0] - key[1], key[3..].to_vec())
    }

    pub fn add(&self, o: &SWeight) -> SWeight {
        SWeight::new(self.sl2 + o.sl2, self.slm.iter().zip(&o.slm).map(|(a, b)| a + b).collect())
    }

    pub fn neg(&self) -> SWeight {
        SWeight::new(-self.sl2, self.slm.iter().map(|a| -a).collect())
    }

    pub fn dynkin(&self) -> Vec<i32> {
        self.slm.windows(2).map(|w| w[0] - w[1]).collect()
    }

    pub fn is_dominant(&self) -> bool {
        self.sl2 >= 0 && self.dynkin().iter().all(|&x| x >= 0)
    }

    fn height(&self) -> i64 {
        let m = self.slm.len() as i64;
        let h: i64 = self
            .slm
            .iter()
            .enumerate()
            .map(|(i, &x)| (m - 1 - 2 * i as i64) * x as i64)
            .sum();
        h + self.sl2 as i64
    }
}

fn normalize(mut v: Vec<i32>) -> Vec<i32> {
    if let Some(&last) = v.last() {
        for x in v.iter_mut() {
            *x -= last;
        }
    }
    v
}

/// Weight multiset of an `s`-module.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Character {
    m: usize,
    mult: BTreeMap<SWeight, i64>,
}

impl Character {
    pub fn new(m: usize) -> Self {
        Character { m, mult: BTreeMap::new() }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn add_weight(&mut self, w: SWeight, k: i64) {
        assert_eq!(w.slm.len(), self.m, "weight rank mismatch");
        let e = self.mult.entry(w.clone()).or_insert(0);
        *e += k;
        if *e == 0 {
            self.mult.remove(&w);
        }
    }

    pub fn from_weights(m: usize, ws: impl IntoIterator<Item = SWeight>) -> Self {
        let mut c = Character::new(m);
        for w in ws {
            c.add_weight(w, 1);
        }
        c
    }

    pub fn get(&self, w: &SWeight) -> i64 {
        self.mult.get(w).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&SWeight, &i64)> {
        self.mult.iter()
    }

    pub fn dim(&self) -> i64 {
        self.mult.values().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.mult.is_empty()
    }

    pub fn plus(&self, o: &Character) -> Character {
        let mut c = self.clone();
        for (w, k) in &o.mult {
            c.add_weight(w.clone(), *k);
        }
        c
    }

    pub fn minus(&self, o: &Character) -> Character {
        let mut c = self.clone();
        for (w, k) in &o.mult {
            c.add_weight(w.clone(), -*k);
        }
        c
    }

    pub fn scaled(&self, k: i64) -> Character {
        let mut c = Character::new(self.m);
        if k != 0 {
            for (w, x) in &self.mult {
                c.add_weight(w.clone(), x * k);
            }
        }
        c
    }

    pub fn tensor(&self, o: &Character) -> Character {
        let mut c = Character::new(self.m);
        for (a, x) in &self.mult {
            for (b, y) in &o.mult {
                c.add_weight(a.add(b), x * y);
            }
        }
        c
    }

    pub fn dual(&self) -> Character {
        let mut c = Character::new(self.m);
        for (w, k) in &self.mult {
            c.add_weight(w.neg(), *k);
        }
        c
    }

    /// Character of `Λ^k` of a module given by its weights with multiplicity.
    pub fn exterior_power(&self, k: usize) -> Character {
        let ws: Vec<SWeight> = self
            .mult
            .iter()
            .flat_map(|(w, &x)| std::iter::repeat_n(w.clone(), x.max(0) as usize))
            .collect();
        let mut c = Character::new(self.m);
        subsets(ws.len(), k, &mut |idx| {
            let mut acc = SWeight::new(0, vec![0; self.m]);
            for &i in idx {
                acc = acc.add(&ws[i]);
            }
            c.add_weight(acc, 1);
        });
        c
    }

    /// Character of `S^k`.
    pub fn symmetric_power(&self, k: usize) -> Character {
        let ws: Vec<SWeight> = self
            .mult
            .iter()
            .flat_map(|(w, &x)| std::iter::repeat_n(w.clone(), x.max(0) as usize))
            .collect();
        let mut c = Character::new(self.m);
        multisets(ws.len(), k, &mut |idx| {
            let mut acc = SWeight::new(0, vec![0; self.m]);
            for &i in idx {
                acc = acc.add(&ws[i]);
            }
            c.add_weight(acc, 1);
        });
        c
    }
}

fn subsets(n: usize, k: usize, f: &mut dyn FnMut(&[usize])) {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
        if cur.len() == k {
            f(cur);
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, f);
            cur.pop();
        }
    }
    go(0, n, k, &mut Vec::new(), f);
}

fn multisets(n: usize, k: usize, f: &mut dyn FnMut(&[usize])) {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
        if cur.len() == k {
            f(cur);
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i, n, k, cur, f);
            cur.pop();
        }
    }
    go(0, n, k, &mut Vec::new(), f);
}

/// Irreducible `S^a H ⊗ V(λ)`; `dynkin` has length `m - 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Irrep {
    pub sl2: u32,
    pub dynkin: Vec<u32>,
}

impl Irrep {
    pub fn new(sl2: u32, dynkin: Vec<u32>) -> Self {
        Irrep { sl2, dynkin }
    }

    pub fn m(&self) -> usize {
        self.dynkin.len() + 1
    }

    pub fn highest_weight(&self) -> SWeight {
        SWeight::new(self.sl2 as i32, e_coords(&self.dynkin))
    }

    pub fn from_weight(w: &SWeight) -> Option<Self> {
        if !w.is_dominant() {
            return None;
        }
        Some(Irrep { sl2: w.sl2 as u32, dynkin: w.dynkin().into_iter().map(|x| x as u32).collect() })
    }
}

fn e_coords(dynkin: &[u32]) -> Vec<i32> {
    let m = dynkin.len() + 1;
    let mut mu = vec![0i32; m];
    for i in (0..m - 1).rev() {
        mu[i] = mu[i + 1] + dynkin[i] as i32;
    }
    mu
}

/// Weyl dimension formula for `S^a H ⊗ V(λ)`.
pub fn irrep_dim(r: &Irrep) -> u64 {
    let mu = e_coords(&r.dynkin);
    let m = mu.len();
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for i in 0..m {
        for j in i + 1..m {
            num *= (mu[i] - mu[j]) as u128 + (j - i) as u128;
            den *= (j - i) as u128;
        }
    }
    (num / den) as u64 * (r.sl2 as u64 + 1)
}

fn ip_m(mu: &[i32], nu: &[i32]) -> i64 {
    let m = mu.len() as i64;
    let dot: i64 = mu.iter().zip(nu).map(|(a, b)| *a as i64 * *b as i64).sum();
    let sa: i64 = mu.iter().map(|&x| x as i64).sum();
    let sb: i64 = nu.iter().map(|&x| x as i64).sum();
    m * dot - sa * sb
}

fn two_rho(m: usize) -> Vec<i32> {
    (0..m).map(|i| m as i32 - 1 - 2 * i as i32).collect()
}

fn dominant_of(mu: &[i32]) -> Vec<i32> {
    let mut v = mu.to_vec();
    v.sort_unstable_by(|a, b| b.cmp(a));
    normalize(v)
}

fn casimir_m(mu: &[i32]) -> i64 {
    let tr = two_rho(mu.len());
    let shifted: Vec<i32> = mu.iter().zip(&tr).map(|(a, b)| a + b).collect();
    ip_m(mu, &shifted)
}

/// Dominant weights of `V(λ)` for `sl(m)` with their multiplicities.
pub fn slm_dominant_multiplicities(dynkin: &[u32]) -> BTreeMap<Vec<i32>, i64> {
    let lambda = e_coords(dynkin);
    let m = lambda.len();
    let roots: Vec<Vec<i32>> = (0..m)
        .flat_map(|i| {
            (i + 1..m).map(move |j| {
                let mut r = vec![0; m];
                r[i] = 1;
                r[j] = -1;
                r
            })
        })
        .collect();
    let is_dom = |v: &[i32]| v.windows(2).all(|w| w[0] >= w[1]);
    let mut seen: BTreeSet<Vec<i32>> = BTreeSet::new();
    let mut stack = vec![lambda.clone()];
    seen.insert(lambda.clone());
    while let Some(mu) = stack.pop() {
        for r in &roots {
            let nu = normalize(mu.iter().zip(r).map(|(a, b)| a - b).collect());
            if is_dom(&nu) && seen.insert(nu.clone()) {
                stack.push(nu);
            }
        }
    }
    let tr = two_rho(m);
    let height = |v: &[i32]| -> i64 { v.iter().zip(&tr).map(|(a, b)| *a as i64 * *b as i64).sum() };
    let mut order: Vec<Vec<i32>> = seen.into_iter().collect();
    order.sort_by_key(|v| std::cmp::Reverse(height(v)));
    let c_lambda = casimir_m(&lambda);
    let mut mult: BTreeMap<Vec<i32>, i64> = BTreeMap::new();
    for mu in order {
        if mu == lambda {
            mult.insert(mu, 1);
            continue;
        }
        let mut num: i64 = 0;
        for r in &roots {
            let mut k = 1;
            loop {
                let shifted = normalize(mu.iter().zip(r).map(|(a, b)| a + k * b).collect());
                let Some(&x) = mult.get(&dominant_of(&shifted)) else { break };
                num += 2 * x * ip_m(&shifted, r);
                k += 1;
            }
        }
        let den = c_lambda - casimir_m(&mu);
        assert!(den > 0 && num % den == 0, "Freudenthal recursion must be integral");
        let x = num / den;
        if x > 0 {
            mult.insert(mu, x);
        }
    }
    mult
}

fn distinct_permutations(v: &[i32], f: &mut dyn FnMut(&[i32])) {
    let mut a = v.to_vec();
    a.sort_unstable();
    loop {
        f(&a);
        // next lexicographic permutation
        let Some(i) = (0..a.len().saturating_sub(1)).rev().find(|&i| a[i] < a[i + 1]) else { return };
        let j = (i + 1..a.len()).rev().find(|&j| a[j] > a[i]).unwrap();
        a.swap(i, j);
        a[i + 1..].reverse();
    }
}

/// Full character of `S^a H ⊗ V(λ)`.
pub fn irrep_character(r: &Irrep) -> Character {
    let m = r.m();
    let dom = slm_dominant_multiplicities(&r.dynkin);
    let mut slm: Vec<(Vec<i32>, i64)> = Vec::new();
    for (mu, k) in &dom {
        distinct_permutations(mu, &mut |p| slm.push((normalize(p.to_vec()), *k)));
    }
    let mut c = Character::new(m);
    let a = r.sl2 as i32;
    for (mu, k) in &slm {
        for j in 0..=a {
            c.add_weight(SWeight { sl2: a - 2 * j, slm: mu.clone() }, *k);
        }
    }
    c
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Component {
    pub irrep: Irrep,
    pub multiplicity: u64,
    pub name: String,
    pub dim: u64,
}

/// Decomposes a Weyl-symmetric character into irreducibles, highest first
/// (ordered by a height functional, ties broken lexicographically).
pub fn decompose(c: &Character) -> Result<Vec<Component>, Error> {
    let mut rest = c.clone();
    let mut found: BTreeMap<Irrep, u64> = BTreeMap::new();
    let mut order: Vec<Irrep> = Vec::new();
    loop {
        if let Some((w, k)) = rest.iter().find(|(_, &k)| k < 0) {
            return Err(Error::Decomposition(format!("negative multiplicity {k} at weight {w:?}")));
        }
        let top = rest
            .iter()
            .filter(|(w, _)| w.is_dominant())
            .max_by(|(a, _), (b, _)| a.height().cmp(&b.height()).then_with(|| a.cmp(b)));
        let Some((w, &k)) = top else {
            if rest.is_empty() {
                break;
            }
            return Err(Error::Decomposition("character is not Weyl-symmetric".into()));
        };
        let r = Irrep::from_weight(w).unwrap();
        rest = rest.minus(&irrep_character(&r).scaled(k));
        if !found.contains_key(&r) {
            order.push(r.clone());
        }
        *found.entry(r).or_insert(0) += k as u64;
    }
    let m = c.m();
    Ok(order
        .into_iter()
        .map(|r| {
            let multiplicity = found[&r];
            Component { name: label(m, &r).display(), dim: irrep_dim(&r), irrep: r, multiplicity }
        })
        .collect())
}

/// Named `sl(m)` modules, in dictionary order.
pub const NAMES: [&str; 10] = ["Triv", "E", "E*", "Λ²E*", "Λ³E*", "S²E*", "Ad", "C", "D", "V"];

/// Dynkin labels of a named module for `sl(m)`, `None` if the name does not
/// denote a nonzero irreducible for this `m`.
pub fn named_dynkin(m: usize, name: &str) -> Option<Vec<u32>> {
    let mut v = vec![0u32; m - 1];
    // ω'_k with ω'_0 = ω'_m = 0
    let mut omega = |k: isize, c: u32| -> bool {
        if k < 0 || k > m as isize {
            return false;
        }
        if k >= 1 && (k as usize) < m {
            v[k as usize - 1] += c;
        }
        true
    };
    let mi = m as isize;
    let ok = match name {
        "Triv" => true,
        "E" => omega(1, 1),
        "E*" => omega(mi - 1, 1),
        "Λ²E*" => omega(mi - 2, 1),
        "Λ³E*" => m >= 3 && omega(mi - 3, 1),
        "S²E*" => omega(mi - 1, 2),
        "Ad" => omega(1, 1) && omega(mi - 1, 1),
        "C" => omega(1, 1) && omega(mi - 1, 2),
        "D" => m >= 3 && omega(1, 1) && omega(mi - 2, 1),
        "V" => m >= 4 && omega(1, 1) && omega(mi - 3, 1),
        _ => false,
    };
    ok.then_some(v)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Label {
    /// Dictionary name of the `sl(m)` part, or Dynkin labels if unnamed.
    pub slm: String,
    pub sl2: u32,
    /// Other dictionary names denoting the same module for this `m`.
    pub aliases: Vec<String>,
}

impl Label {
    pub fn display(&self) -> String {
        let h = match self.sl2 {
            0 => String::new(),
            1 => "H".to_string(),
            a => format!("S{}H", superscript(a)),
        };
        match (self.slm.as_str(), self.sl2) {
            ("Triv", 0) => "Triv".to_string(),
            ("Triv", _) => h,
            (s, 0) => s.to_string(),
            (s, _) => format!("{s} {h}"),
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display())
    }
}

pub fn superscript(a: u32) -> String {
    const D: [char; 10] = ['⁰', '¹', '²', '³', '⁴', '⁵', '⁶', '⁷', '⁸', '⁹'];
    a.to_string().chars().map(|c| D[c.to_digit(10).unwrap() as usize]).collect()
}

/// Name of an irreducible; collisions resolve to the first dictionary entry.
pub fn label(m: usize, r: &Irrep) -> Label {
    let hits: Vec<&str> = NAMES
        .iter()
        .copied()
        .filter(|n| named_dynkin(m, n).as_deref() == Some(&r.dynkin[..]))
        .collect();
    let slm = match hits.first() {
        Some(n) => n.to_string(),
        None => {
            let d: Vec<String> = r.dynkin.iter().map(|x| x.to_string()).collect();
            format!("V({})", d.join(","))
        }
    };
    Label { slm, sl2: r.sl2, aliases: hits.iter().skip(1).map(|s| s.to_string()).collect() }
}

/// A term `k · X S^a H` of a named decomposition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NamedTerm {
    pub name: &'static str,
    pub sl2: u32,
    pub multiplicity: u64,
    /// Explicit Dynkin labels, for modules written `V(a,b,..)`; overrides `name`.
    pub dynkin: Option<Vec<u32>>,
}

pub const fn term(multiplicity: u64, name: &'static str, sl2: u32) -> NamedTerm {
    NamedTerm { name, sl2, multiplicity, dynkin: None }
}

/// Resolves named terms for `sl(m)`; terms naming a zero module drop out,
/// as do explicit labels of the wrong length.
pub fn resolve_terms(m: usize, terms: &[NamedTerm]) -> BTreeMap<Irrep, u64> {
    let mut out = BTreeMap::new();
    for t in terms.iter().filter(|t| t.multiplicity > 0) {
        let d = match &t.dynkin {
            Some(d) if d.len() + 1 == m => Some(d.clone()),
            Some(_) => None,
            None => named_dynkin(m, t.name),
        };
        if let Some(d) = d {
            *out.entry(Irrep::new(t.sl2, d)).or_insert(0) += t.multiplicity;
        }
    }
    out
}

pub fn as_multiset(components: &[Component]) -> BTreeMap<Irrep, u64> {
    components.iter().map(|c| (c.irrep.clone(), c.multiplicity)).collect()
}

/// Character of the `sl(2)` module `S^a H` tensored with the trivial
/// `sl(m)` module.
pub fn sym_h(m: usize, a: u32) -> Character {
    irrep_character(&Irrep::new(a, vec![0; m - 1]))
}

/// Parses a written decomposition such as `Λ²E*S²H+(D+E*)S³H+2S⁴H` into
/// named terms. `ℂ` is read as `Triv`; a bare `H` or `S^aH` means `Triv`
/// tensored with it.
pub fn parse_formula(s: &str) -> Result<Vec<NamedTerm>, Error> {
    let chars: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
    let mut p = FormulaParser { c: &chars, i: 0 };
    let mut out = Vec::new();
    loop {
        p.term(&mut out)?;
        if p.i == chars.len() {
            return Ok(out);
        }
        p.expect('+')?;
    }
}

type Module = (&'static str, Option<Vec<u32>>);

struct FormulaParser<'a> {
    c: &'a [char],
    i: usize,
}

impl FormulaParser<'_> {
    fn err(&self, what: &str) -> Error {
        let rest: String = self.c[self.i.min(self.c.len())..].iter().collect();
        Error::Parse(format!("{what} at {rest:?}"))
    }

    fn expect(&mut self, ch: char) -> Result<(), Error> {
        if self.c.get(self.i) == Some(&ch) {
            self.i += 1;
            Ok(())
        } else {
            Err(self.err(&format!("expected {ch:?}")))
        }
    }

    fn coef(&mut self) -> u64 {
        let start = self.i;
        while self.c.get(self.i).is_some_and(|c| c.is_ascii_digit()) {
            self.i += 1;
        }
        let t: String = self.c[start..self.i].iter().collect();
        t.parse().unwrap_or(1)
    }

    /// `V(a,b,..)` written out as Dynkin labels.
    fn explicit(&mut self) -> Result<Option<Vec<u32>>, Error> {
        if !self.c[self.i..].starts_with(&['V', '(']) {
            return Ok(None);
        }
        let close = match self.c[self.i..].iter().position(|&c| c == ')') {
            Some(k) => self.i + k,
            None => return Err(self.err("unclosed Dynkin labels")),
        };
        let body: String = self.c[self.i + 2..close].iter().collect();
        let labels = body
            .split(',')
            .map(|x| x.parse::<u32>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|_| self.err("bad Dynkin labels"))?;
        self.i = close + 1;
        Ok(Some(labels))
    }

    fn module(&mut self) -> Result<Option<Module>, Error> {
        if let Some(d) = self.explicit()? {
            return Ok(Some(("", Some(d))));
        }
        Ok(self.name().map(|n| (n, None)))
    }

    fn name(&mut self) -> Option<&'static str> {
        if self.c.get(self.i) == Some(&'ℂ') {
            self.i += 1;
            return Some("Triv");
        }
        let mut names: Vec<&'static str> = NAMES.to_vec();
        names.sort_by_key(|n| std::cmp::Reverse(n.chars().count()));
        for n in names {
            let k: Vec<char> = n.chars().collect();
            if self.c[self.i..].starts_with(&k) {
                self.i += k.len();
                return Some(n);
            }
        }
        None
    }

    fn sym_power(&mut self) -> Result<u32, Error> {
        const SUP: [char; 10] = ['⁰', '¹', '²', '³', '⁴', '⁵', '⁶', '⁷', '⁸', '⁹'];
        match self.c.get(self.i) {
            Some('H') => {
                self.i += 1;
                Ok(1)
            }
            Some('S') => {
                self.i += 1;
                let mut a = 0u32;
                let mut any = false;
                while let Some(d) = self.c.get(self.i).and_then(|c| SUP.iter().position(|s| s == c)) {
                    a = 10 * a + d as u32;
                    self.i += 1;
                    any = true;
                }
                if !any {
                    return Err(self.err("expected a superscript power"));
                }
                self.expect('H')?;
                Ok(a)
            }
            _ => Ok(0),
        }
    }

    fn term(&mut self, out: &mut Vec<NamedTerm>) -> Result<(), Error> {
        let start = self.i;
        let k = self.coef();
        let mut inner: Vec<(u64, Module)> = Vec::new();
        if self.c.get(self.i) == Some(&'(') {
            self.i += 1;
            loop {
                let j = self.coef();
                let n = self.module()?.ok_or_else(|| self.err("expected a module name"))?;
                inner.push((j, n));
                if self.c.get(self.i) == Some(&')') {
                    self.i += 1;
                    break;
                }
                self.expect('+')?;
            }
        } else {
            inner.push((1, self.module()?.unwrap_or(("Triv", None))));
        }
        let before_h = self.i;
        let a = self.sym_power()?;
        if self.i == before_h && before_h == start {
            return Err(self.err("empty term"));
        }
        out.extend(inner.into_iter().map(|(j, (n, dynkin))| NamedTerm { dynkin, ..term(k * j, n, a) }));
        Ok(())
    }
}

/// Writes a decomposition grouped by the power of `H`, dictionary order
/// inside each group, e.g. `Λ²E*S²H+(E*+D)S³H`.
pub fn format_formula(m: usize, components: &[Component]) -> String {
    let mut groups: BTreeMap<u32, Vec<(usize, String, u64)>> = BTreeMap::new();
    for c in components {
        let l = label(m, &c.irrep);
        let rank = NAMES.iter().position(|n| *n == l.slm).unwrap_or(NAMES.len());
        groups.entry(c.irrep.sl2).or_default().push((rank, l.slm, c.multiplicity));
    }
    let mut parts = Vec::new();
    for (a, mut g) in groups {
        g.sort();
        let h = match a {
            0 => String::new(),
            1 => "H".to_string(),
            a => format!("S{}H", superscript(a)),
        };
        let coef = |k: u64| if k == 1 { String::new() } else { k.to_string() };
        if g.len() == 1 {
            let (_, name, k) = &g[0];
            let name = if name == "Triv" && a > 0 { "" } else { name.as_str() };
            parts.push(format!("{}{name}{h}", coef(*k)));
        } else {
            let inner: Vec<String> = g.iter().map(|(_, n, k)| format!("{}{n}", coef(*k))).collect();
            parts.push(format!("({}){h}", inner.join("+")));
        }
    }
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join("+")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn std_rep(m: usize) -> Character {
        Character::from_weights(
            m,
            (0..m).map(|i| {
                let mut v = vec![0; m];
                v[i] = 1;
                SWeight::new(0, v)
            }),
        )
    }

    #[test]
    fn formulas_parse_and_print() {
        let t = parse_formula("Λ²E*S²H+(D+E*)S³H+(Ad+Λ²E*)S⁴H+E*S⁵H").unwrap();
        assert_eq!(t.len(), 6);
        assert_eq!(t[1], term(1, "D", 3));
        let t = parse_formula("(2ℂ+Ad)+(E+4E*)H+2S⁴H+S²E*S²H").unwrap();
        assert_eq!(
            t,
            vec![term(2, "Triv", 0), term(1, "Ad", 0), term(1, "E", 1), term(4, "E*", 1), term(2, "Triv", 4), term(1, "S²E*", 2)]
        );
        assert!(parse_formula("Λ²E*S²").is_err());
        assert!(parse_formula("(D+").is_err());
        assert!(parse_formula("E++D").is_err());
        let comps: Vec<Component> = resolve_terms(4, &parse_formula("(D+E*)S³H+2S⁴H+Triv").unwrap())
            .into_iter()
            .map(|(irrep, multiplicity)| Component { name: String::new(), dim: irrep_dim(&irrep), irrep, multiplicity })
            .collect();
        assert_eq!(format_formula(4, &comps), "Triv+(E*+D)S³H+2S⁴H");
        let t = parse_formula("(E+V(0,1,2))S²H").unwrap();
        assert_eq!(t[1].dynkin, Some(vec![0, 1, 2]));
        assert_eq!(resolve_terms(4, &t).len(), 2);
        assert!(resolve_terms(4, &parse_formula("0").unwrap()).is_empty());
    }

    #[test]
    fn adjoint_of_sl4_has_three_zero_weights() {
        let d = slm_dominant_multiplicities(&[1, 0, 1]);
        assert_eq!(d.get(&vec![0, 0, 0, 0]), Some(&3));
        let c = irrep_character(&Irrep::new(0, vec![1, 0, 1]));
        assert_eq!(c.dim(), 15);
    }

    #[test]
    fn weyl_dimension_matches_freudenthal() {
        for dynkin in [vec![2, 0, 0], vec![1, 1, 2], vec![0, 1, 0], vec![3, 0, 1], vec![1, 0, 2]] {
            let r = Irrep::new(2, dynkin);
            assert_eq!(irrep_character(&r).dim() as u64, irrep_dim(&r));
        }
    }

    #[test]
    fn tensor_of_standard_and_dual() {
        let e = std_rep(4);
        let c = e.tensor(&e.dual());
        let got = as_multiset(&decompose(&c).unwrap());
        let mut want = BTreeMap::new();
        want.insert(Irrep::new(0, vec![1, 0, 1]), 1);
        want.insert(Irrep::new(0, vec![0, 0, 0]), 1);
        assert_eq!(got, want);
    }

    #[test]
    fn labels_and_degeneracies() {
        assert_eq!(label(4, &Irrep::new(4, vec![1, 0, 1])).display(), "Ad S⁴H");
        assert_eq!(label(4, &Irrep::new(0, vec![0, 0, 0])).display(), "Triv");
        assert_eq!(label(4, &Irrep::new(2, vec![0, 0, 0])).display(), "S²H");
        assert_eq!(label(4, &Irrep::new(1, vec![0, 1, 0])).display(), "Λ²E* H");
        let l = label(2, &Irrep::new(0, vec![0]));
        assert_eq!(l.slm, "Triv");
        assert_eq!(l.aliases, vec!["Λ²E*".to_string()]);
        let l = label(2, &Irrep::new(0, vec![2]));
        assert_eq!(l.slm, "S²E*");
        assert!(l.aliases.contains(&"Ad".to_string()));
        // E ≅ Λ³E* for sl(4)
        assert_eq!(label(4, &Irrep::new(0, vec![1, 0, 0])).aliases, vec!["Λ³E*".to_string()]);
        assert!(named_dynkin(2, "D").is_none());
    }

    #[test]
    fn asymmetric_character_is_rejected() {
        let mut c = Character::new(2);
        c.add_weight(SWeight::new(1, vec![0, 0]), 1);
        assert!(decompose(&c).is_err());
        let mut c = Character::new(2);
        c.add_weight(SWeight::new(0, vec![0, 0]), -1);
        assert!(decompose(&c).is_err());
    }

    #[test]
    fn exterior_square_of_standard() {
        let l2 = std_rep(4).exterior_power(2);
        let got = as_multiset(&decompose(&l2).unwrap());
        assert_eq!(got.into_iter().collect::<Vec<_>>(), vec![(Irrep::new(0, vec![0, 1, 0]), 1)]);
        let s2 = std_rep(4).symmetric_power(2);
        assert_eq!(s2.dim(), 10);
    }

    proptest! {
        #[test]
        fn decompose_inverts_sums(a in proptest::collection::vec((0u32..3, 0u32..2, 0u32..2, 0u32..2, 1u64..3), 1..4)) {
            let mut c = Character::new(4);
            let mut want: BTreeMap<Irrep, u64> = BTreeMap::new();
            for (s, x, y, z, k) in a {
                let r = Irrep::new(s, vec![x, y, z]);
                c = c.plus(&irrep_character(&r).scaled(k as i64));
                *want.entry(r).or_insert(0) += k;
            }
            let comps = decompose(&c).unwrap();
            let total: u64 = comps.iter().map(|x| x.dim * x.multiplicity).sum();
            prop_assert_eq!(total as i64, c.dim());
            prop_assert_eq!(as_multiset(&comps), want);
        }
    }
}
