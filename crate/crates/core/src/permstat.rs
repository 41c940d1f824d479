//! Permutations of `[n]` in one-line notation, their statistics, and
//! enumerators for the classes the Hilbert series formulas sum over.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{domain, resource, Error, Result};
use crate::exactalg::{gauss_binomial, BiPoly, Mono};

/// Largest `n` enumerated unless the caller raises it.
pub const DEFAULT_ENUM_BOUND: usize = 9;

/// A permutation in one-line notation; `images[i - 1] = σ(i)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<u8>", into = "Vec<u8>")]
pub struct Perm {
    images: Vec<u8>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct Stats {
    pub exc: u32,
    pub maj: u32,
    pub des: u32,
    pub inv: u32,
    pub fix: u32,
}

impl Perm {
    pub fn new(images: Vec<u8>) -> Result<Perm> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &v in &images {
            let v = v as usize;
            if v == 0 || v > n || seen[v - 1] {
                return domain(format!("{images:?} is not a permutation of 1..={n}"));
            }
            seen[v - 1] = true;
        }
        Ok(Perm { images })
    }

    pub fn identity(n: usize) -> Perm {
        Perm {
            images: (1..=n as u8).collect(),
        }
    }

    /// Parses compact one-line notation such as `"2413"` (only for n ≤ 9).
    pub fn parse(s: &str) -> Result<Perm> {
        let images = s
            .chars()
            .map(|c| c.to_digit(10).map(|d| d as u8))
            .collect::<Option<Vec<u8>>>()
            .ok_or_else(|| Error::Domain(format!("bad one-line permutation {s:?}")))?;
        Perm::new(images)
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn images(&self) -> &[u8] {
        &self.images
    }

    /// `σ(i)` for `1 <= i <= n`.
    pub fn apply(&self, i: usize) -> usize {
        self.images[i - 1] as usize
    }

    pub fn is_identity(&self) -> bool {
        self.images
            .iter()
            .enumerate()
            .all(|(i, &v)| v as usize == i + 1)
    }

    pub fn stats(&self) -> Stats {
        let w = &self.images;
        let mut s = Stats::default();
        for (i, &v) in w.iter().enumerate() {
            let pos = i as u32 + 1;
            if v as u32 > pos {
                s.exc += 1;
            }
            if v as u32 == pos {
                s.fix += 1;
            }
            if i + 1 < w.len() && v > w[i + 1] {
                s.des += 1;
                s.maj += pos;
            }
            s.inv += w[i + 1..].iter().filter(|&&u| u < v).count() as u32;
        }
        s
    }

    /// Reduction of `σ` along its non-fixed points: if the non-fixed points
    /// are `a_1 < ... < a_k`, the result `γ ∈ S_k` has `σ(a_i) = a_γ(i)`.
    pub fn derangement_part(&self) -> Perm {
        let moved: Vec<usize> = (1..=self.len()).filter(|&i| self.apply(i) != i).collect();
        let rank: HashMap<usize, u8> = moved
            .iter()
            .enumerate()
            .map(|(j, &a)| (a, j as u8 + 1))
            .collect();
        Perm {
            images: moved.iter().map(|&a| rank[&self.apply(a)]).collect(),
        }
    }

    pub fn is_derangement(&self) -> bool {
        self.stats().fix == 0
    }

    pub fn is_alternating(&self, convention: Convention) -> bool {
        let w = &self.images;
        w.windows(2).enumerate().all(|(i, pair)| {
            let rising = pair[0] < pair[1];
            match convention {
                Convention::UpDown => rising == (i % 2 == 0),
                Convention::DownUp => rising == (i % 2 == 1),
            }
        })
    }
}

impl TryFrom<Vec<u8>> for Perm {
    type Error = Error;
    fn try_from(v: Vec<u8>) -> Result<Perm> {
        Perm::new(v)
    }
}

impl From<Perm> for Vec<u8> {
    fn from(p: Perm) -> Vec<u8> {
        p.images
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.len() <= 9 {
            for v in &self.images {
                write!(f, "{v}")?;
            }
            Ok(())
        } else {
            write!(f, "{:?}", self.images)
        }
    }
}

/// Shape of an alternating permutation: `σ1 < σ2 > σ3 < ...` (up-down) or
/// `σ1 > σ2 < σ3 > ...` (down-up).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Convention {
    UpDown,
    DownUp,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PermClass {
    All(usize),
    Derangements(usize),
    /// Permutations with at least `k` fixed points.
    MinFixed(usize, usize),
    Alternating(usize, Convention),
}

impl PermClass {
    pub fn n(&self) -> usize {
        match *self {
            PermClass::All(n)
            | PermClass::Derangements(n)
            | PermClass::MinFixed(n, _)
            | PermClass::Alternating(n, _) => n,
        }
    }

    pub fn contains(&self, p: &Perm) -> bool {
        if p.len() != self.n() {
            return false;
        }
        match *self {
            PermClass::All(_) => true,
            PermClass::Derangements(_) => p.is_derangement(),
            PermClass::MinFixed(_, k) => p.stats().fix as usize >= k,
            PermClass::Alternating(_, c) => p.is_alternating(c),
        }
    }
}

/// Lexicographic successor in place; `false` once the last permutation
/// has been passed.
fn next_permutation(w: &mut [u8]) -> bool {
    let Some(i) = w.windows(2).rposition(|p| p[0] < p[1]) else {
        return false;
    };
    let j = w.iter().rposition(|&x| x > w[i]).unwrap();
    w.swap(i, j);
    w[i + 1..].reverse();
    true
}

/// All permutations of `[n]` in lexicographic order.
struct Lex {
    current: Option<Vec<u8>>,
}

impl Iterator for Lex {
    type Item = Perm;
    fn next(&mut self) -> Option<Perm> {
        let cur = self.current.take()?;
        let mut succ = cur.clone();
        if next_permutation(&mut succ) {
            self.current = Some(succ);
        }
        Some(Perm { images: cur })
    }
}

/// Streams the members of `class` in lexicographic order.
pub fn enumerate(class: PermClass, bound: usize) -> Result<impl Iterator<Item = Perm>> {
    let n = class.n();
    if n > bound {
        return resource(format!(
            "enumerating permutations of size {n} exceeds the bound {bound}"
        ));
    }
    if n > u8::MAX as usize {
        return resource(format!("permutation size {n} is not supported"));
    }
    let lex = Lex {
        current: Some((1..=n as u8).collect()),
    };
    Ok(lex.filter(move |p| class.contains(p)))
}

/// Monomial attached to each permutation in a statistic sum.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Weight {
    /// `q^(maj - exc) t^exc`
    MajExc,
    /// `q^(maj - exc) t^(c - exc)`
    MajExcReflected(u32),
    /// `q^(maj - exc) t^(exc - s)`
    MajExcShifted(u32),
    /// `t^exc`
    Exc,
    /// `t^(exc - s)`
    ExcShifted(u32),
    /// `q^exc`
    QExc,
    /// `q^(maj - exc)`
    MajMinusExc,
}

impl Weight {
    /// `(q-exponent, t-exponent)`; `None` if an exponent would be negative.
    pub fn exponents(&self, s: &Stats) -> Option<(u32, u32)> {
        let maj_exc = || s.maj.checked_sub(s.exc);
        match *self {
            Weight::MajExc => Some((maj_exc()?, s.exc)),
            Weight::MajExcReflected(c) => Some((maj_exc()?, c.checked_sub(s.exc)?)),
            Weight::MajExcShifted(sh) => Some((maj_exc()?, s.exc.checked_sub(sh)?)),
            Weight::Exc => Some((0, s.exc)),
            Weight::ExcShifted(sh) => Some((0, s.exc.checked_sub(sh)?)),
            Weight::QExc => Some((s.exc, 0)),
            Weight::MajMinusExc => Some((maj_exc()?, 0)),
        }
    }
}

/// Exact sum of `weight` over every member of `class`.
pub fn statistic_sum(class: PermClass, weight: Weight, bound: usize) -> Result<BiPoly> {
    sum_where(class, weight, bound, |_| true)
}

/// [`statistic_sum`] restricted to members satisfying `keep`.
pub fn sum_where(
    class: PermClass,
    weight: Weight,
    bound: usize,
    keep: impl Fn(&Stats) -> bool,
) -> Result<BiPoly> {
    let mut counts: BTreeMap<Mono, u64> = BTreeMap::new();
    for p in enumerate(class, bound)? {
        let s = p.stats();
        if !keep(&s) {
            continue;
        }
        let (qe, te) = weight.exponents(&s).ok_or_else(|| {
            Error::Domain(format!("weight {weight:?} has a negative exponent at {p}"))
        })?;
        *counts.entry(Mono::new(qe, te)).or_default() += 1;
    }
    Ok(BiPoly::from_terms(
        counts.into_iter().map(|(m, c)| (m, BigInt::from(c))),
    ))
}

/// `Σ_{dp(σ) = γ} q^maj(σ)` for every derangement part `γ` occurring in
/// `S_n`, keyed by `γ`.
pub fn maj_sums_by_derangement_part(n: usize, bound: usize) -> Result<BTreeMap<Perm, BiPoly>> {
    let mut out: BTreeMap<Perm, BTreeMap<u32, u64>> = BTreeMap::new();
    for p in enumerate(PermClass::All(n), bound)? {
        *out.entry(p.derangement_part())
            .or_default()
            .entry(p.stats().maj)
            .or_default() += 1;
    }
    Ok(out
        .into_iter()
        .map(|(g, m)| {
            let poly = BiPoly::from_terms(
                m.into_iter()
                    .map(|(e, c)| (Mono::new(e, 0), BigInt::from(c))),
            );
            (g, poly)
        })
        .collect())
}

/// Compares `Σ_{dp(σ) = γ} q^maj(σ)` with `q^maj(γ) [n, k]_q` for every
/// derangement `γ` of size `k <= n`. Returns one line per mismatch.
pub fn wachs_mismatches(n: usize, bound: usize) -> Result<Vec<String>> {
    let sums = maj_sums_by_derangement_part(n, bound)?;
    let mut bad = Vec::new();
    for k in 0..=n {
        for gamma in enumerate(PermClass::Derangements(k), bound)? {
            let lhs = sums.get(&gamma).cloned().unwrap_or_default();
            let rhs = gauss_binomial(n as u32, k as i64).shift(gamma.stats().maj, 0);
            if lhs != rhs {
                bad.push(format!("n={n} γ={gamma}: {lhs} vs {rhs}"));
            }
        }
    }
    Ok(bad)
}

/// Checks `[n, n-i]_q Σ_{D_(n-i), exc = k} q^(maj-exc)` against the same sum
/// over `σ ∈ S_n` with `exc = k` and exactly `i` fixed points.
pub fn fixed_point_refinement_mismatches(n: usize, bound: usize) -> Result<Vec<String>> {
    let mut by_fix_exc: BTreeMap<(u32, u32), BiPoly> = BTreeMap::new();
    for p in enumerate(PermClass::All(n), bound)? {
        let s = p.stats();
        by_fix_exc
            .entry((s.fix, s.exc))
            .or_default()
            .add_term(Mono::new(s.maj - s.exc, 0), BigInt::from(1));
    }
    let mut bad = Vec::new();
    for i in 0..=n {
        for k in 0..n.max(1) {
            let der = sum_where(
                PermClass::Derangements(n - i),
                Weight::MajMinusExc,
                bound,
                |s| s.exc as usize == k,
            )?;
            let lhs = der * gauss_binomial(n as u32, (n - i) as i64);
            let rhs = by_fix_exc
                .get(&(i as u32, k as u32))
                .cloned()
                .unwrap_or_default();
            if lhs != rhs {
                bad.push(format!("n={n} i={i} k={k}: {lhs} vs {rhs}"));
            }
        }
    }
    Ok(bad)
}
