//! Lattices of flats of `U(n, r)` and `M_r(F_q^n)`.
//!
//! [`FamilySpec`] describes an instance symbolically: its levels, level
//! sizes and the fact that every upper interval from a rank-`i` flat is
//! again a member of the family of rank `r - i`. [`ExplicitLattice`]
//! materializes small instances for brute-force oracles.
//!
//! Proper flats have rank at most `r - 1` (subsets of size `<= r - 1`,
//! subspaces of dimension `<= r - 1`); the top is the whole ground set or
//! the whole space.

use std::fmt;

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{domain, resource, Error, Result};
use crate::exactalg::{binomial, gauss_binomial, BiPoly};

/// Largest ground set materialized for `Uniform`.
pub const UNIFORM_EXPLICIT_MAX_N: u32 = 8;
/// Largest number of elements materialized for `VectorSpace`.
pub const EXPLICIT_MAX_ELEMENTS: usize = 200;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Kind {
    Uniform,
    VectorSpace,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FamilySpec {
    pub kind: Kind,
    pub n: u32,
    pub r: u32,
}

impl FamilySpec {
    pub fn new(kind: Kind, n: u32, r: u32) -> Result<FamilySpec> {
        if r < 1 || r > n {
            return domain(format!("rank r={r} must satisfy 1 <= r <= n={n}"));
        }
        Ok(FamilySpec { kind, n, r })
    }

    pub fn uniform(n: u32, r: u32) -> Result<FamilySpec> {
        FamilySpec::new(Kind::Uniform, n, r)
    }

    pub fn vector_space(n: u32, r: u32) -> Result<FamilySpec> {
        FamilySpec::new(Kind::VectorSpace, n, r)
    }

    /// Number of flats of rank `j` in `[Z, top]` where `rank Z = i`, for
    /// `i <= j < r`; the top itself counts as 1.
    pub fn count_between(&self, i: u32, j: u32) -> BiPoly {
        if j >= self.r {
            return BiPoly::one();
        }
        match self.kind {
            Kind::Uniform => BiPoly::constant(binomial((self.n - i) as u64, (j - i) as i64)),
            Kind::VectorSpace => gauss_binomial(self.n - i, (j - i) as i64),
        }
    }

    /// Number of chains `bottom < F_1 < ... < F_m` with `rank F_k = ranks[k]`.
    /// `ranks` must be strictly increasing in `1..=r`.
    pub fn chain_count(&self, ranks: &[u32]) -> BiPoly {
        let mut prev = 0;
        let mut acc = BiPoly::one();
        for &rk in ranks {
            debug_assert!(rk > prev && rk <= self.r);
            acc = acc * self.count_between(prev, rk);
            prev = rk;
        }
        acc
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            Kind::Uniform => write!(f, "Uniform({}, {})", self.n, self.r),
            Kind::VectorSpace => write!(f, "VectorSpace({}, {})", self.n, self.r),
        }
    }
}

/// `|L_i|`: `C(n, i)` or `[n, i]_q` for `0 < i < r`, and 1 at both ends.
pub fn level_size(spec: &FamilySpec, i: u32) -> Result<BiPoly> {
    if i > spec.r {
        return domain(format!("level {i} is above the rank of {spec}"));
    }
    Ok(spec.count_between(0, i))
}

/// The family describing `[Z, top]` for any flat `Z` of rank `i`.
pub fn upper_interval(spec: &FamilySpec, i: u32) -> Result<FamilySpec> {
    if i < 1 || i + 1 > spec.r {
        return domain(format!(
            "upper interval needs 1 <= i <= r-1, got i={i} for {spec}"
        ));
    }
    FamilySpec::new(spec.kind, spec.n - i, spec.r - i)
}

/// Concrete description of one flat.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FlatLabel {
    /// Elements of `[n]`, ascending.
    Subset(Vec<u32>),
    /// Rows of the reduced row echelon basis over `F_p`.
    Subspace(Vec<Vec<u32>>),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Element {
    pub rank: u32,
    pub label: FlatLabel,
}

#[derive(Serialize, Deserialize)]
struct LatticeJson {
    spec: FamilySpec,
    field: Option<u32>,
    elements: Vec<Element>,
    covers: Vec<Vec<usize>>,
    bottom: usize,
    top: usize,
}

/// A finite ranked lattice with its cover relation and order relation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "LatticeJson", into = "LatticeJson")]
pub struct ExplicitLattice {
    spec: FamilySpec,
    field: Option<u32>,
    elements: Vec<Element>,
    /// `covers[a]` lists every `b` covering `a`.
    covers: Vec<Vec<usize>>,
    /// `above[a][b]` iff `a <= b`.
    above: Vec<Vec<bool>>,
    bottom: usize,
    top: usize,
}

impl From<ExplicitLattice> for LatticeJson {
    fn from(l: ExplicitLattice) -> LatticeJson {
        LatticeJson {
            spec: l.spec,
            field: l.field,
            elements: l.elements,
            covers: l.covers,
            bottom: l.bottom,
            top: l.top,
        }
    }
}

impl TryFrom<LatticeJson> for ExplicitLattice {
    type Error = Error;
    fn try_from(j: LatticeJson) -> Result<ExplicitLattice> {
        let len = j.elements.len();
        if j.covers.len() != len || j.bottom >= len || j.top >= len {
            return domain("lattice JSON has inconsistent sizes");
        }
        if j.covers.iter().flatten().any(|&b| b >= len) {
            return domain("cover relation refers to a missing element");
        }
        Ok(ExplicitLattice::from_covers(
            j.spec, j.field, j.elements, j.covers, j.bottom, j.top,
        ))
    }
}

impl ExplicitLattice {
    fn from_covers(
        spec: FamilySpec,
        field: Option<u32>,
        elements: Vec<Element>,
        covers: Vec<Vec<usize>>,
        bottom: usize,
        top: usize,
    ) -> ExplicitLattice {
        let len = elements.len();
        let mut order: Vec<usize> = (0..len).collect();
        order.sort_by_key(|&i| std::cmp::Reverse(elements[i].rank));
        let mut above = vec![vec![false; len]; len];
        for &a in &order {
            above[a][a] = true;
            for &b in &covers[a] {
                let row = above[b].clone();
                for (x, &v) in row.iter().enumerate() {
                    if v {
                        above[a][x] = true;
                    }
                }
            }
        }
        ExplicitLattice {
            spec,
            field,
            elements,
            covers,
            above,
            bottom,
            top,
        }
    }

    pub fn spec(&self) -> FamilySpec {
        self.spec
    }

    /// The prime the lattice was built over, if any.
    pub fn field(&self) -> Option<u32> {
        self.field
    }

    pub fn rank(&self) -> u32 {
        self.elements[self.top].rank
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[Element] {
        &self.elements
    }

    pub fn element_rank(&self, a: usize) -> u32 {
        self.elements[a].rank
    }

    pub fn covers_of(&self, a: usize) -> &[usize] {
        &self.covers[a]
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.above[a][b]
    }

    pub fn level_counts(&self) -> Vec<usize> {
        let mut counts = vec![0; self.rank() as usize + 1];
        for e in &self.elements {
            counts[e.rank as usize] += 1;
        }
        counts
    }

    /// Unique least upper bound of `a` and `b`, if it exists.
    pub fn join(&self, a: usize, b: usize) -> Option<usize> {
        let ubs: Vec<usize> = (0..self.len())
            .filter(|&x| self.leq(a, x) && self.leq(b, x))
            .collect();
        let least: Vec<usize> = ubs
            .iter()
            .copied()
            .filter(|&x| ubs.iter().all(|&y| self.leq(x, y)))
            .collect();
        (least.len() == 1).then(|| least[0])
    }

    /// Unique greatest lower bound of `a` and `b`, if it exists.
    pub fn meet(&self, a: usize, b: usize) -> Option<usize> {
        let lbs: Vec<usize> = (0..self.len())
            .filter(|&x| self.leq(x, a) && self.leq(x, b))
            .collect();
        let greatest: Vec<usize> = lbs
            .iter()
            .copied()
            .filter(|&x| lbs.iter().all(|&y| self.leq(y, x)))
            .collect();
        (greatest.len() == 1).then(|| greatest[0])
    }

    /// Maximal chains from bottom to top, counted by dynamic programming
    /// over the cover graph.
    pub fn maximal_chain_count(&self) -> BigInt {
        let mut ways: Vec<Option<BigInt>> = vec![None; self.len()];
        fn go(l: &ExplicitLattice, a: usize, ways: &mut Vec<Option<BigInt>>) -> BigInt {
            if let Some(w) = &ways[a] {
                return w.clone();
            }
            let w = if a == l.top {
                BigInt::one()
            } else {
                l.covers[a].iter().map(|&b| go(l, b, ways)).sum()
            };
            ways[a] = Some(w.clone());
            w
        }
        go(self, self.bottom, &mut ways)
    }

    /// Lengths of all maximal chains, found by walking every path.
    pub fn maximal_chain_lengths(&self) -> Vec<usize> {
        let mut out = Vec::new();
        let mut stack = vec![(self.bottom, 0usize)];
        while let Some((a, len)) = stack.pop() {
            if self.covers[a].is_empty() {
                out.push(len);
            }
            for &b in &self.covers[a] {
                stack.push((b, len + 1));
            }
        }
        out
    }

    /// `Π_levels (number of up-covers)` when every element of a level has
    /// the same number of up-covers; `None` otherwise.
    pub fn cover_product(&self) -> Option<BigInt> {
        let mut per_level: Vec<Option<usize>> = vec![None; self.rank() as usize];
        for (a, e) in self.elements.iter().enumerate() {
            if a == self.top {
                continue;
            }
            let c = self.covers[a].len();
            match per_level[e.rank as usize] {
                None => per_level[e.rank as usize] = Some(c),
                Some(d) if d != c => return None,
                _ => {}
            }
        }
        per_level.into_iter().map(|c| c.map(BigInt::from)).product()
    }
}

fn is_prime(p: u32) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

/// Materializes the lattice of flats of `spec`. `VectorSpace` needs a prime
/// `p`; `Uniform` ignores it.
pub fn build_explicit(spec: &FamilySpec, p: Option<u32>) -> Result<ExplicitLattice> {
    match spec.kind {
        Kind::Uniform => build_uniform(spec),
        Kind::VectorSpace => {
            let p =
                p.ok_or_else(|| Error::Domain("vector space lattices need a prime p".into()))?;
            if !is_prime(p) {
                return domain(format!("p={p} is not prime"));
            }
            build_vector_space(spec, p)
        }
    }
}

fn finish(
    spec: &FamilySpec,
    field: Option<u32>,
    elements: Vec<Element>,
    leq: impl Fn(usize, usize) -> bool,
) -> ExplicitLattice {
    let len = elements.len();
    let mut covers = vec![Vec::new(); len];
    for a in 0..len {
        for b in 0..len {
            if elements[b].rank == elements[a].rank + 1 && leq(a, b) {
                covers[a].push(b);
            }
        }
    }
    let top = len - 1;
    ExplicitLattice::from_covers(*spec, field, elements, covers, 0, top)
}

fn build_uniform(spec: &FamilySpec) -> Result<ExplicitLattice> {
    if spec.n > UNIFORM_EXPLICIT_MAX_N {
        return resource(format!(
            "explicit {spec} exceeds n <= {UNIFORM_EXPLICIT_MAX_N}"
        ));
    }
    let n = spec.n;
    let mut masks: Vec<u32> = (0..1u32 << n).filter(|m| m.count_ones() < spec.r).collect();
    masks.sort_by_key(|&m| (m.count_ones(), m.reverse_bits()));
    masks.push((1u32 << n) - 1);
    let elements = masks
        .iter()
        .enumerate()
        .map(|(i, &m)| Element {
            rank: if i + 1 == masks.len() {
                spec.r
            } else {
                m.count_ones()
            },
            label: FlatLabel::Subset((0..n).filter(|b| m >> b & 1 == 1).map(|b| b + 1).collect()),
        })
        .collect();
    Ok(finish(spec, None, elements, |a, b| {
        masks[a] & !masks[b] == 0
    }))
}

fn inv_mod(a: u32, p: u32) -> u32 {
    (1..p)
        .find(|&x| a * x % p == 1)
        .expect("nonzero residue mod a prime")
}

/// Rank of a list of vectors over `F_p`.
fn rank_mod_p(rows: &[Vec<u32>], p: u32) -> usize {
    let mut m: Vec<Vec<u32>> = rows.to_vec();
    let cols = m.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..m.len()).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(rank, piv);
        let inv = inv_mod(m[rank][c], p);
        for x in m[rank].iter_mut() {
            *x = *x * inv % p;
        }
        for i in 0..m.len() {
            if i != rank && m[i][c] != 0 {
                let f = m[i][c];
                for j in 0..cols {
                    m[i][j] = (m[i][j] + p * p - f * m[rank][j] % p) % p;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// All `k`-dimensional subspaces of `F_p^n` as reduced row echelon bases,
/// ordered by pivot set and then by free entries.
fn echelon_bases(n: u32, k: u32, p: u32) -> Vec<Vec<Vec<u32>>> {
    let n = n as usize;
    let k = k as usize;
    let mut out = Vec::new();
    let mut pivots = Vec::with_capacity(k);
    fn choose(
        n: usize,
        k: usize,
        start: usize,
        pivots: &mut Vec<usize>,
        p: u32,
        out: &mut Vec<Vec<Vec<u32>>>,
    ) {
        if pivots.len() == k {
            let free: Vec<(usize, usize)> = (0..k)
                .flat_map(|i| {
                    let pv = pivots[i];
                    (pv + 1..n)
                        .filter(|c| !pivots.contains(c))
                        .map(move |c| (i, c))
                })
                .collect();
            let total = (p as usize).pow(free.len() as u32);
            for code in 0..total {
                let mut rows = vec![vec![0u32; n]; k];
                for (i, &pv) in pivots.iter().enumerate() {
                    rows[i][pv] = 1;
                }
                let mut c = code;
                for &(i, col) in &free {
                    rows[i][col] = (c % p as usize) as u32;
                    c /= p as usize;
                }
                out.push(rows);
            }
            return;
        }
        for pv in start..n {
            pivots.push(pv);
            choose(n, k, pv + 1, pivots, p, out);
            pivots.pop();
        }
    }
    choose(n, k, 0, &mut pivots, p, &mut out);
    out
}

fn build_vector_space(spec: &FamilySpec, p: u32) -> Result<ExplicitLattice> {
    let pb = BigInt::from(p);
    let projected: BigInt = (0..spec.r)
        .map(|i| gauss_binomial(spec.n, i as i64).eval(&pb, &BigInt::one()))
        .sum::<BigInt>()
        + 1;
    if projected > BigInt::from(EXPLICIT_MAX_ELEMENTS) {
        return resource(format!(
            "explicit {spec} over F_{p} would have {projected} elements (bound {EXPLICIT_MAX_ELEMENTS})"
        ));
    }
    let mut bases: Vec<Vec<Vec<u32>>> = Vec::new();
    let mut ranks = Vec::new();
    for k in 0..spec.r {
        for b in echelon_bases(spec.n, k, p) {
            bases.push(b);
            ranks.push(k);
        }
    }
    bases.push(
        (0..spec.n as usize)
            .map(|i| (0..spec.n as usize).map(|j| (i == j) as u32).collect())
            .collect(),
    );
    ranks.push(spec.r);
    let elements: Vec<Element> = bases
        .iter()
        .zip(&ranks)
        .map(|(b, &rank)| Element {
            rank,
            label: FlatLabel::Subspace(b.clone()),
        })
        .collect();
    let dims: Vec<usize> = bases.iter().map(|b| b.len()).collect();
    let contained = |a: usize, b: usize| {
        let stacked: Vec<Vec<u32>> = bases[a].iter().chain(&bases[b]).cloned().collect();
        stacked.is_empty() || rank_mod_p(&stacked, p) == dims[b]
    };
    Ok(finish(spec, Some(p), elements, contained))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn u(n: u32, r: u32) -> FamilySpec {
        FamilySpec::uniform(n, r).unwrap()
    }

    fn v(n: u32, r: u32) -> FamilySpec {
        FamilySpec::vector_space(n, r).unwrap()
    }

    #[test]
    fn spec_validation() {
        assert!(FamilySpec::uniform(3, 0).is_err());
        assert!(FamilySpec::uniform(3, 4).is_err());
        assert_eq!(v(4, 2).to_string(), "VectorSpace(4, 2)");
    }

    #[test]
    fn level_sizes() {
        assert_eq!(level_size(&u(4, 3), 2).unwrap(), BiPoly::constant(6));
        assert_eq!(
            level_size(&v(4, 4), 2).unwrap(),
            BiPoly::from_q_coeffs(&[1, 1, 2, 1, 1])
        );
        for spec in [u(5, 3), v(4, 2), v(1, 1)] {
            assert_eq!(level_size(&spec, spec.r).unwrap(), BiPoly::one());
            assert_eq!(level_size(&spec, 0).unwrap(), BiPoly::one());
            assert!(level_size(&spec, spec.r + 1).is_err());
        }
    }

    #[test]
    fn upper_intervals() {
        assert_eq!(upper_interval(&u(5, 5), 2).unwrap(), u(3, 3));
        assert_eq!(upper_interval(&v(5, 4), 1).unwrap(), v(4, 3));
        assert_eq!(upper_interval(&u(5, 3), 2).unwrap().r, 1);
        assert!(upper_interval(&u(5, 3), 3).is_err());
        assert!(upper_interval(&u(5, 3), 0).is_err());
        for n in 1..=7 {
            for r in 1..=n {
                for i in 1..r {
                    assert_eq!(upper_interval(&v(n, r), i).unwrap().r, r - i);
                }
            }
        }
    }

    #[test]
    fn explicit_sizes() {
        let b3 = build_explicit(&u(3, 3), None).unwrap();
        assert_eq!(b3.len(), 8);
        assert_eq!(b3.level_counts(), [1, 3, 3, 1]);
        assert_eq!(build_explicit(&u(4, 2), None).unwrap().len(), 6);
        let v33 = build_explicit(&v(3, 3), Some(2)).unwrap();
        assert_eq!(v33.level_counts(), [1, 7, 7, 1]);
        assert_eq!(v33.field(), Some(2));
    }

    #[test]
    fn explicit_errors() {
        assert!(matches!(
            build_explicit(&u(9, 3), None),
            Err(Error::Resource(_))
        ));
        assert!(matches!(
            build_explicit(&v(3, 3), Some(4)),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            build_explicit(&v(3, 3), None),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            build_explicit(&v(4, 4), Some(3)),
            Err(Error::Resource(_))
        ));
        assert!(matches!(
            build_explicit(&v(5, 5), Some(2)),
            Err(Error::Resource(_))
        ));
    }

    fn buildable() -> Vec<(FamilySpec, Option<u32>)> {
        let mut out = Vec::new();
        for n in 1..=6 {
            for r in 1..=n {
                out.push((u(n, r), None));
            }
        }
        for (p, nmax) in [(2, 4), (3, 3)] {
            for n in 1..=nmax {
                for r in 1..=n {
                    out.push((v(n, r), Some(p)));
                }
            }
        }
        out
    }

    #[test]
    fn explicit_level_counts_match_level_sizes() {
        for (spec, p) in buildable() {
            let lat = build_explicit(&spec, p).unwrap();
            let q = BigInt::from(p.unwrap_or(1));
            for (i, &c) in lat.level_counts().iter().enumerate() {
                let expect = level_size(&spec, i as u32)
                    .unwrap()
                    .eval(&q, &BigInt::one());
                assert_eq!(BigInt::from(c), expect, "{spec} p={p:?} level {i}");
            }
        }
    }

    #[test]
    fn graded_and_chain_counts_agree() {
        for (spec, p) in buildable() {
            let lat = build_explicit(&spec, p).unwrap();
            let lengths = lat.maximal_chain_lengths();
            assert!(lengths.iter().all(|&l| l == spec.r as usize), "{spec}");
            assert_eq!(BigInt::from(lengths.len()), lat.maximal_chain_count());
            assert_eq!(
                lat.cover_product(),
                Some(lat.maximal_chain_count()),
                "{spec}"
            );
            let ranks: Vec<u32> = (1..=spec.r).collect();
            let q = BigInt::from(p.unwrap_or(1));
            assert_eq!(
                spec.chain_count(&ranks).eval(&q, &BigInt::one()),
                lat.maximal_chain_count()
            );
        }
    }

    #[test]
    fn atoms_have_joins_and_meets() {
        for (spec, p) in buildable() {
            let lat = build_explicit(&spec, p).unwrap();
            let atoms: Vec<usize> = (0..lat.len())
                .filter(|&a| lat.element_rank(a) == 1)
                .collect();
            for &a in &atoms {
                for &b in &atoms {
                    assert!(lat.join(a, b).is_some(), "{spec}");
                    assert_eq!(lat.meet(a, b), Some(if a == b { a } else { lat.bottom() }));
                }
            }
        }
    }

    #[test]
    fn order_relation_is_partial_order() {
        let lat = build_explicit(&v(3, 3), Some(3)).unwrap();
        for a in 0..lat.len() {
            assert!(lat.leq(lat.bottom(), a) && lat.leq(a, lat.top()));
            for b in 0..lat.len() {
                if a != b {
                    assert!(!(lat.leq(a, b) && lat.leq(b, a)));
                }
            }
        }
    }

    #[test]
    fn json_round_trip() {
        let lat = build_explicit(&v(2, 2), Some(2)).unwrap();
        let text = serde_json::to_string(&lat).unwrap();
        let back: ExplicitLattice = serde_json::from_str(&text).unwrap();
        assert_eq!(back, lat);
        let bad = text.replace("\"bottom\":0", "\"bottom\":99");
        assert!(serde_json::from_str::<ExplicitLattice>(&bad).is_err());
    }
}
