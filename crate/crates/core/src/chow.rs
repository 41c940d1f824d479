//! Hilbert series of Chow rings of `U(n, r)` and `M_r(F_q^n)`.
//!
//! Four routes produce the same polynomial: the chain sum over rank
//! tuples, the upper-interval recurrence, the closed form through
//! `A_n(q, t)` minus permutation sums, and a count of basis monomials on an
//! explicit lattice. The kernel series `Δ_{n,r}` and the `q`-derangement
//! numbers that assemble it live here as well.

use std::collections::HashMap;
use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{domain, resource, Result};
use crate::exactalg::{gauss_binomial, t_quantum, BiPoly};
use crate::flats::{level_size, upper_interval, ExplicitLattice, FamilySpec, Kind};
use crate::permstat::{statistic_sum, sum_where, PermClass, Weight};
use crate::qeuler::q_eulerian_by_recurrence;

/// Largest explicit lattice the monomial oracle walks.
pub const ORACLE_MAX_ELEMENTS: usize = 256;

/// Graded dimensions `dim A^k` for `k = 0..r-1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GradedDims {
    #[serde(serialize_with = "crate::exactalg::serialize_decimals")]
    pub dims: Vec<BigInt>,
}

impl GradedDims {
    /// Reads the dimensions off `h` with `q` fixed to a number.
    pub fn from_series(h: &BiPoly, q: u32, r: u32) -> GradedDims {
        let at_q = h.eval_q(&BigInt::from(q));
        GradedDims {
            dims: (0..r).map(|k| at_q.coeff(0, k)).collect(),
        }
    }

    pub fn is_palindromic(&self) -> bool {
        self.dims.iter().eq(self.dims.iter().rev())
    }

    pub fn to_bipoly(&self) -> BiPoly {
        BiPoly::from_t_coeffs(&self.dims)
    }
}

/// Specializes `q` to 1 for the uniform family.
fn specialize(spec: &FamilySpec, p: BiPoly) -> BiPoly {
    match spec.kind {
        Kind::Uniform => p.eval_q(&BigInt::one()),
        Kind::VectorSpace => p,
    }
}

/// `1 + Σ_{0 < r_1 < ... < r_m <= r} Π_i t [r_i - r_(i-1) - 1]_t` weighted by
/// the number of chains of flats with that rank profile.
pub fn hilbert_chain_sum(spec: &FamilySpec) -> BiPoly {
    let r = spec.r;
    let mut h = BiPoly::one();
    for mask in 1u64..(1u64 << r) {
        let ranks: Vec<u32> = (0..r)
            .filter(|b| mask >> b & 1 == 1)
            .map(|b| b + 1)
            .collect();
        let mut prev = 0;
        let mut weight = BiPoly::one();
        for &rk in &ranks {
            if rk - prev < 2 {
                weight = BiPoly::zero();
                break;
            }
            weight = weight * t_quantum(rk - prev - 1).shift(0, 1);
            prev = rk;
        }
        if !weight.is_zero() {
            h += &(weight * spec.chain_count(&ranks));
        }
    }
    h
}

fn recurrence_cache() -> &'static RwLock<HashMap<FamilySpec, BiPoly>> {
    static CACHE: OnceLock<RwLock<HashMap<FamilySpec, BiPoly>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// `H = [r]_t + t Σ_{i=2}^{r-1} |L_i| [i-1]_t H([Z_i, top])`, memoized.
pub fn hilbert_recurrence(spec: &FamilySpec) -> BiPoly {
    if let Some(h) = recurrence_cache().read().unwrap().get(spec) {
        return h.clone();
    }
    let mut h = t_quantum(spec.r);
    for i in 2..spec.r {
        let upper = upper_interval(spec, i).expect("2 <= i <= r-1");
        let level = level_size(spec, i).expect("i <= r");
        h += &(level * t_quantum(i - 1).shift(0, 1) * hilbert_recurrence(&upper));
    }
    recurrence_cache().write().unwrap().insert(*spec, h.clone());
    h
}

/// Full-rank series `h_n = 1 + t Σ_{i=1}^n [i-1]_t |L_i| h_(n-i)` with
/// `h_0 = 1`, i.e. `U(n, n)` or `M_n(F_q^n)`.
pub fn hilbert_full_rank(kind: Kind, n: u32) -> BiPoly {
    let mut hs = vec![BiPoly::one()];
    for m in 1..=n {
        let mut h = BiPoly::zero();
        for i in 1..=m {
            let level = match kind {
                Kind::Uniform => BiPoly::constant(crate::exactalg::binomial(m as u64, i as i64)),
                Kind::VectorSpace => gauss_binomial(m, i as i64),
            };
            h += &(t_quantum(i - 1) * level * &hs[(m - i) as usize]);
        }
        hs.push(BiPoly::one() + h.shift(0, 1));
    }
    hs.swap_remove(n as usize)
}

/// `Δ_{n,r}(t) = Σ_{σ ∈ S_n, fix >= n-r} q^(maj-exc) t^(r-exc)` for
/// `1 <= r <= n-1`: the difference `H(M_{r+1}) - H(M_r)`.
pub fn delta_series(n: u32, r: u32, bound: usize) -> Result<BiPoly> {
    if r < 1 || r >= n {
        return domain(format!("delta series needs 1 <= r <= n-1, got n={n} r={r}"));
    }
    statistic_sum(
        PermClass::MinFixed(n as usize, (n - r) as usize),
        Weight::MajExcReflected(r),
        bound,
    )
}

/// `A_n(q, t) - Σ_{j=r}^{n-1} Δ_{n,j}(t)`, with `q = 1` for `Uniform`.
pub fn hilbert_closed_form(spec: &FamilySpec, bound: usize) -> Result<BiPoly> {
    let mut h = q_eulerian_by_recurrence(spec.n as usize);
    for j in spec.r..spec.n {
        h -= &delta_series(spec.n, j, bound)?;
    }
    Ok(specialize(spec, h))
}

/// `D_{n,k} = Σ_{σ ∈ D_n, exc = n-k} q^(maj-exc)`.
pub fn q_derangement_number(n: u32, k: u32, bound: usize) -> Result<BiPoly> {
    if k > n {
        return Ok(BiPoly::zero());
    }
    let target = n - k;
    sum_where(
        PermClass::Derangements(n as usize),
        Weight::MajMinusExc,
        bound,
        |s| s.exc == target,
    )
}

/// `a^(k)_{n,r} = Σ_{i=0}^{r} [n, r-i]_q D_{r-i, k-i}`.
pub fn kernel_coefficient(n: u32, r: u32, k: u32, bound: usize) -> Result<BiPoly> {
    let mut acc = BiPoly::zero();
    for i in 0..=r.min(k) {
        let d = q_derangement_number(r - i, k - i, bound)?;
        if !d.is_zero() {
            acc += &(gauss_binomial(n, (r - i) as i64) * d);
        }
    }
    Ok(acc)
}

/// `Σ_k a^(k)_{n,r} t^k`, which equals [`delta_series`].
pub fn delta_by_derangements(n: u32, r: u32, bound: usize) -> Result<BiPoly> {
    if r < 1 || r >= n {
        return domain(format!("delta series needs 1 <= r <= n-1, got n={n} r={r}"));
    }
    let coeffs = (0..=r)
        .map(|k| kernel_coefficient(n, r, k, bound))
        .collect::<Result<Vec<_>>>()?;
    Ok(BiPoly::from_t_coeff_polys(&coeffs))
}

/// Counts monomials `x_{F_1}^{a_1} ... x_{F_l}^{a_l}` over descending chains
/// `F_1 > ... > F_l > bottom` of flats with
/// `1 <= a_i <= rk F_i - rk F_(i+1) - 1`, grouped by degree.
pub fn basis_monomial_oracle(lat: &ExplicitLattice) -> Result<GradedDims> {
    if lat.len() > ORACLE_MAX_ELEMENTS {
        return resource(format!(
            "lattice with {} elements exceeds the oracle bound {ORACLE_MAX_ELEMENTS}",
            lat.len()
        ));
    }
    let r = lat.rank();
    let mut dims = vec![BigInt::zero(); r as usize];
    dims[0] += 1;
    let below: Vec<Vec<usize>> = (0..lat.len())
        .map(|f| {
            (0..lat.len())
                .filter(|&g| g != f && lat.leq(g, f))
                .collect()
        })
        .collect();

    // Chooses the exponent of `f` together with the next flat `g` below it.
    fn descend(
        lat: &ExplicitLattice,
        below: &[Vec<usize>],
        f: usize,
        degree: usize,
        dims: &mut [BigInt],
    ) {
        for &g in &below[f] {
            let gap = lat.element_rank(f) - lat.element_rank(g);
            for a in 1..gap as usize {
                if g == lat.bottom() {
                    dims[degree + a] += 1;
                } else {
                    descend(lat, below, g, degree + a, dims);
                }
            }
        }
    }

    for f in (0..lat.len()).filter(|&f| f != lat.bottom()) {
        descend(lat, &below, f, 0, &mut dims);
    }
    Ok(GradedDims { dims })
}

/// Selects one of the symbolic routes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Chain,
    Recurrence,
    Closed,
}

pub fn hilbert(spec: &FamilySpec, method: Method, bound: usize) -> Result<BiPoly> {
    match method {
        Method::Chain => Ok(hilbert_chain_sum(spec)),
        Method::Recurrence => Ok(hilbert_recurrence(spec)),
        Method::Closed => hilbert_closed_form(spec, bound),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::flats::build_explicit;

    const B: usize = 9;

    fn u(n: u32, r: u32) -> FamilySpec {
        FamilySpec::uniform(n, r).unwrap()
    }

    fn v(n: u32, r: u32) -> FamilySpec {
        FamilySpec::vector_space(n, r).unwrap()
    }

    fn a3() -> BiPoly {
        BiPoly::one() + BiPoly::from_q_coeffs(&[2, 1, 1]) * BiPoly::t() + BiPoly::t_pow(2)
    }

    fn all_specs(n_max: u32) -> Vec<FamilySpec> {
        (1..=n_max)
            .flat_map(|n| (1..=n).flat_map(move |r| [u(n, r), v(n, r)]))
            .collect()
    }

    #[test]
    fn chain_sum_examples() {
        assert_eq!(
            hilbert_chain_sum(&u(3, 3)),
            BiPoly::from_t_coeffs(&[1, 4, 1])
        );
        assert_eq!(hilbert_chain_sum(&v(3, 2)), BiPoly::from_t_coeffs(&[1, 1]));
        assert_eq!(hilbert_chain_sum(&v(3, 3)), a3());
    }

    #[test]
    fn recurrence_examples() {
        for n in 1..=5 {
            assert_eq!(hilbert_recurrence(&u(n, 1)), BiPoly::one());
        }
        assert_eq!(
            hilbert_recurrence(&u(4, 4)),
            BiPoly::from_t_coeffs(&[1, 11, 11, 1])
        );
        assert_eq!(
            hilbert_recurrence(&v(4, 4)),
            crate::qeuler::q_eulerian_by_definition(4, B).unwrap()
        );
    }

    #[test]
    fn closed_form_examples() {
        assert_eq!(
            hilbert_closed_form(&u(3, 2), B).unwrap(),
            BiPoly::from_t_coeffs(&[1, 1])
        );
        assert_eq!(
            hilbert_closed_form(&v(3, 2), B).unwrap(),
            BiPoly::from_t_coeffs(&[1, 1])
        );
        for n in 1..=6 {
            assert_eq!(
                hilbert_closed_form(&v(n, n), B).unwrap(),
                q_eulerian_by_recurrence(n as usize)
            );
        }
        assert!(hilbert_closed_form(&v(10, 3), 9).is_err());
        assert!(hilbert_closed_form(&v(10, 10), 9).is_ok());
    }

    #[test]
    fn full_rank_route() {
        for n in 0..=7 {
            assert_eq!(
                hilbert_full_rank(Kind::VectorSpace, n),
                q_eulerian_by_recurrence(n as usize)
            );
            assert_eq!(
                hilbert_full_rank(Kind::Uniform, n),
                crate::qeuler::classical_eulerian(n as usize)
            );
        }
    }

    #[test]
    fn routes_agree() {
        for spec in all_specs(6) {
            let chain = hilbert_chain_sum(&spec);
            assert_eq!(hilbert_recurrence(&spec), chain, "{spec}");
            assert_eq!(hilbert_closed_form(&spec, B).unwrap(), chain, "{spec}");
            assert_eq!(hilbert(&spec, Method::Chain, B).unwrap(), chain);
        }
    }

    #[test]
    fn palindromic_of_degree_r_minus_one() {
        for spec in all_specs(7) {
            let h = hilbert_recurrence(&spec);
            assert_eq!(h.degree_t(), Some(spec.r - 1), "{spec}");
            assert!(h.is_t_palindromic(spec.r - 1), "{spec}");
            assert_eq!(h.t_coeff(0), BiPoly::one());
        }
    }

    #[test]
    fn oracle_examples() {
        let dims = |spec: FamilySpec, p| {
            basis_monomial_oracle(&build_explicit(&spec, p).unwrap()).unwrap()
        };
        let ints = |xs: &[i64]| GradedDims {
            dims: xs.iter().map(|&x| BigInt::from(x)).collect(),
        };
        assert_eq!(dims(u(3, 3), None), ints(&[1, 4, 1]));
        assert_eq!(dims(u(4, 2), None), ints(&[1, 1]));
        assert_eq!(dims(v(3, 3), Some(2)), ints(&[1, 8, 1]));
        assert_eq!(dims(u(2, 1), None), ints(&[1]));
    }

    #[test]
    fn oracle_matches_symbolic_series() {
        let mut cases: Vec<(FamilySpec, Option<u32>)> = Vec::new();
        for n in 1..=6 {
            for r in 1..=n {
                cases.push((u(n, r), None));
            }
        }
        for (p, nmax) in [(2, 4), (3, 3)] {
            for n in 1..=nmax {
                for r in 1..=n {
                    cases.push((v(n, r), Some(p)));
                }
            }
        }
        for (spec, p) in cases {
            let oracle = basis_monomial_oracle(&build_explicit(&spec, p).unwrap()).unwrap();
            let symbolic =
                GradedDims::from_series(&hilbert_chain_sum(&spec), p.unwrap_or(1), spec.r);
            assert_eq!(oracle, symbolic, "{spec} p={p:?}");
            assert!(oracle.is_palindromic());
        }
    }

    #[test]
    fn delta_examples() {
        let d32 = BiPoly::t_pow(2) + BiPoly::from_q_coeffs(&[1, 1, 1]) * BiPoly::t();
        assert_eq!(delta_series(3, 2, B).unwrap(), d32);
        assert_eq!(delta_series(3, 1, B).unwrap(), BiPoly::t());
        assert!(delta_series(3, 3, B).is_err());
        assert!(delta_series(3, 0, B).is_err());
        for n in 2..=6u32 {
            for r in 1..n {
                let d = delta_series(n, r, B).unwrap();
                assert_eq!(d.t_coeff(r), BiPoly::one());
                let count = crate::permstat::enumerate(
                    PermClass::MinFixed(n as usize, (n - r) as usize),
                    B,
                )
                .unwrap()
                .count();
                assert_eq!(d.eval(&BigInt::one(), &BigInt::one()), BigInt::from(count));
            }
        }
    }

    #[test]
    fn delta_is_a_difference_of_series() {
        for n in 2..=6 {
            for r in 1..n {
                let diff = hilbert_chain_sum(&v(n, r + 1)) - hilbert_chain_sum(&v(n, r));
                assert_eq!(delta_series(n, r, B).unwrap(), diff, "n={n} r={r}");
                assert_eq!(delta_by_derangements(n, r, B).unwrap(), diff, "n={n} r={r}");
            }
        }
    }

    #[test]
    fn derangement_numbers() {
        assert_eq!(q_derangement_number(3, 1, B).unwrap(), BiPoly::one());
        assert_eq!(q_derangement_number(3, 2, B).unwrap(), BiPoly::one());
        assert_eq!(q_derangement_number(0, 0, B).unwrap(), BiPoly::one());
        for n in 1..=6 {
            assert!(q_derangement_number(n, 0, B).unwrap().is_zero());
        }
        assert!(q_derangement_number(3, 4, B).unwrap().is_zero());
    }

    #[test]
    fn telescoping_to_eulerian() {
        for n in 1..=6u32 {
            for r in 1..=n {
                let mut acc = hilbert_chain_sum(&v(n, r));
                for j in r..n {
                    acc += &delta_series(n, j, B).unwrap();
                }
                assert_eq!(acc, q_eulerian_by_recurrence(n as usize), "n={n} r={r}");
            }
        }
    }

    #[test]
    fn full_rank_dims_are_q_eulerian_numbers() {
        for n in 1..=6u32 {
            let h = hilbert_chain_sum(&v(n, n));
            for k in 0..n {
                assert_eq!(
                    h.t_coeff(k),
                    crate::qeuler::q_eulerian_number(n as usize, k)
                );
            }
        }
    }

    #[test]
    fn corank_one_is_a_derangement_sum() {
        for n in 2..=6u32 {
            let der = PermClass::Derangements(n as usize);
            let q_sum = statistic_sum(der, Weight::MajExcShifted(1), B).unwrap();
            let t_sum = statistic_sum(der, Weight::ExcShifted(1), B).unwrap();
            assert_eq!(hilbert_chain_sum(&v(n, n - 1)), q_sum, "n={n}");
            assert_eq!(hilbert_chain_sum(&u(n, n - 1)), t_sum, "n={n}");
        }
    }
}
