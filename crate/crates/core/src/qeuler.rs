//! Eulerian and `maj - exc` q-Eulerian polynomials by definition, by
//! recurrence and through their (q-)exponential generating functions.

use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{domain, Result};
use crate::exactalg::{binomial, gauss_binomial, Base, BiPoly, DividedPowerSeries};
use crate::permstat::{statistic_sum, PermClass, Weight};

/// `A_n(q, t) = Σ_{σ ∈ S_n} q^(maj - exc) t^exc` by enumerating `S_n`.
pub fn q_eulerian_by_definition(n: usize, bound: usize) -> Result<BiPoly> {
    statistic_sum(PermClass::All(n), Weight::MajExc, bound)
}

fn table_cache() -> &'static RwLock<Vec<BiPoly>> {
    static CACHE: OnceLock<RwLock<Vec<BiPoly>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(vec![BiPoly::one()]))
}

/// `Π_{i=1}^{m} (t - q^i)`
fn t_minus_q_powers(m: usize) -> BiPoly {
    (1..=m as u32).fold(BiPoly::one(), |acc, i| {
        acc * (BiPoly::t() - BiPoly::q_pow(i))
    })
}

fn extend_table(table: &mut Vec<BiPoly>, n_max: usize) {
    while table.len() <= n_max {
        let n = table.len();
        let mut h = BiPoly::zero();
        for (k, hk) in table.iter().enumerate() {
            h += &(gauss_binomial(n as u32, k as i64) * hk * t_minus_q_powers(n - 1 - k));
        }
        table.push(h);
    }
}

/// `A_n(q, t)` from `h_n = Σ_{k<n} [n, k]_q h_k Π_{i=1}^{n-1-k} (t - q^i)`,
/// `h_0 = 1`. Results are cached process-wide.
pub fn q_eulerian_by_recurrence(n: usize) -> BiPoly {
    if let Some(p) = table_cache().read().unwrap().get(n) {
        return p.clone();
    }
    let mut table = table_cache().write().unwrap();
    extend_table(&mut table, n);
    table[n].clone()
}

/// `⟨n, j⟩_q`, the coefficient of `t^j` in `A_n(q, t)`.
pub fn q_eulerian_number(n: usize, j: u32) -> BiPoly {
    q_eulerian_by_recurrence(n).t_coeff(j)
}

/// `A_0, ..., A_{n_max}` as `q`-`t` polynomials.
#[derive(Debug, Clone, PartialEq)]
pub struct EulerianTable {
    polys: Vec<BiPoly>,
}

impl EulerianTable {
    pub fn new(n_max: usize) -> Self {
        q_eulerian_by_recurrence(n_max);
        let polys = table_cache().read().unwrap()[..=n_max].to_vec();
        EulerianTable { polys }
    }

    pub fn n_max(&self) -> usize {
        self.polys.len() - 1
    }

    pub fn get(&self, n: usize) -> &BiPoly {
        &self.polys[n]
    }

    pub fn polys(&self) -> &[BiPoly] {
        &self.polys
    }

    /// Same table with `q = 1`.
    pub fn at_q_one(&self) -> Vec<BiPoly> {
        self.polys
            .iter()
            .map(|p| p.eval_q(&BigInt::one()))
            .collect()
    }
}

/// Classical `A_n(t)` from `A_n = Σ_{k<n} C(n, k) A_k (t - 1)^(n-1-k)`.
pub fn classical_eulerian(n: usize) -> BiPoly {
    let mut table = vec![BiPoly::one()];
    let t_minus_one = BiPoly::t() - BiPoly::one();
    for m in 1..=n {
        let mut a = BiPoly::zero();
        for (k, ak) in table.iter().enumerate() {
            let c = binomial(m as u64, k as i64);
            a += &(ak.scale(&c) * t_minus_one.pow((m - 1 - k) as u32));
        }
        table.push(a);
    }
    table.swap_remove(n)
}

/// Compares [`classical_eulerian`] with `Σ_{S_n} t^exc`.
pub fn classical_recurrence_check(n: usize, bound: usize) -> Result<bool> {
    Ok(classical_eulerian(n) == statistic_sum(PermClass::All(n), Weight::Exc, bound)?)
}

/// Coefficientwise comparison of `A(x) (t e(x) - e(tx))` with `(t - 1) e(x)`
/// in the divided-power basis `x^n / [n]_q!` (or `x^n / n!` at `q = 1`),
/// where `e` is `e_q` (resp. `exp`). Returns one line per mismatching degree.
pub fn egf_mismatches(base: Base, n_max: usize, order: usize) -> Result<Vec<String>> {
    if order < n_max {
        return domain(format!("series order {order} is below n_max {n_max}"));
    }
    let table = EulerianTable::new(order);
    let polys = match base {
        Base::Q => table.polys().to_vec(),
        Base::One => table.at_q_one(),
    };
    let a = DividedPowerSeries::new(base, polys, order);
    let e = DividedPowerSeries::from_fn(base, order, |_| BiPoly::one());
    let e_tx = DividedPowerSeries::from_fn(base, order, |k| BiPoly::t_pow(k as u32));
    let t_minus_one = BiPoly::t() - BiPoly::one();
    let lhs = a.mul(&e.scale(&BiPoly::t()).sub(&e_tx));
    let rhs = e.scale(&t_minus_one);
    Ok((0..=n_max)
        .filter(|&k| lhs.coeff(k) != rhs.coeff(k))
        .map(|k| format!("x^{k}: {} vs {}", lhs.coeff(k), rhs.coeff(k)))
        .collect())
}

/// True iff the q-exponential generating function identity holds through
/// `x^n_max` with `q` symbolic.
pub fn egf_identity_check(n_max: usize, order: usize) -> Result<bool> {
    Ok(egf_mismatches(Base::Q, n_max, order)?.is_empty())
}

/// The `q = 1` identity `Σ A_n(t) z^n/n! = (t - 1)/(t - e^{z(t-1)})`, checked
/// as `A(z) (t - e^{(t-1)z}) = t - 1` through `z^n_max`.
pub fn egf_identity_check_classical(n_max: usize, order: usize) -> Result<bool> {
    if order < n_max {
        return domain(format!("series order {order} is below n_max {n_max}"));
    }
    let t_minus_one = BiPoly::t() - BiPoly::one();
    let a = DividedPowerSeries::from_fn(Base::One, order, classical_eulerian);
    let denom = DividedPowerSeries::from_fn(Base::One, order, |k| {
        let shifted = t_minus_one.pow(k as u32);
        if k == 0 {
            BiPoly::t() - shifted
        } else {
            -shifted
        }
    });
    let lhs = a.mul(&denom);
    Ok((0..=n_max).all(|k| {
        let expect = if k == 0 {
            t_minus_one.clone()
        } else {
            BiPoly::zero()
        };
        lhs.coeff(k) == &expect
    }))
}
