//! Quantum integers, Gaussian binomials and their relatives.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::BiPoly;

/// `[n]_t = 1 + t + ... + t^(n-1)`; zero for `n = 0`.
pub fn t_quantum(n: u32) -> BiPoly {
    BiPoly::from_terms((0..n).map(|k| (super::Mono::new(0, k), BigInt::one())))
}

/// `[n]_q = 1 + q + ... + q^(n-1)`.
pub fn q_integer(n: u32) -> BiPoly {
    t_quantum(n).swap_vars()
}

/// `[n]_q! = [1]_q [2]_q ... [n]_q`.
pub fn q_factorial(n: u32) -> BiPoly {
    (1..=n).fold(BiPoly::one(), |acc, i| acc * &q_integer(i))
}

/// `(q;q)_n = (1 - q)(1 - q^2)...(1 - q^n)`.
pub fn q_pochhammer(n: u32) -> BiPoly {
    (1..=n).fold(BiPoly::one(), |acc, i| {
        acc * &(BiPoly::one() - BiPoly::q_pow(i))
    })
}

/// Gaussian binomial `[n, k]_q`, zero outside `0 <= k <= n`.
///
/// Built row by row with `[n, k] = [n-1, k-1] + q^k [n-1, k]`, which keeps
/// everything in `Z[q]`.
pub fn gauss_binomial(n: u32, k: i64) -> BiPoly {
    if k < 0 || k > n as i64 {
        return BiPoly::zero();
    }
    let k = k as usize;
    let k = k.min(n as usize - k);
    let mut row: Vec<BiPoly> = vec![BiPoly::one()];
    for m in 1..=n as usize {
        let width = m.min(k) + 1;
        let mut next = Vec::with_capacity(width);
        for j in 0..width {
            let left = if j >= 1 {
                row.get(j - 1).cloned()
            } else {
                None
            };
            let right = row.get(j).map(|p| p.shift(j as u32, 0));
            let entry = match (left, right) {
                (Some(a), Some(b)) => a + b,
                (Some(a), None) => a,
                (None, Some(b)) => b,
                (None, None) => BiPoly::zero(),
            };
            next.push(entry);
        }
        row = next;
    }
    row.swap_remove(k)
}

pub fn binomial(n: u64, k: i64) -> BigInt {
    if k < 0 || k as u64 > n {
        return BigInt::zero();
    }
    let k = (k as u64).min(n - k as u64);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::Ring;

    #[test]
    fn t_quantum_values() {
        assert_eq!(t_quantum(0), BiPoly::zero());
        assert_eq!(t_quantum(1), BiPoly::one());
        assert_eq!(t_quantum(3), BiPoly::from_t_coeffs(&[1, 1, 1]));
    }

    /// Counts `k`-dimensional subspaces of `F_q^n` by their reduced echelon
    /// forms: a pivot set `p_1 < ... < p_k` (0-based) contributes
    /// `q^(sum_i (n - k - (p_i - i)))`, the number of free entries.
    fn gauss_by_echelon_forms(n: u32, k: u32) -> BiPoly {
        fn rec(n: u32, k: u32, start: u32, i: u32, acc: u32, out: &mut BiPoly) {
            if i == k {
                out.add_term(crate::exactalg::Mono::new(acc, 0), BigInt::one());
                return;
            }
            for p in start..=(n - k + i) {
                let free = (n - k) - (p - i);
                rec(n, k, p + 1, i + 1, acc + free, out);
            }
        }
        let mut out = BiPoly::zero();
        rec(n, k, 0, 0, 0, &mut out);
        out
    }

    #[test]
    fn gauss_binomial_examples() {
        assert_eq!(gauss_binomial(4, 0), BiPoly::one());
        assert_eq!(
            gauss_binomial(4, 2),
            BiPoly::from_q_coeffs(&[1, 1, 2, 1, 1])
        );
        assert_eq!(
            gauss_binomial(4, 2).eval(&1.into(), &0.into()),
            BigInt::from(6)
        );
        assert_eq!(gauss_binomial(4, 5), BiPoly::zero());
        assert_eq!(gauss_binomial(4, -1), BiPoly::zero());
        assert_eq!(gauss_binomial(0, 0), BiPoly::one());
    }

    #[test]
    fn gauss_binomial_matches_echelon_count() {
        for n in 0..=8 {
            for k in 0..=n {
                assert_eq!(
                    gauss_binomial(n, k as i64),
                    gauss_by_echelon_forms(n, k),
                    "n={n} k={k}"
                );
            }
        }
    }

    #[test]
    fn gauss_binomial_symmetry_and_pascal() {
        for n in 0..=10u32 {
            for k in 0..=n as i64 {
                assert_eq!(gauss_binomial(n, k), gauss_binomial(n, n as i64 - k));
                if n >= 1 {
                    let pascal =
                        gauss_binomial(n - 1, k - 1) + gauss_binomial(n - 1, k).shift(k as u32, 0);
                    assert_eq!(gauss_binomial(n, k), pascal, "n={n} k={k}");
                }
            }
        }
    }

    #[test]
    fn gauss_binomial_is_factorial_quotient() {
        for n in 0..=8u32 {
            for k in 0..=n {
                let quo = q_factorial(n)
                    .div_exact(&(q_factorial(k) * &q_factorial(n - k)))
                    .unwrap();
                assert_eq!(quo, gauss_binomial(n, k as i64));
            }
        }
    }

    #[test]
    fn factorial_and_pochhammer() {
        assert_eq!(q_factorial(0), BiPoly::one());
        assert_eq!(q_pochhammer(0), BiPoly::one());
        let expect = BiPoly::one() * &q_integer(2) * &q_integer(3);
        assert_eq!(q_factorial(3), expect);
        let one_minus_q = BiPoly::one() - BiPoly::q();
        for n in 0..=8 {
            assert_eq!(
                q_pochhammer(n),
                one_minus_q.pow(n) * &q_factorial(n),
                "n={n}"
            );
        }
    }

    #[test]
    fn integer_binomials() {
        assert_eq!(binomial(6, 3), BigInt::from(20));
        assert_eq!(binomial(6, 7), BigInt::zero());
        assert_eq!(factorial(5), BigInt::from(120));
    }
}
