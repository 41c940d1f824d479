//! Truncated power series.
//!
//! [`Series`] is an ordinary truncated series over any [`Ring`]; with
//! [`QRat`] coefficients it houses the `q`-exponential family (`e_q`,
//! `sinh_q`, `cosh_q`, `sech_q`, `tanh_q`). [`DividedPowerSeries`] stores
//! series in the basis `x^n / [n]_q!`, where products become `q`-binomial
//! convolutions and all arithmetic stays polynomial.

use num_traits::{One, Zero};

use crate::error::{domain, Result};

use super::{
    binomial, gauss_binomial, q_factorial, q_pochhammer, BiPoly, Field, QPoly, QRat, Ring,
};

/// `Σ_{k=0}^{order} c_k x^k + O(x^{order+1})`.
#[derive(Debug, Clone, PartialEq)]
pub struct Series<R> {
    coeffs: Vec<R>,
}

pub type QSeries = Series<QRat>;

impl<R: Ring> Series<R> {
    /// Pads or truncates `coeffs` to `order + 1` entries.
    pub fn new(mut coeffs: Vec<R>, order: usize) -> Self {
        coeffs.resize(order + 1, R::zero());
        Series { coeffs }
    }

    pub fn from_fn(order: usize, f: impl FnMut(usize) -> R) -> Self {
        Series {
            coeffs: (0..=order).map(f).collect(),
        }
    }

    pub fn one(order: usize) -> Self {
        Series::new(vec![R::one()], order)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> &R {
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    pub fn truncate(&self, order: usize) -> Self {
        Series::new(self.coeffs[..=order.min(self.order())].to_vec(), order)
    }

    fn common_order(&self, other: &Self) -> usize {
        self.order().min(other.order())
    }

    pub fn add(&self, other: &Self) -> Self {
        Series::from_fn(self.common_order(other), |k| {
            self.coeffs[k].clone() + &other.coeffs[k]
        })
    }

    pub fn sub(&self, other: &Self) -> Self {
        Series::from_fn(self.common_order(other), |k| {
            self.coeffs[k].clone() - &other.coeffs[k]
        })
    }

    pub fn scale(&self, c: &R) -> Self {
        Series {
            coeffs: self.coeffs.iter().map(|x| x.clone() * c).collect(),
        }
    }

    /// Cauchy product, truncated to the smaller of the two orders.
    pub fn mul(&self, other: &Self) -> Self {
        let n = self.common_order(other);
        Series::from_fn(n, |k| {
            (0..=k).fold(R::zero(), |acc, i| {
                if self.coeffs[i].is_zero() || other.coeffs[k - i].is_zero() {
                    acc
                } else {
                    acc + &(self.coeffs[i].clone() * &other.coeffs[k - i])
                }
            })
        })
    }
}

impl<F: Field> Series<F> {
    /// Multiplicative inverse to the same order; the constant term must be
    /// a unit.
    pub fn inverse(&self) -> Result<Self> {
        let inv0 = match self.coeffs[0].inv() {
            Some(v) => v,
            None => return domain("series inverse needs a nonzero constant term"),
        };
        let mut out: Vec<F> = Vec::with_capacity(self.coeffs.len());
        out.push(inv0.clone());
        for k in 1..=self.order() {
            let s = (1..=k).fold(F::zero(), |acc, i| {
                if self.coeffs[i].is_zero() {
                    acc
                } else {
                    acc + &(self.coeffs[i].clone() * &out[k - i])
                }
            });
            out.push(-(s * &inv0));
        }
        Ok(Series { coeffs: out })
    }
}

fn recip(p: BiPoly) -> QRat {
    QRat::new(QPoly::one(), QPoly::from_bipoly(&p).expect("q-only")).expect("nonzero")
}

/// `e_q(x) = Σ x^n / [n]_q!`.
pub fn e_q(order: usize) -> QSeries {
    Series::from_fn(order, |n| recip(q_factorial(n as u32)))
}

/// `sinh_q(t) = Σ t^(2n+1) / (q;q)_(2n+1)`.
pub fn sinh_q(order: usize) -> QSeries {
    Series::from_fn(order, |n| {
        if n % 2 == 1 {
            recip(q_pochhammer(n as u32))
        } else {
            QRat::zero()
        }
    })
}

/// `cosh_q(t) = Σ t^(2n) / (q;q)_(2n)`.
pub fn cosh_q(order: usize) -> QSeries {
    Series::from_fn(order, |n| {
        if n % 2 == 0 {
            recip(q_pochhammer(n as u32))
        } else {
            QRat::zero()
        }
    })
}

pub fn sech_q(order: usize) -> QSeries {
    cosh_q(order).inverse().expect("cosh_q has constant term 1")
}

pub fn tanh_q(order: usize) -> QSeries {
    sinh_q(order).mul(&sech_q(order))
}

/// Which convolution a [`DividedPowerSeries`] uses: `q`-binomial
/// (`x^n/[n]_q!`) or ordinary binomial (`x^n/n!`, the `q = 1` case).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Base {
    Q,
    One,
}

/// `Σ_n c_n x^n / [n]_q!` truncated at `order`, with polynomial
/// coefficients. Denominators never materialize: the product is
/// `(a·b)_n = Σ_k [n, k]_q a_k b_(n-k)`.
#[derive(Debug, Clone, PartialEq)]
pub struct DividedPowerSeries {
    base: Base,
    coeffs: Vec<BiPoly>,
}

impl DividedPowerSeries {
    pub fn new(base: Base, mut coeffs: Vec<BiPoly>, order: usize) -> Self {
        coeffs.resize(order + 1, BiPoly::zero());
        DividedPowerSeries { base, coeffs }
    }

    pub fn from_fn(base: Base, order: usize, f: impl FnMut(usize) -> BiPoly) -> Self {
        DividedPowerSeries {
            base,
            coeffs: (0..=order).map(f).collect(),
        }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> &BiPoly {
        &self.coeffs[k]
    }

    fn binom(&self, n: usize, k: usize) -> BiPoly {
        match self.base {
            Base::Q => gauss_binomial(n as u32, k as i64),
            Base::One => BiPoly::constant(binomial(n as u64, k as i64)),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.base, other.base);
        let n = self.order().min(other.order());
        DividedPowerSeries::from_fn(self.base, n, |k| &self.coeffs[k] - &other.coeffs[k])
    }

    pub fn scale(&self, c: &BiPoly) -> Self {
        DividedPowerSeries {
            base: self.base,
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.base, other.base);
        let n = self.order().min(other.order());
        DividedPowerSeries::from_fn(self.base, n, |m| {
            let mut acc = BiPoly::zero();
            for k in 0..=m {
                if self.coeffs[k].is_zero() || other.coeffs[m - k].is_zero() {
                    continue;
                }
                acc += &(self.binom(m, k) * &self.coeffs[k] * &other.coeffs[m - k]);
            }
            acc
        })
    }

    /// Ordinary-basis coefficient `c_n / [n]_q!` (or `c_n / n!`).
    pub fn to_ordinary(&self, k: usize) -> QRat {
        let fact = match self.base {
            Base::Q => q_factorial(k as u32),
            Base::One => BiPoly::constant(super::factorial(k as u64)),
        };
        let num = QPoly::from_bipoly(&self.coeffs[k]).expect("coefficient in q only");
        QRat::new(num, QPoly::from_bipoly(&fact).unwrap()).unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn rat(n: &[i64], d: &[i64]) -> QRat {
        QRat::new(QPoly::from_i64(n), QPoly::from_i64(d)).unwrap()
    }

    #[test]
    fn inverse_of_one() {
        let one = QSeries::one(5);
        assert_eq!(one.inverse().unwrap(), one);
    }

    #[test]
    fn sech_second_coefficient() {
        let inv = cosh_q(4).inverse().unwrap();
        // -1 / (q;q)_2 = -1 / ((1 - q)(1 - q^2))
        let expect = -recip(q_pochhammer(2));
        assert_eq!(inv.coeff(2), &expect);
        assert!(inv.coeff(1).is_zero());
        assert!(inv.coeff(3).is_zero());
    }

    #[test]
    fn zero_constant_term_is_rejected() {
        let s = QSeries::new(vec![QRat::zero(), QRat::one()], 3);
        assert!(s.inverse().is_err());
    }

    #[test]
    fn tanh_is_odd_sech_is_even() {
        let (t, s) = (tanh_q(7), sech_q(7));
        for k in 0..=7 {
            if k % 2 == 0 {
                assert!(t.coeff(k).is_zero());
            } else {
                assert!(s.coeff(k).is_zero());
            }
        }
    }

    #[test]
    fn e_q_product_is_divided_power_convolution() {
        // e_q(x)^2 has coefficients Σ_k [n,k]_q / [n]_q!
        let sq = e_q(5).mul(&e_q(5));
        let dp = DividedPowerSeries::from_fn(Base::Q, 5, |_| BiPoly::one());
        let dsq = dp.mul(&dp);
        for k in 0..=5 {
            assert_eq!(sq.coeff(k), &dsq.to_ordinary(k));
        }
    }

    #[test]
    fn divided_power_at_q_one_is_binomial() {
        let dp = DividedPowerSeries::from_fn(Base::One, 4, |_| BiPoly::one());
        let sq = dp.mul(&dp);
        for k in 0..=4 {
            assert_eq!(sq.coeff(k), &BiPoly::constant(1i64 << k));
        }
    }

    fn small_series() -> impl Strategy<Value = QSeries> {
        prop::collection::vec(
            (
                prop::collection::vec(-3i64..=3, 1..3),
                prop::collection::vec(-2i64..=2, 1..3),
            ),
            6,
        )
        .prop_map(|cs| {
            let mut coeffs: Vec<QRat> = cs
                .into_iter()
                .map(|(n, d)| {
                    let d = QPoly::from_i64(&d);
                    let d = if d.is_zero() { QPoly::one() } else { d };
                    QRat::new(QPoly::from_i64(&n), d).unwrap()
                })
                .collect();
            if coeffs[0].is_zero() {
                coeffs[0] = QRat::one();
            }
            QSeries::new(coeffs, 5)
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(20))]

        #[test]
        fn series_times_inverse_is_one(s in small_series()) {
            let inv = s.inverse().unwrap();
            prop_assert_eq!(s.mul(&inv), QSeries::one(5));
        }

        #[test]
        fn low_order_product_matches_exact_product(s in small_series(), u in small_series()) {
            let full = s.mul(&u);
            let low = s.truncate(3).mul(&u.truncate(3));
            prop_assert_eq!(low, full.truncate(3));
        }
    }

    #[test]
    fn rat_helper_is_normalized() {
        assert_eq!(rat(&[2], &[4]), rat(&[1], &[2]));
    }
}
