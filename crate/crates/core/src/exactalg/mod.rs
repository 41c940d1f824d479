//! Exact arithmetic: big-integer polynomials in `q` and `t`, rational
//! functions in `q`, truncated power series and determinants.

mod bipoly;
mod det;
mod qanalog;
mod qpoly;
mod series;

use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

pub use bipoly::{BiPoly, Mono, PolyJson, TermJson};

/// Serializes big integers as decimal strings, as in polynomial JSON.
pub fn serialize_decimals<S: serde::Serializer>(
    xs: &[num_bigint::BigInt],
    s: S,
) -> Result<S::Ok, S::Error> {
    s.collect_seq(xs.iter().map(|x| x.to_string()))
}
pub use det::{det_fraction_free, det_rational};
pub use qanalog::{
    binomial, factorial, gauss_binomial, q_factorial, q_integer, q_pochhammer, t_quantum,
};
pub use qpoly::{QPoly, QRat};
pub use series::{cosh_q, e_q, sech_q, sinh_q, tanh_q, Base, DividedPowerSeries, QSeries, Series};

/// Commutative ring with exact division where it exists.
pub trait Ring:
    Clone
    + PartialEq
    + Debug
    + Zero
    + One
    + Neg<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
{
    /// The quotient `self / rhs` if `rhs` divides `self` exactly.
    fn div_exact(&self, rhs: &Self) -> Option<Self>;
}

pub trait Field: Ring {
    fn inv(&self) -> Option<Self>;
}

impl Ring for BigInt {
    fn div_exact(&self, rhs: &Self) -> Option<Self> {
        if rhs.is_zero() {
            return None;
        }
        let (quo, rem) = self.div_rem(rhs);
        rem.is_zero().then_some(quo)
    }
}
