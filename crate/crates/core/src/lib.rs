//! Exact Hilbert series and Charney–Davis quantities of Chow rings of
//! uniform matroids `U(n, r)` and of finite vector space matroids
//! `M_r(F_q^n)`, computed by several independent formulas and checked
//! against brute-force permutation and lattice enumerations.

pub mod charney;
pub mod check;
pub mod chow;
pub mod error;
pub mod exactalg;
pub mod flats;
pub mod ordercx;
pub mod permstat;
pub mod qeuler;

pub use error::{Error, Result};
