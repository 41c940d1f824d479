//! Order complexes of lattices of flats: f-vectors, h-polynomials and the
//! comparison between `h` of `U(n, r)` and Chow ring Hilbert series.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::chow::hilbert_recurrence;
use crate::error::{domain, Result};
use crate::exactalg::{binomial, BiPoly};
use crate::flats::{build_explicit, ExplicitLattice, FamilySpec, UNIFORM_EXPLICIT_MAX_N};

/// `f[j]` is the number of `j`-dimensional faces; `f_{-1} = 1` is implicit.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FVector {
    #[serde(serialize_with = "crate::exactalg::serialize_decimals")]
    pub f: Vec<BigInt>,
}

impl FVector {
    pub fn new(f: Vec<BigInt>) -> FVector {
        FVector { f }
    }

    /// `-1` for the empty complex `{∅}`.
    pub fn dim(&self) -> i64 {
        self.f.len() as i64 - 1
    }

    fn from_counts(mut f: Vec<BigInt>) -> FVector {
        while f.last().is_some_and(|x| x.is_zero()) {
            f.pop();
        }
        FVector { f }
    }
}

/// Chains of flats counted by rank profile: every nonempty set of ranks in
/// `1..=r-1` (proper part), or in `0..=r` when `full` is set, contributes
/// the number of chains with that profile, evaluated at `q`.
pub fn fvector_by_rank_profile(spec: &FamilySpec, q: u32, full: bool) -> FVector {
    let ranks: Vec<u32> = if full {
        (0..=spec.r).collect()
    } else {
        (1..spec.r).collect()
    };
    let mut f = vec![BigInt::zero(); ranks.len()];
    let qb = BigInt::from(q);
    for mask in 1u64..(1u64 << ranks.len()) {
        let chosen: Vec<u32> = (0..ranks.len())
            .filter(|b| mask >> b & 1 == 1)
            .map(|b| ranks[b])
            .collect();
        let positive: Vec<u32> = chosen.iter().copied().filter(|&x| x > 0).collect();
        f[chosen.len() - 1] += spec.chain_count(&positive).eval(&qb, &BigInt::one());
    }
    FVector::from_counts(f)
}

/// Chains of elements of `lat` found by walking the order relation; with
/// `full` unset, bottom and top are left out.
pub fn fvector_explicit(lat: &ExplicitLattice, full: bool) -> FVector {
    let keep: Vec<usize> = (0..lat.len())
        .filter(|&a| full || (a != lat.bottom() && a != lat.top()))
        .collect();
    let mut f = vec![BigInt::zero(); lat.rank() as usize + 1];
    fn extend(lat: &ExplicitLattice, keep: &[usize], last: usize, len: usize, f: &mut [BigInt]) {
        f[len - 1] += 1;
        for &b in keep {
            if b != last && lat.leq(last, b) {
                extend(lat, keep, b, len + 1, f);
            }
        }
    }
    for &a in &keep {
        extend(lat, &keep, a, 1, &mut f);
    }
    FVector::from_counts(f)
}

/// `h(t) = Σ_{i=0}^{d} f_{i-1} t^i (1-t)^(d-i)` with `d = dim + 1`.
pub fn h_polynomial(f: &FVector) -> BiPoly {
    let d = f.f.len() as u32;
    let one_minus_t = BiPoly::one() - BiPoly::t();
    let mut h = one_minus_t.pow(d);
    for (j, c) in f.f.iter().enumerate() {
        let i = j as u32 + 1;
        h += &(one_minus_t.pow(d - i).shift(0, i).scale(c));
    }
    h
}

/// `Σ_{i=0}^{d} f_{i-1} (t-1)^(d-i)`, the reversal `t^d h(1/t)` of
/// [`h_polynomial`].
pub fn h_polynomial_reversed(f: &FVector) -> BiPoly {
    let d = f.f.len() as u32;
    let t_minus_one = BiPoly::t() - BiPoly::one();
    let mut h = t_minus_one.pow(d);
    for (j, c) in f.f.iter().enumerate() {
        h += &t_minus_one.pow(d - j as u32 - 1).scale(c);
    }
    h
}

/// `h` of the proper part of `L(U(n, r))`.
pub fn uniform_h(n: u32, r: u32) -> Result<BiPoly> {
    Ok(h_polynomial(&fvector_by_rank_profile(
        &FamilySpec::uniform(n, r)?,
        1,
        false,
    )))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FullRankReport {
    pub n: u32,
    pub h: BiPoly,
    pub hilbert: BiPoly,
    pub equal: bool,
}

/// `h` of the proper part of `L(U(n, n))` against `H(A(U(n, n)), t)`.
pub fn full_rank_check(n: u32) -> Result<FullRankReport> {
    let h = uniform_h(n, n)?;
    let hilbert = hilbert_recurrence(&FamilySpec::uniform(n, n)?);
    Ok(FullRankReport {
        n,
        equal: h == hilbert,
        h,
        hilbert,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BivariateReport {
    pub n: u32,
    /// `Σ_{r=0}^{n-2} h(U(n, r+1)) u^(n-2-r)`, with `u` in the `q` slot.
    pub f_poly: BiPoly,
    /// `Σ_{r=0}^{n-2} H(A(U(n, r+1)), t) (u+1)^(n-2-r)`.
    pub h_shifted: BiPoly,
    pub equal: bool,
    /// The same comparison with [`h_polynomial_reversed`] in `F_n`.
    pub equal_reversed: bool,
}

pub fn bivariate_check(n: u32) -> Result<BivariateReport> {
    if n < 2 {
        return domain(format!("bivariate comparison needs n >= 2, got {n}"));
    }
    let mut f_poly = BiPoly::zero();
    let mut f_reversed = BiPoly::zero();
    let mut h_poly = BiPoly::zero();
    for r in 0..=n - 2 {
        let spec = FamilySpec::uniform(n, r + 1)?;
        let shift = n - 2 - r;
        let fv = fvector_by_rank_profile(&spec, 1, false);
        f_poly += &h_polynomial(&fv).shift(shift, 0);
        f_reversed += &h_polynomial_reversed(&fv).shift(shift, 0);
        h_poly += &hilbert_recurrence(&spec).shift(shift, 0);
    }
    let h_shifted = h_poly.substitute_q(&(BiPoly::q() + BiPoly::one()));
    Ok(BivariateReport {
        n,
        equal: f_poly == h_shifted,
        equal_reversed: f_reversed == h_shifted,
        f_poly,
        h_shifted,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConjectureReport {
    pub n: u32,
    pub r: u32,
    /// `h` of the order complex of the proper part of `L(U(n, r))`.
    pub lhs: BiPoly,
    /// `t^2 Σ_{i=1}^r C(n-i-1, r-i) H(A(U(n, i)), t)`.
    pub rhs: BiPoly,
    pub equal: bool,
    /// `h` with bottom and top kept in the poset.
    pub lhs_full_lattice: BiPoly,
    pub readings_agree: bool,
    /// [`h_polynomial_reversed`] of the proper part.
    pub lhs_reversed: BiPoly,
    /// `t^2 * lhs_reversed == rhs`.
    pub t2_lhs_reversed_equal: bool,
    /// Rank-profile and explicit chain counts agree (absent when the
    /// lattice is too large to build).
    pub fvector_routes_agree: Option<bool>,
    pub bivariate: BivariateReport,
}

/// Evaluates both sides of the order-complex comparison for `r < n`.
/// Reports, never asserts.
pub fn conjecture_check(n: u32, r: u32) -> Result<ConjectureReport> {
    if r >= n {
        return domain(format!("comparison needs r < n, got n={n} r={r}"));
    }
    let spec = FamilySpec::uniform(n, r)?;
    let proper = fvector_by_rank_profile(&spec, 1, false);
    let full = fvector_by_rank_profile(&spec, 1, true);
    let lhs = h_polynomial(&proper);
    let lhs_full_lattice = h_polynomial(&full);
    let lhs_reversed = h_polynomial_reversed(&proper);
    let mut rhs = BiPoly::zero();
    for i in 1..=r {
        let c = binomial((n - i - 1) as u64, (r - i) as i64);
        rhs += &hilbert_recurrence(&FamilySpec::uniform(n, i)?).scale(&c);
    }
    let rhs = rhs.shift(0, 2);
    let fvector_routes_agree = if n <= UNIFORM_EXPLICIT_MAX_N {
        let lat = build_explicit(&spec, None)?;
        Some(fvector_explicit(&lat, false) == proper && fvector_explicit(&lat, true) == full)
    } else {
        None
    };
    Ok(ConjectureReport {
        n,
        r,
        equal: lhs == rhs,
        readings_agree: lhs == lhs_full_lattice,
        t2_lhs_reversed_equal: lhs_reversed.shift(0, 2) == rhs,
        lhs_reversed,
        lhs,
        rhs,
        lhs_full_lattice,
        fvector_routes_agree,
        bivariate: bivariate_check(n)?,
    })
}
