//! Charney–Davis quantities `H(A, -1)` and (q-)tangent–secant numbers.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::chow::hilbert_recurrence;
use crate::error::{domain, Error, Result};
use crate::exactalg::{
    det_fraction_free, det_rational, gauss_binomial, q_factorial, q_pochhammer, sech_q, sinh_q,
    BiPoly, Field, QPoly, QRat,
};
use crate::flats::{FamilySpec, Kind};
use crate::permstat::{statistic_sum, Convention, PermClass, Weight};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CDResult {
    /// `H(A, -1)`.
    pub unsigned: BiPoly,
    /// `(-1)^((r-1)/2) H(A, -1)` for odd `r`, zero for even `r`.
    pub signed: BiPoly,
    /// `r mod 2`.
    pub parity: u32,
}

impl CDResult {
    fn from_unsigned(unsigned: BiPoly, r: u32) -> CDResult {
        let signed = if r % 2 == 0 {
            BiPoly::zero()
        } else if (r - 1) / 2 % 2 == 1 {
            -&unsigned
        } else {
            unsigned.clone()
        };
        CDResult {
            unsigned,
            signed,
            parity: r % 2,
        }
    }

    /// Same result with `q = 1`.
    pub fn at_q_one(&self) -> CDResult {
        let one = BigInt::one();
        CDResult {
            unsigned: self.unsigned.eval_q(&one),
            signed: self.signed.eval_q(&one),
            parity: self.parity,
        }
    }
}

fn require_odd(r: u32) -> Result<()> {
    if r % 2 == 0 {
        return domain(format!("formula needs odd r, got r={r}"));
    }
    Ok(())
}

fn require_rank(n: u32, r: u32) -> Result<()> {
    if r < 1 || r > n {
        return domain(format!("rank r={r} must satisfy 1 <= r <= n={n}"));
    }
    Ok(())
}

/// Substitutes `t = -1` into the Hilbert series.
pub fn cd_direct(spec: &FamilySpec) -> CDResult {
    let unsigned = hilbert_recurrence(spec).eval_t(&BigInt::from(-1));
    CDResult::from_unsigned(unsigned, spec.r)
}

/// `1 + Σ (-1)^m Π [n - r_(i-1), r_i - r_(i-1)]_q` over tuples
/// `0 < r_1 < ... < r_m < r` of even ranks. Only odd `r`.
pub fn cd_chain_alternating(n: u32, r: u32) -> Result<BiPoly> {
    require_rank(n, r)?;
    require_odd(r)?;
    let evens: Vec<u32> = (1..=r / 2).map(|k| 2 * k).filter(|&e| e < r).collect();
    let mut total = BiPoly::zero();
    for mask in 0u64..(1u64 << evens.len()) {
        let mut prev = 0;
        let mut term = BiPoly::one();
        for (b, &e) in evens.iter().enumerate() {
            if mask >> b & 1 == 1 {
                term = -(term * gauss_binomial(n - prev, (e - prev) as i64));
                prev = e;
            }
        }
        total += &term;
    }
    Ok(total)
}

/// `T(2a)` from `T(2a) = -Σ_{b<a} [n-2b, 2a-2b]_q T(2b)`, `T(0) = 1`.
pub fn t_term_recurrence(n: u32, a: u32) -> Result<BiPoly> {
    if 2 * a > n {
        return domain(format!("T term needs 2a <= n, got n={n} a={a}"));
    }
    let mut ts = vec![BiPoly::one()];
    for m in 1..=a {
        let mut acc = BiPoly::zero();
        for (b, tb) in ts.iter().enumerate() {
            let b = b as u32;
            acc -= &(gauss_binomial(n - 2 * b, (2 * m - 2 * b) as i64) * tb);
        }
        ts.push(acc);
    }
    Ok(ts.swap_remove(a as usize))
}

/// `T(2a) = (-1)^a det M` where `M` is `a × a` with `M[i][j] =
/// [n-2j, 2(i-j+1)]_q` for `j <= i`, 1 on the superdiagonal, 0 above.
pub fn t_term_determinant(n: u32, a: u32) -> Result<BiPoly> {
    if 2 * a > n {
        return domain(format!("T term needs 2a <= n, got n={n} a={a}"));
    }
    if a == 0 {
        return Ok(BiPoly::one());
    }
    let a = a as usize;
    let m: Vec<Vec<BiPoly>> = (0..a)
        .map(|i| {
            (0..a)
                .map(|j| {
                    if j <= i {
                        gauss_binomial(n - 2 * j as u32, 2 * (i - j + 1) as i64)
                    } else if j == i + 1 {
                        BiPoly::one()
                    } else {
                        BiPoly::zero()
                    }
                })
                .collect()
        })
        .collect();
    let det = det_fraction_free(&m)?;
    Ok(if a % 2 == 1 { -det } else { det })
}

fn qrat_of(p: &BiPoly) -> QRat {
    QRat::from_poly(QPoly::from_bipoly(p).expect("q-only polynomial"))
}

fn recip_factorial(k: u32) -> QRat {
    QRat::new(QPoly::one(), QPoly::from_bipoly(&q_factorial(k)).unwrap()).unwrap()
}

/// The `a × a` determinant with entries `1/[2(i-j+1)]_q!` on and below the
/// diagonal and 1 on the superdiagonal; `Δ_0 = 1`.
pub fn secant_delta(a: u32) -> Result<QRat> {
    if a == 0 {
        return Ok(QRat::one());
    }
    let a = a as usize;
    let m: Vec<Vec<QRat>> = (0..a)
        .map(|i| {
            (0..a)
                .map(|j| {
                    if j <= i {
                        recip_factorial(2 * (i - j + 1) as u32)
                    } else if j == i + 1 {
                        QRat::one()
                    } else {
                        QRat::zero()
                    }
                })
                .collect()
        })
        .collect();
    det_rational(&m)
}

/// `(-1)^a [n]_q!/[n-2a]_q! Δ_a` as a rational function.
pub fn t_term_rational(n: u32, a: u32) -> Result<QRat> {
    if 2 * a > n {
        return domain(format!("T term needs 2a <= n, got n={n} a={a}"));
    }
    let ratio = QRat::new(
        QPoly::from_bipoly(&q_factorial(n)).unwrap(),
        QPoly::from_bipoly(&q_factorial(n - 2 * a)).unwrap(),
    )
    .unwrap();
    let v = ratio * secant_delta(a)?;
    Ok(if a % 2 == 1 { -v } else { v })
}

fn disagreement(what: &str, x: &BiPoly, y: &BiPoly) -> Error {
    Error::Invariant(format!("{what}: {}", x.diff(y).join("; ")))
}

/// `T(2a)` by recurrence, cross-checked against both determinants.
pub fn t_term(n: u32, a: u32) -> Result<BiPoly> {
    let rec = t_term_recurrence(n, a)?;
    let det = t_term_determinant(n, a)?;
    if rec != det {
        return Err(disagreement(
            &format!("T({n}, {a}) recurrence vs determinant"),
            &rec,
            &det,
        ));
    }
    let rat = t_term_rational(n, a)?;
    if rat != qrat_of(&rec) {
        return Err(Error::Invariant(format!(
            "T({n}, {a}) rational form gave {rat}, expected {rec}"
        )));
    }
    Ok(rec)
}

/// `1 + Σ_{a=1}^{(r-1)/2} T(2a)`, with every term cross-checked.
pub fn cd_determinant(n: u32, r: u32) -> Result<CDResult> {
    require_rank(n, r)?;
    require_odd(r)?;
    let mut unsigned = BiPoly::zero();
    for a in 0..=(r - 1) / 2 {
        unsigned += &t_term(n, a)?;
    }
    Ok(CDResult::from_unsigned(unsigned, r))
}

/// `Σ_{k=0}^{(r-1)/2} [n, 2k]_q E_{2k,q}`; the signed value carries the
/// usual `(-1)^((r-1)/2)`.
pub fn cd_qsecant(n: u32, r: u32) -> Result<CDResult> {
    require_rank(n, r)?;
    require_odd(r)?;
    let table = tangent_secant_recurrence(r.saturating_sub(1) as usize);
    let mut unsigned = BiPoly::zero();
    for k in 0..=(r - 1) / 2 {
        unsigned += &(gauss_binomial(n, 2 * k as i64) * &table[2 * k as usize]);
    }
    Ok(CDResult::from_unsigned(unsigned, r))
}

/// Which route [`cd`] uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CdMethod {
    Direct,
    Chain,
    Determinant,
    QSecant,
}

/// Charney–Davis quantity of `spec` by the chosen route; `q = 1` for the
/// uniform family. Only `Direct` accepts even `r`.
pub fn cd(spec: &FamilySpec, method: CdMethod) -> Result<CDResult> {
    let res = match method {
        CdMethod::Direct => return Ok(cd_direct(spec)),
        CdMethod::Chain => CDResult::from_unsigned(cd_chain_alternating(spec.n, spec.r)?, spec.r),
        CdMethod::Determinant => cd_determinant(spec.n, spec.r)?,
        CdMethod::QSecant => cd_qsecant(spec.n, spec.r)?,
    };
    Ok(match spec.kind {
        Kind::Uniform => res.at_q_one(),
        Kind::VectorSpace => res,
    })
}

/// `E_{0,q}, ..., E_{n_max,q}` with the classical values at `q = 1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TangentSecantTable {
    pub entries: Vec<BiPoly>,
    #[serde(serialize_with = "crate::exactalg::serialize_decimals")]
    pub classical: Vec<BigInt>,
}

impl TangentSecantTable {
    pub fn n_max(&self) -> usize {
        self.entries.len() - 1
    }
}

/// Coefficients of `sech_q + tanh_q` scaled by `(q;q)_n`.
pub fn tangent_secant_series(n_max: usize) -> Result<Vec<BiPoly>> {
    let sech = sech_q(n_max);
    let tanh = sinh_q(n_max).mul(&sech);
    (0..=n_max)
        .map(|k| {
            let c = sech.coeff(k).clone() + tanh.coeff(k);
            let scaled = c * qrat_of(&q_pochhammer(k as u32));
            scaled
                .as_poly()
                .map(QPoly::to_bipoly)
                .ok_or_else(|| Error::Invariant(format!("E_{k} is not a polynomial: {scaled}")))
        })
        .collect()
}

/// `E_{2n} = -Σ_{k=1}^n [2n, 2k]_q E_{2n-2k}` and
/// `E_{2n+1} = Σ_{a=0}^n [2n+1, 2a]_q E_{2a}`.
pub fn tangent_secant_recurrence(n_max: usize) -> Vec<BiPoly> {
    let mut e: Vec<BiPoly> = Vec::with_capacity(n_max + 1);
    for m in 0..=n_max {
        let mu = m as u32;
        let v = if m == 0 {
            BiPoly::one()
        } else if m % 2 == 0 {
            let mut acc = BiPoly::zero();
            for k in (2..=m).step_by(2) {
                acc -= &(gauss_binomial(mu, k as i64) * &e[m - k]);
            }
            acc
        } else {
            let mut acc = BiPoly::zero();
            for a in (0..m).step_by(2) {
                acc += &(gauss_binomial(mu, a as i64) * &e[a]);
            }
            acc
        };
        e.push(v);
    }
    e
}

/// `E_{2n} = (-1)^n [2n]_q! Δ_n` and
/// `E_{2n+1} = 1 + [2n+1]_q! Σ_{a=1}^n (-1)^a Δ_a / [2n-2a+1]_q!`.
pub fn tangent_secant_determinant(n_max: usize) -> Result<Vec<BiPoly>> {
    let deltas = (0..=(n_max / 2) as u32)
        .map(secant_delta)
        .collect::<Result<Vec<_>>>()?;
    (0..=n_max)
        .map(|m| {
            let mu = m as u32;
            let half = mu / 2;
            let v = if m % 2 == 0 {
                let x = qrat_of(&q_factorial(mu)) * &deltas[half as usize];
                if half % 2 == 1 {
                    -x
                } else {
                    x
                }
            } else {
                let mut sum = QRat::zero();
                for a in 1..=half {
                    let term = deltas[a as usize].clone() * recip_factorial(mu - 2 * a);
                    sum = if a % 2 == 1 { sum - term } else { sum + &term };
                }
                QRat::one() + &(qrat_of(&q_factorial(mu)) * sum)
            };
            v.as_poly().map(QPoly::to_bipoly).ok_or_else(|| {
                Error::Invariant(format!("E_{m} determinant route is not a polynomial: {v}"))
            })
        })
        .collect()
}

/// The table by all three routes; any disagreement is an invariant error.
pub fn tangent_secant(n_max: usize) -> Result<TangentSecantTable> {
    let rec = tangent_secant_recurrence(n_max);
    let series = tangent_secant_series(n_max)?;
    let det = tangent_secant_determinant(n_max)?;
    for m in 0..=n_max {
        if rec[m] != series[m] {
            return Err(disagreement(
                &format!("E_{m} recurrence vs series"),
                &rec[m],
                &series[m],
            ));
        }
        if rec[m] != det[m] {
            return Err(disagreement(
                &format!("E_{m} recurrence vs determinant"),
                &rec[m],
                &det[m],
            ));
        }
    }
    let classical = rec
        .iter()
        .map(|p| p.eval(&BigInt::one(), &BigInt::one()))
        .collect();
    Ok(TangentSecantTable {
        entries: rec,
        classical,
    })
}

/// `E_{2n} = (-1)^n (2n)! Δ_n` with `Δ_n` built from `1/(2k)!`.
pub fn classical_secant_determinant(n: u32) -> Result<BigInt> {
    let fact = |k: u32| QRat::from_int(crate::exactalg::factorial(k as u64));
    let size = n as usize;
    let delta = if n == 0 {
        QRat::one()
    } else {
        let m: Vec<Vec<QRat>> = (0..size)
            .map(|i| {
                (0..size)
                    .map(|j| {
                        if j <= i {
                            fact(2 * (i - j + 1) as u32).inv().unwrap()
                        } else if j == i + 1 {
                            QRat::one()
                        } else {
                            QRat::zero()
                        }
                    })
                    .collect()
            })
            .collect();
        det_rational(&m)?
    };
    let v = fact(2 * n) * delta;
    let v = if n % 2 == 1 { -v } else { v };
    v.as_poly()
        .and_then(|p| {
            p.degree().map_or(Some(BigInt::zero()), |d| {
                (d == 0).then(|| p.coeffs()[0].clone())
            })
        })
        .ok_or_else(|| Error::Invariant(format!("classical secant determinant gave {v}")))
}

/// Comparison of `Σ q^exc` over alternating permutations with `E_{n,q}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AlternatingReport {
    pub n: usize,
    pub e_nq: BiPoly,
    pub up_down: BiPoly,
    pub down_up: BiPoly,
    pub up_down_equal: bool,
    pub up_down_equal_up_to_sign: bool,
    pub down_up_equal: bool,
    pub down_up_equal_up_to_sign: bool,
}

pub fn alternating_probe(n: usize, bound: usize) -> Result<AlternatingReport> {
    let e_nq = tangent_secant_recurrence(n).swap_remove(n);
    let up_down = statistic_sum(
        PermClass::Alternating(n, Convention::UpDown),
        Weight::QExc,
        bound,
    )?;
    let down_up = statistic_sum(
        PermClass::Alternating(n, Convention::DownUp),
        Weight::QExc,
        bound,
    )?;
    let up_to_sign = |x: &BiPoly| *x == e_nq || -x == e_nq;
    Ok(AlternatingReport {
        up_down_equal: up_down == e_nq,
        up_down_equal_up_to_sign: up_to_sign(&up_down),
        down_up_equal: down_up == e_nq,
        down_up_equal_up_to_sign: up_to_sign(&down_up),
        n,
        e_nq,
        up_down,
        down_up,
    })
}
