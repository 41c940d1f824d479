use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::Ring;

/// Exponent pair of a monomial `q^q t^t`.
///
/// Ordered by `t` first, then `q`, which is the order used by every
/// rendering.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Mono {
    pub t: u32,
    pub q: u32,
}

impl Mono {
    pub const ONE: Mono = Mono { t: 0, q: 0 };

    pub fn new(q: u32, t: u32) -> Self {
        Mono { t, q }
    }
}

/// Sparse polynomial in the formal variables `q` and `t` with big-integer
/// coefficients. Zero coefficients are never stored, so structural
/// equality is polynomial equality.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct BiPoly {
    terms: BTreeMap<Mono, BigInt>,
}

impl BiPoly {
    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::monomial(c, 0, 0)
    }

    pub fn monomial(c: impl Into<BigInt>, q: u32, t: u32) -> Self {
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Mono::new(q, t), c);
        }
        BiPoly { terms }
    }

    pub fn q() -> Self {
        Self::monomial(1, 1, 0)
    }

    pub fn t() -> Self {
        Self::monomial(1, 0, 1)
    }

    pub fn q_pow(k: u32) -> Self {
        Self::monomial(1, k, 0)
    }

    pub fn t_pow(k: u32) -> Self {
        Self::monomial(1, 0, k)
    }

    /// `Σ coeffs[i] q^i`.
    pub fn from_q_coeffs<C: Into<BigInt> + Clone>(coeffs: &[C]) -> Self {
        let mut p = BiPoly::zero();
        for (i, c) in coeffs.iter().enumerate() {
            p.add_term(Mono::new(i as u32, 0), c.clone().into());
        }
        p
    }

    /// `Σ coeffs[i] t^i`.
    pub fn from_t_coeffs<C: Into<BigInt> + Clone>(coeffs: &[C]) -> Self {
        let mut p = BiPoly::zero();
        for (i, c) in coeffs.iter().enumerate() {
            p.add_term(Mono::new(0, i as u32), c.clone().into());
        }
        p
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Mono, BigInt)>) -> Self {
        let mut p = BiPoly::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    /// Adds `c * m` in place, dropping the entry if it cancels.
    pub fn add_term(&mut self, m: Mono, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &BigInt)> + '_ {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, q: u32, t: u32) -> BigInt {
        self.terms
            .get(&Mono::new(q, t))
            .cloned()
            .unwrap_or_default()
    }

    /// Total degree in `t`, `None` for the zero polynomial.
    pub fn degree_t(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.t).max()
    }

    pub fn degree_q(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.q).max()
    }

    pub fn is_q_only(&self) -> bool {
        self.terms.keys().all(|m| m.t == 0)
    }

    pub fn is_t_only(&self) -> bool {
        self.terms.keys().all(|m| m.q == 0)
    }

    /// The `q`-polynomial multiplying `t^k`.
    pub fn t_coeff(&self, k: u32) -> BiPoly {
        BiPoly::from_terms(
            self.terms
                .range(Mono::new(0, k)..=Mono::new(u32::MAX, k))
                .map(|(m, c)| (Mono::new(m.q, 0), c.clone())),
        )
    }

    /// The `t`-coefficients `[P_0(q), P_1(q), ..., P_deg(q)]`.
    pub fn t_coeffs(&self) -> Vec<BiPoly> {
        match self.degree_t() {
            None => Vec::new(),
            Some(d) => (0..=d).map(|k| self.t_coeff(k)).collect(),
        }
    }

    /// Inverse of [`BiPoly::t_coeffs`].
    pub fn from_t_coeff_polys(coeffs: &[BiPoly]) -> BiPoly {
        let mut out = BiPoly::zero();
        for (k, c) in coeffs.iter().enumerate() {
            out += &(c.clone() * &BiPoly::t_pow(k as u32));
        }
        out
    }

    pub fn scale(&self, c: &BigInt) -> BiPoly {
        if c.is_zero() {
            return BiPoly::zero();
        }
        BiPoly {
            terms: self.terms.iter().map(|(m, v)| (*m, v * c)).collect(),
        }
    }

    /// Multiplies by `q^dq t^dt`.
    pub fn shift(&self, dq: u32, dt: u32) -> BiPoly {
        BiPoly {
            terms: self
                .terms
                .iter()
                .map(|(m, v)| (Mono::new(m.q + dq, m.t + dt), v.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> BiPoly {
        let mut acc = BiPoly::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = base.clone() * &base;
            }
        }
        acc
    }

    pub fn eval(&self, q: &BigInt, t: &BigInt) -> BigInt {
        self.terms
            .iter()
            .map(|(m, c)| c * pow_big(q, m.q) * pow_big(t, m.t))
            .sum()
    }

    /// Specializes `q`, leaving a polynomial in `t`.
    pub fn eval_q(&self, q: &BigInt) -> BiPoly {
        BiPoly::from_terms(
            self.terms
                .iter()
                .map(|(m, c)| (Mono::new(0, m.t), c * pow_big(q, m.q))),
        )
    }

    /// Specializes `t`, leaving a polynomial in `q`.
    pub fn eval_t(&self, t: &BigInt) -> BiPoly {
        BiPoly::from_terms(
            self.terms
                .iter()
                .map(|(m, c)| (Mono::new(m.q, 0), c * pow_big(t, m.t))),
        )
    }

    /// Substitutes `q := sub`, where `sub` may itself involve `q` and `t`.
    pub fn substitute_q(&self, sub: &BiPoly) -> BiPoly {
        let mut out = BiPoly::zero();
        let mut powers: Vec<BiPoly> = vec![BiPoly::one()];
        for (m, c) in &self.terms {
            while powers.len() <= m.q as usize {
                let next = powers.last().unwrap().clone() * sub;
                powers.push(next);
            }
            out += &powers[m.q as usize].shift(0, m.t).scale(c);
        }
        out
    }

    /// Swaps the roles of `q` and `t`.
    pub fn swap_vars(&self) -> BiPoly {
        BiPoly::from_terms(
            self.terms
                .iter()
                .map(|(m, c)| (Mono::new(m.t, m.q), c.clone())),
        )
    }

    /// True if `t^k` and `t^(d-k)` carry equal `q`-coefficients for all k.
    pub fn is_t_palindromic(&self, d: u32) -> bool {
        if self.degree_t().is_some_and(|deg| deg > d) {
            return false;
        }
        (0..=d / 2).all(|k| self.t_coeff(k) == self.t_coeff(d - k))
    }

    /// Human-readable listing of the coefficients where `self` and `other`
    /// differ.
    pub fn diff(&self, other: &BiPoly) -> Vec<String> {
        let mut keys: Vec<Mono> = self
            .terms
            .keys()
            .chain(other.terms.keys())
            .copied()
            .collect();
        keys.sort();
        keys.dedup();
        keys.into_iter()
            .filter_map(|m| {
                let a = self.coeff(m.q, m.t);
                let b = other.coeff(m.q, m.t);
                (a != b).then(|| format!("[q^{} t^{}]: {} vs {}", m.q, m.t, a, b))
            })
            .collect()
    }

    pub fn to_json_value(&self) -> PolyJson {
        PolyJson {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| TermJson {
                    q: m.q,
                    t: m.t,
                    c: c.to_string(),
                })
                .collect(),
        }
    }

    pub fn from_json_value(json: &PolyJson) -> Result<BiPoly, String> {
        let mut out = BiPoly::zero();
        for term in &json.terms {
            let c: BigInt = term
                .c
                .parse()
                .map_err(|e| format!("bad coefficient {:?}: {e}", term.c))?;
            out.add_term(Mono::new(term.q, term.t), c);
        }
        Ok(out)
    }

    /// One row per nonzero coefficient: `t,q,coefficient`.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("t,q,coefficient\n");
        for (m, c) in &self.terms {
            s.push_str(&format!("{},{},{}\n", m.t, m.q, c));
        }
        s
    }

    /// Converts a polynomial in `t` only to small integer coefficients.
    pub fn t_coeffs_i64(&self) -> Option<Vec<i64>> {
        if !self.is_t_only() {
            return None;
        }
        let d = match self.degree_t() {
            None => return Some(Vec::new()),
            Some(d) => d,
        };
        (0..=d).map(|k| self.coeff(0, k).to_i64()).collect()
    }
}

pub(crate) fn pow_big(base: &BigInt, e: u32) -> BigInt {
    num_traits::pow(base.clone(), e as usize)
}

/// JSON form: `{"terms":[{"q":..,"t":..,"c":"..."}]}` sorted by `(t, q)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyJson {
    pub terms: Vec<TermJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub q: u32,
    pub t: u32,
    pub c: String,
}

impl Serialize for BiPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_json_value().serialize(s)
    }
}

impl<'de> Deserialize<'de> for BiPoly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let json = PolyJson::deserialize(d)?;
        BiPoly::from_json_value(&json).map_err(serde::de::Error::custom)
    }
}

impl Zero for BiPoly {
    fn zero() -> Self {
        BiPoly {
            terms: BTreeMap::new(),
        }
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for BiPoly {
    fn one() -> Self {
        BiPoly::constant(1)
    }
}

impl From<i64> for BiPoly {
    fn from(c: i64) -> Self {
        BiPoly::constant(c)
    }
}

impl From<BigInt> for BiPoly {
    fn from(c: BigInt) -> Self {
        BiPoly::constant(c)
    }
}

impl AddAssign<&BiPoly> for BiPoly {
    fn add_assign(&mut self, rhs: &BiPoly) {
        for (m, c) in &rhs.terms {
            self.add_term(*m, c.clone());
        }
    }
}

impl SubAssign<&BiPoly> for BiPoly {
    fn sub_assign(&mut self, rhs: &BiPoly) {
        for (m, c) in &rhs.terms {
            self.add_term(*m, -c);
        }
    }
}

impl Neg for BiPoly {
    type Output = BiPoly;
    fn neg(mut self) -> BiPoly {
        for c in self.terms.values_mut() {
            *c = -std::mem::take(c);
        }
        self
    }
}

impl Neg for &BiPoly {
    type Output = BiPoly;
    fn neg(self) -> BiPoly {
        -self.clone()
    }
}

fn mul_ref(a: &BiPoly, b: &BiPoly) -> BiPoly {
    let mut out = BiPoly::zero();
    for (ma, ca) in &a.terms {
        for (mb, cb) in &b.terms {
            out.add_term(Mono::new(ma.q + mb.q, ma.t + mb.t), ca * cb);
        }
    }
    out
}

macro_rules! forward_binops {
    ($($trait:ident $method:ident $assign:ident);*) => {$(
        impl $trait<&BiPoly> for BiPoly {
            type Output = BiPoly;
            fn $method(mut self, rhs: &BiPoly) -> BiPoly {
                self.$assign(rhs);
                self
            }
        }
        impl $trait<BiPoly> for BiPoly {
            type Output = BiPoly;
            fn $method(mut self, rhs: BiPoly) -> BiPoly {
                self.$assign(&rhs);
                self
            }
        }
        impl $trait<&BiPoly> for &BiPoly {
            type Output = BiPoly;
            fn $method(self, rhs: &BiPoly) -> BiPoly {
                let mut out = self.clone();
                out.$assign(rhs);
                out
            }
        }
    )*};
}

forward_binops!(Add add add_assign; Sub sub sub_assign);

impl Mul<&BiPoly> for BiPoly {
    type Output = BiPoly;
    fn mul(self, rhs: &BiPoly) -> BiPoly {
        mul_ref(&self, rhs)
    }
}

impl Mul<BiPoly> for BiPoly {
    type Output = BiPoly;
    fn mul(self, rhs: BiPoly) -> BiPoly {
        mul_ref(&self, &rhs)
    }
}

impl Mul<&BiPoly> for &BiPoly {
    type Output = BiPoly;
    fn mul(self, rhs: &BiPoly) -> BiPoly {
        mul_ref(self, rhs)
    }
}

impl Ring for BiPoly {
    /// Multivariate division in the `(t, q)` lexicographic order; exact
    /// quotients only.
    fn div_exact(&self, rhs: &BiPoly) -> Option<BiPoly> {
        let (lead_m, lead_c) = rhs.terms.iter().next_back()?;
        let mut rem = self.clone();
        let mut quo = BiPoly::zero();
        while let Some((m, c)) = rem.terms.iter().next_back().map(|(m, c)| (*m, c.clone())) {
            if m.q < lead_m.q || m.t < lead_m.t {
                return None;
            }
            let (qc, r) = c.div_rem(lead_c);
            if !r.is_zero() {
                return None;
            }
            let step = BiPoly::monomial(qc, m.q - lead_m.q, m.t - lead_m.t);
            rem -= &(&step * rhs);
            quo += &step;
        }
        Some(quo)
    }
}

fn fmt_q_term(c: &BigInt, k: u32, first: bool, out: &mut String) {
    let neg = c.is_negative();
    let abs = c.abs();
    if first {
        if neg {
            out.push('-');
        }
    } else {
        out.push_str(if neg { " - " } else { " + " });
    }
    let var = match k {
        0 => String::new(),
        1 => "q".to_string(),
        _ => format!("q^{k}"),
    };
    if var.is_empty() {
        out.push_str(&abs.to_string());
    } else if abs.is_one() {
        out.push_str(&var);
    } else {
        out.push_str(&format!("{abs}*{var}"));
    }
}

/// Renders a polynomial in `q` alone, ascending.
fn fmt_q_poly(p: &BiPoly) -> String {
    let mut s = String::new();
    for (i, (m, c)) in p.terms.iter().enumerate() {
        fmt_q_term(c, m.q, i == 0, &mut s);
    }
    s
}

impl fmt::Display for BiPoly {
    /// Ascending powers of `t`, each coefficient an ascending `q`-polynomial,
    /// parenthesized when it has more than one term:
    /// `1 + (2 + q + q^2)*t + t^2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut s = String::new();
        let degree = self.degree_t().unwrap_or(0);
        for k in 0..=degree {
            let coeff = self.t_coeff(k);
            if coeff.is_zero() {
                continue;
            }
            let first = s.is_empty();
            let tvar = match k {
                0 => String::new(),
                1 => "t".to_string(),
                _ => format!("t^{k}"),
            };
            if k == 0 {
                s.push_str(&fmt_q_poly(&coeff));
                continue;
            }
            if coeff.num_terms() == 1 {
                let (m, c) = coeff.terms.iter().next().unwrap();
                let neg = c.is_negative();
                if first {
                    if neg {
                        s.push('-');
                    }
                } else {
                    s.push_str(if neg { " - " } else { " + " });
                }
                let abs = BiPoly::monomial(c.abs(), m.q, 0);
                if abs.is_one() {
                    s.push_str(&tvar);
                } else {
                    s.push_str(&format!("{}*{}", fmt_q_poly(&abs), tvar));
                }
            } else {
                if !first {
                    s.push_str(" + ");
                }
                s.push_str(&format!("({})*{}", fmt_q_poly(&coeff), tvar));
            }
        }
        f.write_str(&s)
    }
}

impl fmt::Debug for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BiPoly({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a3() -> BiPoly {
        // 1 + (2 + q + q^2) t + t^2
        BiPoly::one() + BiPoly::from_q_coeffs(&[2, 1, 1]).shift(0, 1) + BiPoly::t_pow(2)
    }

    #[test]
    fn renders_ascending_with_parenthesized_coefficients() {
        assert_eq!(a3().to_string(), "1 + (2 + q + q^2)*t + t^2");
        assert_eq!(BiPoly::zero().to_string(), "0");
        let p = BiPoly::from_q_coeffs(&[0, -1, -1]);
        assert_eq!(p.to_string(), "-q - q^2");
        let p = BiPoly::from_t_coeffs(&[1, -3, 0, 1]);
        assert_eq!(p.to_string(), "1 - 3*t + t^3");
        let p = BiPoly::monomial(2, 3, 1) - BiPoly::t_pow(2);
        assert_eq!(p.to_string(), "2*q^3*t - t^2");
        let p = BiPoly::from_q_coeffs(&[1, -1]).shift(0, 2);
        assert_eq!(p.to_string(), "(1 - q)*t^2");
    }

    #[test]
    fn json_terms_sorted_by_t_then_q() {
        let json = serde_json::to_string(&a3()).unwrap();
        assert_eq!(
            json,
            r#"{"terms":[{"q":0,"t":0,"c":"1"},{"q":0,"t":1,"c":"2"},{"q":1,"t":1,"c":"1"},{"q":2,"t":1,"c":"1"},{"q":0,"t":2,"c":"1"}]}"#
        );
        let back: BiPoly = serde_json::from_str(&json).unwrap();
        assert_eq!(back, a3());
    }

    #[test]
    fn zero_coefficients_are_dropped() {
        let p = BiPoly::t() - BiPoly::t();
        assert!(p.is_zero());
        assert_eq!(p.num_terms(), 0);
        assert_eq!(p, BiPoly::zero());
    }

    #[test]
    fn exact_division() {
        let a = BiPoly::from_q_coeffs(&[1, 1]);
        let b = a3();
        let prod = &a * &b;
        assert_eq!(prod.div_exact(&a), Some(b.clone()));
        assert_eq!(prod.div_exact(&b), Some(a.clone()));
        assert_eq!(b.div_exact(&a), None);
        assert_eq!(a.div_exact(&BiPoly::zero()), None);
        assert_eq!(BiPoly::constant(6).div_exact(&BiPoly::constant(4)), None);
    }

    #[test]
    fn substitution_and_palindromes() {
        // (q + 1)^2 with q := q - 1 is q^2
        let p = BiPoly::from_q_coeffs(&[1, 2, 1]);
        let shifted = p.substitute_q(&BiPoly::from_q_coeffs(&[-1, 1]));
        assert_eq!(shifted, BiPoly::q_pow(2));
        assert!(a3().is_t_palindromic(2));
        assert!(!a3().is_t_palindromic(3));
        assert_eq!(a3().eval(&1.into(), &1.into()), BigInt::from(6));
        assert_eq!(
            a3().eval_t(&(-1).into()),
            BiPoly::from_q_coeffs(&[0, -1, -1])
        );
    }

    #[test]
    fn diff_lists_mismatches() {
        let mut b = a3();
        b.add_term(Mono::new(1, 1), BigInt::from(1));
        assert_eq!(a3().diff(&b), vec!["[q^1 t^1]: 1 vs 2".to_string()]);
    }
}
