use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{BiPoly, Field, Ring};

/// Dense univariate polynomial in `q` over the integers, lowest degree
/// first, with no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct QPoly {
    coeffs: Vec<BigInt>,
}

impl QPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        QPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        QPoly::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        QPoly::new(vec![c.into()])
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn eval(&self, q: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * q + c)
    }

    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    fn scale(&self, c: &BigInt) -> QPoly {
        QPoly::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    fn div_scalar(&self, c: &BigInt) -> QPoly {
        QPoly::new(self.coeffs.iter().map(|x| x / c).collect())
    }

    /// Content-free part with positive leading coefficient.
    pub fn primitive_part(&self) -> QPoly {
        if self.is_zero() {
            return self.clone();
        }
        let mut c = self.content();
        if self.lead().is_some_and(Signed::is_negative) {
            c = -c;
        }
        self.div_scalar(&c)
    }

    /// Pseudo-remainder of `self` by `d`: `lc(d)^k * self mod d` for the
    /// smallest `k` that keeps the computation in `Z[q]`.
    fn pseudo_rem(&self, d: &QPoly) -> QPoly {
        let dd = d.degree().expect("pseudo_rem by zero");
        let lc = d.lead().unwrap().clone();
        let mut r = self.coeffs.clone();
        while r.len() > dd && !r.is_empty() {
            let top = r.len() - 1;
            let c = r[top].clone();
            if c.is_zero() {
                r.pop();
                continue;
            }
            for x in r.iter_mut() {
                *x *= &lc;
            }
            let shift = top - dd;
            for (i, dc) in d.coeffs.iter().enumerate() {
                r[shift + i] -= &c * dc;
            }
            r.pop();
        }
        QPoly::new(r)
    }

    /// Greatest common divisor in `Z[q]`, normalized to a positive
    /// leading coefficient. `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &QPoly) -> QPoly {
        if self.is_zero() {
            return other.primitive_part().scale(&other.content());
        }
        if other.is_zero() {
            return self.primitive_part().scale(&self.content());
        }
        let content = self.content().gcd(&other.content());
        let (mut a, mut b) = if self.degree() >= other.degree() {
            (self.primitive_part(), other.primitive_part())
        } else {
            (other.primitive_part(), self.primitive_part())
        };
        loop {
            if b.degree() == Some(0) {
                return QPoly::constant(content);
            }
            let r = a.pseudo_rem(&b);
            if r.is_zero() {
                return b.scale(&content);
            }
            a = b;
            b = r.primitive_part();
        }
    }

    /// Exact quotient in `Z[q]`, `None` if `d` does not divide `self`.
    pub fn div_exact(&self, d: &QPoly) -> Option<QPoly> {
        let dd = d.degree()?;
        if self.is_zero() {
            return Some(QPoly::zero());
        }
        let n = self.degree().unwrap();
        if n < dd {
            return None;
        }
        let lc = d.lead().unwrap();
        let mut r = self.coeffs.clone();
        let mut quo = vec![BigInt::zero(); n - dd + 1];
        for k in (0..=n - dd).rev() {
            let c = &r[k + dd];
            if c.is_zero() {
                continue;
            }
            let (qc, rem) = c.div_rem(lc);
            if !rem.is_zero() {
                return None;
            }
            for (i, dc) in d.coeffs.iter().enumerate() {
                r[k + i] -= &qc * dc;
            }
            quo[k] = qc;
        }
        r.iter().all(Zero::is_zero).then(|| QPoly::new(quo))
    }

    pub fn to_bipoly(&self) -> BiPoly {
        BiPoly::from_q_coeffs(&self.coeffs)
    }

    /// Converts a polynomial in `q` alone; `None` if `t` occurs.
    pub fn from_bipoly(p: &BiPoly) -> Option<QPoly> {
        if !p.is_q_only() {
            return None;
        }
        let d = p.degree_q().map_or(0, |d| d as usize + 1);
        let mut coeffs = vec![BigInt::zero(); d];
        for (m, c) in p.terms() {
            coeffs[m.q as usize] = c.clone();
        }
        Some(QPoly::new(coeffs))
    }
}

impl Zero for QPoly {
    fn zero() -> Self {
        QPoly { coeffs: Vec::new() }
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl One for QPoly {
    fn one() -> Self {
        QPoly::constant(1)
    }
}

impl Neg for QPoly {
    type Output = QPoly;
    fn neg(self) -> QPoly {
        QPoly::new(self.coeffs.into_iter().map(|c| -c).collect())
    }
}

fn add_coeffs(a: &[BigInt], b: &[BigInt], sign: i8) -> QPoly {
    let n = a.len().max(b.len());
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let x = a.get(i).cloned().unwrap_or_default();
        let y = b.get(i).cloned().unwrap_or_default();
        out.push(if sign > 0 { x + y } else { x - y });
    }
    QPoly::new(out)
}

fn mul_coeffs(a: &[BigInt], b: &[BigInt]) -> QPoly {
    if a.is_empty() || b.is_empty() {
        return QPoly::zero();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    QPoly::new(out)
}

macro_rules! qpoly_ops {
    ($($lhs:ty, $rhs:ty);*) => {$(
        impl Add<$rhs> for $lhs {
            type Output = QPoly;
            fn add(self, rhs: $rhs) -> QPoly { add_coeffs(&self.coeffs, &rhs.coeffs, 1) }
        }
        impl Sub<$rhs> for $lhs {
            type Output = QPoly;
            fn sub(self, rhs: $rhs) -> QPoly { add_coeffs(&self.coeffs, &rhs.coeffs, -1) }
        }
        impl Mul<$rhs> for $lhs {
            type Output = QPoly;
            fn mul(self, rhs: $rhs) -> QPoly { mul_coeffs(&self.coeffs, &rhs.coeffs) }
        }
    )*};
}

qpoly_ops!(QPoly, QPoly; QPoly, &QPoly; &QPoly, &QPoly);

impl Ring for QPoly {
    fn div_exact(&self, rhs: &QPoly) -> Option<QPoly> {
        QPoly::div_exact(self, rhs)
    }
}

impl fmt::Display for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_bipoly())
    }
}

impl fmt::Debug for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QPoly({self})")
    }
}

/// Rational function in `q`: `num / den` with `gcd(num, den) = 1` in
/// `Z[q]` and `den` having a positive leading coefficient.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QRat {
    num: QPoly,
    den: QPoly,
}

impl QRat {
    /// `None` when `den` is zero.
    pub fn new(num: QPoly, den: QPoly) -> Option<QRat> {
        if den.is_zero() {
            return None;
        }
        if num.is_zero() {
            return Some(QRat::zero());
        }
        let g = num.gcd(&den);
        let (mut num, mut den) = if g.is_one() {
            (num, den)
        } else {
            (num.div_exact(&g).unwrap(), den.div_exact(&g).unwrap())
        };
        if den.lead().is_some_and(Signed::is_negative) {
            num = -num;
            den = -den;
        }
        Some(QRat { num, den })
    }

    pub fn from_poly(p: QPoly) -> QRat {
        QRat {
            num: p,
            den: QPoly::one(),
        }
    }

    pub fn from_int(c: impl Into<BigInt>) -> QRat {
        QRat::from_poly(QPoly::constant(c))
    }

    pub fn numer(&self) -> &QPoly {
        &self.num
    }

    pub fn denom(&self) -> &QPoly {
        &self.den
    }

    /// The value as a polynomial if the denominator is `1`.
    pub fn as_poly(&self) -> Option<&QPoly> {
        self.den.is_one().then_some(&self.num)
    }

    /// Evaluates at an integer `q`; `None` if `q` is a pole.
    pub fn eval(&self, q: &BigInt) -> Option<(BigInt, BigInt)> {
        let d = self.den.eval(q);
        if d.is_zero() {
            return None;
        }
        let n = self.num.eval(q);
        let g = n.gcd(&d);
        let (mut n, mut d) = (n / &g, d / &g);
        if d.is_negative() {
            n = -n;
            d = -d;
        }
        Some((n, d))
    }
}

impl Zero for QRat {
    fn zero() -> Self {
        QRat {
            num: QPoly::zero(),
            den: QPoly::one(),
        }
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl One for QRat {
    fn one() -> Self {
        QRat::from_int(1)
    }
}

impl Neg for QRat {
    type Output = QRat;
    fn neg(self) -> QRat {
        QRat {
            num: -self.num,
            den: self.den,
        }
    }
}

fn rat_add(a: &QRat, b: &QRat, sign: i8) -> QRat {
    let (num, den) = if a.den == b.den {
        let n = if sign > 0 {
            &a.num + &b.num
        } else {
            &a.num - &b.num
        };
        (n, a.den.clone())
    } else {
        let x = &a.num * &b.den;
        let y = &b.num * &a.den;
        (if sign > 0 { x + y } else { x - y }, &a.den * &b.den)
    };
    QRat::new(num, den).unwrap()
}

fn rat_mul(a: &QRat, b: &QRat) -> QRat {
    if a.is_zero() || b.is_zero() {
        return QRat::zero();
    }
    QRat::new(&a.num * &b.num, &a.den * &b.den).unwrap()
}

macro_rules! qrat_ops {
    ($($lhs:ty, $rhs:ty);*) => {$(
        impl Add<$rhs> for $lhs {
            type Output = QRat;
            fn add(self, rhs: $rhs) -> QRat { rat_add(&self, &rhs, 1) }
        }
        impl Sub<$rhs> for $lhs {
            type Output = QRat;
            fn sub(self, rhs: $rhs) -> QRat { rat_add(&self, &rhs, -1) }
        }
        impl Mul<$rhs> for $lhs {
            type Output = QRat;
            fn mul(self, rhs: $rhs) -> QRat { rat_mul(&self, &rhs) }
        }
    )*};
}

qrat_ops!(QRat, QRat; QRat, &QRat; &QRat, &QRat);

impl Ring for QRat {
    fn div_exact(&self, rhs: &QRat) -> Option<QRat> {
        Some(rat_mul(self, &rhs.inv()?))
    }
}

impl Field for QRat {
    fn inv(&self) -> Option<QRat> {
        QRat::new(self.den.clone(), self.num.clone())
    }
}

impl fmt::Display for QRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for QRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QRat({self})")
    }
}

impl From<QPoly> for QRat {
    fn from(p: QPoly) -> Self {
        QRat::from_poly(p)
    }
}
