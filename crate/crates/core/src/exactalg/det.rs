use crate::error::{domain, Error, Result};

use super::{BiPoly, QRat, Ring};

/// Bareiss fraction-free elimination. Every division performed is exact in
/// `R`; a failed exact division means the input was not over an integral
/// domain and is reported as an invariant violation.
fn bareiss<R: Ring>(matrix: &[Vec<R>]) -> Result<R> {
    let n = matrix.len();
    if n == 0 {
        return domain("determinant of an empty matrix");
    }
    if matrix.iter().any(|row| row.len() != n) {
        return domain("determinant of a non-square matrix");
    }
    let mut a: Vec<Vec<R>> = matrix.to_vec();
    let mut negate = false;
    let mut prev = R::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    negate = !negate;
                }
                None => return Ok(R::zero()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = a[i][j].clone() * &a[k][k] - &(a[i][k].clone() * &a[k][j]);
                a[i][j] = num.div_exact(&prev).ok_or_else(|| {
                    Error::Invariant("inexact division in fraction-free elimination".into())
                })?;
            }
            a[i][k] = R::zero();
        }
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    Ok(if negate { -det } else { det })
}

/// Exact determinant of a square polynomial matrix, dividing only where the
/// quotient is known to be exact.
pub fn det_fraction_free(matrix: &[Vec<BiPoly>]) -> Result<BiPoly> {
    bareiss(matrix)
}

/// Exact determinant over the field of rational functions in `q`.
pub fn det_rational(matrix: &[Vec<QRat>]) -> Result<QRat> {
    bareiss(matrix)
}

/// Generic entry point used by tests over other rings.
#[cfg(test)]
pub(crate) fn det_generic<R: Ring>(matrix: &[Vec<R>]) -> Result<R> {
    bareiss(matrix)
}
