//! Fraction-free exact determinants (Bareiss elimination).
//!
//! Used for Sylvester-matrix resultants and the trace-pairing Gram
//! determinant. Every interior division in Bareiss elimination is exact by
//! Sylvester's identity; a nonzero remainder would mean corrupted input, so
//! it is asserted.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

/// Exact determinant of a square big-integer matrix.
pub(crate) fn bareiss_det(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    debug_assert!(m.iter().all(|row| row.len() == n));
    if n == 0 {
        return BigInt::from(1);
    }
    let mut sign = 1i8;
    let mut prev = BigInt::from(1);
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                let (q, r) = num.div_rem(&prev);
                debug_assert!(r.is_zero(), "Bareiss division must be exact");
                m[i][j] = q;
            }
            m[i][k] = BigInt::zero();
        }
        prev = m[k][k].clone();
    }
    let det = std::mem::take(&mut m[n - 1][n - 1]);
    if sign < 0 {
        -det
    } else {
        det
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mat(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect()
    }

    #[test]
    fn small_determinants() {
        assert_eq!(bareiss_det(mat(&[&[5]])), BigInt::from(5));
        assert_eq!(bareiss_det(mat(&[&[1, 2], &[3, 4]])), BigInt::from(-2));
        // Needs a pivot swap.
        assert_eq!(bareiss_det(mat(&[&[0, 1], &[1, 0]])), BigInt::from(-1));
        // Singular.
        assert_eq!(
            bareiss_det(mat(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]])),
            BigInt::zero()
        );
        // 3x3 with known value: det = 1*(1*0-4*6) - 2*(0*0-4*5) + 3*(0*6-1*5)
        assert_eq!(
            bareiss_det(mat(&[&[1, 2, 3], &[0, 1, 4], &[5, 6, 0]])),
            BigInt::from(1)
        );
    }
}
