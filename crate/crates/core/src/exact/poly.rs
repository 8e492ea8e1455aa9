//! Dense univariate polynomials over the integers.
//!
//! Coefficients are stored in ascending degree order with no trailing zeros
//! (the zero polynomial is the empty vector). All operations are exact:
//! division helpers either require a monic divisor, verify divisibility over
//! the rationals, or use pseudo-division, and the resultant is a Sylvester
//! determinant evaluated fraction-free.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::linalg::bareiss_det;
use super::surd::QuadSurd;

/// Integer polynomial, coefficients ascending, no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    /// Build from ascending coefficients, trimming trailing zeros.
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    /// Convenience constructor from machine integers (ascending).
    pub fn from_i64(coeffs: &[i64]) -> Self {
        IntPoly::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: vec![] }
    }

    pub fn one() -> Self {
        IntPoly::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        IntPoly::new(vec![c])
    }

    /// `c * x^k`.
    pub fn monomial(c: BigInt, k: usize) -> Self {
        if c.is_zero() {
            return IntPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = c;
        IntPoly { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree of a known-nonzero polynomial.
    pub fn deg(&self) -> usize {
        self.degree().expect("degree of the zero polynomial")
    }

    /// Leading coefficient (panics on the zero polynomial).
    pub fn lc(&self) -> &BigInt {
        self.coeffs.last().expect("lc of the zero polynomial")
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(One::is_one)
    }

    /// Coefficient of `x^i` (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_else(BigInt::zero)
    }

    /// Ascending coefficient slice (no trailing zeros).
    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Exact evaluation by Horner's rule.
    pub fn eval(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Exact evaluation at a rational point.
    pub fn eval_rational(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + BigRational::from(c.clone());
        }
        acc
    }

    /// Exact evaluation at a quadratic surd (stays in `Q(sqrt r)`).
    pub fn eval_surd(&self, x: &QuadSurd) -> QuadSurd {
        let mut acc = QuadSurd::from_int(0);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x).add(&QuadSurd::from_int(c.clone()));
        }
        acc
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i) + other.coeff(i));
        }
        IntPoly::new(out)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i) - other.coeff(i));
        }
        IntPoly::new(out)
    }

    pub fn neg(&self) -> Self {
        IntPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::new(out)
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        IntPoly::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    /// Multiply by `x^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return IntPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        IntPoly { coeffs }
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return IntPoly::zero();
        }
        IntPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    /// Content: nonnegative gcd of the coefficients (0 for the zero poly).
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Primitive part with positive leading coefficient.
    pub fn primitive(&self) -> Self {
        if self.is_zero() {
            return IntPoly::zero();
        }
        let mut g = self.content();
        if self.lc().is_negative() {
            g = -g;
        }
        IntPoly::new(self.coeffs.iter().map(|c| c / &g).collect())
    }

    /// Quotient and remainder by a monic divisor (exact over `Z`).
    pub fn divrem_monic(&self, div: &Self) -> (Self, Self) {
        assert!(div.is_monic(), "divrem_monic needs a monic divisor");
        let d = div.deg();
        let mut rem = self.coeffs.clone();
        if rem.len() <= d {
            return (IntPoly::zero(), self.clone());
        }
        let mut quot = vec![BigInt::zero(); rem.len() - d];
        for i in (d..rem.len()).rev() {
            let q = std::mem::take(&mut rem[i]);
            if q.is_zero() {
                continue;
            }
            for (j, b) in div.coeffs.iter().take(d).enumerate() {
                let t = b * &q;
                rem[i - d + j] -= t;
            }
            quot[i - d] = q;
        }
        rem.truncate(d);
        (IntPoly::new(quot), IntPoly::new(rem))
    }

    /// Exact quotient if `div` divides `self` over the integers.
    ///
    /// Works for arbitrary nonzero divisors: long division over `Q`, then an
    /// integrality check on the quotient.
    pub fn try_div_exact(&self, div: &Self) -> Option<Self> {
        assert!(!div.is_zero(), "division by the zero polynomial");
        if self.is_zero() {
            return Some(IntPoly::zero());
        }
        if self.deg() < div.deg() {
            return None;
        }
        let mut rem: Vec<BigRational> = self
            .coeffs
            .iter()
            .map(|c| BigRational::from(c.clone()))
            .collect();
        let d = div.deg();
        let lc = BigRational::from(div.lc().clone());
        let mut quot = vec![BigRational::zero(); rem.len() - d];
        for i in (d..rem.len()).rev() {
            let q = std::mem::take(&mut rem[i]) / &lc;
            if q.is_zero() {
                continue;
            }
            for (j, b) in div.coeffs.iter().take(d).enumerate() {
                let t = BigRational::from(b.clone()) * &q;
                rem[i - d + j] -= t;
            }
            quot[i - d] = q;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return None;
        }
        let mut out = Vec::with_capacity(quot.len());
        for q in quot {
            if !q.is_integer() {
                return None;
            }
            out.push(q.to_integer());
        }
        Some(IntPoly::new(out))
    }

    /// Pseudo-remainder: returns `r` with `lc(div)^(deg a - deg div + 1) * a = q*div + r`.
    pub fn pseudo_rem(&self, div: &Self) -> Self {
        assert!(!div.is_zero(), "pseudo-division by zero");
        if self.is_zero() || self.deg() < div.deg() {
            return self.clone();
        }
        let d = div.deg();
        let lc = div.lc().clone();
        let mut rem = self.coeffs.clone();
        for i in (d..rem.len()).rev() {
            // Scale everything below degree i, then eliminate the top term.
            let top = std::mem::take(&mut rem[i]);
            for c in rem.iter_mut().take(i) {
                *c = &*c * &lc;
            }
            if !top.is_zero() {
                for (j, b) in div.coeffs.iter().take(d).enumerate() {
                    let t = b * &top;
                    rem[i - d + j] -= t;
                }
            }
        }
        rem.truncate(d);
        IntPoly::new(rem)
    }

    /// Primitive gcd with positive leading coefficient (`gcd(0, g) = ±g`).
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.primitive();
        let mut b = other.primitive();
        if a.is_zero() {
            return b;
        }
        if b.is_zero() {
            return a;
        }
        if a.deg() < b.deg() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.pseudo_rem(&b).primitive();
            a = b;
            b = r;
        }
        // `a` is primitive with positive lc by construction of `primitive`.
        a
    }

    /// `self / gcd(self, self')`: same distinct roots, all simple.
    pub fn squarefree_part(&self) -> Self {
        if self.is_zero() || self.deg() == 0 {
            return self.clone();
        }
        let g = self.gcd(&self.derivative());
        self.try_div_exact(&g)
            .expect("gcd(f, f') divides f exactly")
    }

    pub fn is_squarefree(&self) -> bool {
        if self.is_zero() {
            return false;
        }
        self.deg() == 0 || self.gcd(&self.derivative()).deg() == 0
    }

    /// Resultant `Res(self, other)` via the Sylvester determinant.
    pub fn resultant(&self, other: &Self) -> BigInt {
        let (m, n) = match (self.degree(), other.degree()) {
            (None, _) | (_, None) => return BigInt::zero(),
            (Some(m), Some(n)) => (m, n),
        };
        if m == 0 && n == 0 {
            return BigInt::one();
        }
        if m == 0 {
            return self.coeffs[0].pow(n as u32);
        }
        if n == 0 {
            return other.coeffs[0].pow(m as u32);
        }
        let size = m + n;
        let mut mat = vec![vec![BigInt::zero(); size]; size];
        for (row, chunk) in mat.iter_mut().take(n).enumerate() {
            for (i, c) in self.coeffs.iter().rev().enumerate() {
                chunk[row + i] = c.clone();
            }
        }
        for (row, chunk) in mat.iter_mut().skip(n).enumerate() {
            for (i, c) in other.coeffs.iter().rev().enumerate() {
                chunk[row + i] = c.clone();
            }
        }
        bareiss_det(mat)
    }

    /// Discriminant `(-1)^(d(d-1)/2) Res(f, f') / lc(f)` (degree >= 1).
    pub fn discriminant(&self) -> BigInt {
        let d = self.degree().expect("discriminant of the zero polynomial");
        assert!(d >= 1, "discriminant needs degree >= 1");
        if d == 1 {
            return BigInt::one();
        }
        let res = self.resultant(&self.derivative());
        let (q, r) = res.div_rem(self.lc());
        assert!(r.is_zero(), "lc(f) divides Res(f, f')");
        if (d * (d - 1) / 2) % 2 == 1 {
            -q
        } else {
            q
        }
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            match i {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}*")?;
                    }
                    if i == 1 {
                        write!(f, "x")?;
                    } else {
                        write!(f, "x^{i}")?;
                    }
                }
            }
        }
        Ok(())
    }
}
