//! Polynomials over prime fields F_ell and their factor-degree patterns.
//!
//! The one public entry point, [`factor_degrees_mod`], reports the degree and
//! multiplicity of every irreducible factor of an integer polynomial reduced
//! mod ell — exactly the data needed to bound a matrix order mod ell (degrees
//! give the lcm of `ell^d - 1` factors, the largest multiplicity gives the
//! power of ell) and to certify irreducibility over `Z` (a single factor of
//! full degree and multiplicity one).
//!
//! Internals: coefficient arithmetic in `u64` with `u128` intermediates,
//! squarefree decomposition in characteristic ell (with the `f(x) = g(x^ell)`
//! deflation case; over the prime field the ell-th root of a coefficient is
//! the coefficient itself), then distinct-degree factorization on each
//! squarefree piece. Nothing here needs the actual factors, only degrees, so
//! equal-degree splitting is never required and everything stays
//! deterministic.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use super::factor::is_prime;
use super::poly::IntPoly;
use crate::error::{Error, Result};

fn addm(a: u64, b: u64, ell: u64) -> u64 {
    ((a as u128 + b as u128) % ell as u128) as u64
}

fn subm(a: u64, b: u64, ell: u64) -> u64 {
    ((a as u128 + ell as u128 - b as u128) % ell as u128) as u64
}

fn mulm(a: u64, b: u64, ell: u64) -> u64 {
    ((a as u128 * b as u128) % ell as u128) as u64
}

/// Inverse of `a` mod prime `ell` (`a` nonzero mod ell).
fn invm(a: u64, ell: u64) -> u64 {
    // Extended Euclid on signed 128-bit accumulators.
    let (mut r0, mut r1) = (ell as i128, (a % ell) as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    debug_assert_eq!(r0, 1, "inverse of a noninvertible element");
    t0.rem_euclid(ell as i128) as u64
}

/// Dense polynomial over F_ell: ascending coefficients in `[0, ell)`,
/// no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct ModPoly {
    ell: u64,
    coeffs: Vec<u64>,
}

impl ModPoly {
    fn new(ell: u64, mut coeffs: Vec<u64>) -> Self {
        for c in &mut coeffs {
            *c %= ell;
        }
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        ModPoly { ell, coeffs }
    }

    fn from_int_poly(f: &IntPoly, ell: u64) -> Self {
        let m = BigInt::from(ell);
        ModPoly::new(
            ell,
            f.coeffs()
                .iter()
                .map(|c| c.mod_floor(&m).to_u64().expect("residue fits u64"))
                .collect(),
        )
    }

    fn zero(ell: u64) -> Self {
        ModPoly { ell, coeffs: vec![] }
    }

    fn x(ell: u64) -> Self {
        ModPoly::new(ell, vec![0, 1])
    }

    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    fn deg(&self) -> usize {
        self.degree().expect("degree of zero polynomial")
    }

    fn lc(&self) -> u64 {
        *self.coeffs.last().expect("lc of zero polynomial")
    }

    fn is_monic(&self) -> bool {
        self.coeffs.last() == Some(&1)
    }

    fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    fn coeff(&self, i: usize) -> u64 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    fn sub(&self, other: &Self) -> Self {
        debug_assert_eq!(self.ell, other.ell);
        let n = self.coeffs.len().max(other.coeffs.len());
        ModPoly::new(
            self.ell,
            (0..n)
                .map(|i| subm(self.coeff(i), other.coeff(i), self.ell))
                .collect(),
        )
    }

    fn mul(&self, other: &Self) -> Self {
        debug_assert_eq!(self.ell, other.ell);
        if self.is_zero() || other.is_zero() {
            return ModPoly::zero(self.ell);
        }
        let mut out = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = addm(out[i + j], mulm(a, b, self.ell), self.ell);
            }
        }
        ModPoly::new(self.ell, out)
    }

    fn scale(&self, k: u64) -> Self {
        ModPoly::new(
            self.ell,
            self.coeffs.iter().map(|&c| mulm(c, k, self.ell)).collect(),
        )
    }

    /// Scale to leading coefficient 1.
    fn monic(&self) -> Self {
        if self.is_zero() || self.is_monic() {
            return self.clone();
        }
        self.scale(invm(self.lc(), self.ell))
    }

    /// Remainder by a monic divisor.
    fn rem(&self, div: &Self) -> Self {
        debug_assert!(div.is_monic(), "rem needs a monic divisor");
        let d = div.deg();
        let mut rem = self.coeffs.clone();
        if rem.len() <= d {
            return self.clone();
        }
        for i in (d..rem.len()).rev() {
            let q = std::mem::take(&mut rem[i]);
            if q == 0 {
                continue;
            }
            for j in 0..d {
                let t = mulm(div.coeffs[j], q, self.ell);
                rem[i - d + j] = subm(rem[i - d + j], t, self.ell);
            }
        }
        rem.truncate(d);
        ModPoly::new(self.ell, rem)
    }

    /// Exact quotient by a monic divisor (panics if it does not divide).
    fn div_exact(&self, div: &Self) -> Self {
        debug_assert!(div.is_monic(), "div_exact needs a monic divisor");
        let d = div.deg();
        let mut rem = self.coeffs.clone();
        if rem.len() <= d {
            assert!(self.is_zero(), "division must be exact");
            return ModPoly::zero(self.ell);
        }
        let mut quot = vec![0u64; rem.len() - d];
        for i in (d..rem.len()).rev() {
            let q = std::mem::take(&mut rem[i]);
            if q != 0 {
                for j in 0..d {
                    let t = mulm(div.coeffs[j], q, self.ell);
                    rem[i - d + j] = subm(rem[i - d + j], t, self.ell);
                }
            }
            quot[i - d] = q;
        }
        assert!(rem.iter().all(|&c| c == 0), "division must be exact");
        ModPoly::new(self.ell, quot)
    }

    /// Monic gcd (or zero if both inputs are zero).
    fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b.monic());
            a = b;
            b = r;
        }
        a.monic()
    }

    fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return ModPoly::zero(self.ell);
        }
        ModPoly::new(
            self.ell,
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| mulm(c, (i as u64) % self.ell, self.ell))
                .collect(),
        )
    }

    /// `self^e mod modulus` by repeated squaring (modulus monic, degree >= 1).
    fn powmod(&self, e: u64, modulus: &Self) -> Self {
        let mut base = self.rem(modulus);
        let mut acc = ModPoly::new(self.ell, vec![1]);
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).rem(modulus);
            }
            base = base.mul(&base).rem(modulus);
            e >>= 1;
        }
        acc
    }

    /// Inverse of the substitution `x -> x^ell`: valid when every monomial
    /// degree is a multiple of ell (true exactly when the derivative
    /// vanishes). Over the prime field c^ell = c, so coefficients carry over.
    fn deflate(&self) -> Self {
        let ell = self.ell as usize;
        ModPoly::new(
            self.ell,
            self.coeffs.iter().step_by(ell).copied().collect(),
        )
    }
}

/// Squarefree decomposition of monic `f`: pairwise-coprime squarefree monic
/// `g_i` with multiplicities `m_i`, so `f = prod g_i^(m_i)`.
fn squarefree_decomposition(f: &ModPoly) -> Vec<(ModPoly, u32)> {
    debug_assert!(f.is_monic());
    let mut out = Vec::new();
    if f.deg() == 0 {
        return out;
    }
    let deriv = f.derivative();
    if deriv.is_zero() {
        // Every multiplicity is divisible by ell: f = g(x^ell).
        for (g, m) in squarefree_decomposition(&f.deflate()) {
            out.push((g, m * f.ell as u32));
        }
        return out;
    }
    let mut c = f.gcd(&deriv);
    let mut w = f.div_exact(&c);
    // w carries each factor whose multiplicity is prime to ell, exactly once.
    let mut i = 1u32;
    while !w.is_one() {
        let y = w.gcd(&c);
        let fac = w.div_exact(&y);
        if fac.deg() >= 1 {
            out.push((fac, i));
        }
        c = c.div_exact(&y);
        w = y;
        i += 1;
    }
    // What remains of c collects the factors with multiplicity divisible by
    // ell; it is an ell-th power, so deflate and recurse.
    if !c.is_one() {
        for (g, m) in squarefree_decomposition(&c.deflate()) {
            out.push((g, m * f.ell as u32));
        }
    }
    out
}

/// Distinct-degree factorization of monic squarefree `f`:
/// pairs `(degree, count)` with `count` irreducible factors of that degree.
fn distinct_degree_counts(f: &ModPoly) -> Vec<(usize, usize)> {
    debug_assert!(f.is_monic());
    let ell = f.ell;
    let mut f = f.clone();
    let mut out = Vec::new();
    if f.deg() == 0 {
        return out;
    }
    let x = ModPoly::x(ell);
    let mut h = x.rem(&f);
    let mut d = 0usize;
    while f.deg() >= 1 {
        d += 1;
        if 2 * d > f.deg() {
            // Whatever survives is a single irreducible factor.
            out.push((f.deg(), 1));
            break;
        }
        h = h.powmod(ell, &f); // h = x^(ell^d) mod f
        let g = f.gcd(&h.sub(&x));
        if g.deg() >= 1 {
            debug_assert_eq!(g.deg() % d, 0);
            out.push((d, g.deg() / d));
            f = f.div_exact(&g);
            h = h.rem(&f);
        }
    }
    out
}

/// Degrees and multiplicities of the irreducible factors of `f mod ell`,
/// one entry per distinct irreducible factor, sorted by degree then
/// multiplicity.
///
/// Errors: `NotPrime` if ell is composite, `ZeroModulo` if every coefficient
/// of `f` vanishes mod ell. A constant (mod ell) polynomial yields an empty
/// list.
pub fn factor_degrees_mod(f: &IntPoly, ell: u64) -> Result<Vec<(usize, u32)>> {
    if !is_prime(&ell.into()) {
        return Err(Error::NotPrime(ell));
    }
    let fbar = ModPoly::from_int_poly(f, ell);
    if fbar.is_zero() {
        return Err(Error::ZeroModulo(ell));
    }
    let mut out = Vec::new();
    for (g, mult) in squarefree_decomposition(&fbar.monic()) {
        for (d, count) in distinct_degree_counts(&g) {
            for _ in 0..count {
                out.push((d, mult));
            }
        }
    }
    out.sort_unstable();
    Ok(out)
}
