//! Sturm's method: exact counting of distinct real roots in an interval.
//!
//! The chain is built with pseudo-remainders (integer arithmetic only). A
//! pseudo-remainder equals the true remainder times `lc^(da-db+1)`, so each
//! step flips the sign when that power is negative, keeping every chain
//! member a *positive* multiple of the textbook (rational) Sturm chain
//! member. Positive content is stripped to limit coefficient growth; neither
//! adjustment changes any sign sequence.
//!
//! Interval endpoints may be quadratic surds, so bounds like `2 sqrt(q)` are
//! handled exactly rather than through a decimal approximation.

use num_traits::{One, Signed};

use super::poly::IntPoly;
use super::surd::QuadSurd;
use crate::error::{Error, Result};

/// Divide out the (positive) content, preserving signs.
fn strip_content(p: IntPoly) -> IntPoly {
    if p.is_zero() {
        return p;
    }
    let c = p.content();
    if c.is_one() {
        return p;
    }
    IntPoly::new(p.coeffs().iter().map(|x| x / &c).collect())
}

/// Sturm chain of a squarefree polynomial: `p0 = f`, `p1 = f'`, then
/// sign-corrected pseudo-remainders until the chain terminates in a nonzero
/// constant.
pub(crate) fn sturm_chain(f: &IntPoly) -> Vec<IntPoly> {
    let mut chain = vec![f.clone()];
    let d = f.derivative();
    if d.is_zero() {
        return chain;
    }
    chain.push(d);
    loop {
        let a = &chain[chain.len() - 2];
        let b = &chain[chain.len() - 1];
        if b.deg() == 0 {
            break;
        }
        let r = a.pseudo_rem(b);
        if r.is_zero() {
            break;
        }
        let k = a.deg() - b.deg() + 1;
        let multiplier_negative = b.lc().is_negative() && k % 2 == 1;
        let next = if multiplier_negative { r } else { r.neg() };
        chain.push(strip_content(next));
    }
    chain
}

/// Sign variations of the chain evaluated at `x`, zeros dropped.
fn sign_variations(chain: &[IntPoly], x: &QuadSurd) -> usize {
    let mut last: i8 = 0;
    let mut variations = 0;
    for p in chain {
        let s = p.eval_surd(x).sign();
        if s == 0 {
            continue;
        }
        if last != 0 && s != last {
            variations += 1;
        }
        last = s;
    }
    variations
}

/// Number of distinct real roots of squarefree `f` in the half-open interval
/// `(lo, hi]`, computed exactly.
///
/// Errors: `NotSquarefree` if `f` has a repeated root (or is zero),
/// `EmptyInterval` if `lo > hi`.
pub fn sturm_count(f: &IntPoly, lo: &QuadSurd, hi: &QuadSurd) -> Result<usize> {
    if !f.is_squarefree() {
        return Err(Error::NotSquarefree);
    }
    if lo > hi {
        return Err(Error::EmptyInterval);
    }
    if f.deg() == 0 {
        return Ok(0);
    }
    let chain = sturm_chain(f);
    let vlo = sign_variations(&chain, lo);
    let vhi = sign_variations(&chain, hi);
    debug_assert!(vlo >= vhi, "sign variations must not increase left to right");
    Ok(vlo - vhi)
}
