//! Newton polygons of integer polynomials at a prime.
//!
//! The polygon is the lower convex hull of the points `(i, v_p(a_i))` over
//! the nonzero coefficients `a_i`. Segments are reported left to right, so
//! slopes increase; for a Weil polynomial (monic, constant term a power of
//! `q`) the slopes run from negative up to 0, and the horizontal length of
//! the slope-0 part is the p-rank.

use num_bigint::BigInt;
use num_rational::Ratio;
use num_traits::Zero;

use crate::error::{Error, Result};
use super::factor::is_prime;
use super::poly::IntPoly;

/// One segment of a Newton polygon.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Segment {
    /// Slope as an exact rational.
    pub slope: Ratio<i64>,
    /// Horizontal length (number of lattice columns spanned).
    pub length: u64,
}

/// Lower convex hull of `(i, v_p(a_i))`, segments in increasing slope order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NewtonPolygon {
    pub segments: Vec<Segment>,
}

impl NewtonPolygon {
    /// Horizontal length of the slope-zero part (0 if absent).
    pub fn slope_zero_length(&self) -> u64 {
        self.segments
            .iter()
            .find(|s| s.slope.is_zero())
            .map_or(0, |s| s.length)
    }

    /// Total horizontal length (difference of extreme nonzero indices).
    pub fn width(&self) -> u64 {
        self.segments.iter().map(|s| s.length).sum()
    }
}

/// `v_p(a)` for nonzero `a`.
fn valuation(p: u64, a: &BigInt) -> u64 {
    debug_assert!(!a.is_zero());
    let p = BigInt::from(p);
    let mut a = a.clone();
    let mut v = 0;
    loop {
        let (q, r) = num_integer::Integer::div_rem(&a, &p);
        if !r.is_zero() {
            return v;
        }
        a = q;
        v += 1;
    }
}

/// Newton polygon of a nonzero polynomial at the prime `p`.
pub fn newton_polygon(f: &IntPoly, p: u64) -> Result<NewtonPolygon> {
    if !is_prime(&p.into()) {
        return Err(Error::NotPrime(p));
    }
    if f.is_zero() {
        return Err(Error::internal("newton polygon of the zero polynomial"));
    }
    // Points over nonzero coefficients, ascending in i.
    let pts: Vec<(i64, i64)> = f
        .coeffs()
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| (i as i64, valuation(p, c) as i64))
        .collect();
    // Monotone-chain lower hull.
    let mut hull: Vec<(i64, i64)> = Vec::with_capacity(pts.len());
    for &pt in &pts {
        while hull.len() >= 2 {
            let a = hull[hull.len() - 2];
            let b = hull[hull.len() - 1];
            // Keep b only if it turns strictly left of segment a->pt.
            let cross = (b.0 - a.0) * (pt.1 - a.1) - (b.1 - a.1) * (pt.0 - a.0);
            if cross <= 0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(pt);
    }
    let mut segments = Vec::with_capacity(hull.len().saturating_sub(1));
    for w in hull.windows(2) {
        let (x0, y0) = w[0];
        let (x1, y1) = w[1];
        segments.push(Segment {
            slope: Ratio::new(y1 - y0, x1 - x0),
            length: (x1 - x0) as u64,
        });
    }
    Ok(NewtonPolygon { segments })
}
