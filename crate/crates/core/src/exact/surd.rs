//! Exact values of the form `(a + b*sqrt(r)) / d` with integer `a`, `b`,
//! positive integer `d`, and squarefree radicand `r >= 2`.
//!
//! These are the only irrationals the library touches (interval endpoints
//! `±2*sqrt(q)` and Sturm-chain values there), so a dedicated quadratic-surd
//! type keeps every sign decision exact: the sign of `a + b*sqrt(r)` is
//! resolved by comparing `a^2` against `b^2 * r`, never by approximation.
//!
//! Perfect-square content of the radicand is folded away at construction
//! (`sqrt(12)` becomes `2*sqrt(3)`; `sqrt(9)` becomes the integer 3), so a
//! stored radicand is squarefree, and purely rational values carry no
//! radicand at all. Mixing two different radicands in one operation is a
//! programming error and panics.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::factor::factorize;

/// `(rat + surd * sqrt(radicand)) / den`, exactly.
///
/// Invariants: `den > 0`; `gcd(rat, surd, den) = 1`; `radicand` is squarefree
/// and `>= 2` whenever `surd != 0`, and `0` (meaning "no surd part") whenever
/// `surd == 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadSurd {
    rat: BigInt,
    surd: BigInt,
    den: BigInt,
    radicand: u64,
}

impl QuadSurd {
    /// Build `(rat + surd * sqrt(radicand)) / den`, normalizing.
    ///
    /// `den` must be nonzero. Square factors of `radicand` are folded into
    /// `surd`; a perfect-square radicand makes the value purely rational.
    pub fn new(rat: BigInt, surd: BigInt, den: BigInt, radicand: u64) -> Self {
        assert!(!den.is_zero(), "QuadSurd denominator must be nonzero");
        let (square_root, squarefree) = split_square(radicand);
        let mut v = QuadSurd {
            rat,
            surd: surd * BigInt::from(square_root),
            den,
            radicand: squarefree,
        };
        if v.radicand <= 1 {
            // sqrt(1) = 1 and sqrt(0) = 0 fold into the rational part.
            if v.radicand == 1 {
                v.rat += std::mem::take(&mut v.surd);
            } else {
                v.surd.set_zero();
            }
            v.radicand = 0;
        }
        v.normalize();
        v
    }

    /// The integer `n` as a surd.
    pub fn from_int(n: impl Into<BigInt>) -> Self {
        QuadSurd {
            rat: n.into(),
            surd: BigInt::zero(),
            den: BigInt::one(),
            radicand: 0,
        }
    }

    /// An exact rational as a surd.
    pub fn from_rational(r: &BigRational) -> Self {
        QuadSurd::new(r.numer().clone(), BigInt::zero(), r.denom().clone(), 0)
    }

    /// `c * sqrt(radicand)` for integer `c`.
    pub fn sqrt_term(c: impl Into<BigInt>, radicand: u64) -> Self {
        QuadSurd::new(BigInt::zero(), c.into(), BigInt::one(), radicand)
    }

    /// Rational part as an exact rational.
    pub fn rational_part(&self) -> BigRational {
        BigRational::new(self.rat.clone(), self.den.clone())
    }

    /// Coefficient of `sqrt(radicand)` as an exact rational.
    pub fn surd_part(&self) -> BigRational {
        BigRational::new(self.surd.clone(), self.den.clone())
    }

    /// The stored squarefree radicand, or `None` for purely rational values.
    pub fn radicand(&self) -> Option<u64> {
        if self.radicand >= 2 {
            Some(self.radicand)
        } else {
            None
        }
    }

    pub fn is_zero(&self) -> bool {
        self.rat.is_zero() && self.surd.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.surd.is_zero()
    }

    fn normalize(&mut self) {
        if self.den.is_negative() {
            self.rat = -std::mem::take(&mut self.rat);
            self.surd = -std::mem::take(&mut self.surd);
            self.den = -std::mem::take(&mut self.den);
        }
        let mut g = self.rat.gcd(&self.surd).gcd(&self.den);
        if g.is_zero() {
            g = BigInt::one();
        }
        if !g.is_one() {
            self.rat /= &g;
            self.surd /= &g;
            self.den /= &g;
        }
        if self.surd.is_zero() {
            self.radicand = 0;
        }
    }

    /// Shared radicand of two values, panicking on a genuine mismatch.
    fn join_radicand(&self, other: &Self) -> u64 {
        match (self.radicand, other.radicand) {
            (0, r) | (r, 0) => r,
            (a, b) if a == b => a,
            (a, b) => panic!("QuadSurd radicands differ: sqrt({a}) vs sqrt({b})"),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let radicand = self.join_radicand(other);
        QuadSurd::new(
            &self.rat * &other.den + &other.rat * &self.den,
            &self.surd * &other.den + &other.surd * &self.den,
            &self.den * &other.den,
            radicand,
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        QuadSurd {
            rat: -&self.rat,
            surd: -&self.surd,
            den: self.den.clone(),
            radicand: self.radicand,
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let radicand = self.join_radicand(other);
        let r = BigInt::from(radicand);
        // (a1 + b1 s)(a2 + b2 s) = a1 a2 + b1 b2 r + (a1 b2 + a2 b1) s
        QuadSurd::new(
            &self.rat * &other.rat + &self.surd * &other.surd * r,
            &self.rat * &other.surd + &self.surd * &other.rat,
            &self.den * &other.den,
            radicand,
        )
    }

    pub fn mul_int(&self, k: &BigInt) -> Self {
        let mut v = QuadSurd {
            rat: &self.rat * k,
            surd: &self.surd * k,
            den: self.den.clone(),
            radicand: self.radicand,
        };
        v.normalize();
        v
    }

    /// Exact sign: `-1`, `0`, or `1`.
    ///
    /// Resolved by integer comparisons only: the sign of `a + b*sqrt(r)` with
    /// mixed-sign `a`, `b` is the sign of whichever of `a^2`, `b^2 r` wins.
    /// (`a^2 = b^2 r` with nonzero `b` would force `r` to be a square, which
    /// the constructor rules out.)
    pub fn sign(&self) -> i8 {
        let sa = bigint_sign(&self.rat);
        let sb = bigint_sign(&self.surd);
        match (sa, sb) {
            (0, s) | (s, 0) => s,
            (a, b) if a == b => a,
            _ => {
                let a2 = &self.rat * &self.rat;
                let b2r = &self.surd * &self.surd * BigInt::from(self.radicand);
                match a2.cmp(&b2r) {
                    Ordering::Greater => sa,
                    Ordering::Less => sb,
                    Ordering::Equal => {
                        unreachable!("squarefree radicand cannot satisfy a^2 = b^2 r")
                    }
                }
            }
        }
    }
}

impl PartialOrd for QuadSurd {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for QuadSurd {
    /// Exact comparison; panics if the two values carry different radicands.
    fn cmp(&self, other: &Self) -> Ordering {
        match self.sub(other).sign() {
            -1 => Ordering::Less,
            0 => Ordering::Equal,
            _ => Ordering::Greater,
        }
    }
}

impl fmt::Display for QuadSurd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.surd.is_zero() {
            return write!(f, "{}/{}", self.rat, self.den);
        }
        write!(
            f,
            "({} + {}*sqrt({}))/{}",
            self.rat, self.surd, self.radicand, self.den
        )
    }
}

fn bigint_sign(x: &BigInt) -> i8 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}

/// Split `n` as `s^2 * r` with `r` squarefree; returns `(s, r)`.
///
/// `split_square(0) = (1, 0)` so that a zero radicand passes through.
fn split_square(n: u64) -> (u64, u64) {
    if n == 0 {
        return (1, 0);
    }
    let fac = factorize(&n.into()).expect("nonzero input");
    let mut s: u64 = 1;
    let mut r: u64 = 1;
    for (p, e) in &fac.factors {
        let p: u64 = p.try_into().expect("radicand fits u64");
        for _ in 0..(e / 2) {
            s *= p;
        }
        if e % 2 == 1 {
            r *= p;
        }
    }
    (s, r)
}
