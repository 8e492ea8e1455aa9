//! Weil polynomials: monic integer polynomials of degree `2g` whose complex
//! roots all have absolute value `sqrt(q)`, for a prime power `q = p^m`.
//!
//! Such a polynomial satisfies the coefficient symmetry
//! `a_i = q^(g-i) a_(2g-i)`, so it is determined by the free coefficients
//! `(a_(2g-1), ..., a_g)`. Substituting `y = x + q/x` produces the *real
//! companion* `h` of degree `g` with `f(x) = x^g h(x + q/x)`; `f` is a Weil
//! polynomial exactly when `h` has all roots real in `[-2 sqrt(q), 2 sqrt(q)]`,
//! which this module decides exactly with Sturm chains over quadratic surds
//! (closed forms exist for `g = 2, 3` and are used as fast paths).
//!
//! Irreducibility over `Q` uses the structure of Weil factorizations: every
//! irreducible factor of a Weil polynomial is itself symmetric of even degree
//! (its root multiset is closed under `x -> q/x`, which coincides with complex
//! conjugation on the circle `|x| = sqrt(q)`), except for `x^2 - q` and
//! `x -+ sqrt(q)`, which can only enter in pairs. Hence trial division by the
//! finitely many symmetric divisors of degree 2, 4, and 6 is a complete test
//! up to `g = 7`, and an irreducible factorization mod a small prime gives a
//! cheap positive certificate first.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::factor::{factorize, is_prime};
use crate::exact::modpoly::factor_degrees_mod;
use crate::exact::newton::newton_polygon;
use crate::exact::poly::IntPoly;
use crate::exact::sturm::sturm_count;
use crate::exact::surd::QuadSurd;

/// Small binomial coefficient.
fn binom(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let mut acc = BigInt::one();
    for i in 0..k.min(n - k) {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Floor square root of a nonnegative integer.
fn isqrt(n: &BigInt) -> BigInt {
    debug_assert!(!n.is_negative());
    n.sqrt()
}

/// `ceil(a / b)` for `b > 0`.
fn ceil_div(a: &BigInt, b: &BigInt) -> BigInt {
    (a + (b - 1i32)).div_floor(b)
}

/// The symmetric-power basis polynomials `C_k(y)` with
/// `x^k + (q/x)^k = C_k(x + q/x)`: `C_0 = 2`, `C_1 = y`,
/// `C_(k+1) = y C_k - q C_(k-1)`.
fn power_pair_poly(k: usize, q: u64) -> IntPoly {
    let mut prev = IntPoly::constant(BigInt::from(2));
    let mut cur = IntPoly::from_i64(&[0, 1]);
    if k == 0 {
        return prev;
    }
    let y = IntPoly::from_i64(&[0, 1]);
    let qc = BigInt::from(q);
    for _ in 1..k {
        let next = y.mul(&cur).sub(&prev.scale(&qc));
        prev = cur;
        cur = next;
    }
    cur
}

/// Expand `x^g h(x + q/x)` into an honest polynomial: with
/// `h = sum c_j y^j`, this is `sum c_j x^(g-j) (x^2 + q)^j`.
#[cfg(test)]
fn expand_companion(h: &IntPoly, q: u64, g: usize) -> IntPoly {
    let base = IntPoly::new(vec![BigInt::from(q), BigInt::zero(), BigInt::one()]);
    let mut power = IntPoly::one(); // (x^2 + q)^j
    let mut acc = IntPoly::zero();
    for j in 0..=g {
        let term = power.scale(&h.coeff(j)).shift(g - j);
        acc = acc.add(&term);
        power = power.mul(&base);
    }
    acc
}

/// A monic symmetric candidate of degree `2g` over `q = p^m`, determined by
/// its free coefficients. Whether it is actually a Weil polynomial is decided
/// by [`WeilPoly::is_weil`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeilPoly {
    p: u64,
    m: u32,
    q: u64,
    g: usize,
    /// `(a_(2g-1), ..., a_g)`, descending subscripts.
    free: Vec<BigInt>,
    poly: IntPoly,
}

impl WeilPoly {
    /// Build the symmetric polynomial from its free coefficients
    /// `(a_(2g-1), ..., a_g)`.
    pub fn from_free_coeffs(p: u64, m: u32, g: usize, free: &[BigInt]) -> Result<Self> {
        if !is_prime(&p.into()) {
            return Err(Error::NotPrime(p));
        }
        if m == 0 {
            return Err(Error::ZeroExponent);
        }
        if g < 1 {
            return Err(Error::DimensionTooSmall { min: 1, got: g });
        }
        if free.len() != g {
            return Err(Error::WrongCoeffCount {
                g,
                expected: g,
                got: free.len(),
            });
        }
        let q = p.checked_pow(m).ok_or(Error::Overflow("q = p^m"))?;
        let qb = BigInt::from(q);
        let mut coeffs = vec![BigInt::zero(); 2 * g + 1];
        coeffs[2 * g] = BigInt::one();
        for (k, a) in free.iter().enumerate() {
            // free[k] is a_(2g-1-k)
            coeffs[2 * g - 1 - k] = a.clone();
        }
        for i in 0..g {
            // symmetry: a_i = q^(g-i) a_(2g-i)
            coeffs[i] = qb.pow((g - i) as u32) * &coeffs[2 * g - i];
        }
        Ok(WeilPoly {
            p,
            m,
            q,
            g,
            free: free.to_vec(),
            poly: IntPoly::new(coeffs),
        })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn g(&self) -> usize {
        self.g
    }

    /// The full polynomial.
    pub fn poly(&self) -> &IntPoly {
        &self.poly
    }

    /// Free coefficients `(a_(2g-1), ..., a_g)`.
    pub fn free_coeffs(&self) -> &[BigInt] {
        &self.free
    }

    /// Coefficient `a_i` of `x^i`, `0 <= i <= 2g`.
    pub fn coeff_a(&self, i: usize) -> BigInt {
        assert!(i <= 2 * self.g, "coefficient index out of range");
        self.poly.coeff(i)
    }

    /// The real companion `h` with `f(x) = x^g h(x + q/x)`:
    /// `h = C_g + a_(g+1) C_1 + ... + a_(2g-1) C_(g-1) + a_g`
    /// where `C_k` are the power-pair polynomials.
    pub fn real_companion(&self) -> IntPoly {
        let mut h = power_pair_poly(self.g, self.q);
        for k in 1..self.g {
            // a_(g+k) multiplies C_k; free[g-1-k] = a_(g+k)
            let a = &self.free[self.g - 1 - k];
            h = h.add(&power_pair_poly(k, self.q).scale(a));
        }
        h.add(&IntPoly::constant(self.free[self.g - 1].clone()))
    }

    /// Exact test: do all complex roots have absolute value `sqrt(q)`?
    ///
    /// Dispatches to the closed forms for `g = 2` (and `g = 3` off the
    /// boundary); otherwise locates the companion's roots with Sturm chains.
    pub fn is_weil(&self) -> bool {
        match self.g {
            2 => is_weil_dim2(self.q, &self.free[0], &self.free[1]),
            3 => {
                // The closed form implies Weil; on its (strict) boundary fall
                // back to the exact root count.
                is_weil_dim3(self.q, &self.free[0], &self.free[1], &self.free[2])
                    || companion_roots_fill_range(&self.real_companion(), self.q)
            }
            _ => companion_roots_fill_range(&self.real_companion(), self.q),
        }
    }

    /// The number of unit roots mod p: the length of the slope-zero segment
    /// of the p-adic Newton polygon. Between `0` (supersingular-like) and `g`
    /// (ordinary).
    pub fn p_rank(&self) -> u64 {
        newton_polygon(&self.poly, self.p)
            .expect("p is prime and the polynomial is monic")
            .slope_zero_length()
    }

    /// Exact irreducibility over `Q`, complete for `g <= 7`.
    ///
    /// Order of attack: trial division by the symmetric quadratics
    /// `x^2 - q` and `x^2 + tx + q` (`t^2 <= 4q`), then a positive
    /// certificate from an irreducible reduction mod a small prime, then the
    /// symmetric quartic (for `g >= 4`) and sextic (for `g >= 6`) divisors.
    pub fn is_irreducible(&self) -> Result<bool> {
        let g = self.g;
        let qb = BigInt::from(self.q);
        if g == 1 {
            // Quadratic: reducible over Q exactly when it has an integer
            // root, which must divide the constant term q.
            let fac = factorize(&self.q.into()).expect("q >= 2");
            for d in fac.divisors() {
                let d = BigInt::from(d);
                if self.poly.eval(&d).is_zero() || self.poly.eval(&(-d)).is_zero() {
                    return Ok(false);
                }
            }
            return Ok(true);
        }
        if g > 7 {
            return Err(Error::DimensionTooLarge { max: 7, got: g });
        }
        // Symmetric quadratic divisors. x^2 - q can only divide as a square,
        // but dividing by it once detects that case.
        let x2_minus_q = IntPoly::new(vec![-&qb, BigInt::zero(), BigInt::one()]);
        if self.poly.try_div_exact(&x2_minus_q).is_some() {
            return Ok(false);
        }
        let tmax = isqrt(&(&qb * 4i32));
        let mut t = -&tmax;
        while t <= tmax {
            let d = IntPoly::new(vec![qb.clone(), t.clone(), BigInt::one()]);
            if self.poly.try_div_exact(&d).is_some() {
                return Ok(false);
            }
            t += 1i32;
        }
        // Positive certificate: irreducible of full degree mod some small
        // prime (skip p itself: the reduction mod p is always divisible by x).
        for ell in [2u64, 3, 5, 7, 11, 13] {
            if ell == self.p {
                continue;
            }
            if let Ok(pattern) = factor_degrees_mod(&self.poly, ell) {
                if pattern == [(2 * g, 1)] {
                    return Ok(true);
                }
            }
        }
        // Symmetric quartic divisors x^4 + b3 x^3 + b2 x^2 + q b3 x + q^2.
        if g >= 4 {
            let b3max = isqrt(&(&qb * 16i32));
            let b2max = &qb * 6i32;
            let mut b3 = -&b3max;
            while b3 <= b3max {
                let mut b2 = -&b2max;
                while b2 <= b2max {
                    let d = IntPoly::new(vec![
                        &qb * &qb,
                        &qb * &b3,
                        b2.clone(),
                        b3.clone(),
                        BigInt::one(),
                    ]);
                    if self.poly.try_div_exact(&d).is_some() {
                        return Ok(false);
                    }
                    b2 += 1i32;
                }
                b3 += 1i32;
            }
        }
        // Symmetric sextic divisors
        // x^6 + b5 x^5 + b4 x^4 + b3 x^3 + q b4 x^2 + q^2 b5 x + q^3.
        if g >= 6 {
            let b5max = isqrt(&(&qb * 36i32));
            let b4max = &qb * 15i32;
            let b3max = isqrt(&(qb.pow(3) * 400i32));
            let mut b5 = -&b5max;
            while b5 <= b5max {
                let mut b4 = -&b4max;
                while b4 <= b4max {
                    let mut b3 = -&b3max;
                    while b3 <= b3max {
                        let d = IntPoly::new(vec![
                            qb.pow(3),
                            &qb * &qb * &b5,
                            &qb * &b4,
                            b3.clone(),
                            b4.clone(),
                            b5.clone(),
                            BigInt::one(),
                        ]);
                        if self.poly.try_div_exact(&d).is_some() {
                            return Ok(false);
                        }
                        b3 += 1i32;
                    }
                    b4 += 1i32;
                }
                b5 += 1i32;
            }
        }
        Ok(true)
    }
}

impl std::fmt::Display for WeilPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.poly)
    }
}

/// Does `h` (monic, the real companion of a symmetric candidate over `q`)
/// have all roots real in `[-2 sqrt(q), 2 sqrt(q)]`?
///
/// Strips endpoint roots first (they are exact algebraic numbers), then
/// demands that the squarefree remainder have full root count in the open
/// interval via a Sturm chain.
fn companion_roots_fill_range(h: &IntPoly, q: u64) -> bool {
    let mut cur = h.squarefree_part();
    let hi = QuadSurd::sqrt_term(2, q);
    let lo = hi.neg();
    if hi.is_rational() {
        // q is a perfect square: endpoints are the integers +-2 sqrt(q).
        let two_s = hi.rational_part().to_integer();
        for e in [two_s.clone(), -two_s] {
            if cur.eval(&e).is_zero() {
                cur = cur
                    .try_div_exact(&IntPoly::new(vec![-e.clone(), BigInt::one()]))
                    .expect("root implies linear factor");
            }
        }
    } else if cur.eval_surd(&hi).sign() == 0 {
        // 2 sqrt(q) irrational: its minimal polynomial y^2 - 4q divides.
        let min_poly = IntPoly::new(vec![BigInt::from(-4) * BigInt::from(q), BigInt::zero(), BigInt::one()]);
        cur = cur
            .try_div_exact(&min_poly)
            .expect("surd root implies its minimal polynomial divides");
    }
    if cur.deg() == 0 {
        return true;
    }
    // No endpoint roots remain, so the half-open count equals the open count.
    sturm_count(&cur, &lo, &hi) == Ok(cur.deg())
}

/// Closed form for `g = 2`: is `x^4 + a3 x^3 + a2 x^2 + q a3 x + q^2` a Weil
/// polynomial? Exact, endpoints included.
pub fn is_weil_dim2(q: u64, a3: &BigInt, a2: &BigInt) -> bool {
    let qb = BigInt::from(q);
    // |a3| <= 2 floor(2 sqrt(q)): companion vertex inside the interval.
    let s = isqrt(&(&qb * 4i32));
    if a3.abs() > &s * 2i32 {
        return false;
    }
    // Companion nonnegative at both endpoints: a2 + 2q >= 2 sqrt(q) |a3|.
    let t = a2 + &qb * 2i32;
    if t.is_negative() || &qb * 4i32 * a3 * a3 > &t * &t {
        return false;
    }
    // Real companion roots: discriminant a3^2 - 4(a2 - 2q) >= 0.
    a2 * 4i32 <= a3 * a3 + &qb * 8i32
}

/// Closed form for `g = 3`: is
/// `x^6 + a5 x^5 + a4 x^4 + a3 x^3 + q a4 x^2 + q^2 a5 x + q^3` a Weil
/// polynomial with no root at `+-sqrt(q)` itself?
///
/// The conditions keep the companion cubic's critical points and values
/// strictly inside the interval, so candidates whose companion vanishes at
/// `+-2 sqrt(q)` are rejected even though they are (reducible) Weil
/// polynomials: every such candidate is divisible by `(x^2 - q)^2` or
/// `(x -+ sqrt(q))^2`, so this is harmless when enumerating irreducibles.
pub fn is_weil_dim3(q: u64, a5: &BigInt, a4: &BigInt, a3: &BigInt) -> bool {
    let qb = BigInt::from(q);
    // (1) |a5| < 6 sqrt(q): companion inflection strictly inside.
    if a5 * a5 >= &qb * 36i32 {
        return false;
    }
    // (2) companion derivative positive at both endpoints and real-rooted:
    // a4 + 9q > 4 sqrt(q) |a5| strictly, plus disc(h') >= 0.
    let u = a4 + &qb * 9i32;
    if !u.is_positive() || &qb * 16i32 * a5 * a5 >= &u * &u {
        return false;
    }
    if a4 * 3i32 > a5 * a5 + &qb * 9i32 {
        return false;
    }
    // (3) all companion roots real: with h = y^3 + a5 y^2 + (a4 - 3q) y
    // + (a3 - 2q a5), this is T^2 <= 4 D^3 for the depressed-cubic data.
    let t = a3 * 27i32 + a5 * a5 * a5 * 2i32 - a5 * a4 * 9i32 - &qb * 27i32 * a5;
    let d = a5 * a5 - a4 * 3i32 + &qb * 9i32;
    if d.is_negative() || &t * &t > &d * &d * &d * 4i32 {
        return false;
    }
    // (4) companion strictly positive at both endpoints:
    // 2 sqrt(q) (a4 + q) > |a3 + 2q a5|.
    let v = a4 + &qb;
    if !v.is_positive() {
        return false;
    }
    let w = a3 + &qb * 2i32 * a5;
    &w * &w < &qb * 4i32 * &v * &v
}

/// Pins some free coefficients `a_i` to fixed values during enumeration.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CoeffFix {
    pinned: Vec<(usize, BigInt)>,
}

impl CoeffFix {
    pub fn new() -> Self {
        CoeffFix::default()
    }

    /// Pin `a_index` to `value` (replacing any earlier pin on the same index).
    pub fn set(mut self, index: usize, value: BigInt) -> Self {
        self.pinned.retain(|(i, _)| *i != index);
        self.pinned.push((index, value));
        self
    }

    pub fn get(&self, index: usize) -> Option<&BigInt> {
        self.pinned
            .iter()
            .find(|(i, _)| *i == index)
            .map(|(_, v)| v)
    }

    pub fn is_empty(&self) -> bool {
        self.pinned.is_empty()
    }

    pub fn pins(&self) -> &[(usize, BigInt)] {
        &self.pinned
    }

    /// All pinned indices must be free coefficients: `g <= index <= 2g - 1`.
    fn validate(&self, g: usize) -> Result<()> {
        for (i, _) in &self.pinned {
            if *i < g || *i > 2 * g - 1 {
                return Err(Error::BadFixIndex { index: *i, g });
            }
        }
        Ok(())
    }
}

/// Depth-first enumeration state over companion power sums.
struct Enumerator {
    p: u64,
    m: u32,
    q: u64,
    g: usize,
    four_q: BigInt,
    g_big: BigInt,
    /// Pinned value of `a_(2g-k)` per level `k` (index `k - 1`).
    pins: Vec<Option<BigInt>>,
    /// `cs[k-1] = c_(g-k)`: companion coefficients fixed so far.
    cs: Vec<BigInt>,
    /// `ps[k-1] = p_k`: power sums fixed so far.
    ps: Vec<BigInt>,
    /// `avals[k-1] = a_(2g-k)`: free coefficients fixed so far.
    avals: Vec<BigInt>,
    out: Vec<WeilPoly>,
}

impl Enumerator {
    /// `a_(2g-k) - c_(g-k)`: the contribution of already-fixed higher
    /// companion coefficients, from the expansion
    /// `a_(2g-k) = sum_(j >= g-k, j = g-k mod 2) c_j C(j, (j-(g-k))/2) q^((j-(g-k))/2)`
    /// with `c_g = 1`.
    fn a_shift(&self, k: usize) -> BigInt {
        let base = self.g - k;
        let qb = BigInt::from(self.q);
        let mut acc = BigInt::zero();
        let mut j = base + 2;
        while j <= self.g {
            let t = (j - base) / 2;
            let cj = if j == self.g {
                BigInt::one()
            } else {
                self.cs[self.g - j - 1].clone()
            };
            acc += cj * binom(j, t) * qb.pow(t as u32);
            j += 2;
        }
        acc
    }

    /// Valid range for the power sum `p_k`, given everything before it.
    /// Each bound is a consequence of "all companion roots are real in
    /// `[-2 sqrt(q), 2 sqrt(q)]`", so pruning never loses a Weil polynomial.
    fn bounds(&self, k: usize) -> (BigInt, BigInt) {
        if k == 1 {
            // |p_1| <= 2 g sqrt(q)
            let hi = isqrt(&(&self.g_big * &self.g_big * &self.four_q));
            return (-&hi, hi);
        }
        if k == 2 {
            // p_1^2 / g <= p_2 <= 4 g q (Cauchy-Schwarz; r^2 <= 4q)
            let p1 = &self.ps[0];
            return (ceil_div(&(p1 * p1), &self.g_big), &self.g_big * &self.four_q);
        }
        let p2 = &self.ps[1];
        if k % 2 == 1 {
            // |p_k| <= min(g (2 sqrt(q))^k, (2 sqrt(q))^(k-2) p_2)
            let a = isqrt(&(&self.g_big * &self.g_big * self.four_q.pow(k as u32)));
            let b = isqrt(&(self.four_q.pow((k - 2) as u32) * p2 * p2));
            let hi = a.min(b);
            (-&hi, hi)
        } else {
            // p_(k/2)^2 / g <= p_k <= min(g (4q)^(k/2), (4q)^((k-2)/2) p_2)
            let a = &self.g_big * self.four_q.pow((k / 2) as u32);
            let b = self.four_q.pow(((k - 2) / 2) as u32) * p2;
            let hi = a.min(b);
            let ph = &self.ps[k / 2 - 1];
            let lo = ceil_div(&(ph * ph), &self.g_big).max(BigInt::zero());
            (lo, hi)
        }
    }

    fn descend(&mut self, k: usize) -> Result<()> {
        if k > self.g {
            return self.leaf();
        }
        // Newton's identity: p_k + sum_(i=1)^(k-1) c_(g-i) p_(k-i)
        // + k c_(g-k) = 0.
        let mut s_k = BigInt::zero();
        for i in 1..k {
            s_k += &self.cs[i - 1] * &self.ps[k - i - 1];
        }
        let (lo, hi) = self.bounds(k);
        let kb = BigInt::from(k);
        let shift = self.a_shift(k);
        if let Some(v) = self.pins[k - 1].clone() {
            // a_(2g-k) pinned: c and p are both determined.
            let c = &v - &shift;
            let pk = -(&kb * &c + &s_k);
            if pk < lo || pk > hi {
                return Ok(());
            }
            self.cs.push(c);
            self.ps.push(pk);
            self.avals.push(v);
            self.descend(k + 1)?;
            self.cs.pop();
            self.ps.pop();
            self.avals.pop();
            return Ok(());
        }
        // Iterate p_k descending (so c_(g-k), hence a_(2g-k), ascends) over
        // the residue class making c_(g-k) an integer.
        let r = (-&s_k).mod_floor(&kb);
        let mut pk = &hi - (&hi - &r).mod_floor(&kb);
        while pk >= lo {
            let c = -((&pk + &s_k) / &kb);
            let a = &c + &shift;
            self.cs.push(c);
            self.ps.push(pk.clone());
            self.avals.push(a);
            self.descend(k + 1)?;
            self.cs.pop();
            self.ps.pop();
            self.avals.pop();
            pk -= &kb;
        }
        Ok(())
    }

    fn leaf(&mut self) -> Result<()> {
        let weil = match self.g {
            2 => is_weil_dim2(self.q, &self.avals[0], &self.avals[1]),
            3 => is_weil_dim3(self.q, &self.avals[0], &self.avals[1], &self.avals[2]),
            _ => {
                let mut coeffs: Vec<BigInt> = self.cs.iter().rev().cloned().collect();
                coeffs.push(BigInt::one());
                companion_roots_fill_range(&IntPoly::new(coeffs), self.q)
            }
        };
        if !weil {
            return Ok(());
        }
        let w = WeilPoly::from_free_coeffs(self.p, self.m, self.g, &self.avals)?;
        debug_assert_eq!(
            {
                let mut coeffs: Vec<BigInt> = self.cs.iter().rev().cloned().collect();
                coeffs.push(BigInt::one());
                IntPoly::new(coeffs)
            },
            w.real_companion(),
            "companion coefficients and free coefficients must agree"
        );
        if w.is_irreducible()? {
            self.out.push(w);
        }
        Ok(())
    }
}

/// All irreducible Weil polynomials for `q = p^m` and dimension `g`, with
/// any pinned coefficients respected, ordered lexicographically (ascending)
/// by the free tuple `(a_(2g-1), ..., a_g)`.
///
/// The search runs over companion power sums with interval-reality pruning;
/// every bound used is a necessary condition for being a Weil polynomial,
/// so the output is exactly the set of irreducible Weil polynomials.
/// For `g = 3` the boundary cases excluded by the closed form are all
/// divisible by `(x^2 - q)^2` or `(x -+ sqrt(q))^2` and so never irreducible.
pub fn enumerate_weil(p: u64, m: u32, g: usize, fix: &CoeffFix) -> Result<Vec<WeilPoly>> {
    if !is_prime(&p.into()) {
        return Err(Error::NotPrime(p));
    }
    if m == 0 {
        return Err(Error::ZeroExponent);
    }
    if g < 1 {
        return Err(Error::DimensionTooSmall { min: 1, got: g });
    }
    fix.validate(g)?;
    let q = p.checked_pow(m).ok_or(Error::Overflow("q = p^m"))?;
    let pins = (1..=g)
        .map(|k| fix.get(2 * g - k).cloned())
        .collect();
    let mut e = Enumerator {
        p,
        m,
        q,
        g,
        four_q: BigInt::from(q) * 4i32,
        g_big: BigInt::from(g),
        pins,
        cs: Vec::with_capacity(g),
        ps: Vec::with_capacity(g),
        avals: Vec::with_capacity(g),
        out: Vec::new(),
    };
    e.descend(1)?;
    Ok(e.out)
}
