//! Integer factorization and primality, exact and deterministic.
//!
//! Strategy: trial division by primes below 10^4, then Brent-style Pollard
//! rho on what survives, recursing until every piece passes a primality
//! check. The rho parameters are derived deterministically from the input
//! (plus an optional caller seed), so identical inputs always factor the same
//! way.
//!
//! Primality: Miller-Rabin with the fixed 12-base set, which is a proven
//! deterministic test below 3.3 * 10^24; larger inputs additionally pass a
//! strong Lucas test (the Baillie-PSW combination, which has no known
//! counterexample). Inputs that large only arise from adversarial arguments,
//! and every factorization is verified multiplicatively by callers' tests.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use once_cell::sync::Lazy;

use crate::error::{Error, Result};

/// Primes below 10^4, for trial division.
static SMALL_PRIMES: Lazy<Vec<u64>> = Lazy::new(|| {
    let limit = 10_000usize;
    let mut sieve = vec![true; limit];
    sieve[0] = false;
    sieve[1] = false;
    for i in 2..limit {
        if sieve[i] {
            for j in (i * i..limit).step_by(i) {
                sieve[j] = false;
            }
        }
    }
    sieve
        .iter()
        .enumerate()
        .filter_map(|(i, &p)| p.then_some(i as u64))
        .collect()
});

/// Largest value for which the 12-base Miller-Rabin set is proven exact.
static MR_PROVEN_BOUND: Lazy<BigUint> = Lazy::new(|| {
    "3317044064679887385961981".parse().unwrap()
});

const MR_BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

/// A number together with its prime factorization, exponents >= 1,
/// primes strictly increasing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pub factors: Vec<(BigUint, u32)>,
}

impl Factorization {
    /// Multiply the factorization back together.
    pub fn value(&self) -> BigUint {
        let mut v = BigUint::one();
        for (p, e) in &self.factors {
            v *= p.pow(*e);
        }
        v
    }

    /// All positive divisors, ascending.
    pub fn divisors(&self) -> Vec<BigUint> {
        let mut out = vec![BigUint::one()];
        for (p, e) in &self.factors {
            let mut next = Vec::with_capacity(out.len() * (*e as usize + 1));
            let mut pk = BigUint::one();
            for _ in 0..=*e {
                for d in &out {
                    next.push(d * &pk);
                }
                pk *= p;
            }
            out = next;
        }
        out.sort();
        out
    }

    /// Exponent of `p` in the factorization (0 if absent).
    pub fn exponent_of(&self, p: &BigUint) -> u32 {
        self.factors
            .iter()
            .find(|(q, _)| q == p)
            .map_or(0, |(_, e)| *e)
    }
}

/// Deterministic primality test (exact; see module docs).
pub fn is_prime(n: &BigUint) -> bool {
    if n < &BigUint::from(2u32) {
        return false;
    }
    for &p in SMALL_PRIMES.iter() {
        let p = BigUint::from(p);
        if &p * &p > *n {
            return true;
        }
        if (n % &p).is_zero() {
            return n == &p;
        }
    }
    if !miller_rabin(n) {
        return false;
    }
    if n <= &MR_PROVEN_BOUND {
        return true;
    }
    strong_lucas(n)
}

/// Miller-Rabin with the fixed 12-base set; `n` odd, > 37, no small factors.
fn miller_rabin(n: &BigUint) -> bool {
    let one = BigUint::one();
    let n_minus_1 = n - &one;
    let s = n_minus_1.trailing_zeros().expect("n odd so n-1 > 0");
    let d = &n_minus_1 >> s;
    'bases: for &a in MR_BASES.iter() {
        let a = BigUint::from(a);
        if &a >= n {
            continue;
        }
        let mut x = a.modpow(&d, n);
        if x.is_one() || x == n_minus_1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == n_minus_1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

/// Jacobi symbol (a/n) for odd positive n.
fn jacobi(a: &BigInt, n: &BigUint) -> i8 {
    let mut a = a.mod_floor(&BigInt::from(n.clone()));
    let mut n = BigInt::from(n.clone());
    let mut result: i8 = 1;
    while !a.is_zero() {
        while a.is_even() {
            a /= 2;
            let r = (&n % 8u32).to_u8().unwrap();
            if r == 3 || r == 5 {
                result = -result;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if (&a % 4u32).to_u8().unwrap() == 3 && (&n % 4u32).to_u8().unwrap() == 3 {
            result = -result;
        }
        a %= &n;
    }
    if n.is_one() {
        result
    } else {
        0
    }
}

/// Strong Lucas probable-prime test with Selfridge parameters; `n` odd, > 2,
/// not divisible by small primes.
fn strong_lucas(n: &BigUint) -> bool {
    // A perfect square never has Jacobi(D/n) = -1, so rule it out first.
    let r = n.sqrt();
    if &(&r * &r) == n {
        return false;
    }
    // Selfridge: first D in 5, -7, 9, -11, ... with (D/n) = -1.
    let mut d = BigInt::from(5);
    loop {
        match jacobi(&d, n) {
            -1 => break,
            0 => {
                // Shares a factor with n (d odd < n here), so composite.
                if BigInt::from(n.clone()) != d.abs() {
                    return false;
                }
            }
            _ => {}
        }
        d = if d.is_positive() { -(&d + 2i32) } else { -(&d - 2i32) };
    }
    let p = BigInt::one();
    let q = (BigInt::one() - &d) / 4;
    let n_int = BigInt::from(n.clone());
    let modn = |x: &BigInt| -> BigInt { x.mod_floor(&n_int) };
    // delta = n + 1 = t * 2^s with t odd.
    let delta = n + BigUint::one();
    let s = delta.trailing_zeros().expect("delta even");
    let t = &delta >> s;
    // Binary ladder for U_t, V_t, Q^t mod n.
    let inv2 = (&n_int + 1) / 2; // inverse of 2 mod odd n
    let mut u = BigInt::zero();
    let mut v = BigInt::from(2);
    let mut qk = BigInt::one(); // Q^k for current index k
    let bits = t.bits();
    for i in (0..bits).rev() {
        // double: (U, V, Q^k) -> (U V, V^2 - 2 Q^k, Q^2k)
        let new_u = modn(&(&u * &v));
        let new_v = modn(&(&v * &v - 2 * &qk));
        u = new_u;
        v = new_v;
        qk = modn(&(&qk * &qk));
        if t.bit(i) {
            // increment: U' = (P U + V)/2, V' = (D U + P V)/2, Q^k *= Q
            let su = modn(&((&p * &u + &v) * &inv2));
            let sv = modn(&((&d * &u + &p * &v) * &inv2));
            u = su;
            v = sv;
            qk = modn(&(&qk * &q));
        }
    }
    if u.is_zero() || v.is_zero() {
        return true;
    }
    for _ in 1..s {
        v = modn(&(&v * &v - 2 * &qk));
        if v.is_zero() {
            return true;
        }
        qk = modn(&(&qk * &qk));
    }
    false
}

/// Deterministic xorshift-style mixer for rho parameters.
fn mix(x: u64) -> u64 {
    let mut z = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn mulmod_u64(a: u64, b: u64, n: u64) -> u64 {
    ((a as u128 * b as u128) % n as u128) as u64
}

/// Brent's cycle-finding rho on a u64 composite with no factors < 10^4.
fn brent_u64(n: u64, seed: u64) -> u64 {
    for attempt in 0.. {
        let c = 1 + mix(seed ^ n ^ attempt) % (n - 3);
        let f = |x: u64| ((mulmod_u64(x, x, n) as u128 + c as u128) % n as u128) as u64;
        let mut y = 2u64;
        let mut g = 1u64;
        let mut q = 1u64;
        let mut x = 0u64;
        let mut ys = 0u64;
        let mut r = 1u64;
        const M: u64 = 128;
        while g == 1 {
            x = y;
            for _ in 0..r {
                y = f(y);
            }
            let mut k = 0;
            while k < r && g == 1 {
                ys = y;
                for _ in 0..M.min(r - k) {
                    y = f(y);
                    q = mulmod_u64(q, x.abs_diff(y), n);
                }
                g = q.gcd(&n);
                k += M;
            }
            r *= 2;
        }
        if g == n {
            // Backtrack one step at a time.
            g = 1;
            let mut z = ys;
            while g == 1 {
                z = f(z);
                g = x.abs_diff(z).gcd(&n);
            }
        }
        if g != n && g != 1 {
            return g;
        }
    }
    unreachable!()
}

/// Brent's rho on a BigUint composite with no factors < 10^4.
fn brent_big(n: &BigUint, seed: u64) -> BigUint {
    let one = BigUint::one();
    for attempt in 0.. {
        let c = BigUint::from(mix(seed ^ attempt)) % (n - 3u32) + 1u32;
        let f = |x: &BigUint| (x * x + &c) % n;
        let mut y = BigUint::from(2u32);
        let mut g = one.clone();
        let mut q = one.clone();
        let mut x = BigUint::zero();
        let mut ys = BigUint::zero();
        let mut r: u64 = 1;
        const M: u64 = 128;
        while g.is_one() {
            x = y.clone();
            for _ in 0..r {
                y = f(&y);
            }
            let mut k = 0;
            while k < r && g.is_one() {
                ys = y.clone();
                for _ in 0..M.min(r - k) {
                    y = f(&y);
                    let diff = if x > y { &x - &y } else { &y - &x };
                    q = (q * diff) % n;
                }
                g = q.gcd(n);
                k += M;
            }
            r *= 2;
        }
        if &g == n {
            g = one.clone();
            let mut z = ys;
            while g.is_one() {
                z = f(&z);
                let diff = if x > z { &x - &z } else { &z - &x };
                g = diff.gcd(n);
            }
        }
        if !g.is_one() && &g != n {
            return g;
        }
    }
    unreachable!()
}

static DEFAULT_SEED: std::sync::atomic::AtomicU64 = std::sync::atomic::AtomicU64::new(0);

/// Set the process-wide seed offset used by [`factorize`]. The factorization
/// itself is exact regardless; the seed only perturbs the rho search path.
pub fn set_default_factor_seed(seed: u64) {
    DEFAULT_SEED.store(seed, std::sync::atomic::Ordering::Relaxed);
}

/// Factor `n >= 1` deterministically (rho seeded from the input plus the
/// process-wide default seed, which is 0 unless overridden).
pub fn factorize(n: &BigUint) -> Result<Factorization> {
    factorize_seeded(
        n,
        DEFAULT_SEED.load(std::sync::atomic::Ordering::Relaxed),
    )
}

/// Factor `n >= 1`; `seed` perturbs the rho parameter sequence (results are
/// identical regardless, just potentially found in different order).
pub fn factorize_seeded(n: &BigUint, seed: u64) -> Result<Factorization> {
    if n.is_zero() {
        return Err(Error::FactorZero);
    }
    let mut rest = n.clone();
    let mut factors: Vec<(BigUint, u32)> = Vec::new();
    for &p in SMALL_PRIMES.iter() {
        if rest.is_one() {
            break;
        }
        let pb = BigUint::from(p);
        if &(&pb * &pb) > &rest {
            break;
        }
        let mut e = 0u32;
        loop {
            let (q, r) = rest.div_rem(&pb);
            if !r.is_zero() {
                break;
            }
            rest = q;
            e += 1;
        }
        if e > 0 {
            factors.push((pb, e));
        }
    }
    // What survives trial division is 1, a prime, or a composite with all
    // prime factors above the trial bound.
    let mut stack = Vec::new();
    if !rest.is_one() {
        stack.push(rest);
    }
    while let Some(m) = stack.pop() {
        if is_prime(&m) {
            match factors.iter_mut().find(|(p, _)| *p == m) {
                Some((_, e)) => *e += 1,
                None => factors.push((m, 1)),
            }
            continue;
        }
        let d = match m.to_u64() {
            Some(small) => BigUint::from(brent_u64(small, seed)),
            None => brent_big(&m, seed),
        };
        debug_assert!(!d.is_one() && d != m);
        stack.push(&m / &d);
        stack.push(d);
    }
    factors.sort_by(|a, b| a.0.cmp(&b.0));
    let fac = Factorization { factors };
    debug_assert_eq!(&fac.value(), n, "factorization must multiply back");
    Ok(fac)
}

/// Moebius function: 0 on square divisors, else (-1)^(number of primes).
pub fn mobius(n: &BigUint) -> Result<i8> {
    let fac = factorize(n)?;
    if fac.factors.iter().any(|(_, e)| *e >= 2) {
        return Ok(0);
    }
    Ok(if fac.factors.len() % 2 == 0 { 1 } else { -1 })
}
