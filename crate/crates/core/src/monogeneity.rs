//! Common-index-divisor decisions for division fields.
//!
//! For an irreducible Weil polynomial over `q = p^m` and a modulus `n` prime
//! to `p`, assume the mod-`n` Galois image of the `n`-division field is all
//! of `GSp_2g(Z/nZ)` and `p` is unramified there. Then `p` factors into
//! `|GSp_2g(Z/nZ)| / ord` primes, each of inertia degree `ord`, where `ord`
//! is the multiplicative order of the Frobenius matrix mod `n`. Dedekind's
//! splitting criterion can match that factorization inside `F_p[x]` only if
//! there are at least that many monic irreducible polynomials of degree
//! `ord`; when the prime count exceeds the polynomial count, `p` divides
//! `[O_K : Z[theta]]` for every generator `theta` — `p` is a *common index
//! divisor* and the field has no generator whose discriminant avoids `p`.

use std::collections::HashMap;
use std::sync::RwLock;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use once_cell::sync::Lazy;

use crate::error::{Error, Result};
use crate::exact::factor::{factorize, is_prime, mobius};
use crate::frobenius::{frobenius_matrix, matrix_order_mod, reduce_mod};
use crate::weil::WeilPoly;

static IRRED_CACHE: Lazy<RwLock<HashMap<(u64, u64), BigUint>>> =
    Lazy::new(|| RwLock::new(HashMap::new()));
static GSP_CACHE: Lazy<RwLock<HashMap<(usize, u64), BigUint>>> =
    Lazy::new(|| RwLock::new(HashMap::new()));

/// The number of monic irreducible polynomials of degree `m` over `F_p`:
/// `(1/m) * sum_(d|m) mu(m/d) p^d`.
pub fn irred_count(m: u64, p: u64) -> Result<BigUint> {
    if !is_prime(&p.into()) {
        return Err(Error::NotPrime(p));
    }
    if let Some(hit) = IRRED_CACHE.read().expect("cache lock").get(&(m, p)) {
        return Ok(hit.clone());
    }
    let m_fac = factorize(&BigUint::from(m))?; // m = 0 is rejected here
    let m_big = BigUint::from(m);
    let mut sum = BigInt::zero();
    for d in m_fac.divisors() {
        let mu = mobius(&(&m_big / &d))?;
        if mu == 0 {
            continue;
        }
        let exp = d
            .to_u64()
            .and_then(|v| u32::try_from(v).ok())
            .ok_or(Error::Overflow("irreducible-count exponent"))?;
        let term = BigInt::from(p).pow(exp);
        if mu > 0 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    let (quot, rem) = sum.div_rem(&BigInt::from(m));
    if !rem.is_zero() || !quot.is_positive() {
        return Err(Error::internal(
            "irreducible-polynomial count must be a positive integer",
        ));
    }
    let out = quot.to_biguint().expect("positive");
    IRRED_CACHE
        .write()
        .expect("cache lock")
        .insert((m, p), out.clone());
    Ok(out)
}

/// `|GSp_2g(Z/nZ)|`, multiplicative over prime powers:
/// for `ell^e || n` the factor is
/// `(ell - 1) * ell^(g^2) * prod_(i=1)^g (ell^(2i) - 1) * (ell^(2g^2+g+1))^(e-1)`
/// (the exponent `2g^2 + g + 1` is the group dimension). `n = 1` gives 1.
pub fn gsp_order(g: usize, n: u64) -> Result<BigUint> {
    if g < 1 {
        return Err(Error::DimensionTooSmall { min: 1, got: g });
    }
    if n == 0 {
        return Err(Error::ModulusTooSmall(0u32.into()));
    }
    if n == 1 {
        return Ok(BigUint::one());
    }
    if let Some(hit) = GSP_CACHE.read().expect("cache lock").get(&(g, n)) {
        return Ok(hit.clone());
    }
    let dim = u32::try_from(2 * g * g + g + 1).map_err(|_| Error::Overflow("group dimension"))?;
    let g_sq = u32::try_from(g * g).map_err(|_| Error::Overflow("g^2"))?;
    let mut out = BigUint::one();
    for (ell, e) in &factorize(&BigUint::from(n))?.factors {
        let mut local = (ell - 1u32) * ell.pow(g_sq);
        for i in 1..=g {
            local *= ell.pow(2 * i as u32) - 1u32;
        }
        local *= ell.pow(dim).pow(e - 1);
        out *= local;
    }
    GSP_CACHE
        .write()
        .expect("cache lock")
        .insert((g, n), out.clone());
    Ok(out)
}

/// Shared worker: order of the Frobenius matrix mod `n`, the group order,
/// and the common-index-divisor verdict.
fn cid_core(w: &WeilPoly, n: u64) -> Result<(BigUint, BigUint, bool)> {
    if n < 2 {
        return Err(Error::ModulusTooSmall(n.into()));
    }
    if n.gcd(&w.q()) != 1 {
        return Err(Error::ModulusNotCoprime {
            n: n.into(),
            q: w.q(),
        });
    }
    let sigma = frobenius_matrix(w)?;
    let reduced = reduce_mod(sigma.matrix(), n)?;
    let ord = matrix_order_mod(&reduced)?;
    if ord.is_one() {
        // sigma = I mod n would say p splits completely; then det(I - sigma)
        // = f(1) is divisible by n^2g. Anything else is a logic bug.
        let f_at_one = w.poly().eval(&BigInt::one());
        let bound = BigInt::from(n).pow(2 * w.g() as u32);
        if !f_at_one.mod_floor(&bound).is_zero() {
            return Err(Error::internal(
                "complete splitting reported but n^2g does not divide f(1)",
            ));
        }
    }
    let gsp = gsp_order(w.g(), n)?;
    if !(&gsp % &ord).is_zero() {
        return Err(Error::internal(
            "matrix order does not divide the symplectic group order",
        ));
    }
    // Decide gsp > sum_(d|ord) mu(ord/d) p^d. The sum is dominated by
    // p^ord: proper divisors are at most ord/2, so
    //   sum >= p^ord - sum_(k<=ord/2) p^k >= p^ord - 2 p^(ord/2)
    //        = p^(ord/2) (p^(ord/2) - 2) >= 2 p^(ord/2)   once p^(ord/2) >= 4.
    // With ord >= 2 (bits(gsp) + 2) that lower bound is at least
    // 2^(bits(gsp)+2) > gsp, so the verdict is false without evaluating the
    // astronomically large sum.
    let threshold = BigUint::from(2 * (gsp.bits() + 2));
    let cid = if ord >= threshold {
        false
    } else {
        let ord_small = ord.to_u64().expect("order below the size threshold");
        let p = w.p();
        let mut sum = BigInt::zero();
        for d in factorize(&ord)?.divisors() {
            let mu = mobius(&(&ord / &d))?;
            if mu == 0 {
                continue;
            }
            let exp = d
                .to_u64()
                .and_then(|v| u32::try_from(v).ok())
                .ok_or(Error::Overflow("index-divisor exponent"))?;
            let term = BigInt::from(p).pow(exp);
            if mu > 0 {
                sum += term;
            } else {
                sum -= term;
            }
        }
        // The same sum counts ord * irred_count(ord, p) monic irreducibles.
        let recount = BigInt::from(irred_count(ord_small, p)?) * BigInt::from(ord_small);
        if recount != sum {
            return Err(Error::internal(
                "Moebius sum disagrees with the irreducible-polynomial count",
            ));
        }
        BigInt::from(gsp.clone()) > sum
    };
    Ok((ord, gsp, cid))
}

/// Whether `p` is a common index divisor of the `n`-division field:
/// `|GSp_2g(Z/nZ)| > sum_(d|ord) mu(ord/d) p^d`, equivalently
/// `|GSp| / ord > irred_count(ord, p)`.
pub fn is_common_index_divisor(w: &WeilPoly, n: u64) -> Result<bool> {
    Ok(cid_core(w, n)?.2)
}

/// Fixed reminder attached to every report: the splitting data is proved
/// under surjectivity of the mod-`n` representation and `p` unramified.
pub const HYPOTHESIS_NOTE: &str =
    "assumes the mod-n Galois image is all of GSp_2g(Z/nZ) and p is unramified \
     in the n-division field";

/// How `p` factors in the `n`-division field under the full-image
/// hypothesis: `prime_count` primes, each with inertia degree
/// `inertia_degree` and ramification index 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplittingReport {
    pub n: u64,
    pub inertia_degree: BigUint,
    pub prime_count: BigUint,
    pub ramification_index: u32,
    pub cid: bool,
    pub hypothesis_note: String,
}

/// Build the full splitting picture of `p` in the `n`-division field.
pub fn splitting_report(w: &WeilPoly, n: u64) -> Result<SplittingReport> {
    let (ord, gsp, cid) = cid_core(w, n)?;
    let (prime_count, rem) = gsp.div_rem(&ord);
    if !rem.is_zero() {
        return Err(Error::internal(
            "matrix order does not divide the symplectic group order",
        ));
    }
    Ok(SplittingReport {
        n,
        inertia_degree: ord,
        prime_count,
        ramification_index: 1,
        cid,
        hypothesis_note: HYPOTHESIS_NOTE.to_string(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weil::{enumerate_weil, CoeffFix};

    fn wp(p: u64, m: u32, g: usize, free: &[i64]) -> WeilPoly {
        let free: Vec<BigInt> = free.iter().map(|&v| BigInt::from(v)).collect();
        WeilPoly::from_free_coeffs(p, m, g, &free).unwrap()
    }

    fn big(v: u64) -> BigUint {
        BigUint::from(v)
    }

    #[test]
    fn irred_count_pinned_values() {
        for p in [2u64, 3, 5, 7] {
            assert_eq!(irred_count(1, p).unwrap(), big(p));
        }
        assert_eq!(irred_count(2, 2).unwrap(), big(1)); // x^2 + x + 1
        assert_eq!(irred_count(3, 2).unwrap(), big(2));
        assert_eq!(irred_count(4, 3).unwrap(), big(18));
        assert_eq!(irred_count(8, 2).unwrap(), big(30));
        assert_eq!(irred_count(20, 2).unwrap(), big(52377));
        assert_eq!(irred_count(12, 2).unwrap(), big(335)); // (4096-64-16+4)/12
        assert_eq!(irred_count(4, 4), Err(Error::NotPrime(4)));
        assert_eq!(irred_count(0, 2), Err(Error::FactorZero));
    }

    #[test]
    fn irred_count_satisfies_necklace_identity() {
        // sum over d | m of d * irred_count(d, p) = p^m.
        for p in [2u64, 3, 5] {
            for m in 1u64..=12 {
                let mut total = BigUint::zero();
                for d in 1..=m {
                    if m % d == 0 {
                        total += irred_count(d, p).unwrap() * big(d);
                    }
                }
                assert_eq!(total, BigUint::from(p).pow(m as u32), "p={p} m={m}");
            }
        }
    }

    #[test]
    fn gsp_order_pinned_values() {
        assert_eq!(gsp_order(2, 1).unwrap(), big(1));
        assert_eq!(gsp_order(2, 2).unwrap(), big(720));
        assert_eq!(gsp_order(2, 3).unwrap(), big(103_680)); // 2 * |Sp_4(F_3)|
        assert_eq!(gsp_order(2, 5).unwrap(), big(37_440_000));
        assert_eq!(gsp_order(2, 10).unwrap(), big(26_956_800_000));
        assert_eq!(gsp_order(3, 3).unwrap(), big(18_341_406_720));
        // Prime powers pick up (ell^(2g^2+g+1))^(e-1).
        assert_eq!(gsp_order(2, 4).unwrap(), big(720) * big(1 << 11));
        assert_eq!(gsp_order(2, 8).unwrap(), big(720) * BigUint::from(2u32).pow(22));
        // g = 1 reduces to |GL_2|.
        assert_eq!(gsp_order(1, 3).unwrap(), big(48));
        assert_eq!(gsp_order(1, 4).unwrap(), big(96));
        // The order of GSp_8(Z/17) has 45 decimal digits.
        let huge = gsp_order(4, 17).unwrap();
        let digits = huge.to_string().len();
        assert!((45..=46).contains(&digits), "got {digits} digits");
        assert_eq!(gsp_order(0, 5), Err(Error::DimensionTooSmall { min: 1, got: 0 }));
        assert_eq!(gsp_order(2, 0), Err(Error::ModulusTooSmall(0u32.into())));
    }

    #[test]
    fn gsp_order_is_multiplicative() {
        for g in [2usize, 3] {
            for a in 2u64..=50 {
                for b in (a + 1)..=(100 / a) {
                    if a.gcd(&b) != 1 {
                        continue;
                    }
                    assert_eq!(
                        gsp_order(g, a * b).unwrap(),
                        gsp_order(g, a).unwrap() * gsp_order(g, b).unwrap(),
                        "g={g} a={a} b={b}"
                    );
                }
            }
        }
    }

    #[test]
    fn cid_pinned_examples() {
        // x^4 + 9 over F_3: 180 primes vs 18 irreducible quartics.
        let w = wp(3, 1, 2, &[0, 0]);
        assert!(is_common_index_divisor(&w, 2).unwrap());
        // q = 2, (a3, a2) = (1, 1): the nonmonogenic moduli below 10 are
        // exactly 3 and 9.
        let w = wp(2, 1, 2, &[1, 1]);
        assert!(is_common_index_divisor(&w, 3).unwrap());
        assert!(!is_common_index_divisor(&w, 5).unwrap());
        assert!(is_common_index_divisor(&w, 9).unwrap());
        // Sextic with order 20 mod 3: 917,070,336 primes vs 52,377 degree-20
        // irreducibles.
        let w = wp(2, 1, 3, &[-2, 2, -2]);
        assert!(is_common_index_divisor(&w, 3).unwrap());
    }

    #[test]
    fn cid_rejects_bad_moduli() {
        let w = wp(3, 1, 2, &[0, 0]);
        assert_eq!(
            is_common_index_divisor(&w, 1),
            Err(Error::ModulusTooSmall(1u32.into()))
        );
        assert_eq!(
            is_common_index_divisor(&w, 3),
            Err(Error::ModulusNotCoprime { n: 3u32.into(), q: 3 })
        );
        assert_eq!(
            is_common_index_divisor(&w, 6),
            Err(Error::ModulusNotCoprime { n: 6u32.into(), q: 3 })
        );
    }

    #[test]
    fn fast_path_agrees_with_definition() {
        // For each modulus, recompute the Moebius sum whenever the order is
        // small enough and check the comparison; when the order exceeds the
        // size threshold the verdict must be false (the sum dominates).
        let w = wp(2, 1, 4, &[0, 0, 0, 0]); // x^8 + 16
        for n in [3u64, 5, 7, 11, 13, 17, 97, 257] {
            let sigma = frobenius_matrix(&w).unwrap();
            let ord = matrix_order_mod(&reduce_mod(sigma.matrix(), n).unwrap()).unwrap();
            let gsp = gsp_order(4, n).unwrap();
            let verdict = is_common_index_divisor(&w, n).unwrap();
            if let Some(ord_small) = ord.to_u64() {
                if BigUint::from(ord_small) < BigUint::from(2 * (gsp.bits() + 2)) {
                    let mut sum = BigInt::zero();
                    for d in 1..=ord_small {
                        if ord_small % d == 0 {
                            let mu = mobius(&BigUint::from(ord_small / d)).unwrap();
                            sum += BigInt::from(mu) * BigInt::from(2u64).pow(d as u32);
                        }
                    }
                    assert_eq!(verdict, BigInt::from(gsp) > sum, "n={n} ord={ord_small}");
                    continue;
                }
            }
            assert!(!verdict, "huge order at n={n} must force a false verdict");
        }
    }

    #[test]
    fn splitting_report_pinned_examples() {
        let w = wp(3, 1, 2, &[0, 0]);
        let r = splitting_report(&w, 2).unwrap();
        assert_eq!(r.n, 2);
        assert_eq!(r.inertia_degree, big(4));
        assert_eq!(r.prime_count, big(180));
        assert_eq!(r.ramification_index, 1);
        assert!(r.cid);
        assert!(!r.hypothesis_note.is_empty());
        let r5 = splitting_report(&w, 5).unwrap();
        assert_eq!(r5.inertia_degree, big(4));
        assert_eq!(r5.prime_count, big(9_360_000));
        assert!(r5.cid);
        let r10 = splitting_report(&w, 10).unwrap();
        assert_eq!(r10.inertia_degree, big(4));
        assert_eq!(r10.prime_count, big(6_739_200_000));
        assert!(r10.cid);

        let w = wp(2, 1, 3, &[-2, 2, -2]);
        let r = splitting_report(&w, 3).unwrap();
        assert_eq!(r.inertia_degree, big(20));
        assert_eq!(r.prime_count, big(917_070_336));
        assert!(r.cid);

        let w = wp(2, 1, 4, &[0, 0, 0, 0]);
        let r = splitting_report(&w, 17).unwrap();
        assert_eq!(r.inertia_degree, big(8));
        assert_eq!(
            r.prime_count,
            gsp_order(4, 17).unwrap() / BigUint::from(8u32)
        );
        assert!(r.cid);
    }

    #[test]
    fn splitting_report_invariants_on_enumerated_surveys() {
        // inertia * primes = group order, ramification 1, order divides the
        // group order — across a whole enumerated family and several moduli.
        for w in enumerate_weil(2, 1, 2, &CoeffFix::new()).unwrap() {
            for n in [3u64, 5, 7, 9] {
                let r = splitting_report(&w, n).unwrap();
                assert_eq!(
                    &r.inertia_degree * &r.prime_count,
                    gsp_order(w.g(), n).unwrap(),
                    "inertia * primes = |GSp| for {w}, n={n}"
                );
                assert_eq!(r.ramification_index, 1);
            }
        }
    }
}
