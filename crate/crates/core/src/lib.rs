//! Exact arithmetic for deciding when a rational prime is a common index
//! divisor of the division fields attached to an abelian variety over a
//! finite field.
//!
//! The pipeline: a Weil `q`-polynomial `f` (the characteristic polynomial of
//! Frobenius, all complex roots of absolute value `sqrt(q)`) determines an
//! integer matrix for the Frobenius action on a basis of the order
//! `Z[pi, v]`, `v = q/pi`. Reducing that matrix mod `n` and taking its
//! multiplicative order gives the residue degree of every prime above `p` in
//! the `n`-division field; comparing the number of primes against the count
//! of monic irreducible polynomials over `F_p` decides whether `p` is a
//! common index divisor (a prime whose splitting type cannot be matched by
//! any single generating polynomial, so no generator is `p`-monogenic).
//!
//! Everything is integer-exact: big integers throughout, Sturm chains instead
//! of numerical root finding, and no floating point anywhere.
//!
//! Module map:
//! * [`exact`] — integer polynomials, quadratic surds, Sturm counts, Newton
//!   polygons, factoring, and arithmetic over `F_ell`.
//! * [`weil`] — Weil polynomial candidates, exact Weil tests (dimension
//!   specific and general), irreducibility, p-rank, and enumeration.
//! * [`frobenius`] — the Frobenius/Verschiebung matrices, their reductions
//!   mod `n`, multiplicative orders, and the order discriminant.
//! * [`monogeneity`] — general symplectic group sizes, irreducible
//!   polynomial counts, and the common-index-divisor verdict.

pub mod error;
pub mod exact;
pub mod frobenius;
pub mod monogeneity;
pub mod weil;

pub use error::{Error, Result};
