//! Exact scalar and polynomial arithmetic: the substrate everything else
//! builds on. No floating point; every comparison is an integer comparison.

pub mod factor;
pub(crate) mod linalg;
pub mod modpoly;
pub mod newton;
pub mod poly;
pub mod sturm;
pub mod surd;

pub use factor::{
    factorize, factorize_seeded, is_prime, mobius, set_default_factor_seed, Factorization,
};
pub use modpoly::factor_degrees_mod;
pub use newton::{newton_polygon, NewtonPolygon, Segment};
pub use poly::IntPoly;
pub use sturm::sturm_count;
pub use surd::QuadSurd;
