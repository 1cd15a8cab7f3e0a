//! Exact arithmetic for counting monic integer polynomials whose Galois
//! group is smaller than the full symmetric group.
//!
//! See the `book/` directory for a guided tour.

pub mod bigpoly;
pub mod census;
pub mod disc;
pub mod error;
pub mod fit;
pub mod galois;
pub mod geometry;
pub mod ratpoly;
pub mod sympoly;

pub use error::{Error, Result};

pub(crate) fn serde_bigint<S: serde::Serializer>(
    v: &num_bigint::BigInt,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

pub(crate) fn serde_display<T: std::fmt::Display, S: serde::Serializer>(
    v: &T,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(v)
}

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    pub struct Introduction;
    #[doc = include_str!("../../../book/src/polynomials.md")]
    pub struct Polynomials;
    #[doc = include_str!("../../../book/src/discriminants.md")]
    pub struct Discriminants;
    #[doc = include_str!("../../../book/src/symbolic.md")]
    pub struct Symbolic;
    #[doc = include_str!("../../../book/src/galois.md")]
    pub struct Galois;
    #[doc = include_str!("../../../book/src/census.md")]
    pub struct Census;
    #[doc = include_str!("../../../book/src/geometry.md")]
    pub struct Geometry;
    #[doc = include_str!("../../../book/src/cli.md")]
    pub struct Cli;
}
