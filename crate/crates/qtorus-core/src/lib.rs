//! Exact arithmetic for quantum affine spaces and quantum tori at a root of
//! unity: congruence normal forms of antisymmetric integer matrices, PI
//! degrees, explicit simple modules as monomial matrices, and isomorphism
//! tests with constructed intertwiners.
//!
//! Everything here is `no_std` + `alloc`; all arithmetic is exact (big
//! integers, big rationals, formal root-of-unity exponents). IO and file
//! formats live in the companion CLI crate.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod analysis;
pub mod error;
pub mod intlat;
pub mod normalform;
pub mod repbuild;
pub mod scalar;

pub use error::{Error, Result};
