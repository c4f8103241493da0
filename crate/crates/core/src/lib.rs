//! Exact-arithmetic invariants of families of monomial ideals.
//!
//! The crate computes, for a sequence of finite-colength monomial ideals in
//! a power series ring, the coordinate-wise measuring ideals cut out by
//! elementary substitution tests, the preorder and flag structure those
//! ideals induce on the variables, the dimension and coordinate data of the
//! associated alignment locus, and the exact fiber geometry of its frame
//! map: frame bases, minor coordinates, interpolated image equations, and a
//! torus-equivariance check.
//!
//! Everything is exact: rationals with big integers, prime fields, and
//! polynomial rings over either. There is no floating point and no
//! randomized acceptance; random inputs only seed searches whose results
//! are then verified symbolically.
//!
//! The crate is `no_std` (with `alloc`). Enable the `std` feature to get
//! `std::error::Error` on the error type.

#![no_std]
#![deny(unsafe_code)]
#![allow(clippy::needless_range_loop)] // index loops mirror the matrix notation

extern crate alloc;

pub mod catalog;
pub mod classify;
pub mod error;
pub mod fiber;
pub mod flags;
pub mod ideal;
pub mod linalg;
pub mod measuring;
pub mod monomial;
pub mod mpoly;
pub mod oracle;
pub mod parse;
pub mod ring;
pub mod rng;
pub mod tpoly;
pub mod upoly;

pub use error::{Error, Result};
pub use ideal::MonomialIdeal;
pub use monomial::{ExponentType, Monomial, WeightVector};
