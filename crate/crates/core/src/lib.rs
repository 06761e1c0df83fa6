//! Exact combinatorics of sign pattern matrices.
//!
//! A sign pattern matrix is a grid over `{+, -, 0}`; its minimum rank is the
//! least rank of a real matrix with exactly those entrywise signs. This crate
//! decides `minrank <= 2` in polynomial time (for strict and generalized
//! patterns), decides `minrank <= 0` and `minrank <= 1`, computes the maximum
//! rank, and builds the sign matrices that encode straight-line arrangements
//! through their covectors. Every decision procedure has an independent
//! brute-force counterpart in [`oracle`].
//!
//! All arithmetic is exact: rationals are arbitrary precision and no
//! floating-point tolerance is ever used to decide a sign. The crate is
//! `no_std` and only needs `alloc`.
#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod chain;
pub mod error;
pub mod genreduce;
pub mod geometry;
pub mod matroid;
pub mod maxrank;
pub mod oracle;
pub mod random;
pub mod rational;
pub mod sign;

pub use error::{Error, Result};
pub use rational::{Rational, RationalMatrix};
pub use sign::{Sign, SignMatrix, SignVector};
