//! Exact generalized binomial coefficients over integer sequences.
//!
//! For a sequence of nonzero integers `f = (f_1, f_2, ...)` the f-binomial
//! coefficient is
//!
//! ```text
//! [n k]_f = f_n f_{n-1} ... f_{n-k+1} / (f_k f_{k-1} ... f_1)
//! ```
//!
//! and `f` is *binomid* when every such coefficient is an integer. This crate
//! builds the triangles `Δ(f)` and pyramids `BP(f)` of those coefficients with
//! exact arithmetic, constructs the usual sequence families (Pascal rows and
//! columns, Lucas sequences, divisor-products, ...), classifies sequences
//! against the divisibility hierarchy up to an explicit bound, and ships
//! mechanical checkers for the identities that tie the hierarchy together.
//!
//! No floating point is used anywhere in this crate.

pub mod classify;
pub mod error;
pub mod numtheory;
pub mod rational;
pub mod sequences;
pub mod triangle;
pub mod verify;

pub use classify::{ClassificationReport, Property, Verdict, Witness};
pub use error::{Error, Result};
pub use rational::ExactRational;
pub use sequences::Sequence;
pub use triangle::{fbinom, ffactorial, pyramid, triangle, Pyramid, Triangle};

pub use num_bigint::BigInt;
