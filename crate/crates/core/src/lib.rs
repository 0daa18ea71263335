//! Exact arithmetic kernels and explicit analytic bounds for the
//! distribution of prime numbers.
//!
//! The crate has three layers:
//!
//! * exact computation — segmented sieves for primes, squarefree
//!   numbers, Chebyshev functions and checkpoint tables ([`sieve`]);
//! * zeta-zero data — ingestion and statistics of tables of nontrivial
//!   zeros, and the truncated explicit formula built on them
//!   ([`zeros`], [`explicit`]);
//! * closed-form bounds and threshold solvers — zero-free regions,
//!   zero-density majorants, short-interval inequalities, additive
//!   decomposition bounds and the prime-counting inequality verifier
//!   ([`bounds`], [`additive`], [`ramanujan`]).

pub mod error;
pub mod report;
pub mod sieve;
pub mod zeros;
pub mod explicit;
pub mod bounds;
pub mod additive;
pub mod ramanujan;

pub use error::{Error, Result};
