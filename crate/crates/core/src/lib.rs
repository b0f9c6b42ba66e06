//! Index of zero-sum sequences over `Z/n`.
//!
//! The crate computes the index of sequences over cyclic groups exactly,
//! verifies the index-1 conjecture for minimal length-4 sequences over
//! ranges of moduli, and audits, instance by instance, every constant and
//! inequality of the Fourier-analytic lower bound for the count `S0`.
//!
//! * [`arith`]: residues, units, totient, Möbius, exact Ramanujan sums.
//! * [`zerosum`]: sequences, the index, enumeration and verification.
//! * [`approx`]: the smoothed indicator `f` and its Fourier coefficients.
//! * [`audit`]: `S0`, `S1`, `k*`, starred sums, relations, constants.
//! * [`cli`]: the `zsindex` command.

pub mod approx;
pub mod arith;
pub mod audit;
pub mod cli;
pub mod error;
pub mod sum;
pub mod zerosum;

pub use error::{Error, Result};
