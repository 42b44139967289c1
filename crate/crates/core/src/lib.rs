//! Computational laboratory for Hecke eigenvalues at primes of the form `[g(n)]`.
//!
//! * [`hecke`]: exact τ/λ tables with Λ, μ, d sidecars and their identity checks.
//! * [`gfunc`]: admissible growth functions `g`, their inverses and `[g(n)]`.
//! * [`vaaler`]: the trigonometric approximation of the sawtooth function.
//! * [`expsums`]: direct exponential sums measured against their bounds.
//! * [`typesums`]: the reduction identities, `K_d`/`L_d` sums and the main experiment.
//! * [`runner`]: config parsing, table cache and the command-line front end.

pub mod error;
pub mod expsums;
pub mod gfunc;
pub mod hecke;
pub mod primes;
pub mod runner;
pub mod summation;
pub mod typesums;
pub mod vaaler;

pub use error::{Error, Result};
