//! Exact Jacobi-type continued fractions (J-fractions) over the field of
//! rational functions in `q`.
//!
//! The crate builds J-fractions whose power series in `z` generate ratios of
//! q-Pochhammer symbols `(a; q)_n / (b; q)_n`, and from the special pair
//! `(a, b) = (q, q^2)` derives generating functions for the divisor function
//! `d(n)` and the sums of divisors `σ_α(n)`. Every expansion identity for the
//! convergent numerators and denominators is checked by exact arithmetic.
//!
//! - [`arith`]: exact scalars, polynomials, rational functions and series
//! - [`jfraction`]: sequence specs, convergents, series inversion, presets
//! - [`stirling`]: Stirling q-coefficient triangles, nested sums, lemma checks
//! - [`divisor`]: divisor and σ_α generating functions, approximants, congruences
//! - [`convergence`]: extended-precision convergence diagnostics
//! - [`oracles`]: brute-force ground truth
//! - [`cli`]: the `qjfrac` command line
//!
//! Runnable walkthroughs live in `examples/`; `cargo run --example <name>`.

pub mod arith;
pub mod cli;
pub mod convergence;
pub mod divisor;
mod error;
pub mod jfraction;
pub mod oracles;
pub mod report;
pub mod stirling;

pub use error::{Error, Result};
