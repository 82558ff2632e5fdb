//! Exact arithmetic: rationals, polynomials and rational functions in `q`,
//! and truncated series in `q` and in `z`.

mod factor;
mod json;
mod parse;
mod qpoly;
mod qratfn;
mod qseries;
pub mod rational;
mod zpoly;
mod zseries;

pub use parse::parse_qratfn;
pub use qpoly::QPoly;
pub use qratfn::QRatFn;
pub use qseries::QSeries;
pub use rational::{frac, int, Rational};
pub use zpoly::ZPoly;
pub use zseries::ZSeries;

/// Shorthand for building a rational function from a literal expression.
/// Panics on malformed input; meant for constants and tests.
pub fn qr(src: &str) -> QRatFn {
    parse_qratfn(src).unwrap_or_else(|e| panic!("bad literal {src:?}: {e}"))
}
