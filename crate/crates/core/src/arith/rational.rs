//! The scalar field. `Rational` is `num_rational::BigRational`, which already
//! keeps numerator and denominator coprime with a positive denominator.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Decimal `[numerator, denominator]` pair, the JSON wire form of a coefficient.
pub fn to_pair(r: &Rational) -> [String; 2] {
    [r.numer().to_string(), r.denom().to_string()]
}

pub fn from_pair(pair: &[String; 2]) -> Result<Rational> {
    let parse = |s: &str| {
        s.parse::<BigInt>()
            .map_err(|_| Error::Json(format!("not an integer: {s:?}")))
    };
    let n = parse(&pair[0])?;
    let d = parse(&pair[1])?;
    if d.is_zero() {
        return Err(Error::DivisionByZero);
    }
    Ok(Rational::new(n, d))
}

/// Writes `|r|` the way the expression grammar reads it back: `3` or `3/4`.
pub(crate) fn fmt_abs(r: &Rational) -> String {
    let a = r.abs();
    if a.denom().is_one() {
        a.numer().to_string()
    } else {
        format!("{}/{}", a.numer(), a.denom())
    }
}

/// Reduce `r` modulo `p`, or `None` when `p` divides the denominator.
pub fn mod_p(r: &Rational, p: u64) -> Option<u64> {
    let p_big = BigInt::from(p);
    let d = r.denom().clone() % &p_big;
    if d.is_zero() {
        return None;
    }
    let n = ((r.numer() % &p_big) + &p_big) % &p_big;
    let d_inv = mod_inverse(&d, &p_big)?;
    let v = (n * d_inv) % &p_big;
    v.try_into().ok()
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = num_integer::Integer::extended_gcd(a, m);
    if !e.gcd.abs().is_one() {
        return None;
    }
    Some(((e.x % m) + m) % m)
}
