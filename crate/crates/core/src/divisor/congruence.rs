use serde::Serialize;

use crate::arith::rational::mod_p;
use num_traits::Zero;

use crate::arith::{QPoly, Rational};
use crate::error::{Error, Result};

use super::series::{rational_approximant, sigma_gf, DivisorGFRequest, Window};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CongruenceRow {
    pub n: usize,
    /// `None` when the coefficient is not `p`-integral.
    pub residue: Option<u64>,
    pub exact: String,
    pub window: Window,
}

/// Expansion coefficients of the generator reduced mod `p`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CongruenceTable {
    pub modulus: u64,
    pub alpha: u32,
    pub h: usize,
    pub rows: Vec<CongruenceRow>,
}

fn reduce_all(p: &QPoly, m: u64) -> Option<Vec<u64>> {
    p.coeffs().iter().map(|c| mod_p(c, m)).collect()
}

fn modulus_of(req: &DivisorGFRequest) -> Result<u64> {
    req.validate()?;
    req.modulus
        .ok_or_else(|| Error::InvalidParams("congruence table needs a modulus".into()))
}

pub fn congruence_table(req: &DivisorGFRequest) -> Result<CongruenceTable> {
    let p = modulus_of(req)?;
    let series = sigma_gf(req)?;
    let rows = (1..req.order)
        .map(|n| {
            let c = series.coeff(n).cloned().unwrap_or_default();
            CongruenceRow { n, residue: mod_p(&c, p), exact: c.to_string(), window: req.window(n) }
        })
        .collect();
    Ok(CongruenceTable { modulus: p, alpha: req.alpha, h: req.h, rows })
}

/// The reduced approximant with its denominator scaled to constant term 1,
/// coefficients reduced mod `p` as `(numerator, denominator)`. `None` when
/// some coefficient is not `p`-integral.
pub fn approximant_mod_p(req: &DivisorGFRequest) -> Result<Option<(Vec<u64>, Vec<u64>)>> {
    let p = modulus_of(req)?;
    let r = rational_approximant(req)?;
    let d0 = r.den().coeff(0);
    if d0.is_zero() {
        return Err(Error::PoleAtZero);
    }
    let inv = d0.recip();
    let num = reduce_all(&r.num().scale(&inv), p);
    let den = reduce_all(&r.den().scale(&inv), p);
    Ok(num.zip(den))
}

/// Power-series coefficients of `num / den` over `Z/pZ`, through `q^{order-1}`.
/// `den[0]` must be a unit mod `p`.
pub fn expand_mod_p(num: &[u64], den: &[u64], p: u64, order: usize) -> Result<Vec<u64>> {
    let d0 = den.first().copied().unwrap_or(0) % p;
    let inv = (d0 != 0)
        .then(|| mod_p(&Rational::new(1.into(), d0.into()), p))
        .flatten()
        .ok_or_else(|| Error::InvalidParams(format!("denominator constant {d0} is not a unit mod {p}")))?;
    let pm = p as u128;
    let mut out: Vec<u64> = Vec::with_capacity(order);
    for n in 0..order {
        let mut acc = num.get(n).copied().unwrap_or(0) as u128 % pm;
        for k in 1..=n.min(den.len().saturating_sub(1)) {
            let t = (den[k] as u128 % pm) * out[n - k] as u128 % pm;
            acc = (acc + pm - t) % pm;
        }
        out.push((acc * inv as u128 % pm) as u64);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracles::{divisor_count, sigma_alpha};
    use num_bigint::BigInt;

    #[test]
    fn sigma_mod_5() {
        let t = congruence_table(&DivisorGFRequest::new(1, 4, 8).with_modulus(5)).unwrap();
        let got: Vec<u64> = t.rows.iter().map(|r| r.residue.unwrap()).collect();
        assert_eq!(got, [1, 3, 4, 2, 1, 2, 3]);
        let (num, den) = approximant_mod_p(&DivisorGFRequest::new(1, 4, 8).with_modulus(5)).unwrap().unwrap();
        let via = expand_mod_p(&num, &den, 5, 8).unwrap();
        assert_eq!(&via[1..], &got[..]);
        for n in 1..8u64 {
            assert_eq!(BigInt::from(got[n as usize - 1]), sigma_alpha(1, n) % 5);
        }
    }

    #[test]
    fn parity_of_divisor_count() {
        let t = congruence_table(&DivisorGFRequest::new(0, 11, 21).with_modulus(2)).unwrap();
        for r in t.rows.iter().filter(|r| r.window != Window::Untrusted) {
            let n = r.n as u64;
            let square = (1..=n).any(|k| k * k == n);
            assert_eq!(r.residue, Some(u64::from(square)), "n={n}");
            assert_eq!(r.residue.unwrap(), divisor_count(n) % 2);
        }
    }

    #[test]
    fn unit_check() {
        assert!(expand_mod_p(&[1], &[5, 1], 5, 3).is_err());
        assert_eq!(expand_mod_p(&[1], &[1, 1], 3, 4).unwrap(), [1, 2, 1, 2]);
    }
}
