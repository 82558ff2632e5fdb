//! Truncated power series in `z` over Q(q).

use std::ops::{Add, Mul, Sub};

use super::qratfn::QRatFn;
use super::zpoly::ZPoly;
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ZSeries {
    coeffs: Vec<QRatFn>,
}

impl ZSeries {
    pub fn from_coeffs(coeffs: Vec<QRatFn>) -> Self {
        ZSeries { coeffs }
    }

    pub fn from_poly(p: &ZPoly, order: usize) -> Self {
        ZSeries {
            coeffs: (0..order as i64).map(|k| p.coeff(k)).collect(),
        }
    }

    pub fn one(order: usize) -> Self {
        let mut coeffs = vec![QRatFn::zero(); order];
        if order > 0 {
            coeffs[0] = QRatFn::one();
        }
        ZSeries { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[QRatFn] {
        &self.coeffs
    }

    pub fn coeff(&self, n: usize) -> Option<&QRatFn> {
        self.coeffs.get(n)
    }

    pub fn truncate(&self, order: usize) -> Self {
        ZSeries {
            coeffs: self.coeffs.iter().take(order).cloned().collect(),
        }
    }

    pub fn scale(&self, c: &QRatFn) -> Self {
        ZSeries {
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    /// Drop the constant term and divide by `z`; loses one order.
    pub fn div_z(&self) -> Result<Self> {
        match self.coeffs.first() {
            Some(c) if !c.is_zero() => Err(Error::InvalidParams(
                "series has a nonzero constant term; not divisible by z".into(),
            )),
            _ => Ok(ZSeries {
                coeffs: self.coeffs.iter().skip(1).cloned().collect(),
            }),
        }
    }

    pub fn reciprocal(&self) -> Result<Self> {
        let c0 = self.coeffs.first().ok_or(Error::ZeroConstantTerm)?;
        if c0.is_zero() {
            return Err(Error::ZeroConstantTerm);
        }
        let inv0 = c0.recip()?;
        let mut out: Vec<QRatFn> = Vec::with_capacity(self.order());
        out.push(inv0.clone());
        for n in 1..self.order() {
            let acc: QRatFn = (1..=n)
                .filter(|&k| !self.coeffs[k].is_zero())
                .map(|k| &self.coeffs[k] * &out[n - k])
                .sum();
            out.push(-&(&acc * &inv0));
        }
        Ok(ZSeries { coeffs: out })
    }

    /// `self / rhs` as truncated series.
    pub fn div(&self, rhs: &Self) -> Result<Self> {
        Ok(self * &rhs.reciprocal()?)
    }
}

impl Add for &ZSeries {
    type Output = ZSeries;
    fn add(self, rhs: &ZSeries) -> ZSeries {
        ZSeries {
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &ZSeries {
    type Output = ZSeries;
    fn sub(self, rhs: &ZSeries) -> ZSeries {
        ZSeries {
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Mul for &ZSeries {
    type Output = ZSeries;
    fn mul(self, rhs: &ZSeries) -> ZSeries {
        let n = self.order().min(rhs.order());
        ZSeries {
            coeffs: (0..n)
                .map(|k| {
                    (0..=k)
                        .filter(|&i| !self.coeffs[i].is_zero() && !rhs.coeffs[k - i].is_zero())
                        .map(|i| &self.coeffs[i] * &rhs.coeffs[k - i])
                        .sum()
                })
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::QPoly;

    fn c(n: i64) -> QRatFn {
        QRatFn::from_int(n)
    }

    #[test]
    fn reciprocal_of_one_minus_cz() {
        let c1 = QRatFn::new(QPoly::one(), QPoly::from_ints(&[1, 1])).unwrap();
        let s = ZSeries::from_coeffs(vec![QRatFn::one(), -&c1, QRatFn::zero()]);
        let r = s.reciprocal().unwrap();
        assert_eq!(r.coeffs(), &[QRatFn::one(), c1.clone(), &c1 * &c1]);
    }

    #[test]
    fn product_truncates() {
        let a = ZSeries::from_coeffs(vec![c(1), c(1), c(0)]);
        let b = ZSeries::from_coeffs(vec![c(1), c(-1), c(0)]);
        assert_eq!((&a * &b).coeffs(), &[c(1), c(0), c(-1)]);
    }

    #[test]
    fn zero_constant_term_cannot_invert() {
        let s = ZSeries::from_coeffs(vec![c(0), c(1)]);
        assert_eq!(s.reciprocal(), Err(Error::ZeroConstantTerm));
    }
}
