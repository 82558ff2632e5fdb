//! Truncated power series in `q` over Q.

use std::ops::{Add, Mul, Sub};

use num_traits::Zero;

use super::qpoly::QPoly;
use super::rational::Rational;
use crate::error::{Error, Result};

/// Coefficients of `q^0 .. q^{order-1}`; everything from `q^order` on is
/// unknown. Binary operations truncate to the smaller order.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct QSeries {
    coeffs: Vec<Rational>,
}

impl QSeries {
    pub fn from_coeffs(coeffs: Vec<Rational>) -> Self {
        QSeries { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        QSeries {
            coeffs: vec![Rational::zero(); order],
        }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, n: usize) -> Option<&Rational> {
        self.coeffs.get(n)
    }

    pub fn truncate(&self, order: usize) -> Self {
        QSeries {
            coeffs: self.coeffs.iter().take(order).cloned().collect(),
        }
    }

    /// Expansion of `num / den` without reducing the fraction first. A common
    /// power of `q` is cancelled; a pole at `q = 0` is an error.
    pub fn ratio(num: &QPoly, den: &QPoly, order: usize) -> Result<Self> {
        let Some(vd) = den.valuation() else {
            return Err(Error::DivisionByZero);
        };
        let vn = num.valuation().unwrap_or(vd);
        if vn < vd {
            return Err(Error::PoleAtZero);
        }
        let den = &den.coeffs()[vd..];
        let num = num.coeffs().get(vd..).unwrap_or(&[]);
        let inv0 = den[0].recip();
        let mut out: Vec<Rational> = Vec::with_capacity(order);
        for n in 0..order {
            let mut acc = num.get(n).cloned().unwrap_or_else(Rational::zero);
            for (k, dk) in den.iter().enumerate().skip(1).take(n) {
                acc -= dk * &out[n - k];
            }
            out.push(acc * &inv0);
        }
        Ok(QSeries { coeffs: out })
    }

    /// Multiply by `q^k`; the known range grows by `k` as well.
    pub fn shift(&self, k: usize) -> Self {
        let mut v = vec![Rational::zero(); k];
        v.extend(self.coeffs.iter().cloned());
        QSeries { coeffs: v }
    }
}

impl Add for &QSeries {
    type Output = QSeries;
    fn add(self, rhs: &QSeries) -> QSeries {
        QSeries {
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &QSeries {
    type Output = QSeries;
    fn sub(self, rhs: &QSeries) -> QSeries {
        QSeries {
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

/// Truncated convolution.
impl Mul for &QSeries {
    type Output = QSeries;
    fn mul(self, rhs: &QSeries) -> QSeries {
        let n = self.order().min(rhs.order());
        let coeffs = (0..n)
            .map(|k| {
                (0..=k)
                    .map(|i| &self.coeffs[i] * &rhs.coeffs[k - i])
                    .fold(Rational::zero(), |a, b| a + b)
            })
            .collect();
        QSeries { coeffs }
    }
}
