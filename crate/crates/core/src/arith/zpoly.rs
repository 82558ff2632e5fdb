//! Polynomials in `z` whose coefficients live in Q(q).

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::qratfn::QRatFn;
use super::rational::Rational;

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct ZPoly {
    coeffs: Vec<QRatFn>,
}

impl ZPoly {
    pub fn zero() -> Self {
        ZPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(QRatFn::one())
    }

    pub fn constant(c: QRatFn) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// `c * z^k`
    pub fn monomial(c: QRatFn, k: usize) -> Self {
        let mut v = vec![QRatFn::zero(); k + 1];
        v[k] = c;
        Self::from_coeffs(v)
    }

    /// `1 - c*z`
    pub fn one_minus(c: &QRatFn) -> Self {
        Self::from_coeffs(vec![QRatFn::one(), -c])
    }

    pub fn from_coeffs(mut coeffs: Vec<QRatFn>) -> Self {
        while coeffs.last().is_some_and(QRatFn::is_zero) {
            coeffs.pop();
        }
        ZPoly { coeffs }
    }

    pub fn coeffs(&self) -> &[QRatFn] {
        &self.coeffs
    }

    /// `[z^n]`, zero outside the stored range (including negative `n`).
    pub fn coeff(&self, n: i64) -> QRatFn {
        if n < 0 {
            return QRatFn::zero();
        }
        self.coeffs
            .get(n as usize)
            .cloned()
            .unwrap_or_else(QRatFn::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn scale(&self, c: &QRatFn) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|x| x * c).collect())
    }

    /// Multiply by `z^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut v = vec![QRatFn::zero(); k];
        v.extend(self.coeffs.iter().cloned());
        ZPoly { coeffs: v }
    }

    pub fn derivative(&self) -> Self {
        Self::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c.scale(&Rational::from_integer((k as i64).into())))
                .collect(),
        )
    }

    /// Substitute a value for `z` (Horner).
    pub fn eval(&self, z: &QRatFn) -> QRatFn {
        self.coeffs
            .iter()
            .rev()
            .fold(QRatFn::zero(), |acc, c| &(&acc * z) + c)
    }

    /// Apply `f` to every coefficient.
    pub fn map_coeffs(&self, f: impl Fn(&QRatFn) -> QRatFn) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(f).collect())
    }

    pub fn product<'a>(factors: impl IntoIterator<Item = &'a ZPoly>) -> ZPoly {
        factors
            .into_iter()
            .fold(ZPoly::one(), |acc, f| &acc * f)
    }
}

impl fmt::Display for ZPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "[{c}]")?,
                1 => write!(f, "[{c}]*z")?,
                _ => write!(f, "[{c}]*z^{k}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for ZPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ZPoly({self})")
    }
}

impl Add for &ZPoly {
    type Output = ZPoly;
    fn add(self, rhs: &ZPoly) -> ZPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        ZPoly::from_coeffs(
            (0..n as i64)
                .map(|k| &self.coeff(k) + &rhs.coeff(k))
                .collect(),
        )
    }
}

impl Sub for &ZPoly {
    type Output = ZPoly;
    fn sub(self, rhs: &ZPoly) -> ZPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        ZPoly::from_coeffs(
            (0..n as i64)
                .map(|k| &self.coeff(k) - &rhs.coeff(k))
                .collect(),
        )
    }
}

impl Neg for &ZPoly {
    type Output = ZPoly;
    fn neg(self) -> ZPoly {
        ZPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &ZPoly {
    type Output = ZPoly;
    fn mul(self, rhs: &ZPoly) -> ZPoly {
        if self.is_zero() || rhs.is_zero() {
            return ZPoly::zero();
        }
        let mut v = vec![QRatFn::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                v[i + j] = &v[i + j] + &(a * b);
            }
        }
        ZPoly::from_coeffs(v)
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for ZPoly {
            type Output = ZPoly;
            fn $m(self, rhs: ZPoly) -> ZPoly { (&self).$m(&rhs) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);
