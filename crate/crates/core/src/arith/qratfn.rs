//! Reduced rational functions in `q`.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::qpoly::QPoly;
use super::qseries::QSeries;
use super::rational::Rational;
use crate::error::{Error, Result};

/// `num / den` with `gcd(num, den) = 1` and a monic `den`. Zero is `0 / 1`.
///
/// Canonical form makes `==` a structural comparison, which is what every
/// identity check in this crate relies on.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QRatFn {
    num: QPoly,
    den: QPoly,
}

impl QRatFn {
    pub fn new(num: QPoly, den: QPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduce(num, den))
    }

    fn reduce(num: QPoly, den: QPoly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let g = num.gcd(&den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (num.div_exact(&g).unwrap(), den.div_exact(&g).unwrap())
        };
        Self::normalize_unit(num, den)
    }

    fn normalize_unit(num: QPoly, den: QPoly) -> Self {
        let lc = den.leading().unwrap().clone();
        if lc.is_one() {
            QRatFn { num, den }
        } else {
            let inv = lc.recip();
            QRatFn {
                num: num.scale(&inv),
                den: den.scale(&inv),
            }
        }
    }

    pub fn zero() -> Self {
        QRatFn {
            num: QPoly::zero(),
            den: QPoly::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_poly(QPoly::one())
    }

    pub fn q() -> Self {
        Self::from_poly(QPoly::q())
    }

    /// `q^k` for any integer `k`.
    pub fn q_pow(k: i64) -> Self {
        let m = QPoly::monomial(Rational::one(), k.unsigned_abs() as usize);
        if k >= 0 {
            Self::from_poly(m)
        } else {
            QRatFn {
                num: QPoly::one(),
                den: m,
            }
        }
    }

    pub fn from_poly(p: QPoly) -> Self {
        QRatFn {
            num: p,
            den: QPoly::one(),
        }
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_poly(QPoly::constant(c))
    }

    pub fn from_int(n: i64) -> Self {
        Self::constant(super::rational::int(n))
    }

    pub fn num(&self) -> &QPoly {
        &self.num
    }

    pub fn den(&self) -> &QPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    /// The constant value, if this function does not depend on `q`.
    pub fn as_constant(&self) -> Option<Rational> {
        if self.den.is_one() && self.num.degree().unwrap_or(0) == 0 {
            Some(self.num.coeff(0))
        } else {
            None
        }
    }

    pub fn recip(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalize_unit(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        Ok(self * &rhs.recip()?)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        QRatFn {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn powi(&self, e: i32) -> Result<Self> {
        let base = if e < 0 { self.recip()? } else { self.clone() };
        let e = e.unsigned_abs();
        Ok(QRatFn {
            num: base.num.pow(e),
            den: base.den.pow(e),
        })
    }

    /// Substitute `q := inner`, where `inner` is itself a rational function.
    pub fn compose(&self, inner: &QRatFn) -> Result<QRatFn> {
        let eval = |p: &QPoly| -> QRatFn {
            p.coeffs()
                .iter()
                .rev()
                .fold(QRatFn::zero(), |acc, c| &(&acc * inner) + &QRatFn::constant(c.clone()))
        };
        eval(&self.num).checked_div(&eval(&self.den))
    }

    /// Value at a rational point; errors at a pole.
    pub fn eval(&self, x: &Rational) -> Result<Rational> {
        let d = self.den.eval(x);
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.num.eval(x) / d)
    }

    /// Maclaurin coefficients `q^0 .. q^{order-1}`.
    pub fn taylor(&self, order: usize) -> Result<QSeries> {
        if self.den.coeff(0).is_zero() {
            return Err(Error::PoleAtZero);
        }
        QSeries::ratio(&self.num, &self.den, order)
    }

    /// Factored text such as `(-2*q)/((1-q)^2*(1+q))`; see [`super::factor`].
    pub fn factored(&self) -> String {
        super::factor::factored_string(self)
    }
}

impl fmt::Display for QRatFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for QRatFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QRatFn({self})")
    }
}

impl Add for &QRatFn {
    type Output = QRatFn;
    fn add(self, rhs: &QRatFn) -> QRatFn {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return QRatFn::reduce(&self.num + &rhs.num, self.den.clone());
        }
        if self.den.is_one() || rhs.den.is_one() {
            // no common factor possible; result is already reduced
            let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
            return QRatFn::normalize_unit(num, &self.den * &rhs.den);
        }
        // Henrici: only factors of gcd(den1, den2) can cancel
        let g = self.den.gcd(&rhs.den);
        let d1 = self.den.div_exact(&g).unwrap();
        let d2 = rhs.den.div_exact(&g).unwrap();
        let num = &(&self.num * &d2) + &(&rhs.num * &d1);
        if num.is_zero() {
            return QRatFn::zero();
        }
        let h = num.gcd(&g);
        let (num, g) = if h.is_one() {
            (num, g)
        } else {
            (num.div_exact(&h).unwrap(), g.div_exact(&h).unwrap())
        };
        QRatFn::normalize_unit(num, &(&d1 * &d2) * &g)
    }
}

impl Mul for &QRatFn {
    type Output = QRatFn;
    fn mul(self, rhs: &QRatFn) -> QRatFn {
        if self.is_zero() || rhs.is_zero() {
            return QRatFn::zero();
        }
        let g1 = self.num.gcd(&rhs.den);
        let g2 = rhs.num.gcd(&self.den);
        let cut = |p: &QPoly, g: &QPoly| {
            if g.is_one() {
                p.clone()
            } else {
                p.div_exact(g).unwrap()
            }
        };
        let num = &cut(&self.num, &g1) * &cut(&rhs.num, &g2);
        let den = &cut(&self.den, &g2) * &cut(&rhs.den, &g1);
        QRatFn::normalize_unit(num, den)
    }
}

impl Sub for &QRatFn {
    type Output = QRatFn;
    fn sub(self, rhs: &QRatFn) -> QRatFn {
        self + &(-rhs)
    }
}

impl Neg for &QRatFn {
    type Output = QRatFn;
    fn neg(self) -> QRatFn {
        QRatFn {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

/// Panics on division by zero, like the primitive numeric types; use
/// [`QRatFn::checked_div`] where the divisor may vanish.
impl Div for &QRatFn {
    type Output = QRatFn;
    fn div(self, rhs: &QRatFn) -> QRatFn {
        self.checked_div(rhs).expect("QRatFn division by zero")
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for QRatFn {
            type Output = QRatFn;
            fn $m(self, rhs: QRatFn) -> QRatFn { (&self).$m(&rhs) }
        }
        impl $tr<&QRatFn> for QRatFn {
            type Output = QRatFn;
            fn $m(self, rhs: &QRatFn) -> QRatFn { (&self).$m(rhs) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul, Div div);

impl Neg for QRatFn {
    type Output = QRatFn;
    fn neg(self) -> QRatFn {
        -&self
    }
}

impl Zero for QRatFn {
    fn zero() -> Self {
        QRatFn::zero()
    }
    fn is_zero(&self) -> bool {
        QRatFn::is_zero(self)
    }
}

impl One for QRatFn {
    fn one() -> Self {
        QRatFn::one()
    }
}

impl std::iter::Sum for QRatFn {
    fn sum<I: Iterator<Item = QRatFn>>(iter: I) -> Self {
        iter.fold(QRatFn::zero(), |a, b| &a + &b)
    }
}

impl std::iter::Product for QRatFn {
    fn product<I: Iterator<Item = QRatFn>>(iter: I) -> Self {
        iter.fold(QRatFn::one(), |a, b| &a * &b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::int;

    fn p(c: &[i64]) -> QPoly {
        QPoly::from_ints(c)
    }
    fn r(n: &[i64], d: &[i64]) -> QRatFn {
        QRatFn::new(p(n), p(d)).unwrap()
    }

    #[test]
    fn partial_fractions() {
        // 1/(1-q) - 1/(1+q) = 2q/(1-q^2)
        let lhs = &r(&[1], &[1, -1]) - &r(&[1], &[1, 1]);
        assert_eq!(lhs, r(&[0, 2], &[1, 0, -1]));
        assert!(lhs.den().leading().unwrap().is_one());
    }

    #[test]
    fn c1_of_q_q2_reduces() {
        // (q - 1)/(q^2 - 1) = 1/(1 + q)
        assert_eq!(r(&[-1, 1], &[-1, 0, 1]), r(&[1], &[1, 1]));
    }

    #[test]
    fn self_quotient_is_one() {
        let x = r(&[3, 0, -2], &[1, 5, 7]);
        assert!((&x / &x).is_one());
    }

    #[test]
    fn zero_denominator_rejected() {
        assert_eq!(QRatFn::new(p(&[1]), QPoly::zero()), Err(Error::DivisionByZero));
        assert_eq!(QRatFn::zero().recip(), Err(Error::DivisionByZero));
    }

    #[test]
    fn taylor_geometric() {
        let s = r(&[1], &[1, -1]).taylor(4).unwrap();
        assert_eq!(s.coeffs(), &[int(1), int(1), int(1), int(1)]);
    }

    #[test]
    fn taylor_pole_at_zero() {
        assert_eq!(r(&[1], &[0, 1]).taylor(3), Err(Error::PoleAtZero));
    }

    #[test]
    fn negative_powers_of_q() {
        let x = QRatFn::q_pow(-3);
        assert!((&x * &QRatFn::q_pow(3)).is_one());
        assert_eq!(QRatFn::q().powi(-2).unwrap(), QRatFn::q_pow(-2));
    }
}
