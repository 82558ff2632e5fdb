use crate::arith::{QRatFn, ZPoly, ZSeries};
use crate::error::{Error, Result};

use super::spec::{JFractionSpec, Terms};

/// The numerator and denominator of the `h`-th convergent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConvergentPair {
    pub h: usize,
    pub p: ZPoly,
    pub q: ZPoly,
}

impl ConvergentPair {
    /// `P_h(z) / Q_h(z)` evaluated at a point `z` in the field.
    pub fn eval(&self, z: &QRatFn) -> Result<QRatFn> {
        self.p.eval(z).checked_div(&self.q.eval(z))
    }
}

/// All pairs `(P_0, Q_0) .. (P_h, Q_h)` from the three-term recurrence
///
/// ```text
/// P_h = (1 - c_h z) P_{h-1} - ab_h z^2 P_{h-2}
/// ```
///
/// with `P_0 = 0, P_1 = 1, Q_0 = 1, Q_1 = 1 - c_1 z`.
pub fn convergent_table(terms: &Terms, h: usize) -> Result<Vec<ConvergentPair>> {
    if h > terms.depth() {
        return Err(Error::OutOfRange {
            index: h,
            max: terms.depth(),
        });
    }
    let mut out = vec![ConvergentPair {
        h: 0,
        p: ZPoly::zero(),
        q: ZPoly::one(),
    }];
    if h == 0 {
        return Ok(out);
    }
    out.push(ConvergentPair {
        h: 1,
        p: ZPoly::one(),
        q: ZPoly::one_minus(terms.c(1)),
    });
    for i in 2..=h {
        let lin = ZPoly::one_minus(terms.c(i));
        let quad = ZPoly::monomial(terms.ab(i).clone(), 2);
        let (a, b) = (&out[i - 1], &out[i - 2]);
        let p = &(&lin * &a.p) - &(&quad * &b.p);
        let q = &(&lin * &a.q) - &(&quad * &b.q);
        out.push(ConvergentPair { h: i, p, q });
    }
    Ok(out)
}

pub fn convergents(spec: &JFractionSpec, h: usize) -> Result<ConvergentPair> {
    let terms = spec.terms(h)?;
    Ok(convergent_table(&terms, h)?.pop().unwrap())
}

/// Power-series coefficients `j_0 .. j_{order-1}` of `P_h / Q_h` through
/// the finite-difference recurrence
/// `j_n = [z^n]P - sum_{i=1}^{min(n, h)} [z^i]Q j_{n-i}`.
pub fn convergent_coefficients(pair: &ConvergentPair, order: usize) -> ZSeries {
    let mut j: Vec<QRatFn> = Vec::with_capacity(order);
    let qdeg = pair.q.degree().unwrap_or(0);
    for n in 0..order {
        let mut v = pair.p.coeff(n as i64);
        for i in 1..=n.min(qdeg) {
            v = &v - &(&pair.q.coeff(i as i64) * &j[n - i]);
        }
        j.push(v);
    }
    ZSeries::from_coeffs(j)
}

/// The same coefficients by truncated series division; an independent
/// route used to cross-check [`convergent_coefficients`].
pub fn convergent_coefficients_by_division(pair: &ConvergentPair, order: usize) -> Result<ZSeries> {
    ZSeries::from_poly(&pair.p, order).div(&ZSeries::from_poly(&pair.q, order))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::qr;
    use crate::jfraction::spec::{pochhammer_spec, PochhammerParams};

    #[test]
    fn shift_rule_numerator_is_shifted_denominator() {
        let spec = pochhammer_spec(&PochhammerParams::divisor()).unwrap();
        let t = spec.terms(5).unwrap();
        let full = convergent_table(&t, 5).unwrap();
        let sh = convergent_table(&t.shifted(), 4).unwrap();
        for h in 1..=5 {
            assert_eq!(full[h].p, sh[h - 1].q, "h={h}");
        }
    }

    #[test]
    fn degrees_and_constant_terms() {
        let spec = pochhammer_spec(&PochhammerParams::divisor()).unwrap();
        let t = spec.terms(6).unwrap();
        for pair in convergent_table(&t, 6).unwrap().iter().skip(1) {
            assert!(pair.p.degree().unwrap() < pair.h);
            assert!(pair.q.degree().unwrap() <= pair.h);
            assert!(pair.p.coeff(0).is_one());
            assert!(pair.q.coeff(0).is_one());
        }
    }

    #[test]
    fn two_routes_agree() {
        let t = Terms::new(vec![qr("q"), qr("1+q"), qr("2")], vec![qr("q^2"), qr("-1/(1-q)")]).unwrap();
        let pair = convergent_table(&t, 3).unwrap().pop().unwrap();
        assert_eq!(
            convergent_coefficients(&pair, 9),
            convergent_coefficients_by_division(&pair, 9).unwrap()
        );
    }

    #[test]
    fn depth_bound_is_checked() {
        let t = Terms::new(vec![qr("1")], vec![]).unwrap();
        assert!(convergent_table(&t, 2).is_err());
    }
}
