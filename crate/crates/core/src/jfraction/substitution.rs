use crate::arith::{QRatFn, QSeries, ZSeries};
use crate::error::Result;

use super::convergents::ConvergentPair;

/// `P_h(m) / Q_h(m)` for `z := m`, as a single rational function in `q`.
pub fn substitute_rational(pair: &ConvergentPair, z_multiplier: &QRatFn) -> Result<QRatFn> {
    pair.eval(z_multiplier)
}

/// Taylor expansion in `q` of `P_h(m) / Q_h(m)`.
pub fn substitute_z_to_q(pair: &ConvergentPair, order: usize, z_multiplier: &QRatFn) -> Result<QSeries> {
    substitute_rational(pair, z_multiplier)?.taylor(order)
}

/// The same expansion assembled term by term from `sum_n j_n(q) q^n`.
/// Only valid for `z := q`; needs `coeffs.order() >= order`.
pub fn substitute_termwise(coeffs: &ZSeries, order: usize) -> Result<QSeries> {
    let mut acc = QSeries::zero(order);
    for (n, j) in coeffs.coeffs().iter().enumerate().take(order) {
        let s = j.taylor(order - n)?.shift(n);
        acc = &acc + &s.truncate(order);
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, qr};
    use crate::jfraction::convergents::{convergent_coefficients, convergents};
    use crate::jfraction::spec::{pochhammer_spec, PochhammerParams};

    #[test]
    fn two_paths_agree() {
        let spec = pochhammer_spec(&PochhammerParams::divisor()).unwrap();
        let pair = convergents(&spec, 4).unwrap();
        let direct = substitute_z_to_q(&pair, 12, &QRatFn::q()).unwrap();
        let termwise = substitute_termwise(&convergent_coefficients(&pair, 12), 12).unwrap();
        assert_eq!(direct, termwise);
    }

    #[test]
    fn zero_multiplier_leaves_constant_one() {
        let spec = pochhammer_spec(&PochhammerParams::divisor()).unwrap();
        let pair = convergents(&spec, 3).unwrap();
        let s = substitute_z_to_q(&pair, 5, &QRatFn::zero()).unwrap();
        assert_eq!(s.coeff(0), Some(&int(1)));
        assert!(s.coeffs()[1..].iter().all(|c| *c == int(0)));
    }

    #[test]
    fn depth_one_value() {
        let spec = pochhammer_spec(&PochhammerParams::divisor()).unwrap();
        let pair = convergents(&spec, 1).unwrap();
        assert_eq!(substitute_rational(&pair, &QRatFn::q()).unwrap(), qr("1+q"));
    }
}
