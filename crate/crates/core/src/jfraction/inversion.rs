use crate::arith::{QRatFn, ZSeries};
use crate::error::{Error, Result};

use super::spec::Terms;

/// Output of [`series_to_jfraction`]. `terminated` is set when some
/// `ab_{k+1}` vanished, in which case the fraction is finite and `terms`
/// is shorter than requested.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Inversion {
    pub terms: Terms,
    pub terminated: bool,
}

/// Recover `c_1..c_depth` and `ab_2..ab_depth` from the first `2*depth`
/// coefficients of a series with constant term 1.
pub fn series_to_jfraction(target: &ZSeries, depth: usize) -> Result<Inversion> {
    if depth == 0 {
        return Err(Error::InvalidParams("depth must be at least 1".into()));
    }
    if target.order() < 2 * depth {
        return Err(Error::InvalidParams(format!(
            "need {} coefficients for depth {depth}, got {}",
            2 * depth,
            target.order()
        )));
    }
    if !target.coeffs()[0].is_one() {
        return Err(Error::InvalidParams("target must have constant term 1".into()));
    }
    let mut r = target.truncate(2 * depth);
    let mut c = Vec::with_capacity(depth);
    let mut ab = Vec::with_capacity(depth);
    for k in 1..=depth {
        let u = (&ZSeries::one(r.order()) - &r.reciprocal()?).div_z()?;
        let ck = u.coeffs()[0].clone();
        c.push(ck.clone());
        if k == depth {
            break;
        }
        let mut rest = u.coeffs().to_vec();
        rest[0] = QRatFn::zero();
        let rest = ZSeries::from_coeffs(rest).div_z()?;
        let next_ab = rest.coeffs()[0].clone();
        if next_ab.is_zero() {
            return Ok(Inversion {
                terms: Terms::new(c, ab)?,
                terminated: true,
            });
        }
        r = rest.scale(&next_ab.recip()?);
        ab.push(next_ab);
    }
    Ok(Inversion {
        terms: Terms::new(c, ab)?,
        terminated: false,
    })
}

/// `j_0 = 1`, `j_n = n^alpha / (1 - q^n)` for `n >= 1`.
pub fn lambert_power_target(alpha: u32, order: usize) -> ZSeries {
    let mut v = Vec::with_capacity(order);
    for n in 0..order {
        if n == 0 {
            v.push(QRatFn::one());
        } else {
            let w = QRatFn::from_int((n as i64).pow(alpha));
            v.push(w.checked_div(&(&QRatFn::one() - &QRatFn::q_pow(n as i64))).unwrap());
        }
    }
    ZSeries::from_coeffs(v)
}

/// Named inversion targets: `one_over_1mqn` and `n_over_1mqn`, plus
/// `n<alpha>_over_1mqn` for higher powers.
pub fn named_target(name: &str, order: usize) -> Result<ZSeries> {
    let alpha = match name {
        "one_over_1mqn" => 0,
        "n_over_1mqn" => 1,
        s => s
            .strip_prefix('n')
            .and_then(|t| t.strip_suffix("_over_1mqn"))
            .and_then(|t| t.parse::<u32>().ok())
            .ok_or_else(|| Error::InvalidParams(format!("unknown target {name:?}")))?,
    };
    Ok(lambert_power_target(alpha, order))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::qr;
    use crate::jfraction::convergents::{convergent_coefficients, convergent_table};

    #[test]
    fn first_list() {
        let inv = series_to_jfraction(&lambert_power_target(0, 6), 3).unwrap();
        assert_eq!(inv.terms.c(1), &qr("1/(1-q)"));
        assert_eq!(inv.terms.ab(2), &qr("-2*q/((1-q)^2*(1+q))"));
    }

    #[test]
    fn second_list() {
        let inv = series_to_jfraction(&lambert_power_target(1, 6), 3).unwrap();
        assert_eq!(inv.terms.ab(2), &qr("(1-3*q)/((1-q)^2*(1+q))"));
        assert_eq!(inv.terms.c(2), &qr("q*(-1-q+8*q^2)/((1-q)*(1-3*q)*(1+q+q^2))"));
    }

    #[test]
    fn round_trip() {
        let t = Terms::new(
            vec![qr("q"), qr("1/(1+q)"), qr("2-q"), qr("3/7")],
            vec![qr("q^2"), qr("-1/(1-q)"), qr("5")],
        )
        .unwrap();
        let pair = convergent_table(&t, 4).unwrap().pop().unwrap();
        let inv = series_to_jfraction(&convergent_coefficients(&pair, 8), 4).unwrap();
        assert!(!inv.terminated);
        assert_eq!(inv.terms, t);
    }

    #[test]
    fn finite_fraction_terminates() {
        // 1/(1 - z) has no quadratic part
        let s = ZSeries::from_coeffs(vec![qr("1"); 6]);
        let inv = series_to_jfraction(&s, 3).unwrap();
        assert!(inv.terminated);
        assert_eq!(inv.terms.depth(), 1);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(series_to_jfraction(&lambert_power_target(0, 3), 2).is_err());
        let s = ZSeries::from_coeffs(vec![qr("2"); 4]);
        assert!(series_to_jfraction(&s, 2).is_err());
        assert!(named_target("bogus", 4).is_err());
        assert_eq!(named_target("n2_over_1mqn", 4).unwrap(), lambert_power_target(2, 4));
    }
}
