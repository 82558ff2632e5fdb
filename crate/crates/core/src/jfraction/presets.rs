use std::fmt;
use std::str::FromStr;

use crate::arith::QRatFn;
use crate::error::{Error, Result};

use super::spec::{pochhammer_spec, q_integer, JFractionSpec, PochhammerParams};

/// Rows of the standard table of J-fraction parameters for classical
/// q-series. `x` below is a second formal parameter, realized as a
/// rational function of `q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Table1Row {
    /// `(a; q)_n`
    PochhammerA,
    /// `1 / (q; q)_n`
    ReciprocalQQ,
    /// `(x q^{-n}; q)_n`
    PochhammerZqn,
    /// `1 / (x q^{-n}; q)_n`
    ReciprocalPochhammerZqn,
    /// `(a; q)_n / (b; q)_n`
    PochhammerRatio,
    /// `q^{n(n-1)/2} / (q; q)_n`; its c-sequence uses a coefficient
    /// symbol whose meaning is not pinned down, so it is not built.
    GaussianReciprocalQQ,
}

impl Table1Row {
    pub const BUILDABLE: [Table1Row; 5] = [
        Table1Row::PochhammerA,
        Table1Row::ReciprocalQQ,
        Table1Row::PochhammerZqn,
        Table1Row::ReciprocalPochhammerZqn,
        Table1Row::PochhammerRatio,
    ];

    pub fn key(self) -> &'static str {
        match self {
            Table1Row::PochhammerA => "pochhammer_a",
            Table1Row::ReciprocalQQ => "reciprocal_qq",
            Table1Row::PochhammerZqn => "pochhammer_zqn",
            Table1Row::ReciprocalPochhammerZqn => "reciprocal_pochhammer_zqn",
            Table1Row::PochhammerRatio => "pochhammer_ratio",
            Table1Row::GaussianReciprocalQQ => "gaussian_reciprocal_qq",
        }
    }
}

impl fmt::Display for Table1Row {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.key())
    }
}

impl FromStr for Table1Row {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Table1Row::BUILDABLE
            .iter()
            .chain([Table1Row::GaussianReciprocalQQ].iter())
            .find(|r| r.key() == s)
            .copied()
            .ok_or_else(|| Error::InvalidParams(format!("unknown preset {s:?}")))
    }
}

/// Parameters a row may need. Unused fields are ignored.
#[derive(Clone, Debug)]
pub struct PresetParams {
    pub a: QRatFn,
    pub b: QRatFn,
    pub x: QRatFn,
}

impl Default for PresetParams {
    fn default() -> Self {
        PresetParams {
            a: QRatFn::q(),
            b: QRatFn::q_pow(2),
            x: crate::arith::qr("1/3"),
        }
    }
}

fn qp(k: i64) -> QRatFn {
    QRatFn::q_pow(k)
}

fn one() -> QRatFn {
    QRatFn::one()
}

pub fn table1_preset(row: Table1Row, params: &PresetParams) -> Result<JFractionSpec> {
    match row {
        Table1Row::PochhammerA => {
            let a = params.a.clone();
            let a2 = a.clone();
            Ok(JFractionSpec::from_fns(
                format!("pochhammer_a(a={a})"),
                move |h| {
                    if h == 1 {
                        return Ok(&one() - &a);
                    }
                    let h = h as i64;
                    let t = &(&(&qp(h) + &qp(h - 1)) - &one()) * &(&a * &qp(h - 2));
                    Ok(&qp(h - 1) - &t)
                },
                move |h| {
                    let h = h as i64;
                    Ok([
                        a2.clone(),
                        qp(2 * h - 4),
                        &(&a2 * &qp(h - 2)) - &one(),
                        &qp(h - 1) - &one(),
                    ]
                    .into_iter()
                    .product())
                },
            ))
        }
        Table1Row::ReciprocalQQ => Ok(JFractionSpec::from_fns(
            "reciprocal_qq",
            |h| {
                if h == 1 {
                    return (one()).checked_div(&(&one() - &QRatFn::q()));
                }
                let h = h as i64;
                let num = &qp(h - 1) * &(&(&qp(h - 1) * &q_integer(h - 1)) - &q_integer(h - 2));
                let den = &q_integer(2 * h - 3) * &(&qp(2 * h - 1) - &one());
                num.checked_div(&den)
            },
            |h| {
                if h == 2 {
                    // the general closed form gives half of this at h = 2
                    return (-QRatFn::q()).checked_div(&(&(&one() - &QRatFn::q()).powi(2)? * &(&one() + &QRatFn::q())));
                }
                let h = h as i64;
                let den = &(&qp(2 * h - 3) - &one()).powi(2)?
                    * &(&(&(&one() + &qp(h - 2)) + &qp(h - 1)) + &qp(2 * h - 3));
                (-qp(3 * h - 5)).checked_div(&den)
            },
        )),
        Table1Row::PochhammerZqn => {
            let x = params.x.clone();
            let x2 = x.clone();
            Ok(JFractionSpec::from_fns(
                format!("pochhammer_zqn(x={x})"),
                move |h| {
                    if h == 1 {
                        return (&QRatFn::q() - &x).checked_div(&QRatFn::q());
                    }
                    let h = h as i64;
                    let num = &(&(&qp(h) - &x) - &(&QRatFn::q() * &x)) + &(&qp(h) * &x);
                    num.checked_div(&qp(2 * h - 1))
                },
                move |h| {
                    let h = h as i64;
                    let num = &(&(&qp(h - 1) - &one()) * &(&qp(h - 1) - &x2)) * &x2;
                    num.checked_div(&qp(4 * h - 5))
                },
            ))
        }
        Table1Row::ReciprocalPochhammerZqn => {
            let x = params.x.clone();
            let x2 = x.clone();
            Ok(JFractionSpec::from_fns(
                format!("reciprocal_pochhammer_zqn(x={x})"),
                move |h| {
                    if h == 1 {
                        return QRatFn::q().checked_div(&(&QRatFn::q() - &x));
                    }
                    let h = h as i64;
                    // q^{h-1} x enters with a minus sign; the other sign misses [z^3]
                    let inner = &(&(&qp(2 * h - 2) + &x) - &(&qp(h - 1) * &x)) - &(&qp(h) * &x);
                    let num = &qp(h - 1) * &inner;
                    let den = &(&qp(2 * h - 3) - &x) * &(&qp(2 * h - 1) - &x);
                    num.checked_div(&den)
                },
                move |h| {
                    let h = h as i64;
                    let num: QRatFn = [
                        q_integer(h - 1),
                        qp(3 * h - 4),
                        &one() - &QRatFn::q(),
                        &qp(h - 2) - &x2,
                        x2.clone(),
                    ]
                    .into_iter()
                    .product();
                    let den: QRatFn = [
                        &qp(2 * h - 4) - &x2,
                        (&qp(2 * h - 3) - &x2).powi(2)?,
                        &qp(2 * h - 2) - &x2,
                    ]
                    .into_iter()
                    .product();
                    num.checked_div(&den)
                },
            ))
        }
        Table1Row::PochhammerRatio => {
            pochhammer_spec(&PochhammerParams::new(params.a.clone(), params.b.clone())?)
        }
        Table1Row::GaussianReciprocalQQ => Err(Error::AmbiguousInSource(
            "the c-sequence of the q^(n choose 2)/(q;q)_n row uses an undefined coefficient symbol".into(),
        )),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::qr;

    #[test]
    fn keys_round_trip() {
        for r in Table1Row::BUILDABLE {
            assert_eq!(r.key().parse::<Table1Row>().unwrap(), r);
        }
        assert!("nope".parse::<Table1Row>().is_err());
    }

    #[test]
    fn excluded_row_is_ambiguous() {
        let e = table1_preset(Table1Row::GaussianReciprocalQQ, &PresetParams::default()).unwrap_err();
        assert!(matches!(e, Error::AmbiguousInSource(_)));
    }

    #[test]
    fn printed_first_terms() {
        let p = PresetParams {
            a: qr("2/5"),
            ..PresetParams::default()
        };
        let s = table1_preset(Table1Row::PochhammerA, &p).unwrap();
        assert_eq!(s.c(1).unwrap(), qr("3/5"));
        let s = table1_preset(Table1Row::ReciprocalQQ, &p).unwrap();
        assert_eq!(s.c(1).unwrap(), qr("1/(1-q)"));
        assert_eq!(s.ab(2).unwrap(), qr("-q/((1-q)^2*(1+q))"));
    }
}
