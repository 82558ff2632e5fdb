//! JSON wire forms: a rational function is `{"num": [[n, d], ...], "den": [...]}`
//! with ascending coefficients written as decimal-string pairs, so big
//! integers survive untouched.

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::qpoly::QPoly;
use super::qratfn::QRatFn;
use super::rational::{from_pair, to_pair};
use crate::error::Result;

#[derive(Serialize, Deserialize)]
struct RatFnWire {
    num: Vec<[String; 2]>,
    den: Vec<[String; 2]>,
}

fn poly_to_wire(p: &QPoly) -> Vec<[String; 2]> {
    p.coeffs().iter().map(to_pair).collect()
}

fn poly_from_wire(v: &[[String; 2]]) -> Result<QPoly> {
    Ok(QPoly::from_coeffs(
        v.iter().map(from_pair).collect::<Result<Vec<_>>>()?,
    ))
}

impl Serialize for QRatFn {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        RatFnWire {
            num: poly_to_wire(self.num()),
            den: poly_to_wire(self.den()),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for QRatFn {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let w = RatFnWire::deserialize(d)?;
        let num = poly_from_wire(&w.num).map_err(serde::de::Error::custom)?;
        let den = poly_from_wire(&w.den).map_err(serde::de::Error::custom)?;
        QRatFn::new(num, den).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use crate::arith::parse_qratfn;
    use crate::arith::QRatFn;

    #[test]
    fn wire_shape() {
        let x = parse_qratfn("-2*q/(1-q)").unwrap();
        let j = serde_json::to_string(&x).unwrap();
        assert_eq!(j, r#"{"num":[["0","1"],["2","1"]],"den":[["-1","1"],["1","1"]]}"#);
        let back: QRatFn = serde_json::from_str(&j).unwrap();
        assert_eq!(back, x);
    }

    #[test]
    fn rejects_zero_denominator() {
        let bad = r#"{"num":[["1","1"]],"den":[]}"#;
        assert!(serde_json::from_str::<QRatFn>(bad).is_err());
    }
}
