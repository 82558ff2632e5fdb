//! A small recursive-descent reader for rational functions in `q`.
//!
//! Grammar (whitespace is ignored):
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := '-' unary | '+' unary | power
//! power  := atom ('^' ['-'] integer)?
//! atom   := integer | 'q' | '(' expr ')'
//! ```
//!
//! Everything the crate prints through `Display` or `factored()` reads back
//! to the same value.

use num_bigint::BigInt;

use super::qratfn::QRatFn;
use super::rational::Rational;
use crate::error::{Error, Result};

pub fn parse_qratfn(src: &str) -> Result<QRatFn> {
    let mut p = Parser {
        src: src.as_bytes(),
        pos: 0,
    };
    let v = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(v)
}

impl std::str::FromStr for QRatFn {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_qratfn(s)
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> Error {
        Error::Parse {
            pos: self.pos,
            msg: msg.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<QRatFn> {
        let mut acc = self.term()?;
        loop {
            if self.eat(b'+') {
                acc = &acc + &self.term()?;
            } else if self.eat(b'-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<QRatFn> {
        let mut acc = self.unary()?;
        loop {
            if self.eat(b'*') {
                acc = &acc * &self.unary()?;
            } else if self.eat(b'/') {
                let at = self.pos;
                let d = self.unary()?;
                acc = acc.checked_div(&d).map_err(|_| Error::Parse {
                    pos: at,
                    msg: "division by zero".into(),
                })?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<QRatFn> {
        if self.eat(b'-') {
            return Ok(-self.unary()?);
        }
        if self.eat(b'+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<QRatFn> {
        let base = self.atom()?;
        if !self.eat(b'^') {
            return Ok(base);
        }
        let neg = self.eat(b'-');
        self.skip_ws();
        let at = self.pos;
        let e = self.integer()?;
        let e: i32 = e
            .try_into()
            .map_err(|_| self.err("exponent too large"))?;
        base.powi(if neg { -e } else { e }).map_err(|_| Error::Parse {
            pos: at,
            msg: "zero raised to a negative power".into(),
        })
    }

    fn atom(&mut self) -> Result<QRatFn> {
        match self.peek() {
            Some(b'q') => {
                self.pos += 1;
                Ok(QRatFn::q())
            }
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.err("expected ')'"));
                }
                Ok(v)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                Ok(QRatFn::constant(Rational::from_integer(n)))
            }
            Some(_) => Err(self.err("expected a number, 'q' or '('")),
            None => Err(self.err("unexpected end of input")),
        }
    }

    fn integer(&mut self) -> Result<BigInt> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected an integer"));
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        Ok(s.parse().unwrap())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::QPoly;

    #[test]
    fn reads_printed_forms() {
        let x = parse_qratfn("(-2*q)/((1-q)^2*(1+q))").unwrap();
        let expect = QRatFn::new(
            QPoly::from_ints(&[0, -2]),
            &QPoly::from_ints(&[1, -1]).pow(2) * &QPoly::from_ints(&[1, 1]),
        )
        .unwrap();
        assert_eq!(x, expect);
    }

    #[test]
    fn precedence_and_unary_minus() {
        assert_eq!(
            parse_qratfn("-q^2 + 3/2*q").unwrap(),
            QRatFn::from_poly(QPoly::from_coeffs(vec![
                Rational::from_integer(0.into()),
                Rational::new(3.into(), 2.into()),
                Rational::from_integer((-1).into()),
            ]))
        );
        assert_eq!(parse_qratfn("q^-2").unwrap(), QRatFn::q_pow(-2));
    }

    #[test]
    fn errors_carry_positions() {
        assert!(matches!(parse_qratfn("1 +"), Err(Error::Parse { .. })));
        assert!(matches!(parse_qratfn("(1 - q"), Err(Error::Parse { .. })));
        assert!(matches!(parse_qratfn("1/(q - q)"), Err(Error::Parse { .. })));
        assert!(matches!(parse_qratfn("x"), Err(Error::Parse { pos: 0, .. })));
    }
}
