//! Human-oriented factored printing of rational functions.
//!
//! Cyclotomic factors are split off by trial division and printed in the
//! ascending `1-q`, `1+q`, `1+q+q^2` style used throughout the q-series
//! literature. Whatever does not split is printed as one primitive factor.

use std::sync::OnceLock;

use num_traits::{One, Signed};

use super::qpoly::QPoly;
use super::qratfn::QRatFn;
use super::rational::{fmt_abs, Rational};

const CYCLOTOMIC_LIMIT: usize = 400;

/// `Φ_1 .. Φ_400` over Z, built once.
fn cyclotomics() -> &'static [QPoly] {
    static TABLE: OnceLock<Vec<QPoly>> = OnceLock::new();
    TABLE.get_or_init(|| build_cyclotomics(CYCLOTOMIC_LIMIT))
}

fn build_cyclotomics(n_max: usize) -> Vec<QPoly> {
    let mut out: Vec<QPoly> = Vec::with_capacity(n_max);
    for n in 1..=n_max {
        let mut p = &QPoly::monomial(Rational::one(), n) - &QPoly::one();
        for d in 1..n {
            if n % d == 0 {
                p = p.div_exact(&out[d - 1]).unwrap();
            }
        }
        out.push(p);
    }
    out
}

struct Factored {
    unit: Rational,
    q_power: usize,
    /// (printed factor, multiplicity)
    parts: Vec<(String, u32)>,
}

fn compact(p: &QPoly) -> String {
    p.to_string().replace(' ', "")
}

fn factor_poly(p: &QPoly) -> Factored {
    let v = p.valuation().unwrap_or(0);
    let mut rest = QPoly::from_coeffs(p.coeffs()[v..].to_vec());
    let mut unit = Rational::one();
    let mut parts = Vec::new();
    let deg = rest.degree().unwrap_or(0);
    if deg > 0 {
        // phi(n) >= sqrt(n/2), so no cyclotomic factor beyond 2*deg^2 fits
        let n_max = (2 * deg * deg).clamp(2, CYCLOTOMIC_LIMIT);
        for (i, phi) in cyclotomics()[..n_max].iter().enumerate() {
            if phi.degree().unwrap() > rest.degree().unwrap_or(0) {
                continue;
            }
            let mut mult = 0u32;
            loop {
                let (quot, rem) = rest.divmod(phi).unwrap();
                if !rem.is_zero() {
                    break;
                }
                rest = quot;
                mult += 1;
            }
            if mult == 0 {
                continue;
            }
            if i == 0 {
                // print q - 1 as 1 - q
                if mult % 2 == 1 {
                    unit = -unit;
                }
                parts.push(("1-q".to_string(), mult));
            } else {
                parts.push((compact(phi), mult));
            }
        }
    }
    if rest.degree().unwrap_or(0) > 0 {
        // keep a positive constant term on the leftover factor
        let (content, prim) = rest.to_primitive();
        let mut prim = QPoly::from_coeffs(prim.into_iter().map(Rational::from_integer).collect());
        let mut c = content;
        if prim.coeff(0).is_negative() {
            prim = -prim;
            c = -c;
        }
        unit *= c;
        parts.push((compact(&prim), 1));
    } else {
        unit *= rest.coeff(0);
    }
    Factored {
        unit,
        q_power: v,
        parts,
    }
}

fn join(unit: &Rational, q_power: usize, parts: &[(String, u32)], show_unit_one: bool) -> (String, usize) {
    let mut items: Vec<String> = Vec::new();
    let mag = fmt_abs(unit);
    if mag != "1" || (show_unit_one && q_power == 0 && parts.is_empty()) {
        items.push(mag);
    }
    match q_power {
        0 => {}
        1 => items.push("q".into()),
        k => items.push(format!("q^{k}")),
    }
    for (f, m) in parts {
        if *m == 1 {
            items.push(format!("({f})"));
        } else {
            items.push(format!("({f})^{m}"));
        }
    }
    let n = items.len();
    let body = items.join("*");
    let s = if unit.is_negative() { format!("-{body}") } else { body };
    (s, n)
}

pub(crate) fn factored_string(x: &QRatFn) -> String {
    if x.is_zero() {
        return "0".into();
    }
    let fnum = factor_poly(x.num());
    let fden = factor_poly(x.den());
    let unit = &fnum.unit / &fden.unit;
    let (num, num_items) = join(&unit, fnum.q_power, &fnum.parts, true);
    if x.den().is_one() {
        return num;
    }
    let (den, den_items) = join(&Rational::one(), fden.q_power, &fden.parts, false);
    let plain_atom = |s: &str| !s.contains(['+', '-', '*', '/', '^']);
    let single_group =
        |s: &str, items: usize| items == 1 && s.starts_with('(') && s.ends_with(')') && !s.contains(")^");
    let wrap = |s: String, items: usize| {
        if plain_atom(&s) || single_group(&s, items) {
            s
        } else {
            format!("({s})")
        }
    };
    format!("{}/{}", wrap(num, num_items), wrap(den, den_items))
}

#[cfg(test)]
mod tests {
    use crate::arith::parse_qratfn;

    #[test]
    fn prints_like_the_literature() {
        let x = parse_qratfn("-2*q/((1-q)^2*(1+q))").unwrap();
        assert_eq!(x.factored(), "(-2*q)/((1-q)^2*(1+q))");
        let y = parse_qratfn("1/(1-q)").unwrap();
        assert_eq!(y.factored(), "1/(1-q)");
        let z = parse_qratfn("(1-3*q)/((1-q)^2*(1+q))").unwrap();
        assert_eq!(z.factored(), "(1-3*q)/((1-q)^2*(1+q))");
    }

    #[test]
    fn factored_text_reads_back() {
        for s in [
            "q*(-1-q+8*q^2)/((1-q)*(1-3*q)*(1+q+q^2))",
            "(1+q+4*q^2)/(2*(q^3-1))",
            "3/7",
            "-q^4",
            "(2 + q)/(3*q^2)",
        ] {
            let x = parse_qratfn(s).unwrap();
            assert_eq!(parse_qratfn(&x.factored()).unwrap(), x, "{s} -> {}", x.factored());
        }
    }
}
