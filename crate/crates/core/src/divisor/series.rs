use serde::Serialize;

use crate::arith::{QPoly, QRatFn, QSeries, ZPoly};
use crate::error::{Error, Result};
use crate::jfraction::{pochhammer_spec, PochhammerParams};

use super::transform::{quotient_derivatives, weighted_numerator};

/// Parameters shared by the divisor-function generators.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DivisorGFRequest {
    pub alpha: u32,
    pub h: usize,
    pub order: usize,
    pub modulus: Option<u64>,
}

impl DivisorGFRequest {
    pub fn new(alpha: u32, h: usize, order: usize) -> Self {
        DivisorGFRequest { alpha, h, order, modulus: None }
    }

    pub fn with_modulus(mut self, p: u64) -> Self {
        self.modulus = Some(p);
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.h < 2 {
            return Err(Error::InvalidParams(format!("depth h = {} must be at least 2", self.h)));
        }
        if let Some(p) = self.modulus {
            if p < 2 {
                return Err(Error::InvalidParams(format!("modulus {p} must be at least 2")));
            }
        }
        Ok(())
    }

    pub fn window(&self, n: usize) -> Window {
        Window::of(n, self.h)
    }
}

/// How far a coefficient of a depth-`h` generator can be trusted.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Window {
    /// `n = 0`, the scaling artifact.
    Constant,
    /// `1 <= n < h`.
    Certified,
    /// `h <= n < 2h`: observed to match, not proven.
    Empirical,
    Untrusted,
}

impl Window {
    pub fn of(n: usize, h: usize) -> Self {
        if n == 0 {
            Window::Constant
        } else if n < h {
            Window::Certified
        } else if n < 2 * h {
            Window::Empirical
        } else {
            Window::Untrusted
        }
    }
}

/// Truncated Taylor coefficients at a point: `a_k = f^{(k)}(z0) / k!`.
type Jet = Vec<QRatFn>;

fn jet_mul(a: &Jet, b: &Jet) -> Jet {
    let n = a.len();
    (0..n)
        .map(|k| (0..=k).map(|i| &a[i] * &b[k - i]).sum())
        .collect()
}

fn jet_sub(a: &Jet, b: &Jet) -> Jet {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn jet_poly(coeffs: &[QRatFn], z0: &QRatFn, len: usize) -> Jet {
    let p = ZPoly::from_coeffs(coeffs.to_vec());
    let mut out = Vec::with_capacity(len);
    let mut d = p;
    let mut fact = 1i64;
    for k in 0..len {
        if k > 0 {
            fact *= k as i64;
        }
        out.push(d.eval(z0).checked_div(&QRatFn::from_int(fact)).expect("nonzero factorial"));
        d = d.derivative();
    }
    out
}

/// Jets of `z P_h` and `Q_h` at `z0` with `len` terms, run through the
/// convergent recurrence directly on jets.
fn convergent_jets(h: usize, z0: &QRatFn, len: usize) -> Result<(Jet, Jet)> {
    let terms = pochhammer_spec(&PochhammerParams::divisor())?.terms(h)?;
    let one = QRatFn::one();
    let zero = QRatFn::zero();
    let constant = |c: QRatFn| jet_poly(&[c], z0, len);
    let (mut p_prev, mut p) = (constant(zero.clone()), constant(one.clone()));
    let (mut q_prev, mut q) = (constant(one.clone()), jet_poly(&[one.clone(), -terms.c(1)], z0, len));
    let z2 = jet_poly(&[zero.clone(), zero.clone(), one.clone()], z0, len);
    for i in 2..=h {
        let lin = jet_poly(&[one.clone(), -terms.c(i)], z0, len);
        let quad: Jet = z2.iter().map(|x| x * terms.ab(i)).collect();
        let p_next = jet_sub(&jet_mul(&lin, &p), &jet_mul(&quad, &p_prev));
        let q_next = jet_sub(&jet_mul(&lin, &q), &jet_mul(&quad, &q_prev));
        p_prev = std::mem::replace(&mut p, p_next);
        q_prev = std::mem::replace(&mut q, q_next);
    }
    let z = jet_poly(&[zero, one], z0, len);
    Ok((jet_mul(&z, &p), q))
}

fn to_derivatives(jet: &Jet) -> Vec<QRatFn> {
    let mut fact = 1i64;
    jet.iter()
        .enumerate()
        .map(|(k, a)| {
            if k > 0 {
                fact *= k as i64;
            }
            a * &QRatFn::from_int(fact)
        })
        .collect()
}

/// `[sum_j S(alpha, j) z^j d^j/dz^j (z P_h / Q_h)]_{z=q} / (1 - q)` for the
/// `(q, q^2)` fraction, reduced. Its coefficient of `q^n` is `sigma_alpha(n)`
/// for `1 <= n < h`; `alpha = 0` gives the divisor-count generator.
///
/// The derivatives in `z` are carried as truncated jets through the
/// convergent recurrence, so no bivariate products are formed.
pub fn rational_approximant(req: &DivisorGFRequest) -> Result<QRatFn> {
    req.validate()?;
    let m = req.alpha as usize;
    let q = QRatFn::q();
    let (nj, dj) = convergent_jets(req.h, &q, m + 1)?;
    let (nv, dv) = (to_derivatives(&nj), to_derivatives(&dj));
    let ms = quotient_derivatives(&nv, &dv, m);
    let top = weighted_numerator(&ms, &dv[0], m, &q);
    let bottom = &dv[0].powi(m as i32 + 1)? * &(&QRatFn::one() - &q);
    top.checked_div(&bottom)
}

/// Divisor-count generator through `q^{order-1}`. Requires `alpha = 0`.
pub fn divisor_gf(req: &DivisorGFRequest) -> Result<QSeries> {
    if req.alpha != 0 {
        return Err(Error::InvalidParams("divisor_gf needs alpha = 0; use sigma_gf".into()));
    }
    sigma_gf(req)
}

/// Generator of `sigma_alpha(n)` through `q^{order-1}`.
///
/// Same pipeline as [`rational_approximant`] with every quantity held as a
/// truncated series in `q`, which avoids rational-function gcds and keeps
/// large depths cheap. Exact through the requested order.
pub fn sigma_gf(req: &DivisorGFRequest) -> Result<QSeries> {
    req.validate()?;
    let m = req.alpha as usize;
    let n = req.order;
    let ser = |r: &QRatFn| r.taylor(n);
    let q = QRatFn::q();
    let terms = pochhammer_spec(&PochhammerParams::divisor())?.terms(req.h)?;
    let len = m + 1;
    let zero = QSeries::zero(n);
    let one = ser(&QRatFn::one())?;
    let z0 = ser(&q)?;
    let scalar = |c: QSeries| -> SJet {
        let mut v = vec![zero.clone(); len];
        v[0] = c;
        v
    };
    // jets of 1 - c z and z^2 at z = q
    let lin = |c: &QSeries| -> SJet {
        let mut v = scalar(&one - &(c * &z0));
        if len > 1 {
            v[1] = &zero - c;
        }
        v
    };
    let mut z2 = scalar(&z0 * &z0);
    if len > 1 {
        z2[1] = &z0 + &z0;
    }
    if len > 2 {
        z2[2] = one.clone();
    }
    let mut zj = scalar(z0.clone());
    if len > 1 {
        zj[1] = one.clone();
    }
    let (mut p_prev, mut p) = (scalar(zero.clone()), scalar(one.clone()));
    let (mut q_prev, mut qq) = (scalar(one.clone()), lin(&ser(terms.c(1))?));
    for i in 2..=req.h {
        let l = lin(&ser(terms.c(i))?);
        let ab = ser(terms.ab(i))?;
        let quad: SJet = z2.iter().map(|x| x * &ab).collect();
        let p_next = sjet_sub(&sjet_mul(&l, &p), &sjet_mul(&quad, &p_prev));
        let q_next = sjet_sub(&sjet_mul(&l, &qq), &sjet_mul(&quad, &q_prev));
        p_prev = std::mem::replace(&mut p, p_next);
        q_prev = std::mem::replace(&mut qq, q_next);
    }
    let num = sjet_mul(&zj, &p);
    // derivative values from jet coefficients
    let mut fact = QRatFn::one();
    let mut nv = Vec::with_capacity(len);
    let mut dv = Vec::with_capacity(len);
    for k in 0..len {
        if k > 0 {
            fact = &fact * &QRatFn::from_int(k as i64);
        }
        let f = ser(&fact)?;
        nv.push(&num[k] * &f);
        dv.push(&qq[k] * &f);
    }
    let inv = QSeries::ratio(&QPoly::one(), &QPoly::from_coeffs(dv[0].coeffs().to_vec()), n)?;
    let mut hv: Vec<QSeries> = Vec::with_capacity(len);
    for j in 0..len {
        let mut acc = nv[j].clone();
        for i in 0..j {
            let c = ser(&QRatFn::from_int(binomial(j, i)))?;
            acc = &acc - &(&c * &(&hv[i] * &dv[j - i]));
        }
        hv.push(&acc * &inv);
    }
    let table = super::stirling2::Stirling2Table::new(m);
    let mut total = zero.clone();
    for (j, hj) in hv.iter().enumerate() {
        let s = QRatFn::constant(crate::arith::Rational::from_integer(table.get(m, j)));
        total = &total + &(&ser(&s)? * &hj.shift(j).truncate(n));
    }
    let geometric = QSeries::from_coeffs(vec![crate::arith::int(1); n]);
    Ok(&total * &geometric)
}

type SJet = Vec<QSeries>;

fn sjet_mul(a: &SJet, b: &SJet) -> SJet {
    (0..a.len())
        .map(|k| {
            let mut acc = &a[0] * &b[k];
            for i in 1..=k {
                acc = &acc + &(&a[i] * &b[k - i]);
            }
            acc
        })
        .collect()
}

fn sjet_sub(a: &SJet, b: &SJet) -> SJet {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn binomial(n: usize, k: usize) -> i64 {
    (0..k).fold(1i64, |acc, i| acc * (n - i) as i64 / (i as i64 + 1))
}

/// Coefficient of `q^x` is `sum_{n <= x} sigma_alpha(n)` while `x < h`.
pub fn partial_sums(req: &DivisorGFRequest) -> Result<QSeries> {
    let s = sigma_gf(req)?;
    Ok(&s * &QSeries::from_coeffs(vec![crate::arith::int(1); req.order]))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DivisorRow {
    pub n: usize,
    pub value: String,
    pub certified: bool,
    pub window: Window,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

/// Rows `n = 1..order` of `sigma_gf`, or of its reduction when a modulus is
/// set. Coefficients that are not `p`-integral keep their exact value and
/// carry a note.
pub fn divisor_table(req: &DivisorGFRequest) -> Result<Vec<DivisorRow>> {
    req.validate()?;
    if let Some(p) = req.modulus {
        let t = super::congruence::congruence_table(req)?;
        let rows = t
            .rows
            .into_iter()
            .map(|r| {
                let window = req.window(r.n);
                let (value, note) = match r.residue {
                    Some(v) => (v.to_string(), None),
                    None => (r.exact, Some(format!("not {p}-integral"))),
                };
                DivisorRow { n: r.n, value, certified: window == Window::Certified, window, note }
            })
            .collect();
        return Ok(rows);
    }
    let s = sigma_gf(req)?;
    Ok((1..req.order)
        .map(|n| {
            let window = req.window(n);
            DivisorRow {
                n,
                value: s.coeff(n).map(|c| c.to_string()).unwrap_or_default(),
                certified: window == Window::Certified,
                window,
                note: None,
            }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, qr};
    use crate::oracles::{divisor_count, sigma_alpha};
    use num_bigint::BigInt;

    fn as_int(r: &crate::arith::Rational) -> BigInt {
        assert!(r.is_integer(), "{r} not integral");
        r.to_integer()
    }

    #[test]
    fn oracle_agreement() {
        for h in 2..=6 {
            for alpha in 0..=3u32 {
                let s = sigma_gf(&DivisorGFRequest::new(alpha, h, 2 * h)).unwrap();
                for n in 1..h {
                    assert_eq!(as_int(s.coeff(n).unwrap()), sigma_alpha(alpha, n as u64), "h={h} a={alpha} n={n}");
                }
            }
        }
    }

    #[test]
    fn spec_examples() {
        let d = divisor_gf(&DivisorGFRequest::new(0, 5, 5)).unwrap();
        assert_eq!(d.coeffs(), &[int(0), int(1), int(2), int(2), int(3)]);
        let s = sigma_gf(&DivisorGFRequest::new(1, 4, 4)).unwrap();
        assert_eq!(&s.coeffs()[1..], &[int(1), int(3), int(4)]);
        let s = sigma_gf(&DivisorGFRequest::new(2, 5, 5)).unwrap();
        assert_eq!(&s.coeffs()[1..], &[int(1), int(5), int(10), int(21)]);
        assert!(divisor_gf(&DivisorGFRequest::new(1, 5, 5)).is_err());
        assert!(sigma_gf(&DivisorGFRequest::new(1, 1, 5)).is_err());
    }

    #[test]
    fn partial_sum_values() {
        let p = partial_sums(&DivisorGFRequest::new(0, 5, 5)).unwrap();
        assert_eq!(p.coeff(4), Some(&int(8)));
        assert_eq!(p.coeff(0), Some(&int(0)));
        let p = partial_sums(&DivisorGFRequest::new(1, 4, 4)).unwrap();
        assert_eq!(p.coeff(3), Some(&int(8)));
    }

    #[test]
    fn series_path_matches_rational_path() {
        for (a, h) in [(0u32, 2usize), (0, 4), (1, 3), (2, 3), (3, 3)] {
            let req = DivisorGFRequest::new(a, h, 3 * h);
            assert_eq!(sigma_gf(&req).unwrap(), rational_approximant(&req).unwrap().taylor(3 * h).unwrap(), "a={a} h={h}");
        }
    }

    #[test]
    fn first_sigma_approximant() {
        let r = rational_approximant(&DivisorGFRequest::new(1, 2, 4)).unwrap();
        let printed = qr("q*(1+3*q+3*q^2)/((1-q)*(1+q))");
        assert_eq!(r.taylor(4).unwrap(), printed.taylor(4).unwrap());
    }

    #[test]
    fn table_rows() {
        let rows = divisor_table(&DivisorGFRequest::new(0, 5, 5)).unwrap();
        let vals: Vec<&str> = rows.iter().map(|r| r.value.as_str()).collect();
        assert_eq!(vals, ["1", "2", "2", "3"]);
        assert!(rows[3].certified);
        let rows = divisor_table(&DivisorGFRequest::new(0, 3, 8)).unwrap();
        assert_eq!(rows[3].window, Window::Empirical);
        assert_eq!(rows[6].window, Window::Untrusted);
        for r in &rows[..2] {
            assert_eq!(r.value, divisor_count(r.n as u64).to_string());
        }
    }
}
