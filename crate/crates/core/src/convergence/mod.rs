//! Extended-precision convergence diagnostics for the `(q, q^2)` fraction.
//!
//! Everything here is a numeric diagnostic, not a proof. Arithmetic runs on
//! [`astro_float::BigFloat`] at `QJFRAC_PRECISION_BITS` bits (default 128).

use astro_float::{BigFloat, Consts, Radix, RoundingMode};
use serde::Serialize;

use crate::error::{Error, Result};

const RM: RoundingMode = RoundingMode::ToEven;
pub const DEFAULT_PRECISION_BITS: usize = 128;
const MIN_PRECISION_BITS: usize = 64;

/// Working precision from `QJFRAC_PRECISION_BITS`, clamped to at least 64.
pub fn precision_bits() -> usize {
    std::env::var("QJFRAC_PRECISION_BITS")
        .ok()
        .and_then(|s| s.trim().parse::<usize>().ok())
        .map(|p| p.max(MIN_PRECISION_BITS))
        .unwrap_or(DEFAULT_PRECISION_BITS)
}

/// A real number at a fixed binary precision.
#[derive(Clone, Debug)]
pub struct Hp {
    v: BigFloat,
    p: usize,
}

impl Hp {
    pub fn from_f64(x: f64, p: usize) -> Self {
        Hp { v: BigFloat::from_f64(x, p), p }
    }

    pub fn from_i64(x: i64, p: usize) -> Self {
        Hp { v: BigFloat::from_i64(x, p), p }
    }

    pub fn parse(s: &str, p: usize) -> Result<Self> {
        let mut cc = consts();
        let v = BigFloat::parse(s.trim(), Radix::Dec, p, RM, &mut cc);
        if v.is_nan() {
            return Err(Error::Parse { pos: 0, msg: format!("not a decimal number: {s:?}") });
        }
        Ok(Hp { v, p })
    }

    pub fn precision(&self) -> usize {
        self.p
    }

    fn wrap(&self, v: BigFloat) -> Self {
        Hp { v, p: self.p }
    }

    pub fn add(&self, o: &Self) -> Self {
        self.wrap(self.v.add(&o.v, self.p, RM))
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.wrap(self.v.sub(&o.v, self.p, RM))
    }

    pub fn mul(&self, o: &Self) -> Self {
        self.wrap(self.v.mul(&o.v, self.p, RM))
    }

    pub fn div(&self, o: &Self) -> Self {
        self.wrap(self.v.div(&o.v, self.p, RM))
    }

    pub fn sqrt(&self) -> Self {
        self.wrap(self.v.sqrt(self.p, RM))
    }

    pub fn abs(&self) -> Self {
        self.wrap(self.v.abs())
    }

    pub fn neg(&self) -> Self {
        self.wrap(self.v.neg())
    }

    pub fn is_zero(&self) -> bool {
        self.v.is_zero()
    }

    pub fn is_finite(&self) -> bool {
        !self.v.is_nan() && !self.v.is_inf()
    }

    pub fn is_positive(&self) -> bool {
        self.v.is_positive() && !self.v.is_zero()
    }

    pub fn lt(&self, o: &Self) -> bool {
        matches!(self.v.cmp(&o.v), Some(c) if c < 0)
    }

    pub fn to_f64(&self) -> f64 {
        if self.v.is_nan() {
            return f64::NAN;
        }
        if self.v.is_inf_pos() {
            return f64::INFINITY;
        }
        if self.v.is_inf_neg() {
            return f64::NEG_INFINITY;
        }
        if self.v.is_zero() {
            return 0.0;
        }
        let mut cc = consts();
        self.v
            .format(Radix::Dec, RM, &mut cc)
            .ok()
            .and_then(|s| s.parse::<f64>().ok())
            .unwrap_or(f64::NAN)
    }
}

fn consts() -> Consts {
    Consts::new().expect("constant cache allocates")
}

/// A complex number over [`Hp`].
#[derive(Clone, Debug)]
pub struct HpComplex {
    pub re: Hp,
    pub im: Hp,
}

impl HpComplex {
    pub fn new(re: Hp, im: Hp) -> Self {
        HpComplex { re, im }
    }

    pub fn from_f64(re: f64, im: f64, p: usize) -> Self {
        HpComplex::new(Hp::from_f64(re, p), Hp::from_f64(im, p))
    }

    pub fn real(x: i64, p: usize) -> Self {
        HpComplex::new(Hp::from_i64(x, p), Hp::from_i64(0, p))
    }

    /// `RE` or `RE,IM` in decimal.
    pub fn parse(s: &str, p: usize) -> Result<Self> {
        let mut parts = s.splitn(2, ',');
        let re = Hp::parse(parts.next().unwrap_or(""), p)?;
        let im = match parts.next() {
            Some(t) => Hp::parse(t, p)?,
            None => Hp::from_i64(0, p),
        };
        Ok(HpComplex::new(re, im))
    }

    pub fn precision(&self) -> usize {
        self.re.precision()
    }

    pub fn add(&self, o: &Self) -> Self {
        HpComplex::new(self.re.add(&o.re), self.im.add(&o.im))
    }

    pub fn sub(&self, o: &Self) -> Self {
        HpComplex::new(self.re.sub(&o.re), self.im.sub(&o.im))
    }

    pub fn mul(&self, o: &Self) -> Self {
        HpComplex::new(
            self.re.mul(&o.re).sub(&self.im.mul(&o.im)),
            self.re.mul(&o.im).add(&self.im.mul(&o.re)),
        )
    }

    pub fn div(&self, o: &Self) -> Result<Self> {
        let n = o.re.mul(&o.re).add(&o.im.mul(&o.im));
        if n.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let re = self.re.mul(&o.re).add(&self.im.mul(&o.im)).div(&n);
        let im = self.im.mul(&o.re).sub(&self.re.mul(&o.im)).div(&n);
        Ok(HpComplex::new(re, im))
    }

    pub fn abs(&self) -> Hp {
        self.re.mul(&self.re).add(&self.im.mul(&self.im)).sqrt()
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_finite(&self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }

    pub fn to_f64_pair(&self) -> (f64, f64) {
        (self.re.to_f64(), self.im.to_f64())
    }
}

/// `x^0, x^1, ..., x^n`.
fn powers(x: &HpComplex, n: usize) -> Vec<HpComplex> {
    let p = x.precision();
    let mut out = Vec::with_capacity(n + 1);
    out.push(HpComplex::real(1, p));
    for k in 1..=n {
        let next = out[k - 1].mul(x);
        out.push(next);
    }
    out
}

fn one_minus(x: &HpComplex) -> HpComplex {
    HpComplex::real(1, x.precision()).sub(x)
}

fn check_disc(x: &HpComplex, what: &str) -> Result<()> {
    if !x.abs().lt(&Hp::from_i64(1, x.precision())) {
        return Err(Error::InvalidParams(format!("|{what}| must be < 1")));
    }
    Ok(())
}

/// How `b_h` is evaluated.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BReading {
    /// `(1 - z q^{h-2} N_h) / ((1 - q^{2h-2})(1 - q^{2h}))` with
    /// `N_h = 2q + q^{2h} - q^h - q^{h+1} - q^2 - q^3 + q^{h+2}`, read literally.
    Displayed,
    /// `1 - c_h z` with the sequence value `c_h = 2q^{h-1}/((1+q^{h-1})(1+q^h))`.
    FromSequence,
}

#[derive(Clone, Debug, Serialize)]
pub struct PringsheimRow {
    pub h: usize,
    pub abs_a: f64,
    pub abs_b: f64,
    /// `|b_h| - |a_h| - 1`.
    pub margin: f64,
    /// `2|b_h| - 4|a_h| - 1`: the same test after scaling every partial
    /// denominator by 2, which leaves the convergents unchanged.
    pub scaled_margin: f64,
    /// [`radius_gap`] at `|t| = |q|^{h-1}`.
    pub reduced_margin: f64,
    /// False when `|margin|` is below the working precision, so its sign
    /// carries no information.
    pub resolved: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct PringsheimReport {
    pub q: (f64, f64),
    pub h_range: (usize, usize),
    pub precision_bits: usize,
    pub b_reading: BReading,
    /// The `q^i q^{i+1}` product in the bound is read as `q^{2i+1}`.
    pub notes: Vec<String>,
    pub rows: Vec<PringsheimRow>,
}

impl PringsheimReport {
    pub fn all_margins_positive(&self) -> bool {
        self.rows.iter().all(|r| r.margin > 0.0)
    }

    pub fn all_scaled_margins_positive(&self) -> bool {
        self.rows.iter().all(|r| r.scaled_margin > 0.0)
    }

    pub fn all_reduced_margins_positive(&self) -> bool {
        self.rows.iter().all(|r| r.reduced_margin > 0.0)
    }
}

/// `a_h = z^2 q^{2h-3} (1-q^{h-1})^4 / ((1-q^{2h-3})(1-q^{2h-2})^2(1-q^{2h-1}))`.
fn a_term(qp: &[HpComplex], z: &HpComplex, h: usize) -> Result<HpComplex> {
    let num = z.mul(z).mul(&qp[2 * h - 3]).mul(&one_minus(&qp[h - 1]).mul(&one_minus(&qp[h - 1])).mul(&one_minus(&qp[h - 1])).mul(&one_minus(&qp[h - 1])));
    let d2 = one_minus(&qp[2 * h - 2]);
    let den = one_minus(&qp[2 * h - 3]).mul(&d2).mul(&d2).mul(&one_minus(&qp[2 * h - 1]));
    num.div(&den)
}

fn c_term(qp: &[HpComplex], h: usize) -> Result<HpComplex> {
    let two = HpComplex::real(2, qp[0].precision());
    let one = HpComplex::real(1, qp[0].precision());
    two.mul(&qp[h - 1]).div(&one.add(&qp[h - 1]).mul(&one.add(&qp[h])))
}

fn b_term(qp: &[HpComplex], z: &HpComplex, h: usize, reading: BReading) -> Result<HpComplex> {
    match reading {
        BReading::Displayed => {
            let n = qp[1]
                .add(&qp[1])
                .add(&qp[2 * h])
                .sub(&qp[h])
                .sub(&qp[h + 1])
                .sub(&qp[2])
                .sub(&qp[3])
                .add(&qp[h + 2]);
            let num = one_minus(&z.mul(&qp[h - 2]).mul(&n));
            num.div(&one_minus(&qp[2 * h - 2]).mul(&one_minus(&qp[2 * h])))
        }
        BReading::FromSequence => Ok(one_minus(&c_term(qp, h)?.mul(z))),
    }
}

/// Margins of the Pringsheim test `|b_h| >= |a_h| + 1` for `2 <= h <= h_max`
/// with `z = q`.
pub fn pringsheim_margins(q: &HpComplex, h_max: usize, reading: BReading) -> Result<PringsheimReport> {
    if q.is_zero() {
        return Err(Error::InvalidParams("q must be nonzero".into()));
    }
    check_disc(q, "q")?;
    let p = q.precision();
    let qp = powers(q, 2 * h_max.max(2) + 2);
    let abs_q = q.abs();
    let mut rows = Vec::new();
    let one = Hp::from_i64(1, p);
    let half = Hp::from_f64(0.5, p);
    let ulp = (0..p.saturating_sub(8)).fold(one.clone(), |e, _| e.mul(&half));
    for h in 2..=h_max {
        let a = a_term(&qp, q, h)?.abs();
        let b = b_term(&qp, q, h, reading)?.abs();
        let margin = b.sub(&a).sub(&one);
        let scaled = b.add(&b).sub(&a.mul(&Hp::from_i64(4, p))).sub(&one);
        let mut t = one.clone();
        for _ in 1..h {
            t = t.mul(&abs_q);
        }
        let resolved = ulp.lt(&margin.abs());
        rows.push(PringsheimRow {
            h,
            resolved,
            abs_a: a.to_f64(),
            abs_b: b.to_f64(),
            margin: margin.to_f64(),
            scaled_margin: scaled.to_f64(),
            reduced_margin: radius_gap_hp(&t).to_f64(),
        });
    }
    Ok(PringsheimReport {
        q: q.to_f64_pair(),
        h_range: (2, h_max),
        precision_bits: p,
        b_reading: reading,
        notes: vec!["product q^i q^{i+1} in the |b_i| bound read as q^{2i+1}".into()],
        rows,
    })
}

/// Evaluated as `t [(1-t)^5 - t(1+t)^2(1+t^2)] / ((1+t^2)^2 (1+t) (L + sqrt R))`,
/// which keeps its sign for tiny `t` where `L - sqrt R` cancels.
fn radius_gap_hp(t: &Hp) -> Hp {
    let p = t.precision();
    let one = Hp::from_i64(1, p);
    let omt = one.sub(t);
    let opt = one.add(t);
    let t2 = t.mul(t);
    let opt2 = one.add(&t2);
    let omt2 = omt.mul(&omt);
    let lhs = omt2.div(&opt2);
    let rhs = omt2.mul(&omt2).add(&t2.mul(&opt).mul(&opt)).div(&opt.mul(&opt2));
    let g = omt2.mul(&omt2).mul(&omt).sub(&t.mul(&opt).mul(&opt).mul(&opt2));
    let den = opt2.mul(&opt2).mul(&opt).mul(&lhs.add(&rhs.sqrt()));
    t.mul(&g).div(&den)
}

/// `(1-t)^2/(1+t^2) - sqrt(((1-t)^4 + t^2(1+t)^2) / (1+t+t^2+t^3))`; positive
/// inside the convergence region.
pub fn radius_gap(t: f64) -> f64 {
    radius_gap_hp(&Hp::from_f64(t, precision_bits())).to_f64()
}

/// Bisection for the root of [`radius_gap`] in `(0, 1)` to within `tolerance`.
/// The gap vanishes at `t = 0`, so the bracket starts just inside.
pub fn threshold_radius(tolerance: f64) -> Result<f64> {
    if !(tolerance > 0.0) {
        return Err(Error::InvalidParams("tolerance must be positive".into()));
    }
    let p = precision_bits();
    let mut lo = Hp::from_f64(1e-3, p);
    let mut hi = Hp::from_f64(1.0 - 1e-3, p);
    let g_lo = radius_gap_hp(&lo);
    let g_hi = radius_gap_hp(&hi);
    if g_lo.is_positive() == g_hi.is_positive() {
        return Err(Error::NoSignChange);
    }
    let half = Hp::from_f64(0.5, p);
    let tol = Hp::from_f64(tolerance, p);
    while tol.lt(&hi.sub(&lo)) {
        let mid = lo.add(&hi).mul(&half);
        if radius_gap_hp(&mid).is_positive() == g_lo.is_positive() {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(lo.add(&hi).mul(&half).to_f64())
}

#[derive(Clone, Debug, Serialize)]
pub struct ProbeRow {
    pub h: usize,
    pub gap: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ProbeReport {
    pub q: (f64, f64),
    pub z: (f64, f64),
    pub precision_bits: usize,
    /// `(1-q) sum_{n<terms} z^n/(1-q^{n+1})`.
    pub direct_terms: usize,
    pub rows: Vec<ProbeRow>,
}

impl ProbeReport {
    pub fn gap_at(&self, h: usize) -> Option<f64> {
        self.rows.iter().find(|r| r.h == h).and_then(|r| r.gap)
    }
}

/// `(1-q) sum z^n/(1-q^{n+1})`, stopped once terms fall below the working
/// precision.
fn direct_sum(q: &HpComplex, z: &HpComplex) -> Result<(HpComplex, usize)> {
    let p = q.precision();
    let half = Hp::from_f64(0.5, p);
    let eps = (0..p + 8).fold(Hp::from_i64(1, p), |e, _| e.mul(&half));
    let mut acc = HpComplex::real(0, p);
    let mut zn = HpComplex::real(1, p);
    let mut qn1 = q.clone();
    let cap = 64 * p;
    for n in 0..cap {
        let term = zn.div(&one_minus(&qn1))?;
        acc = acc.add(&term);
        if term.abs().lt(&eps) {
            return Ok((one_minus(q).mul(&acc), n + 1));
        }
        zn = zn.mul(z);
        qn1 = qn1.mul(q);
    }
    Ok((one_minus(q).mul(&acc), cap))
}

/// `1/(1 - c_1 z - ab_2 z^2/(1 - c_2 z - ...))` to depth `h`, evaluated from
/// the bottom up.
fn convergent_value(qp: &[HpComplex], z: &HpComplex, h: usize) -> Result<HpComplex> {
    let p = z.precision();
    let mut tail = HpComplex::real(0, p);
    for i in (1..=h).rev() {
        let c = if i == 1 {
            let one = HpComplex::real(1, p);
            one.div(&one.add(&qp[1]))?
        } else {
            c_term(qp, i)?
        };
        let mut den = one_minus(&c.mul(z));
        if i < h {
            let ab_z2 = a_term(qp, z, i + 1)?;
            den = den.sub(&ab_z2.mul(&tail));
        }
        tail = HpComplex::real(1, p).div(&den)?;
        if !tail.is_finite() {
            return Err(Error::DivisionByZero);
        }
    }
    Ok(tail)
}

/// `|Conv_h(q, z) - (1-q) sum z^n/(1-q^{n+1})|` for `1 <= h <= h_max`.
pub fn numeric_convergence_probe(q: &HpComplex, z: &HpComplex, h_max: usize) -> Result<ProbeReport> {
    check_disc(q, "q")?;
    check_disc(z, "z")?;
    let (target, terms) = direct_sum(q, z)?;
    let qp = powers(q, 2 * h_max + 4);
    let rows = (1..=h_max)
        .map(|h| match convergent_value(&qp, z, h) {
            Ok(v) => ProbeRow { h, gap: Some(v.sub(&target).abs().to_f64()), note: None },
            Err(e) => ProbeRow { h, gap: None, note: Some(format!("overflow: {e}")) },
        })
        .collect();
    Ok(ProbeReport {
        q: q.to_f64_pair(),
        z: z.to_f64_pair(),
        precision_bits: q.precision(),
        direct_terms: terms,
        rows,
    })
}
