use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::arith::{QPoly, QRatFn};
use crate::error::{Error, Result};

pub type SeqFn = Arc<dyn Fn(usize) -> Result<QRatFn> + Send + Sync>;

/// The two implicit sequences `c_i` (i >= 1) and `ab_i` (i >= 2) of
///
/// ```text
/// J(z) = 1 / (1 - c_1 z - ab_2 z^2 / (1 - c_2 z - ab_3 z^2 / (...)))
/// ```
///
/// Sequences are either closed forms in `q` or finite tables.
#[derive(Clone)]
pub struct JFractionSpec {
    name: String,
    c: SeqFn,
    ab: SeqFn,
}

impl fmt::Debug for JFractionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("JFractionSpec").field("name", &self.name).finish()
    }
}

impl JFractionSpec {
    pub fn from_fns(
        name: impl Into<String>,
        c: impl Fn(usize) -> Result<QRatFn> + Send + Sync + 'static,
        ab: impl Fn(usize) -> Result<QRatFn> + Send + Sync + 'static,
    ) -> Self {
        JFractionSpec {
            name: name.into(),
            c: Arc::new(c),
            ab: Arc::new(ab),
        }
    }

    /// `c` holds `c_1, c_2, ...` and `ab` holds `ab_2, ab_3, ...`.
    pub fn tabulated(name: impl Into<String>, c: Vec<QRatFn>, ab: Vec<QRatFn>) -> Self {
        let c = Arc::new(c);
        let ab = Arc::new(ab);
        Self::from_fns(
            name,
            move |i| {
                c.get(i.wrapping_sub(1)).cloned().ok_or(Error::OutOfRange {
                    index: i,
                    max: c.len(),
                })
            },
            move |i| {
                ab.get(i.wrapping_sub(2)).cloned().ok_or(Error::OutOfRange {
                    index: i,
                    max: ab.len() + 1,
                })
            },
        )
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn c(&self, i: usize) -> Result<QRatFn> {
        if i == 0 {
            return Err(Error::OutOfRange { index: 0, max: 0 });
        }
        (self.c)(i)
    }

    pub fn ab(&self, i: usize) -> Result<QRatFn> {
        if i < 2 {
            return Err(Error::OutOfRange { index: i, max: 0 });
        }
        (self.ab)(i)
    }

    /// Materialize `c_1..c_depth` and `ab_2..ab_depth`.
    pub fn terms(&self, depth: usize) -> Result<Terms> {
        let c = (1..=depth).map(|i| self.c(i)).collect::<Result<Vec<_>>>()?;
        let ab = (2..=depth).map(|i| self.ab(i)).collect::<Result<Vec<_>>>()?;
        Ok(Terms { c, ab })
    }

    /// The same spec with every index advanced by one:
    /// `c_i -> c_{i+1}`, `ab_i -> ab_{i+1}`.
    pub fn shifted(&self) -> Self {
        let c = self.c.clone();
        let ab = self.ab.clone();
        JFractionSpec {
            name: format!("{} (shifted)", self.name),
            c: Arc::new(move |i| c(i + 1)),
            ab: Arc::new(move |i| ab(i + 1)),
        }
    }

    pub fn to_wire(&self, depth: usize) -> Result<SpecWire> {
        let t = self.terms(depth)?;
        Ok(SpecWire {
            name: self.name.clone(),
            c: t.c,
            ab: t.ab,
        })
    }
}

/// JSON form of a finitely tabulated spec: `{"name", "c": [...], "ab": [...]}`
/// where `ab[0]` is `ab_2`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpecWire {
    pub name: String,
    pub c: Vec<QRatFn>,
    pub ab: Vec<QRatFn>,
}

impl From<SpecWire> for JFractionSpec {
    fn from(w: SpecWire) -> Self {
        JFractionSpec::tabulated(w.name, w.c, w.ab)
    }
}

/// A materialized prefix of a spec. Indices follow the usual 1-based
/// convention: `c(1..=depth)`, `ab(2..=depth)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Terms {
    c: Vec<QRatFn>,
    ab: Vec<QRatFn>,
}

impl Terms {
    pub fn new(c: Vec<QRatFn>, ab: Vec<QRatFn>) -> Result<Self> {
        if ab.len() + 1 != c.len().max(1) {
            return Err(Error::InvalidParams(format!(
                "need one fewer ab term than c terms, got {} and {}",
                c.len(),
                ab.len()
            )));
        }
        Ok(Terms { c, ab })
    }

    pub fn depth(&self) -> usize {
        self.c.len()
    }

    pub fn c(&self, i: usize) -> &QRatFn {
        &self.c[i - 1]
    }

    pub fn ab(&self, i: usize) -> &QRatFn {
        &self.ab[i - 2]
    }

    pub fn c_all(&self) -> &[QRatFn] {
        &self.c
    }

    pub fn ab_all(&self) -> &[QRatFn] {
        &self.ab
    }

    /// Drop `c_1` and `ab_2`, reindexing the rest down by one.
    pub fn shifted(&self) -> Terms {
        Terms {
            c: self.c.iter().skip(1).cloned().collect(),
            ab: self.ab.iter().skip(1).cloned().collect(),
        }
    }

    pub fn truncate(&self, depth: usize) -> Terms {
        Terms {
            c: self.c.iter().take(depth).cloned().collect(),
            ab: self.ab.iter().take(depth.saturating_sub(1)).cloned().collect(),
        }
    }

    /// `λ_i = ab_2 ⋯ ab_i`, with `λ_1 = 1`.
    pub fn lambda(&self, i: usize) -> QRatFn {
        (2..=i).map(|k| self.ab(k).clone()).product()
    }
}

/// The pair `(a, b)` of the q-Pochhammer ratio `(a; q)_n / (b; q)_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PochhammerParams {
    pub a: QRatFn,
    pub b: QRatFn,
}

impl PochhammerParams {
    pub fn new(a: QRatFn, b: QRatFn) -> Result<Self> {
        if a.is_zero() || b.is_zero() {
            return Err(Error::InvalidParams("a and b must be nonzero".into()));
        }
        if b.is_one() {
            return Err(Error::InvalidParams("b = 1 puts a pole in c_1 = (a-1)/(b-1)".into()));
        }
        Ok(PochhammerParams { a, b })
    }

    /// `(a, b) = (q, q^2)`, the divisor-function case.
    pub fn divisor() -> Self {
        PochhammerParams {
            a: QRatFn::q(),
            b: QRatFn::q_pow(2),
        }
    }
}

fn one_minus(x: &QRatFn) -> QRatFn {
    &QRatFn::one() - x
}

fn qp(k: i64) -> QRatFn {
    QRatFn::q_pow(k)
}

/// `c_i(a, b; q)` for the q-Pochhammer ratio family:
///
/// ```text
/// c_1 = (a - 1)/(b - 1)
/// c_i = q^{i-2} (q + ab q^{2i-3} + a(1 - q^{i-1} - q^i) + b q^{i-2}(q^i - 1 - q))
///       / ((1 - b q^{2i-4})(1 - b q^{2i-2}))
/// ```
pub fn pochhammer_c(p: &PochhammerParams, i: usize) -> Result<QRatFn> {
    c_with_b_shift(p, i, true)
}

/// The variant without the `q^{i-2}` on the `b` term. It agrees with
/// [`pochhammer_c`] for `i <= 2` only; kept so the difference can be measured.
pub fn pochhammer_c_printed(p: &PochhammerParams, i: usize) -> Result<QRatFn> {
    c_with_b_shift(p, i, false)
}

fn c_with_b_shift(p: &PochhammerParams, i: usize, shift: bool) -> Result<QRatFn> {
    let (a, b) = (&p.a, &p.b);
    if i == 1 {
        return (a - &QRatFn::one()).checked_div(&(b - &QRatFn::one()));
    }
    let i = i as i64;
    let b_term = &(b * &(&(&qp(i) - &QRatFn::one()) - &qp(1))) * &qp(if shift { i - 2 } else { 0 });
    let inner = &(&(&qp(1) + &(&(a * b) * &qp(2 * i - 3))) + &(a * &(&(&QRatFn::one() - &qp(i - 1)) - &qp(i)))) + &b_term;
    let num = &qp(i - 2) * &inner;
    let den = &one_minus(&(b * &qp(2 * i - 4))) * &one_minus(&(b * &qp(2 * i - 2)));
    num.checked_div(&den)
}

/// `ab_i(a, b; q)` for `i >= 2`.
pub fn pochhammer_ab(p: &PochhammerParams, i: usize) -> Result<QRatFn> {
    let (a, b) = (&p.a, &p.b);
    let i = i as i64;
    let num: QRatFn = [
        qp(2 * i - 4),
        one_minus(&(b * &qp(i - 3))),
        one_minus(&(a * &qp(i - 2))),
        a - &(b * &qp(i - 2)),
        one_minus(&qp(i - 1)),
    ]
    .into_iter()
    .product();
    let den: QRatFn = [
        one_minus(&(b * &qp(2 * i - 5))),
        one_minus(&(b * &qp(2 * i - 4))).powi(2)?,
        one_minus(&(b * &qp(2 * i - 3))),
    ]
    .into_iter()
    .product();
    // The factor 1 - b q^{i-3} appears on both sides at i = 2; cancel it
    // symbolically before dividing so b = q is handled uniformly.
    if i == 2 {
        let shared = one_minus(&(b * &qp(-1)));
        if shared.is_zero() {
            return Err(Error::InvalidParams("b = q makes ab_2 indeterminate".into()));
        }
    }
    num.checked_div(&den)
}

/// J-fraction whose coefficients are `(a; q)_n / (b; q)_n`.
pub fn pochhammer_spec(p: &PochhammerParams) -> Result<JFractionSpec> {
    let pc = p.clone();
    let pa = p.clone();
    // fail early on the c_1 pole rather than at first use
    pochhammer_c(p, 1)?;
    Ok(JFractionSpec::from_fns(
        format!("pochhammer_ratio(a={}, b={})", p.a, p.b),
        move |i| pochhammer_c(&pc, i),
        move |i| pochhammer_ab(&pa, i),
    ))
}

/// `λ_h(a, b; q)` in the closed product form attached to the sequence
/// definitions:
///
/// ```text
/// a q^{(h-1)^2} (b/q; q)_{h-1} (a; q)_{h-1} (b/a; q)_{h-1} (q; q)_{h-1}
///   / ((b/q; q^2)_{h-1} (b; q^2)_{h-1}^2 (bq; q^2)_{h-1})
/// ```
///
/// It differs from the empty-product convention `ab_2 ⋯ ab_h` by the factor
/// `a^{2-h} q^{h-1}`; see [`crate::jfraction::decomposition`].
pub fn lambda_closed_form(p: &PochhammerParams, h: usize) -> Result<QRatFn> {
    let (a, b) = (&p.a, &p.b);
    let n = h.saturating_sub(1);
    let poch = |x: &QRatFn, base: &QRatFn| -> QRatFn {
        let mut acc = QRatFn::one();
        let mut pow = QRatFn::one();
        for _ in 0..n {
            acc = &acc * &one_minus(&(x * &pow));
            pow = &pow * base;
        }
        acc
    };
    let q = QRatFn::q();
    let q2 = qp(2);
    let b_over_q = b * &qp(-1);
    let b_over_a = b.checked_div(a)?;
    let num: QRatFn = [
        a.clone(),
        qp((n * n) as i64),
        poch(&b_over_q, &q),
        poch(a, &q),
        poch(&b_over_a, &q),
        poch(&q, &q),
    ]
    .into_iter()
    .product();
    let den: QRatFn = [
        poch(&b_over_q, &q2),
        poch(b, &q2).powi(2)?,
        poch(&(b * &q), &q2),
    ]
    .into_iter()
    .product();
    num.checked_div(&den)
}

/// `[h]_q = (1 - q^h)/(1 - q)` as a polynomial; zero for `h <= 0`.
pub(crate) fn q_integer(h: i64) -> QRatFn {
    if h <= 0 {
        return QRatFn::zero();
    }
    QRatFn::from_poly(QPoly::from_ints(&vec![1; h as usize]))
}
