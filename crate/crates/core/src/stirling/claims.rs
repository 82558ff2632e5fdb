use crate::arith::{QRatFn, ZPoly};
use crate::error::Result;
use crate::jfraction::{pochhammer_c, pochhammer_c_printed, PochhammerParams, Terms};
use crate::report::{residual_ratfn, CheckReport, Status};

use super::lemmas::numerator_entry;
use super::nested::{index_tuples, nested_sum, FactoredRational, NestedSumSpec, NestedVariant};
use super::triangle::{product_coefficient, StirlingQTriangle};

fn sign(k: i64) -> QRatFn {
    if k.rem_euclid(2) == 0 {
        QRatFn::one()
    } else {
        -QRatFn::one()
    }
}

fn power_sum(c: &[QRatFn], m: usize) -> QRatFn {
    c.iter().map(|x| x.powi(m as i32).unwrap()).sum()
}

/// Newton's identities between power sums of `c_1..c_h` and row `h` of the
/// triangle, under four readings of the indices and signs:
///
/// - `standard`: `k T(h,k) + sum_{m=1}^k p_m T(h,k-m) = 0` (asserted)
/// - `printed_signs`: `(-1)^k k T(h,k) + sum (-1)^{k-m} p_m T(h,k-m)`
/// - `printed_literal`: as above with `T(h, m-k)`, zero for negative index
/// - `printed_unsigned`: `printed_signs` with `e_k = (-1)^k T(h,k)` in place of `T`
pub fn newton_girard_check(c: &[QRatFn], h: usize, k: usize) -> Vec<CheckReport> {
    let c = &c[..h];
    let tri = StirlingQTriangle::new(c, h);
    let t = |j: i64| tri.entry(h, j);
    let e = |j: i64| &sign(j) * &tri.entry(h, j);
    let ki = k as i64;
    let kq = QRatFn::from_int(ki);
    let ps: Vec<QRatFn> = (0..=k).map(|m| if m == 0 { QRatFn::zero() } else { power_sum(c, m) }).collect();

    let mut standard = &kq * &t(ki);
    let mut signs = &(&sign(ki) * &kq) * &t(ki);
    let mut literal = signs.clone();
    let mut unsigned = &(&sign(ki) * &kq) * &e(ki);
    for m in 1..=k {
        let mi = m as i64;
        standard = &standard + &(&ps[m] * &t(ki - mi));
        let sgn = sign(ki - mi);
        signs = &signs + &(&(&sgn * &ps[m]) * &t(ki - mi));
        literal = &literal + &(&(&sgn * &ps[m]) * &t(mi - ki));
        unsigned = &unsigned + &(&(&sgn * &ps[m]) * &e(ki - mi));
    }
    vec![
        CheckReport::new("newton_girard_standard", h, Some(k), Status::asserted(standard.is_zero()), residual_ratfn(&standard)),
        CheckReport::new("newton_girard_printed_signs", h, Some(k), Status::measured(signs.is_zero()), residual_ratfn(&signs)),
        CheckReport::new("newton_girard_printed_literal", h, Some(k), Status::measured(literal.is_zero()), residual_ratfn(&literal)),
        CheckReport::new("newton_girard_printed_unsigned", h, Some(k), Status::measured(unsigned.is_zero()), residual_ratfn(&unsigned)),
    ]
}

/// Unsigned elementary symmetric function of `c_lo..c_hi`.
fn elementary(c: &[QRatFn], lo: usize, hi: usize, k: usize) -> QRatFn {
    &sign(k as i64) * &product_coefficient(c, lo, hi, k as i64)
}

/// Relations between the numerator triangle `T_P(h,k) = [z^k](1-c_2 z)⋯(1-c_h z)`
/// and the ordinary triangle. All residuals are measured, none asserted:
///
/// - `claim_sum_form`: `T_P(h,k) - T(h-1,k) - (c_1 - c_h) e_{k-1}(c_2..c_h)`
/// - `claim_product_form`: `T_P(h,k) - T(h-1,k) - (c_1 - c_h) [z^{k-1}](1-c_2 z)⋯(1-c_{h-1} z)`
/// - `numerator_recurrence_printed`: `T_P(h,k) - T_P(h-1,k) + c_{h+1} T_P(h-1,k-1)` (needs `c_{h+1}`)
/// - `numerator_recurrence_c_h`: the same with `c_h`
pub fn verify_claim_relations(terms: &Terms, h: usize, k: usize) -> Vec<CheckReport> {
    let c = terms.c_all();
    let tri = StirlingQTriangle::new(c, h);
    let ki = k as i64;
    let tp = numerator_entry(terms, h, ki);
    let base = &tp - &tri.entry(h - 1, ki);
    let diff = &c[0] - &c[h - 1];
    let sum_form = &base - &(&diff * &elementary(c, 2, h, k.saturating_sub(1)));
    let prod_form = &base - &(&diff * &product_coefficient(c, 2, h - 1, ki - 1));
    let mut out = vec![
        CheckReport::new("claim_sum_form", h, Some(k), Status::measured(sum_form.is_zero()), residual_ratfn(&sum_form)),
        CheckReport::new("claim_product_form", h, Some(k), Status::measured(prod_form.is_zero()), residual_ratfn(&prod_form)),
    ];
    if h >= 2 {
        let prev = |j: i64| numerator_entry(terms, h - 1, j);
        let with_ch = &(&tp - &prev(ki)) + &(&c[h - 1] * &prev(ki - 1));
        out.push(CheckReport::new(
            "numerator_recurrence_c_h",
            h,
            Some(k),
            Status::measured(with_ch.is_zero()),
            residual_ratfn(&with_ch),
        ));
        if c.len() > h {
            let printed = &(&tp - &prev(ki)) + &(&c[h] * &prev(ki - 1));
            out.push(CheckReport::new(
                "numerator_recurrence_printed",
                h,
                Some(k),
                Status::measured(printed.is_zero()),
                residual_ratfn(&printed),
            ));
        }
    }
    out
}

/// The conjectured difference formula
/// `S_{h-1,m,s} - S^{[P]}_{h,m,s} = sum_{2 <= i_1 < ... < i_m <= h, sum i = s} prod ab_i / ((1-c_{i-1} z)(1-c_i z))`.
/// Needs `terms` through depth `h + 1`. The residual's numerator is reported.
pub fn nested_difference_check(terms: &Terms, h: usize, m: usize, s: usize) -> CheckReport {
    let c = terms.c_all();
    let lhs_a = nested_sum(terms, NestedSumSpec { h: h - 1, m, s, variant: NestedVariant::Denominator });
    let lhs_b = nested_sum(terms, NestedSumSpec { h, m, s, variant: NestedVariant::Numerator });
    let mut rhs = FactoredRational::zero();
    for t in index_tuples(m, 2, h, 1, usize::MAX) {
        if t.iter().sum::<usize>() != s {
            continue;
        }
        let mut coef = QRatFn::one();
        let mut idx = Vec::new();
        for &i in &t {
            coef = &coef * terms.ab(i);
            idx.extend([i - 1, i]);
        }
        rhs = rhs.add(&FactoredRational::term(coef, &idx), c);
    }
    let res = lhs_a.add(&lhs_b.neg(), c).add(&rhs.neg(), c);
    let text = if res.is_zero() { "0".to_string() } else { crate::report::residual_zpoly(res.numerator()) };
    CheckReport::new("claim_nested_difference", h, None, Status::measured(res.is_zero()), text)
        .with_detail(format!("m={m} s={s}"))
}

/// The displayed finite-sum formula for `T(h, 1)` of the `(q, q^2)` sequence,
/// compared with the triangle entry built from [`pochhammer_c`]
/// (`first_column_formula`) and from [`pochhammer_c_printed`]
/// (`first_column_formula_printed_sequence`).
pub fn first_column_formula_check(h: usize) -> Result<Vec<CheckReport>> {
    let p = PochhammerParams::divisor();
    let one = QRatFn::one();
    let q = QRatFn::q();
    let two = QRatFn::from_int(2);
    let mut formula = -(one.checked_div(&(&one + &q))?);
    let lead = crate::arith::qr("(q^3+2*q^2-3*q-2)/(2*(q^2-1))");
    let odd = crate::arith::qr("(2*q-3)/(2*(1-q))");
    for k in 0..h.saturating_sub(1) {
        let k = k as i64;
        let t1 = q.checked_div(&(&two * &(&one - &QRatFn::q_pow(k + 2))))?;
        let t2 = lead.checked_div(&(&one + &QRatFn::q_pow(k + 2)))?;
        let t3 = one.checked_div(&(&(&two * &(&one + &q)) * &(&one - &QRatFn::q_pow(k + 1))))?;
        let t4 = odd.checked_div(&(&one + &QRatFn::q_pow(k + 1)))?;
        formula = &formula + &(&(&(&t1 - &t2) - &t3) - &t4);
    }
    let mut out = Vec::new();
    for (label, printed) in [("first_column_formula", false), ("first_column_formula_printed_sequence", true)] {
        let c: Vec<QRatFn> = (1..=h)
            .map(|i| if printed { pochhammer_c_printed(&p, i) } else { pochhammer_c(&p, i) })
            .collect::<Result<_>>()?;
        let tri = StirlingQTriangle::new(&c, h);
        let res = &tri.entry(h, 1) - &formula;
        out.push(CheckReport::new(label, h, Some(1), Status::measured(res.is_zero()), residual_ratfn(&res)));
    }
    Ok(out)
}

/// Shorthand used by reports: the product `(1 - c_lo z) ⋯ (1 - c_hi z)`.
pub fn product_poly(c: &[QRatFn], lo: usize, hi: usize) -> ZPoly {
    let f: Vec<ZPoly> = (lo..=hi).map(|i| ZPoly::one_minus(&c[i - 1])).collect();
    ZPoly::product(f.iter())
}
