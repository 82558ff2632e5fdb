use serde::Serialize;

use crate::arith::{QRatFn, ZPoly};
use crate::error::Result;

use super::convergents::{convergent_table, ConvergentPair};
use super::spec::{lambda_closed_form, JFractionSpec, PochhammerParams, Terms};

/// `Conv_h = sum_{i=1}^h λ_i z^{2i-2} / (Q_{i-1} Q_i)`, with both the
/// per-step determinant identity and the cleared sum checked exactly.
#[derive(Clone, Debug)]
pub struct Decomposition {
    pub h: usize,
    /// `λ_1 .. λ_h`
    pub lambdas: Vec<QRatFn>,
    /// `(Q_{i-1}, Q_i)` for `i = 1..=h`
    pub denominators: Vec<(ZPoly, ZPoly)>,
    /// first `i` where `P_i Q_{i-1} - P_{i-1} Q_i != λ_i z^{2i-2}`
    pub telescoping_failure: Option<usize>,
    pub sum_holds: bool,
}

impl Decomposition {
    pub fn holds(&self) -> bool {
        self.telescoping_failure.is_none() && self.sum_holds
    }
}

pub fn determinant_residual(table: &[ConvergentPair], terms: &Terms, i: usize) -> ZPoly {
    let lhs = &(&table[i].p * &table[i - 1].q) - &(&table[i - 1].p * &table[i].q);
    &lhs - &ZPoly::monomial(terms.lambda(i), 2 * i - 2)
}

pub fn convergent_sum_decomposition(spec: &JFractionSpec, h: usize) -> Result<Decomposition> {
    let terms = spec.terms(h)?;
    decompose_terms(&terms, h)
}

pub fn decompose_terms(terms: &Terms, h: usize) -> Result<Decomposition> {
    let table = convergent_table(terms, h)?;
    let lambdas: Vec<QRatFn> = (1..=h).map(|i| terms.lambda(i)).collect();
    let telescoping_failure = (1..=h).find(|&i| !determinant_residual(&table, terms, i).is_zero());

    // Multiply through by Q_0 Q_1 ... Q_h:
    //   P_h * prod_{j<h} Q_j = sum_i λ_i z^{2i-2} prod_{j ∉ {i-1, i}} Q_j
    let qs: Vec<&ZPoly> = table.iter().map(|p| &p.q).collect();
    let mut prefix = vec![ZPoly::one()];
    for q in &qs {
        prefix.push(prefix.last().unwrap() * *q);
    }
    let mut suffix = vec![ZPoly::one(); qs.len() + 1];
    for j in (0..qs.len()).rev() {
        suffix[j] = &suffix[j + 1] * qs[j];
    }
    let lhs = &table[h].p * &prefix[h];
    let mut rhs = ZPoly::zero();
    for i in 1..=h {
        // prefix[i-1] covers Q_0..Q_{i-2}, suffix[i+1] covers Q_{i+1}..Q_h
        let others = &prefix[i - 1] * &suffix[i + 1];
        rhs = &rhs + &(&others * &ZPoly::monomial(lambdas[i - 1].clone(), 2 * i - 2));
    }
    let sum_holds = (&lhs - &rhs).is_zero();

    Ok(Decomposition {
        h,
        lambdas,
        denominators: (1..=h).map(|i| (table[i - 1].q.clone(), table[i].q.clone())).collect(),
        telescoping_failure,
        sum_holds,
    })
}

/// Comparison of the closed product form for `λ_h` against the
/// empty-product convention `ab_2 ⋯ ab_h`.
#[derive(Clone, Debug, Serialize)]
pub struct LambdaComparison {
    pub h: usize,
    pub closed_over_product: String,
    /// whether the ratio equals `a^{2-h} q^{h-1}`
    pub matches_expected_factor: bool,
}

pub fn compare_lambda_closed_form(p: &PochhammerParams, h: usize) -> Result<LambdaComparison> {
    let spec = super::spec::pochhammer_spec(p)?;
    let prod = spec.terms(h)?.lambda(h);
    let closed = lambda_closed_form(p, h)?;
    let ratio = closed.checked_div(&prod)?;
    let expected = &p.a.powi(2 - h as i32)? * &QRatFn::q_pow(h as i64 - 1);
    Ok(LambdaComparison {
        h,
        closed_over_product: ratio.factored(),
        matches_expected_factor: ratio == expected,
    })
}
