//! Stirling q-coefficient triangles, the nested sums in the expansions of
//! convergent numerators and denominators, and exact checks of those
//! expansions.

mod claims;
mod lemmas;
mod nested;
mod triangle;

pub use claims::{
    first_column_formula_check, nested_difference_check, newton_girard_check, product_poly, verify_claim_relations,
};
pub use lemmas::{
    numerator_entry, verify_ph_expansion, verify_pq_coefficient_relation, verify_qh_expansion,
    verify_triangle_products,
};
pub use nested::{index_tuples, nested_sum, nested_sums_by_s, FactoredRational, NestedSumSpec, NestedVariant};
pub use triangle::{product_coefficient, triangle_via_products, StirlingQTriangle};

use crate::error::Result;
use crate::jfraction::Terms;
use crate::report::{CheckReport, ReportSet};

/// Every asserted lemma for depth `h`, plus the measured claim and
/// Newton–Girard readings. `terms` must reach depth `h + 1`.
pub fn verify_lemmas(terms: &Terms, h: usize) -> Result<ReportSet> {
    let mut out: Vec<CheckReport> = Vec::new();
    out.push(verify_triangle_products(terms, h));
    if h >= 2 {
        out.extend(verify_qh_expansion(terms, h)?);
    }
    out.extend(verify_ph_expansion(terms, h)?);
    for k in 0..=h {
        out.extend(newton_girard_check(terms.c_all(), h, k));
    }
    for k in 1..=h {
        out.extend(verify_claim_relations(terms, h, k));
    }
    if terms.depth() > h {
        for m in 1..=h / 2 {
            for s in 0..=h {
                out.push(nested_difference_check(terms, h, m, s));
            }
        }
    }
    Ok(ReportSet::new(out))
}
