//! Divisor-function and sums-of-divisors generators built on the `(q, q^2)`
//! J-fraction, their rational approximants and residue tables.

mod congruence;
mod corollary;
mod series;
mod stirling2;
mod transform;

pub use congruence::{approximant_mod_p, congruence_table, expand_mod_p, CongruenceRow, CongruenceTable};
pub use corollary::{
    corollary_weight, sigma_special_case_check, special_case_series, tilde_d0j, GRealization, SpecialCaseReading,
    TildeComparison,
};
pub use series::{divisor_gf, divisor_table, partial_sums, rational_approximant, sigma_gf, DivisorGFRequest, DivisorRow, Window};
pub use stirling2::Stirling2Table;
pub use transform::{
    clear_denominators, derivative_numerators, derivative_numerators_at, power_weighted, power_weighted_at,
    quotient_derivatives, weighted_numerator,
};
