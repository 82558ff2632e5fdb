//! J-fraction specs, convergents, coefficient extraction, series inversion
//! and the standard presets.

mod convergents;
mod decomposition;
mod inversion;
mod presets;
mod random;
mod spec;
mod substitution;

pub use convergents::{
    convergent_coefficients, convergent_coefficients_by_division, convergent_table, convergents, ConvergentPair,
};
pub use decomposition::{
    compare_lambda_closed_form, convergent_sum_decomposition, decompose_terms, determinant_residual, Decomposition,
    LambdaComparison,
};
pub use inversion::{lambert_power_target, named_target, series_to_jfraction, Inversion};
pub use presets::{table1_preset, PresetParams, Table1Row};
pub use random::{random_pochhammer_params, random_rational, random_terms};
pub use spec::{
    lambda_closed_form, pochhammer_ab, pochhammer_c, pochhammer_c_printed, pochhammer_spec, JFractionSpec, PochhammerParams, SeqFn,
    SpecWire, Terms,
};
pub use substitution::{substitute_rational, substitute_termwise, substitute_z_to_q};
