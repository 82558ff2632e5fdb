//! The explicit alpha = 1, 2 forms under each reading, against the generator.

use qjfrac::divisor::sigma_special_case_check;

fn main() -> qjfrac::Result<()> {
    for alpha in 1..=2 {
        for r in sigma_special_case_check(alpha, 4)? {
            println!("{} {:<34} {:?} {}", r.lemma, r.detail.unwrap_or_default(), r.status, r.residual);
        }
    }
    Ok(())
}
