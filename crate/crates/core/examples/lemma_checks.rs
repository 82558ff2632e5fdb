//! Exact checks of the numerator and denominator expansions for the
//! (q, q^2) fraction, printed as a JSON report set.

use qjfrac::jfraction::{pochhammer_spec, PochhammerParams};
use qjfrac::stirling::verify_lemmas;

fn main() -> qjfrac::Result<()> {
    let h = 3;
    let terms = pochhammer_spec(&PochhammerParams::divisor())?.terms(h + 1)?;
    let set = verify_lemmas(&terms, h)?;
    println!("{}", set.to_json());
    eprintln!("asserted failures: {}", set.reports.iter().filter(|r| r.status.is_failure()).count());
    Ok(())
}
