//! Expand the depth-h convergent for a q-Pochhammer ratio and compare each
//! z-coefficient with (a;q)_n/(b;q)_n.

use qjfrac::arith::qr;
use qjfrac::jfraction::{convergent_coefficients, convergents, pochhammer_spec, PochhammerParams};
use qjfrac::oracles::pochhammer_ratio;

fn main() -> qjfrac::Result<()> {
    let p = PochhammerParams::new(qr("q^2"), qr("3*q"))?;
    let h = 3;
    let pair = convergents(&pochhammer_spec(&p)?, h)?;
    let coeffs = convergent_coefficients(&pair, 2 * h + 1);
    for (n, j) in coeffs.coeffs().iter().enumerate() {
        let exact = *j == pochhammer_ratio(&p.a, &p.b, n)?;
        println!("n={n} matches={exact} [z^n] = {}", j.factored());
    }
    Ok(())
}
