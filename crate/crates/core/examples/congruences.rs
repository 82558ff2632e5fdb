//! sigma(n) mod 5 read off the reduced rational approximants.

use qjfrac::divisor::{approximant_mod_p, expand_mod_p, DivisorGFRequest};

fn main() -> qjfrac::Result<()> {
    for h in [4, 5] {
        let req = DivisorGFRequest::new(1, h, 2 * h).with_modulus(5);
        let Some((num, den)) = approximant_mod_p(&req)? else {
            println!("h={h}: approximant is not 5-integral");
            continue;
        };
        let residues = expand_mod_p(&num, &den, 5, 2 * h)?;
        println!("h={h} sigma(n) mod 5 for n=1..{}: {:?}", 2 * h - 1, &residues[1..]);
    }
    Ok(())
}
