//! Recover J-fraction terms from the series sum_n n^alpha z^n / (1 - q^n).

use qjfrac::jfraction::{lambert_power_target, series_to_jfraction};

fn main() -> qjfrac::Result<()> {
    for alpha in 0..2 {
        let inv = series_to_jfraction(&lambert_power_target(alpha, 6), 3)?;
        println!("alpha = {alpha}");
        for i in 1..=3 {
            println!("  c_{i}  = {}", inv.terms.c(i).factored());
        }
        for i in 2..=3 {
            println!("  ab_{i} = {}", inv.terms.ab(i).factored());
        }
    }
    Ok(())
}
