//! Brute-force ground truth: divisor sums, Lambert series, q-binomials.

use qjfrac::arith::{qr, QPoly};
use qjfrac::oracles::{lambert_truncated, q_binomial, q_binomial_theorem_check, sigma_alpha};

fn main() -> qjfrac::Result<()> {
    let sigma: Vec<_> = (1..=12).map(|n| sigma_alpha(1, n)).collect();
    println!("sigma_1(1..12) = {sigma:?}");
    println!("lambert alpha=1 = {:?}", lambert_truncated(1, 8).coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>());
    println!("[5 choose 2]_q = {}", q_binomial(5, 2, &QPoly::q()));
    for (a, z) in [("0", "q"), ("q", "q"), ("q^2", "q")] {
        println!("q-binomial theorem a={a} z={z}: {}", q_binomial_theorem_check(&qr(a), &qr(z), 13)?);
    }
    Ok(())
}
