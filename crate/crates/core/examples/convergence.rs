//! Radius threshold, Pringsheim margins and a numeric convergence probe.

use qjfrac::convergence::{numeric_convergence_probe, pringsheim_margins, threshold_radius, BReading, HpComplex};

fn main() -> qjfrac::Result<()> {
    println!("radius = {:.7}", threshold_radius(1e-10)?);

    let q = HpComplex::from_f64(0.15, 0.0, 128);
    let m = pringsheim_margins(&q, 10, BReading::Displayed)?;
    for row in &m.rows {
        println!("h={:>2} margin={:+.3e} scaled={:+.4} reduced={:+.3e}", row.h, row.margin, row.scaled_margin, row.reduced_margin);
    }

    let probe = numeric_convergence_probe(&q, &q, 12)?;
    for row in &probe.rows {
        println!("h={:>2} gap={:?}", row.h, row.gap);
    }
    Ok(())
}
