use rand::Rng;

use crate::arith::{frac, QRatFn};

use super::spec::{PochhammerParams, Terms};

/// `n/d` with `|n| <= 9`, `1 <= d <= 9`; never zero when `nonzero`.
pub fn random_rational<R: Rng + ?Sized>(rng: &mut R, nonzero: bool) -> QRatFn {
    loop {
        let n = rng.gen_range(-9..=9);
        if nonzero && n == 0 {
            continue;
        }
        return QRatFn::constant(frac(n, rng.gen_range(1..=9)));
    }
}

/// Random `c_i = r_0 + r_1 q` and nonzero constant `ab_i`.
pub fn random_terms<R: Rng + ?Sized>(rng: &mut R, depth: usize) -> Terms {
    let c = (0..depth)
        .map(|_| &random_rational(rng, false) + &(&random_rational(rng, false) * &QRatFn::q()))
        .collect();
    let ab = (1..depth).map(|_| random_rational(rng, true)).collect();
    Terms::new(c, ab).expect("lengths match")
}

/// Random constant `(a, b)` with `a, b` nonzero and `b != 1`.
pub fn random_pochhammer_params<R: Rng + ?Sized>(rng: &mut R) -> PochhammerParams {
    loop {
        let a = random_rational(rng, true);
        let b = random_rational(rng, true);
        if let Ok(p) = PochhammerParams::new(a, b) {
            return p;
        }
    }
}
