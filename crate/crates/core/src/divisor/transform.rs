use crate::arith::{QPoly, QRatFn, Rational, ZPoly};
use crate::error::Result;

use super::stirling2::Stirling2Table;

/// Numerators of the derivatives of `num / den`: `F^{(j)} = N_j / den^{j+1}`
/// for `j = 0..=m`, via `N_{j+1} = N_j' den - (j+1) N_j den'`.
pub fn derivative_numerators(num: &ZPoly, den: &ZPoly, m: usize) -> Vec<ZPoly> {
    let dd = den.derivative();
    let mut out = vec![num.clone()];
    for j in 0..m {
        let nj = &out[j];
        let k = QRatFn::from_int(j as i64 + 1);
        let next = &(&nj.derivative() * den) - &(nj * &dd).scale(&k);
        out.push(next);
    }
    out
}

/// Multiplies `num` and `den` by the lcm of all coefficient denominators so
/// that every coefficient is a polynomial in `q`. Differentiating with
/// polynomial coefficients avoids a gcd per coefficient operation.
pub fn clear_denominators(num: &ZPoly, den: &ZPoly) -> (ZPoly, ZPoly) {
    let mut l = QPoly::one();
    for c in num.coeffs().iter().chain(den.coeffs()) {
        let d = c.den();
        let g = l.gcd(d);
        l = &l * &d.div_exact(&g).expect("gcd divides");
    }
    let s = QRatFn::from_poly(l);
    (num.scale(&s), den.scale(&s))
}

fn stirling_coeff(table: &Stirling2Table, m: usize, j: usize) -> QRatFn {
    QRatFn::constant(Rational::from_integer(table.get(m, j)))
}

fn zpow(p: &ZPoly, e: usize) -> ZPoly {
    (0..e).fold(ZPoly::one(), |acc, _| &acc * p)
}

/// `sum_j S(m, j) z^j F^{(j)}(z)` for `F = num / den`, returned as a
/// numerator over `den^{m+1}`. Its series is `sum_n n^m f_n z^n`.
pub fn power_weighted(num: &ZPoly, den: &ZPoly, m: usize) -> (ZPoly, ZPoly) {
    let (num, den) = clear_denominators(num, den);
    let (num, den) = (&num, &den);
    let table = Stirling2Table::new(m);
    let ns = derivative_numerators(num, den, m);
    let mut acc = ZPoly::zero();
    for (j, nj) in ns.iter().enumerate() {
        let s = stirling_coeff(&table, m, j);
        if s.is_zero() {
            continue;
        }
        let term = &(nj * &zpow(den, m - j)).shift(j);
        acc = &acc + &term.scale(&s);
    }
    (acc, zpow(den, m + 1))
}

fn binomial(n: usize, k: usize) -> i64 {
    (0..k).fold(1i64, |acc, i| acc * (n - i) as i64 / (i as i64 + 1))
}

/// Numerators `M_j` with `F^{(j)}(z0) = M_j / D^{j+1}` for `F = num / den`,
/// from the point values `num^{(j)}(z0)` and `den^{(j)}(z0)` through the
/// Leibniz rule for `F den = num`:
/// `M_j = num^{(j)} D^j - sum_{i<j} C(j,i) M_i den^{(j-i)} D^{j-1-i}`,
/// where `D = den(z0)`.
pub fn quotient_derivatives(nv: &[QRatFn], dv: &[QRatFn], m: usize) -> Vec<QRatFn> {
    let d = &dv[0];
    let mut dpow = vec![QRatFn::one()];
    for k in 1..=m {
        dpow.push(&dpow[k - 1] * d);
    }
    let mut ms: Vec<QRatFn> = Vec::with_capacity(m + 1);
    for j in 0..=m {
        let mut acc = &nv[j] * &dpow[j];
        for i in 0..j {
            let t = &(&ms[i] * &dv[j - i]) * &dpow[j - 1 - i];
            acc = &acc - &(&QRatFn::from_int(binomial(j, i)) * &t);
        }
        ms.push(acc);
    }
    ms
}

/// [`quotient_derivatives`] for polynomial `num` and `den` at `z0`. Only
/// derivatives of the two polynomials are taken; no products in `z` are
/// formed, which makes this far cheaper than [`derivative_numerators`].
pub fn derivative_numerators_at(num: &ZPoly, den: &ZPoly, m: usize, z: &QRatFn) -> (Vec<QRatFn>, QRatFn) {
    let mut nd = vec![num.clone()];
    let mut dd = vec![den.clone()];
    for j in 0..m {
        nd.push(nd[j].derivative());
        dd.push(dd[j].derivative());
    }
    let nv: Vec<QRatFn> = nd.iter().map(|p| p.eval(z)).collect();
    let dv: Vec<QRatFn> = dd.iter().map(|p| p.eval(z)).collect();
    (quotient_derivatives(&nv, &dv, m), dv[0].clone())
}

/// `sum_j S(m, j) z0^j M_j D^{m-j}`, the numerator over `D^{m+1}` of the
/// weighted sum, from the `M_j` of [`quotient_derivatives`].
pub fn weighted_numerator(ms: &[QRatFn], d: &QRatFn, m: usize, z: &QRatFn) -> QRatFn {
    let table = Stirling2Table::new(m);
    let mut dpow = vec![QRatFn::one()];
    for k in 1..=m {
        dpow.push(&dpow[k - 1] * d);
    }
    let mut acc = QRatFn::zero();
    let mut zj = QRatFn::one();
    for (j, mj) in ms.iter().enumerate() {
        let s = stirling_coeff(&table, m, j);
        if !s.is_zero() {
            acc = &acc + &(&(&s * &zj) * &(mj * &dpow[m - j]));
        }
        zj = &zj * z;
    }
    acc
}

/// `sum_j S(m, j) z^j F^{(j)}(z)` at a point.
pub fn power_weighted_at(num: &ZPoly, den: &ZPoly, m: usize, z: &QRatFn) -> Result<QRatFn> {
    let (num, den) = clear_denominators(num, den);
    let (ms, d) = derivative_numerators_at(&num, &den, m, z);
    weighted_numerator(&ms, &d, m, z).checked_div(&d.powi(m as i32 + 1)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{qr, ZSeries};

    #[test]
    fn geometric_series_weights() {
        // F(z) = (1 - z^N) / (1 - z) = sum_{n<N} z^n
        let n_terms = 7usize;
        let num = &ZPoly::one() - &ZPoly::monomial(QRatFn::one(), n_terms);
        let den = ZPoly::one_minus(&QRatFn::one());
        for m in 0..=4usize {
            let (pn, pd) = power_weighted(&num, &den, m);
            let s = ZSeries::from_poly(&pn, 12).div(&ZSeries::from_poly(&pd, 12)).unwrap();
            for k in 0..12usize {
                let want = if k < n_terms { QRatFn::from_int((k as i64).pow(m as u32)) } else { QRatFn::zero() };
                assert_eq!(s.coeff(k).unwrap(), &want, "m={m} k={k}");
            }
        }
    }

    #[test]
    fn point_evaluation_matches() {
        let num = ZPoly::from_coeffs(vec![qr("1"), qr("q")]);
        let den = ZPoly::from_coeffs(vec![qr("1"), qr("-2"), qr("q^2")]);
        let z = qr("q/3");
        for m in 0..=3 {
            let (pn, pd) = power_weighted(&num, &den, m);
            let want = pn.eval(&z).checked_div(&pd.eval(&z)).unwrap();
            assert_eq!(power_weighted_at(&num, &den, m, &z).unwrap(), want);
        }
    }

    #[test]
    fn leibniz_matches_quotient_rule() {
        let num = ZPoly::from_coeffs(vec![qr("1"), qr("q"), qr("2")]);
        let den = ZPoly::from_coeffs(vec![qr("1"), qr("-2"), qr("q^2")]);
        let z = qr("q");
        let slow = derivative_numerators(&num, &den, 3);
        let (fast, d) = derivative_numerators_at(&num, &den, 3, &z);
        for j in 0..=3 {
            let want = slow[j].eval(&z).checked_div(&den.eval(&z).powi(j as i32 + 1).unwrap()).unwrap();
            assert_eq!(fast[j].checked_div(&d.powi(j as i32 + 1).unwrap()).unwrap(), want, "j={j}");
        }
    }

    #[test]
    fn power_rule() {
        // D[z^4 / 1] = 4 z^3
        let ns = derivative_numerators(&ZPoly::monomial(QRatFn::one(), 4), &ZPoly::one(), 1);
        assert_eq!(ns[1], ZPoly::monomial(QRatFn::from_int(4), 3));
    }
}
