//! Brute-force ground truth. Nothing here calls into the J-fraction,
//! Stirling or divisor machinery; only the exact arithmetic types are shared.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::arith::{QPoly, QRatFn, QSeries, Rational};
use crate::error::{Error, Result};
use crate::jfraction::Table1Row;

/// Divisors of `n` by trial division, ascending.
pub fn divisors(n: u64) -> Vec<u64> {
    (1..=n).filter(|d| n % d == 0).collect()
}

/// `σ_α(n) = sum_{d | n} d^α`.
pub fn sigma_alpha(alpha: u32, n: u64) -> BigInt {
    assert!(n >= 1, "sigma_alpha needs n >= 1");
    divisors(n).into_iter().map(|d| BigInt::from(d).pow(alpha)).sum()
}

/// `sum_{d | n} (d - 1)^α`, the coefficient sequence of
/// `sum_{n>=1} (n-1)^α q^n / (1 - q^n)`.
pub fn shifted_divisor_power_sum(alpha: u32, n: u64) -> BigInt {
    assert!(n >= 1, "shifted_divisor_power_sum needs n >= 1");
    divisors(n).into_iter().map(|d| BigInt::from(d - 1).pow(alpha)).sum()
}

pub fn divisor_count(n: u64) -> u64 {
    divisors(n).len() as u64
}

/// `(x; q)_n = prod_{k<n} (1 - x q^k)`.
pub fn q_pochhammer(x: &QRatFn, n: usize) -> QRatFn {
    let mut acc = QRatFn::one();
    for k in 0..n {
        acc = &acc * &(&QRatFn::one() - &(x * &QRatFn::q_pow(k as i64)));
    }
    acc
}

pub fn pochhammer_ratio(a: &QRatFn, b: &QRatFn, n: usize) -> Result<QRatFn> {
    q_pochhammer(a, n).checked_div(&q_pochhammer(b, n))
}

/// `sum_{n>=1} n^α q^n / (1 - q^n)` expanded by adding geometric series.
pub fn lambert_truncated(alpha: u32, order: usize) -> QSeries {
    let mut c = vec![Rational::zero(); order];
    for n in 1..order {
        let w = Rational::from_integer(BigInt::from(n).pow(alpha));
        let mut m = n;
        while m < order {
            c[m] += &w;
            m += n;
        }
    }
    QSeries::from_coeffs(c)
}

/// Gaussian binomial in the given base by the q-Pascal rule
/// `[n, k] = [n-1, k-1] + base^k [n-1, k]`.
pub fn q_binomial(n: usize, k: usize, base: &QPoly) -> QPoly {
    if k > n {
        return QPoly::zero();
    }
    let mut row = vec![QPoly::one()];
    for m in 1..=n {
        let mut next = vec![QPoly::zero(); m + 1];
        for j in 0..=m {
            let left = if j >= 1 { row[j - 1].clone() } else { QPoly::zero() };
            let right = if j < m { &base.pow(j as u32) * &row[j] } else { QPoly::zero() };
            next[j] = &left + &right;
        }
        row = next;
    }
    row[k].clone()
}

/// Both sides of `sum_n (a;q)_n/(q;q)_n z^n = (az;q)_∞ / (z;q)_∞`, truncated
/// in `q` to `order`. `z` must vanish at `q = 0`.
pub fn q_binomial_theorem_sides(a: &QRatFn, z: &QRatFn, order: usize) -> Result<(QSeries, QSeries)> {
    let zs = z.taylor(order.max(1))?;
    a.taylor(1)?;
    if !zs.coeff(0).map_or(true, Zero::is_zero) {
        return Err(Error::InvalidParams("z must vanish at q = 0 for the truncation to terminate".into()));
    }
    let mut lhs = QSeries::zero(order);
    for n in 0..order {
        let term = &q_pochhammer(a, n).checked_div(&q_pochhammer(&QRatFn::q(), n))?
            * &z.powi(n as i32)?;
        lhs = &lhs + &term.taylor(order)?;
    }
    // z q^k = O(q^{k+1}), so factors with k >= order are 1 + O(q^order)
    let mut rhs = QSeries::from_coeffs(one_coeffs(order));
    for k in 0..order {
        let zk = z * &QRatFn::q_pow(k as i64);
        let f = (&QRatFn::one() - &(a * &zk)).checked_div(&(&QRatFn::one() - &zk))?;
        rhs = &rhs * &f.taylor(order)?;
    }
    Ok((lhs, rhs))
}

fn one_coeffs(order: usize) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); order];
    if order > 0 {
        v[0] = Rational::one();
    }
    v
}

pub fn q_binomial_theorem_check(a: &QRatFn, z: &QRatFn, order: usize) -> Result<bool> {
    let (l, r) = q_binomial_theorem_sides(a, z, order)?;
    Ok(l == r)
}

/// Stirling numbers of the second kind from the explicit alternating sum
/// `k! S(n, k) = sum_j (-1)^j C(k, j) (k - j)^n`.
pub fn stirling2(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let mut acc = BigInt::zero();
    let mut binom = BigInt::one();
    for j in 0..=k {
        let t = &binom * BigInt::from(k - j).pow(n as u32);
        if j % 2 == 0 {
            acc += t;
        } else {
            acc -= t;
        }
        binom = binom * BigInt::from(k - j) / BigInt::from(j + 1);
    }
    let fact: BigInt = (1..=k).map(BigInt::from).product();
    acc / fact
}

/// `[z^k] prod_i (1 - c_i z)` by summing over all `k`-subsets.
pub fn elementary_by_subsets(c: &[QRatFn], k: usize) -> QRatFn {
    fn rec(c: &[QRatFn], start: usize, left: usize, acc: &QRatFn, out: &mut QRatFn) {
        if left == 0 {
            *out = &*out + acc;
            return;
        }
        for i in start..c.len() {
            if c.len() - i < left {
                break;
            }
            rec(c, i + 1, left - 1, &(acc * &(-&c[i])), out);
        }
    }
    let mut out = QRatFn::zero();
    rec(c, 0, k, &QRatFn::one(), &mut out);
    out
}

/// The target coefficient `[z^n]` of each row of the standard table.
pub fn table1_target(row: Table1Row, a: &QRatFn, b: &QRatFn, x: &QRatFn, n: usize) -> Result<QRatFn> {
    match row {
        Table1Row::PochhammerA => Ok(q_pochhammer(a, n)),
        Table1Row::ReciprocalQQ => q_pochhammer(&QRatFn::q(), n).recip(),
        Table1Row::PochhammerZqn => Ok(q_pochhammer(&(x * &QRatFn::q_pow(-(n as i64))), n)),
        Table1Row::ReciprocalPochhammerZqn => q_pochhammer(&(x * &QRatFn::q_pow(-(n as i64))), n).recip(),
        Table1Row::PochhammerRatio => pochhammer_ratio(a, b, n),
        Table1Row::GaussianReciprocalQQ => {
            let t = QRatFn::q_pow((n * n.saturating_sub(1) / 2) as i64);
            t.checked_div(&q_pochhammer(&QRatFn::q(), n))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, qr};

    #[test]
    fn divisor_sums() {
        assert_eq!(sigma_alpha(0, 6), BigInt::from(4));
        assert_eq!(sigma_alpha(1, 6), BigInt::from(12));
        assert_eq!(sigma_alpha(0, 1), BigInt::from(1));
    }

    #[test]
    fn pochhammer_products() {
        assert_eq!(q_pochhammer(&qr("q"), 2), qr("(1-q)*(1-q^2)"));
        assert!(q_pochhammer(&qr("q"), 0).is_one());
        assert_eq!(pochhammer_ratio(&qr("q"), &qr("q^2"), 3).unwrap(), qr("(1-q)/(1-q^4)"));
    }

    #[test]
    fn lambert() {
        let ints = |v: &[i64]| v.iter().map(|&x| int(x)).collect::<Vec<_>>();
        assert_eq!(lambert_truncated(0, 7).coeffs(), ints(&[0, 1, 2, 2, 3, 2, 4]).as_slice());
        assert_eq!(lambert_truncated(1, 5).coeffs(), ints(&[0, 1, 3, 4, 7]).as_slice());
        assert_eq!(lambert_truncated(0, 1).coeffs(), ints(&[0]).as_slice());
        let s = lambert_truncated(2, 50);
        for m in 1..50u64 {
            assert_eq!(s.coeffs()[m as usize], Rational::from_integer(sigma_alpha(2, m)));
        }
    }

    #[test]
    fn gaussian_binomials() {
        let q = QPoly::q();
        assert_eq!(q_binomial(2, 1, &q), QPoly::from_ints(&[1, 1]));
        assert_eq!(q_binomial(4, 2, &q), QPoly::from_ints(&[1, 1, 2, 1, 1]));
        assert!(q_binomial(5, 0, &q).is_one());
        for n in 0..7 {
            for k in 0..=n {
                assert_eq!(q_binomial(n, k, &q), q_binomial(n, n - k, &q));
            }
        }
    }

    #[test]
    fn q_binomial_theorem() {
        assert!(q_binomial_theorem_check(&qr("0"), &qr("q"), 10).unwrap());
        assert!(q_binomial_theorem_check(&qr("q"), &qr("q"), 12).unwrap());
        assert!(q_binomial_theorem_check(&qr("q^2"), &qr("q"), 12).unwrap());
        assert!(q_binomial_theorem_check(&qr("2/3"), &qr("q"), 1).unwrap());
        assert!(q_binomial_theorem_check(&qr("q"), &qr("1/2"), 4).is_err());
    }

    #[test]
    fn stirling_second_kind() {
        assert_eq!(stirling2(5, 2), BigInt::from(15));
        assert_eq!(stirling2(4, 4), BigInt::from(1));
        assert_eq!(stirling2(3, 0), BigInt::from(0));
        assert_eq!(stirling2(0, 0), BigInt::from(1));
    }

    #[test]
    fn subsets() {
        let c = [qr("2"), qr("3"), qr("5")];
        assert_eq!(elementary_by_subsets(&c, 2), qr("31"));
        assert_eq!(elementary_by_subsets(&c, 3), qr("-30"));
        assert!(elementary_by_subsets(&c, 0).is_one());
    }
}
