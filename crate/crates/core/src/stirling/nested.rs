use std::collections::BTreeMap;

use crate::arith::{QRatFn, ZPoly, ZSeries};
use crate::error::{Error, Result};
use crate::jfraction::Terms;

/// `num(z) / prod_j (1 - c_j z)^{e_j}`. Denominators are kept as index
/// multisets, so sums only ever take an lcm of multisets and never need a
/// gcd in `z`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactoredRational {
    num: ZPoly,
    den: BTreeMap<usize, u32>,
}

fn factor(c: &[QRatFn], j: usize) -> ZPoly {
    ZPoly::one_minus(&c[j - 1])
}

fn den_poly(c: &[QRatFn], den: &BTreeMap<usize, u32>) -> ZPoly {
    let mut acc = ZPoly::one();
    for (&j, &e) in den {
        for _ in 0..e {
            acc = &acc * &factor(c, j);
        }
    }
    acc
}

impl FactoredRational {
    pub fn zero() -> Self {
        FactoredRational {
            num: ZPoly::zero(),
            den: BTreeMap::new(),
        }
    }

    /// `coef / prod_{j in indices} (1 - c_j z)`; indices may repeat.
    pub fn term(coef: QRatFn, indices: &[usize]) -> Self {
        let mut den = BTreeMap::new();
        for &j in indices {
            *den.entry(j).or_insert(0) += 1;
        }
        FactoredRational {
            num: ZPoly::constant(coef),
            den,
        }
    }

    pub fn numerator(&self) -> &ZPoly {
        &self.num
    }

    pub fn denominator_indices(&self) -> &BTreeMap<usize, u32> {
        &self.den
    }

    pub fn denominator(&self, c: &[QRatFn]) -> ZPoly {
        den_poly(c, &self.den)
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn lift(&self, c: &[QRatFn], to: &BTreeMap<usize, u32>) -> Result<ZPoly> {
        let mut extra = BTreeMap::new();
        for (&j, &e) in &self.den {
            let have = to.get(&j).copied().unwrap_or(0);
            if have < e {
                return Err(Error::InvalidParams(format!(
                    "factor 1 - c_{j} z appears {e} times, only {have} available"
                )));
            }
        }
        for (&j, &e) in to {
            let d = e - self.den.get(&j).copied().unwrap_or(0);
            if d > 0 {
                extra.insert(j, d);
            }
        }
        Ok(&self.num * &den_poly(c, &extra))
    }

    pub fn add(&self, other: &Self, c: &[QRatFn]) -> Self {
        let mut lcm = self.den.clone();
        for (&j, &e) in &other.den {
            let slot = lcm.entry(j).or_insert(0);
            *slot = (*slot).max(e);
        }
        let num = &self.lift(c, &lcm).unwrap() + &other.lift(c, &lcm).unwrap();
        FactoredRational { num, den: lcm }
    }

    pub fn neg(&self) -> Self {
        FactoredRational {
            num: -&self.num,
            den: self.den.clone(),
        }
    }

    /// Multiply through by `prod_{j in against} (1 - c_j z)`; fails unless
    /// every denominator factor is covered.
    pub fn cleared(&self, c: &[QRatFn], against: &[usize]) -> Result<ZPoly> {
        let mut to = BTreeMap::new();
        for &j in against {
            *to.entry(j).or_insert(0) += 1;
        }
        self.lift(c, &to)
    }

    /// Power series in `z` through `z^{order-1}`.
    pub fn series(&self, c: &[QRatFn], order: usize) -> ZSeries {
        let mut acc = ZSeries::from_poly(&self.num, order);
        for (&j, &e) in &self.den {
            let cj = &c[j - 1];
            let mut geo = Vec::with_capacity(order);
            let mut p = QRatFn::one();
            for _ in 0..order {
                geo.push(p.clone());
                p = &p * cj;
            }
            let geo = ZSeries::from_coeffs(geo);
            for _ in 0..e {
                acc = &acc * &geo;
            }
        }
        acc
    }
}

/// Which nested sum to build.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NestedVariant {
    /// `S_{h,m,s}`: pairs `(k-1, k)` weighted by `ab_k`, `2 <= k <= h`,
    /// `k_1 + ... + k_m = s`.
    Denominator,
    /// `S^{[P]}_{h,m,s}`: pairs `(k, k+1)` weighted by `ab_{k+1}`,
    /// `2 <= k <= h`, `k_1 + ... + k_m = s - m`.
    Numerator,
    /// As `Numerator` but with the first index additionally capped at
    /// `h - 2m`, the literal bound on the outermost sum.
    NumeratorTightFirst,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NestedSumSpec {
    pub h: usize,
    pub m: usize,
    pub s: usize,
    pub variant: NestedVariant,
}

/// Strictly increasing `m`-tuples in `[lo, hi]` with consecutive gaps at
/// least `gap`, and first entry at most `first_hi`.
pub fn index_tuples(m: usize, lo: usize, hi: usize, gap: usize, first_hi: usize) -> Vec<Vec<usize>> {
    fn rec(m: usize, from: usize, hi: usize, gap: usize, cap: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == m {
            out.push(cur.clone());
            return;
        }
        let mut k = from;
        while k <= hi.min(cap) {
            cur.push(k);
            rec(m, k + gap, hi, gap, usize::MAX, cur, out);
            cur.pop();
            k += 1;
        }
    }
    let mut out = Vec::new();
    if m == 0 {
        return vec![vec![]];
    }
    rec(m, lo, hi, gap, first_hi, &mut Vec::new(), &mut out);
    out
}

fn tuple_term(terms: &Terms, variant: NestedVariant, tuple: &[usize]) -> FactoredRational {
    let mut coef = QRatFn::one();
    let mut idx = Vec::with_capacity(2 * tuple.len());
    for &k in tuple {
        match variant {
            NestedVariant::Denominator => {
                coef = &coef * terms.ab(k);
                idx.extend([k - 1, k]);
            }
            NestedVariant::Numerator | NestedVariant::NumeratorTightFirst => {
                coef = &coef * terms.ab(k + 1);
                idx.extend([k, k + 1]);
            }
        }
    }
    FactoredRational::term(coef, &idx)
}

fn tuples_for(h: usize, m: usize, variant: NestedVariant) -> Vec<Vec<usize>> {
    let first_hi = match variant {
        NestedVariant::NumeratorTightFirst => h.saturating_sub(2 * m),
        _ => usize::MAX,
    };
    index_tuples(m, 2, h, 2, first_hi)
}

fn weight(variant: NestedVariant, tuple: &[usize]) -> usize {
    let sum: usize = tuple.iter().sum();
    match variant {
        NestedVariant::Denominator => sum,
        _ => sum + tuple.len(),
    }
}

/// One nested sum as an exact rational function in `z`. An empty index
/// set gives zero.
pub fn nested_sum(terms: &Terms, spec: NestedSumSpec) -> FactoredRational {
    nested_sums_by_s(terms, spec.h, spec.m, spec.variant)
        .remove(&spec.s)
        .unwrap_or_else(FactoredRational::zero)
}

/// All nonzero `S_{h,m,s}` for fixed `(h, m)`, keyed by `s`.
pub fn nested_sums_by_s(
    terms: &Terms,
    h: usize,
    m: usize,
    variant: NestedVariant,
) -> BTreeMap<usize, FactoredRational> {
    let c = terms.c_all();
    let mut out: BTreeMap<usize, FactoredRational> = BTreeMap::new();
    for t in tuples_for(h, m, variant) {
        let term = tuple_term(terms, variant, &t);
        let slot = out.entry(weight(variant, &t)).or_insert_with(FactoredRational::zero);
        *slot = slot.add(&term, c);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::qr;

    fn sample() -> Terms {
        Terms::new(
            vec![qr("2"), qr("3"), qr("5"), qr("7"), qr("q")],
            vec![qr("11"), qr("13"), qr("17"), qr("1/q")],
        )
        .unwrap()
    }

    #[test]
    fn gapped_tuples() {
        assert_eq!(index_tuples(2, 2, 6, 2, usize::MAX), vec![vec![2, 4], vec![2, 5], vec![2, 6], vec![3, 5], vec![3, 6], vec![4, 6]]);
        assert!(index_tuples(3, 2, 5, 2, usize::MAX).is_empty());
        assert_eq!(index_tuples(2, 2, 6, 2, 2), vec![vec![2, 4], vec![2, 5], vec![2, 6]]);
    }

    #[test]
    fn single_index_collapse() {
        let t = sample();
        for s in 0..=6 {
            let got = nested_sum(&t, NestedSumSpec { h: 4, m: 1, s, variant: NestedVariant::Denominator });
            if (2..=4).contains(&s) {
                assert_eq!(got, FactoredRational::term(t.ab(s).clone(), &[s - 1, s]));
            } else {
                assert!(got.is_zero());
            }
        }
    }

    #[test]
    fn single_pair_at_h4() {
        let t = sample();
        let got = nested_sum(&t, NestedSumSpec { h: 4, m: 2, s: 6, variant: NestedVariant::Denominator });
        let want = FactoredRational::term(t.ab(2) * t.ab(4), &[1, 2, 3, 4]);
        assert_eq!(got, want);
        assert!(nested_sum(&t, NestedSumSpec { h: 4, m: 2, s: 9, variant: NestedVariant::Denominator }).is_zero());
    }

    #[test]
    fn lcm_addition_and_series() {
        let c = sample().c_all().to_vec();
        let a = FactoredRational::term(qr("1"), &[1]);
        let b = FactoredRational::term(qr("1"), &[2]);
        let s = a.add(&b, &c);
        // 1/(1-2z) + 1/(1-3z) = 2 + 5z + 13z^2 + ...
        let ser = s.series(&c, 3);
        assert_eq!(ser.coeffs(), &[qr("2"), qr("5"), qr("13")]);
        assert_eq!(s.denominator(&c), ZPoly::product([ZPoly::one_minus(&c[0]), ZPoly::one_minus(&c[1])].iter()));
        assert!(s.cleared(&c, &[1]).is_err());
        assert!(s.add(&s.neg(), &c).is_zero());
    }
}
