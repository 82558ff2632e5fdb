use serde::Serialize;

use crate::arith::{QRatFn, ZPoly};

/// Rows `0..=h_max` of the triangle
/// `T(h, k) = T(h-1, k) - c_h T(h-1, k-1) + [h = k = 0]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StirlingQTriangle {
    rows: Vec<Vec<QRatFn>>,
}

impl StirlingQTriangle {
    /// `c[0]` is `c_1`.
    pub fn new(c: &[QRatFn], h_max: usize) -> Self {
        assert!(c.len() >= h_max, "need c_1..c_{h_max}");
        let mut rows: Vec<Vec<QRatFn>> = vec![vec![QRatFn::one()]];
        for h in 1..=h_max {
            let prev = &rows[h - 1];
            let ch = &c[h - 1];
            let row: Vec<QRatFn> = (0..=h)
                .map(|k| {
                    let keep = prev.get(k).cloned().unwrap_or_else(QRatFn::zero);
                    if k == 0 {
                        keep
                    } else {
                        &keep - &(ch * &prev[k - 1])
                    }
                })
                .collect();
            rows.push(row);
        }
        StirlingQTriangle { rows }
    }

    pub fn h_max(&self) -> usize {
        self.rows.len() - 1
    }

    /// Zero outside `0 <= k <= h`.
    pub fn entry(&self, h: usize, k: i64) -> QRatFn {
        if k < 0 {
            return QRatFn::zero();
        }
        self.rows[h].get(k as usize).cloned().unwrap_or_else(QRatFn::zero)
    }

    pub fn row(&self, h: usize) -> &[QRatFn] {
        &self.rows[h]
    }
}

/// `[z^k] (1 - c_lo z) ⋯ (1 - c_hi z)` for a 1-based index range; the empty
/// range gives the constant 1.
pub fn product_coefficient(c: &[QRatFn], lo: usize, hi: usize, k: i64) -> QRatFn {
    let factors: Vec<ZPoly> = (lo..=hi).map(|i| ZPoly::one_minus(&c[i - 1])).collect();
    ZPoly::product(factors.iter()).coeff(k)
}

/// `[z^k] (1 - c_1 z) ⋯ (1 - c_h z)`.
pub fn triangle_via_products(c: &[QRatFn], h: usize, k: usize) -> QRatFn {
    product_coefficient(c, 1, h, k as i64)
}
