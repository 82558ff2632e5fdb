use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Stirling numbers of the second kind, rows `0..=n_max`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Stirling2Table {
    rows: Vec<Vec<BigInt>>,
}

impl Stirling2Table {
    pub fn new(n_max: usize) -> Self {
        let mut rows: Vec<Vec<BigInt>> = vec![vec![BigInt::one()]];
        for n in 1..=n_max {
            let prev = &rows[n - 1];
            let row: Vec<BigInt> = (0..=n)
                .map(|k| {
                    let keep = prev.get(k).map(|x| x * BigInt::from(k)).unwrap_or_else(BigInt::zero);
                    if k == 0 {
                        keep
                    } else {
                        keep + &prev[k - 1]
                    }
                })
                .collect();
            rows.push(row);
        }
        Stirling2Table { rows }
    }

    pub fn n_max(&self) -> usize {
        self.rows.len() - 1
    }

    /// Zero for `k > n`. Panics if `n` exceeds the table.
    pub fn get(&self, n: usize, k: usize) -> BigInt {
        self.rows[n].get(k).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn row(&self, n: usize) -> &[BigInt] {
        &self.rows[n]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracles::stirling2;

    #[test]
    fn matches_explicit_formula() {
        let t = Stirling2Table::new(10);
        for n in 0..=10 {
            for k in 0..=n {
                assert_eq!(t.get(n, k), stirling2(n, k), "S({n},{k})");
            }
        }
    }

    #[test]
    fn bell_numbers() {
        let bell = [1u32, 1, 2, 5, 15, 52, 203, 877, 4140];
        let t = Stirling2Table::new(8);
        for (n, b) in bell.iter().enumerate() {
            let s: BigInt = t.row(n).iter().sum();
            assert_eq!(s, BigInt::from(*b));
        }
    }
}
