//! Binomial coefficients: exact values and their parity.

use num_bigint::BigUint;
use num_traits::{One, Zero};

/// Exact `C(n, k)`, zero when `k < 0` or `k > n`.
pub fn binom(n: u64, k: i64) -> BigUint {
    if k < 0 || k as u64 > n {
        return BigUint::zero();
    }
    let k = (k as u64).min(n - k as u64);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// `C(n, k) mod 2` by digit domination: odd iff every binary digit of `k`
/// is at most the matching digit of `n`.
pub fn binom_parity(n: u64, k: i64) -> bool {
    k >= 0 && (k as u64) <= n && (n & k as u64) == k as u64
}

/// `(2j − 1)!! = 1 · 3 · … · (2j − 1)`, with `(−1)!! = 1`.
pub fn odd_double_factorial(j: u64) -> BigUint {
    (1..=j).fold(BigUint::one(), |acc, i| acc * (2 * i - 1))
}

/// Rows `0..=max_n` of Pascal's triangle, built by addition only.
#[derive(Debug, Clone)]
pub struct PascalTable {
    rows: Vec<Vec<BigUint>>,
}

impl PascalTable {
    pub fn new(max_n: usize) -> Self {
        let mut rows: Vec<Vec<BigUint>> = Vec::with_capacity(max_n + 1);
        rows.push(vec![BigUint::one()]);
        for n in 1..=max_n {
            let prev = &rows[n - 1];
            let mut row = Vec::with_capacity(n + 1);
            row.push(BigUint::one());
            for k in 1..n {
                row.push(&prev[k - 1] + &prev[k]);
            }
            row.push(BigUint::one());
            rows.push(row);
        }
        PascalTable { rows }
    }

    pub fn max_n(&self) -> usize {
        self.rows.len() - 1
    }

    /// `C(n, k)`; panics if `n` is beyond the table.
    pub fn get(&self, n: usize, k: i64) -> BigUint {
        if k < 0 || k as usize > n {
            return BigUint::zero();
        }
        self.rows[n][k as usize].clone()
    }

    pub fn is_odd(&self, n: usize, k: i64) -> bool {
        if k < 0 || k as usize > n {
            return false;
        }
        self.rows[n][k as usize].bit(0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn values() {
        assert_eq!(binom(4, 2), BigUint::from(6u32));
        for n in 0..20 {
            assert_eq!(binom(n, 0), BigUint::one());
        }
        assert_eq!(binom(10, 11), BigUint::zero());
        assert_eq!(binom(10, -1), BigUint::zero());
        assert_eq!(binom(100, 50).to_string(), "100891344545564193334812497256");
    }

    #[test]
    fn parity_examples() {
        assert!(!binom_parity(6, 3));
        for n in 0..100 {
            assert!(binom_parity(n, n as i64));
        }
        assert!(!binom_parity(5, 2));
        assert!(!binom_parity(3, 4));
        assert!(!binom_parity(3, -1));
    }

    #[test]
    fn double_factorial() {
        let expected = [1u32, 1, 3, 15, 105, 945];
        for (j, e) in expected.iter().enumerate() {
            assert_eq!(odd_double_factorial(j as u64), BigUint::from(*e));
        }
    }

    #[test]
    fn pascal_agrees_with_multiplicative_formula_and_parity_rule() {
        let table = PascalTable::new(512);
        for n in 0..=512usize {
            for k in 0..=n as i64 {
                let exact = table.get(n, k);
                if n <= 128 {
                    assert_eq!(exact, binom(n as u64, k));
                }
                assert_eq!(exact.bit(0), binom_parity(n as u64, k), "C({n},{k})");
            }
        }
    }

    #[test]
    fn vandermonde() {
        let table = PascalTable::new(128);
        for n in 0..=64usize {
            for m in 0..=64usize {
                for k in 0..=(n + m) as i64 / 2 {
                    let sum: BigUint = (0..=2 * k)
                        .map(|i| table.get(n, i) * table.get(m, 2 * k - i))
                        .sum();
                    assert_eq!(sum, table.get(n + m, 2 * k));
                }
            }
        }
    }
}
