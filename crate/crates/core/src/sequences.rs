//! The four sequences whose Hankel determinants are studied here.
//!
//! `term` uses closed forms; `series_oracle` expands the defining
//! generating functions as truncated power series and shares no code
//! with `term`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::number_sets::SetId;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum SequenceId {
    /// `∏ (1 − x^(2^k))`, terms in {+1, −1}.
    ThueMorse,
    /// `|e_n − e_(n+1)| / 2`, terms in {0, 1}.
    PeriodDoubling,
    /// `Σ x^(2^n − 1) / (1 − x^(2^(n+2)))`, terms in {0, 1}.
    Paperfolding,
    /// `Σ x^(2^n − 1) / (1 − x^(2^n))`, terms ≥ 1.
    CoonsG00,
}

impl SequenceId {
    pub const ALL: [SequenceId; 4] = [
        SequenceId::ThueMorse,
        SequenceId::PeriodDoubling,
        SequenceId::Paperfolding,
        SequenceId::CoonsG00,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SequenceId::ThueMorse => "thue-morse",
            SequenceId::PeriodDoubling => "period-doubling",
            SequenceId::Paperfolding => "paperfolding",
            SequenceId::CoonsG00 => "coons",
        }
    }

    /// The n-th term as a machine integer.
    #[inline]
    pub fn term_i64(self, n: u64) -> i64 {
        match self {
            SequenceId::ThueMorse => {
                if n.count_ones() % 2 == 0 {
                    1
                } else {
                    -1
                }
            }
            SequenceId::PeriodDoubling => SetId::J.contains(n) as i64,
            SequenceId::Paperfolding => SetId::R.contains(n) as i64,
            // n + 1 ≡ 0 mod 2^j contributes one for each j ≤ v2(n + 1).
            SequenceId::CoonsG00 => match n.checked_add(1) {
                Some(s) => s.trailing_zeros() as i64 + 1,
                None => 65,
            },
        }
    }

    pub fn term(self, n: u64) -> BigInt {
        BigInt::from(self.term_i64(n))
    }

    pub fn prefix_terms(self, len: usize) -> Vec<BigInt> {
        (0..len as u64).map(|n| self.term(n)).collect()
    }
}

impl fmt::Display for SequenceId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SequenceId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().replace('_', "-").as_str() {
            "thue-morse" | "tm" | "e" => Ok(SequenceId::ThueMorse),
            "period-doubling" | "pd" | "d" => Ok(SequenceId::PeriodDoubling),
            "paperfolding" | "regular-paperfolding" | "pf" | "r" => Ok(SequenceId::Paperfolding),
            "coons" | "coons-g00" | "g00" => Ok(SequenceId::CoonsG00),
            _ => Err(Error::UnknownSequence(s.to_string())),
        }
    }
}

pub fn term(seq: SequenceId, n: u64) -> BigInt {
    seq.term(n)
}

pub fn prefix_terms(seq: SequenceId, len: usize) -> Vec<BigInt> {
    seq.prefix_terms(len)
}

/// Adds the truncation of `x^shift / (1 − x^step)` to `acc`.
fn add_geometric(acc: &mut [i64], shift: usize, step: usize) {
    let mut e = shift;
    while e < acc.len() {
        acc[e] += 1;
        e += step;
    }
}

fn thue_morse_product(len: usize) -> Vec<i64> {
    let mut acc = vec![0i64; len];
    if len == 0 {
        return acc;
    }
    acc[0] = 1;
    let mut power = 1usize;
    while power < len {
        // multiply by (1 - x^power), descending so each source is read once
        for e in (power..len).rev() {
            acc[e] -= acc[e - power];
        }
        power <<= 1;
    }
    acc
}

/// First `len` coefficients by truncated formal power series expansion.
pub fn series_oracle(seq: SequenceId, len: usize) -> Vec<BigInt> {
    let coeffs: Vec<i64> = match seq {
        SequenceId::ThueMorse => thue_morse_product(len),
        SequenceId::PeriodDoubling => {
            let e = thue_morse_product(len + 1);
            e.windows(2).map(|w| (w[0] - w[1]).abs() / 2).collect()
        }
        SequenceId::Paperfolding => {
            let mut acc = vec![0i64; len];
            let mut n = 0u32;
            while (1usize << n) - 1 < len {
                add_geometric(&mut acc, (1 << n) - 1, 1 << (n + 2));
                n += 1;
            }
            acc
        }
        SequenceId::CoonsG00 => {
            let mut acc = vec![0i64; len];
            let mut n = 0u32;
            while (1usize << n) - 1 < len {
                add_geometric(&mut acc, (1 << n) - 1, 1 << n);
                n += 1;
            }
            acc
        }
    };
    coeffs.into_iter().map(BigInt::from).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn listed_terms() {
        assert_eq!(
            prefix_terms(SequenceId::ThueMorse, 4),
            ints(&[1, -1, -1, 1])
        );
        assert_eq!(
            prefix_terms(SequenceId::PeriodDoubling, 6),
            ints(&[1, 0, 1, 1, 1, 0])
        );
        assert_eq!(
            prefix_terms(SequenceId::Paperfolding, 7),
            ints(&[1, 1, 0, 1, 1, 0, 0])
        );
        assert_eq!(term(SequenceId::CoonsG00, 1), BigInt::from(2));
        assert!(prefix_terms(SequenceId::PeriodDoubling, 0).is_empty());
    }

    #[test]
    fn oracle_examples() {
        assert_eq!(
            series_oracle(SequenceId::ThueMorse, 4),
            ints(&[1, -1, -1, 1])
        );
        assert_eq!(series_oracle(SequenceId::CoonsG00, 1), ints(&[1]));
        assert_eq!(
            series_oracle(SequenceId::Paperfolding, 7),
            ints(&[1, 1, 0, 1, 1, 0, 0])
        );
        for seq in SequenceId::ALL {
            assert!(series_oracle(seq, 0).is_empty());
        }
    }

    #[test]
    fn closed_forms_match_series() {
        for seq in SequenceId::ALL {
            assert_eq!(prefix_terms(seq, 4096), series_oracle(seq, 4096), "{seq}");
        }
    }

    #[test]
    fn period_doubling_from_thue_morse() {
        for n in 0..4096u64 {
            let e0 = SequenceId::ThueMorse.term_i64(n);
            let e1 = SequenceId::ThueMorse.term_i64(n + 1);
            assert_eq!(SequenceId::PeriodDoubling.term_i64(n), (e0 - e1).abs() / 2);
        }
    }

    #[test]
    fn value_ranges() {
        for n in 0..4096u64 {
            assert!(matches!(SequenceId::ThueMorse.term_i64(n), 1 | -1));
            assert!(matches!(SequenceId::PeriodDoubling.term_i64(n), 0 | 1));
            assert!(matches!(SequenceId::Paperfolding.term_i64(n), 0 | 1));
            assert!(SequenceId::CoonsG00.term_i64(n) >= 1);
        }
    }

    #[test]
    fn characterizations_against_series() {
        let d = series_oracle(SequenceId::PeriodDoubling, 1 << 16);
        let r = series_oracle(SequenceId::Paperfolding, 1 << 16);
        for n in 0..1usize << 16 {
            assert_eq!(d[n] == BigInt::from(1), SetId::J.contains(n as u64));
            assert_eq!(r[n] == BigInt::from(1), SetId::R.contains(n as u64));
        }
    }

    #[test]
    fn names_round_trip() {
        for seq in SequenceId::ALL {
            assert_eq!(seq.name().parse::<SequenceId>(), Ok(seq));
        }
        assert!("fibonacci".parse::<SequenceId>().is_err());
    }
}
