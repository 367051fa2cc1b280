//! The integer sets N, J, J*, K, L, P, Q and R, their finite prefixes,
//! and the two relabelings used to move involutions between them.
//!
//! Membership is decided from the 2-adic valuation `v` of `n + 1`:
//!
//! * `n ∈ J`  iff `v` is even, `n ∈ K` iff `v` is odd;
//! * `n ∈ J*` iff `v` is even and `v ≥ 2`, `L` is its complement;
//! * `n ∈ R`  iff the odd part of `n + 1` is `1 mod 4`;
//! * `P` and `Q` are residue classes `{0, 3}` and `{1, 2}` mod 4.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum SetId {
    N,
    J,
    JStar,
    K,
    L,
    P,
    Q,
    R,
}

impl SetId {
    pub const ALL: [SetId; 8] = [
        SetId::N,
        SetId::J,
        SetId::JStar,
        SetId::K,
        SetId::L,
        SetId::P,
        SetId::Q,
        SetId::R,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SetId::N => "N",
            SetId::J => "J",
            SetId::JStar => "J*",
            SetId::K => "K",
            SetId::L => "L",
            SetId::P => "P",
            SetId::Q => "Q",
            SetId::R => "R",
        }
    }

    #[inline]
    pub fn contains(self, n: u64) -> bool {
        match self {
            SetId::N => true,
            SetId::P => matches!(n & 3, 0 | 3),
            SetId::Q => matches!(n & 3, 1 | 2),
            _ => {
                // n + 1 may overflow only at u64::MAX, whose successor is 2^64.
                let (v, odd) = match n.checked_add(1) {
                    Some(s) => (s.trailing_zeros(), s >> s.trailing_zeros()),
                    None => (64, 1),
                };
                classify(self, v as u64, odd & 3)
            }
        }
    }

    /// Membership for integers beyond the machine word.
    pub fn contains_big(self, n: &BigUint) -> bool {
        if let Some(small) = n.to_u64() {
            return self.contains(small);
        }
        let low2 = (n % 4u32).to_u64().unwrap_or(0);
        match self {
            SetId::N => true,
            SetId::P => matches!(low2, 0 | 3),
            SetId::Q => matches!(low2, 1 | 2),
            _ => {
                let s = n + BigUint::one();
                let v = s.trailing_zeros().unwrap_or(0);
                let odd = &s >> v;
                classify(self, v, (odd % 4u32).to_u64().unwrap_or(0))
            }
        }
    }

    pub fn prefix(self, m: usize) -> FinitePrefix {
        FinitePrefix {
            set: self,
            elements: (0u64..).filter(|&n| self.contains(n)).take(m).collect(),
        }
    }
}

fn classify(set: SetId, v: u64, odd_mod4: u64) -> bool {
    match set {
        SetId::J => v % 2 == 0,
        SetId::K => v % 2 == 1,
        SetId::JStar => v % 2 == 0 && v >= 2,
        SetId::L => !(v % 2 == 0 && v >= 2),
        SetId::R => odd_mod4 == 1,
        SetId::N | SetId::P | SetId::Q => unreachable!("residue sets are decided directly"),
    }
}

impl fmt::Display for SetId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SetId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "N" => Ok(SetId::N),
            "J" => Ok(SetId::J),
            "J*" | "JSTAR" | "J_STAR" => Ok(SetId::JStar),
            "K" => Ok(SetId::K),
            "L" => Ok(SetId::L),
            "P" => Ok(SetId::P),
            "Q" => Ok(SetId::Q),
            "R" => Ok(SetId::R),
            _ => Err(Error::UnknownSet(s.to_string())),
        }
    }
}

pub fn membership(set: SetId, n: u64) -> bool {
    set.contains(n)
}

/// The smallest `size` members of a set, ascending.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FinitePrefix {
    pub set: SetId,
    pub elements: Vec<u64>,
}

impl FinitePrefix {
    pub fn size(&self) -> usize {
        self.elements.len()
    }

    pub fn as_slice(&self) -> &[u64] {
        &self.elements
    }
}

pub fn prefix(set: SetId, m: usize) -> FinitePrefix {
    set.prefix(m)
}

/// Bijection of `N` onto `P`: even `n` goes to `2n`, odd `n` to `2n + 1`.
pub fn beta(n: u64) -> u64 {
    if n % 2 == 0 {
        2 * n
    } else {
        2 * n + 1
    }
}

/// Bijection of `P` onto `Q`: even `n` goes to `n + 1`, odd `n` to `n - 1`.
pub fn delta(n: u64) -> Result<u64> {
    if !SetId::P.contains(n) {
        return Err(Error::NotInP(n));
    }
    Ok(if n % 2 == 0 { n + 1 } else { n - 1 })
}

/// Whether the transposition `(c, d)` lies in `set`, i.e. `c + d ∈ set`.
pub fn transposition_in(c: u64, d: u64, set: SetId) -> Result<bool> {
    if c == d {
        return Err(Error::DegenerateTransposition(c));
    }
    Ok(set.contains(c + d))
}

/// Indicator of `set ∩ [0, limit)` built by walking the defining
/// parameterizations directly, without the valuation shortcuts used by
/// [`SetId::contains`].
pub fn defining_indicator(set: SetId, limit: usize) -> Vec<bool> {
    let mut hit = vec![false; limit];
    let limit = limit as u64;
    // members of the form odd · 2^e − 1 for the listed exponents
    fn mark_odd_multiples(hit: &mut [bool], limit: u64, exponents: impl Iterator<Item = u32>) {
        for e in exponents {
            if (1u64 << e) > limit {
                break;
            }
            let mut odd = 1u64;
            while odd << e <= limit {
                hit[((odd << e) - 1) as usize] = true;
                odd += 2;
            }
        }
    }
    match set {
        SetId::N => hit.iter_mut().for_each(|h| *h = true),
        SetId::J => mark_odd_multiples(&mut hit, limit, (0..63).step_by(2)),
        SetId::JStar => mark_odd_multiples(&mut hit, limit, (2..63).step_by(2)),
        SetId::K => mark_odd_multiples(&mut hit, limit, (1..63).step_by(2)),
        SetId::L => {
            let jstar = defining_indicator(SetId::JStar, limit as usize);
            for (h, j) in hit.iter_mut().zip(jstar) {
                *h = !j;
            }
        }
        SetId::P | SetId::Q => {
            let residues: [u64; 2] = if set == SetId::P { [0, 3] } else { [1, 2] };
            for r in residues {
                let mut x = r;
                while x < limit {
                    hit[x as usize] = true;
                    x += 4;
                }
            }
        }
        SetId::R => {
            let mut n = 0u32;
            while n < 63 && (1u64 << n) <= limit {
                let mut k = 0u64;
                while (4 * k + 1) << n <= limit {
                    hit[(((4 * k + 1) << n) - 1) as usize] = true;
                    k += 1;
                }
                n += 1;
            }
        }
    }
    hit
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    #[test]
    fn membership_examples() {
        assert!(membership(SetId::J, 0));
        assert!(!membership(SetId::J, 5));
        assert!(membership(SetId::JStar, 11));
        assert!(membership(SetId::R, 9));
        assert!(!membership(SetId::P, 2));
    }

    #[test]
    fn listed_prefixes() {
        assert_eq!(
            prefix(SetId::J, 10).elements,
            [0, 2, 3, 4, 6, 8, 10, 11, 12, 14]
        );
        assert_eq!(prefix(SetId::JStar, 6).elements, [3, 11, 15, 19, 27, 35]);
        assert_eq!(prefix(SetId::K, 6).elements, [1, 5, 7, 9, 13, 17]);
        // N minus {3, 11, 15, 19, …}
        assert_eq!(
            prefix(SetId::L, 12).elements,
            [0, 1, 2, 4, 5, 6, 7, 8, 9, 10, 12, 13]
        );
        assert_eq!(prefix(SetId::P, 5).elements, [0, 3, 4, 7, 8]);
        assert_eq!(prefix(SetId::Q, 6).elements, [1, 2, 5, 6, 9, 10]);
        assert_eq!(
            prefix(SetId::R, 10).elements,
            [0, 1, 3, 4, 7, 8, 9, 12, 15, 16]
        );
        assert!(prefix(SetId::J, 0).elements.is_empty());
    }

    #[test]
    fn closed_forms_match_enumeration() {
        let limit = 1 << 16;
        for set in SetId::ALL {
            let expected = defining_indicator(set, limit as usize);
            for n in 0..limit {
                assert_eq!(set.contains(n), expected[n as usize], "{set} at {n}");
            }
        }
    }

    #[test]
    fn partitions() {
        for n in 0..1u64 << 16 {
            assert!(SetId::J.contains(n) ^ SetId::K.contains(n));
            assert!(SetId::P.contains(n) ^ SetId::Q.contains(n));
            assert_eq!(SetId::L.contains(n), !SetId::JStar.contains(n));
            assert_eq!(
                SetId::L.contains(n),
                SetId::K.contains(n) || n % 2 == 0,
                "L = K ∪ evens at {n}"
            );
            if SetId::JStar.contains(n) {
                assert!(SetId::J.contains(n));
            }
        }
    }

    #[test]
    fn big_membership_agrees() {
        for n in (0..5000u64).chain([u64::MAX - 3, u64::MAX - 1, u64::MAX]) {
            for set in SetId::ALL {
                assert_eq!(set.contains_big(&BigUint::from(n)), set.contains(n));
            }
        }
        // 2^70 - 1: v = 70 (even, >= 2)
        let big = (BigUint::one() << 70u32) - BigUint::one();
        assert!(SetId::J.contains_big(&big));
        assert!(SetId::JStar.contains_big(&big));
        assert!(SetId::R.contains_big(&big));
        assert!(SetId::P.contains_big(&big));
    }

    #[test]
    fn beta_delta_examples() {
        assert_eq!(beta(0), 0);
        assert_eq!(beta(7), 15);
        assert_eq!(beta(5), 11);
        assert_eq!(delta(15), Ok(14));
        assert_eq!(delta(0), Ok(1));
        assert_eq!(delta(2), Err(Error::NotInP(2)));
    }

    #[test]
    fn beta_delta_are_prefix_bijections() {
        for m in 0..=512 {
            let n: BTreeSet<u64> = prefix(SetId::N, m)
                .elements
                .iter()
                .map(|&x| beta(x))
                .collect();
            let p: BTreeSet<u64> = prefix(SetId::P, m).elements.into_iter().collect();
            assert_eq!(n.len(), m);
            assert_eq!(n, p);
            let q: BTreeSet<u64> = p.iter().map(|&x| delta(x).unwrap()).collect();
            let expected: BTreeSet<u64> = prefix(SetId::Q, m).elements.into_iter().collect();
            assert_eq!(q, expected);
        }
    }

    #[test]
    fn beta_carries_j_to_l() {
        for c in 0..256 {
            for d in 0..256 {
                if c != d {
                    assert_eq!(
                        transposition_in(c, d, SetId::J).unwrap(),
                        transposition_in(beta(c), beta(d), SetId::L).unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn delta_preserves_jstar_sums() {
        let p = prefix(SetId::P, 256).elements;
        for &c in &p {
            for &d in &p {
                if c != d && SetId::JStar.contains(c + d) {
                    assert_eq!(delta(c).unwrap() + delta(d).unwrap(), c + d);
                }
            }
        }
    }

    #[test]
    fn jstar_sums_are_3_mod_4() {
        for s in 1..(1u64 << 13) {
            if SetId::JStar.contains(s) {
                assert_eq!(s % 4, 3);
            }
        }
    }

    #[test]
    fn even_members_of_r() {
        for m in (0..1u64 << 16).step_by(2) {
            assert_eq!(SetId::R.contains(m), m % 4 == 0);
        }
    }

    #[test]
    fn r_decomposition_is_unique() {
        for m in prefix(SetId::R, 4096).elements {
            let mut hits = 0;
            let mut n = 0;
            while (1u64 << n) <= m + 1 {
                let s = m + 1;
                if s % (1 << n) == 0 && (s >> n) % 4 == 1 {
                    hits += 1;
                }
                n += 1;
            }
            assert_eq!(hits, 1, "{m}");
        }
    }

    #[test]
    fn transposition_examples() {
        assert_eq!(transposition_in(0, 2, SetId::J), Ok(true));
        assert_eq!(transposition_in(2, 3, SetId::J), Ok(false));
        assert_eq!(transposition_in(4, 7, SetId::JStar), Ok(true));
        assert_eq!(
            transposition_in(3, 3, SetId::J),
            Err(Error::DegenerateTransposition(3))
        );
    }

    #[test]
    fn parse_names() {
        for set in SetId::ALL {
            assert_eq!(set.name().parse::<SetId>(), Ok(set));
        }
        assert_eq!("jstar".parse::<SetId>(), Ok(SetId::JStar));
        assert!("X".parse::<SetId>().is_err());
    }
}
