//! Involutions whose transpositions are constrained by an integer set, and
//! the full permutation-sum expansion of t-Hankel determinants.
//!
//! A transposition `(c, d)` is admissible for a set `B` when `c + d ∈ B`.
//! Enumeration and counting share one recursion: the smallest unresolved
//! letter is either left fixed or paired with an admissible larger letter.

use std::collections::HashMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::number_sets::SetId;
use crate::polynomial::IntPolynomial;
use crate::sequences::SequenceId;

/// Default limit on the number of letters for enumeration and counting.
pub const DEFAULT_ENUMERATION_CAP: usize = 20;
/// Counts are accumulated in 128-bit words; the number of involutions on
/// 48 letters still fits.
pub const MAX_ENUMERATION_CAP: usize = 48;
/// Largest order accepted by [`leibniz_t_det`].
pub const LEIBNIZ_CAP: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Involution {
    pub domain: Vec<u64>,
    pub fixed_points: Vec<u64>,
    /// Pairs `(c, d)` with `c < d`, ordered by `c`.
    pub transpositions: Vec<(u64, u64)>,
}

impl Involution {
    pub fn fix(&self) -> usize {
        self.fixed_points.len()
    }

    pub fn transposition_count(&self) -> usize {
        self.transpositions.len()
    }
}

impl fmt::Display for Involution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &x in &self.domain {
            if self.fixed_points.contains(&x) {
                write!(f, "({x})")?;
            } else if let Some((c, d)) = self.transpositions.iter().find(|p| p.0 == x) {
                write!(f, "({c},{d})")?;
            }
        }
        Ok(())
    }
}

fn sorted_domain(domain: &[u64], cap: usize) -> Result<Vec<u64>> {
    let cap = cap.min(MAX_ENUMERATION_CAP);
    if domain.len() > cap {
        return Err(Error::EnumerationCap {
            size: domain.len(),
            cap,
        });
    }
    let mut d = domain.to_vec();
    d.sort_unstable();
    d.dedup();
    Ok(d)
}

/// Visits every involution of `domain` whose transpositions are all in
/// `allowed`, in a deterministic order.
pub fn for_each_involution<F: FnMut(&Involution)>(
    domain: &[u64],
    allowed: SetId,
    cap: usize,
    mut visit: F,
) -> Result<()> {
    let letters = sorted_domain(domain, cap)?;
    let mut current = Involution {
        domain: letters.clone(),
        fixed_points: Vec::new(),
        transpositions: Vec::new(),
    };
    let mut used = vec![false; letters.len()];
    walk(&letters, allowed, &mut used, &mut current, &mut visit);
    Ok(())
}

fn walk<F: FnMut(&Involution)>(
    letters: &[u64],
    allowed: SetId,
    used: &mut [bool],
    current: &mut Involution,
    visit: &mut F,
) {
    let Some(first) = used.iter().position(|u| !u) else {
        let mut snapshot = current.clone();
        snapshot.fixed_points.sort_unstable();
        snapshot.transpositions.sort_unstable();
        visit(&snapshot);
        return;
    };
    used[first] = true;
    current.fixed_points.push(letters[first]);
    walk(letters, allowed, used, current, visit);
    current.fixed_points.pop();
    for partner in first + 1..letters.len() {
        if used[partner] || !allowed.contains(letters[first] + letters[partner]) {
            continue;
        }
        used[partner] = true;
        current
            .transpositions
            .push((letters[first], letters[partner]));
        walk(letters, allowed, used, current, visit);
        current.transpositions.pop();
        used[partner] = false;
    }
    used[first] = false;
}

pub fn enumerate_involutions(domain: &[u64], allowed: SetId) -> Result<Vec<Involution>> {
    let mut out = Vec::new();
    for_each_involution(domain, allowed, DEFAULT_ENUMERATION_CAP, |inv| {
        out.push(inv.clone())
    })?;
    Ok(out)
}

/// Counts of involutions by the number of transpositions in each of two
/// disjoint classes. Entry `[a][b]` counts involutions with `a`
/// transpositions in the first class, `b` in the second, and none outside.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassCounts {
    half: usize,
    counts: Vec<u128>,
}

impl ClassCounts {
    pub fn get(&self, first: usize, second: usize) -> BigUint {
        if first > self.half || second > self.half {
            return BigUint::default();
        }
        BigUint::from(self.counts[first * (self.half + 1) + second])
    }

    /// Counts with no transposition in the second class, indexed by the
    /// number in the first.
    pub fn by_first(&self) -> Vec<BigUint> {
        (0..=self.half).map(|a| self.get(a, 0)).collect()
    }
}

struct Counter<'a> {
    letters: &'a [u64],
    half: usize,
    classify: &'a (dyn Fn(u64, u64) -> Result<Option<usize>> + Sync),
    memo: HashMap<u64, Vec<u128>>,
}

impl Counter<'_> {
    fn count(&mut self, remaining: u64) -> Result<Vec<u128>> {
        let width = self.half + 1;
        if remaining == 0 {
            let mut base = vec![0u128; width * width];
            base[0] = 1;
            return Ok(base);
        }
        if let Some(hit) = self.memo.get(&remaining) {
            return Ok(hit.clone());
        }
        let first = remaining.trailing_zeros() as usize;
        let rest = remaining & (remaining - 1);
        let mut acc = self.count(rest)?;
        let mut partners = rest;
        while partners != 0 {
            let partner = partners.trailing_zeros() as usize;
            partners &= partners - 1;
            let Some(class) = (self.classify)(self.letters[first], self.letters[partner])? else {
                continue;
            };
            let sub = self.count(rest & !(1u64 << partner))?;
            for a in 0..width {
                for b in 0..width {
                    let v = sub[a * width + b];
                    if v == 0 {
                        continue;
                    }
                    let (na, nb) = if class == 0 { (a + 1, b) } else { (a, b + 1) };
                    let slot = &mut acc[na * width + nb];
                    *slot = slot.checked_add(v).expect("involution count overflow");
                }
            }
        }
        self.memo.insert(remaining, acc.clone());
        Ok(acc)
    }
}

fn class_counts(
    domain: &[u64],
    cap: usize,
    classify: &(dyn Fn(u64, u64) -> Result<Option<usize>> + Sync),
) -> Result<ClassCounts> {
    let letters = sorted_domain(domain, cap)?;
    let half = letters.len() / 2;
    let full = if letters.len() == 64 {
        u64::MAX
    } else {
        (1u64 << letters.len()) - 1
    };
    let mut counter = Counter {
        letters: &letters,
        half,
        classify,
        memo: HashMap::new(),
    };
    let counts = counter.count(full)?;
    Ok(ClassCounts { half, counts })
}

/// `μ(A, k, B)` for every `k`: entry `k` counts involutions of `domain`
/// with exactly `k` transpositions, all of them in `allowed`.
pub fn mu_distribution(domain: &[u64], allowed: SetId, cap: usize) -> Result<Vec<BigUint>> {
    let classify = move |c: u64, d: u64| Ok(allowed.contains(c + d).then_some(0));
    Ok(class_counts(domain, cap, &classify)?.by_first())
}

pub fn mu(domain: &[u64], k: usize, allowed: SetId) -> Result<BigUint> {
    let dist = mu_distribution(domain, allowed, DEFAULT_ENUMERATION_CAP)?;
    Ok(dist.get(k).cloned().unwrap_or_default())
}

/// Full two-class table for `μ(A, k1, k2, B1, B2)`.
pub fn mu2_table(domain: &[u64], first: SetId, second: SetId, cap: usize) -> Result<ClassCounts> {
    let classify = move |c: u64, d: u64| {
        let s = c + d;
        match (first.contains(s), second.contains(s)) {
            (true, true) => Err(Error::OverlappingClasses(c, d)),
            (true, false) => Ok(Some(0)),
            (false, true) => Ok(Some(1)),
            (false, false) => Ok(None),
        }
    };
    class_counts(domain, cap, &classify)
}

/// Involutions with exactly `k1` transpositions in `first`, `k2` in
/// `second`, and no others. The two sets must not share a reachable sum.
pub fn mu2(domain: &[u64], k1: usize, k2: usize, first: SetId, second: SetId) -> Result<BigUint> {
    Ok(mu2_table(domain, first, second, DEFAULT_ENUMERATION_CAP)?.get(k1, k2))
}

/// `Σ_σ t^fix(σ)` over the admissible involutions of `domain`.
pub fn fix_generating_polynomial(domain: &[u64], allowed: SetId) -> Result<IntPolynomial> {
    let n = domain.len();
    let dist = mu_distribution(domain, allowed, DEFAULT_ENUMERATION_CAP)?;
    let mut coeffs = vec![BigInt::default(); n + 1];
    for (i, count) in dist.into_iter().enumerate() {
        coeffs[n - 2 * i] = BigInt::from(count);
    }
    Ok(IntPolynomial::new(coeffs))
}

/// A permutation of `0..k` in one-line notation.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; images.len()];
        for &x in &images {
            if x >= images.len() || std::mem::replace(&mut seen[x], true) {
                return Err(Error::InvalidPermutation(format!("{images:?}")));
            }
        }
        Ok(Permutation { images })
    }

    pub fn identity(k: usize) -> Self {
        Permutation {
            images: (0..k).collect(),
        }
    }

    /// Parses single-digit one-line notation such as `516280374`.
    pub fn from_one_line(s: &str) -> Result<Self> {
        let images = s
            .chars()
            .map(|c| c.to_digit(10).map(|d| d as usize))
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| Error::InvalidPermutation(s.to_string()))?;
        Self::new(images)
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x] = i;
        }
        Permutation { images: inv }
    }

    pub fn is_involution(&self) -> bool {
        self.images
            .iter()
            .enumerate()
            .all(|(i, &x)| self.images[x] == i)
    }

    pub fn inversions(&self) -> usize {
        let v = &self.images;
        (0..v.len())
            .map(|i| v[i + 1..].iter().filter(|&&y| y < v[i]).count())
            .sum()
    }

    pub fn fixed_points_count(&self) -> usize {
        self.images
            .iter()
            .enumerate()
            .filter(|&(i, &x)| i == x)
            .count()
    }

    /// Disjoint cycle notation, e.g. `(0,5)(1)(2,6,3)(4,8)(7)`.
    pub fn cycles(&self) -> String {
        let mut seen = vec![false; self.images.len()];
        let mut out = String::new();
        for start in 0..self.images.len() {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push(x.to_string());
                x = self.images[x];
            }
            out.push('(');
            out.push_str(&cycle.join(","));
            out.push(')');
        }
        out
    }
}

pub fn inversions(perm: &Permutation) -> usize {
    perm.inversions()
}

pub fn fixed_points_count(perm: &Permutation) -> usize {
    perm.fixed_points_count()
}

/// `Σ_σ t^fix(σ) (−1)^inv(σ) Π c_(p+i+σ(i))` summed over all of `S_k`.
///
/// Branches whose partial product vanishes are pruned; the result is still
/// the full permutation sum.
pub fn leibniz_t_det(seq: SequenceId, p: u64, k: usize) -> Result<IntPolynomial> {
    if k > LEIBNIZ_CAP {
        return Err(Error::FactorialCap {
            order: k,
            cap: LEIBNIZ_CAP,
        });
    }
    if k == 0 {
        return Ok(IntPolynomial::one());
    }
    let terms: Vec<i128> = (0..2 * k as u64 - 1)
        .map(|n| seq.term_i64(p + n) as i128)
        .collect();
    // The first row's choice splits the sum into independent parts.
    let partials: Vec<Vec<i128>> = (0..k)
        .into_par_iter()
        .map(|first| {
            let mut acc = vec![0i128; k + 1];
            let c = terms[first];
            if c != 0 {
                let state = LeibnizState {
                    used: 1 << first,
                    odd: false,
                    fix: usize::from(first == 0),
                    product: c,
                };
                leibniz_walk(&terms, k, 1, state, &mut acc);
            }
            acc
        })
        .collect();
    let mut total = vec![0i128; k + 1];
    for part in partials {
        for (t, v) in total.iter_mut().zip(part) {
            *t += v;
        }
    }
    Ok(IntPolynomial::new(
        total.into_iter().map(BigInt::from).collect(),
    ))
}

#[derive(Clone, Copy)]
struct LeibnizState {
    used: u32,
    odd: bool,
    fix: usize,
    product: i128,
}

fn leibniz_walk(terms: &[i128], k: usize, row: usize, state: LeibnizState, acc: &mut [i128]) {
    if row == k {
        acc[state.fix] += if state.odd {
            -state.product
        } else {
            state.product
        };
        return;
    }
    for col in 0..k {
        if state.used & (1 << col) != 0 {
            continue;
        }
        let c = terms[row + col];
        if c == 0 {
            continue;
        }
        // earlier rows holding a larger column form new inversions
        let larger = (state.used >> (col + 1)).count_ones();
        let next = LeibnizState {
            used: state.used | (1 << col),
            odd: state.odd ^ (larger % 2 == 1),
            fix: state.fix + usize::from(row == col),
            product: state.product * c,
        };
        leibniz_walk(terms, k, row + 1, next, acc);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::number_sets::prefix;
    use num_traits::{One, Zero};

    fn n(m: usize) -> Vec<u64> {
        prefix(SetId::N, m).elements
    }

    fn count_by_enumeration(domain: &[u64], k: usize, allowed: SetId) -> BigUint {
        let all = enumerate_involutions(domain, allowed).unwrap();
        BigUint::from(all.iter().filter(|i| i.transposition_count() == k).count())
    }

    #[test]
    fn enumeration_examples() {
        let all = enumerate_involutions(&[0, 1, 2], SetId::J).unwrap();
        let listed: Vec<String> = all.iter().map(|i| i.to_string()).collect();
        assert_eq!(listed, ["(0)(1)(2)", "(0)(1,2)", "(0,2)(1)"]);
        assert!(all.iter().all(|i| !i.transpositions.contains(&(0, 1))));
        let empty = enumerate_involutions(&[], SetId::R).unwrap();
        assert_eq!(empty.len(), 1);
        assert!(empty[0].fixed_points.is_empty() && empty[0].transpositions.is_empty());
        assert_eq!(enumerate_involutions(&[0, 1], SetId::J).unwrap().len(), 1);
    }

    #[test]
    fn involution_shape() {
        for inv in enumerate_involutions(&n(9), SetId::N).unwrap() {
            let mut letters = inv.fixed_points.clone();
            for &(c, d) in &inv.transpositions {
                assert!(c < d);
                letters.extend([c, d]);
            }
            letters.sort_unstable();
            assert_eq!(letters, inv.domain);
            assert_eq!(inv.domain.len(), inv.fix() + 2 * inv.transposition_count());
        }
    }

    #[test]
    fn mu_examples() {
        for m in 0..=14 {
            assert_eq!(mu(&n(m), 0, SetId::J).unwrap(), BigUint::one());
        }
        assert_eq!(mu(&n(3), 1, SetId::J).unwrap(), BigUint::from(2u32));
        assert_eq!(mu(&n(4), 2, SetId::J).unwrap(), BigUint::from(2u32));
        assert_eq!(mu(&n(4), 3, SetId::J).unwrap(), BigUint::zero());
    }

    #[test]
    fn counter_matches_enumerator() {
        for set in SetId::ALL {
            for m in 0..=10 {
                for domain in [
                    n(m),
                    prefix(SetId::P, m).elements,
                    prefix(SetId::Q, m).elements,
                ] {
                    for k in 0..=m / 2 + 1 {
                        assert_eq!(
                            mu(&domain, k, set).unwrap(),
                            count_by_enumeration(&domain, k, set),
                            "{set} {domain:?} {k}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn mu2_examples() {
        for m in 0..=8 {
            let p = prefix(SetId::P, m).elements;
            for k in 0..=m / 2 {
                assert_eq!(
                    mu2(&p, 0, k, SetId::JStar, SetId::L).unwrap(),
                    mu(&p, k, SetId::L).unwrap()
                );
            }
        }
        assert_eq!(
            mu2(&n(2), 1, 0, SetId::JStar, SetId::L).unwrap(),
            BigUint::zero()
        );
        let p4 = prefix(SetId::P, 4).elements;
        assert_eq!(
            mu2(&p4, 1, 0, SetId::JStar, SetId::L).unwrap(),
            BigUint::from(2u32)
        );
    }

    #[test]
    fn mu2_matches_enumeration() {
        for m in 0..=9 {
            let p = prefix(SetId::P, m).elements;
            let table = mu2_table(&p, SetId::JStar, SetId::L, 20).unwrap();
            let all = enumerate_involutions(&p, SetId::N).unwrap();
            for a in 0..=m / 2 {
                for b in 0..=m / 2 {
                    let brute = all
                        .iter()
                        .filter(|inv| {
                            let js = inv
                                .transpositions
                                .iter()
                                .filter(|&&(c, d)| SetId::JStar.contains(c + d))
                                .count();
                            js == a && inv.transposition_count() - js == b
                        })
                        .count();
                    assert_eq!(table.get(a, b), BigUint::from(brute));
                }
            }
        }
    }

    #[test]
    fn overlapping_classes_rejected() {
        assert!(matches!(
            mu2(&n(3), 1, 0, SetId::J, SetId::N),
            Err(Error::OverlappingClasses(_, _))
        ));
    }

    #[test]
    fn enumeration_cap() {
        assert_eq!(
            mu(&n(21), 0, SetId::J),
            Err(Error::EnumerationCap { size: 21, cap: 20 })
        );
        assert!(mu_distribution(&n(24), SetId::J, 24).is_ok());
    }

    #[test]
    fn telephone_numbers() {
        let mut tel = vec![BigUint::one(), BigUint::one()];
        for m in 2..=20usize {
            let next = &tel[m - 1] + &tel[m - 2] * BigUint::from(m - 1);
            tel.push(next);
        }
        for m in 0..=20 {
            let dist = mu_distribution(&n(m), SetId::N, 20).unwrap();
            assert_eq!(dist.iter().sum::<BigUint>(), tel[m]);
        }
        assert_eq!(
            tel[..6].to_vec(),
            [1u32, 1, 2, 4, 10, 26].map(BigUint::from)
        );
    }

    #[test]
    fn fix_polynomial_examples() {
        assert_eq!(
            fix_generating_polynomial(&[], SetId::J).unwrap(),
            IntPolynomial::one()
        );
        assert_eq!(
            fix_generating_polynomial(&n(3), SetId::J).unwrap(),
            IntPolynomial::from_i64(&[0, 2, 0, 1])
        );
        assert_eq!(
            fix_generating_polynomial(&n(1), SetId::J).unwrap(),
            IntPolynomial::from_i64(&[0, 1])
        );
    }

    #[test]
    fn permutation_statistics() {
        let id = Permutation::identity(5);
        assert_eq!((id.inversions(), id.fixed_points_count()), (0, 5));
        let s = Permutation::from_one_line("516280374").unwrap();
        assert_eq!(s.fixed_points_count(), 2);
        assert_eq!(s.cycles(), "(0,5)(1)(2,6,3)(4,8)(7)");
        let rev = Permutation::new(vec![3, 2, 1, 0]).unwrap();
        assert_eq!((inversions(&rev), fixed_points_count(&rev)), (6, 0));
        assert!(Permutation::new(vec![0, 0]).is_err());
        assert!(Permutation::from_one_line("01x").is_err());
    }

    fn all_permutations(k: usize) -> Vec<Permutation> {
        fn rec(k: usize, cur: &mut Vec<usize>, out: &mut Vec<Permutation>) {
            if cur.len() == k {
                out.push(Permutation::new(cur.clone()).unwrap());
                return;
            }
            for v in 0..k {
                if !cur.contains(&v) {
                    cur.push(v);
                    rec(k, cur, out);
                    cur.pop();
                }
            }
        }
        let mut out = Vec::new();
        rec(k, &mut Vec::new(), &mut out);
        out
    }

    #[test]
    fn inverse_pairs_share_statistics() {
        for k in 0..=6 {
            for s in all_permutations(k) {
                let inv = s.inverse();
                assert_eq!(s.is_involution(), inv == s);
                assert_eq!(s.inversions(), inv.inversions());
                assert_eq!(s.fixed_points_count(), inv.fixed_points_count());
            }
        }
    }

    // Plain sum over every permutation with no pruning or incremental
    // statistics.
    fn naive_leibniz(seq: SequenceId, p: u64, k: usize) -> IntPolynomial {
        let mut acc = vec![BigInt::zero(); k + 1];
        for s in all_permutations(k) {
            let mut prod = BigInt::one();
            for (i, &x) in s.images().iter().enumerate() {
                prod *= seq.term(p + (i + x) as u64);
            }
            if s.inversions() % 2 == 1 {
                prod = -prod;
            }
            acc[s.fixed_points_count()] += prod;
        }
        IntPolynomial::new(acc)
    }

    #[test]
    fn leibniz_examples() {
        let d = SequenceId::PeriodDoubling;
        assert_eq!(
            leibniz_t_det(d, 0, 3).unwrap(),
            IntPolynomial::from_i64(&[0, -2, 0, 1])
        );
        assert_eq!(leibniz_t_det(d, 0, 0).unwrap(), IntPolynomial::one());
        assert_eq!(
            leibniz_t_det(SequenceId::Paperfolding, 0, 4).unwrap(),
            IntPolynomial::from_i64(&[1, 2, -1])
        );
        assert_eq!(
            leibniz_t_det(d, 0, 11),
            Err(Error::FactorialCap { order: 11, cap: 10 })
        );
    }

    #[test]
    fn pruned_sum_matches_naive_sum() {
        for seq in SequenceId::ALL {
            for p in 0..=2 {
                for k in 0..=6 {
                    assert_eq!(leibniz_t_det(seq, p, k).unwrap(), naive_leibniz(seq, p, k));
                }
            }
        }
    }

    #[test]
    fn involution_congruence() {
        for k in 0..=9 {
            let full = leibniz_t_det(SequenceId::PeriodDoubling, 0, k).unwrap();
            let inv = fix_generating_polynomial(&n(k), SetId::J).unwrap();
            assert_eq!(full.mod2(), inv.mod2(), "k={k}");
        }
    }

    #[test]
    fn exact_product_split() {
        for half in 0..=7 {
            let n2 = mu_distribution(&n(2 * half), SetId::JStar, 20).unwrap();
            let p = mu_distribution(&prefix(SetId::P, half).elements, SetId::JStar, 20).unwrap();
            let q = mu_distribution(&prefix(SetId::Q, half).elements, SetId::JStar, 20).unwrap();
            for (k, total) in n2.iter().enumerate() {
                let conv: BigUint = (0..=k)
                    .map(|i| {
                        p.get(i).cloned().unwrap_or_default()
                            * q.get(k - i).cloned().unwrap_or_default()
                    })
                    .sum();
                assert_eq!(*total, conv);
            }
        }
    }
}
