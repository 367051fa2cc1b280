//! Hankel windows and their determinants.
//!
//! Integer determinants use Bareiss fraction-free elimination. The same
//! kernel runs over `Z[t]` and `GF(2)[t]` through [`ExactRing`], so
//! t-Hankel determinants are available three ways: evaluation at integer
//! nodes followed by interpolation (the default), direct elimination over
//! `Z[t]`, and elimination over `GF(2)[t]` for residues mod 2.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::polynomial::{interpolate, Gf2Polynomial, IntPolynomial};
use crate::sequences::SequenceId;

/// An integral domain in which Bareiss' divisions are exact.
pub trait ExactRing: Clone + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn mul(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    /// `self / rhs`, where the caller guarantees the division is exact.
    fn div_exact(&self, rhs: &Self) -> Self;
}

impl ExactRing for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn div_exact(&self, rhs: &Self) -> Self {
        debug_assert!(Zero::is_zero(&(self % rhs)), "inexact Bareiss division");
        self / rhs
    }
}

impl ExactRing for IntPolynomial {
    fn zero() -> Self {
        IntPolynomial::zero()
    }
    fn one() -> Self {
        IntPolynomial::one()
    }
    fn is_zero(&self) -> bool {
        IntPolynomial::is_zero(self)
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn div_exact(&self, rhs: &Self) -> Self {
        IntPolynomial::div_exact(self, rhs).expect("inexact Bareiss division over Z[t]")
    }
}

impl ExactRing for Gf2Polynomial {
    fn zero() -> Self {
        Gf2Polynomial::zero()
    }
    fn one() -> Self {
        Gf2Polynomial::one()
    }
    fn is_zero(&self) -> bool {
        Gf2Polynomial::is_zero(self)
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn neg(&self) -> Self {
        self.clone()
    }
    fn div_exact(&self, rhs: &Self) -> Self {
        Gf2Polynomial::div_exact(self, rhs).expect("inexact Bareiss division over GF(2)[t]")
    }
}

// Rows at or above this count are updated in parallel.
const PARALLEL_ROWS: usize = 24;

/// One Bareiss step: eliminate column `k` below the pivot row.
fn eliminate<R: ExactRing>(m: &mut [Vec<R>], k: usize, prev: &R) {
    let (top, bottom) = m.split_at_mut(k + 1);
    let pivot_row = &top[k];
    let pivot = &pivot_row[k];
    let n = pivot_row.len();
    let update = |row: &mut Vec<R>| {
        let lead = row[k].clone();
        for j in k + 1..n {
            let scaled = row[j].mul(pivot);
            let value = if lead.is_zero() {
                scaled
            } else {
                scaled.sub(&lead.mul(&pivot_row[j]))
            };
            row[j] = value.div_exact(prev);
        }
        row[k] = R::zero();
    };
    if bottom.len() >= PARALLEL_ROWS {
        bottom.par_iter_mut().for_each(update);
    } else {
        bottom.iter_mut().for_each(update);
    }
}

/// Determinant by fraction-free elimination with row exchanges.
pub fn bareiss_det<R: ExactRing>(mut m: Vec<Vec<R>>) -> R {
    let n = m.len();
    if n == 0 {
        return R::one();
    }
    let mut negate = false;
    let mut prev = R::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    negate = !negate;
                }
                None => return R::zero(),
            }
        }
        eliminate(&mut m, k, &prev);
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if negate {
        det.neg()
    } else {
        det
    }
}

/// Leading principal minors of orders `1..=n`, from a single elimination
/// pass without row exchanges.
///
/// The pass stops at the first vanishing minor, which is included; the
/// returned vector is then shorter than `n`.
pub fn leading_minors<R: ExactRing>(mut m: Vec<Vec<R>>) -> Vec<R> {
    let n = m.len();
    let mut minors = Vec::with_capacity(n);
    let mut prev = R::one();
    for k in 0..n {
        let pivot = m[k][k].clone();
        minors.push(pivot.clone());
        if pivot.is_zero() || k + 1 == n {
            break;
        }
        eliminate(&mut m, k, &prev);
        prev = pivot;
    }
    minors
}

/// Determinants of the leading `k × k` blocks for `k = 0..=n`. Orders past
/// a vanishing leading minor are recomputed one at a time with pivoting.
fn nested_dets<R: ExactRing>(full: Vec<Vec<R>>) -> Vec<R> {
    let n = full.len();
    let mut dets = vec![R::one()];
    dets.extend(leading_minors(full.clone()));
    for k in dets.len()..=n {
        let block = full[..k].iter().map(|row| row[..k].to_vec()).collect();
        dets.push(bareiss_det(block));
    }
    dets
}

/// The `k × k` window `c_(p+i+j)` of a sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HankelWindow {
    pub seq: SequenceId,
    pub offset: u64,
    pub order: usize,
    entries: Vec<Vec<BigInt>>,
}

impl HankelWindow {
    pub fn new(seq: SequenceId, offset: u64, order: usize) -> Self {
        let terms: Vec<BigInt> = (0..(2 * order).saturating_sub(1) as u64)
            .map(|n| seq.term(offset + n))
            .collect();
        let entries = (0..order).map(|i| terms[i..i + order].to_vec()).collect();
        HankelWindow {
            seq,
            offset,
            order,
            entries,
        }
    }

    pub fn entry(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i][j]
    }

    pub fn entries(&self) -> &[Vec<BigInt>] {
        &self.entries
    }

    /// The window with every diagonal entry multiplied by `t = node`.
    pub fn at_node(&self, node: &BigInt) -> Vec<Vec<BigInt>> {
        let mut m = self.entries.clone();
        for (i, row) in m.iter_mut().enumerate() {
            row[i] *= node;
        }
        m
    }

    /// The window over `Z[t]`.
    pub fn over_int_polynomials(&self) -> Vec<Vec<IntPolynomial>> {
        self.entries
            .iter()
            .enumerate()
            .map(|(i, row)| {
                row.iter()
                    .enumerate()
                    .map(|(j, c)| IntPolynomial::monomial(usize::from(i == j), c.clone()))
                    .collect()
            })
            .collect()
    }

    /// The window over `GF(2)[t]`.
    pub fn over_gf2_polynomials(&self) -> Vec<Vec<Gf2Polynomial>> {
        self.entries
            .iter()
            .enumerate()
            .map(|(i, row)| {
                row.iter()
                    .enumerate()
                    .map(|(j, c)| {
                        if c.bit(0) {
                            Gf2Polynomial::monomial(usize::from(i == j))
                        } else {
                            Gf2Polynomial::zero()
                        }
                    })
                    .collect()
            })
            .collect()
    }

    /// Rows of the window reduced mod 2, 64 columns per word.
    pub fn packed_mod2(&self) -> Vec<Vec<u64>> {
        let words = self.order.div_ceil(64);
        self.entries
            .iter()
            .map(|row| {
                let mut packed = vec![0u64; words];
                for (j, c) in row.iter().enumerate() {
                    if c.bit(0) {
                        packed[j / 64] |= 1 << (j % 64);
                    }
                }
                packed
            })
            .collect()
    }
}

/// Interpolation nodes `0, 1, −1, 2, −2, …`.
pub fn evaluation_nodes(count: usize) -> Vec<i64> {
    (0..count as i64)
        .map(|i| if i % 2 == 1 { i / 2 + 1 } else { -(i / 2) })
        .collect()
}

/// `H_k^p` of a sequence; the empty determinant is 1.
pub fn hankel_det(seq: SequenceId, p: u64, k: usize) -> BigInt {
    bareiss_det(HankelWindow::new(seq, p, k).entries)
}

/// `H_0^p, …, H_kmax^p` from one elimination over the largest window.
pub fn hankel_dets(seq: SequenceId, p: u64, kmax: usize) -> Vec<BigInt> {
    nested_dets(HankelWindow::new(seq, p, kmax).entries)
}

/// `H_k^p(t)` by evaluation at `k + 1` integer nodes and interpolation.
pub fn t_hankel_det(seq: SequenceId, p: u64, k: usize) -> IntPolynomial {
    let window = HankelWindow::new(seq, p, k);
    let points: Vec<(i64, BigInt)> = evaluation_nodes(k + 1)
        .into_par_iter()
        .map(|x| (x, bareiss_det(window.at_node(&BigInt::from(x)))))
        .collect();
    interpolate(&points).expect("a degree-k polynomial is determined by k + 1 nodes")
}

/// `H_k^p(t)` by fraction-free elimination directly over `Z[t]`.
pub fn t_hankel_det_elimination(seq: SequenceId, p: u64, k: usize) -> IntPolynomial {
    bareiss_det(HankelWindow::new(seq, p, k).over_int_polynomials())
}

/// `H_k^p(t) mod 2`, by elimination over `GF(2)[t]`.
pub fn t_hankel_det_mod2(seq: SequenceId, p: u64, k: usize) -> Gf2Polynomial {
    bareiss_det(HankelWindow::new(seq, p, k).over_gf2_polynomials())
}

/// `H_k^p(t) mod 2` for every `k ≤ kmax`.
pub fn t_hankel_dets_mod2(seq: SequenceId, p: u64, kmax: usize) -> Vec<Gf2Polynomial> {
    nested_dets(HankelWindow::new(seq, p, kmax).over_gf2_polynomials())
}

/// Determinant over GF(2) of bit-packed rows of an `n × n` matrix.
pub fn gf2_det(mut rows: Vec<Vec<u64>>) -> bool {
    let n = rows.len();
    for col in 0..n {
        let (w, bit) = (col / 64, 1u64 << (col % 64));
        let Some(pivot) = (col..n).find(|&r| rows[r][w] & bit != 0) else {
            return false;
        };
        rows.swap(col, pivot);
        let (top, bottom) = rows.split_at_mut(col + 1);
        let pivot_row = &top[col];
        for row in bottom.iter_mut().filter(|row| row[w] & bit != 0) {
            for (a, b) in row[w..].iter_mut().zip(&pivot_row[w..]) {
                *a ^= b;
            }
        }
    }
    true
}

/// `H_k^p mod 2`, on the bit-packed window.
pub fn hankel_det_mod2(seq: SequenceId, p: u64, k: usize) -> bool {
    gf2_det(HankelWindow::new(seq, p, k).packed_mod2())
}
