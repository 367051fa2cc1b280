//! Bounded verifiers, one per statement.
//!
//! Each verifier scans every instance within its bounds in a fixed order
//! and either passes or reports the first counterexample it met. Every
//! check compares two independently computed quantities: a determinant
//! pipeline against a permutation or involution sum, a closed-form
//! membership test against the defining parameterization, an exact count
//! against a stated parity, and so on.

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::One;
use rayon::prelude::*;
use serde::Serialize;

use crate::congruence::{binom_parity, odd_double_factorial, PascalTable};
use crate::error::{Error, Result};
use crate::hankel::{hankel_det_mod2, hankel_dets, t_hankel_det, t_hankel_dets_mod2};
use crate::involutions::{
    enumerate_involutions, fix_generating_polynomial, leibniz_t_det, mu2_table, mu_distribution,
    LEIBNIZ_CAP,
};
use crate::number_sets::{defining_indicator, prefix, SetId};
use crate::polynomial::{Gf2Polynomial, IntPolynomial};
use crate::sequences::{series_oracle, SequenceId};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ClaimId {
    /// `H_k(d)` is odd.
    Apww,
    /// `H_k(d, t) ≡ t^k (mod 2)`.
    MainTk,
    /// `H_k(r) mod 2` is periodic with period `1,1,1,0,0,1,0,0,1,1`.
    Gww,
    /// `deg H_k(r, t) ≤ 3`.
    PfDeg3,
    /// `μ(N|m, 0, J) = 1` and `μ(N|m, k, J)` is even for `k ≥ 1`.
    Key,
    /// `μ(N|m, k, J) = μ(P|m, k, L)`.
    NpqA,
    /// `μ(P|m, k, J*) = μ(Q|m, k, J*)`.
    NpqB,
    /// `μ(N|2n, k, J*)` is even for odd `k` and `≡ μ(P|n, k/2, J*)` otherwise.
    Halving,
    /// `Σ_i μ(P|m, i, J*) C(m − 2i, 2k − 2i) ≡ μ(P|m, k, L)`.
    SumP,
    /// `μ(N|2n, k, J*) = Σ_(i+j=k) μ(P|n, i, J*) μ(Q|n, j, J*)`.
    Mupp,
    /// The marked-involution double count.
    Marked,
    /// `Σ_(i+j=k) C(n, 2i) C(n, 2j)` is even for odd `k`, `≡ C(n, k)` otherwise.
    Bino1,
    /// `Σ_(i+j=k) C(n, 2i) C(m, 2j) ≡ C(n + m, 2k)` when `n + m` is odd.
    Bino2,
    /// `C(2a, 2b + 1)` is even.
    LucasFact,
    /// `d_k` is odd iff `k ∈ J`.
    DkJ,
    /// `r_k = 1` iff `k ∈ R`.
    RkR,
    /// An even `m` lies in `R` iff `m ≡ 0 (mod 4)`.
    REven4,
    /// The permutation sum equals the determinant, and only involutions
    /// survive mod 2.
    InvDet,
    /// `H_k(G_00)` is odd.
    CoonsOdd,
    /// The period-doubling t-Hankel table for `k ≤ 8`.
    TableD,
    /// The paperfolding t-Hankel table for `k ≤ 9`.
    TableR,
}

impl ClaimId {
    pub const ALL: [ClaimId; 21] = [
        ClaimId::Apww,
        ClaimId::MainTk,
        ClaimId::Gww,
        ClaimId::PfDeg3,
        ClaimId::Key,
        ClaimId::NpqA,
        ClaimId::NpqB,
        ClaimId::Halving,
        ClaimId::SumP,
        ClaimId::Mupp,
        ClaimId::Marked,
        ClaimId::Bino1,
        ClaimId::Bino2,
        ClaimId::LucasFact,
        ClaimId::DkJ,
        ClaimId::RkR,
        ClaimId::REven4,
        ClaimId::InvDet,
        ClaimId::CoonsOdd,
        ClaimId::TableD,
        ClaimId::TableR,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ClaimId::Apww => "APWW",
            ClaimId::MainTk => "MAIN_TK",
            ClaimId::Gww => "GWW",
            ClaimId::PfDeg3 => "PF_DEG3",
            ClaimId::Key => "KEY",
            ClaimId::NpqA => "NPQ_A",
            ClaimId::NpqB => "NPQ_B",
            ClaimId::Halving => "HALVING",
            ClaimId::SumP => "SUMP",
            ClaimId::Mupp => "MUPP",
            ClaimId::Marked => "MARKED",
            ClaimId::Bino1 => "BINO1",
            ClaimId::Bino2 => "BINO2",
            ClaimId::LucasFact => "LUCAS_FACT",
            ClaimId::DkJ => "DK_J",
            ClaimId::RkR => "RK_R",
            ClaimId::REven4 => "R_EVEN4",
            ClaimId::InvDet => "INV_DET",
            ClaimId::CoonsOdd => "COONS_ODD",
            ClaimId::TableD => "TABLE_D",
            ClaimId::TableR => "TABLE_R",
        }
    }

    /// Names of the bounds this claim reads.
    pub fn bound_names(self) -> &'static [&'static str] {
        match self {
            ClaimId::Apww | ClaimId::MainTk | ClaimId::Gww | ClaimId::CoonsOdd => {
                &["det_k", "mod2_k"]
            }
            ClaimId::PfDeg3 => &["det_k", "oracle_k"],
            ClaimId::Key
            | ClaimId::NpqA
            | ClaimId::NpqB
            | ClaimId::Halving
            | ClaimId::SumP
            | ClaimId::Mupp => &["set_m"],
            ClaimId::Marked => &["set_m", "marked_k"],
            ClaimId::Bino1 | ClaimId::Bino2 => &["binom_n"],
            ClaimId::LucasFact => &["binom_n", "parity_n"],
            ClaimId::DkJ | ClaimId::RkR | ClaimId::REven4 => &["prefix"],
            ClaimId::InvDet => &["det_k", "oracle_k", "oracle_p"],
            ClaimId::TableD | ClaimId::TableR => &["det_k"],
        }
    }
}

impl fmt::Display for ClaimId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ClaimId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let wanted = s.to_ascii_uppercase().replace('-', "_");
        ClaimId::ALL
            .into_iter()
            .find(|c| c.name() == wanted)
            .ok_or_else(|| Error::UnknownClaim(s.to_string()))
    }
}

impl Serialize for ClaimId {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Profile {
    Quick,
    Thorough,
}

impl FromStr for Profile {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "quick" => Ok(Profile::Quick),
            "thorough" => Ok(Profile::Thorough),
            other => Err(format!(
                "unknown profile `{other}` (expected quick or thorough)"
            )),
        }
    }
}

/// Inclusive limits for the verifiers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Bounds {
    /// Largest order for exact integer and polynomial determinants.
    pub det_k: u64,
    /// Largest order for the native mod-2 determinant paths.
    pub mod2_k: u64,
    /// Largest order for the permutation-sum oracle.
    pub oracle_k: u64,
    /// Largest window offset for the permutation-sum oracle.
    pub oracle_p: u64,
    /// Largest involution domain.
    pub set_m: u64,
    /// Largest transposition count in the marked-involution identity.
    pub marked_k: u64,
    /// Largest `n`, `m`, `k` in the binomial parity identities.
    pub binom_n: u64,
    /// Largest row for the binomial parity cross-check.
    pub parity_n: u64,
    /// Sequence and set prefix length.
    pub prefix: u64,
}

impl Bounds {
    pub const CAPS: Bounds = Bounds {
        det_k: 400,
        mod2_k: 1024,
        oracle_k: LEIBNIZ_CAP as u64,
        oracle_p: 64,
        set_m: 20,
        marked_k: 10,
        binom_n: 256,
        parity_n: 2048,
        prefix: 1 << 22,
    };

    pub fn quick() -> Self {
        Bounds {
            det_k: 8,
            mod2_k: 16,
            oracle_k: 8,
            oracle_p: 2,
            set_m: 10,
            marked_k: 3,
            binom_n: 32,
            parity_n: 128,
            prefix: 1 << 12,
        }
    }

    pub fn thorough() -> Self {
        Bounds {
            det_k: 20,
            mod2_k: 200,
            oracle_k: 9,
            oracle_p: 2,
            set_m: 14,
            marked_k: 3,
            binom_n: 64,
            parity_n: 512,
            prefix: 1 << 16,
        }
    }

    pub fn for_profile(profile: Profile) -> Self {
        match profile {
            Profile::Quick => Self::quick(),
            Profile::Thorough => Self::thorough(),
        }
    }

    /// All bounds zero: every verifier passes vacuously or on trivial
    /// instances.
    pub fn empty() -> Self {
        Bounds {
            det_k: 0,
            mod2_k: 0,
            oracle_k: 0,
            oracle_p: 0,
            set_m: 0,
            marked_k: 0,
            binom_n: 0,
            parity_n: 0,
            prefix: 0,
        }
    }

    pub fn get(&self, name: &str) -> Option<u64> {
        Some(match name {
            "det_k" => self.det_k,
            "mod2_k" => self.mod2_k,
            "oracle_k" => self.oracle_k,
            "oracle_p" => self.oracle_p,
            "set_m" => self.set_m,
            "marked_k" => self.marked_k,
            "binom_n" => self.binom_n,
            "parity_n" => self.parity_n,
            "prefix" => self.prefix,
            _ => return None,
        })
    }

    pub fn set(&mut self, name: &str, value: u64) -> bool {
        let slot = match name {
            "det_k" => &mut self.det_k,
            "mod2_k" => &mut self.mod2_k,
            "oracle_k" => &mut self.oracle_k,
            "oracle_p" => &mut self.oracle_p,
            "set_m" => &mut self.set_m,
            "marked_k" => &mut self.marked_k,
            "binom_n" => &mut self.binom_n,
            "parity_n" => &mut self.parity_n,
            "prefix" => &mut self.prefix,
            _ => return false,
        };
        *slot = value;
        true
    }

    pub fn check_caps(&self) -> Result<()> {
        const NAMES: [&str; 9] = [
            "det_k", "mod2_k", "oracle_k", "oracle_p", "set_m", "marked_k", "binom_n", "parity_n",
            "prefix",
        ];
        for name in NAMES {
            let (value, cap) = (self.get(name).unwrap(), Self::CAPS.get(name).unwrap());
            if value > cap {
                return Err(Error::BoundExceeded { name, value, cap });
            }
        }
        Ok(())
    }
}

impl Default for Bounds {
    fn default() -> Self {
        Self::quick()
    }
}

/// A concrete failing instance: where it happened and both sides.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub at: Vec<(String, i64)>,
    pub expected: String,
    pub found: String,
}

impl Counterexample {
    fn new(at: &[(&str, i64)], expected: impl fmt::Display, found: impl fmt::Display) -> Self {
        Counterexample {
            at: at.iter().map(|&(n, v)| (n.to_string(), v)).collect(),
            expected: expected.to_string(),
            found: found.to_string(),
        }
    }
}

impl fmt::Display for Counterexample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let at: Vec<String> = self.at.iter().map(|(n, v)| format!("{n}={v}")).collect();
        write!(
            f,
            "at {}: expected {}, found {}",
            at.join(" "),
            self.expected,
            self.found
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    Pass,
    Fail,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyReport {
    pub claim: ClaimId,
    pub bounds: Vec<(&'static str, u64)>,
    pub outcome: Outcome,
    /// Number of instances compared.
    pub checked: u64,
    pub counterexample: Option<Counterexample>,
    pub elapsed: Duration,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.outcome == Outcome::Pass
    }

    pub fn bounds_text(&self) -> String {
        self.bounds
            .iter()
            .map(|(n, v)| format!("{n}={v}"))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = if self.passed() { "PASS" } else { "FAIL" };
        write!(
            f,
            "{tag} {} {} checked={}",
            self.claim,
            self.bounds_text(),
            self.checked
        )?;
        if let Some(ce) = &self.counterexample {
            write!(f, " {ce}")?;
        }
        Ok(())
    }
}

type Check = std::result::Result<u64, Counterexample>;

macro_rules! ensure {
    ($cond:expr, $at:expr, $expected:expr, $found:expr) => {
        if !$cond {
            return Err(Counterexample::new($at, $expected, $found));
        }
    };
}

/// Runs one verifier over `bounds`.
pub fn verify(claim: ClaimId, bounds: &Bounds) -> Result<VerifyReport> {
    bounds.check_caps()?;
    let start = Instant::now();
    let result = match claim {
        ClaimId::Apww => check_apww(bounds),
        ClaimId::MainTk => check_main_tk(bounds),
        ClaimId::Gww => check_gww(bounds),
        ClaimId::PfDeg3 => check_pf_deg3(bounds)?,
        ClaimId::Key => check_key(bounds)?,
        ClaimId::NpqA => check_npq(bounds, (SetId::N, SetId::J), (SetId::P, SetId::L))?,
        ClaimId::NpqB => check_npq(bounds, (SetId::P, SetId::JStar), (SetId::Q, SetId::JStar))?,
        ClaimId::Halving => check_halving(bounds)?,
        ClaimId::SumP => check_sump(bounds)?,
        ClaimId::Mupp => check_mupp(bounds)?,
        ClaimId::Marked => check_marked(bounds)?,
        ClaimId::Bino1 => check_bino1(bounds),
        ClaimId::Bino2 => check_bino2(bounds),
        ClaimId::LucasFact => check_lucas(bounds),
        ClaimId::DkJ => check_indicator(bounds, SequenceId::PeriodDoubling, SetId::J),
        ClaimId::RkR => check_indicator(bounds, SequenceId::Paperfolding, SetId::R),
        ClaimId::REven4 => check_r_even(bounds),
        ClaimId::InvDet => check_inv_det(bounds)?,
        ClaimId::CoonsOdd => check_coons(bounds),
        ClaimId::TableD => check_table(bounds, SequenceId::PeriodDoubling, &TABLE_D),
        ClaimId::TableR => check_table(bounds, SequenceId::Paperfolding, &TABLE_R),
    };
    let (outcome, checked, counterexample) = match result {
        Ok(n) => (Outcome::Pass, n, None),
        Err(ce) => (Outcome::Fail, 0, Some(ce)),
    };
    Ok(VerifyReport {
        claim,
        bounds: claim
            .bound_names()
            .iter()
            .map(|&n| (n, bounds.get(n).unwrap()))
            .collect(),
        outcome,
        checked,
        counterexample,
        elapsed: start.elapsed(),
    })
}

/// Runs every claim; reports come back in [`ClaimId::ALL`] order.
pub fn verify_all(bounds: &Bounds) -> Result<Vec<VerifyReport>> {
    bounds.check_caps()?;
    ClaimId::ALL
        .par_iter()
        .map(|&c| verify(c, bounds))
        .collect()
}

pub fn verify_profile(profile: Profile) -> Result<Vec<VerifyReport>> {
    verify_all(&Bounds::for_profile(profile))
}

fn k_(k: usize) -> [(&'static str, i64); 1] {
    [("k", k as i64)]
}

fn check_apww(b: &Bounds) -> Check {
    let mut checked = 0;
    let dets = hankel_dets(SequenceId::PeriodDoubling, 0, b.det_k as usize);
    for (k, det) in dets.iter().enumerate().skip(1) {
        ensure!(det.is_odd(), &k_(k), "odd H_k(d)", det);
        checked += 1;
    }
    for k in 1..=b.mod2_k as usize {
        let bit = hankel_det_mod2(SequenceId::PeriodDoubling, 0, k);
        ensure!(bit, &k_(k), "det over GF(2) = 1", "0");
        checked += 1;
    }
    Ok(checked)
}

fn check_main_tk(b: &Bounds) -> Check {
    let mut checked = 0;
    for k in 1..=b.det_k as usize {
        let poly = t_hankel_det(SequenceId::PeriodDoubling, 0, k);
        ensure!(
            poly.degree() == Some(k),
            &k_(k),
            format!("degree {k}"),
            poly.pretty()
        );
        let residue = poly.mod2();
        ensure!(
            residue == Gf2Polynomial::monomial(k),
            &k_(k),
            format!("t^{k} mod 2"),
            residue.pretty()
        );
        checked += 1;
    }
    let native = t_hankel_dets_mod2(SequenceId::PeriodDoubling, 0, b.mod2_k as usize);
    for (k, residue) in native.iter().enumerate().skip(1) {
        ensure!(
            *residue == Gf2Polynomial::monomial(k),
            &k_(k),
            format!("t^{k} over GF(2)[t]"),
            residue.pretty()
        );
        checked += 1;
    }
    Ok(checked)
}

pub const GWW_PERIOD: [bool; 10] = [
    true, true, true, false, false, true, false, false, true, true,
];

fn check_gww(b: &Bounds) -> Check {
    let mut checked = 0;
    let dets = hankel_dets(SequenceId::Paperfolding, 0, b.det_k as usize);
    for (k, det) in dets.iter().enumerate() {
        let expected = GWW_PERIOD[k % 10];
        ensure!(det.is_odd() == expected, &k_(k), u8::from(expected), det);
        checked += 1;
    }
    for k in 0..=b.mod2_k as usize {
        let expected = GWW_PERIOD[k % 10];
        let bit = hankel_det_mod2(SequenceId::Paperfolding, 0, k);
        ensure!(bit == expected, &k_(k), u8::from(expected), u8::from(bit));
        checked += 1;
    }
    Ok(checked)
}

fn check_pf_deg3(b: &Bounds) -> Result<Check> {
    let mut checked = 0;
    for k in 1..=b.det_k as usize {
        let poly = t_hankel_det(SequenceId::Paperfolding, 0, k);
        if poly.degree().unwrap_or(0) > 3 {
            return Ok(Err(Counterexample::new(
                &k_(k),
                "degree <= 3",
                poly.pretty(),
            )));
        }
        checked += 1;
    }
    // The permutation sum must lose every term with four or more fixed
    // points to sign cancellation.
    for k in 1..=b.oracle_k as usize {
        let full = leibniz_t_det(SequenceId::Paperfolding, 0, k)?;
        let high: Vec<BigInt> = full.coeffs().iter().skip(4).cloned().collect();
        if high.iter().any(|c| *c != BigInt::default()) {
            return Ok(Err(Counterexample::new(
                &k_(k),
                "vanishing permutation sum over fix >= 4",
                full.pretty(),
            )));
        }
        checked += 1;
    }
    Ok(Ok(checked))
}

fn n_prefix(m: u64) -> Vec<u64> {
    prefix(SetId::N, m as usize).elements
}

fn mu_dist(set: SetId, m: u64, allowed: SetId) -> Result<Vec<BigUint>> {
    mu_distribution(
        &prefix(set, m as usize).elements,
        allowed,
        Bounds::CAPS.set_m as usize,
    )
}

fn entry(dist: &[BigUint], k: usize) -> BigUint {
    dist.get(k).cloned().unwrap_or_default()
}

fn check_key(b: &Bounds) -> Result<Check> {
    let mut checked = 0;
    for m in 1..=b.set_m {
        let dist = mu_dist(SetId::N, m, SetId::J)?;
        let at = |k: usize| [("m", m as i64), ("k", k as i64)];
        if !dist[0].is_one() {
            return Ok(Err(Counterexample::new(&at(0), 1, &dist[0])));
        }
        for (k, count) in dist.iter().enumerate().skip(1) {
            if count.bit(0) {
                return Ok(Err(Counterexample::new(&at(k), "even", count)));
            }
        }
        // Small domains are also counted by materializing each involution.
        if m <= 10 {
            let all = enumerate_involutions(&n_prefix(m), SetId::J)?;
            for (k, count) in dist.iter().enumerate() {
                let listed = all.iter().filter(|i| i.transposition_count() == k).count();
                if BigUint::from(listed) != *count {
                    return Ok(Err(Counterexample::new(&at(k), listed, count)));
                }
            }
        }
        checked += dist.len() as u64;
    }
    Ok(Ok(checked))
}

fn check_npq(b: &Bounds, left: (SetId, SetId), right: (SetId, SetId)) -> Result<Check> {
    let mut checked = 0;
    for m in 1..=b.set_m {
        let lhs = mu_dist(left.0, m, left.1)?;
        let rhs = mu_dist(right.0, m, right.1)?;
        for k in 0..=(m as usize / 2) {
            let (l, r) = (entry(&lhs, k), entry(&rhs, k));
            if l != r {
                return Ok(Err(Counterexample::new(
                    &[("m", m as i64), ("k", k as i64)],
                    r,
                    l,
                )));
            }
            checked += 1;
        }
    }
    Ok(Ok(checked))
}

fn check_halving(b: &Bounds) -> Result<Check> {
    let mut checked = 0;
    for n in 1..=b.set_m / 2 {
        let full = mu_dist(SetId::N, 2 * n, SetId::JStar)?;
        let half = mu_dist(SetId::P, n, SetId::JStar)?;
        for k in 0..=n as usize {
            let lhs = entry(&full, k).bit(0);
            let rhs = k % 2 == 0 && entry(&half, k / 2).bit(0);
            if lhs != rhs {
                return Ok(Err(Counterexample::new(
                    &[("n", n as i64), ("k", k as i64)],
                    format!("parity {}", u8::from(rhs)),
                    entry(&full, k),
                )));
            }
            checked += 1;
        }
    }
    Ok(Ok(checked))
}

fn check_sump(b: &Bounds) -> Result<Check> {
    let mut checked = 0;
    let pascal = PascalTable::new(b.set_m as usize);
    for m in 1..=b.set_m {
        let jstar = mu_dist(SetId::P, m, SetId::JStar)?;
        let l = mu_dist(SetId::P, m, SetId::L)?;
        for k in 1..=(m as usize / 2) {
            let lhs: BigUint = (0..=k)
                .filter(|&i| 2 * i <= m as usize)
                .map(|i| entry(&jstar, i) * pascal.get(m as usize - 2 * i, 2 * (k - i) as i64))
                .sum();
            let rhs = entry(&l, k);
            if lhs.bit(0) != rhs.bit(0) {
                return Ok(Err(Counterexample::new(
                    &[("m", m as i64), ("k", k as i64)],
                    format!("parity of {rhs}"),
                    lhs,
                )));
            }
            checked += 1;
        }
    }
    Ok(Ok(checked))
}

fn check_mupp(b: &Bounds) -> Result<Check> {
    let mut checked = 0;
    for n in 0..=b.set_m / 2 {
        let full = mu_dist(SetId::N, 2 * n, SetId::JStar)?;
        let p = mu_dist(SetId::P, n, SetId::JStar)?;
        let q = mu_dist(SetId::Q, n, SetId::JStar)?;
        for k in 0..=n as usize {
            let conv: BigUint = (0..=k).map(|i| entry(&p, i) * entry(&q, k - i)).sum();
            if conv != entry(&full, k) {
                return Ok(Err(Counterexample::new(
                    &[("n", n as i64), ("k", k as i64)],
                    conv,
                    entry(&full, k),
                )));
            }
            checked += 1;
        }
    }
    Ok(Ok(checked))
}

fn check_marked(b: &Bounds) -> Result<Check> {
    let mut checked = 0;
    let pascal = PascalTable::new((b.set_m.max(b.marked_k)) as usize);
    for m in 0..=b.set_m {
        let domain = prefix(SetId::P, m as usize).elements;
        let table = mu2_table(&domain, SetId::JStar, SetId::L, Bounds::CAPS.set_m as usize)?;
        let jstar = mu_dist(SetId::P, m, SetId::JStar)?;
        for k in 0..=b.marked_k as usize {
            for i in 0..=k {
                let by_colouring: BigUint = (i..=k)
                    .map(|j| pascal.get(j, i as i64) * table.get(j, k - j))
                    .sum();
                let by_extension = if 2 * i > m as usize {
                    BigUint::default()
                } else {
                    entry(&jstar, i)
                        * pascal.get(m as usize - 2 * i, 2 * (k - i) as i64)
                        * odd_double_factorial((k - i) as u64)
                };
                if by_colouring != by_extension {
                    return Ok(Err(Counterexample::new(
                        &[("m", m as i64), ("k", k as i64), ("i", i as i64)],
                        by_extension,
                        by_colouring,
                    )));
                }
                checked += 1;
            }
        }
    }
    Ok(Ok(checked))
}

// Parity of Σ_(i+j=k) C(a, 2i) C(c, 2j) from the exact Pascal rows.
fn even_pair_sum_parity(pascal: &PascalTable, a: usize, c: usize, k: usize) -> bool {
    (0..=k).fold(false, |acc, i| {
        acc ^ (pascal.is_odd(a, 2 * i as i64) & pascal.is_odd(c, 2 * (k - i) as i64))
    })
}

fn check_bino1(b: &Bounds) -> Check {
    let n_max = b.binom_n as usize;
    let pascal = PascalTable::new(n_max);
    let mut checked = 0;
    for n in 0..=n_max {
        for k in 0..=n_max {
            let lhs = even_pair_sum_parity(&pascal, n, n, k);
            let rhs = k % 2 == 0 && binom_parity(n as u64, k as i64);
            ensure!(
                lhs == rhs,
                &[("n", n as i64), ("k", k as i64)],
                u8::from(rhs),
                u8::from(lhs)
            );
            checked += 1;
        }
    }
    Ok(checked)
}

fn check_bino2(b: &Bounds) -> Check {
    let n_max = b.binom_n as usize;
    let pascal = PascalTable::new(n_max);
    let mut checked = 0;
    for n in 0..=n_max {
        for m in (0..=n_max).filter(|m| (n + m) % 2 == 1) {
            for k in 0..=n_max {
                let lhs = even_pair_sum_parity(&pascal, n, m, k);
                let rhs = binom_parity((n + m) as u64, 2 * k as i64);
                ensure!(
                    lhs == rhs,
                    &[("n", n as i64), ("m", m as i64), ("k", k as i64)],
                    u8::from(rhs),
                    u8::from(lhs)
                );
                checked += 1;
            }
        }
    }
    Ok(checked)
}

fn check_lucas(b: &Bounds) -> Check {
    let rows = (2 * b.binom_n).max(b.parity_n) as usize;
    let pascal = PascalTable::new(rows);
    let mut checked = 0;
    for a in 1..=b.binom_n as usize {
        for c in 1..=b.binom_n as usize {
            let value = pascal.get(2 * a, 2 * c as i64 + 1);
            ensure!(
                !value.bit(0),
                &[("a", a as i64), ("b", c as i64)],
                "even C(2a, 2b+1)",
                value
            );
            checked += 1;
        }
    }
    for n in 0..=b.parity_n as usize {
        for k in 0..=n {
            let exact = pascal.is_odd(n, k as i64);
            let rule = binom_parity(n as u64, k as i64);
            ensure!(
                exact == rule,
                &[("n", n as i64), ("k", k as i64)],
                u8::from(exact),
                u8::from(rule)
            );
            checked += 1;
        }
    }
    Ok(checked)
}

fn check_indicator(b: &Bounds, seq: SequenceId, set: SetId) -> Check {
    let len = b.prefix as usize;
    let terms = series_oracle(seq, len);
    let defining = defining_indicator(set, len);
    let one = BigInt::one();
    for (n, term) in terms.iter().enumerate() {
        let indicator = if seq == SequenceId::PeriodDoubling {
            term.is_odd()
        } else {
            *term == one
        };
        let member = set.contains(n as u64);
        let at = [("n", n as i64)];
        ensure!(
            indicator == member,
            &at,
            format!("in {set}: {member}"),
            term
        );
        ensure!(
            member == defining[n],
            &at,
            format!("defining form says {}", defining[n]),
            member
        );
    }
    Ok(len as u64)
}

fn check_r_even(b: &Bounds) -> Check {
    let defining = defining_indicator(SetId::R, b.prefix as usize);
    let mut checked = 0;
    for m in (0..b.prefix as usize).step_by(2) {
        let at = [("m", m as i64)];
        ensure!(defining[m] == (m % 4 == 0), &at, m % 4 == 0, defining[m]);
        ensure!(
            SetId::R.contains(m as u64) == defining[m],
            &at,
            defining[m],
            !defining[m]
        );
        checked += 1;
    }
    Ok(checked)
}

fn check_inv_det(b: &Bounds) -> Result<Check> {
    let mut checked = 0;
    for seq in SequenceId::ALL {
        for p in 0..=b.oracle_p {
            for k in 0..=b.oracle_k as usize {
                let full = leibniz_t_det(seq, p, k)?;
                let det = t_hankel_det(seq, p, k);
                if full != det {
                    return Ok(Err(Counterexample::new(
                        &[("seq", seq as i64), ("p", p as i64), ("k", k as i64)],
                        det,
                        full,
                    )));
                }
                checked += 1;
            }
        }
    }
    let fix_bound = b.oracle_k.max(b.det_k).min(Bounds::CAPS.set_m) as usize;
    let native = t_hankel_dets_mod2(SequenceId::PeriodDoubling, 0, fix_bound);
    for k in 0..=fix_bound {
        let involutions = fix_generating_polynomial(&n_prefix(k as u64), SetId::J)?.mod2();
        if k <= b.oracle_k as usize {
            let full = leibniz_t_det(SequenceId::PeriodDoubling, 0, k)?.mod2();
            if full != involutions {
                return Ok(Err(Counterexample::new(&k_(k), full, involutions)));
            }
        }
        if native[k] != involutions {
            return Ok(Err(Counterexample::new(&k_(k), &native[k], involutions)));
        }
        checked += 1;
    }
    Ok(Ok(checked))
}

fn check_coons(b: &Bounds) -> Check {
    let mut checked = 0;
    let dets = hankel_dets(SequenceId::CoonsG00, 0, b.det_k as usize);
    for (k, det) in dets.iter().enumerate().skip(1) {
        ensure!(det.is_odd(), &k_(k), "odd H_k(G00)", det);
        checked += 1;
    }
    for k in 1..=b.mod2_k as usize {
        ensure!(
            hankel_det_mod2(SequenceId::CoonsG00, 0, k),
            &k_(k),
            "det over GF(2) = 1",
            "0"
        );
        checked += 1;
    }
    Ok(checked)
}

/// A row of a published t-Hankel table: ascending coefficients and the
/// value at `t = 1`.
pub struct TableRow {
    pub coeffs: &'static [i64],
    pub at_one: i64,
}

pub const TABLE_D: [TableRow; 9] = [
    TableRow {
        coeffs: &[1],
        at_one: 1,
    },
    TableRow {
        coeffs: &[0, 1],
        at_one: 1,
    },
    TableRow {
        coeffs: &[0, 0, 1],
        at_one: 1,
    },
    TableRow {
        coeffs: &[0, -2, 0, 1],
        at_one: -1,
    },
    TableRow {
        coeffs: &[0, 0, -4, 0, 1],
        at_one: -3,
    },
    TableRow {
        coeffs: &[0, 4, 2, -6, 0, 1],
        at_one: 1,
    },
    TableRow {
        coeffs: &[0, -8, 12, 4, -8, 0, 1],
        at_one: 1,
    },
    TableRow {
        coeffs: &[0, 0, -24, 24, 10, -12, 0, 1],
        at_one: -1,
    },
    TableRow {
        coeffs: &[0, 0, 0, -64, 48, 16, -16, 0, 1],
        at_one: -15,
    },
];

pub const TABLE_R: [TableRow; 10] = [
    TableRow {
        coeffs: &[1],
        at_one: 1,
    },
    TableRow {
        coeffs: &[0, 1],
        at_one: 1,
    },
    TableRow {
        coeffs: &[-1],
        at_one: -1,
    },
    TableRow {
        coeffs: &[0, -2],
        at_one: -2,
    },
    TableRow {
        coeffs: &[1, 2, -1],
        at_one: 2,
    },
    TableRow {
        coeffs: &[-2, 2, 2, -1],
        at_one: 1,
    },
    TableRow {
        coeffs: &[-4, -2, 2],
        at_one: -4,
    },
    TableRow {
        coeffs: &[6, -7, -6, 3],
        at_one: -4,
    },
    TableRow {
        coeffs: &[16, 12, -9],
        at_one: 19,
    },
    TableRow {
        coeffs: &[-40, 46, 20, -15],
        at_one: 11,
    },
];

fn check_table(b: &Bounds, seq: SequenceId, table: &[TableRow]) -> Check {
    let top = (b.det_k as usize).min(table.len() - 1);
    let dets = hankel_dets(seq, 0, top);
    let mut checked = 0;
    for (k, row) in table.iter().enumerate().take(top + 1) {
        let expected = IntPolynomial::from_i64(row.coeffs);
        let poly = t_hankel_det(seq, 0, k);
        ensure!(poly == expected, &k_(k), expected.pretty(), poly.pretty());
        let at_one = poly.eval(&BigInt::one());
        ensure!(
            at_one == BigInt::from(row.at_one),
            &k_(k),
            row.at_one,
            &at_one
        );
        ensure!(dets[k] == at_one, &k_(k), &at_one, &dets[k]);
        checked += 1;
    }
    Ok(checked)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tables_are_self_consistent() {
        for row in TABLE_D.iter().chain(TABLE_R.iter()) {
            assert_eq!(row.coeffs.iter().sum::<i64>(), row.at_one);
        }
    }

    #[test]
    fn claim_names_round_trip() {
        for c in ClaimId::ALL {
            assert_eq!(c.name().parse::<ClaimId>(), Ok(c));
            assert_eq!(c.name().to_lowercase().parse::<ClaimId>(), Ok(c));
        }
        assert_eq!(
            "bogus".parse::<ClaimId>(),
            Err(Error::UnknownClaim("bogus".into()))
        );
    }

    #[test]
    fn bounds_caps() {
        assert!(Bounds::quick().check_caps().is_ok());
        assert!(Bounds::thorough().check_caps().is_ok());
        let mut b = Bounds::quick();
        b.set_m = 21;
        assert_eq!(
            verify(ClaimId::Key, &b).unwrap_err(),
            Error::BoundExceeded {
                name: "set_m",
                value: 21,
                cap: 20
            }
        );
        b = Bounds::quick();
        b.oracle_k = 11;
        assert!(verify(ClaimId::InvDet, &b).is_err());
        assert!(!b.set("nonsense", 3));
    }

    #[test]
    fn empty_bounds_pass() {
        for report in verify_all(&Bounds::empty()).unwrap() {
            assert!(report.passed(), "{report}");
        }
    }

    #[test]
    fn quick_profile_passes() {
        let reports = verify_profile(Profile::Quick).unwrap();
        assert_eq!(reports.len(), 21);
        for (report, claim) in reports.iter().zip(ClaimId::ALL) {
            assert_eq!(report.claim, claim);
            assert!(report.passed(), "{report}");
            assert!(report.checked > 0, "{report}");
        }
    }

    #[test]
    fn mismatched_table_yields_counterexample() {
        // TABLE_D shifted by one row cannot match the determinants.
        let shifted: Vec<TableRow> = TABLE_D[1..]
            .iter()
            .map(|r| TableRow {
                coeffs: r.coeffs,
                at_one: r.at_one,
            })
            .collect();
        let err = check_table(&Bounds::quick(), SequenceId::PeriodDoubling, &shifted).unwrap_err();
        assert_eq!(err.at, vec![("k".to_string(), 0)]);
        assert_eq!(err.found, "1");
        assert_eq!(err.expected, "t");
    }

    #[test]
    fn report_formatting() {
        let report = verify(ClaimId::Gww, &Bounds::quick()).unwrap();
        let line = report.to_string();
        assert!(
            line.starts_with("PASS GWW det_k=8 mod2_k=16 checked="),
            "{line}"
        );
    }
}
