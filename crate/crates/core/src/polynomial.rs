//! Dense univariate polynomials in `t`, over the integers and over the
//! two-element field.
//!
//! Both types are normalized: the highest stored coefficient is nonzero
//! and the zero polynomial stores nothing. The canonical text form is the
//! ascending coefficient list, so `t^3 - 2t` prints as `[0,-2,0,1]` and the
//! zero polynomial as `[]`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPolynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    /// `c · t^degree`.
    pub fn monomial(degree: usize, c: BigInt) -> Self {
        let mut coeffs = vec![BigInt::zero(); degree];
        coeffs.push(c);
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Coefficient of `t^i`, zero beyond the degree.
    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn mod2(&self) -> Gf2Polynomial {
        Gf2Polynomial::from_bits(self.coeffs.iter().map(BigInt::is_odd))
    }

    /// Exact quotient `self / divisor`, or `None` when the division leaves
    /// a remainder or would need non-integer coefficients.
    pub fn div_exact(&self, divisor: &IntPolynomial) -> Option<IntPolynomial> {
        let dd = divisor.degree()?;
        if self.is_zero() {
            return Some(Self::zero());
        }
        let lead = divisor.leading()?;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return None;
        }
        let mut quot = vec![BigInt::zero(); rem.len() - dd];
        for qi in (0..quot.len()).rev() {
            let top = &rem[qi + dd];
            if top.is_zero() {
                continue;
            }
            let (q, r) = top.div_rem(lead);
            if !r.is_zero() {
                return None;
            }
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                rem[qi + j] -= &q * dc;
            }
            quot[qi] = q;
        }
        if rem.iter().all(Zero::is_zero) {
            Some(Self::new(quot))
        } else {
            None
        }
    }

    /// Human-readable form such as `t^3 - 2t`.
    pub fn pretty(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if out.is_empty() {
                if c.is_negative() {
                    out.push('-');
                }
            } else {
                out.push_str(if c.is_negative() { " - " } else { " + " });
            }
            if i == 0 || !mag.is_one() {
                out.push_str(&mag.to_string());
            }
            match i {
                0 => {}
                1 => out.push('t'),
                _ => out.push_str(&format!("t^{i}")),
            }
        }
        out
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str("]")
    }
}

impl<'a> Add<&'a IntPolynomial> for &'a IntPolynomial {
    type Output = IntPolynomial;

    fn add(self, rhs: &IntPolynomial) -> IntPolynomial {
        let (long, short) = if self.coeffs.len() >= rhs.coeffs.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut coeffs = long.coeffs.clone();
        for (c, s) in coeffs.iter_mut().zip(&short.coeffs) {
            *c += s;
        }
        IntPolynomial::new(coeffs)
    }
}

impl<'a> Sub<&'a IntPolynomial> for &'a IntPolynomial {
    type Output = IntPolynomial;

    fn sub(self, rhs: &IntPolynomial) -> IntPolynomial {
        let mut coeffs = self.coeffs.clone();
        if coeffs.len() < rhs.coeffs.len() {
            coeffs.resize(rhs.coeffs.len(), BigInt::zero());
        }
        for (c, s) in coeffs.iter_mut().zip(&rhs.coeffs) {
            *c -= s;
        }
        IntPolynomial::new(coeffs)
    }
}

impl<'a> Mul<&'a IntPolynomial> for &'a IntPolynomial {
    type Output = IntPolynomial;

    fn mul(self, rhs: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return IntPolynomial::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        IntPolynomial::new(coeffs)
    }
}

impl Neg for &IntPolynomial {
    type Output = IntPolynomial;

    fn neg(self) -> IntPolynomial {
        IntPolynomial {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($ty:ty, $($tr:ident $method:ident),*) => {$(
        impl $tr<$ty> for $ty {
            type Output = $ty;
            fn $method(self, rhs: $ty) -> $ty {
                (&self).$method(&rhs)
            }
        }
    )*};
}

forward_owned!(IntPolynomial, Add add, Sub sub, Mul mul);

impl Neg for IntPolynomial {
    type Output = IntPolynomial;

    fn neg(self) -> IntPolynomial {
        -&self
    }
}

pub fn poly_add(a: &IntPolynomial, b: &IntPolynomial) -> IntPolynomial {
    a + b
}

pub fn poly_mul(a: &IntPolynomial, b: &IntPolynomial) -> IntPolynomial {
    a * b
}

pub fn poly_neg(a: &IntPolynomial) -> IntPolynomial {
    -a
}

pub fn poly_eval(p: &IntPolynomial, x: &BigInt) -> BigInt {
    p.eval(x)
}

pub fn poly_mod2(p: &IntPolynomial) -> Gf2Polynomial {
    p.mod2()
}

/// The unique polynomial of degree below `points.len()` through the given
/// nodes, computed with exact rational Newton divided differences.
///
/// Fails when two nodes coincide or when a coefficient of the result is
/// not an integer (usually a sign that too few nodes were supplied).
pub fn interpolate(points: &[(i64, BigInt)]) -> Result<IntPolynomial> {
    for (i, (xi, _)) in points.iter().enumerate() {
        if points[..i].iter().any(|(xj, _)| xj == xi) {
            return Err(Error::DuplicateNode(*xi));
        }
    }
    let xs: Vec<BigRational> = points
        .iter()
        .map(|(x, _)| BigRational::from_integer(BigInt::from(*x)))
        .collect();
    let mut table: Vec<BigRational> = points
        .iter()
        .map(|(_, y)| BigRational::from_integer(y.clone()))
        .collect();
    let n = points.len();
    // table[i] becomes the divided difference f[x_0, …, x_i]
    for level in 1..n {
        for i in (level..n).rev() {
            table[i] = (&table[i] - &table[i - 1]) / (&xs[i] - &xs[i - level]);
        }
    }
    // Nested Horner expansion in the monomial basis.
    let mut acc: Vec<BigRational> = Vec::new();
    for i in (0..n).rev() {
        // acc = acc * (t - x_i) + table[i]
        let mut next = vec![BigRational::zero(); acc.len() + 1];
        for (j, a) in acc.iter().enumerate() {
            next[j + 1] += a;
            next[j] -= a * &xs[i];
        }
        next[0] += &table[i];
        acc = next;
    }
    let mut coeffs = Vec::with_capacity(acc.len());
    for (degree, c) in acc.into_iter().enumerate() {
        if !c.is_integer() {
            return Err(Error::NonIntegralCoefficient {
                degree,
                value: c.to_string(),
            });
        }
        coeffs.push(c.to_integer());
    }
    Ok(IntPolynomial::new(coeffs))
}

/// Polynomial over GF(2), 64 coefficients per word, lowest degree in the
/// least significant bit of the first word.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Gf2Polynomial {
    words: Vec<u64>,
}

impl Gf2Polynomial {
    fn normalized(mut words: Vec<u64>) -> Self {
        while words.last() == Some(&0) {
            words.pop();
        }
        Gf2Polynomial { words }
    }

    pub fn zero() -> Self {
        Gf2Polynomial { words: Vec::new() }
    }

    pub fn one() -> Self {
        Self::monomial(0)
    }

    pub fn monomial(degree: usize) -> Self {
        let mut words = vec![0u64; degree / 64 + 1];
        words[degree / 64] = 1 << (degree % 64);
        Gf2Polynomial { words }
    }

    pub fn from_bits(bits: impl IntoIterator<Item = bool>) -> Self {
        let mut words = Vec::new();
        for (i, b) in bits.into_iter().enumerate() {
            if i % 64 == 0 {
                words.push(0);
            }
            if b {
                words[i / 64] |= 1 << (i % 64);
            }
        }
        Self::normalized(words)
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    pub fn is_zero(&self) -> bool {
        self.words.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.words == [1]
    }

    pub fn degree(&self) -> Option<usize> {
        let top = *self.words.last()?;
        Some(64 * (self.words.len() - 1) + 63 - top.leading_zeros() as usize)
    }

    pub fn coeff(&self, i: usize) -> bool {
        self.words
            .get(i / 64)
            .is_some_and(|w| (w >> (i % 64)) & 1 == 1)
    }

    pub fn weight(&self) -> u32 {
        self.words.iter().map(|w| w.count_ones()).sum()
    }

    fn xor_shifted(acc: &mut Vec<u64>, src: &[u64], shift: usize) {
        let (ws, bs) = (shift / 64, shift % 64);
        let need = ws + src.len() + 1;
        if acc.len() < need {
            acc.resize(need, 0);
        }
        for (i, &w) in src.iter().enumerate() {
            acc[ws + i] ^= w << bs;
            if bs != 0 {
                acc[ws + i + 1] ^= w >> (64 - bs);
            }
        }
    }

    /// Quotient and remainder of polynomial long division.
    pub fn div_rem(&self, divisor: &Gf2Polynomial) -> Option<(Gf2Polynomial, Gf2Polynomial)> {
        let dd = divisor.degree()?;
        let mut rem = self.words.clone();
        let mut quot = vec![0u64; self.words.len()];
        let mut top = self.degree();
        while let Some(d) = top {
            if d < dd {
                break;
            }
            let shift = d - dd;
            quot[shift / 64] |= 1 << (shift % 64);
            Self::xor_shifted(&mut rem, &divisor.words, shift);
            while rem.last() == Some(&0) {
                rem.pop();
            }
            top = Gf2Polynomial::degree_of(&rem);
        }
        Some((Self::normalized(quot), Self::normalized(rem)))
    }

    fn degree_of(words: &[u64]) -> Option<usize> {
        let top = *words.last()?;
        Some(64 * (words.len() - 1) + 63 - top.leading_zeros() as usize)
    }

    pub fn div_exact(&self, divisor: &Gf2Polynomial) -> Option<Gf2Polynomial> {
        let (q, r) = self.div_rem(divisor)?;
        r.is_zero().then_some(q)
    }

    pub fn pretty(&self) -> String {
        let Some(deg) = self.degree() else {
            return "0".to_string();
        };
        let terms: Vec<String> = (0..=deg)
            .rev()
            .filter(|&i| self.coeff(i))
            .map(|i| match i {
                0 => "1".to_string(),
                1 => "t".to_string(),
                _ => format!("t^{i}"),
            })
            .collect();
        terms.join(" + ")
    }
}

impl fmt::Display for Gf2Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        if let Some(deg) = self.degree() {
            for i in 0..=deg {
                if i > 0 {
                    f.write_str(",")?;
                }
                f.write_str(if self.coeff(i) { "1" } else { "0" })?;
            }
        }
        f.write_str("]")
    }
}

impl<'a> Add<&'a Gf2Polynomial> for &'a Gf2Polynomial {
    type Output = Gf2Polynomial;

    fn add(self, rhs: &Gf2Polynomial) -> Gf2Polynomial {
        let (long, short) = if self.words.len() >= rhs.words.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut words = long.words.clone();
        for (w, s) in words.iter_mut().zip(&short.words) {
            *w ^= s;
        }
        Gf2Polynomial::normalized(words)
    }
}

impl<'a> Sub<&'a Gf2Polynomial> for &'a Gf2Polynomial {
    type Output = Gf2Polynomial;

    // Characteristic 2: subtraction is addition.
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn sub(self, rhs: &Gf2Polynomial) -> Gf2Polynomial {
        self + rhs
    }
}

impl<'a> Mul<&'a Gf2Polynomial> for &'a Gf2Polynomial {
    type Output = Gf2Polynomial;

    fn mul(self, rhs: &Gf2Polynomial) -> Gf2Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Gf2Polynomial::zero();
        }
        let (sparse, dense) = if self.weight() <= rhs.weight() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut acc = vec![0u64; self.words.len() + rhs.words.len() + 1];
        for (wi, &w) in sparse.words.iter().enumerate() {
            let mut bits = w;
            while bits != 0 {
                let b = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Gf2Polynomial::xor_shifted(&mut acc, &dense.words, 64 * wi + b);
            }
        }
        Gf2Polynomial::normalized(acc)
    }
}

forward_owned!(Gf2Polynomial, Add add, Sub sub, Mul mul);
