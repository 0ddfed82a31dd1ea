//! Exact scalars and truncated formal power series.
//!
//! A [`TruncatedSeries`] holds the coefficients `c_0..=c_N` of a power series
//! in `x`; everything at order `N + 1` and above is unknown. Binary
//! operations combine at the shorter of the two lengths.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::{Error, Result};

/// Exact rational in lowest terms with a positive denominator.
pub type Rational = BigRational;

/// Builds an integer-valued rational.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Builds `p/q` in lowest terms. Panics if `q == 0`.
pub fn ratio(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

/// Parses the textual form `p/q` (or just `p`).
pub fn parse_rational(text: &str) -> Result<Rational> {
    let trimmed = text.trim();
    Rational::from_str(trimmed).map_err(|e| Error::Parse {
        input: text.to_string(),
        reason: e.to_string(),
    })
}

/// Parses a comma-separated list of rationals. Blank fields (from a trailing
/// comma, say) are skipped.
pub fn parse_rational_list(text: &str) -> Result<Vec<Rational>> {
    text.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|field| !field.trim().is_empty())
        .map(parse_rational)
        .collect()
}

/// Formats values as `p/q` separated by commas.
pub fn format_rational_list(values: &[Rational]) -> String {
    values
        .iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

/// Returns the integer value if `value` has denominator 1.
pub fn as_integer(value: &Rational) -> Option<BigInt> {
    value.is_integer().then(|| value.to_integer())
}

pub(crate) fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

pub(crate) fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    num_integer::binomial(BigInt::from(n), BigInt::from(k))
}

pub(crate) fn pow(base: &Rational, exp: usize) -> Rational {
    num_traits::pow(base.clone(), exp)
}

/// What the coefficients of a series stand for.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SeriesKind {
    /// Ordinary generating-function coefficients `mu_n = m_n / n!`.
    Gf,
    /// Raw moments `m_n = E[Z^n]`.
    Moments,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    coeffs: Vec<Rational>,
    kind: SeriesKind,
}

impl TruncatedSeries {
    pub fn new(coeffs: Vec<Rational>, kind: SeriesKind) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::EmptySeries);
        }
        Ok(Self { coeffs, kind })
    }

    /// A generating-function series. Panics on an empty coefficient list.
    pub fn gf(coeffs: Vec<Rational>) -> Self {
        Self::new(coeffs, SeriesKind::Gf).expect("non-empty coefficient list")
    }

    pub fn gf_from_ints(coeffs: &[i64]) -> Self {
        Self::gf(coeffs.iter().map(|&c| int(c)).collect())
    }

    /// The series `1 + 0x + ... + 0x^order`.
    pub fn one(order: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); order + 1];
        coeffs[0] = Rational::one();
        Self::gf(coeffs)
    }

    /// The highest known power of `x`.
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn kind(&self) -> SeriesKind {
        self.kind
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Rational> {
        self.coeffs
    }

    pub fn coeff(&self, n: usize) -> &Rational {
        &self.coeffs[n]
    }

    pub fn with_kind(mut self, kind: SeriesKind) -> Self {
        self.kind = kind;
        self
    }

    /// Drops every coefficient above `order`.
    pub fn truncate(&self, order: usize) -> Self {
        let keep = (order + 1).min(self.coeffs.len());
        Self {
            coeffs: self.coeffs[..keep].to_vec(),
            kind: self.kind,
        }
    }

    fn require_kind(&self, expected: SeriesKind) -> Result<()> {
        if self.kind != expected {
            return Err(Error::KindMismatch {
                expected,
                found: self.kind,
            });
        }
        Ok(())
    }

    pub(crate) fn require_gf(&self) -> Result<()> {
        self.require_kind(SeriesKind::Gf)
    }

    pub(crate) fn require_normalized(&self) -> Result<()> {
        if !self.coeffs[0].is_one() {
            return Err(Error::NotNormalized(self.coeffs[0].to_string()));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        other.require_kind(self.kind)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Ok(Self {
            coeffs,
            kind: self.kind,
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        other.require_kind(self.kind)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        Ok(Self {
            coeffs,
            kind: self.kind,
        })
    }

    pub fn scale(&self, factor: &Rational) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|c| c * factor).collect(),
            kind: self.kind,
        }
    }

    /// Cauchy product; both operands must be generating functions.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.require_gf()?;
        other.require_gf()?;
        let len = self.coeffs.len().min(other.coeffs.len());
        let coeffs = (0..len)
            .map(|n| {
                (0..=n).fold(Rational::zero(), |acc, k| {
                    acc + &self.coeffs[k] * &other.coeffs[n - k]
                })
            })
            .collect();
        Ok(Self {
            coeffs,
            kind: SeriesKind::Gf,
        })
    }

    /// Multiplicative inverse to the same order.
    pub fn reciprocal(&self) -> Result<Self> {
        self.require_gf()?;
        let a0 = &self.coeffs[0];
        if a0.is_zero() {
            return Err(Error::SingularSeries);
        }
        let inv0 = a0.recip();
        let mut out: Vec<Rational> = Vec::with_capacity(self.coeffs.len());
        out.push(inv0.clone());
        for n in 1..self.coeffs.len() {
            let acc = (1..=n).fold(Rational::zero(), |acc, k| acc + &self.coeffs[k] * &out[n - k]);
            out.push(-acc * &inv0);
        }
        Ok(Self {
            coeffs: out,
            kind: SeriesKind::Gf,
        })
    }

    /// Multiplies by `x`, keeping the same order (the top coefficient falls off).
    pub fn times_x(&self) -> Self {
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        coeffs.push(Rational::zero());
        coeffs.extend(self.coeffs[..self.coeffs.len() - 1].iter().cloned());
        Self {
            coeffs,
            kind: self.kind,
        }
    }

    /// Divides by `x`, discarding the constant term; the result is one order
    /// shorter. `None` if the series has only a constant term.
    pub fn shift_left(&self) -> Option<Self> {
        (self.coeffs.len() > 1).then(|| Self {
            coeffs: self.coeffs[1..].to_vec(),
            kind: self.kind,
        })
    }

    /// Substitutes `x -> -x`.
    pub fn alternate(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(n, c)| if n % 2 == 1 { -c.clone() } else { c.clone() })
            .collect();
        Self {
            coeffs,
            kind: self.kind,
        }
    }

    /// True when every coefficient is an integer.
    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_rational_list(&self.coeffs))
    }
}

/// Integer polynomial in the load parameter `sigma`, stored lowest power first.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SigmaPolynomial {
    coeffs: Vec<BigInt>,
}

impl SigmaPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Horner evaluation.
    pub fn eval(&self, sigma: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * sigma + Rational::from_integer(c.clone()))
    }

    pub fn add(&self, other: &Self) -> Self {
        let len = self.coeffs.len().max(other.coeffs.len());
        let zero = BigInt::zero();
        let coeffs = (0..len)
            .map(|i| self.coeffs.get(i).unwrap_or(&zero) + other.coeffs.get(i).unwrap_or(&zero))
            .collect();
        Self::new(coeffs)
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Self::new(coeffs)
    }

    pub fn scale(&self, factor: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * factor).collect())
    }

    /// `(1 + sigma)^k`
    pub fn one_plus_sigma_pow(k: usize) -> Self {
        Self::new((0..=k).map(|j| binomial(k, j)).collect())
    }
}

impl fmt::Display for SigmaPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (power, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let magnitude = c.abs();
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else if c.is_negative() {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            first = false;
            match power {
                0 => write!(f, "{magnitude}")?,
                _ => {
                    if !magnitude.is_one() {
                        write!(f, "{magnitude}*")?;
                    }
                    if power == 1 {
                        f.write_str("s")?;
                    } else {
                        write!(f, "s^{power}")?;
                    }
                }
            }
        }
        Ok(())
    }
}
