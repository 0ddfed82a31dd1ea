//! Operators on probability distributions, carried out on their moment
//! sequences or on their generating functions `phi(x) = sum m_n x^n / n!`.
//!
//! Where an operator consumes one order of information (stationary excess,
//! inverse exponential mixture) the output is one term shorter than the
//! input.

use num_traits::{One, Signed, Zero};

use crate::ratcore::{binomial, factorial, pow, Rational, SeriesKind, TruncatedSeries};
use crate::{Error, Result};

/// Raw moments `m_0..=m_N` of a distribution, with `m_0 = 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MomentSequence {
    m: Vec<Rational>,
}

impl MomentSequence {
    pub fn new(m: Vec<Rational>) -> Result<Self> {
        match m.first() {
            None => Err(Error::EmptySeries),
            Some(m0) if !m0.is_one() => Err(Error::BadZerothMoment(m0.to_string())),
            Some(_) => Ok(Self { m }),
        }
    }

    pub fn from_ints(m: &[i64]) -> Result<Self> {
        Self::new(m.iter().map(|&v| crate::ratcore::int(v)).collect())
    }

    pub fn values(&self) -> &[Rational] {
        &self.m
    }

    pub fn into_values(self) -> Vec<Rational> {
        self.m
    }

    pub fn len(&self) -> usize {
        self.m.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn mean(&self) -> Option<&Rational> {
        self.m.get(1)
    }

    /// View as a series tagged [`SeriesKind::Moments`].
    pub fn to_series(&self) -> TruncatedSeries {
        TruncatedSeries::new(self.m.clone(), SeriesKind::Moments).expect("m0 present")
    }

    fn positive_mean(&self) -> Result<&Rational> {
        let m1 = self.m.get(1).ok_or(Error::InsufficientTerms {
            needed: 2,
            available: self.m.len(),
        })?;
        if !m1.is_positive() {
            return Err(Error::NonPositive {
                what: "mean m1",
                value: m1.to_string(),
            });
        }
        Ok(m1)
    }
}

/// `mu_n = m_n / n!`
pub fn moments_to_gf(m: &MomentSequence) -> TruncatedSeries {
    let coeffs = m
        .m
        .iter()
        .enumerate()
        .map(|(n, mn)| mn / Rational::from_integer(factorial(n)))
        .collect();
    TruncatedSeries::gf(coeffs)
}

/// `m_n = n! mu_n`
pub fn gf_to_moments(s: &TruncatedSeries) -> Result<MomentSequence> {
    s.require_gf()?;
    let m = s
        .coeffs()
        .iter()
        .enumerate()
        .map(|(n, mu)| mu * Rational::from_integer(factorial(n)))
        .collect();
    MomentSequence::new(m)
}

/// Moments of the stationary-excess (equilibrium residual) distribution:
/// `m_{e,k} = m_{k+1} / ((k+1) m_1)`.
pub fn stationary_excess(m: &MomentSequence) -> Result<MomentSequence> {
    let m1 = m.positive_mean()?.clone();
    let out = m.m[1..]
        .iter()
        .enumerate()
        .map(|(k, next)| next / (&m1 * Rational::from_integer((k + 1).into())))
        .collect();
    MomentSequence::new(out)
}

/// Moments of the stationary-lifetime (length-biased) distribution:
/// `m_{s,k} = m_{k+1} / m_1`.
pub fn stationary_lifetime(m: &MomentSequence) -> Result<MomentSequence> {
    let m1 = m.positive_mean()?.clone();
    MomentSequence::new(m.m[1..].iter().map(|next| next / &m1).collect())
}

/// Generating function of the exponential mixture, `1 / (1 - x phi(x))`.
pub fn exp_mixture(phi: &TruncatedSeries) -> Result<TruncatedSeries> {
    phi.require_gf()?;
    TruncatedSeries::one(phi.order())
        .sub(&phi.times_x())?
        .reciprocal()
}

/// Undoes [`exp_mixture`]: `phi = (psi - 1) / (x psi)`, one order shorter.
pub fn inverse_exp_mixture(psi: &TruncatedSeries) -> Result<TruncatedSeries> {
    psi.require_gf()?;
    psi.require_normalized()?;
    let numerator = psi
        .shift_left()
        .ok_or(Error::InsufficientTerms {
            needed: 2,
            available: 1,
        })?;
    let inverse = psi.truncate(numerator.order()).reciprocal()?;
    numerator.mul(&inverse)
}

/// The invert transform `phi / (1 - x phi)`: the stationary excess of the
/// exponential mixture of `phi`.
pub fn invert_operator(phi: &TruncatedSeries) -> Result<TruncatedSeries> {
    phi.require_gf()?;
    let denominator = TruncatedSeries::one(phi.order()).sub(&phi.times_x())?;
    phi.mul(&denominator.reciprocal()?)
}

/// Moments of the sum of two independent variables:
/// `c_n = sum_{k=0..n} C(n,k) a_k b_{n-k}`.
pub fn binomial_convolution(a: &MomentSequence, b: &MomentSequence) -> MomentSequence {
    let len = a.len().min(b.len());
    let c = (0..len)
        .map(|n| {
            (0..=n).fold(Rational::zero(), |acc, k| {
                acc + Rational::from_integer(binomial(n, k)) * &a.m[k] * &b.m[n - k]
            })
        })
        .collect();
    MomentSequence::new(c).expect("a0 b0 = 1")
}

/// Moments of `c Z`: `m'_n = c^n m_n`.
pub fn scale_moments(m: &MomentSequence, c: &Rational) -> Result<MomentSequence> {
    if !c.is_positive() {
        return Err(Error::NonPositive {
            what: "scale factor",
            value: c.to_string(),
        });
    }
    let out = m
        .m
        .iter()
        .enumerate()
        .map(|(n, mn)| pow(c, n) * mn)
        .collect();
    MomentSequence::new(out)
}
