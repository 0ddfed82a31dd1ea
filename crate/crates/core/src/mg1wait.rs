//! Stationary waiting-time moments of the M/G/1 queue with unit mean service
//! time, for several service-time moment models.
//!
//! Four routes are provided and agree exactly for Catalan service:
//! the Takacs moment recursion, its Catalan specialization, the mixing-moment
//! recursion, and the Pollaczek-Khinchine generating function
//! `w(x) = 1 / (1 + sigma - sigma g_e(x))`.

use std::fmt;
use std::str::FromStr;

use num_traits::One;

use crate::mm1seq::{catalan, SigmaParameter};
use crate::momentops::{moments_to_gf, stationary_excess, MomentSequence};
use crate::ratcore::{binomial, factorial, int, Rational, TruncatedSeries};
use crate::{Error, Result};

/// Service-time moments `g_k = E[S^k]`, normalized to `g_0 = g_1 = 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ServiceMoments {
    /// Exponential with mean 1: `g_k = k!`.
    Exponential,
    /// Deterministic service time 1: `g_k = 1`.
    Deterministic,
    /// The density whose mixing moments are the Catalan numbers:
    /// `g_k = k! C_k`.
    CatalanH1,
    /// An explicit finite list `g_0, g_1, ...`.
    Custom(Vec<Rational>),
}

impl ServiceMoments {
    pub fn custom(g: Vec<Rational>) -> Result<Self> {
        let one = Rational::one();
        if g.len() < 2 {
            return Err(Error::InsufficientTerms {
                needed: 2,
                available: g.len(),
            });
        }
        if g[0] != one || g[1] != one {
            return Err(Error::Domain(format!(
                "custom service moments must start 1,1 (unit mass, unit mean), got {},{}",
                g[0], g[1]
            )));
        }
        Ok(ServiceMoments::Custom(g))
    }

    /// `g_k`, or `None` past the end of a custom list.
    pub fn moment(&self, k: usize) -> Option<Rational> {
        match self {
            ServiceMoments::Exponential => Some(Rational::from_integer(factorial(k))),
            ServiceMoments::Deterministic => Some(Rational::one()),
            ServiceMoments::CatalanH1 => Some(Rational::from_integer(factorial(k) * catalan(k))),
            ServiceMoments::Custom(g) => g.get(k).cloned(),
        }
    }

    fn require(&self, k: usize) -> Result<Rational> {
        self.moment(k).ok_or(Error::InsufficientTerms {
            needed: k + 1,
            available: match self {
                ServiceMoments::Custom(g) => g.len(),
                _ => usize::MAX,
            },
        })
    }

    pub fn name(&self) -> &'static str {
        match self {
            ServiceMoments::Exponential => "exponential",
            ServiceMoments::Deterministic => "deterministic",
            ServiceMoments::CatalanH1 => "catalan-h1",
            ServiceMoments::Custom(_) => "custom",
        }
    }
}

impl fmt::Display for ServiceMoments {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Parses the built-in model names; `custom` needs its moment list and is
/// built with [`ServiceMoments::custom`] instead.
impl FromStr for ServiceMoments {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exponential" => Ok(ServiceMoments::Exponential),
            "deterministic" => Ok(ServiceMoments::Deterministic),
            "catalan-h1" => Ok(ServiceMoments::CatalanH1),
            "custom" => Err(Error::Domain("custom service needs an explicit moment list".into())),
            other => Err(Error::Domain(format!("unknown service model {other:?}"))),
        }
    }
}

/// `E[W^0..=W^N]` together with the mixing moments `w_n = E[W^n] / n!`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WaitingMoments {
    moments: Vec<Rational>,
    mixing: Vec<Rational>,
}

impl WaitingMoments {
    fn from_moments(moments: Vec<Rational>) -> Self {
        let mixing = moments
            .iter()
            .enumerate()
            .map(|(n, m)| m / Rational::from_integer(factorial(n)))
            .collect();
        Self { moments, mixing }
    }

    pub fn moments(&self) -> &[Rational] {
        &self.moments
    }

    pub fn mixing(&self) -> &[Rational] {
        &self.mixing
    }
}

/// Takacs recursion
/// `E[W^{n-1}] = (sigma/n) sum_{k=2..n} binom(n,k) g_k E[W^{n-k}]`,
/// `n = 2..=N+1`, from `E[W^0] = 1`.
pub fn takacs_moments(
    service: &ServiceMoments,
    sigma: &SigmaParameter,
    order: usize,
) -> Result<WaitingMoments> {
    let s = sigma.value();
    let g = (0..=order + 1)
        .map(|k| service.require(k))
        .collect::<Result<Vec<_>>>()?;
    let mut e = vec![int(1)];
    for n in 2..=order + 1 {
        let sum = (2..=n).fold(int(0), |acc, k| {
            acc + Rational::from_integer(binomial(n, k)) * &g[k] * &e[n - k]
        });
        e.push(s * sum / int(n as i64));
    }
    Ok(WaitingMoments::from_moments(e))
}

/// Catalan-service recursion
/// `E[W^{n-1}] = sigma sum_{k=2..n} (n-1)!/(n-k)! C_k E[W^{n-k}]`.
pub fn catalan_waiting_moments(sigma: &SigmaParameter, order: usize) -> WaitingMoments {
    let s = sigma.value();
    let mut e = vec![int(1)];
    for n in 2..=order + 1 {
        let sum = (2..=n).fold(int(0), |acc, k| {
            let falling = factorial(n - 1) / factorial(n - k);
            acc + Rational::from_integer(falling * catalan(k)) * &e[n - k]
        });
        e.push(s * sum);
    }
    WaitingMoments::from_moments(e)
}

/// Mixing-moment recursion `w_{n-1} = sigma sum_{k=2..n} C_k w_{n-k}`.
pub fn catalan_mixing_recursion(sigma: &SigmaParameter, order: usize) -> Vec<Rational> {
    let s = sigma.value();
    let mut w = vec![int(1)];
    for n in 2..=order + 1 {
        let sum = (2..=n).fold(int(0), |acc, k| acc + Rational::from_integer(catalan(k)) * &w[n - k]);
        w.push(s * sum);
    }
    w
}

/// Generating function of the service-time stationary excess, through
/// `order`. Uses `g_0..=g_{order+1}`.
pub fn service_excess_series(service: &ServiceMoments, order: usize) -> Result<TruncatedSeries> {
    let g = (0..=order + 1)
        .map(|k| service.require(k))
        .collect::<Result<Vec<_>>>()?;
    Ok(moments_to_gf(&stationary_excess(&MomentSequence::new(g)?)?))
}

/// Pollaczek-Khinchine form `w(x) = 1 / (1 + sigma - sigma g_e(x))`.
pub fn pk_waiting_series(
    service: &ServiceMoments,
    sigma: &SigmaParameter,
    order: usize,
) -> Result<TruncatedSeries> {
    let s = sigma.value();
    let excess = service_excess_series(service, order)?;
    let denominator = TruncatedSeries::one(order)
        .scale(&(int(1) + s))
        .sub(&excess.scale(s))?;
    denominator.reciprocal()
}
