//! Return-probability transform of a birth-death process started at 0.
//!
//! With `z = 1/s`,
//!
//! ```text
//! P00(s) = z / (1 + lambda_0 z / (1 + mu_1 z / (1 + lambda_1 z / (1 + ...))))
//! ```
//!
//! The coefficients are kept positive as `(lambda_0, mu_1, lambda_1, mu_2, ...)`.
//! This `1/(1+...)` fraction is the `1/(1-...)` S-fraction of
//! [`crate::cfhankel`] evaluated at `x = -z`, so the bracketed series is
//! obtained from [`sfraction_to_series`] by alternating signs.

use std::fmt;

use num_traits::Signed;

use crate::cfhankel::{sfraction_to_series, SFraction};
use crate::mm1seq::{emptiness_coefficient, SigmaParameter};
use crate::ratcore::{int, Rational, TruncatedSeries};
use crate::{Error, Result};

/// Birth rates `lambda_k` (`k >= 0`) and death rates `mu_k` (`k >= 1`).
pub trait BirthDeathRates {
    fn birth(&self, k: usize) -> Option<Rational>;
    fn death(&self, k: usize) -> Option<Rational>;
}

/// M/M/1 with time in mean service times: `lambda_k = sigma`, `mu_k = 1 + sigma`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mm1Rates {
    sigma: SigmaParameter,
}

impl Mm1Rates {
    pub fn new(sigma: SigmaParameter) -> Self {
        Self { sigma }
    }
}

impl BirthDeathRates for Mm1Rates {
    fn birth(&self, _k: usize) -> Option<Rational> {
        Some(self.sigma.value().clone())
    }

    fn death(&self, k: usize) -> Option<Rational> {
        (k >= 1).then(|| int(1) + self.sigma.value())
    }
}

/// Rates read from a table; `lambda[k]` is the birth rate in state `k` and
/// `mu[k]` the death rate in state `k` (`mu[0]` is unused).
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TabulatedRates {
    lambda: Vec<Rational>,
    mu: Vec<Rational>,
}

impl TabulatedRates {
    pub fn new(lambda: Vec<Rational>, mu: Vec<Rational>) -> Self {
        Self { lambda, mu }
    }

    /// Parses lines `k lambda_k mu_k`; blank lines and `#` comments are
    /// skipped. States must appear as `0, 1, 2, ...` in order.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lambda = Vec::new();
        let mut mu = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let bad = |why: &str| Error::Domain(format!("rate file line {}: {why}", lineno + 1));
            let fields: Vec<&str> = line.split_whitespace().collect();
            if fields.len() != 3 {
                return Err(bad("expected `k lambda_k mu_k`"));
            }
            let k: usize = fields[0].parse().map_err(|_| bad("state index is not an integer"))?;
            if k != lambda.len() {
                return Err(bad(&format!("expected state {}, found {k}", lambda.len())));
            }
            lambda.push(crate::ratcore::parse_rational(fields[1])?);
            mu.push(crate::ratcore::parse_rational(fields[2])?);
        }
        Ok(Self { lambda, mu })
    }
}

impl BirthDeathRates for TabulatedRates {
    fn birth(&self, k: usize) -> Option<Rational> {
        self.lambda.get(k).cloned()
    }

    fn death(&self, k: usize) -> Option<Rational> {
        if k == 0 {
            return None;
        }
        self.mu.get(k).cloned()
    }
}

/// Position `i` (0-based) of the fraction: even positions are `lambda_{i/2}`,
/// odd positions are `mu_{(i+1)/2}`.
fn rate_at(rates: &dyn BirthDeathRates, i: usize) -> Result<Rational> {
    let (value, label, state) = if i.is_multiple_of(2) {
        (rates.birth(i / 2), "lambda", i / 2)
    } else {
        (rates.death(i.div_ceil(2)), "mu", i.div_ceil(2))
    };
    let value = value.ok_or_else(|| Error::Domain(format!("rate {label}_{state} not supplied")))?;
    if !value.is_positive() {
        return Err(Error::NonPositive {
            what: "birth-death rate",
            value: format!("{label}_{state} = {value}"),
        });
    }
    Ok(value)
}

/// The first `k` fraction coefficients `(lambda_0, mu_1, lambda_1, ...)`.
pub fn p00_sfraction(rates: &dyn BirthDeathRates, k: usize) -> Result<SFraction> {
    (0..k)
        .map(|i| rate_at(rates, i))
        .collect::<Result<Vec<_>>>()
        .map(SFraction::new)
}

/// Coefficients `(1, -p_1, p_2, -p_3, ...)` of the bracketed series in
/// `P00(s) = z (1 - p_1 z + p_2 z^2 - ...)`, through `z^order`.
pub fn p00_series(rates: &dyn BirthDeathRates, order: usize) -> Result<TruncatedSeries> {
    let cf = p00_sfraction(rates, order)?;
    Ok(sfraction_to_series(&cf, order).alternate())
}

/// Whether the M/M/1 return-probability series equals `(-1)^n p_n(sigma)`,
/// the emptiness coefficients, through `order`.
pub fn mm1_consistency(sigma: &SigmaParameter, order: usize) -> Result<bool> {
    rates_match_emptiness(&Mm1Rates::new(sigma.clone()), sigma, order)
}

/// As [`mm1_consistency`] but for arbitrary rates compared against the
/// M/M/1 emptiness sequence at `sigma`.
pub fn rates_match_emptiness(
    rates: &dyn BirthDeathRates,
    sigma: &SigmaParameter,
    order: usize,
) -> Result<bool> {
    let series = p00_series(rates, order)?;
    Ok(series.coeffs().iter().enumerate().all(|(n, c)| {
        let p = emptiness_coefficient(n, sigma);
        let expected = if n % 2 == 1 { -p } else { p };
        *c == expected
    }))
}

impl fmt::Display for TabulatedRates {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, (l, m)) in self.lambda.iter().zip(&self.mu).enumerate() {
            writeln!(f, "{k} {l} {m}")?;
        }
        Ok(())
    }
}
