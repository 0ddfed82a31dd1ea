//! Sequence families of the M/M/1 queue, parametrized by `sigma = rho/(1-rho)`:
//!
//! * busy period `b_n(sigma)`, the generating-function coefficients of the
//!   busy period scaled to mean 1;
//! * its stationary excess `b_{e,n}(sigma) = b_{n+1}(sigma)`;
//! * the equilibrium time to emptiness `p_n(sigma)`.
//!
//! At `sigma = 1` these give the Large and little Schroeder numbers. For
//! integer `sigma` every family is an integer sequence.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed};

use crate::momentops::{binomial_convolution, gf_to_moments, MomentSequence};
use crate::ratcore::{binomial, int, pow, Rational, SigmaPolynomial, TruncatedSeries};
use crate::{Error, Result};

/// The load parameter `sigma > 0`, equivalently traffic intensity
/// `rho = sigma/(1+sigma)` in `(0, 1)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SigmaParameter {
    sigma: Rational,
}

impl SigmaParameter {
    pub fn new(sigma: Rational) -> Result<Self> {
        if !sigma.is_positive() {
            return Err(Error::NonPositive {
                what: "sigma",
                value: sigma.to_string(),
            });
        }
        Ok(Self { sigma })
    }

    pub fn from_int(sigma: i64) -> Result<Self> {
        Self::new(int(sigma))
    }

    /// From a traffic intensity `0 < rho < 1`.
    pub fn from_rho(rho: &Rational) -> Result<Self> {
        if !rho.is_positive() || rho >= &Rational::one() {
            return Err(Error::Domain(format!("traffic intensity must lie in (0, 1), got {rho}")));
        }
        Self::new(rho / (Rational::one() - rho))
    }

    pub fn value(&self) -> &Rational {
        &self.sigma
    }

    pub fn rho(&self) -> Rational {
        &self.sigma / (Rational::one() + &self.sigma)
    }
}

impl fmt::Display for SigmaParameter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.sigma.fmt(f)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FamilyTag {
    Busy,
    BusyExcess,
    Emptiness,
}

impl FamilyTag {
    pub const ALL: [FamilyTag; 3] = [FamilyTag::Busy, FamilyTag::BusyExcess, FamilyTag::Emptiness];

    pub fn name(self) -> &'static str {
        match self {
            FamilyTag::Busy => "busy",
            FamilyTag::BusyExcess => "busy-excess",
            FamilyTag::Emptiness => "emptiness",
        }
    }
}

impl FromStr for FamilyTag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "busy" => Ok(FamilyTag::Busy),
            "busy-excess" => Ok(FamilyTag::BusyExcess),
            "emptiness" => Ok(FamilyTag::Emptiness),
            other => Err(Error::Domain(format!("unknown family {other:?}"))),
        }
    }
}

/// `C_n = binom(2n, n) / (n + 1)`
pub fn catalan(n: usize) -> BigInt {
    binomial(2 * n, n) / BigInt::from(n + 1)
}

pub fn catalan_numbers(count: usize) -> Vec<BigInt> {
    (0..count).map(catalan).collect()
}

/// Coefficient of `sigma^k` in `b_{m+1}`: `binom(m+k, m-k) C_k`.
fn busy_term(m: usize, k: usize) -> BigInt {
    binomial(m + k, m - k) * catalan(k)
}

/// `b_n(sigma)` from the explicit Catalan sum
/// `b_{m+1} = sum_{k=0..m} binom(m+k, m-k) C_k sigma^k`, with `b_0 = 1`.
pub fn busy_coefficient(n: usize, sigma: &SigmaParameter) -> Rational {
    busy_poly(n).eval(sigma.value())
}

/// `b_n` as an integer polynomial in `sigma`.
pub fn busy_poly(n: usize) -> SigmaPolynomial {
    if n == 0 {
        return SigmaPolynomial::constant(BigInt::one());
    }
    let m = n - 1;
    SigmaPolynomial::new((0..=m).map(|k| busy_term(m, k)).collect())
}

/// `b_0..=b_N` by the three-term recurrence
/// `(n+1) b_{n+1} = (2n-1)(1+2 sigma) b_n - (n-2) b_{n-1}`.
pub fn busy_coefficient_rec(order: usize, sigma: &SigmaParameter) -> Vec<Rational> {
    let s = sigma.value();
    let factor = int(1) + int(2) * s;
    let mut b = vec![int(1), int(1)];
    for n in 1..order {
        let next = (int(2 * n as i64 - 1) * &factor * &b[n] - int(n as i64 - 2) * &b[n - 1])
            / int(n as i64 + 1);
        b.push(next);
    }
    b.truncate(order + 1);
    b
}

/// `b_{e,n} = b_{n+1}` for `n >= 1`, and `b_{e,0} = 1`.
pub fn excess_coefficient(n: usize, sigma: &SigmaParameter) -> Rational {
    if n == 0 {
        return int(1);
    }
    busy_coefficient(n + 1, sigma)
}

/// `p_n = sigma b_{n+1} / (1 + sigma)` for `n >= 1`, and `p_0 = 1`.
pub fn emptiness_coefficient(n: usize, sigma: &SigmaParameter) -> Rational {
    if n == 0 {
        return int(1);
    }
    let s = sigma.value();
    s * busy_coefficient(n + 1, sigma) / (int(1) + s)
}

/// `p_n` from the alternating sum
/// `sum_{k=0..n} (-1)^{n+k} binom(n+k, n-k) C_k (1+sigma)^k`, `n >= 1`.
pub fn emptiness_coefficient_alternating(n: usize, sigma: &SigmaParameter) -> Rational {
    emptiness_poly(n).eval(sigma.value())
}

/// `p_n` as an integer polynomial in `sigma`, expanded from the alternating
/// sum in powers of `1 + sigma`.
pub fn emptiness_poly(n: usize) -> SigmaPolynomial {
    if n == 0 {
        return SigmaPolynomial::constant(BigInt::one());
    }
    (0..=n).fold(SigmaPolynomial::zero(), |acc, k| {
        let mut c = busy_term(n, k);
        if (n + k) % 2 == 1 {
            c = -c;
        }
        acc.add(&SigmaPolynomial::one_plus_sigma_pow(k).scale(&c))
    })
}

/// `p_0..=p_N` by `(n+2) p_{n+1} = (2n+1)(1+2 sigma) p_n - (n-1) p_{n-1}`
/// from `p_0 = 1`, `p_1 = sigma`.
pub fn emptiness_coefficient_rec(order: usize, sigma: &SigmaParameter) -> Vec<Rational> {
    let s = sigma.value();
    let factor = int(1) + int(2) * s;
    let mut p = vec![int(1), s.clone()];
    for n in 1..order {
        let next = (int(2 * n as i64 + 1) * &factor * &p[n] - int(n as i64 - 1) * &p[n - 1])
            / int(n as i64 + 2);
        p.push(next);
    }
    p.truncate(order + 1);
    p
}

/// Generating-function coefficients of the family through order `order`.
pub fn family_series(tag: FamilyTag, sigma: &SigmaParameter, order: usize) -> TruncatedSeries {
    let coeffs = match tag {
        FamilyTag::Busy => busy_coefficient_rec(order, sigma),
        FamilyTag::BusyExcess => busy_coefficient_rec(order + 1, sigma).split_off(1),
        FamilyTag::Emptiness => emptiness_coefficient_rec(order, sigma),
    };
    TruncatedSeries::gf(coeffs)
}

/// Raw moments `n! c_n` of the family.
pub fn family_moments(tag: FamilyTag, sigma: &SigmaParameter, order: usize) -> MomentSequence {
    gf_to_moments(&family_series(tag, sigma, order)).expect("families are normalized GFs")
}

/// Family coefficients as polynomials in `sigma`.
pub fn family_poly(tag: FamilyTag, n: usize) -> SigmaPolynomial {
    match tag {
        FamilyTag::Busy => busy_poly(n),
        FamilyTag::BusyExcess if n == 0 => SigmaPolynomial::constant(BigInt::one()),
        FamilyTag::BusyExcess => busy_poly(n + 1),
        FamilyTag::Emptiness => emptiness_poly(n),
    }
}

/// Closed-form even Hankel determinant `H_{2n}` of the family, with
/// `nu(n) = n(n+1)/2`.
pub fn hankel_closed_form(tag: FamilyTag, sigma: &SigmaParameter, n: usize) -> Rational {
    let s = sigma.value();
    let nu = n * (n + 1) / 2;
    match tag {
        FamilyTag::Busy => pow(s, nu) * pow(&(int(1) + s), nu - n),
        FamilyTag::BusyExcess | FamilyTag::Emptiness => pow(&(s + s * s), nu),
    }
}

/// Moments of the first-passage time from state `k` to 0, the `k`-fold
/// convolution of the scaled busy period.
pub fn kfold_busy_moments(k: usize, sigma: &SigmaParameter, order: usize) -> Result<MomentSequence> {
    if k == 0 {
        return Err(Error::NonPositive {
            what: "convolution count k",
            value: "0".into(),
        });
    }
    let single = family_moments(FamilyTag::Busy, sigma, order);
    Ok((1..k).fold(single.clone(), |acc, _| binomial_convolution(&acc, &single)))
}

/// `b_{e,n}(sigma) / sigma^n`, which tends to `C_n` in heavy traffic.
pub fn heavy_traffic_ratio(n: usize, sigma: &SigmaParameter) -> Rational {
    excess_coefficient(n, sigma) / pow(sigma.value(), n)
}

/// `|b_{e,n}(sigma)/sigma^n - C_n|`, exact.
pub fn heavy_traffic_gap(n: usize, sigma: &SigmaParameter) -> Rational {
    (heavy_traffic_ratio(n, sigma) - Rational::from_integer(catalan(n))).abs()
}

/// Convenience: every value of `coeffs` as an integer, if all are integral.
pub fn integers(coeffs: &[Rational]) -> Option<Vec<BigInt>> {
    coeffs
        .iter()
        .map(|c| c.is_integer().then(|| c.to_integer()))
        .collect()
}
