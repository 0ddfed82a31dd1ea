//! S-fractions and Hankel transforms.
//!
//! An S-fraction with coefficients `h_1, h_2, ...` is the generating function
//!
//! ```text
//! phi(x) = 1 / (1 - h_1 x / (1 - h_2 x / (1 - ...)))
//! ```
//!
//! Its even Hankel determinants follow from running products of the
//! coefficients, `H_{2n} = (h_1 ... h_{2n}) H_{2n-2}`, and
//! [`hankel_determinant_oracle`] computes the same numbers directly from the
//! Hankel matrix as an independent check.

use num_traits::{One, Signed, Zero};

use crate::ratcore::{Rational, TruncatedSeries};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SFraction {
    h: Vec<Rational>,
}

impl SFraction {
    pub fn new(h: Vec<Rational>) -> Self {
        Self { h }
    }

    pub fn from_ints(h: &[i64]) -> Self {
        Self::new(h.iter().map(|&v| crate::ratcore::int(v)).collect())
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.h
    }

    pub fn len(&self) -> usize {
        self.h.len()
    }

    pub fn is_empty(&self) -> bool {
        self.h.is_empty()
    }

    /// All coefficients strictly positive, the signature of a completely
    /// monotone density.
    pub fn is_stieltjes(&self) -> bool {
        self.h.iter().all(|h| h.is_positive())
    }
}

/// Outcome of expanding a series into an S-fraction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CfExpansion {
    /// All requested coefficients were found.
    Complete(SFraction),
    /// Coefficient number `at` (1-based) came out zero: the fraction is
    /// finite and `found` holds the `at - 1` coefficients before it.
    Terminated { found: SFraction, at: usize },
}

impl CfExpansion {
    pub fn fraction(&self) -> &SFraction {
        match self {
            CfExpansion::Complete(cf) => cf,
            CfExpansion::Terminated { found, .. } => found,
        }
    }

    pub fn into_fraction(self) -> SFraction {
        match self {
            CfExpansion::Complete(cf) => cf,
            CfExpansion::Terminated { found, .. } => found,
        }
    }

    pub fn is_complete(&self) -> bool {
        matches!(self, CfExpansion::Complete(_))
    }
}

/// First `k` S-fraction coefficients of `phi` by the normalized Viskovatov
/// iteration: `theta = (1 - 1/psi) / x`, `h = theta(0)`, `psi <- theta / h`.
pub fn series_to_sfraction(phi: &TruncatedSeries, k: usize) -> Result<CfExpansion> {
    phi.require_gf()?;
    phi.require_normalized()?;
    if k > phi.order() {
        return Err(Error::InsufficientTerms {
            needed: k + 1,
            available: phi.len(),
        });
    }
    let mut psi = phi.clone();
    let mut h = Vec::with_capacity(k);
    for step in 1..=k {
        let one = TruncatedSeries::one(psi.order());
        let theta = one
            .sub(&psi.reciprocal()?)?
            .shift_left()
            .expect("order >= 1 while step <= k");
        let coefficient = theta.coeff(0).clone();
        if coefficient.is_zero() {
            return Ok(CfExpansion::Terminated {
                found: SFraction::new(h),
                at: step,
            });
        }
        psi = theta.scale(&coefficient.recip());
        h.push(coefficient);
    }
    Ok(CfExpansion::Complete(SFraction::new(h)))
}

/// Power series of the finite S-fraction through order `n`, built from the
/// innermost level outwards.
pub fn sfraction_to_series(cf: &SFraction, n: usize) -> TruncatedSeries {
    let one = TruncatedSeries::one(n);
    cf.h.iter().rev().fold(one.clone(), |inner, h| {
        one.sub(&inner.times_x().scale(h))
            .and_then(|d| d.reciprocal())
            .expect("constant term is 1")
    })
}

/// Even Hankel determinants `H_0, H_2, ..., H_{2 n_max}` from the running
/// coefficient products.
pub fn hankel_from_sfraction(cf: &SFraction, n_max: usize) -> Result<Vec<Rational>> {
    if cf.len() < 2 * n_max {
        return Err(Error::InsufficientTerms {
            needed: 2 * n_max,
            available: cf.len(),
        });
    }
    let mut out = Vec::with_capacity(n_max + 1);
    out.push(Rational::one());
    let mut product = Rational::one();
    for n in 1..=n_max {
        product = product * &cf.h[2 * n - 2] * &cf.h[2 * n - 1];
        let next = &product * &out[n - 1];
        out.push(next);
    }
    Ok(out)
}

/// `det(M)` for the `(n+1) x (n+1)` Hankel matrix `M[i][j] = omega_{i+j}`,
/// by fraction-free Bareiss elimination.
pub fn hankel_determinant_oracle(seq: &TruncatedSeries, n: usize) -> Result<Rational> {
    if seq.len() < 2 * n + 1 {
        return Err(Error::InsufficientTerms {
            needed: 2 * n + 1,
            available: seq.len(),
        });
    }
    let size = n + 1;
    let matrix = (0..size)
        .map(|i| (0..size).map(|j| seq.coeff(i + j).clone()).collect())
        .collect();
    Ok(bareiss_determinant(matrix))
}

/// Determinant of a square matrix by Bareiss elimination with row pivoting.
/// The division at each step is exact.
pub fn bareiss_determinant(mut a: Vec<Vec<Rational>>) -> Rational {
    let size = a.len();
    if size == 0 {
        return Rational::one();
    }
    let mut sign = Rational::one();
    let mut previous = Rational::one();
    for k in 0..size - 1 {
        if a[k][k].is_zero() {
            match (k + 1..size).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return Rational::zero(),
            }
        }
        for i in k + 1..size {
            for j in k + 1..size {
                let value = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &previous;
                a[i][j] = value;
            }
            a[i][k] = Rational::zero();
        }
        previous = a[k][k].clone();
    }
    sign * &a[size - 1][size - 1]
}
