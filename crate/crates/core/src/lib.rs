//! Exact operational calculus on probability moment sequences, and the
//! integer sequences it produces for the M/M/1 busy period, the M/M/1
//! equilibrium time to emptiness and the M/G/1 stationary waiting time.
//!
//! All sequence work is done in exact rational arithmetic. Floating point
//! appears only in [`numeval`], which checks the exact results against the
//! analytic densities they are moments of.

pub mod bdproc;
pub mod cfhankel;
mod error;
pub mod mg1wait;
pub mod mm1seq;
pub mod momentops;
pub mod numeval;
pub mod ratcore;

pub use error::{Error, Result};
pub use ratcore::{Rational, SeriesKind, SigmaPolynomial, TruncatedSeries};
