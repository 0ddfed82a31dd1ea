//! `validate`: numeric and exact cross-checks printed as a pass/fail table.

use std::path::PathBuf;

use anyhow::{bail, Context};
use clap::{Args, ValueEnum};
use num_traits::ToPrimitive;
use qseq_core::bdproc::{p00_series, BirthDeathRates, Mm1Rates, TabulatedRates};
use qseq_core::mm1seq::{catalan, emptiness_coefficient, family_series, FamilyTag, SigmaParameter};
use qseq_core::numeval::{catalan_egf, catalan_egf_partial_sum, quad_moment, quad_weighted, DensitySpec};
use qseq_core::ratcore::parse_rational;
use qseq_core::Rational;
use serde::Serialize;

use crate::config::Config;
use crate::payload::Format;
use crate::Outcome;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Check {
    /// Mass and first two moments of the busy-period density.
    BusyPdf,
    /// Moments of the Catalan mixing density against C_n.
    MixingH1,
    /// Moments of the busy-excess mixing density against b_e,n(sigma).
    MixingBe,
    /// Closed-form Catalan EGF against a partial sum.
    CatalanEgf,
    /// Birth-death return series against (-1)^n p_n(sigma), exact.
    BdConsistency,
}

#[derive(Debug, Args)]
pub struct ValidateArgs {
    #[arg(long, value_enum)]
    pub check: Check,
    /// Relative tolerance (default 1e-8, or `validate.tol` from the config).
    #[arg(long)]
    pub tol: Option<f64>,
    /// Rational sigma for mixing-be and bd-consistency.
    #[arg(long, default_value = "1")]
    pub sigma: String,
    /// Traffic intensity for busy-pdf.
    #[arg(long, default_value_t = 0.5)]
    pub rho: f64,
    /// Evaluation points for catalan-egf; repeatable.
    #[arg(long = "x", default_values_t = vec![0.0, 0.5, 1.0])]
    pub x: Vec<f64>,
    /// Number of moments or coefficients to compare.
    #[arg(long)]
    pub count: Option<usize>,
    /// Partial-sum length for catalan-egf.
    #[arg(long, default_value_t = 20)]
    pub terms: usize,
    /// Rates for bd-consistency: `mm1` or a file of `k lambda_k mu_k` lines.
    #[arg(long)]
    pub rates: Option<PathBuf>,
}

#[derive(Debug, Serialize)]
pub struct Row {
    pub quantity: String,
    pub expected: String,
    pub computed: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<f64>,
    pub pass: bool,
}

fn numeric_row(quantity: String, expected: f64, computed: f64, tol: f64) -> Row {
    let error = if expected == 0.0 {
        (computed - expected).abs()
    } else {
        ((computed - expected) / expected).abs()
    };
    Row {
        quantity,
        expected: format!("{expected}"),
        computed: format!("{computed}"),
        error: Some(error),
        pass: error <= tol,
    }
}

fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

fn moment_rows(spec: &DensitySpec, expected: &[f64], tol: f64) -> anyhow::Result<Vec<Row>> {
    expected
        .iter()
        .enumerate()
        .map(|(n, &e)| Ok(numeric_row(format!("moment {n}"), e, quad_moment(spec, n as u32, tol.max(1e-10))?, tol)))
        .collect()
}

pub fn rows(args: &ValidateArgs, tol: f64) -> anyhow::Result<Vec<Row>> {
    if tol.is_nan() || tol <= 0.0 {
        bail!("--tol must be positive");
    }
    if args.count == Some(0) {
        bail!("--count must be at least 1");
    }
    match args.check {
        Check::MixingH1 => {
            let count = args.count.unwrap_or(7).min(9);
            let expected: Vec<f64> = (0..count).map(|n| catalan(n).to_f64().unwrap_or(f64::NAN)).collect();
            moment_rows(&DensitySpec::mixing_h1(), &expected, tol)
        }
        Check::MixingBe => {
            let sigma = SigmaParameter::new(parse_rational(&args.sigma)?)?;
            let count = args.count.unwrap_or(5).min(9);
            let exact = family_series(FamilyTag::BusyExcess, &sigma, count - 1);
            let expected: Vec<f64> = exact.coeffs().iter().map(to_f64).collect();
            moment_rows(&DensitySpec::mixing_be(to_f64(sigma.value()))?, &expected, tol)
        }
        Check::BusyPdf => {
            let rho = args.rho;
            let spec = DensitySpec::busy_pdf(rho)?;
            let q = tol.max(1e-10);
            let one_minus = 1.0 - rho;
            Ok(vec![
                numeric_row("mass".into(), 1.0, quad_weighted(&spec, |_| 1.0, q)?.value, tol),
                numeric_row("mean".into(), 1.0 / one_minus, quad_moment(&spec, 1, q)?, tol),
                numeric_row("second moment".into(), 2.0 / one_minus.powi(3), quad_moment(&spec, 2, q)?, tol),
            ])
        }
        Check::CatalanEgf => args
            .x
            .iter()
            .map(|&x| {
                Ok(numeric_row(
                    format!("x = {x}"),
                    catalan_egf_partial_sum(x, args.terms),
                    catalan_egf(x)?,
                    tol,
                ))
            })
            .collect(),
        Check::BdConsistency => {
            let sigma = SigmaParameter::new(parse_rational(&args.sigma)?)?;
            let count = args.count.unwrap_or(10);
            let rates: Box<dyn BirthDeathRates> = match &args.rates {
                None => Box::new(Mm1Rates::new(sigma.clone())),
                Some(path) if path.as_os_str() == "mm1" => Box::new(Mm1Rates::new(sigma.clone())),
                Some(path) => {
                    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
                    Box::new(TabulatedRates::parse(&text)?)
                }
            };
            let series = p00_series(rates.as_ref(), count - 1)?;
            Ok(series
                .coeffs()
                .iter()
                .enumerate()
                .map(|(n, c)| {
                    let p = emptiness_coefficient(n, &sigma);
                    let expected = if n % 2 == 1 { -p } else { p };
                    Row {
                        quantity: format!("coefficient {n}"),
                        expected: expected.to_string(),
                        computed: c.to_string(),
                        error: None,
                        pass: *c == expected,
                    }
                })
                .collect())
        }
    }
}

fn render(rows: &[Row], format: Format) -> anyhow::Result<String> {
    if format == Format::Json {
        return Ok(serde_json::to_string_pretty(rows)? + "\n");
    }
    let header = ["quantity", "expected", "computed", "error", "status"];
    let body: Vec<[String; 5]> = rows
        .iter()
        .map(|r| {
            [
                r.quantity.clone(),
                r.expected.clone(),
                r.computed.clone(),
                r.error.map_or_else(|| "exact".to_string(), |e| format!("{e:.2e}")),
                if r.pass { "pass" } else { "FAIL" }.to_string(),
            ]
        })
        .collect();
    let mut widths = header.map(str::len);
    for row in &body {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.len());
        }
    }
    let line = |cells: &[String]| {
        let padded: Vec<String> = cells.iter().zip(widths).map(|(c, w)| format!("{c:<w$}")).collect();
        padded.join("  ").trim_end().to_string() + "\n"
    };
    let mut out = line(&header.map(String::from));
    for row in &body {
        out += &line(row);
    }
    Ok(out)
}

pub fn run(args: &ValidateArgs, config: &Config, format: Format) -> anyhow::Result<(String, Outcome)> {
    let tol = args.tol.or(config.validate.tol).unwrap_or(1e-8);
    let rows = rows(args, tol)?;
    let outcome = if rows.iter().all(|r| r.pass) { Outcome::Success } else { Outcome::Mismatch };
    Ok((render(&rows, format)?, outcome))
}
