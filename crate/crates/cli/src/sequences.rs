//! `gen`, `transform`, `cf` and `hankel`.

use anyhow::{bail, Context};
use clap::{Args, ValueEnum};
use qseq_core::cfhankel::{hankel_determinant_oracle, hankel_from_sfraction, series_to_sfraction, CfExpansion};
use qseq_core::mg1wait::{takacs_moments, ServiceMoments};
use qseq_core::mm1seq::{catalan_numbers, family_poly, family_series, FamilyTag, SigmaParameter};
use qseq_core::momentops::{
    binomial_convolution, exp_mixture, gf_to_moments, invert_operator, inverse_exp_mixture,
    scale_moments, stationary_excess, stationary_lifetime, MomentSequence,
};
use qseq_core::ratcore::{parse_rational, parse_rational_list};
use qseq_core::{Rational, TruncatedSeries};

use crate::payload::{read_sequence, Metadata, Payload, Values};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    Busy,
    BusyExcess,
    Emptiness,
    Catalan,
    /// M/G/1 waiting time; see `--service`.
    Waiting,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Form {
    /// Generating-function (mixing) coefficients.
    Gf,
    /// Raw moments `n! c_n`.
    Moments,
    /// Coefficients as polynomials in sigma.
    Poly,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Service {
    Exponential,
    Deterministic,
    CatalanH1,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[arg(long, value_enum)]
    pub family: Family,
    /// Rational literal such as `2` or `5/3`.
    #[arg(long, default_value = "1")]
    pub sigma: String,
    #[arg(long, default_value_t = 10)]
    pub count: usize,
    #[arg(long, value_enum, default_value = "gf")]
    pub form: Form,
    /// Service model for `--family waiting`.
    #[arg(long, value_enum, default_value = "catalan-h1")]
    pub service: Service,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Op {
    Excess,
    Lifetime,
    Em,
    InvEm,
    Invert,
    Convolve,
    Scale,
}

impl Op {
    fn name(self) -> &'static str {
        match self {
            Op::Excess => "excess",
            Op::Lifetime => "lifetime",
            Op::Em => "em",
            Op::InvEm => "inv-em",
            Op::Invert => "invert",
            Op::Convolve => "convolve",
            Op::Scale => "scale",
        }
    }
}

#[derive(Debug, Args)]
pub struct TransformArgs {
    #[arg(long, value_enum)]
    pub op: Op,
    /// Input sequence; read from stdin when omitted.
    #[arg(long)]
    pub input: Option<String>,
    /// Factor for `scale`.
    #[arg(long)]
    pub factor: Option<String>,
    /// Second moment sequence for `convolve`.
    #[arg(long = "with")]
    pub with: Option<String>,
}

#[derive(Debug, Args)]
pub struct CfArgs {
    #[arg(long)]
    pub input: Option<String>,
    /// Number of coefficients; defaults to the input length minus one.
    #[arg(long)]
    pub terms: Option<usize>,
}

#[derive(Debug, Args)]
pub struct HankelArgs {
    #[arg(long)]
    pub input: Option<String>,
    /// Largest index n of H_{2n}; defaults to what the input supports.
    #[arg(long)]
    pub terms: Option<usize>,
    /// Use direct determinants instead of continued-fraction products.
    #[arg(long)]
    pub oracle: bool,
}

fn sigma_param(text: &str) -> anyhow::Result<SigmaParameter> {
    Ok(SigmaParameter::new(parse_rational(text)?)?)
}

fn family_tag(family: Family) -> Option<FamilyTag> {
    match family {
        Family::Busy => Some(FamilyTag::Busy),
        Family::BusyExcess => Some(FamilyTag::BusyExcess),
        Family::Emptiness => Some(FamilyTag::Emptiness),
        Family::Catalan | Family::Waiting => None,
    }
}

fn family_name(family: Family) -> &'static str {
    match family_tag(family) {
        Some(tag) => tag.name(),
        None if family == Family::Catalan => "catalan",
        None => "waiting",
    }
}

pub fn gen(args: &GenArgs) -> anyhow::Result<Payload> {
    if args.count == 0 {
        bail!("--count must be at least 1");
    }
    let order = args.count - 1;
    let uses_sigma = !matches!(args.family, Family::Catalan);
    let sigma = if uses_sigma { Some(sigma_param(&args.sigma)?) } else { None };
    let meta = Metadata {
        family: Some(family_name(args.family).to_string()),
        sigma: sigma.as_ref().map(|s| s.to_string()),
        operations: vec![format!("gen --form {}", form_name(args.form))],
    };

    if args.form == Form::Poly {
        let tag = family_tag(args.family).context("--form poly is only defined for the sigma families")?;
        let polys = (0..args.count).map(|n| family_poly(tag, n).to_string()).collect();
        return Ok(Payload {
            values: Values::Text(polys),
            meta,
        });
    }

    let gf = match (args.family, &sigma) {
        (Family::Catalan, _) => TruncatedSeries::gf(catalan_numbers(args.count).into_iter().map(Rational::from_integer).collect()),
        (Family::Waiting, Some(s)) => {
            let service = match args.service {
                Service::Exponential => ServiceMoments::Exponential,
                Service::Deterministic => ServiceMoments::Deterministic,
                Service::CatalanH1 => ServiceMoments::CatalanH1,
            };
            TruncatedSeries::gf(takacs_moments(&service, s, order)?.mixing().to_vec())
        }
        (family, Some(s)) => family_series(family_tag(family).expect("sigma family"), s, order),
        _ => unreachable!("sigma is parsed for every family but catalan"),
    };
    let values = match args.form {
        Form::Gf => gf.into_coeffs(),
        Form::Moments => gf_to_moments(&gf)?.into_values(),
        Form::Poly => unreachable!(),
    };
    Ok(Payload::rationals(values, meta))
}

fn form_name(form: Form) -> &'static str {
    match form {
        Form::Gf => "gf",
        Form::Moments => "moments",
        Form::Poly => "poly",
    }
}

pub fn transform(args: &TransformArgs) -> anyhow::Result<Payload> {
    let (values, mut meta) = read_sequence(args.input.as_deref())?;
    let out = match args.op {
        Op::Excess => stationary_excess(&MomentSequence::new(values)?)?.into_values(),
        Op::Lifetime => stationary_lifetime(&MomentSequence::new(values)?)?.into_values(),
        Op::Em => exp_mixture(&TruncatedSeries::gf(values))?.into_coeffs(),
        Op::InvEm => inverse_exp_mixture(&TruncatedSeries::gf(values))?.into_coeffs(),
        Op::Invert => invert_operator(&TruncatedSeries::gf(values))?.into_coeffs(),
        Op::Convolve => {
            let other = args.with.as_deref().context("convolve needs --with")?;
            let other = MomentSequence::new(parse_rational_list(other)?)?;
            binomial_convolution(&MomentSequence::new(values)?, &other).into_values()
        }
        Op::Scale => {
            let factor = parse_rational(args.factor.as_deref().context("scale needs --factor")?)?;
            scale_moments(&MomentSequence::new(values)?, &factor)?.into_values()
        }
    };
    meta.operations.push(format!("transform --op {}", args.op.name()));
    Ok(Payload::rationals(out, meta))
}

/// Coefficients of the S-fraction. A terminating expansion is reported on
/// stderr together with the coefficients found.
pub fn cf(args: &CfArgs) -> anyhow::Result<Payload> {
    let (values, mut meta) = read_sequence(args.input.as_deref())?;
    let series = TruncatedSeries::gf(values);
    let k = args.terms.unwrap_or(series.order());
    let coeffs = match series_to_sfraction(&series, k)? {
        CfExpansion::Complete(cf) => cf.coeffs().to_vec(),
        CfExpansion::Terminated { found, at } => {
            eprintln!(
                "continued fraction terminates: coefficient {at} is zero, {} found",
                found.len()
            );
            found.coeffs().to_vec()
        }
    };
    meta.operations.push(format!("cf --terms {k}"));
    Ok(Payload::rationals(coeffs, meta))
}

pub fn hankel(args: &HankelArgs) -> anyhow::Result<Payload> {
    let (values, mut meta) = read_sequence(args.input.as_deref())?;
    let series = TruncatedSeries::gf(values);
    let supported = series.order() / 2;
    let n_max = args.terms.unwrap_or(supported);
    if n_max > supported {
        bail!("H_{} needs {} input terms, only {} given", 2 * n_max, 2 * n_max + 1, series.len());
    }
    let dets = if args.oracle {
        (0..=n_max)
            .map(|n| hankel_determinant_oracle(&series, n))
            .collect::<Result<Vec<_>, _>>()?
    } else {
        match series_to_sfraction(&series, 2 * n_max)? {
            CfExpansion::Complete(cf) => hankel_from_sfraction(&cf, n_max)?,
            CfExpansion::Terminated { at, .. } => {
                bail!("continued fraction terminates at coefficient {at}; use --oracle for direct determinants")
            }
        }
    };
    meta.operations.push(format!("hankel{}", if args.oracle { " --oracle" } else { "" }));
    Ok(Payload::rationals(dets, meta))
}
