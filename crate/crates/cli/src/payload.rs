//! Sequence input and output. Sequences travel as comma-separated `p/q`
//! text, JSON with string-encoded values, or OEIS b-file lines.

use std::io::Read;

use anyhow::{anyhow, bail, Context};
use clap::ValueEnum;
use qseq_core::ratcore::{as_integer, format_rational_list, parse_rational, parse_rational_list};
use qseq_core::Rational;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Plain,
    Json,
    Bfile,
}

impl std::str::FromStr for Format {
    type Err = anyhow::Error;

    fn from_str(s: &str) -> anyhow::Result<Self> {
        <Self as ValueEnum>::from_str(s, true).map_err(|_| anyhow!("unknown output format {s:?}"))
    }
}

/// Provenance carried through JSON pipelines.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Metadata {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub family: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sigma: Option<String>,
    #[serde(default)]
    pub operations: Vec<String>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Values {
    Rationals(Vec<Rational>),
    /// Preformatted entries such as polynomials.
    Text(Vec<String>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Payload {
    pub values: Values,
    pub meta: Metadata,
}

#[derive(Serialize, Deserialize)]
struct JsonPayload {
    #[serde(flatten)]
    meta: Metadata,
    count: usize,
    values: Vec<String>,
}

impl Payload {
    pub fn rationals(values: Vec<Rational>, meta: Metadata) -> Self {
        Self {
            values: Values::Rationals(values),
            meta,
        }
    }

    fn strings(&self) -> Vec<String> {
        match &self.values {
            Values::Rationals(v) => v.iter().map(ToString::to_string).collect(),
            Values::Text(v) => v.clone(),
        }
    }

    pub fn render(&self, format: Format, offset: i64) -> anyhow::Result<String> {
        let mut out = match format {
            Format::Plain => match &self.values {
                Values::Rationals(v) => format_rational_list(v),
                Values::Text(v) => v.join("\n"),
            },
            Format::Json => {
                let values = self.strings();
                let body = JsonPayload {
                    meta: self.meta.clone(),
                    count: values.len(),
                    values,
                };
                serde_json::to_string_pretty(&body)?
            }
            Format::Bfile => {
                let Values::Rationals(values) = &self.values else {
                    bail!("b-file output needs an integer sequence");
                };
                let mut lines = Vec::with_capacity(values.len());
                for (i, v) in values.iter().enumerate() {
                    let n = as_integer(v).ok_or_else(|| anyhow!("b-file output needs integers, found {v}"))?;
                    lines.push(format!("{} {n}", offset + i as i64));
                }
                lines.join("\n")
            }
        };
        out.push('\n');
        Ok(out)
    }
}

/// Reads a sequence from `input`, or stdin when absent. JSON payloads
/// produced by this tool are accepted as well as plain lists.
pub fn read_sequence(input: Option<&str>) -> anyhow::Result<(Vec<Rational>, Metadata)> {
    let text = match input {
        Some(text) => text.to_string(),
        None => {
            let mut buf = String::new();
            std::io::stdin().read_to_string(&mut buf).context("reading stdin")?;
            buf
        }
    };
    let trimmed = text.trim();
    let (values, meta) = if trimmed.starts_with('{') {
        let payload: JsonPayload = serde_json::from_str(trimmed).context("parsing JSON input")?;
        let values = payload
            .values
            .iter()
            .map(|v| parse_rational(v))
            .collect::<Result<Vec<_>, _>>()?;
        (values, payload.meta)
    } else {
        (parse_rational_list(trimmed)?, Metadata::default())
    };
    if values.is_empty() {
        bail!("input sequence is empty");
    }
    Ok((values, meta))
}
