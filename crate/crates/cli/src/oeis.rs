//! `oeis verify | search | fetch`.

use std::path::PathBuf;
use std::time::Duration;

use anyhow::{anyhow, Context};
use clap::{Args, Subcommand};
use num_bigint::BigInt;
use qseq_core::ratcore::as_integer;
use qseq_oeis::{fetch_remote, RemoteConfig, SequenceStore, Verdict, DEFAULT_MAX_SHIFT, MIN_MATCH_OVERLAP};
use serde::Serialize;

use crate::config::{Config, DUMP_ENV};
use crate::payload::{read_sequence, Format};
use crate::Outcome;

#[derive(Debug, Args)]
pub struct OeisArgs {
    #[command(subcommand)]
    pub action: OeisAction,
    /// Stripped dump to load instead of the bundled fixture.
    #[arg(long, global = true, env = DUMP_ENV)]
    pub dump: Option<PathBuf>,
    /// Allow network access (verify falls back to a remote lookup for
    /// identifiers missing from the store).
    #[arg(long, global = true)]
    pub online: bool,
    /// Remote search endpoint.
    #[arg(long, global = true)]
    pub endpoint: Option<String>,
}

#[derive(Debug, Subcommand)]
pub enum OeisAction {
    /// Compare a sequence against one A-number, allowing index shifts.
    Verify {
        #[arg(long)]
        anumber: String,
        #[arg(long)]
        input: Option<String>,
        #[arg(long)]
        max_shift: Option<usize>,
    },
    /// List every entry containing the sequence as a contiguous run.
    Search {
        #[arg(long)]
        input: Option<String>,
        #[arg(long)]
        min_overlap: Option<usize>,
    },
    /// Fetch one entry from the remote endpoint (needs `--online`).
    Fetch {
        #[arg(long)]
        anumber: String,
    },
}

#[derive(Serialize)]
struct VerifyReport<'a> {
    anumber: &'a str,
    verdict: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    shift: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    overlap: Option<usize>,
}

#[derive(Serialize)]
struct SearchReport {
    anumber: String,
    shift: i64,
}

fn integers(input: Option<&str>) -> anyhow::Result<Vec<BigInt>> {
    let (values, _) = read_sequence(input)?;
    values
        .iter()
        .map(|v| as_integer(v).ok_or_else(|| anyhow!("OEIS lookups need integers, found {v}")))
        .collect()
}

fn remote_config(args: &OeisArgs, config: &Config) -> RemoteConfig {
    let defaults = RemoteConfig::default();
    RemoteConfig {
        enabled: args.online || config.oeis.online.unwrap_or(false),
        endpoint: args
            .endpoint
            .clone()
            .or_else(|| config.oeis.endpoint.clone())
            .unwrap_or(defaults.endpoint),
        timeout: config.oeis.timeout_secs.map(Duration::from_secs).unwrap_or(defaults.timeout),
    }
}

fn load_store(args: &OeisArgs, config: &Config) -> anyhow::Result<SequenceStore> {
    match args.dump.as_ref().or(config.oeis.dump.as_ref()) {
        Some(path) => SequenceStore::load_stripped(path).with_context(|| format!("loading {}", path.display())),
        None => Ok(SequenceStore::bundled()),
    }
}

pub fn run(args: &OeisArgs, config: &Config, format: Format) -> anyhow::Result<(String, Outcome)> {
    let remote = remote_config(args, config);
    match &args.action {
        OeisAction::Verify {
            anumber,
            input,
            max_shift,
        } => {
            let candidate = integers(input.as_deref())?;
            let mut store = load_store(args, config)?;
            if store.get(anumber).is_none() && remote.enabled {
                store.insert(fetch_remote(&remote, anumber)?);
            }
            let max_shift = max_shift.or(config.oeis.max_shift).unwrap_or(DEFAULT_MAX_SHIFT);
            let verdict = store.verify(&candidate, anumber, max_shift)?;
            let outcome = if verdict.is_match() { Outcome::Success } else { Outcome::Mismatch };
            let text = match format {
                Format::Json => {
                    let (name, shift, overlap) = match verdict {
                        Verdict::Match { shift } => ("MATCH", Some(shift), None),
                        Verdict::PrefixMatch { shift, overlap } => ("PREFIX_MATCH", Some(shift), Some(overlap)),
                        Verdict::NoMatch => ("NO_MATCH", None, None),
                    };
                    let report = VerifyReport {
                        anumber,
                        verdict: name,
                        shift,
                        overlap,
                    };
                    serde_json::to_string_pretty(&report)? + "\n"
                }
                _ => format!("{anumber} {verdict}\n"),
            };
            Ok((text, outcome))
        }
        OeisAction::Search { input, min_overlap } => {
            let candidate = integers(input.as_deref())?;
            let store = load_store(args, config)?;
            let min_overlap = min_overlap.or(config.oeis.min_overlap).unwrap_or(MIN_MATCH_OVERLAP);
            let hits = store.search(&candidate, min_overlap)?;
            let outcome = if hits.is_empty() { Outcome::Mismatch } else { Outcome::Success };
            let text = match format {
                Format::Json => {
                    let report: Vec<SearchReport> = hits
                        .into_iter()
                        .map(|h| SearchReport {
                            anumber: h.anumber,
                            shift: h.shift,
                        })
                        .collect();
                    serde_json::to_string_pretty(&report)? + "\n"
                }
                _ if hits.is_empty() => "no matches\n".to_string(),
                _ => hits
                    .iter()
                    .map(|h| format!("{} shift {}\n", h.anumber, h.shift))
                    .collect(),
            };
            Ok((text, outcome))
        }
        OeisAction::Fetch { anumber } => {
            let record = fetch_remote(&remote, anumber)?;
            Ok((record.to_stripped_line() + "\n", Outcome::Success))
        }
    }
}
