//! `qseq`: generate, transform and check the queueing integer sequences.
//!
//! Exit status: 0 on success or match, 1 on a semantic mismatch, 2 on usage
//! or I/O errors.

mod config;
mod oeis;
mod payload;
mod sequences;
mod validate;

use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use config::Config;
use payload::Format;

#[derive(Debug, Parser)]
#[command(name = "qseq", version, about)]
struct Cli {
    /// Output format; falls back to `output.format` in the config, then plain.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// First index for b-file output.
    #[arg(long, global = true)]
    offset: Option<i64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Generate a family of coefficients.
    Gen(sequences::GenArgs),
    /// Apply a moment or generating-function operator.
    Transform(sequences::TransformArgs),
    /// S-fraction coefficients of a series.
    Cf(sequences::CfArgs),
    /// Even Hankel determinants H_0, H_2, ... of a series.
    Hankel(sequences::HankelArgs),
    /// Check sequences against OEIS entries.
    Oeis(oeis::OeisArgs),
    /// Numeric and exact validation tables.
    Validate(validate::ValidateArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Success,
    Mismatch,
}

fn run(cli: &Cli) -> anyhow::Result<(String, Outcome)> {
    let config = Config::from_env()?;
    let format = match cli.format {
        Some(f) => f,
        None => match &config.output.format {
            Some(name) => name.parse()?,
            None => Format::Plain,
        },
    };
    let offset = cli.offset.or(config.output.offset).unwrap_or(0);
    let payload = match &cli.command {
        Command::Gen(args) => sequences::gen(args)?,
        Command::Transform(args) => sequences::transform(args)?,
        Command::Cf(args) => sequences::cf(args)?,
        Command::Hankel(args) => sequences::hankel(args)?,
        Command::Oeis(args) => return oeis::run(args, &config, format),
        Command::Validate(args) => return validate::run(args, &config, format),
    };
    Ok((payload.render(format, offset)?, Outcome::Success))
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(&cli) {
        Ok((text, outcome)) => {
            let mut stdout = std::io::stdout().lock();
            if let Err(e) = stdout.write_all(text.as_bytes()).and_then(|_| stdout.flush()) {
                if e.kind() != std::io::ErrorKind::BrokenPipe {
                    eprintln!("qseq: {e}");
                    return ExitCode::from(2);
                }
            }
            match outcome {
                Outcome::Success => ExitCode::SUCCESS,
                Outcome::Mismatch => ExitCode::from(1),
            }
        }
        Err(e) => {
            eprintln!("qseq: {e:#}");
            ExitCode::from(2)
        }
    }
}
