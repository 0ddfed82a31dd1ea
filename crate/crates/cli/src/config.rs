//! Optional TOML config, located through `QSEQ_CONFIG`. Command-line flags
//! always win over file values.
//!
//! ```toml
//! [output]
//! format = "json"
//! offset = 0
//!
//! [oeis]
//! dump = "/data/oeis/stripped"
//! online = false
//! endpoint = "https://oeis.org/search"
//! max_shift = 3
//! min_overlap = 5
//! timeout_secs = 20
//!
//! [validate]
//! tol = 1e-8
//! ```

use std::path::{Path, PathBuf};

use anyhow::Context;
use serde::Deserialize;

pub const CONFIG_ENV: &str = "QSEQ_CONFIG";
pub const DUMP_ENV: &str = "QSEQ_OEIS_DUMP";

#[derive(Debug, Default, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Config {
    pub output: OutputConfig,
    pub oeis: OeisConfig,
    pub validate: ValidateConfig,
}

#[derive(Debug, Default, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct OutputConfig {
    pub format: Option<String>,
    pub offset: Option<i64>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct OeisConfig {
    pub dump: Option<PathBuf>,
    pub online: Option<bool>,
    pub endpoint: Option<String>,
    pub max_shift: Option<usize>,
    pub min_overlap: Option<usize>,
    pub timeout_secs: Option<u64>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ValidateConfig {
    pub tol: Option<f64>,
}

impl Config {
    pub fn load(path: &Path) -> anyhow::Result<Self> {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading config {}", path.display()))?;
        toml::from_str(&text).with_context(|| format!("parsing config {}", path.display()))
    }

    /// Reads the file named by `QSEQ_CONFIG`, if set.
    pub fn from_env() -> anyhow::Result<Self> {
        match std::env::var_os(CONFIG_ENV) {
            Some(path) if !path.is_empty() => Self::load(Path::new(&path)),
            _ => Ok(Self::default()),
        }
    }
}
