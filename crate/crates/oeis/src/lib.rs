//! Offline OEIS store built from the "stripped" dump format, with shift-tolerant
//! verification, contiguous-run search and an opt-in remote fetch.
//!
//! Stripped lines look like `A000108 ,1,1,2,5,14,42,`. The format carries no
//! offsets, so records read from it have offset 0 and verification tolerates
//! small index shifts instead.

use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};
use std::time::Duration;

use num_bigint::BigInt;

/// The subset of the dump bundled with the crate.
pub const BUNDLED_FIXTURE: &str = include_str!("../fixtures/queueing_subset.txt");

/// Default shift window for [`SequenceStore::verify`].
pub const DEFAULT_MAX_SHIFT: usize = 3;

/// Shortest overlap that counts as a full match.
pub const MIN_MATCH_OVERLAP: usize = 5;

pub const DEFAULT_ENDPOINT: &str = "https://oeis.org/search";

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid A-number {0:?}: expected 'A' followed by 6 digits")]
    InvalidAnumber(String),

    #[error("line {line}: {reason}")]
    Malformed { line: usize, reason: String },

    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{0} is not in the store")]
    UnknownAnumber(String),

    #[error("record {0} has no terms")]
    NoTerms(String),

    #[error("invalid query: {0}")]
    InvalidQuery(String),

    #[error("remote fetch refused: network access is disabled")]
    Offline,

    #[error("remote fetch failed: {0}")]
    Network(String),

    #[error("unexpected response for {anumber}: {reason}")]
    Response { anumber: String, reason: String },
}

pub type Result<T> = std::result::Result<T, Error>;

/// Checks the canonical `A` + 6 digits form.
pub fn validate_anumber(id: &str) -> Result<()> {
    let ok = id.len() == 7 && id.starts_with('A') && id[1..].bytes().all(|b| b.is_ascii_digit());
    if ok {
        Ok(())
    } else {
        Err(Error::InvalidAnumber(id.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OeisRecord {
    anumber: String,
    terms: Vec<BigInt>,
    offset: i64,
}

impl OeisRecord {
    pub fn new(anumber: &str, terms: Vec<BigInt>) -> Result<Self> {
        validate_anumber(anumber)?;
        if terms.is_empty() {
            return Err(Error::NoTerms(anumber.to_string()));
        }
        Ok(Self {
            anumber: anumber.to_string(),
            terms,
            offset: 0,
        })
    }

    pub fn with_offset(mut self, offset: i64) -> Self {
        self.offset = offset;
        self
    }

    pub fn anumber(&self) -> &str {
        &self.anumber
    }

    pub fn terms(&self) -> &[BigInt] {
        &self.terms
    }

    pub fn offset(&self) -> i64 {
        self.offset
    }

    /// Parses one stripped-format data line. The trailing comma is optional.
    pub fn parse_line(line: &str) -> std::result::Result<Self, String> {
        let line = line.trim_end();
        let (id, rest) = line
            .split_once(char::is_whitespace)
            .ok_or_else(|| "expected 'A-number ,terms,'".to_string())?;
        validate_anumber(id).map_err(|e| e.to_string())?;
        let body = rest
            .trim_start()
            .strip_prefix(',')
            .ok_or_else(|| "term list must start with ','".to_string())?;
        let body = body.strip_suffix(',').unwrap_or(body);
        if body.is_empty() {
            return Err(format!("{id} has no terms"));
        }
        let terms = body
            .split(',')
            .map(|t| t.parse::<BigInt>().map_err(|_| format!("bad term {t:?}")))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        Ok(Self {
            anumber: id.to_string(),
            terms,
            offset: 0,
        })
    }

    /// Canonical stripped line, with trailing comma.
    pub fn to_stripped_line(&self) -> String {
        let mut out = format!("{} ,", self.anumber);
        for t in &self.terms {
            out.push_str(&t.to_string());
            out.push(',');
        }
        out
    }
}

impl fmt::Display for OeisRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_stripped_line())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    /// `candidate[i] == terms[i + shift]` over an overlap of at least
    /// [`MIN_MATCH_OVERLAP`].
    Match { shift: i64 },
    /// Agreement at `shift`, but over fewer than [`MIN_MATCH_OVERLAP`] terms.
    PrefixMatch { shift: i64, overlap: usize },
    NoMatch,
}

impl Verdict {
    pub fn is_match(&self) -> bool {
        matches!(self, Verdict::Match { .. })
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Match { shift } => write!(f, "MATCH(shift {shift})"),
            Verdict::PrefixMatch { shift, overlap } => {
                write!(f, "PREFIX_MATCH(shift {shift}, overlap {overlap})")
            }
            Verdict::NoMatch => f.write_str("NO_MATCH"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchHit {
    pub anumber: String,
    pub shift: i64,
}

/// Immutable after loading; lookups take `&self`.
#[derive(Debug, Clone, Default)]
pub struct SequenceStore {
    records: BTreeMap<String, OeisRecord>,
}

/// Shifts in the order `0, 1, -1, 2, -2, ...`.
fn shift_order(max_shift: usize) -> impl Iterator<Item = i64> {
    std::iter::once(0).chain((1..=max_shift as i64).flat_map(|s| [s, -s]))
}

/// Aligned agreement of `candidate[i]` with `terms[i + shift]`; `None` on
/// a disagreement, else the overlap length.
fn aligned_overlap(candidate: &[BigInt], terms: &[BigInt], shift: i64) -> Option<usize> {
    let (c, t) = if shift >= 0 {
        (candidate, terms.get(shift as usize..).unwrap_or(&[]))
    } else {
        (candidate.get((-shift) as usize..).unwrap_or(&[]), terms)
    };
    let overlap = c.len().min(t.len());
    (c[..overlap] == t[..overlap]).then_some(overlap)
}

impl SequenceStore {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn bundled() -> Self {
        Self::parse_stripped(BUNDLED_FIXTURE).expect("bundled fixture is well formed")
    }

    pub fn load_stripped(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })?;
        Self::parse_stripped(&text)
    }

    pub fn parse_stripped(text: &str) -> Result<Self> {
        let mut store = Self::new();
        for (i, line) in text.lines().enumerate() {
            let trimmed = line.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let record = OeisRecord::parse_line(trimmed).map_err(|reason| Error::Malformed { line: i + 1, reason })?;
            if store.records.contains_key(record.anumber()) {
                log::warn!("line {}: duplicate {}, keeping the later entry", i + 1, record.anumber());
            }
            store.insert(record);
        }
        Ok(store)
    }

    pub fn insert(&mut self, record: OeisRecord) {
        self.records.insert(record.anumber.clone(), record);
    }

    pub fn get(&self, anumber: &str) -> Option<&OeisRecord> {
        self.records.get(anumber)
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &OeisRecord> {
        self.records.values()
    }

    /// Tries shifts `0, 1, -1, ...` up to `max_shift`. The first full match
    /// wins; failing that, the longest partial agreement is reported.
    pub fn verify(&self, candidate: &[BigInt], anumber: &str, max_shift: usize) -> Result<Verdict> {
        if candidate.is_empty() {
            return Err(Error::InvalidQuery("candidate is empty".into()));
        }
        validate_anumber(anumber)?;
        let record = self
            .get(anumber)
            .ok_or_else(|| Error::UnknownAnumber(anumber.to_string()))?;
        let mut best = Verdict::NoMatch;
        let mut best_overlap = 0;
        for shift in shift_order(max_shift) {
            match aligned_overlap(candidate, &record.terms, shift) {
                Some(overlap) if overlap >= MIN_MATCH_OVERLAP => return Ok(Verdict::Match { shift }),
                Some(overlap) if overlap > best_overlap => {
                    best_overlap = overlap;
                    best = Verdict::PrefixMatch { shift, overlap };
                }
                _ => {}
            }
        }
        Ok(best)
    }

    /// Every record containing `candidate` as a contiguous run; `shift` is
    /// the run's starting index in the record.
    pub fn search(&self, candidate: &[BigInt], min_overlap: usize) -> Result<Vec<SearchHit>> {
        if min_overlap < MIN_MATCH_OVERLAP || candidate.len() < min_overlap {
            return Err(Error::InvalidQuery(format!(
                "need candidate length >= min_overlap >= {MIN_MATCH_OVERLAP}, got {} and {min_overlap}",
                candidate.len()
            )));
        }
        let mut hits = Vec::new();
        for record in self.records.values() {
            for (start, window) in record.terms.windows(candidate.len()).enumerate() {
                if window == candidate {
                    hits.push(SearchHit {
                        anumber: record.anumber.clone(),
                        shift: start as i64,
                    });
                }
            }
        }
        Ok(hits)
    }
}

/// Remote access settings. Disabled unless explicitly switched on.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RemoteConfig {
    pub enabled: bool,
    pub endpoint: String,
    pub timeout: Duration,
}

impl Default for RemoteConfig {
    fn default() -> Self {
        Self {
            enabled: false,
            endpoint: DEFAULT_ENDPOINT.to_string(),
            timeout: Duration::from_secs(20),
        }
    }
}

/// Fetches one record from the JSON search endpoint (`?q=id:A......&fmt=json`).
pub fn fetch_remote(config: &RemoteConfig, anumber: &str) -> Result<OeisRecord> {
    validate_anumber(anumber)?;
    if !config.enabled {
        return Err(Error::Offline);
    }
    let agent: ureq::Agent = ureq::Agent::config_builder()
        .timeout_global(Some(config.timeout))
        .build()
        .into();
    let body = agent
        .get(&config.endpoint)
        .query("q", format!("id:{anumber}"))
        .query("fmt", "json")
        .call()
        .map_err(|e| Error::Network(e.to_string()))?
        .body_mut()
        .read_to_string()
        .map_err(|e| Error::Network(e.to_string()))?;
    parse_remote_json(anumber, &body)
}

/// Extracts `anumber` from a search response, either `{"results": [...]}` or
/// a bare array of entries with `number` and a comma-separated `data` field.
pub fn parse_remote_json(anumber: &str, body: &str) -> Result<OeisRecord> {
    let bad = |reason: &str| Error::Response {
        anumber: anumber.to_string(),
        reason: reason.to_string(),
    };
    let value: serde_json::Value = serde_json::from_str(body).map_err(|e| bad(&e.to_string()))?;
    let entries = match &value {
        serde_json::Value::Array(items) => items,
        serde_json::Value::Object(map) => match map.get("results") {
            Some(serde_json::Value::Array(items)) => items,
            _ => return Err(bad("no results")),
        },
        _ => return Err(bad("expected an object or array")),
    };
    let wanted: u64 = anumber[1..].parse().map_err(|_| bad("bad A-number"))?;
    let entry = entries
        .iter()
        .find(|e| e.get("number").and_then(|n| n.as_u64()) == Some(wanted))
        .ok_or_else(|| bad("entry not present in response"))?;
    let data = entry
        .get("data")
        .and_then(|d| d.as_str())
        .ok_or_else(|| bad("entry has no data field"))?;
    let terms = data
        .split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<BigInt>().map_err(|_| bad(&format!("bad term {t:?}"))))
        .collect::<Result<Vec<_>>>()?;
    let offset = entry
        .get("offset")
        .and_then(|o| o.as_str())
        .and_then(|o| o.split(',').next())
        .and_then(|o| o.trim().parse().ok())
        .unwrap_or(0);
    Ok(OeisRecord::new(anumber, terms)?.with_offset(offset))
}
