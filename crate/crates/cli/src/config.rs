//! Sweep configuration: suite selection, the two-part split filter, and the
//! per-suite size limits that keep exhaustive runs inside desk-scale budgets.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

/// One independently runnable family of checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    /// Escher/correct counts, coefficients, and the counting identity.
    Counts,
    /// The split/splice round trip and injectivity per two-part split.
    Roundtrip,
    /// Window trichotomy, purity, insertion-chain, and impossibility lemmas.
    Lemmas,
    /// Equality of the two chromatic symmetric function algorithms.
    Chromatic,
    /// Nonnegativity of every e-basis coefficient.
    Positivity,
    /// Acyclic-orientation sink counts against coefficient masses.
    Sinks,
    /// The clique-expansion bridge and generating-function identities.
    Gnechrom,
}

impl Suite {
    pub fn all() -> Vec<Suite> {
        vec![
            Suite::Counts,
            Suite::Roundtrip,
            Suite::Lemmas,
            Suite::Chromatic,
            Suite::Positivity,
            Suite::Sinks,
            Suite::Gnechrom,
        ]
    }

    pub fn name(self) -> &'static str {
        match self {
            Suite::Counts => "counts",
            Suite::Roundtrip => "roundtrip",
            Suite::Lemmas => "lemmas",
            Suite::Chromatic => "chromatic",
            Suite::Positivity => "positivity",
            Suite::Sinks => "sinks",
            Suite::Gnechrom => "gnechrom",
        }
    }

    /// Largest UIO size the suite accepts.
    pub fn max_n(self) -> usize {
        match self {
            Suite::Counts | Suite::Roundtrip => 8,
            Suite::Lemmas => 7,
            Suite::Chromatic | Suite::Positivity | Suite::Sinks => 6,
            Suite::Gnechrom => 3,
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Suite::all()
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| format!("unknown suite '{}'", s))
    }
}

/// Which two-part splits (n, k), n >= k >= 1, n + k = N, a sweep covers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LambdaFilter {
    All,
    One(usize, usize),
}

impl LambdaFilter {
    /// The covered splits, largest first part first.
    pub fn splits(self, n_total: usize) -> Vec<(usize, usize)> {
        match self {
            LambdaFilter::All => (1..=n_total / 2).map(|k| (n_total - k, k)).collect(),
            LambdaFilter::One(n, k) => vec![(n, k)],
        }
    }
}

impl fmt::Display for LambdaFilter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LambdaFilter::All => f.write_str("all"),
            LambdaFilter::One(n, k) => write!(f, "{},{}", n, k),
        }
    }
}

impl FromStr for LambdaFilter {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "all" {
            return Ok(LambdaFilter::All);
        }
        let parts: Vec<&str> = s.split(',').collect();
        if parts.len() != 2 {
            return Err(format!("expected 'n,k' or 'all', got '{}'", s));
        }
        let n: usize = parts[0]
            .trim()
            .parse()
            .map_err(|_| format!("bad split component '{}'", parts[0]))?;
        let k: usize = parts[1]
            .trim()
            .parse()
            .map_err(|_| format!("bad split component '{}'", parts[1]))?;
        Ok(LambdaFilter::One(n, k))
    }
}

/// A shard `index/count` of the UIO list, round-robin by position.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Shard {
    pub index: usize,
    pub count: usize,
}

impl fmt::Display for Shard {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.index, self.count)
    }
}

impl FromStr for Shard {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<&str> = s.split('/').collect();
        if parts.len() != 2 {
            return Err(format!("expected 'index/count', got '{}'", s));
        }
        let index = parts[0]
            .parse()
            .map_err(|_| format!("bad shard index '{}'", parts[0]))?;
        let count = parts[1]
            .parse()
            .map_err(|_| format!("bad shard count '{}'", parts[1]))?;
        if count == 0 || index >= count {
            return Err(format!("shard index {} out of range for count {}", index, count));
        }
        Ok(Shard { index, count })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            other => Err(format!("unknown format '{}'", other)),
        }
    }
}

#[derive(Debug, Clone)]
pub struct SweepConfig {
    pub n: usize,
    pub lambda: LambdaFilter,
    pub suites: Vec<Suite>,
    pub jobs: usize,
    pub out_path: std::path::PathBuf,
    pub format: Format,
    pub resume: bool,
    pub shard: Option<Shard>,
}

impl SweepConfig {
    /// Rejects size/filter combinations outside the verified envelope.
    pub fn validate(&self) -> Result<(), String> {
        if self.n < 1 || self.n > 8 {
            return Err(format!("UIO size {} out of range 1..=8", self.n));
        }
        if self.jobs < 1 {
            return Err("job count must be at least 1".into());
        }
        if self.suites.is_empty() {
            return Err("no suites selected".into());
        }
        let mut seen = self.suites.clone();
        seen.sort();
        seen.dedup();
        if seen.len() != self.suites.len() {
            return Err("duplicate suite selected".into());
        }
        for &suite in &self.suites {
            if self.n > suite.max_n() {
                return Err(format!(
                    "suite '{}' supports N <= {}, got N = {}",
                    suite,
                    suite.max_n(),
                    self.n
                ));
            }
        }
        if let LambdaFilter::One(n, k) = self.lambda {
            if k < 1 || n < k || n + k != self.n {
                return Err(format!(
                    "split {},{} is not a two-part partition of {}",
                    n, k, self.n
                ));
            }
        }
        Ok(())
    }
}
