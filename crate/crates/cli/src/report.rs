//! Report data model, canonical serialization, and shard merging. Reports
//! are fully deterministic: every map is ordered and no timing information
//! is recorded.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::config::{Suite, SweepConfig};

/// The mathematical scope of a run. Sharding, job counts, and output paths
/// deliberately stay out: shards of one sweep must merge cleanly.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfigEcho {
    pub n: usize,
    pub lambda: String,
    pub suites: Vec<Suite>,
}

impl ConfigEcho {
    pub fn from_config(config: &SweepConfig) -> Self {
        let mut suites = config.suites.clone();
        suites.sort();
        ConfigEcho {
            n: config.n,
            lambda: config.lambda.to_string(),
            suites,
        }
    }

}

/// Outcome of one named check on one UIO. `informational` marks outcomes
/// that are reported but make no pass/fail claim (splits outside the proven
/// coprime scope); their failures do not affect the exit status.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckOutcome {
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub counterexample: Option<String>,
    #[serde(skip_serializing_if = "std::ops::Not::not", default)]
    pub informational: bool,
}

impl CheckOutcome {
    pub fn pass() -> Self {
        CheckOutcome {
            pass: true,
            counterexample: None,
            informational: false,
        }
    }

    pub fn fail(counterexample: String) -> Self {
        CheckOutcome {
            pass: false,
            counterexample: Some(counterexample),
            informational: false,
        }
    }

    pub fn informational(mut self) -> Self {
        self.informational = true;
        self
    }
}

/// Everything recorded about one UIO. Maps merge disjointly across suites:
/// each suite owns its key prefixes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct UioRecord {
    pub h: String,
    pub counts: BTreeMap<String, u64>,
    pub coefficients: BTreeMap<String, i64>,
    pub checks: BTreeMap<String, CheckOutcome>,
}

impl UioRecord {
    pub fn empty(h: String) -> Self {
        UioRecord {
            h,
            counts: BTreeMap::new(),
            coefficients: BTreeMap::new(),
            checks: BTreeMap::new(),
        }
    }

    pub fn absorb(&mut self, fragment: Fragment) {
        self.counts.extend(fragment.counts);
        self.coefficients.extend(fragment.coefficients);
        self.checks.extend(fragment.checks);
    }
}

/// The per-(UIO, suite) unit of work product.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fragment {
    pub counts: BTreeMap<String, u64>,
    pub coefficients: BTreeMap<String, i64>,
    pub checks: BTreeMap<String, CheckOutcome>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub records: usize,
    pub checks: usize,
    pub failed: usize,
    pub informational_failed: usize,
    /// `h=... name` identifiers of the failed non-informational checks.
    pub failed_checks: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub config: ConfigEcho,
    pub summary: Summary,
    pub records: Vec<UioRecord>,
}

impl Report {
    /// Builds a report from per-UIO records, sorting and summarizing.
    pub fn assemble(config: ConfigEcho, records: BTreeMap<String, UioRecord>) -> Report {
        let records: Vec<UioRecord> = records.into_values().collect();
        let mut checks = 0;
        let mut failed = 0;
        let mut informational_failed = 0;
        let mut failed_checks = Vec::new();
        for record in &records {
            for (name, outcome) in &record.checks {
                checks += 1;
                if !outcome.pass {
                    if outcome.informational {
                        informational_failed += 1;
                    } else {
                        failed += 1;
                        failed_checks.push(format!("h={} {}", record.h, name));
                    }
                }
            }
        }
        Report {
            config,
            summary: Summary {
                records: records.len(),
                checks,
                failed,
                informational_failed,
                failed_checks,
            },
            records,
        }
    }

    pub fn to_json(&self) -> String {
        let mut out = serde_json::to_string_pretty(self).expect("report serializes");
        out.push('\n');
        out
    }

    pub fn from_json(text: &str) -> Result<Report, String> {
        serde_json::from_str(text).map_err(|e| format!("malformed report: {}", e))
    }

    /// One row per (UIO, check), with the two-part split spelled out in its
    /// own column when the check name carries one.
    pub fn to_csv(&self) -> String {
        let mut writer = csv::Writer::from_writer(Vec::new());
        writer
            .write_record(["h", "lambda", "check", "pass", "informational", "counterexample"])
            .expect("csv header");
        for record in &self.records {
            for (name, outcome) in &record.checks {
                let (check, lambda) = split_check_name(name);
                writer
                    .write_record([
                        record.h.as_str(),
                        lambda,
                        check,
                        if outcome.pass { "true" } else { "false" },
                        if outcome.informational { "true" } else { "false" },
                        outcome.counterexample.as_deref().unwrap_or(""),
                    ])
                    .expect("csv row");
            }
        }
        String::from_utf8(writer.into_inner().expect("csv flush")).expect("csv utf8")
    }
}

/// Splits `name[lambda]` into its parts; checks without a split keep an
/// empty lambda column.
fn split_check_name(name: &str) -> (&str, &str) {
    match (name.find('['), name.ends_with(']')) {
        (Some(open), true) => (&name[..open], &name[open + 1..name.len() - 1]),
        _ => (name, ""),
    }
}

/// Deterministic union of shard reports. Records present in several inputs
/// must agree exactly; the configs must describe the same sweep.
pub fn merge_reports(reports: Vec<Report>) -> Result<Report, String> {
    let mut iter = reports.into_iter();
    let first = iter.next().ok_or("no reports to merge")?;
    let config = first.config.clone();
    let mut records: BTreeMap<String, UioRecord> = BTreeMap::new();
    for record in first.records {
        records.insert(record.h.clone(), record);
    }
    for report in iter {
        if report.config != config {
            return Err(format!(
                "config mismatch: expected n={} lambda={} suites={:?}, got n={} lambda={} suites={:?}",
                config.n,
                config.lambda,
                config.suites,
                report.config.n,
                report.config.lambda,
                report.config.suites
            ));
        }
        for record in report.records {
            match records.get(&record.h) {
                None => {
                    records.insert(record.h.clone(), record);
                }
                Some(existing) => {
                    if *existing != record {
                        return Err(format!(
                            "records for h={} disagree between shards",
                            record.h
                        ));
                    }
                }
            }
        }
    }
    Ok(Report::assemble(config, records))
}
