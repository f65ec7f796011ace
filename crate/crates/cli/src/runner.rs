//! Sweep execution. A deterministic task list (UIO x suite) fans out over a
//! worker pool; results funnel through one aggregator thread that journals
//! each completed task, so an interrupted sweep can resume without redoing
//! finished work. Reports land atomically via a temporary file.

use std::collections::BTreeMap;
use std::fs::{self, File, OpenOptions};
use std::io::{BufRead, BufReader, Write as _};
use std::panic::{self, AssertUnwindSafe};
use std::path::{Path, PathBuf};
use std::sync::mpsc;
use std::thread;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use epos_core::uio::generate_all;
use epos_core::Uio;

use crate::config::{Format, Suite, SweepConfig};
use crate::report::{ConfigEcho, Fragment, Report, UioRecord};
use crate::suites::run_suite;

#[derive(Debug)]
pub enum SweepError {
    /// Configuration or environment fault, nothing mathematical.
    Fatal(String),
    /// A worker panicked; the partial report and journal were preserved.
    Interrupted(String),
}

/// One journaled unit of completed work.
#[derive(Serialize, Deserialize)]
struct JournalEntry {
    h: String,
    suite: Suite,
    fragment: Fragment,
}

/// First line of the journal: enough identity to refuse resuming a
/// different sweep. The shard matters here even though it stays out of the
/// report config, because it decides which tasks exist at all.
#[derive(Serialize, Deserialize, PartialEq, Eq)]
struct JournalHeader {
    config: ConfigEcho,
    shard: Option<String>,
}

pub fn sidecar_path(out: &Path) -> PathBuf {
    let mut name = out
        .file_name()
        .map(|n| n.to_os_string())
        .unwrap_or_default();
    name.push(".progress.jsonl");
    out.with_file_name(name)
}

fn read_journal(
    path: &Path,
    header: &JournalHeader,
) -> Result<BTreeMap<(String, Suite), Fragment>, String> {
    let file =
        File::open(path).map_err(|e| format!("cannot read journal {}: {}", path.display(), e))?;
    let mut lines = BufReader::new(file).lines();
    let first = match lines.next() {
        Some(Ok(line)) => line,
        _ => return Err(format!("journal {} has no header", path.display())),
    };
    let found: JournalHeader = serde_json::from_str(&first)
        .map_err(|e| format!("journal {} header: {}", path.display(), e))?;
    if found != *header {
        return Err(format!(
            "journal {} belongs to a different sweep configuration",
            path.display()
        ));
    }
    let mut done = BTreeMap::new();
    for line in lines {
        let line = line.map_err(|e| format!("journal {}: {}", path.display(), e))?;
        // A crash can tear the final line; everything before it is intact.
        if let Ok(entry) = serde_json::from_str::<JournalEntry>(&line) {
            done.insert((entry.h, entry.suite), entry.fragment);
        }
    }
    Ok(done)
}

pub fn write_report(report: &Report, path: &Path, format: Format) -> Result<(), String> {
    let payload = match format {
        Format::Json => report.to_json(),
        Format::Csv => report.to_csv(),
    };
    let mut tmp_name = path
        .file_name()
        .map(|n| n.to_os_string())
        .unwrap_or_default();
    tmp_name.push(".tmp");
    let tmp = path.with_file_name(tmp_name);
    fs::write(&tmp, payload).map_err(|e| format!("write {}: {}", tmp.display(), e))?;
    fs::rename(&tmp, path).map_err(|e| format!("rename to {}: {}", path.display(), e))?;
    Ok(())
}

struct Task {
    id: usize,
    uio: Uio,
    suite: Suite,
}

pub fn run_sweep(config: &SweepConfig) -> Result<Report, SweepError> {
    let echo = ConfigEcho::from_config(config);
    let header = JournalHeader {
        config: echo.clone(),
        shard: config.shard.map(|s| s.to_string()),
    };
    let uios = generate_all(config.n).map_err(|e| SweepError::Fatal(e.to_string()))?;
    let splits = config.lambda.splits(config.n);
    let sidecar = sidecar_path(&config.out_path);

    let resuming = config.resume && sidecar.exists();
    let done: BTreeMap<(String, Suite), Fragment> = if resuming {
        read_journal(&sidecar, &header).map_err(SweepError::Fatal)?
    } else {
        BTreeMap::new()
    };

    // Task ids number every (UIO, suite) pair of this shard in a fixed
    // order, so they stay stable across resumptions.
    let mut tasks: Vec<Task> = Vec::new();
    let mut next_id = 0;
    for (i, uio) in uios.iter().enumerate() {
        if let Some(shard) = config.shard {
            if i % shard.count != shard.index {
                continue;
            }
        }
        for &suite in &config.suites {
            let id = next_id;
            next_id += 1;
            if !done.contains_key(&(uio.to_string(), suite)) {
                tasks.push(Task {
                    id,
                    uio: uio.clone(),
                    suite,
                });
            }
        }
    }

    let mut journal = if resuming {
        OpenOptions::new()
            .append(true)
            .open(&sidecar)
            .map_err(|e| SweepError::Fatal(format!("open journal: {}", e)))?
    } else {
        let mut f = File::create(&sidecar)
            .map_err(|e| SweepError::Fatal(format!("create journal: {}", e)))?;
        let line = serde_json::to_string(&header).expect("header serializes");
        writeln!(f, "{}", line).map_err(|e| SweepError::Fatal(format!("journal write: {}", e)))?;
        f
    };

    let (tx, rx) = mpsc::channel::<JournalEntry>();
    let aggregator = thread::spawn(move || {
        let mut collected: BTreeMap<(String, Suite), Fragment> = BTreeMap::new();
        let mut io_error: Option<String> = None;
        for entry in rx {
            if io_error.is_none() {
                let line = serde_json::to_string(&entry).expect("fragment serializes");
                if let Err(e) = writeln!(journal, "{}", line).and_then(|_| journal.flush()) {
                    io_error = Some(format!("journal write: {}", e));
                }
            }
            collected.insert((entry.h, entry.suite), entry.fragment);
        }
        (collected, io_error)
    });

    let panic_at: Option<usize> = std::env::var("EPOS_TEST_PANIC_AT")
        .ok()
        .and_then(|v| v.parse().ok());
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.jobs)
        .build()
        .map_err(|e| SweepError::Fatal(e.to_string()))?;

    let run = panic::catch_unwind(AssertUnwindSafe(|| {
        pool.install(|| {
            tasks
                .par_iter()
                .try_for_each_with(tx.clone(), |tx, task| -> Result<(), String> {
                    if panic_at == Some(task.id) {
                        panic!("requested interrupt at task {}", task.id);
                    }
                    let fragment = run_suite(&task.uio, task.suite, &splits)
                        .map_err(|e| format!("h={} {}: {}", task.uio, task.suite, e))?;
                    tx.send(JournalEntry {
                        h: task.uio.to_string(),
                        suite: task.suite,
                        fragment,
                    })
                    .map_err(|_| "result aggregator hung up".to_string())
                })
        })
    }));
    drop(tx);
    let (collected, io_error) = aggregator
        .join()
        .map_err(|_| SweepError::Fatal("result aggregator panicked".into()))?;
    if let Some(e) = &io_error {
        eprintln!("warning: {}", e);
    }

    let mut merged = done;
    merged.extend(collected);
    let mut records: BTreeMap<String, UioRecord> = BTreeMap::new();
    for ((h, _), fragment) in merged {
        records
            .entry(h.clone())
            .or_insert_with(|| UioRecord::empty(h))
            .absorb(fragment);
    }
    let report = Report::assemble(echo, records);

    match run {
        Err(payload) => {
            let msg = panic_message(payload);
            write_report(&report, &config.out_path, config.format).map_err(SweepError::Fatal)?;
            Err(SweepError::Interrupted(format!(
                "worker panicked: {}; partial report written to {}, journal kept at {}",
                msg,
                config.out_path.display(),
                sidecar.display()
            )))
        }
        Ok(Err(worker_error)) => Err(SweepError::Fatal(worker_error)),
        Ok(Ok(())) => {
            write_report(&report, &config.out_path, config.format).map_err(SweepError::Fatal)?;
            let _ = fs::remove_file(&sidecar);
            Ok(report)
        }
    }
}

fn panic_message(payload: Box<dyn std::any::Any + Send>) -> String {
    if let Some(s) = payload.downcast_ref::<&str>() {
        (*s).to_string()
    } else if let Some(s) = payload.downcast_ref::<String>() {
        s.clone()
    } else {
        "unknown panic".into()
    }
}
