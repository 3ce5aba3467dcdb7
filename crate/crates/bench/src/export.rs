//! CSV, JSONL and solution-file output. All text uses LF line endings and a
//! fixed column order; infinite values are written as `inf`.

use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};

use strrt::{SolutionPath, State};

use crate::aggregate::AggregatePoint;
use crate::runner::RunRecord;
use crate::{BenchError, Result};

pub const RUNS_HEADER: &str = "planner,seed,first_solution_s,final_cost";
pub const AGGREGATE_HEADER: &str = "t,success_rate,cost_median,cost_lo,cost_hi";

fn num(v: f64) -> String {
    if v == f64::INFINITY {
        "inf".to_string()
    } else {
        format!("{v}")
    }
}

pub fn runs_csv(records: &[RunRecord]) -> String {
    let mut out = String::new();
    out.push_str(RUNS_HEADER);
    out.push('\n');
    for r in records {
        let first = r.first_solution.unwrap_or(f64::INFINITY);
        writeln!(out, "{},{},{},{}", r.planner, r.seed, num(first), num(r.final_cost)).unwrap();
    }
    out
}

pub fn aggregate_csv(points: &[AggregatePoint]) -> String {
    let mut out = String::new();
    out.push_str(AGGREGATE_HEADER);
    out.push('\n');
    for p in points {
        writeln!(
            out,
            "{},{},{},{},{}",
            num(p.t),
            num(p.success_rate),
            num(p.cost_median),
            num(p.cost_lo),
            num(p.cost_hi)
        )
        .unwrap();
    }
    out
}

pub fn records_jsonl(records: &[RunRecord]) -> String {
    let mut out = String::new();
    for r in records {
        out.push_str(&serde_json::to_string(r).expect("records serialize"));
        out.push('\n');
    }
    out
}

pub fn parse_jsonl(text: &str) -> Result<Vec<RunRecord>> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| {
            serde_json::from_str(l).map_err(|e| BenchError::Config(format!("line {}: {e}", i + 1)))
        })
        .collect()
}

/// On-disk solution format.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SolutionFile {
    pub states: Vec<State>,
    pub cost: f64,
}

impl From<&SolutionPath> for SolutionFile {
    fn from(p: &SolutionPath) -> Self {
        Self {
            states: p.states.clone(),
            cost: p.cost,
        }
    }
}

impl From<SolutionFile> for SolutionPath {
    fn from(f: SolutionFile) -> Self {
        SolutionPath {
            states: f.states,
            cost: f.cost,
        }
    }
}

pub fn solution_json(path: &SolutionPath) -> String {
    let mut s = serde_json::to_string_pretty(&SolutionFile::from(path)).expect("solution serializes");
    s.push('\n');
    s
}

pub fn read_solution(path: &Path) -> Result<SolutionPath> {
    let bytes = read_file(path)?;
    let file: SolutionFile = serde_json::from_slice(&bytes)
        .map_err(|e| BenchError::Config(format!("{}: {e}", path.display())))?;
    Ok(file.into())
}

pub fn read_file(path: &Path) -> Result<Vec<u8>> {
    std::fs::read(path).map_err(|source| BenchError::Read {
        path: path.display().to_string(),
        source,
    })
}

/// Writes `contents`, creating missing parent directories.
pub fn write_file(path: &Path, contents: &str) -> Result<()> {
    let err = |source| BenchError::Write {
        path: path.display().to_string(),
        source,
    };
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir).map_err(err)?;
    }
    std::fs::write(path, contents).map_err(err)
}

/// File-name-safe form of a planner label.
pub fn file_stem(label: &str) -> String {
    label
        .chars()
        .map(|c| if c.is_ascii_alphanumeric() || c == '-' || c == '.' { c } else { '_' })
        .collect()
}
