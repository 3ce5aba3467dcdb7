//! Benchmark harness and command-line front end for the space-time planners.
//!
//! [`runner`] executes independent planner runs in parallel, [`aggregate`]
//! turns them into success-rate and median-cost curves, [`export`] writes
//! CSV/JSONL/solution files and [`render`] draws scenarios, trees and paths
//! as SVG.

pub mod aggregate;
pub mod cli;
pub mod config;
pub mod export;
pub mod render;
pub mod runner;

use thiserror::Error;

use strrt::scenario::ScenarioError;
use strrt::CoreError;

#[derive(Debug, Error)]
pub enum BenchError {
    #[error(transparent)]
    Scenario(#[from] ScenarioError),
    #[error("unknown planner `{0}` (expected strrt, rrt-connect or rrt-star)")]
    UnknownPlanner(String),
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error(transparent)]
    Core(#[from] CoreError),
    #[error("cannot read {path}: {source}")]
    Read {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("cannot write {path}: {source}")]
    Write {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("rendering supports 1+1 and 2+1 only (scenario has {0} dimensions)")]
    RenderDimension(usize),
}

impl BenchError {
    /// Process exit code: 2 for bad input, 3 for output failures, 4 for
    /// unsupported rendering.
    pub fn exit_code(&self) -> i32 {
        match self {
            BenchError::Write { .. } => 3,
            BenchError::RenderDimension(_) => 4,
            _ => 2,
        }
    }
}

pub type Result<T> = std::result::Result<T, BenchError>;
