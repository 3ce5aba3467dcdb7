//! Independent planner runs, executed on a fixed-size worker pool.

use rayon::prelude::*;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use strrt::baselines::{SpaceTimeRrtConnect, SpaceTimeRrtStar};
use strrt::planner::StRrtStar;
use strrt::solution::{PlanOutcome, Planner};
use strrt::{Scenario, SolutionPath};

use crate::config::{BenchConfig, Budget, PlannerKind, PlannerSpec};
use crate::{BenchError, Result};

/// Unit of the `at` values in a [`RunRecord`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Clock {
    Seconds,
    Iterations,
}

impl Clock {
    pub fn of(budget: Budget) -> Self {
        match budget {
            Budget::Seconds(_) => Clock::Seconds,
            Budget::Iterations(_) => Clock::Iterations,
        }
    }
}

/// Incumbent cost from `at` onwards.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Mark {
    pub at: f64,
    pub cost: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub planner: String,
    pub seed: u64,
    pub clock: Clock,
    /// Clock value of the first solution.
    pub first_solution: Option<f64>,
    #[serde(serialize_with = "cost_out", deserialize_with = "cost_in")]
    pub final_cost: f64,
    pub improvements: Vec<Mark>,
    pub iterations: u64,
    pub nodes: usize,
}

impl RunRecord {
    pub fn from_outcome(planner: String, seed: u64, clock: Clock, out: &PlanOutcome) -> Self {
        let at = |i: &strrt::solution::Improvement| match clock {
            Clock::Seconds => i.seconds,
            Clock::Iterations => i.iteration as f64,
        };
        let improvements: Vec<Mark> = out
            .stats
            .improvements
            .iter()
            .map(|i| Mark { at: at(i), cost: i.cost })
            .collect();
        Self {
            planner,
            seed,
            clock,
            first_solution: improvements.first().map(|m| m.at),
            final_cost: out.stats.best_cost(),
            improvements,
            iterations: out.stats.iterations,
            nodes: out.stats.nodes,
        }
    }

    pub fn solved(&self) -> bool {
        self.final_cost.is_finite()
    }

    /// Incumbent cost at clock value `t`, infinite before the first solution.
    pub fn cost_at(&self, t: f64) -> f64 {
        self.improvements
            .iter()
            .take_while(|m| m.at <= t)
            .last()
            .map_or(f64::INFINITY, |m| m.cost)
    }
}

fn cost_out<S: Serializer>(c: &f64, s: S) -> std::result::Result<S::Ok, S::Error> {
    if c.is_finite() {
        s.serialize_f64(*c)
    } else {
        s.serialize_str("inf")
    }
}

fn cost_in<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<f64, D::Error> {
    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Cost {
        Num(f64),
        Text(String),
    }
    match Cost::deserialize(d)? {
        Cost::Num(v) => Ok(v),
        Cost::Text(s) if s == "inf" => Ok(f64::INFINITY),
        Cost::Text(s) => Err(serde::de::Error::custom(format!("expected a number or \"inf\", got {s:?}"))),
    }
}

/// Runs one planner once. `first_only` stops at the first solution.
pub fn run_one(
    scn: &Scenario,
    spec: &PlannerSpec,
    budget: Budget,
    seed: u64,
    first_only: bool,
) -> Result<(RunRecord, Option<SolutionPath>)> {
    let mut term = budget.termination();
    if first_only {
        term = term.first_solution();
    }
    let out = match spec.kind {
        PlannerKind::StRrtStar => StRrtStar::new(scn, spec.planner_params(seed)?)?.solve(term),
        PlannerKind::RrtConnect => SpaceTimeRrtConnect::new(scn, spec.baseline_params(seed)?)?.solve(term),
        PlannerKind::RrtStar => SpaceTimeRrtStar::new(scn, spec.baseline_params(seed)?)?.solve(term),
    };
    let record = RunRecord::from_outcome(spec.label(), seed, Clock::of(budget), &out);
    Ok((record, out.solution))
}

/// Runs every planner with seeds `base_seed .. base_seed + runs`. Records are
/// ordered by planner (as configured), then seed, whatever the worker count.
pub fn run_benchmark(scn: &Scenario, cfg: &BenchConfig) -> Result<Vec<RunRecord>> {
    cfg.validate()?;
    let jobs: Vec<(&PlannerSpec, u64)> = cfg
        .planners
        .iter()
        .flat_map(|p| (0..cfg.runs).map(move |i| (p, cfg.base_seed.wrapping_add(i))))
        .collect();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.workers)
        .build()
        .map_err(|e| BenchError::Config(format!("cannot start worker pool: {e}")))?;
    pool.install(|| {
        jobs.par_iter()
            .map(|(spec, seed)| run_one(scn, spec, cfg.budget, *seed, false).map(|(r, _)| r))
            .collect()
    })
}
