//! Planner selection, budgets and benchmark configuration files.

use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use strrt::baselines::BaselineParams;
use strrt::planner::{ExpansionParams, GoalTimeSampling, PlannerParams};
use strrt::scenario::{load_scenario_file, make_cluttered, make_narrow_passage, Scenario, DEFAULT_NARROW_WINDOWS};
use strrt::solution::Termination;
use strrt::TravelBound;

use crate::{BenchError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PlannerKind {
    StRrtStar,
    RrtConnect,
    RrtStar,
}

impl PlannerKind {
    pub fn name(self) -> &'static str {
        match self {
            PlannerKind::StRrtStar => "strrt",
            PlannerKind::RrtConnect => "rrt-connect",
            PlannerKind::RrtStar => "rrt-star",
        }
    }

    pub fn needs_time_bound(self) -> bool {
        self != PlannerKind::StRrtStar
    }
}

impl FromStr for PlannerKind {
    type Err = BenchError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "strrt" | "st-rrt*" | "st-rrt-star" => Ok(PlannerKind::StRrtStar),
            "rrt-connect" => Ok(PlannerKind::RrtConnect),
            "rrt-star" | "rrt*" => Ok(PlannerKind::RrtStar),
            other => Err(BenchError::UnknownPlanner(other.to_string())),
        }
    }
}

/// Optional parameter overrides; unset fields keep the planner defaults.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PlannerOverrides {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p_goal: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub steer_range: Option<f64>,
    /// Arrival-time bound: required by the baselines, an initial bound for
    /// ST-RRT*.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t_bound: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub range_factor: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub initial_batch_size: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sample_ratio: Option<f64>,
    /// `conservative` or `min-axis`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub travel_bound: Option<String>,
    /// `weighted` or `naive`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub goal_time_sampling: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub check_refinement: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PlannerSpec {
    pub kind: PlannerKind,
    pub overrides: PlannerOverrides,
}

impl PlannerSpec {
    pub fn new(kind: PlannerKind) -> Self {
        Self {
            kind,
            overrides: PlannerOverrides::default(),
        }
    }

    pub fn with_t_bound(mut self, t_bound: f64) -> Self {
        self.overrides.t_bound = Some(t_bound);
        self
    }

    /// Name used in output files: the planner name, suffixed with the time
    /// bound when one is set.
    pub fn label(&self) -> String {
        match self.overrides.t_bound {
            Some(t) => format!("{}@{}", self.kind.name(), t),
            None => self.kind.name().to_string(),
        }
    }

    pub fn planner_params(&self, seed: u64) -> Result<PlannerParams> {
        let o = &self.overrides;
        let d = PlannerParams::default();
        let params = PlannerParams {
            p_goal: o.p_goal.unwrap_or(d.p_goal),
            t_max: o.t_bound.unwrap_or(d.t_max),
            steer_range: o.steer_range.or(d.steer_range),
            expansion: ExpansionParams {
                range_factor: o.range_factor.unwrap_or(d.expansion.range_factor),
                initial_batch_size: o.initial_batch_size.unwrap_or(d.expansion.initial_batch_size),
                sample_ratio: o.sample_ratio.unwrap_or(d.expansion.sample_ratio),
            },
            travel_bound: match o.travel_bound.as_deref() {
                None => d.travel_bound,
                Some(s) => parse_travel_bound(s)?,
            },
            goal_time_sampling: match o.goal_time_sampling.as_deref() {
                None => d.goal_time_sampling,
                Some(s) => parse_goal_time_sampling(s)?,
            },
            check_refinement: o.check_refinement.unwrap_or(d.check_refinement),
            seed,
            ..d
        };
        params.validate()?;
        Ok(params)
    }

    pub fn baseline_params(&self, seed: u64) -> Result<BaselineParams> {
        let o = &self.overrides;
        let t_bound = o.t_bound.ok_or_else(|| {
            BenchError::Config(format!("planner {} needs a finite t_bound", self.kind.name()))
        })?;
        let mut p = BaselineParams::new(t_bound, seed);
        if let Some(v) = o.p_goal {
            p.p_goal = v;
        }
        p.steer_range = o.steer_range;
        if let Some(v) = o.check_refinement {
            p.check_refinement = v;
        }
        Ok(p)
    }
}

pub fn parse_travel_bound(s: &str) -> Result<TravelBound> {
    match s {
        "conservative" => Ok(TravelBound::Conservative),
        "min-axis" => Ok(TravelBound::MinAxis),
        other => Err(BenchError::Config(format!(
            "unknown travel bound `{other}` (expected conservative or min-axis)"
        ))),
    }
}

pub fn parse_goal_time_sampling(s: &str) -> Result<GoalTimeSampling> {
    match s {
        "weighted" => Ok(GoalTimeSampling::Weighted),
        "naive" => Ok(GoalTimeSampling::Naive),
        other => Err(BenchError::Config(format!(
            "unknown goal time sampling `{other}` (expected weighted or naive)"
        ))),
    }
}

/// Per-run budget. Iteration budgets make runs machine-independent.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Budget {
    Seconds(f64),
    Iterations(u64),
}

impl Budget {
    pub fn termination(self) -> Termination {
        match self {
            Budget::Seconds(s) => Termination::seconds(s),
            Budget::Iterations(n) => Termination::iterations(n),
        }
    }

    /// End of the run on its own clock.
    pub fn horizon(self) -> f64 {
        match self {
            Budget::Seconds(s) => s,
            Budget::Iterations(n) => n as f64,
        }
    }

    pub fn validate(self) -> Result<()> {
        match self {
            Budget::Seconds(s) if !(s > 0.0 && s.is_finite()) => {
                Err(BenchError::Config(format!("budget must be positive seconds (got {s})")))
            }
            Budget::Iterations(0) => Err(BenchError::Config("iteration budget must be positive".into())),
            _ => Ok(()),
        }
    }
}

/// Generated scenario description.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorSpec {
    /// `narrow` or `cluttered`.
    pub kind: String,
    #[serde(default = "default_dim")]
    pub dim: usize,
    #[serde(default)]
    pub seed: u64,
    #[serde(default = "default_obstacles")]
    pub obstacles: usize,
    /// Open windows of the narrow-passage wall; defaults apply when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub windows: Option<Vec<(f64, f64)>>,
}

fn default_dim() -> usize {
    2
}

fn default_obstacles() -> usize {
    15
}

impl GeneratorSpec {
    pub fn build(&self) -> Result<Scenario> {
        match self.kind.as_str() {
            "narrow" => {
                let windows = self.windows.clone().unwrap_or_else(|| DEFAULT_NARROW_WINDOWS.to_vec());
                Ok(make_narrow_passage(self.dim, &windows)?)
            }
            "cluttered" => Ok(make_cluttered(self.dim, self.obstacles, self.seed)?),
            other => Err(BenchError::Config(format!(
                "unknown scenario kind `{other}` (expected narrow or cluttered)"
            ))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", deny_unknown_fields)]
pub enum ScenarioSource {
    File(PathBuf),
    Generate(GeneratorSpec),
}

impl ScenarioSource {
    /// Loads the scenario; relative file paths resolve against `base`.
    pub fn load(&self, base: &Path) -> Result<Scenario> {
        match self {
            ScenarioSource::File(p) => Ok(load_scenario_file(base.join(p))?),
            ScenarioSource::Generate(g) => g.build(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PlannerEntry {
    pub name: String,
    #[serde(flatten)]
    pub overrides: PlannerOverrides,
}

/// Benchmark configuration file (JSON).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BenchFile {
    pub scenario: ScenarioSource,
    pub planners: Vec<PlannerEntry>,
    #[serde(default = "default_runs")]
    pub runs: u64,
    #[serde(default)]
    pub base_seed: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub budget_seconds: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub iterations: Option<u64>,
    #[serde(default = "default_workers")]
    pub workers: usize,
    #[serde(default = "default_grid_points")]
    pub grid_points: usize,
    /// Output directory; relative paths resolve against the config file.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub out_dir: Option<PathBuf>,
}

fn default_runs() -> u64 {
    100
}

pub const DEFAULT_BUDGET_SECONDS: f64 = 30.0;

fn default_workers() -> usize {
    1
}

fn default_grid_points() -> usize {
    50
}

/// Resolved benchmark settings.
#[derive(Debug, Clone, PartialEq)]
pub struct BenchConfig {
    pub planners: Vec<PlannerSpec>,
    pub runs: u64,
    pub base_seed: u64,
    pub budget: Budget,
    pub workers: usize,
    pub grid_points: usize,
}

impl BenchConfig {
    pub fn validate(&self) -> Result<()> {
        if self.planners.is_empty() {
            return Err(BenchError::Config("no planners given".into()));
        }
        if self.runs == 0 {
            return Err(BenchError::Config("runs must be positive".into()));
        }
        if self.workers == 0 {
            return Err(BenchError::Config("workers must be positive".into()));
        }
        if self.grid_points == 0 {
            return Err(BenchError::Config("grid_points must be positive".into()));
        }
        self.budget.validate()?;
        for spec in &self.planners {
            if spec.kind.needs_time_bound() {
                spec.baseline_params(0)?;
            } else {
                spec.planner_params(0)?;
            }
        }
        Ok(())
    }

    /// Evenly spaced evaluation times `horizon * k / points`, `k = 1..=points`.
    pub fn time_grid(&self) -> Vec<f64> {
        let h = self.budget.horizon();
        (1..=self.grid_points)
            .map(|k| h * k as f64 / self.grid_points as f64)
            .collect()
    }
}

impl BenchFile {
    pub fn read(path: &Path) -> Result<Self> {
        let text = std::fs::read(path).map_err(|source| BenchError::Read {
            path: path.display().to_string(),
            source,
        })?;
        serde_json::from_slice(&text)
            .map_err(|e| BenchError::Config(format!("{}: {e}", path.display())))
    }

    pub fn resolve(&self) -> Result<BenchConfig> {
        let budget = match (self.budget_seconds, self.iterations) {
            (Some(_), Some(_)) => {
                return Err(BenchError::Config(
                    "give either budget_seconds or iterations, not both".into(),
                ))
            }
            (Some(s), None) => Budget::Seconds(s),
            (None, Some(n)) => Budget::Iterations(n),
            (None, None) => Budget::Seconds(DEFAULT_BUDGET_SECONDS),
        };
        let planners = self
            .planners
            .iter()
            .map(|e| {
                Ok(PlannerSpec {
                    kind: e.name.parse()?,
                    overrides: e.overrides.clone(),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let cfg = BenchConfig {
            planners,
            runs: self.runs,
            base_seed: self.base_seed,
            budget,
            workers: self.workers,
            grid_points: self.grid_points,
        };
        cfg.validate()?;
        Ok(cfg)
    }
}
