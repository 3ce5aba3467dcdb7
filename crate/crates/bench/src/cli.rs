//! Command-line interface: `plan`, `bench`, `gen` and `render`.

use std::io::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use strrt::planner::{PlannerParams, StRrtStar};
use strrt::scenario::{load_scenario_file, save_scenario};
use strrt::solution::{Planner, Termination};
use strrt::validate::validate_path;
use strrt::SolutionPath;

use crate::aggregate::{aggregate, median_final_cost, median_first_solution};
use crate::config::{
    BenchConfig, BenchFile, Budget, GeneratorSpec, PlannerKind, PlannerOverrides, PlannerSpec,
    ScenarioSource, DEFAULT_BUDGET_SECONDS,
};
use crate::export::{
    aggregate_csv, file_stem, read_solution, records_jsonl, runs_csv, solution_json, write_file,
};
use crate::render::render_svg;
use crate::runner::{run_benchmark, run_one, RunRecord};
use crate::{BenchError, Result};

/// Refinement factor of the check applied to every solution before it is
/// written.
pub const VALIDATION_REFINEMENT: f64 = 10.0;

#[derive(Debug, Parser)]
#[command(name = "strrt", version, about = "Space-time motion planning with ST-RRT* and baselines")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run one planner once and write the solution and run statistics.
    Plan(PlanArgs),
    /// Seeded multi-run benchmark with CSV/JSONL output.
    Bench(BenchArgs),
    /// Write a generated scenario file.
    Gen(GenArgs),
    /// Draw a scenario, planner trees and a solution as SVG.
    Render(RenderArgs),
}

#[derive(Debug, Args)]
pub struct BudgetArgs {
    /// Wall-clock budget in seconds [default: 30].
    #[arg(long, conflicts_with = "iterations")]
    pub budget: Option<f64>,
    /// Iteration budget; makes runs reproducible across machines.
    #[arg(long)]
    pub iterations: Option<u64>,
}

impl BudgetArgs {
    fn resolve(&self) -> Option<Budget> {
        match (self.budget, self.iterations) {
            (_, Some(n)) => Some(Budget::Iterations(n)),
            (Some(s), None) => Some(Budget::Seconds(s)),
            (None, None) => None,
        }
    }
}

#[derive(Debug, Args)]
pub struct OverrideArgs {
    /// Arrival-time bound (required by rrt-connect and rrt-star).
    #[arg(long)]
    pub t_bound: Option<f64>,
    #[arg(long)]
    pub p_goal: Option<f64>,
    #[arg(long)]
    pub steer_range: Option<f64>,
    #[arg(long)]
    pub range_factor: Option<f64>,
    #[arg(long)]
    pub initial_batch_size: Option<u64>,
    #[arg(long)]
    pub sample_ratio: Option<f64>,
    /// conservative or min-axis.
    #[arg(long)]
    pub travel_bound: Option<String>,
    /// weighted or naive.
    #[arg(long)]
    pub goal_time_sampling: Option<String>,
    /// Motion checks run at the scenario resolution divided by this factor.
    #[arg(long)]
    pub check_refinement: Option<f64>,
}

impl From<&OverrideArgs> for PlannerOverrides {
    fn from(a: &OverrideArgs) -> Self {
        PlannerOverrides {
            p_goal: a.p_goal,
            steer_range: a.steer_range,
            t_bound: a.t_bound,
            range_factor: a.range_factor,
            initial_batch_size: a.initial_batch_size,
            sample_ratio: a.sample_ratio,
            travel_bound: a.travel_bound.clone(),
            goal_time_sampling: a.goal_time_sampling.clone(),
            check_refinement: a.check_refinement,
        }
    }
}

#[derive(Debug, Args)]
pub struct PlanArgs {
    /// Scenario JSON file.
    #[arg(long)]
    pub scenario: PathBuf,
    /// strrt, rrt-connect or rrt-star.
    #[arg(long, default_value = "strrt")]
    pub planner: String,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    pub budget: BudgetArgs,
    /// Stop at the first solution.
    #[arg(long)]
    pub first_solution: bool,
    #[command(flatten)]
    pub overrides: OverrideArgs,
    /// Solution file.
    #[arg(long)]
    pub out: PathBuf,
    /// Statistics file (one JSON line) [default: next to --out, `.stats.jsonl`].
    #[arg(long)]
    pub stats: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    /// Benchmark configuration (JSON); inline flags are ignored when given.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Scenario JSON file.
    #[arg(long, required_unless_present = "config")]
    pub scenario: Option<PathBuf>,
    /// Comma-separated planners, `name` or `name@tBound`.
    #[arg(long, value_delimiter = ',', default_value = "strrt")]
    pub planners: Vec<String>,
    #[arg(long, default_value_t = 100)]
    pub runs: u64,
    #[arg(long, default_value_t = 0)]
    pub base_seed: u64,
    #[command(flatten)]
    pub budget: BudgetArgs,
    #[arg(long, default_value_t = 1)]
    pub workers: usize,
    /// Number of evaluation times in the aggregate curves.
    #[arg(long, default_value_t = 50)]
    pub grid_points: usize,
    /// Output directory [default: bench-out, or the config's out_dir].
    #[arg(long)]
    pub out_dir: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    /// narrow or cluttered.
    #[arg(long)]
    pub kind: String,
    #[arg(long, default_value_t = 2)]
    pub dim: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Number of moving spheres (cluttered only).
    #[arg(long, default_value_t = 15)]
    pub obstacles: usize,
    /// Output file [default: standard output].
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct RenderArgs {
    /// Scenario JSON file.
    #[arg(long)]
    pub scenario: PathBuf,
    /// Solution file to overlay.
    #[arg(long)]
    pub solution: Option<PathBuf>,
    /// Grow ST-RRT* for this many iterations and draw its trees.
    #[arg(long)]
    pub iterations: Option<u64>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Time slices for 2+1-D scenarios.
    #[arg(long, default_value_t = 6)]
    pub frames: usize,
    /// SVG output file.
    #[arg(long)]
    pub out: PathBuf,
}

/// Parses `name` or `name@tBound`.
pub fn parse_planner_spec(s: &str) -> Result<PlannerSpec> {
    let (name, bound) = match s.split_once('@') {
        Some((n, b)) => {
            let t: f64 = b
                .parse()
                .map_err(|_| BenchError::Config(format!("bad time bound in `{s}`")))?;
            (n, Some(t))
        }
        None => (s, None),
    };
    let mut spec = PlannerSpec::new(name.trim().parse::<PlannerKind>()?);
    spec.overrides.t_bound = bound;
    Ok(spec)
}

/// Executes a parsed command line and returns the process exit code.
pub fn run(cli: Cli) -> Result<i32> {
    match cli.command {
        Command::Plan(a) => plan(&a),
        Command::Bench(a) => bench(&a),
        Command::Gen(a) => gen(&a),
        Command::Render(a) => render(&a),
    }
}

fn default_stats_path(out: &Path) -> PathBuf {
    let stem = out.file_stem().map_or_else(|| "solution".into(), |s| s.to_string_lossy().into_owned());
    out.with_file_name(format!("{stem}.stats.jsonl"))
}

fn plan(a: &PlanArgs) -> Result<i32> {
    let scn = load_scenario_file(&a.scenario)?;
    let spec = PlannerSpec {
        kind: a.planner.parse()?,
        overrides: PlannerOverrides::from(&a.overrides),
    };
    let budget = a.budget.resolve().unwrap_or(Budget::Seconds(DEFAULT_BUDGET_SECONDS));
    budget.validate()?;
    let (record, solution) = run_one(&scn, &spec, budget, a.seed, a.first_solution)?;
    let stats_path = a.stats.clone().unwrap_or_else(|| default_stats_path(&a.out));
    write_file(&stats_path, &records_jsonl(std::slice::from_ref(&record)))?;
    match solution {
        Some(path) => {
            if let Err(e) = validate_path(&scn, &path, VALIDATION_REFINEMENT) {
                eprintln!("solution rejected by validator: {e}");
                return Ok(1);
            }
            write_file(&a.out, &solution_json(&path))?;
            println!("solution cost {} ({} states)", path.cost, path.states.len());
            Ok(0)
        }
        None => {
            eprintln!("no solution found");
            Ok(1)
        }
    }
}

fn bench(a: &BenchArgs) -> Result<i32> {
    let (scn, cfg, out_dir) = match &a.config {
        Some(path) => {
            let file = BenchFile::read(path)?;
            let base = path.parent().unwrap_or(Path::new("."));
            let scn = file.scenario.load(base)?;
            let out_dir = a
                .out_dir
                .clone()
                .or_else(|| file.out_dir.as_ref().map(|d| base.join(d)))
                .unwrap_or_else(|| PathBuf::from("bench-out"));
            (scn, file.resolve()?, out_dir)
        }
        None => {
            let scenario = a.scenario.as_ref().expect("clap requires --scenario");
            let scn = ScenarioSource::File(scenario.clone()).load(Path::new("."))?;
            let planners = a
                .planners
                .iter()
                .map(|s| parse_planner_spec(s))
                .collect::<Result<Vec<_>>>()?;
            let cfg = BenchConfig {
                planners,
                runs: a.runs,
                base_seed: a.base_seed,
                budget: a.budget.resolve().unwrap_or(Budget::Seconds(DEFAULT_BUDGET_SECONDS)),
                workers: a.workers,
                grid_points: a.grid_points,
            };
            cfg.validate()?;
            (scn, cfg, a.out_dir.clone().unwrap_or_else(|| PathBuf::from("bench-out")))
        }
    };
    let records = run_benchmark(&scn, &cfg)?;
    write_file(&out_dir.join("runs.csv"), &runs_csv(&records))?;
    write_file(&out_dir.join("runs.jsonl"), &records_jsonl(&records))?;
    let grid = cfg.time_grid();
    let mut stdout = std::io::stdout().lock();
    let _ = writeln!(stdout, "planner,success,median_first_solution,median_final_cost");
    for spec in &cfg.planners {
        let label = spec.label();
        let mine: Vec<&RunRecord> = records.iter().filter(|r| r.planner == label).collect();
        let curve = aggregate(&mine, &grid);
        let name = format!("aggregate_{}.csv", file_stem(&label));
        write_file(&out_dir.join(name), &aggregate_csv(&curve))?;
        let solved = mine.iter().filter(|r| r.solved()).count();
        let _ = writeln!(
            stdout,
            "{label},{solved}/{},{},{}",
            mine.len(),
            median_first_solution(&mine),
            median_final_cost(&mine)
        );
    }
    Ok(0)
}

fn gen(a: &GenArgs) -> Result<i32> {
    let spec = GeneratorSpec {
        kind: a.kind.clone(),
        dim: a.dim,
        seed: a.seed,
        obstacles: a.obstacles,
        windows: None,
    };
    let scn = spec.build()?;
    let text = String::from_utf8(save_scenario(&scn)).expect("scenario JSON is UTF-8");
    match &a.out {
        Some(path) => write_file(path, &text)?,
        None => print!("{text}"),
    }
    Ok(0)
}

fn render(a: &RenderArgs) -> Result<i32> {
    let scn = load_scenario_file(&a.scenario)?;
    if scn.dim() > 2 {
        return Err(BenchError::RenderDimension(scn.dim()));
    }
    let mut solution: Option<SolutionPath> = match &a.solution {
        Some(p) => Some(read_solution(p)?),
        None => None,
    };
    let snapshot = match a.iterations {
        Some(n) => {
            let mut planner = StRrtStar::new(&scn, PlannerParams::with_seed(a.seed))?;
            planner.solve(Termination::iterations(n));
            let snap = planner.snapshot();
            if solution.is_none() {
                solution = snap.solution.clone();
            }
            Some(snap)
        }
        None => None,
    };
    let svg = render_svg(&scn, snapshot.as_ref(), solution.as_ref(), a.frames)?;
    write_file(&a.out, &svg)?;
    Ok(0)
}
