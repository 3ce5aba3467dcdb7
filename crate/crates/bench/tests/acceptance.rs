//! End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
//! exits non-zero if any fails.
//!
//! `STRRT_ACCEPTANCE_ONLY=1,4,7` restricts the run to the listed criteria and
//! `STRRT_ACCEPTANCE_WORKERS` sets the number of parallel planner runs
//! (default: available cores). Wall-clock budgets are the stated ones.

#[path = "support/lattice.rs"]
mod lattice;

use std::collections::BTreeMap;
use std::process::Command;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use strrt::goal::{GoalConfigs, GoalRegion};
use strrt::planner::{
    sample_conditionally, ExpansionParams, ExpansionState, GoalSampling, GoalTimeSampling,
    PlannerParams, StRrtStar,
};
use strrt::scenario::{make_cluttered, make_narrow_passage, Scenario, DEFAULT_NARROW_WINDOWS};
use strrt::solution::{Planner, Termination};
use strrt::validate::validate_path;
use strrt::{SpaceTimeSpace, State, TravelBound};
use strrt_bench::aggregate::{aggregate, median_final_cost, median_first_solution};
use strrt_bench::config::{BenchConfig, Budget, PlannerKind, PlannerSpec};
use strrt_bench::runner::{run_benchmark, run_one, RunRecord};

struct Verdict {
    pass: bool,
    detail: String,
}

fn verdict(pass: bool, detail: String) -> Verdict {
    Verdict { pass, detail }
}

/// Records shared between criteria (the anytime check reuses benchmark runs).
#[derive(Default)]
struct Ctx {
    workers: usize,
    oracle: Option<f64>,
    records: Vec<(String, Vec<RunRecord>)>,
}

impl Ctx {
    fn narrow_oracle(&mut self) -> f64 {
        *self.oracle.get_or_insert_with(|| {
            let scn = make_narrow_passage(1, &DEFAULT_NARROW_WINDOWS).unwrap();
            lattice::converged_optimum(&scn, 60.0).0
        })
    }

    fn bench(&mut self, tag: &str, scn: &Scenario, planners: Vec<PlannerSpec>, runs: u64, budget: Budget) -> Vec<RunRecord> {
        let cfg = BenchConfig {
            planners,
            runs,
            base_seed: 0,
            budget,
            workers: self.workers,
            grid_points: 50,
        };
        let recs = run_benchmark(scn, &cfg).expect("benchmark runs");
        self.records.push((tag.to_string(), recs.clone()));
        recs
    }
}

fn strrt() -> PlannerSpec {
    PlannerSpec::new(PlannerKind::StRrtStar)
}

fn by_planner(recs: &[RunRecord], label: &str) -> Vec<RunRecord> {
    recs.iter().filter(|r| r.planner == label).cloned().collect()
}

fn refs(recs: &[RunRecord]) -> Vec<&RunRecord> {
    recs.iter().collect()
}

fn median_cost(recs: &[RunRecord]) -> f64 {
    median_final_cost(&refs(recs))
}

fn success(recs: &[RunRecord]) -> usize {
    recs.iter().filter(|r| r.solved()).count()
}

// 1 -----------------------------------------------------------------------

fn oracle_optimality(ctx: &mut Ctx) -> Verdict {
    let scn = make_narrow_passage(1, &DEFAULT_NARROW_WINDOWS).unwrap();
    let oracle = ctx.narrow_oracle();
    let recs = ctx.bench("narrow-1d", &scn, vec![strrt()], 20, Budget::Seconds(30.0));
    let med = median_cost(&recs);
    let gap = (med - oracle).abs() / oracle;
    let solved = success(&recs);
    verdict(
        solved == 20 && gap <= 0.05,
        format!("oracle {oracle:.4}, median {med:.4} (gap {:.2}%), solved {solved}/20", gap * 100.0),
    )
}

// 2 -----------------------------------------------------------------------

fn empty_space_optimum(ctx: &mut Ctx) -> Verdict {
    let scn = make_cluttered(1, 0, 0).unwrap();
    let lb = scn.start.t + scn.space.lower_bound_arrival_time(&scn.start.q, &[9.0]).unwrap();
    let recs = ctx.bench("empty-1d", &scn, vec![strrt()], 10, Budget::Seconds(10.0));
    let med = median_cost(&recs);
    let gap = (med - lb) / lb;
    verdict(
        gap.abs() <= 0.02,
        format!("lower bound {lb}, median {med:.4} (gap {:.3}%), solved {}/10", gap * 100.0, success(&recs)),
    )
}

// 3 -----------------------------------------------------------------------

fn batch_mathematics(_: &mut Ctx) -> Verdict {
    let combos = [
        (2.0, 100u64, 0.5),
        (2.0, 512, 0.5),
        (3.0, 64, 0.25),
        (1.5, 200, 0.75),
        (4.0, 10, 0.1),
        (2.5, 37, 0.6),
    ];
    let mut failures = vec![];
    for (f, n0, r) in combos {
        let p = ExpansionParams {
            range_factor: f,
            initial_batch_size: n0,
            sample_ratio: r,
        };
        let mut b = ExpansionState::new(&p);
        // direct transcription of the expansion rule
        let mut total = n0 as f64;
        let mut new_range = f;
        let mut k = 0;
        while k < 6 {
            if b.update_goal_region(&p, f64::INFINITY) {
                let range = new_range;
                new_range *= f;
                let exact = (f - 1.0) * total / r;
                let size = if (exact - exact.round()).abs() < 1e-7 { exact.round() } else { exact.ceil() };
                let prob = (1.0 - r) / f;
                if b.batch_size as f64 != size
                    || (b.time_range - range).abs() > 1e-12
                    || (b.new_time_range - new_range).abs() > 1e-9
                    || (b.batch_probability - prob).abs() > 1e-15
                {
                    failures.push(format!("f={f} n0={n0} r={r} expansion {k}"));
                }
                total += size;
                k += 1;
            }
            b.record_sample();
        }
    }
    let p = ExpansionParams {
        range_factor: 2.0,
        initial_batch_size: 100,
        sample_ratio: 0.5,
    };
    let mut b = ExpansionState::new(&p);
    while !b.update_goal_region(&p, f64::INFINITY) {
        b.record_sample();
    }
    let worked = b.batch_size == 200 && b.batch_probability == 0.25;
    verdict(
        failures.is_empty() && worked,
        format!(
            "{} parameter sets x 6 expansions, worked example {}/{}{}",
            combos.len(),
            b.batch_size,
            b.batch_probability,
            if failures.is_empty() { String::new() } else { format!(", mismatches {failures:?}") }
        ),
    )
}

// 4 -----------------------------------------------------------------------

/// Feasibility of the straight motion `a -> b`, written out independently
/// of the planner's distance function.
fn reachable(space: &SpaceTimeSpace, a: &[f64], ta: f64, b: &[f64], tb: f64) -> bool {
    let dt = tb - ta;
    dt > 0.0
        && a.iter()
            .zip(b)
            .zip(space.vmax())
            .all(|((x, y), v)| (x - y).abs() <= v * dt * (1.0 + 1e-9))
}

struct SoundnessCounts {
    samples: u64,
    from_start: u64,
    to_goal: u64,
    multi_dim_samples: u64,
    multi_dim_to_goal: u64,
}

fn conditional_sampling_run(bound: TravelBound, target: u64, seed: u64) -> SoundnessCounts {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut c = SoundnessCounts {
        samples: 0,
        from_start: 0,
        to_goal: 0,
        multi_dim_samples: 0,
        multi_dim_to_goal: 0,
    };
    let params = ExpansionParams {
        range_factor: 2.0,
        initial_batch_size: 16,
        sample_ratio: 0.5,
    };
    while c.samples < target {
        let dim = rng.random_range(1..=4);
        let vmax: Vec<f64> = (0..dim).map(|_| rng.random_range(0.25..2.0)).collect();
        let space = SpaceTimeSpace::new(vec![0.0; dim], vec![10.0; dim], vmax, 0.5).unwrap();
        let start = State::new(space.sample_configuration(&mut rng), rng.random_range(0.0..3.0));
        let goals: Vec<Vec<f64>> = (0..rng.random_range(1..4)).map(|_| space.sample_configuration(&mut rng)).collect();
        let goal = GoalRegion {
            configs: GoalConfigs::Set(goals),
            t_max: None,
        };
        let gs = GoalSampling {
            space: &space,
            start: &start,
            goal: &goal,
            mode: GoalTimeSampling::Weighted,
            t_min_floor: 0.1,
        };
        let mut b = ExpansionState::new(&params);
        // grow the goal set past a few expansions, as the planner would
        let goal_draws = rng.random_range(20..200);
        for _ in 0..goal_draws {
            b.update_goal_region(&params, f64::INFINITY);
            gs.sample(&mut b, f64::INFINITY, &mut rng);
            b.record_sample();
        }
        for _ in 0..1000 {
            let Some(x) = sample_conditionally(&space, &start, &b, bound, 10_000, &mut rng) else {
                continue;
            };
            c.samples += 1;
            if reachable(&space, &start.q, start.t, &x.q, x.t) {
                c.from_start += 1;
            }
            let hit = b
                .goals
                .iter()
                .chain(&b.new_goals)
                .any(|g| reachable(&space, &x.q, x.t, &g.q, g.t));
            c.to_goal += hit as u64;
            if dim >= 2 {
                c.multi_dim_samples += 1;
                c.multi_dim_to_goal += hit as u64;
            }
        }
    }
    c
}

fn conditional_sampling_soundness(_: &mut Ctx) -> Verdict {
    let cons = conditional_sampling_run(TravelBound::Conservative, 1_000_000, 11);
    let lit = conditional_sampling_run(TravelBound::MinAxis, 200_000, 12);
    let miss = lit.multi_dim_samples - lit.multi_dim_to_goal;
    let miss_rate = miss as f64 / lit.multi_dim_samples as f64;
    verdict(
        cons.from_start == cons.samples && cons.to_goal == cons.samples && miss_rate >= 1e-3,
        format!(
            "conservative: {} samples, {} reachable from start, {} reach a goal; \
             min-axis (dim >= 2): {miss} of {} miss every goal ({:.2}%)",
            cons.samples,
            cons.from_start,
            cons.to_goal,
            lit.multi_dim_samples,
            miss_rate * 100.0
        ),
    )
}

// 5 -----------------------------------------------------------------------

/// Goal times stored once `expansions` expansions have happened, with the
/// `[t_min, t_min * time_range]` interval they should cover.
fn goal_times(mode: GoalTimeSampling, expansions: u32, seed: u64) -> (Vec<f64>, f64, f64) {
    let scn = make_cluttered(1, 0, 0).unwrap();
    let params = ExpansionParams::default();
    let gs = GoalSampling {
        space: &scn.space,
        start: &scn.start,
        goal: &scn.goal,
        mode,
        t_min_floor: 0.0,
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut b = ExpansionState::new(&params);
    loop {
        if b.update_goal_region(&params, f64::INFINITY) && b.expansions == expansions {
            let t_min = scn.goal.travel_time_from(&scn.space, &scn.start.q) + scn.start.t;
            let times = b.goals.iter().map(|g| g.t).collect();
            return (times, t_min, t_min * b.time_range);
        }
        gs.sample(&mut b, f64::INFINITY, &mut rng).expect("interval is non-empty");
        b.record_sample();
    }
}

fn max_bin_deviation(times: &[f64], lo: f64, hi: f64, bins: usize) -> f64 {
    let mut h = vec![0usize; bins];
    for &t in times {
        let k = (((t - lo) / (hi - lo)) * bins as f64).floor() as usize;
        h[k.min(bins - 1)] += 1;
    }
    let e = times.len() as f64 / bins as f64;
    h.iter().map(|&c| (c as f64 - e).abs() / e).fold(0.0, f64::max)
}

fn goal_time_uniformity(_: &mut Ctx) -> Verdict {
    let (w, lo, hi) = goal_times(GoalTimeSampling::Weighted, 7, 5);
    let dw = max_bin_deviation(&w, lo, hi, 20);
    let (n, lo_n, hi_n) = goal_times(GoalTimeSampling::Naive, 7, 5);
    let dn = max_bin_deviation(&n, lo_n, hi_n, 20);
    verdict(
        w.len() >= 100_000 && dw < 0.1 && dn > 0.3,
        format!(
            "7 expansions; weighted {} times, deviation {dw:.4}; naive {} times, deviation {dn:.4}",
            w.len(),
            n.len()
        ),
    )
}

// 6 -----------------------------------------------------------------------

fn audit_scenarios() -> Vec<(&'static str, Scenario)> {
    let mut shifted = make_cluttered(2, 12, 5).unwrap();
    shifted.start.t = 3.0;
    let mut boxed = make_cluttered(2, 12, 6).unwrap();
    boxed.goal = GoalRegion {
        configs: GoalConfigs::Box {
            lo: vec![8.0, 8.0],
            hi: vec![9.5, 9.5],
        },
        t_max: None,
    };
    let mut deadline = make_cluttered(2, 6, 7).unwrap();
    deadline.goal.t_max = Some(25.0);
    vec![
        ("narrow-1", make_narrow_passage(1, &DEFAULT_NARROW_WINDOWS).unwrap()),
        ("narrow-3", make_narrow_passage(3, &DEFAULT_NARROW_WINDOWS).unwrap()),
        ("cluttered-2", make_cluttered(2, 15, 0).unwrap()),
        ("cluttered-3", make_cluttered(3, 20, 1).unwrap()),
        ("late-start", shifted),
        ("goal-box", boxed),
        ("goal-deadline", deadline),
    ]
}

fn pruning_and_rewiring_audits(_: &mut Ctx) -> Verdict {
    let mut audits = 0;
    let mut problems = vec![];
    let mut pruned = 0;
    let mut rewires = 0;
    for (name, scn) in audit_scenarios() {
        for seed in 0..5 {
            let mut p = StRrtStar::new(&scn, PlannerParams::with_seed(seed)).unwrap();
            p.record_pruning();
            for _ in 0..24 {
                p.solve(Termination::iterations(p.stats().iterations + 250));
                audits += 1;
                if let Err(issues) = p.audit() {
                    problems.push(format!("{name}/{seed}: {}", issues.join("; ")));
                    break;
                }
            }
            pruned += p.stats().pruned;
            rewires += p.stats().rewires;
            match p.best_solution() {
                Some(sol) => {
                    if let Err(e) = validate_path(&scn, sol, 10.0) {
                        problems.push(format!("{name}/{seed}: {e}"));
                    }
                }
                None => problems.push(format!("{name}/{seed}: unsolved")),
            }
        }
    }
    verdict(
        problems.is_empty() && pruned > 0 && rewires > 0,
        format!(
            "{audits} audits over 35 runs, {pruned} nodes pruned, {rewires} rewires{}",
            if problems.is_empty() { String::new() } else { format!(", problems: {problems:?}") }
        ),
    )
}

// 7 -----------------------------------------------------------------------

fn anytime_contract(ctx: &mut Ctx) -> Verdict {
    // short iteration-budget runs of every planner, plus every benchmark run
    // recorded by the other criteria
    let scn = make_cluttered(2, 15, 0).unwrap();
    ctx.bench(
        "anytime",
        &scn,
        vec![
            strrt(),
            PlannerSpec::new(PlannerKind::RrtStar).with_t_bound(30.0),
            PlannerSpec::new(PlannerKind::RrtConnect).with_t_bound(40.0),
        ],
        10,
        Budget::Iterations(6000),
    );
    let mut runs = 0;
    let mut curves = 0;
    let mut problems = vec![];
    for (tag, recs) in &ctx.records {
        let mut groups: BTreeMap<&str, Vec<&RunRecord>> = BTreeMap::new();
        for r in recs {
            runs += 1;
            for w in r.improvements.windows(2) {
                if !(w[1].cost < w[0].cost && w[1].at >= w[0].at) {
                    problems.push(format!("{tag}/{}/{}", r.planner, r.seed));
                }
            }
            if r.improvements.last().map_or(f64::INFINITY, |m| m.cost) != r.final_cost {
                problems.push(format!("{tag}/{}/{}: final cost", r.planner, r.seed));
            }
            groups.entry(&r.planner).or_default().push(r);
        }
        for (planner, group) in groups {
            let horizon = group.iter().flat_map(|r| r.improvements.iter().map(|m| m.at)).fold(1.0, f64::max);
            let grid: Vec<f64> = (1..=100).map(|k| horizon * k as f64 / 100.0).collect();
            let pts = aggregate(&group, &grid);
            curves += 1;
            for w in pts.windows(2) {
                if w[1].cost_median > w[0].cost_median || w[1].success_rate < w[0].success_rate {
                    problems.push(format!("{tag}/{planner}: curve"));
                    break;
                }
            }
        }
    }
    verdict(
        problems.is_empty(),
        format!(
            "{runs} runs, {curves} aggregate curves checked{}",
            if problems.is_empty() { String::new() } else { format!(", violations: {problems:?}") }
        ),
    )
}

// 8 -----------------------------------------------------------------------

fn baseline_comparison(ctx: &mut Ctx) -> Verdict {
    let scn = make_cluttered(2, 15, 0).unwrap();
    let budget = Budget::Seconds(10.0);
    let st = ctx.bench("cluttered-strrt", &scn, vec![strrt()], 20, budget);
    let best = st.iter().map(|r| r.final_cost).fold(f64::INFINITY, f64::min);
    let st_first = median_first_solution(&refs(&st));
    let st_cost = median_cost(&st);
    let bounds = [1.2 * best, 2.0 * best, 4.0 * best];
    let mut specs = vec![];
    for &b in &bounds {
        specs.push(PlannerSpec::new(PlannerKind::RrtStar).with_t_bound(b));
    }
    specs.push(PlannerSpec::new(PlannerKind::RrtConnect).with_t_bound(bounds[2]));
    let labels: Vec<String> = specs.iter().map(|s| s.label()).collect();
    let base = ctx.bench("cluttered-baselines", &scn, specs, 20, budget);

    let connect = by_planner(&base, &labels[3]);
    let connect_first = median_first_solution(&refs(&connect));
    let mut ok = st_first <= connect_first;
    let mut detail = format!(
        "ST-RRT*: median first solution {st_first:.4}s, median cost {st_cost:.4}, solved {}/20; \
         RRT-Connect@{:.2}: median first solution {connect_first:.4}s, solved {}/20",
        success(&st),
        bounds[2],
        success(&connect)
    );
    for (b, label) in bounds.iter().zip(&labels) {
        let star = by_planner(&base, label);
        let c = median_cost(&star);
        ok &= st_cost <= c;
        detail.push_str(&format!("; RRT*@{b:.2}: median cost {c:.4}, solved {}/20", success(&star)));
    }
    verdict(ok, detail)
}

// 9 -----------------------------------------------------------------------

fn infeasible_bound(ctx: &mut Ctx) -> Verdict {
    let scn = make_narrow_passage(1, &DEFAULT_NARROW_WINDOWS).unwrap();
    let oracle = ctx.narrow_oracle();
    let bound = 0.95 * oracle;
    let recs = ctx.bench(
        "infeasible",
        &scn,
        vec![
            PlannerSpec::new(PlannerKind::RrtConnect).with_t_bound(bound),
            PlannerSpec::new(PlannerKind::RrtStar).with_t_bound(bound),
        ],
        10,
        Budget::Seconds(3.0),
    );
    let baseline_solved = success(&recs);
    let mut st_solved = 0;
    for seed in 0..10 {
        let (r, sol) = run_one(&scn, &strrt(), Budget::Seconds(10.0), seed, true).unwrap();
        if r.solved() && sol.is_some_and(|s| validate_path(&scn, &s, 10.0).is_ok()) {
            st_solved += 1;
        }
    }
    verdict(
        baseline_solved == 0 && st_solved == 10,
        format!(
            "tBound {bound:.3} (oracle {oracle:.3}): baselines solved {baseline_solved}/20, \
             unbounded ST-RRT* solved {st_solved}/10"
        ),
    )
}

// 10 ----------------------------------------------------------------------

fn determinism(_: &mut Ctx) -> Verdict {
    let dir = tempfile::tempdir().unwrap();
    let exe = env!("CARGO_BIN_EXE_strrt");
    let gen = |args: &[&str], file: &str| {
        let path = dir.path().join(file);
        let st = Command::new(exe).args(args).arg("--out").arg(&path).status().unwrap();
        assert!(st.success());
        path
    };
    let scenarios = [
        gen(&["gen", "--kind", "narrow", "--dim", "1"], "narrow.json"),
        gen(&["gen", "--kind", "cluttered", "--dim", "2", "--seed", "3"], "cluttered.json"),
    ];
    let planners = [("strrt", None), ("rrt-star", Some("40")), ("rrt-connect", Some("40"))];
    let mut compared = 0;
    let mut mismatches = vec![];
    for (si, scn) in scenarios.iter().enumerate() {
        for (name, bound) in planners {
            let run = |tag: &str| {
                let sol = dir.path().join(format!("{si}-{name}-{tag}.json"));
                let stats = dir.path().join(format!("{si}-{name}-{tag}.jsonl"));
                let mut cmd = Command::new(exe);
                cmd.args(["plan", "--planner", name, "--seed", "7", "--iterations", "4000"])
                    .arg("--scenario")
                    .arg(scn)
                    .arg("--out")
                    .arg(&sol)
                    .arg("--stats")
                    .arg(&stats);
                if let Some(b) = bound {
                    cmd.args(["--t-bound", b]);
                }
                let code = cmd.output().unwrap().status.code();
                (code, std::fs::read(&sol).ok(), std::fs::read(&stats).ok())
            };
            let (a, b) = (run("a"), run("b"));
            compared += 1;
            if a != b || a.2.is_none() {
                mismatches.push(format!("{si}/{name}"));
            }
        }
    }
    verdict(
        mismatches.is_empty(),
        format!(
            "{compared} planner/scenario pairs run twice with 4000 iterations{}",
            if mismatches.is_empty() { ", solution and stats files byte-identical".to_string() } else { format!(", differing: {mismatches:?}") }
        ),
    )
}

// 11 ----------------------------------------------------------------------

fn high_dimension_smoke(_: &mut Ctx) -> Verdict {
    let scn = make_narrow_passage(8, &DEFAULT_NARROW_WINDOWS).unwrap();
    let mut solved = 0;
    let mut slowest: f64 = 0.0;
    for seed in 0..20 {
        let (r, sol) = run_one(&scn, &strrt(), Budget::Seconds(60.0), seed, true).unwrap();
        if let (Some(t), Some(sol)) = (r.first_solution, sol) {
            if t <= 60.0 && validate_path(&scn, &sol, 10.0).is_ok() {
                solved += 1;
                slowest = slowest.max(t);
            }
        }
    }
    verdict(
        solved >= 18,
        format!("solved {solved}/20 within 60s, slowest first solution {slowest:.3}s"),
    )
}

type Criterion = fn(&mut Ctx) -> Verdict;

fn main() {
    let criteria: [(u32, &str, Criterion); 11] = [
        (1, "oracle optimality (1+1-D narrow passage)", oracle_optimality),
        (2, "empty-space optimum", empty_space_optimum),
        (3, "batch mathematics", batch_mathematics),
        (4, "conditional-sampling soundness", conditional_sampling_soundness),
        (5, "goal-time uniformity", goal_time_uniformity),
        (6, "pruning and rewiring audits", pruning_and_rewiring_audits),
        (8, "baseline comparison trend (cluttered 2+1-D)", baseline_comparison),
        (9, "infeasible-bound behaviour", infeasible_bound),
        (10, "determinism", determinism),
        (11, "high-dimension smoke (8+1-D)", high_dimension_smoke),
        // last, so that it sees the benchmark runs of the others
        (7, "anytime contract", anytime_contract),
    ];
    let only: Option<Vec<u32>> = std::env::var("STRRT_ACCEPTANCE_ONLY")
        .ok()
        .map(|s| s.split(',').filter_map(|x| x.trim().parse().ok()).collect());
    let workers = std::env::var("STRRT_ACCEPTANCE_WORKERS")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
    let mut ctx = Ctx {
        workers,
        ..Ctx::default()
    };
    let mut results = vec![];
    for (id, name, check) in criteria {
        if only.as_ref().is_some_and(|o| !o.contains(&id)) {
            continue;
        }
        let started = Instant::now();
        let v = check(&mut ctx);
        let line = format!(
            "{} [{id}] {name}: {} ({:.1}s)",
            if v.pass { "PASS" } else { "FAIL" },
            v.detail,
            started.elapsed().as_secs_f64()
        );
        println!("{line}");
        results.push((id, v.pass, line));
    }
    results.sort_by_key(|r| r.0);
    let failed = results.iter().filter(|r| !r.1).count();
    println!("\nacceptance summary");
    for (_, _, line) in &results {
        println!("{line}");
    }
    println!("{} passed, {failed} failed", results.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
