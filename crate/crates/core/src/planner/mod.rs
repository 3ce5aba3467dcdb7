//! Bidirectional, asymptotically optimal planning in space-time.
//!
//! The start tree grows forward in time from the start state. The goal forest
//! grows backward in time from sampled goal states, one tree per goal root.
//! Both sides extend towards samples drawn by [`bounds::sample_conditionally`]
//! and try to connect to each other. Once a solution is known its arrival time
//! becomes the time bound: goal trees with later roots and start nodes that
//! cannot arrive earlier are pruned, and all further samples respect the bound.
//!
//! ```
//! use strrt::planner::{PlannerParams, StRrtStar};
//! use strrt::scenario::make_cluttered;
//! use strrt::solution::{Planner, Termination};
//!
//! let scn = make_cluttered(1, 0, 0).unwrap();
//! let mut planner = StRrtStar::new(&scn, PlannerParams::with_seed(1)).unwrap();
//! let out = planner.solve(Termination::iterations(2000));
//! assert!(out.solution.unwrap().cost < 8.5);
//! ```

pub mod bounds;
pub mod params;

use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub use bounds::{next_batch_size, sample_conditionally, ExpansionState, GoalSample, GoalSampling};
pub use params::{
    default_steer_range, rrt_star_k, ExpansionParams, GoalTimeSampling, Neighborhood,
    PlannerParams, DEFAULT_CHECK_REFINEMENT,
};

use crate::error::{CoreError, Result};
use crate::scenario::Scenario;
use crate::solution::{Improvement, PlanOutcome, Planner, RunClock, RunStats, SolutionPath, Termination};
use crate::space::{interpolate_into, lerp, State};
use crate::tree::NodeStore;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Side {
    Start,
    Goal,
}

impl Side {
    fn other(self) -> Self {
        match self {
            Side::Start => Side::Goal,
            Side::Goal => Side::Start,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Extension {
    Trapped,
    Advanced(usize),
    Reached(usize),
}

/// Edges of both trees, for plotting.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct TreeSnapshot {
    pub start_edges: Vec<(State, State)>,
    pub goal_edges: Vec<(State, State)>,
    pub goal_roots: Vec<State>,
    pub solution: Option<SolutionPath>,
    pub t_max: f64,
}

/// Serials of removed nodes and of the nodes of every accepted solution.
#[derive(Debug, Clone, Default)]
struct PruneLog {
    start: HashSet<u64>,
    goal: HashSet<u64>,
    violations: Vec<String>,
}

pub struct StRrtStar<'a> {
    scn: &'a Scenario,
    params: PlannerParams,
    steer: f64,
    resolution: f64,
    state_dim: usize,
    rng: ChaCha8Rng,
    start_tree: NodeStore,
    goal_forest: NodeStore,
    bounds: ExpansionState,
    t_max: f64,
    solution: Option<SolutionPath>,
    stats: RunStats,
    grow: Side,
    prune_log: Option<PruneLog>,
}

impl<'a> StRrtStar<'a> {
    pub fn new(scn: &'a Scenario, params: PlannerParams) -> Result<Self> {
        params.validate()?;
        scn.validate()?;
        if !scn.is_state_valid(&scn.start) {
            return Err(CoreError::InvalidStart);
        }
        let dim = scn.dim();
        let mut start_tree = NodeStore::new(dim);
        start_tree.add_root(&scn.start.q, scn.start.t);
        let steer = params.resolved_steer_range(&scn.space);
        Ok(Self {
            scn,
            steer,
            resolution: scn.check_resolution / params.check_refinement,
            state_dim: dim + 1,
            rng: ChaCha8Rng::seed_from_u64(params.seed),
            start_tree,
            goal_forest: NodeStore::new(dim),
            bounds: ExpansionState::new(&params.expansion),
            t_max: params.t_max.min(scn.goal.time_bound()),
            solution: None,
            stats: RunStats {
                nodes_created: 1,
                ..RunStats::default()
            },
            grow: Side::Start,
            prune_log: None,
            params,
        })
    }

    /// Keeps the serials of pruned nodes so that [`Self::audit`] can check
    /// they never become part of a later solution.
    pub fn record_pruning(&mut self) {
        self.prune_log.get_or_insert_with(PruneLog::default);
    }

    pub fn params(&self) -> &PlannerParams {
        &self.params
    }

    pub fn steer_range(&self) -> f64 {
        self.steer
    }

    /// Current arrival-time bound.
    pub fn t_max(&self) -> f64 {
        self.t_max
    }

    pub fn expansion(&self) -> &ExpansionState {
        &self.bounds
    }

    pub fn best_solution(&self) -> Option<&SolutionPath> {
        self.solution.as_ref()
    }

    pub fn stats(&self) -> &RunStats {
        &self.stats
    }

    pub fn start_tree(&self) -> &NodeStore {
        &self.start_tree
    }

    pub fn goal_forest(&self) -> &NodeStore {
        &self.goal_forest
    }

    fn goal_sampling(&self) -> GoalSampling<'a> {
        GoalSampling {
            space: &self.scn.space,
            start: &self.scn.start,
            goal: &self.scn.goal,
            mode: self.params.goal_time_sampling,
            t_min_floor: self.steer,
        }
    }

    fn motion_valid(&self, qa: &[f64], ta: f64, qb: &[f64], tb: f64) -> bool {
        self.scn
            .motion_valid_at_resolution(qa, ta, qb, tb, self.resolution)
    }

    fn store(&self, side: Side) -> &NodeStore {
        match side {
            Side::Start => &self.start_tree,
            Side::Goal => &self.goal_forest,
        }
    }

    /// Runs one iteration of the main loop.
    pub fn step(&mut self) {
        self.stats.iterations += 1;
        self.bounds
            .update_goal_region(&self.params.expansion, self.t_max);
        let draw: f64 = self.rng.random();
        if draw <= self.params.p_goal || self.goal_forest.is_empty() {
            self.add_goal_sample();
        }
        let sample = sample_conditionally(
            &self.scn.space,
            &self.scn.start,
            &self.bounds,
            self.params.travel_bound,
            self.params.sampler_attempts,
            &mut self.rng,
        );
        match sample {
            None => {
                // a starved sampler counts towards the batch so that the
                // goal-time range keeps growing
                self.stats.starved += 1;
                self.bounds.record_sample();
            }
            Some(x_rand) => self.grow_towards(&x_rand),
        }
        self.grow = self.grow.other();
    }

    fn add_goal_sample(&mut self) {
        let sampling = self.goal_sampling();
        let Some(g) = sampling.propose(&self.bounds, self.t_max, &mut self.rng) else {
            return;
        };
        if !self.scn.is_state_valid(&g.state) {
            return;
        }
        self.goal_forest.add_root(&g.state.q, g.state.t);
        self.stats.nodes_created += 1;
        self.bounds.insert_goal(g);
    }

    fn grow_towards(&mut self, x_rand: &State) {
        let a = self.grow;
        let x_new = match self.extend(a, &x_rand.q, x_rand.t) {
            Extension::Trapped => return,
            Extension::Advanced(i) | Extension::Reached(i) => i,
        };
        self.bounds.record_sample();
        self.stats.samples += 1;
        let x_new = if a == Side::Goal {
            self.rewire_goal_forest(x_new)
        } else {
            x_new
        };
        let target = self.store(a).state(x_new);
        if let Extension::Reached(other) = self.connect(a.other(), &target) {
            let (s, g) = match a {
                Side::Start => (x_new, other),
                Side::Goal => (other, x_new),
            };
            if self.update_solution(s, g) {
                self.prune();
            }
        }
    }

    /// Nearest node of `side` that can be joined with the target, the start
    /// tree measuring forward and the goal forest backward in time.
    fn nearest(&self, side: Side, q: &[f64], t: f64) -> Option<(usize, f64)> {
        let space = &self.scn.space;
        match side {
            Side::Start => self.start_tree.nearest(|nq, nt| space.dist(nq, nt, q, t)),
            Side::Goal => self.goal_forest.nearest(|nq, nt| space.dist(q, t, nq, nt)),
        }
    }

    fn extend(&mut self, side: Side, q: &[f64], t: f64) -> Extension {
        let Some((near, d)) = self.nearest(side, q, t) else {
            return Extension::Trapped;
        };
        if d == 0.0 {
            return Extension::Reached(near);
        }
        let store = self.store(side);
        let reached = d <= self.steer;
        let (new_t, new_q) = if reached {
            (t, q.to_vec())
        } else {
            let s = self.steer / d;
            let mut stepped = Vec::with_capacity(q.len());
            interpolate_into(store.q(near), q, s, &mut stepped);
            (lerp(store.t(near), t, s), stepped)
        };
        let (near_q, near_t) = (store.q(near), store.t(near));
        let valid = match side {
            Side::Start => self.motion_valid(near_q, near_t, &new_q, new_t),
            Side::Goal => self.motion_valid(&new_q, new_t, near_q, near_t),
        };
        if !valid {
            return Extension::Trapped;
        }
        if side == Side::Start && self.t_max.is_finite() {
            let earliest = new_t + self.scn.goal.travel_time_from(&self.scn.space, &new_q);
            if earliest >= self.t_max {
                return Extension::Trapped;
            }
        }
        let i = match side {
            Side::Start => self.start_tree.add_child(near, &new_q, new_t),
            Side::Goal => self.goal_forest.add_child(near, &new_q, new_t),
        };
        self.stats.nodes_created += 1;
        if reached {
            Extension::Reached(i)
        } else {
            Extension::Advanced(i)
        }
    }

    fn connect(&mut self, side: Side, target: &State) -> Extension {
        loop {
            match self.extend(side, &target.q, target.t) {
                Extension::Advanced(_) => continue,
                other => return other,
            }
        }
    }

    /// Moves earlier goal nodes near `x_new` under it when that gives them an
    /// earlier root. Returns the index of `x_new`, which is unchanged.
    fn rewire_goal_forest(&mut self, x_new: usize) -> usize {
        let space = &self.scn.space;
        let forest = &self.goal_forest;
        let (q_new, t_new) = (forest.q(x_new).to_vec(), forest.t(x_new));
        let dist = |q: &[f64], t: f64| space.dist(q, t, &q_new, t_new);
        let neighbours = match self.params.neighborhood {
            Neighborhood::Auto => {
                forest.k_nearest(rrt_star_k(forest.len(), self.state_dim), dist)
            }
            Neighborhood::KNearest(k) => forest.k_nearest(k, dist),
            Neighborhood::Radius(r) => forest.within(r, dist),
        };
        for (y, _) in neighbours {
            if y == x_new {
                continue;
            }
            let forest = &self.goal_forest;
            if forest.root_time(x_new) >= forest.root_time(y) {
                continue;
            }
            if self
                .motion_valid(forest.q(y), forest.t(y), &q_new, t_new)
            {
                self.goal_forest.reparent(y, x_new);
                self.stats.rewires += 1;
            }
        }
        x_new
    }

    /// Accepts the path through start node `s` and goal node `g` if it
    /// arrives strictly earlier than the best known one.
    fn update_solution(&mut self, s: usize, g: usize) -> bool {
        let arrival = self.goal_forest.root_time(g);
        if self.solution.as_ref().is_some_and(|best| arrival >= best.cost) {
            return false;
        }
        let start_branch = self.start_tree.branch(s);
        let goal_branch = self.goal_forest.branch(g);
        if let Some(log) = &mut self.prune_log {
            for &i in &start_branch {
                let serial = self.start_tree.serial(i);
                if log.start.contains(&serial) {
                    log.violations
                        .push(format!("pruned start node {serial} reused in a solution"));
                }
            }
            for &i in &goal_branch {
                let serial = self.goal_forest.serial(i);
                if log.goal.contains(&serial) {
                    log.violations
                        .push(format!("pruned goal node {serial} reused in a solution"));
                }
            }
        }
        let mut states: Vec<State> = start_branch
            .iter()
            .rev()
            .map(|&i| self.start_tree.state(i))
            .collect();
        states.extend(goal_branch.iter().skip(1).map(|&i| self.goal_forest.state(i)));
        let path = SolutionPath::new(states);
        debug_assert_eq!(path.cost, arrival);
        self.t_max = path.cost;
        self.stats.improvements.push(Improvement {
            iteration: self.stats.iterations,
            seconds: 0.0,
            cost: path.cost,
        });
        self.solution = Some(path);
        self.bounds.batch_probability = 1.0;
        self.bounds.merge_new_goals();
        true
    }

    /// Removes every node that cannot be part of a path arriving before the
    /// current bound.
    fn prune(&mut self) {
        let t_max = self.t_max;
        let removed_goal = self
            .goal_forest
            .prune(|f, i| f.root_time(i) >= t_max || f.t(i) >= t_max);
        let space = &self.scn.space;
        let goal = &self.scn.goal;
        let removed_start = self.start_tree.prune(|tr, i| {
            tr.parent(i).is_some() && tr.t(i) + goal.travel_time_from(space, tr.q(i)) >= t_max
        });
        self.bounds.discard_goals_from(t_max);
        self.stats.pruned += (removed_goal.len() + removed_start.len()) as u64;
        if let Some(log) = &mut self.prune_log {
            log.goal.extend(removed_goal);
            log.start.extend(removed_start);
        }
        self.start_tree.maybe_compact();
        self.goal_forest.maybe_compact();
    }

    pub fn snapshot(&self) -> TreeSnapshot {
        let edges = |s: &NodeStore| {
            s.alive_indices()
                .filter_map(|i| s.parent(i).map(|p| (s.state(p), s.state(i))))
                .collect::<Vec<_>>()
        };
        TreeSnapshot {
            start_edges: edges(&self.start_tree),
            goal_edges: edges(&self.goal_forest),
            goal_roots: self
                .goal_forest
                .alive_indices()
                .filter(|&i| self.goal_forest.parent(i).is_none())
                .map(|i| self.goal_forest.state(i))
                .collect(),
            solution: self.solution.clone(),
            t_max: self.t_max,
        }
    }

    /// Checks the structural invariants of both trees and of the bounds.
    /// Returns every violation found.
    pub fn audit(&self) -> std::result::Result<(), Vec<String>> {
        let mut issues = Vec::new();
        let space = &self.scn.space;
        let st = &self.start_tree;
        let start = &self.scn.start;
        if st.is_empty() || st.q(0) != start.q.as_slice() || st.t(0) != start.t {
            issues.push("start tree lost its root".to_string());
        }
        for i in st.alive_indices() {
            match st.parent(i) {
                None if i != 0 => issues.push(format!("start node {i} has no parent")),
                None => {}
                Some(p) => {
                    if !st.is_alive(p) {
                        issues.push(format!("start node {i} hangs off a removed node"));
                    }
                    if !space.dist(st.q(p), st.t(p), st.q(i), st.t(i)).is_finite() {
                        issues.push(format!("start edge {p} -> {i} is infeasible"));
                    }
                    if !st.children(p).contains(&i) {
                        issues.push(format!("start node {p} does not list child {i}"));
                    }
                    if self.t_max.is_finite()
                        && st.t(i) + self.scn.goal.travel_time_from(space, st.q(i)) >= self.t_max
                    {
                        issues.push(format!("start node {i} cannot beat the bound"));
                    }
                }
            }
        }
        let gf = &self.goal_forest;
        for i in gf.alive_indices() {
            let branch = gf.branch(i);
            if branch.len() > gf.capacity() {
                issues.push(format!("goal node {i} is on a cycle"));
                continue;
            }
            let root = *branch.last().unwrap();
            if gf.root(i) != root || gf.root_time(i) != gf.t(root) {
                issues.push(format!("goal node {i} has a stale root"));
            }
            if let Some(p) = gf.parent(i) {
                if !gf.is_alive(p) {
                    issues.push(format!("goal node {i} hangs off a removed node"));
                }
                if !space.dist(gf.q(i), gf.t(i), gf.q(p), gf.t(p)).is_finite() {
                    issues.push(format!("goal edge {i} -> {p} is infeasible"));
                }
            } else if !self.scn.goal.contains_configuration(gf.q(i)) {
                issues.push(format!("goal root {i} is outside the goal region"));
            }
            if gf.root_time(i) >= self.t_max {
                issues.push(format!("goal node {i} has root time beyond the bound"));
            }
        }
        let b = &self.bounds;
        if !(b.batch_probability > 0.0 && b.batch_probability <= 1.0) {
            issues.push(format!("batch probability {} out of range", b.batch_probability));
        }
        if self.t_max == f64::INFINITY && b.samples_in_batch > b.batch_size {
            issues.push("batch overfilled".to_string());
        }
        if b.goals.iter().chain(&b.new_goals).any(|g| g.t >= self.t_max) {
            issues.push("stored goal beyond the bound".to_string());
        }
        if let Some(best) = &self.solution {
            if best.cost != self.t_max {
                issues.push("bound differs from best cost".to_string());
            }
        }
        if let Some(log) = &self.prune_log {
            issues.extend(log.violations.iter().cloned());
        }
        if issues.is_empty() {
            Ok(())
        } else {
            Err(issues)
        }
    }
}

impl Planner for StRrtStar<'_> {
    fn solve(&mut self, term: Termination) -> PlanOutcome {
        let clock = RunClock::start(term);
        loop {
            if clock.expired(self.stats.iterations, self.solution.is_some()) {
                break;
            }
            let before = self.stats.improvements.len();
            self.step();
            if self.stats.improvements.len() > before {
                let now = clock.elapsed();
                for imp in &mut self.stats.improvements[before..] {
                    imp.seconds = now;
                }
            }
        }
        self.stats.nodes = self.start_tree.len() + self.goal_forest.len();
        self.stats.elapsed_seconds += clock.elapsed();
        PlanOutcome {
            solution: self.solution.clone(),
            stats: self.stats.clone(),
        }
    }
}
