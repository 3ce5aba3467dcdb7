use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{sample_box, BaselineParams};
use crate::error::Result;
use crate::planner::{default_steer_range, rrt_star_k, Neighborhood};
use crate::scenario::Scenario;
use crate::solution::{Improvement, PlanOutcome, Planner, RunClock, RunStats, SolutionPath, Termination};
use crate::space::{interpolate_into, lerp, State};
use crate::tree::NodeStore;

/// Unidirectional RRT* over a fixed time horizon. The tree minimises the
/// accumulated space-time distance; the reported cost is the earliest arrival
/// among nodes in the goal region.
pub struct SpaceTimeRrtStar<'a> {
    scn: &'a Scenario,
    params: BaselineParams,
    horizon: f64,
    resolution: f64,
    steer: f64,
    rng: ChaCha8Rng,
    tree: NodeStore,
    cost: Vec<f64>,
    best: Option<usize>,
    stats: RunStats,
}

impl<'a> SpaceTimeRrtStar<'a> {
    pub fn new(scn: &'a Scenario, params: BaselineParams) -> Result<Self> {
        params.validate(scn)?;
        let mut tree = NodeStore::new(scn.dim());
        tree.add_root(&scn.start.q, scn.start.t);
        Ok(Self {
            horizon: params.horizon(scn),
            resolution: params.resolution(scn),
            steer: params
                .steer_range
                .unwrap_or_else(|| default_steer_range(&scn.space)),
            rng: ChaCha8Rng::seed_from_u64(params.seed),
            tree,
            cost: vec![0.0],
            best: None,
            stats: RunStats {
                nodes_created: 1,
                ..RunStats::default()
            },
            scn,
            params,
        })
    }

    fn sample(&mut self) -> State {
        let draw: f64 = self.rng.random();
        if draw < self.params.p_goal {
            let q = self.scn.goal.sample_configuration(&mut self.rng);
            let t = self.rng.random_range(self.scn.start.t..=self.horizon);
            State::new(q, t)
        } else {
            sample_box(self.scn, self.scn.start.t, self.horizon, &mut self.rng)
        }
    }

    fn neighbours<F: Fn(&[f64], f64) -> f64>(&self, dist: F) -> Vec<(usize, f64)> {
        match self.params.neighborhood {
            Neighborhood::Auto => self
                .tree
                .k_nearest(rrt_star_k(self.tree.len(), self.scn.dim() + 1), dist),
            Neighborhood::KNearest(k) => self.tree.k_nearest(k, dist),
            Neighborhood::Radius(r) => self.tree.within(r, dist),
        }
    }

    fn motion_valid(&self, qa: &[f64], ta: f64, qb: &[f64], tb: f64) -> bool {
        self.scn
            .motion_valid_at_resolution(qa, ta, qb, tb, self.resolution)
    }

    fn step(&mut self) {
        self.stats.iterations += 1;
        let x_rand = self.sample();
        let space = &self.scn.space;
        let Some((near, d)) = self
            .tree
            .nearest(|q, t| space.dist(q, t, &x_rand.q, x_rand.t))
        else {
            return;
        };
        if d == 0.0 {
            return;
        }
        let (q_new, t_new) = if d <= self.steer {
            (x_rand.q.clone(), x_rand.t)
        } else {
            let s = self.steer / d;
            let mut q = Vec::with_capacity(x_rand.q.len());
            interpolate_into(self.tree.q(near), &x_rand.q, s, &mut q);
            (q, lerp(self.tree.t(near), x_rand.t, s))
        };
        if !self
            .motion_valid(self.tree.q(near), self.tree.t(near), &q_new, t_new)
        {
            return;
        }

        let incoming = self.neighbours(|q, t| space.dist(q, t, &q_new, t_new));
        let mut parent = near;
        let mut best_cost = self.cost[near] + space.dist(self.tree.q(near), self.tree.t(near), &q_new, t_new);
        for &(y, dy) in &incoming {
            let c = self.cost[y] + dy;
            if c < best_cost
                && self
                    .motion_valid(self.tree.q(y), self.tree.t(y), &q_new, t_new)
            {
                parent = y;
                best_cost = c;
            }
        }
        let x_new = self.tree.add_child(parent, &q_new, t_new);
        self.cost.push(best_cost);
        self.stats.nodes_created += 1;
        self.stats.samples += 1;

        let outgoing = self.neighbours(|q, t| space.dist(&q_new, t_new, q, t));
        for (y, dy) in outgoing {
            if y == x_new || self.tree.parent(y).is_none() {
                continue;
            }
            let c = best_cost + dy;
            if c < self.cost[y]
                && self
                    .motion_valid(&q_new, t_new, self.tree.q(y), self.tree.t(y))
            {
                self.tree.reparent(y, x_new);
                self.shift_costs(y, c - self.cost[y]);
                self.stats.rewires += 1;
            }
        }

        if self.scn.goal.contains_configuration(&q_new)
            && t_new <= self.horizon
            && self.best.is_none_or(|b| t_new < self.tree.t(b))
        {
            self.best = Some(x_new);
            self.stats.improvements.push(Improvement {
                iteration: self.stats.iterations,
                seconds: 0.0,
                cost: t_new,
            });
        }
    }

    fn shift_costs(&mut self, root: usize, delta: f64) {
        let mut stack = vec![root];
        while let Some(n) = stack.pop() {
            self.cost[n] += delta;
            stack.extend_from_slice(self.tree.children(n));
        }
    }

    fn solution(&self) -> Option<SolutionPath> {
        let b = self.best?;
        let states = self
            .tree
            .branch(b)
            .iter()
            .rev()
            .map(|&i| self.tree.state(i))
            .collect();
        Some(SolutionPath::new(states))
    }
}

impl Planner for SpaceTimeRrtStar<'_> {
    fn solve(&mut self, term: Termination) -> PlanOutcome {
        let clock = RunClock::start(term);
        while !clock.expired(self.stats.iterations, self.best.is_some()) {
            let before = self.stats.improvements.len();
            self.step();
            if self.stats.improvements.len() > before {
                let now = clock.elapsed();
                self.stats.improvements.last_mut().unwrap().seconds = now;
            }
        }
        self.stats.nodes = self.tree.len();
        self.stats.elapsed_seconds += clock.elapsed();
        PlanOutcome {
            solution: self.solution(),
            stats: self.stats.clone(),
        }
    }
}
