use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{sample_box, BaselineParams};
use crate::error::Result;
use crate::planner::default_steer_range;
use crate::scenario::Scenario;
use crate::solution::{Improvement, PlanOutcome, Planner, RunClock, RunStats, SolutionPath, Termination};
use crate::space::{interpolate_into, lerp, State};
use crate::tree::NodeStore;

/// Bidirectional RRT-Connect over a fixed time horizon. Trees are searched
/// with a symmetric distance; only motion validation respects time direction
/// and velocity limits. Stops at the first solution.
pub struct SpaceTimeRrtConnect<'a> {
    scn: &'a Scenario,
    params: BaselineParams,
    horizon: f64,
    resolution: f64,
    steer: f64,
    rng: ChaCha8Rng,
    start_tree: NodeStore,
    goal_forest: NodeStore,
    grow_start: bool,
    solution: Option<SolutionPath>,
    stats: RunStats,
}

enum Step {
    Trapped,
    Advanced(usize),
    Reached(usize),
}

impl<'a> SpaceTimeRrtConnect<'a> {
    pub fn new(scn: &'a Scenario, params: BaselineParams) -> Result<Self> {
        params.validate(scn)?;
        let mut start_tree = NodeStore::new(scn.dim());
        start_tree.add_root(&scn.start.q, scn.start.t);
        Ok(Self {
            horizon: params.horizon(scn),
            resolution: params.resolution(scn),
            steer: params
                .steer_range
                .unwrap_or_else(|| default_steer_range(&scn.space)),
            rng: ChaCha8Rng::seed_from_u64(params.seed),
            start_tree,
            goal_forest: NodeStore::new(scn.dim()),
            grow_start: true,
            solution: None,
            stats: RunStats {
                nodes_created: 1,
                ..RunStats::default()
            },
            scn,
            params,
        })
    }

    fn add_goal_root(&mut self) {
        let q = self.scn.goal.sample_configuration(&mut self.rng);
        // arrival times the start cannot reach are never sampled
        let earliest = self.scn.start.t + self.scn.space.travel_time(&self.scn.start.q, &q);
        if self.horizon <= earliest {
            return;
        }
        let t = self.rng.random_range(earliest..self.horizon);
        if self.scn.is_valid_at(&q, t) {
            self.goal_forest.add_root(&q, t);
            self.stats.nodes_created += 1;
        }
    }

    fn extend(&mut self, forward: bool, target: &State) -> Step {
        let space = &self.scn.space;
        let tree = if forward { &self.start_tree } else { &self.goal_forest };
        let Some((near, d)) = tree.nearest(|q, t| space.symmetric_dist(q, t, &target.q, target.t)) else {
            return Step::Trapped;
        };
        if d == 0.0 {
            return Step::Reached(near);
        }
        let reached = d <= self.steer;
        let (q_new, t_new) = if reached {
            (target.q.clone(), target.t)
        } else {
            let s = self.steer / d;
            let mut q = Vec::with_capacity(target.q.len());
            interpolate_into(tree.q(near), &target.q, s, &mut q);
            (q, lerp(tree.t(near), target.t, s))
        };
        let (nq, nt) = (tree.q(near), tree.t(near));
        let valid = if forward {
            self.motion_valid(nq, nt, &q_new, t_new)
        } else {
            self.motion_valid(&q_new, t_new, nq, nt)
        };
        if !valid {
            return Step::Trapped;
        }
        let i = if forward {
            self.start_tree.add_child(near, &q_new, t_new)
        } else {
            self.goal_forest.add_child(near, &q_new, t_new)
        };
        self.stats.nodes_created += 1;
        if reached {
            Step::Reached(i)
        } else {
            Step::Advanced(i)
        }
    }

    fn motion_valid(&self, qa: &[f64], ta: f64, qb: &[f64], tb: f64) -> bool {
        self.scn
            .motion_valid_at_resolution(qa, ta, qb, tb, self.resolution)
    }

    fn step(&mut self) {
        self.stats.iterations += 1;
        let draw: f64 = self.rng.random();
        if draw < self.params.p_goal || self.goal_forest.is_empty() {
            self.add_goal_root();
        }
        let forward = self.grow_start;
        self.grow_start = !self.grow_start;
        if self.goal_forest.is_empty() {
            return;
        }
        let x_rand = sample_box(self.scn, self.scn.start.t, self.horizon, &mut self.rng);
        let x_new = match self.extend(forward, &x_rand) {
            Step::Trapped => return,
            Step::Advanced(i) | Step::Reached(i) => i,
        };
        self.stats.samples += 1;
        let target = if forward {
            self.start_tree.state(x_new)
        } else {
            self.goal_forest.state(x_new)
        };
        let other = loop {
            match self.extend(!forward, &target) {
                Step::Advanced(_) => continue,
                Step::Trapped => return,
                Step::Reached(j) => break j,
            }
        };
        let (s, g) = if forward { (x_new, other) } else { (other, x_new) };
        let mut states: Vec<State> = self
            .start_tree
            .branch(s)
            .iter()
            .rev()
            .map(|&i| self.start_tree.state(i))
            .collect();
        states.extend(
            self.goal_forest
                .branch(g)
                .iter()
                .skip(1)
                .map(|&i| self.goal_forest.state(i)),
        );
        let path = SolutionPath::new(states);
        self.stats.improvements.push(Improvement {
            iteration: self.stats.iterations,
            seconds: 0.0,
            cost: path.cost,
        });
        self.solution = Some(path);
    }
}

impl Planner for SpaceTimeRrtConnect<'_> {
    fn solve(&mut self, term: Termination) -> PlanOutcome {
        let clock = RunClock::start(term);
        while self.solution.is_none() && !clock.expired(self.stats.iterations, false) {
            self.step();
            if let Some(imp) = self.stats.improvements.last_mut() {
                imp.seconds = clock.elapsed();
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

#[cfg(test)]
mod tests {
    use super::*;
    use crate::goal::GoalRegion;
    use crate::scenario::make_cluttered;

    fn short_line() -> Scenario {
        let mut scn = make_cluttered(1, 0, 0).unwrap();
        scn.start = State::new(vec![4.0], 0.0);
        scn.goal = GoalRegion::single(vec![6.0]);
        scn
    }

    #[test]
    fn solves_empty_line_within_bound() {
        let scn = short_line();
        for seed in 0..5 {
            let mut p = SpaceTimeRrtConnect::new(&scn, BaselineParams::new(10.0, seed)).unwrap();
            let out = p.solve(Termination::iterations(20_000));
            let sol = out.solution.expect("solved");
            assert!(sol.cost >= 2.0 && sol.cost <= 10.0);
            assert_eq!(sol.states[0], scn.start);
            assert_eq!(out.stats.improvements.len(), 1);
            assert_eq!(crate::validate::validate_path(&scn, &sol, 1.0), Ok(()));
        }
    }

    #[test]
    fn same_seed_same_path() {
        let scn = short_line();
        let run = || {
            SpaceTimeRrtConnect::new(&scn, BaselineParams::new(10.0, 4))
                .unwrap()
                .solve(Termination::iterations(20_000))
                .solution
        };
        assert_eq!(run(), run());
    }

    #[test]
    fn infeasible_bound_never_solves() {
        let scn = make_cluttered(1, 0, 0).unwrap();
        let mut p = SpaceTimeRrtConnect::new(&scn, BaselineParams::new(7.0, 3)).unwrap();
        assert!(p.solve(Termination::iterations(3000)).solution.is_none());
    }

    #[test]
    fn rejects_bound_before_start() {
        let scn = make_cluttered(1, 0, 0).unwrap();
        assert!(SpaceTimeRrtConnect::new(&scn, BaselineParams::new(0.0, 3)).is_err());
    }
}
