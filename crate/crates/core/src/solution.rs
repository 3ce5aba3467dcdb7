use std::time::{Duration, Instant};

use crate::space::State;

/// Path from the start state to a goal state. `cost` is the arrival time.
#[derive(Debug, Clone, PartialEq)]
pub struct SolutionPath {
    pub states: Vec<State>,
    pub cost: f64,
}

impl SolutionPath {
    pub fn new(states: Vec<State>) -> Self {
        let cost = states.last().map_or(f64::INFINITY, |s| s.t);
        Self { states, cost }
    }
}

/// One accepted solution improvement.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Improvement {
    pub iteration: u64,
    pub seconds: f64,
    pub cost: f64,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct RunStats {
    pub iterations: u64,
    /// Successful tree extensions.
    pub samples: u64,
    /// Live nodes at the end of the run.
    pub nodes: usize,
    pub nodes_created: u64,
    pub pruned: u64,
    pub rewires: u64,
    /// Iterations in which the sampler found no feasible region.
    pub starved: u64,
    pub improvements: Vec<Improvement>,
    pub elapsed_seconds: f64,
}

impl RunStats {
    pub fn first_solution(&self) -> Option<&Improvement> {
        self.improvements.first()
    }

    pub fn best_cost(&self) -> f64 {
        self.improvements.last().map_or(f64::INFINITY, |i| i.cost)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PlanOutcome {
    pub solution: Option<SolutionPath>,
    pub stats: RunStats,
}

/// Planner termination condition. The run ends as soon as any configured
/// limit is reached.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct Termination {
    pub time_budget: Option<Duration>,
    pub max_iterations: Option<u64>,
    pub stop_at_first_solution: bool,
}

impl Termination {
    pub fn seconds(s: f64) -> Self {
        Self {
            time_budget: Some(Duration::from_secs_f64(s)),
            ..Self::default()
        }
    }

    pub fn iterations(n: u64) -> Self {
        Self {
            max_iterations: Some(n),
            ..Self::default()
        }
    }

    /// True when at least one limit other than "first solution" is set, so
    /// that an infeasible problem cannot run forever.
    pub fn is_bounded(&self) -> bool {
        self.time_budget.is_some() || self.max_iterations.is_some()
    }

    pub fn first_solution(mut self) -> Self {
        self.stop_at_first_solution = true;
        self
    }
}

/// Clock and termination check shared by the planners.
#[derive(Debug)]
pub(crate) struct RunClock {
    started: Instant,
    term: Termination,
}

impl RunClock {
    pub fn start(term: Termination) -> Self {
        Self {
            started: Instant::now(),
            term,
        }
    }

    pub fn elapsed(&self) -> f64 {
        self.started.elapsed().as_secs_f64()
    }

    pub fn expired(&self, iterations: u64, solved: bool) -> bool {
        if solved && self.term.stop_at_first_solution {
            return true;
        }
        if self.term.max_iterations.is_some_and(|n| iterations >= n) {
            return true;
        }
        self.term
            .time_budget
            .is_some_and(|budget| self.started.elapsed() >= budget)
    }
}

/// Common interface of all planners in this crate.
pub trait Planner {
    fn solve(&mut self, term: Termination) -> PlanOutcome;
}
