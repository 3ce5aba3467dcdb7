//! Progressive goal-region expansion and conditional sampling.
//!
//! Goal times are drawn from `[t_min, t_min * time_range)` where `t_min` is the
//! earliest possible arrival at the sampled goal configuration. Whenever a
//! batch of samples is complete and the problem has no time bound, the range
//! grows by `range_factor` and the next batch is split between the old region
//! and the freshly added one so that goal times stay spread over the whole
//! range. Non-goal samples are then drawn conditionally: a configuration
//! first, then a time between the earliest arrival from the start and the
//! latest departure that still reaches a stored goal.

use rand::Rng;

use super::params::{ExpansionParams, GoalTimeSampling};
use crate::goal::GoalRegion;
use crate::space::{SpaceTimeSpace, State, TravelBound};

#[derive(Debug, Clone, PartialEq)]
pub struct ExpansionState {
    pub time_range: f64,
    pub new_time_range: f64,
    pub batch_size: u64,
    pub samples_in_batch: u64,
    pub total_samples: u64,
    /// Probability of drawing from the old region.
    pub batch_probability: f64,
    pub goals: Vec<State>,
    pub new_goals: Vec<State>,
    pub expansions: u32,
}

impl ExpansionState {
    pub fn new(p: &ExpansionParams) -> Self {
        Self {
            time_range: p.range_factor,
            new_time_range: p.range_factor,
            batch_size: p.initial_batch_size,
            samples_in_batch: 0,
            total_samples: 0,
            batch_probability: 1.0,
            goals: Vec::new(),
            new_goals: Vec::new(),
            expansions: 0,
        }
    }

    /// Grows the goal-time range once the current batch is full. Nothing
    /// happens while the arrival time is bounded. Returns whether the range
    /// grew.
    pub fn update_goal_region(&mut self, p: &ExpansionParams, t_max: f64) -> bool {
        if t_max != f64::INFINITY || self.samples_in_batch < self.batch_size {
            return false;
        }
        self.time_range = self.new_time_range;
        self.new_time_range *= p.range_factor;
        self.batch_size = next_batch_size(p, self.total_samples);
        self.batch_probability = (1.0 - p.sample_ratio) / p.range_factor;
        self.merge_new_goals();
        self.samples_in_batch = 0;
        self.expansions += 1;
        true
    }

    pub fn record_sample(&mut self) {
        self.samples_in_batch += 1;
        self.total_samples += 1;
    }

    pub fn merge_new_goals(&mut self) {
        let new = std::mem::take(&mut self.new_goals);
        self.goals.extend(new);
    }

    pub fn insert_goal(&mut self, sample: GoalSample) {
        if sample.old_batch {
            self.goals.push(sample.state);
        } else {
            self.new_goals.push(sample.state);
        }
    }

    /// Forgets stored goals that can no longer beat an arrival time of `t_max`.
    pub fn discard_goals_from(&mut self, t_max: f64) {
        self.goals.retain(|g| g.t < t_max);
        self.new_goals.retain(|g| g.t < t_max);
    }

    pub fn goal_count(&self) -> usize {
        self.goals.len() + self.new_goals.len()
    }
}

/// `(range_factor - 1) * total / sample_ratio`, rounded up to an integer of at
/// least one. Values within round-off of an integer are not bumped.
pub fn next_batch_size(p: &ExpansionParams, total_samples: u64) -> u64 {
    let exact = (p.range_factor - 1.0) * total_samples as f64 / p.sample_ratio;
    let nearest = exact.round();
    let size = if (exact - nearest).abs() <= 1e-9 * nearest.max(1.0) {
        nearest
    } else {
        exact.ceil()
    };
    (size as u64).max(1)
}

#[derive(Debug, Clone, PartialEq)]
pub struct GoalSample {
    pub state: State,
    /// Drawn from the old region (goes to `goals`) rather than the new one.
    pub old_batch: bool,
}

/// Inputs of goal sampling that stay fixed during a run.
#[derive(Debug, Clone, Copy)]
pub struct GoalSampling<'a> {
    pub space: &'a SpaceTimeSpace,
    pub start: &'a State,
    pub goal: &'a GoalRegion,
    pub mode: GoalTimeSampling,
    /// Floor applied to `t_min` in the multiplicative bounds; zero reproduces
    /// the bare rule, under which a goal at the start configuration never
    /// receives a time.
    pub t_min_floor: f64,
}

impl GoalSampling<'_> {
    /// Draws a goal configuration and a time for it. `None` when the time
    /// interval is empty.
    pub fn propose<R: Rng + ?Sized>(
        &self,
        b: &ExpansionState,
        t_max: f64,
        rng: &mut R,
    ) -> Option<GoalSample> {
        let q = self.goal.sample_configuration(rng);
        let t_min = self.start.t + self.space.travel_time(&self.start.q, &q);
        let old_batch = rng.random::<f64>() <= b.batch_probability;
        let scaled = t_min.max(self.t_min_floor);
        let (lb, ub, old_batch) = if t_max != f64::INFINITY {
            (t_min, t_max, old_batch)
        } else {
            match self.mode {
                GoalTimeSampling::Naive => (t_min, scaled * b.new_time_range, true),
                GoalTimeSampling::Weighted if old_batch => (t_min, scaled * b.time_range, true),
                GoalTimeSampling::Weighted => {
                    (scaled * b.time_range, scaled * b.new_time_range, false)
                }
            }
        };
        if !(ub > lb) {
            return None;
        }
        let t = rng.random_range(lb..ub);
        Some(GoalSample {
            state: State::new(q, t),
            old_batch,
        })
    }

    /// Proposes a goal and stores it in `b` on success.
    pub fn sample<R: Rng + ?Sized>(
        &self,
        b: &mut ExpansionState,
        t_max: f64,
        rng: &mut R,
    ) -> Option<State> {
        let g = self.propose(b, t_max, rng)?;
        let state = g.state.clone();
        b.insert_goal(g);
        Some(state)
    }
}

/// Draws a state that is reachable from `start` and, for the conservative
/// travel bound, can still reach one of the stored goals. `None` after
/// `attempts` rejected configurations, or immediately when no goal is stored.
pub fn sample_conditionally<R: Rng + ?Sized>(
    space: &SpaceTimeSpace,
    start: &State,
    b: &ExpansionState,
    bound: TravelBound,
    attempts: usize,
    rng: &mut R,
) -> Option<State> {
    if b.goal_count() == 0 || (b.goals.is_empty() && b.batch_probability >= 1.0) {
        return None;
    }
    for _ in 0..attempts {
        let q = space.sample_configuration(rng);
        let t_min = start.t + space.travel_time(&start.q, &q);
        let (lb, ub) = if rng.random::<f64>() < b.batch_probability {
            (t_min, space.max_valid_time_unchecked(&q, &b.goals, bound))
        } else {
            let old = space.max_valid_time_unchecked(&q, &b.goals, bound);
            (
                t_min.max(old),
                space.max_valid_time_unchecked(&q, &b.new_goals, bound),
            )
        };
        if lb < ub {
            let t = rng.random_range(lb..ub);
            return Some(State::new(q, t));
        }
    }
    None
}
