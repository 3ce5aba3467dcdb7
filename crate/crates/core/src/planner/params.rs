use crate::error::{CoreError, Result};
use crate::space::{SpaceTimeSpace, TravelBound};

/// Controls the progressive enlargement of the sampled goal-time range.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExpansionParams {
    /// Factor applied to the goal-time range at every expansion. Must exceed 1.
    pub range_factor: f64,
    /// Samples in the first batch.
    pub initial_batch_size: u64,
    /// Share of a new batch reserved for the old region, in `(0, 1)`.
    pub sample_ratio: f64,
}

impl Default for ExpansionParams {
    fn default() -> Self {
        Self {
            range_factor: 2.0,
            initial_batch_size: 512,
            sample_ratio: 0.5,
        }
    }
}

impl ExpansionParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.range_factor > 1.0 && self.range_factor.is_finite()) {
            return Err(CoreError::InvalidParameter {
                name: "range_factor",
                reason: format!("must be finite and > 1 (got {})", self.range_factor),
            });
        }
        if self.initial_batch_size == 0 {
            return Err(CoreError::InvalidParameter {
                name: "initial_batch_size",
                reason: "must be positive".into(),
            });
        }
        if !(self.sample_ratio > 0.0 && self.sample_ratio < 1.0) {
            return Err(CoreError::InvalidParameter {
                name: "sample_ratio",
                reason: format!("must lie in (0, 1) (got {})", self.sample_ratio),
            });
        }
        Ok(())
    }
}

/// Which goal nodes are considered for rewiring around a new node.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Neighborhood {
    /// `k = ceil(e * (1 + 1/d) * ln n)` nearest nodes, `d` the space-time
    /// dimension and `n` the forest size.
    Auto,
    KNearest(usize),
    /// Every node within this distance.
    Radius(f64),
}

/// How goal times are spread when the time range grows.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum GoalTimeSampling {
    /// Old and new region sampled with the batch probability.
    #[default]
    Weighted,
    /// Whole current range sampled uniformly; over-samples early times.
    Naive,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PlannerParams {
    /// Probability of sampling a new goal state per iteration, in `(0, 1]`.
    pub p_goal: f64,
    /// Initial arrival-time bound, `+inf` for unbounded.
    pub t_max: f64,
    /// Longest single extension, in distance units. `None` picks 10% of the
    /// distance of the fastest traversal of the space diagonal.
    pub steer_range: Option<f64>,
    pub neighborhood: Neighborhood,
    pub expansion: ExpansionParams,
    pub travel_bound: TravelBound,
    pub goal_time_sampling: GoalTimeSampling,
    /// Rejection-loop attempts per conditional sample.
    pub sampler_attempts: usize,
    /// Motions are checked at the scenario resolution divided by this factor.
    pub check_refinement: f64,
    pub seed: u64,
}

impl Default for PlannerParams {
    fn default() -> Self {
        Self {
            p_goal: 0.05,
            t_max: f64::INFINITY,
            steer_range: None,
            neighborhood: Neighborhood::Auto,
            expansion: ExpansionParams::default(),
            travel_bound: TravelBound::Conservative,
            goal_time_sampling: GoalTimeSampling::Weighted,
            sampler_attempts: 10_000,
            check_refinement: DEFAULT_CHECK_REFINEMENT,
            seed: 0,
        }
    }
}

impl PlannerParams {
    pub fn with_seed(seed: u64) -> Self {
        Self {
            seed,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.p_goal > 0.0 && self.p_goal <= 1.0) {
            return Err(CoreError::InvalidParameter {
                name: "p_goal",
                reason: format!("must lie in (0, 1] (got {})", self.p_goal),
            });
        }
        if !(self.t_max > 0.0) {
            return Err(CoreError::InvalidParameter {
                name: "t_max",
                reason: format!("must be positive (got {})", self.t_max),
            });
        }
        if let Some(r) = self.steer_range {
            if !(r > 0.0 && r.is_finite()) {
                return Err(CoreError::InvalidParameter {
                    name: "steer_range",
                    reason: format!("must be positive (got {r})"),
                });
            }
        }
        match self.neighborhood {
            Neighborhood::KNearest(0) => {
                return Err(CoreError::InvalidParameter {
                    name: "neighborhood",
                    reason: "k must be positive".into(),
                })
            }
            Neighborhood::Radius(r) if !(r > 0.0) => {
                return Err(CoreError::InvalidParameter {
                    name: "neighborhood",
                    reason: "radius must be positive".into(),
                })
            }
            _ => {}
        }
        if self.sampler_attempts == 0 {
            return Err(CoreError::InvalidParameter {
                name: "sampler_attempts",
                reason: "must be positive".into(),
            });
        }
        check_refinement_valid(self.check_refinement)?;
        self.expansion.validate()
    }

    pub fn resolved_steer_range(&self, space: &SpaceTimeSpace) -> f64 {
        self.steer_range
            .unwrap_or_else(|| default_steer_range(space))
    }
}

/// Planners check motions this much finer than the scenario resolution, so
/// that their paths survive re-checking at a tenth of it.
pub const DEFAULT_CHECK_REFINEMENT: f64 = 10.0;

pub(crate) fn check_refinement_valid(r: f64) -> Result<()> {
    if r >= 1.0 && r.is_finite() {
        Ok(())
    } else {
        Err(CoreError::InvalidParameter {
            name: "check_refinement",
            reason: format!("must be finite and >= 1 (got {r})"),
        })
    }
}

pub fn default_steer_range(space: &SpaceTimeSpace) -> f64 {
    0.1 * space.diagonal_distance()
}

/// Neighbourhood size of the k-nearest RRT* schedule.
pub fn rrt_star_k(nodes: usize, state_dim: usize) -> usize {
    if nodes <= 1 {
        return 1;
    }
    let d = state_dim as f64;
    (std::f64::consts::E * (1.0 + 1.0 / d) * (nodes as f64).ln()).ceil() as usize
}
