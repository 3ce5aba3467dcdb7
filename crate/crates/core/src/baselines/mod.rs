//! Reference planners that need the arrival-time bound up front.
//!
//! Both search `Q x [t_start, t_bound]` with the same scenario, distance and
//! motion checks as [`crate::planner`]. They differ from it in not estimating
//! the bound themselves, which makes them sensitive to how it is chosen.

mod rrt_connect;
mod rrt_star;

pub use rrt_connect::SpaceTimeRrtConnect;
pub use rrt_star::SpaceTimeRrtStar;

use rand::Rng;

use crate::error::{CoreError, Result};
use crate::planner::params::check_refinement_valid;
use crate::planner::{Neighborhood, DEFAULT_CHECK_REFINEMENT};
use crate::scenario::Scenario;
use crate::space::State;

#[derive(Debug, Clone, PartialEq)]
pub struct BaselineParams {
    /// Latest arrival time searched; must exceed the start time.
    pub t_bound: f64,
    /// `None` uses the default of the ST-RRT* planner.
    pub steer_range: Option<f64>,
    pub p_goal: f64,
    /// Rewiring neighbourhood (RRT* only).
    pub neighborhood: Neighborhood,
    /// As [`crate::planner::PlannerParams::check_refinement`].
    pub check_refinement: f64,
    pub seed: u64,
}

impl BaselineParams {
    pub fn new(t_bound: f64, seed: u64) -> Self {
        Self {
            t_bound,
            steer_range: None,
            p_goal: 0.05,
            neighborhood: Neighborhood::Auto,
            check_refinement: DEFAULT_CHECK_REFINEMENT,
            seed,
        }
    }

    pub(crate) fn validate(&self, scn: &Scenario) -> Result<()> {
        if !(self.t_bound > scn.start.t && self.t_bound.is_finite()) {
            return Err(CoreError::InvalidParameter {
                name: "t_bound",
                reason: format!(
                    "must be finite and later than the start time (got {})",
                    self.t_bound
                ),
            });
        }
        if !(self.p_goal > 0.0 && self.p_goal <= 1.0) {
            return Err(CoreError::InvalidParameter {
                name: "p_goal",
                reason: format!("must lie in (0, 1] (got {})", self.p_goal),
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
        check_refinement_valid(self.check_refinement)?;
        scn.validate()?;
        if !scn.is_state_valid(&scn.start) {
            return Err(CoreError::InvalidStart);
        }
        Ok(())
    }

    pub(crate) fn resolution(&self, scn: &Scenario) -> f64 {
        scn.check_resolution / self.check_refinement
    }

    /// Last time a path may arrive, combining the bound with the goal's own.
    pub(crate) fn horizon(&self, scn: &Scenario) -> f64 {
        self.t_bound.min(scn.goal.time_bound())
    }
}

/// Uniform state in `Q x [t_lo, t_hi]`.
pub(crate) fn sample_box<R: Rng + ?Sized>(scn: &Scenario, t_lo: f64, t_hi: f64, rng: &mut R) -> State {
    let q = scn.space.sample_configuration(rng);
    State::new(q, rng.random_range(t_lo..=t_hi))
}
