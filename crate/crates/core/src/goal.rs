use rand::Rng;

use crate::error::{check_dim, CoreError, Result};
use crate::space::SpaceTimeSpace;

/// Configurations accepted as goals.
#[derive(Debug, Clone, PartialEq)]
pub enum GoalConfigs {
    /// A finite, non-empty set of goal configurations.
    Set(Vec<Vec<f64>>),
    /// Axis-aligned box, sampled uniformly.
    Box { lo: Vec<f64>, hi: Vec<f64> },
}

/// Goal region: goal configurations and an optional arrival deadline.
#[derive(Debug, Clone, PartialEq)]
pub struct GoalRegion {
    pub configs: GoalConfigs,
    /// `None` means arrival time is unbounded.
    pub t_max: Option<f64>,
}

const SET_MATCH_TOL: f64 = 1e-9;

impl GoalRegion {
    pub fn single(q: Vec<f64>) -> Self {
        Self {
            configs: GoalConfigs::Set(vec![q]),
            t_max: None,
        }
    }

    pub fn validate(&self, space: &SpaceTimeSpace) -> Result<()> {
        if let Some(t) = self.t_max {
            if !(t > 0.0) {
                return Err(CoreError::InvalidGoal(format!(
                    "t_max must be positive (got {t})"
                )));
            }
        }
        match &self.configs {
            GoalConfigs::Set(qs) => {
                if qs.is_empty() {
                    return Err(CoreError::InvalidGoal("goal set is empty".into()));
                }
                for (i, q) in qs.iter().enumerate() {
                    check_dim(space.dim(), q.len())?;
                    if !space.contains(q) {
                        return Err(CoreError::InvalidGoal(format!(
                            "goal configuration {i} lies outside the space bounds"
                        )));
                    }
                }
            }
            GoalConfigs::Box { lo, hi } => {
                check_dim(space.dim(), lo.len())?;
                check_dim(space.dim(), hi.len())?;
                if lo.iter().zip(hi).any(|(l, h)| !(l <= h)) {
                    return Err(CoreError::InvalidGoal("goal box must have lo <= hi".into()));
                }
                if !space.contains(lo) || !space.contains(hi) {
                    return Err(CoreError::InvalidGoal(
                        "goal box lies outside the space bounds".into(),
                    ));
                }
            }
        }
        Ok(())
    }

    /// Effective time bound: `+inf` when unbounded.
    pub fn time_bound(&self) -> f64 {
        self.t_max.unwrap_or(f64::INFINITY)
    }

    pub fn sample_configuration<R: Rng + ?Sized>(&self, rng: &mut R) -> Vec<f64> {
        match &self.configs {
            GoalConfigs::Set(qs) => {
                if qs.len() == 1 {
                    qs[0].clone()
                } else {
                    qs[rng.random_range(0..qs.len())].clone()
                }
            }
            GoalConfigs::Box { lo, hi } => lo
                .iter()
                .zip(hi)
                .map(|(&l, &h)| if l < h { rng.random_range(l..h) } else { l })
                .collect(),
        }
    }

    pub fn contains_configuration(&self, q: &[f64]) -> bool {
        match &self.configs {
            GoalConfigs::Set(qs) => qs.iter().any(|g| {
                g.iter()
                    .zip(q)
                    .all(|(a, b)| (a - b).abs() <= SET_MATCH_TOL * a.abs().max(1.0))
            }),
            GoalConfigs::Box { lo, hi } => q
                .iter()
                .zip(lo.iter().zip(hi))
                .all(|(&x, (&l, &h))| x >= l && x <= h),
        }
    }

    /// Shortest full-speed travel time from `q` to any goal configuration.
    pub fn travel_time_from(&self, space: &SpaceTimeSpace, q: &[f64]) -> f64 {
        match &self.configs {
            GoalConfigs::Set(qs) => qs
                .iter()
                .map(|g| space.travel_time(q, g))
                .fold(f64::INFINITY, f64::min),
            GoalConfigs::Box { lo, hi } => q
                .iter()
                .zip(lo.iter().zip(hi))
                .zip(space.vmax())
                .map(|((&x, (&l, &h)), v)| {
                    let gap = if x < l {
                        l - x
                    } else if x > h {
                        x - h
                    } else {
                        0.0
                    };
                    gap / v
                })
                .fold(0.0, f64::max),
        }
    }
}
