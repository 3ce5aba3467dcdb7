//! Re-checks solution paths independently of the planner that produced them.

use thiserror::Error;

use crate::scenario::Scenario;
use crate::solution::SolutionPath;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PathError {
    #[error("path is empty")]
    Empty,
    #[error("path does not begin at the start state")]
    WrongStart,
    #[error("path ends outside the goal region")]
    MissesGoal,
    #[error("path arrives at {arrival} after the goal deadline {deadline}")]
    TooLate { arrival: f64, deadline: f64 },
    #[error("segment {index} violates time direction or velocity limits")]
    Infeasible { index: usize },
    #[error("segment {index} collides")]
    Collision { index: usize },
    #[error("reported cost {reported} differs from arrival time {arrival}")]
    CostMismatch { reported: f64, arrival: f64 },
}

/// Checks `path` against `scn`, testing motions at `1 / refine` of the
/// scenario's check resolution.
pub fn validate_path(scn: &Scenario, path: &SolutionPath, refine: f64) -> Result<(), PathError> {
    let first = path.states.first().ok_or(PathError::Empty)?;
    let last = path.states.last().ok_or(PathError::Empty)?;
    if first != &scn.start {
        return Err(PathError::WrongStart);
    }
    if !scn.goal.contains_configuration(&last.q) {
        return Err(PathError::MissesGoal);
    }
    let deadline = scn.goal.time_bound();
    if last.t > deadline {
        return Err(PathError::TooLate {
            arrival: last.t,
            deadline,
        });
    }
    if path.cost != last.t {
        return Err(PathError::CostMismatch {
            reported: path.cost,
            arrival: last.t,
        });
    }
    let resolution = scn.check_resolution / refine.max(1.0);
    for (index, w) in path.states.windows(2).enumerate() {
        let (a, b) = (&w[0], &w[1]);
        if !scn.space.dist(&a.q, a.t, &b.q, b.t).is_finite() {
            return Err(PathError::Infeasible { index });
        }
        if !scn.motion_valid_at_resolution(&a.q, a.t, &b.q, b.t, resolution) {
            return Err(PathError::Collision { index });
        }
    }
    if path.states.len() == 1 && !scn.is_state_valid(first) {
        return Err(PathError::Collision { index: 0 });
    }
    Ok(())
}
