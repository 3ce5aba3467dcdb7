//! World model: moving spheres on known trajectories, boxes that disappear
//! during time windows, and validity checks for states and motions.

mod generate;
mod io;
mod obstacle;

pub use generate::{
    make_cluttered, make_narrow_passage, ClutteredOptions, NarrowPassageOptions,
    DEFAULT_NARROW_WINDOWS,
};
pub use io::{load_scenario, load_scenario_file, save_scenario, ScenarioError};
pub use obstacle::{DynamicSphereObstacle, ObstacleTrajectory, TimedBoxObstacle, TrajectoryError};

use crate::error::{CoreError, Result};
use crate::goal::GoalRegion;
use crate::space::{lerp, SpaceTimeSpace, State};

#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    pub space: SpaceTimeSpace,
    pub start: State,
    pub goal: GoalRegion,
    pub robot_radius: f64,
    pub sphere_obstacles: Vec<DynamicSphereObstacle>,
    pub box_obstacles: Vec<TimedBoxObstacle>,
    /// Largest space-time distance between two consecutive collision checks
    /// along a motion.
    pub check_resolution: f64,
}

impl Scenario {
    /// Structural checks plus validity of the start state.
    pub fn validate(&self) -> Result<()> {
        self.space.check_state(&self.start)?;
        self.goal.validate(&self.space)?;
        if !(self.robot_radius >= 0.0 && self.robot_radius.is_finite()) {
            return Err(CoreError::InvalidParameter {
                name: "robot_radius",
                reason: "must be finite and non-negative".into(),
            });
        }
        if !(self.check_resolution > 0.0 && self.check_resolution.is_finite()) {
            return Err(CoreError::InvalidParameter {
                name: "check_resolution",
                reason: "must be positive".into(),
            });
        }
        if !self.is_state_valid(&self.start) {
            return Err(CoreError::InvalidStart);
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn is_state_valid(&self, x: &State) -> bool {
        self.is_valid_at(&x.q, x.t)
    }

    #[inline]
    pub fn is_valid_at(&self, q: &[f64], t: f64) -> bool {
        if !self.space.contains(q) {
            return false;
        }
        let rr = self.robot_radius;
        !self.sphere_obstacles.iter().any(|s| s.collides(q, t, rr))
            && !self.box_obstacles.iter().any(|b| b.collides(q, t, rr))
    }

    pub fn is_motion_valid(&self, a: &State, b: &State) -> bool {
        self.is_motion_valid_raw(&a.q, a.t, &b.q, b.t)
    }

    pub fn is_motion_valid_raw(&self, qa: &[f64], ta: f64, qb: &[f64], tb: f64) -> bool {
        self.motion_valid_at_resolution(qa, ta, qb, tb, self.check_resolution)
    }

    /// Motion check at an explicit resolution. Samples the straight segment at
    /// parameters `k / n`, `n = ceil(d / resolution)`, end points included.
    pub fn motion_valid_at_resolution(
        &self,
        qa: &[f64],
        ta: f64,
        qb: &[f64],
        tb: f64,
        resolution: f64,
    ) -> bool {
        let d = self.space.dist(qa, ta, qb, tb);
        if !d.is_finite() {
            return false;
        }
        if !self.is_valid_at(qb, tb) || !self.is_valid_at(qa, ta) {
            return false;
        }
        let n = (d / resolution).ceil().max(1.0) as usize;
        let mut q = vec![0.0; qa.len()];
        for k in 1..n {
            let s = k as f64 / n as f64;
            for (i, v) in q.iter_mut().enumerate() {
                *v = lerp(qa[i], qb[i], s);
            }
            if !self.is_valid_at(&q, lerp(ta, tb, s)) {
                return false;
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::goal::GoalRegion;

    fn open_line() -> Scenario {
        Scenario {
            space: SpaceTimeSpace::uniform(1, 0.0, 10.0, 1.0, 0.5).unwrap(),
            start: State::new(vec![0.0], 0.0),
            goal: GoalRegion::single(vec![10.0]),
            robot_radius: 0.0,
            sphere_obstacles: vec![],
            box_obstacles: vec![],
            check_resolution: 0.05,
        }
    }

    #[test]
    fn narrow_passage_wall_blocks_outside_windows() {
        let scn = make_narrow_passage(1, &DEFAULT_NARROW_WINDOWS).unwrap();
        let wall = &scn.box_obstacles[0];
        let mid = 0.5 * (wall.lo[0] + wall.hi[0]);
        let (a, b) = DEFAULT_NARROW_WINDOWS[0];
        assert!(!scn.is_state_valid(&State::new(vec![mid], a - 0.5)));
        assert!(scn.is_state_valid(&State::new(vec![mid], 0.5 * (a + b))));
    }

    #[test]
    fn motion_backwards_in_time_is_invalid() {
        let scn = open_line();
        let a = State::new(vec![1.0], 2.0);
        let b = State::new(vec![1.5], 1.0);
        assert!(!scn.is_motion_valid(&a, &b));
        assert!(scn.is_motion_valid(&b, &a));
    }

    #[test]
    fn motion_through_crossing_sphere_is_invalid() {
        let mut scn = open_line();
        scn.space = SpaceTimeSpace::uniform(2, 0.0, 10.0, 1.0, 0.5).unwrap();
        scn.start = State::new(vec![0.0, 5.0], 0.0);
        scn.goal = GoalRegion::single(vec![10.0, 5.0]);
        // crosses y = 5 at x = 5 exactly at t = 5
        scn.sphere_obstacles.push(DynamicSphereObstacle {
            radius: 0.3,
            trajectory: ObstacleTrajectory::new(
                vec![(0.0, vec![5.0, 0.0]), (10.0, vec![5.0, 10.0])],
                2,
            )
            .unwrap(),
        });
        let a = State::new(vec![2.0, 5.0], 2.0);
        let b = State::new(vec![8.0, 5.0], 8.0);
        assert!(!scn.is_motion_valid(&a, &b));
        // leaving two time units earlier passes x = 5 while the sphere is still at y = 3
        let a2 = State::new(vec![2.0, 5.0], 0.0);
        let b2 = State::new(vec![8.0, 5.0], 6.0);
        assert!(!scn.motion_valid_at_resolution(&a.q, a.t, &b.q, b.t, 0.0005));
        assert!(scn.is_motion_valid(&a2, &b2));
        assert!(scn.motion_valid_at_resolution(&a2.q, a2.t, &b2.q, b2.t, 0.0005));
    }

    #[test]
    fn free_motion_inside_cone_is_valid() {
        let scn = open_line();
        assert!(scn.is_motion_valid(&State::new(vec![0.0], 0.0), &State::new(vec![3.0], 4.0)));
    }

    #[test]
    fn motion_is_invalid_when_an_end_point_is_invalid() {
        let mut scn = open_line();
        scn.box_obstacles.push(TimedBoxObstacle {
            lo: vec![3.0],
            hi: vec![3.5],
            open_windows: vec![],
        });
        assert!(!scn.is_motion_valid(&State::new(vec![0.0], 0.0), &State::new(vec![3.2], 5.0)));
    }

    #[test]
    fn validate_rejects_colliding_start() {
        let mut scn = open_line();
        scn.box_obstacles.push(TimedBoxObstacle {
            lo: vec![0.0],
            hi: vec![0.5],
            open_windows: vec![],
        });
        assert_eq!(scn.validate(), Err(CoreError::InvalidStart));
    }
}
