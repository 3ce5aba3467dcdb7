//! Scenario generators for the benchmark problems.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::obstacle::{DynamicSphereObstacle, ObstacleTrajectory, TimedBoxObstacle};
use super::Scenario;
use crate::error::{CoreError, Result};
use crate::goal::GoalRegion;
use crate::space::{euclidean, SpaceTimeSpace, State, DEFAULT_LAMBDA};

const SIDE: f64 = 10.0;
const CHECK_RESOLUTION: f64 = 0.05;

/// Wall crossing dimension 0 is passable during these (open) intervals.
pub const DEFAULT_NARROW_WINDOWS: [(f64, f64); 3] = [(4.0, 5.0), (8.0, 9.0), (12.0, 13.0)];

/// Narrow passage in time: a wall `5.25 <= q[0] <= 5.75` spanning every other
/// dimension separates start `q[0] = 0.5` from goal `q[0] = 9.5`, and is absent
/// only during `windows`. With unit velocity limits the first default window
/// closes before the wall can be crossed, so the second one is used.
#[derive(Debug, Clone)]
pub struct NarrowPassageOptions {
    pub dim: usize,
    pub windows: Vec<(f64, f64)>,
}

pub fn make_narrow_passage(dim: usize, windows: &[(f64, f64)]) -> Result<Scenario> {
    if dim == 0 {
        return Err(CoreError::InvalidParameter {
            name: "dim",
            reason: "must be at least 1".into(),
        });
    }
    let space = SpaceTimeSpace::uniform(dim, 0.0, SIDE, 1.0, DEFAULT_LAMBDA)?;
    let mut start = vec![0.5 * SIDE; dim];
    start[0] = 0.5;
    let mut goal = vec![0.5 * SIDE; dim];
    goal[0] = SIDE - 0.5;
    let mut lo = vec![0.0; dim];
    let mut hi = vec![SIDE; dim];
    lo[0] = 5.25;
    hi[0] = 5.75;
    let scn = Scenario {
        space,
        start: State::new(start, 0.0),
        goal: GoalRegion::single(goal),
        robot_radius: 0.0,
        sphere_obstacles: vec![],
        box_obstacles: vec![TimedBoxObstacle {
            lo,
            hi,
            open_windows: windows.to_vec(),
        }],
        check_resolution: CHECK_RESOLUTION,
    };
    scn.validate()?;
    Ok(scn)
}

/// Cluttered space: a hypersphere robot crosses `[0, 10]^dim` from all-ones to
/// all-nines between spheres that move in straight lines during `[0, 10]` and
/// then stand still.
#[derive(Debug, Clone)]
pub struct ClutteredOptions {
    pub dim: usize,
    pub obstacles: usize,
    pub seed: u64,
}

const ROBOT_RADIUS: f64 = 0.2;
const OBSTACLE_RADIUS: (f64, f64) = (0.4, 0.9);
const OBSTACLE_MOTION_END: f64 = 10.0;
const CLEARANCE: f64 = 0.3;

pub fn make_cluttered(dim: usize, obstacles: usize, seed: u64) -> Result<Scenario> {
    if dim == 0 {
        return Err(CoreError::InvalidParameter {
            name: "dim",
            reason: "must be at least 1".into(),
        });
    }
    let space = SpaceTimeSpace::uniform(dim, 0.0, SIDE, 1.0, DEFAULT_LAMBDA)?;
    let start = vec![1.0; dim];
    let goal = vec![SIDE - 1.0; dim];
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut spheres = Vec::with_capacity(obstacles);
    while spheres.len() < obstacles {
        let radius = rng.random_range(OBSTACLE_RADIUS.0..OBSTACLE_RADIUS.1);
        let from = space.sample_configuration(&mut rng);
        let to = space.sample_configuration(&mut rng);
        let keep_out = radius + ROBOT_RADIUS + CLEARANCE;
        // start must be free at t = 0 and the goal once everything has stopped
        if euclidean(&from, &start) <= keep_out || euclidean(&to, &goal) <= keep_out {
            continue;
        }
        let trajectory =
            ObstacleTrajectory::new(vec![(0.0, from), (OBSTACLE_MOTION_END, to)], dim)
                .expect("increasing waypoint times");
        spheres.push(DynamicSphereObstacle { radius, trajectory });
    }
    let scn = Scenario {
        space,
        start: State::new(start, 0.0),
        goal: GoalRegion::single(goal),
        robot_radius: ROBOT_RADIUS,
        sphere_obstacles: spheres,
        box_obstacles: vec![],
        check_resolution: CHECK_RESOLUTION,
    };
    scn.validate()?;
    Ok(scn)
}

impl NarrowPassageOptions {
    pub fn build(&self) -> Result<Scenario> {
        make_narrow_passage(self.dim, &self.windows)
    }
}

impl ClutteredOptions {
    pub fn build(&self) -> Result<Scenario> {
        make_cluttered(self.dim, self.obstacles, self.seed)
    }
}
