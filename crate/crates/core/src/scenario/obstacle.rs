/// Piecewise-linear trajectory through timed waypoints. The obstacle holds its
/// first position before the first waypoint and its last one afterwards.
#[derive(Debug, Clone, PartialEq)]
pub struct ObstacleTrajectory {
    waypoints: Vec<(f64, Vec<f64>)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TrajectoryError {
    Empty,
    /// Waypoint `index` does not come strictly after its predecessor.
    NonIncreasingTime { index: usize },
    /// Waypoint `index` has the wrong number of coordinates.
    Dimension { index: usize },
    NonFinite { index: usize },
}

impl ObstacleTrajectory {
    pub fn new(waypoints: Vec<(f64, Vec<f64>)>, dim: usize) -> Result<Self, TrajectoryError> {
        if waypoints.is_empty() {
            return Err(TrajectoryError::Empty);
        }
        for (i, (t, p)) in waypoints.iter().enumerate() {
            if p.len() != dim {
                return Err(TrajectoryError::Dimension { index: i });
            }
            if !t.is_finite() || p.iter().any(|v| !v.is_finite()) {
                return Err(TrajectoryError::NonFinite { index: i });
            }
            if i > 0 && !(*t > waypoints[i - 1].0) {
                return Err(TrajectoryError::NonIncreasingTime { index: i });
            }
        }
        Ok(Self { waypoints })
    }

    /// Obstacle standing still at `position`.
    pub fn stationary(position: Vec<f64>) -> Self {
        Self {
            waypoints: vec![(0.0, position)],
        }
    }

    pub fn waypoints(&self) -> &[(f64, Vec<f64>)] {
        &self.waypoints
    }

    pub fn position_at(&self, t: f64) -> Vec<f64> {
        let mut out = Vec::new();
        self.position_into(t, &mut out);
        out
    }

    pub fn position_into(&self, t: f64, out: &mut Vec<f64>) {
        out.clear();
        let (s, a, b) = self.bracket(t);
        out.extend(a.iter().zip(b).map(|(x, y)| x + s * (y - x)));
    }

    /// Squared distance from `q` to the obstacle position at time `t`.
    #[inline]
    pub fn squared_distance_at(&self, q: &[f64], t: f64) -> f64 {
        let (s, a, b) = self.bracket(t);
        q.iter()
            .zip(a.iter().zip(b))
            .map(|(qi, (x, y))| {
                let d = qi - (x + s * (y - x));
                d * d
            })
            .sum()
    }

    #[inline]
    fn bracket(&self, t: f64) -> (f64, &[f64], &[f64]) {
        let w = &self.waypoints;
        let first = &w[0];
        if t <= first.0 || w.len() == 1 {
            return (0.0, &first.1, &first.1);
        }
        let last = &w[w.len() - 1];
        if t >= last.0 {
            return (0.0, &last.1, &last.1);
        }
        // first index with time > t; always in 1..len because of the clamps above
        let hi = w.partition_point(|(wt, _)| *wt <= t);
        let (t0, p0) = &w[hi - 1];
        let (t1, p1) = &w[hi];
        ((t - t0) / (t1 - t0), p0, p1)
    }
}

/// Sphere moving along a known trajectory. Its surface belongs to the
/// obstacle.
#[derive(Debug, Clone, PartialEq)]
pub struct DynamicSphereObstacle {
    pub radius: f64,
    pub trajectory: ObstacleTrajectory,
}

impl DynamicSphereObstacle {
    #[inline]
    pub fn collides(&self, q: &[f64], t: f64, robot_radius: f64) -> bool {
        let reach = self.radius + robot_radius;
        self.trajectory.squared_distance_at(q, t) <= reach * reach
    }
}

/// Axis-aligned box that is absent during its open windows. Windows are open
/// intervals, so the box is present at both window end points.
#[derive(Debug, Clone, PartialEq)]
pub struct TimedBoxObstacle {
    pub lo: Vec<f64>,
    pub hi: Vec<f64>,
    pub open_windows: Vec<(f64, f64)>,
}

impl TimedBoxObstacle {
    #[inline]
    pub fn is_active(&self, t: f64) -> bool {
        !self.open_windows.iter().any(|&(a, b)| t > a && t < b)
    }

    #[inline]
    pub fn squared_distance(&self, q: &[f64]) -> f64 {
        q.iter()
            .zip(self.lo.iter().zip(&self.hi))
            .map(|(&x, (&l, &h))| {
                let d = if x < l {
                    l - x
                } else if x > h {
                    x - h
                } else {
                    0.0
                };
                d * d
            })
            .sum()
    }

    #[inline]
    pub fn collides(&self, q: &[f64], t: f64, robot_radius: f64) -> bool {
        self.is_active(t) && self.squared_distance(q) <= robot_radius * robot_radius
    }
}
