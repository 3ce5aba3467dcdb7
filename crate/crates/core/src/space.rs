//! Space-time states and the asymmetric distance between them.
//!
//! A state pairs a configuration `q` with a time `t`. Moving from `a` to `b`
//! is possible only forward in time and only if no configuration component
//! has to change faster than its velocity limit. The distance is
//!
//! ```text
//! d(a, b) = lambda * |q_b - q_a| + (1 - lambda) * (t_b - t_a)   if feasible
//!         = +inf                                                 otherwise
//! ```
//!
//! which makes it a pseudometric: `d(a, b)` finite implies `d(b, a)` infinite
//! unless `a == b`.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{check_dim, CoreError, Result};

/// Relative slack on velocity checks so that motions sitting exactly on the
/// cone boundary survive floating-point round-off.
const VELOCITY_REL_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct State {
    pub q: Vec<f64>,
    pub t: f64,
}

impl State {
    pub fn new(q: Vec<f64>, t: f64) -> Self {
        Self { q, t }
    }

    pub fn dim(&self) -> usize {
        self.q.len()
    }
}

/// How the travel time from a configuration to a goal configuration is bounded
/// when computing the latest time a goal can still be reached.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TravelBound {
    /// Slowest dimension: `max_i |dq_i| / vmax_i`. Every state at or below the
    /// resulting time can reach the goal.
    #[default]
    Conservative,
    /// Fastest dimension: `min_i |dq_i| / vmax_i`. Over-estimates the valid
    /// time in more than one dimension.
    MinAxis,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpaceTimeSpace {
    lower: Vec<f64>,
    upper: Vec<f64>,
    vmax: Vec<f64>,
    lambda: f64,
}

pub const DEFAULT_LAMBDA: f64 = 0.5;

impl SpaceTimeSpace {
    pub fn new(lower: Vec<f64>, upper: Vec<f64>, vmax: Vec<f64>, lambda: f64) -> Result<Self> {
        let dim = lower.len();
        if dim == 0 {
            return Err(CoreError::InvalidSpace("dimension must be positive".into()));
        }
        check_dim(dim, upper.len())?;
        check_dim(dim, vmax.len())?;
        for i in 0..dim {
            if !(lower[i].is_finite() && upper[i].is_finite() && lower[i] < upper[i]) {
                return Err(CoreError::InvalidSpace(format!(
                    "bounds of dimension {i} must satisfy lower < upper (got {} and {})",
                    lower[i], upper[i]
                )));
            }
            if !(vmax[i].is_finite() && vmax[i] > 0.0) {
                return Err(CoreError::InvalidSpace(format!(
                    "vmax[{i}] must be positive and finite (got {})",
                    vmax[i]
                )));
            }
        }
        if !(lambda > 0.0 && lambda < 1.0) {
            return Err(CoreError::InvalidSpace(format!(
                "lambda must lie in (0, 1) (got {lambda})"
            )));
        }
        Ok(Self {
            lower,
            upper,
            vmax,
            lambda,
        })
    }

    /// Unit box `[lo, hi]^dim` with the same velocity limit on every axis.
    pub fn uniform(dim: usize, lo: f64, hi: f64, vmax: f64, lambda: f64) -> Result<Self> {
        Self::new(vec![lo; dim], vec![hi; dim], vec![vmax; dim], lambda)
    }

    pub fn dim(&self) -> usize {
        self.lower.len()
    }

    pub fn lower(&self) -> &[f64] {
        &self.lower
    }

    pub fn upper(&self) -> &[f64] {
        &self.upper
    }

    pub fn vmax(&self) -> &[f64] {
        &self.vmax
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn contains(&self, q: &[f64]) -> bool {
        q.iter()
            .zip(self.lower.iter().zip(&self.upper))
            .all(|(&x, (&lo, &hi))| x >= lo && x <= hi)
    }

    /// Checks that `x` is a well-formed state of this space: matching
    /// dimension, finite configuration and finite non-negative time.
    pub fn check_state(&self, x: &State) -> Result<()> {
        check_dim(self.dim(), x.q.len())?;
        if !x.t.is_finite() || x.t < 0.0 || x.q.iter().any(|v| !v.is_finite()) {
            return Err(CoreError::InvalidSpace(format!(
                "state must be finite with t >= 0 (got t = {})",
                x.t
            )));
        }
        Ok(())
    }

    pub fn distance(&self, a: &State, b: &State) -> Result<f64> {
        check_dim(self.dim(), a.q.len())?;
        check_dim(self.dim(), b.q.len())?;
        Ok(self.dist(&a.q, a.t, &b.q, b.t))
    }

    /// Unchecked distance on raw coordinates, used in the planners' hot loops.
    #[inline]
    pub fn dist(&self, qa: &[f64], ta: f64, qb: &[f64], tb: f64) -> f64 {
        let dt = tb - ta;
        if dt <= 0.0 {
            return if dt == 0.0 && qa == qb { 0.0 } else { f64::INFINITY };
        }
        let slack = time_slack(ta, tb);
        let mut sq = 0.0;
        for i in 0..qa.len() {
            let dq = qb[i] - qa[i];
            let reach = self.vmax[i] * (dt * (1.0 + VELOCITY_REL_TOL) + slack);
            if dq.abs() > reach {
                return f64::INFINITY;
            }
            sq += dq * dq;
        }
        self.lambda * sq.sqrt() + (1.0 - self.lambda) * dt
    }

    /// Symmetrised distance that ignores time direction and velocity limits.
    /// Only suitable for nearest-neighbour queries.
    #[inline]
    pub fn symmetric_dist(&self, qa: &[f64], ta: f64, qb: &[f64], tb: f64) -> f64 {
        self.lambda * euclidean(qa, qb) + (1.0 - self.lambda) * (tb - ta).abs()
    }

    /// Shortest time to move between two configurations at full speed.
    #[inline]
    pub fn travel_time(&self, from: &[f64], to: &[f64]) -> f64 {
        from.iter()
            .zip(to)
            .zip(&self.vmax)
            .map(|((a, b), v)| (b - a).abs() / v)
            .fold(0.0, f64::max)
    }

    pub fn lower_bound_arrival_time(&self, from: &[f64], to: &[f64]) -> Result<f64> {
        check_dim(self.dim(), from.len())?;
        check_dim(self.dim(), to.len())?;
        Ok(self.travel_time(from, to))
    }

    #[inline]
    fn travel_bound(&self, from: &[f64], to: &[f64], bound: TravelBound) -> f64 {
        match bound {
            TravelBound::Conservative => self.travel_time(from, to),
            TravelBound::MinAxis => from
                .iter()
                .zip(to)
                .zip(&self.vmax)
                .map(|((a, b), v)| (b - a).abs() / v)
                .fold(f64::INFINITY, f64::min),
        }
    }

    /// Latest time at which a state at `q` can still reach one of `goals`.
    pub fn max_valid_time(&self, q: &[f64], goals: &[State], bound: TravelBound) -> Result<f64> {
        check_dim(self.dim(), q.len())?;
        if goals.is_empty() {
            return Err(CoreError::EmptyGoalSet);
        }
        for g in goals {
            check_dim(self.dim(), g.q.len())?;
        }
        Ok(self.max_valid_time_unchecked(q, goals, bound))
    }

    /// As [`Self::max_valid_time`], returning `-inf` for an empty goal set.
    pub fn max_valid_time_unchecked(&self, q: &[f64], goals: &[State], bound: TravelBound) -> f64 {
        goals
            .iter()
            .map(|g| g.t - self.travel_bound(q, &g.q, bound))
            .fold(f64::NEG_INFINITY, f64::max)
    }

    /// Distance of the fastest traversal of the configuration-space diagonal.
    pub fn diagonal_distance(&self) -> f64 {
        let diag = euclidean(&self.lower, &self.upper);
        self.lambda * diag + (1.0 - self.lambda) * self.travel_time(&self.lower, &self.upper)
    }

    pub fn sample_configuration<R: Rng + ?Sized>(&self, rng: &mut R) -> Vec<f64> {
        self.lower
            .iter()
            .zip(&self.upper)
            .map(|(&lo, &hi)| rng.random_range(lo..hi))
            .collect()
    }
}

/// Absolute slack proportional to the magnitude of the time stamps involved.
#[inline]
fn time_slack(ta: f64, tb: f64) -> f64 {
    4.0 * f64::EPSILON * ta.abs().max(tb.abs()).max(1.0)
}

#[inline]
pub fn euclidean(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (y - x) * (y - x))
        .sum::<f64>()
        .sqrt()
}

/// Straight-line interpolation in space and time.
pub fn interpolate(a: &State, b: &State, s: f64) -> State {
    let mut q = Vec::with_capacity(a.q.len());
    interpolate_into(&a.q, &b.q, s, &mut q);
    State::new(q, lerp(a.t, b.t, s))
}

pub fn interpolate_into(qa: &[f64], qb: &[f64], s: f64, out: &mut Vec<f64>) {
    out.clear();
    out.extend(qa.iter().zip(qb).map(|(&x, &y)| lerp(x, y, s)));
}

#[inline]
pub fn lerp(a: f64, b: f64, s: f64) -> f64 {
    if s == 1.0 {
        b
    } else {
        a + s * (b - a)
    }
}
