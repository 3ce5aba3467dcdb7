//! Sampling-based motion planning through space-time.
//!
//! The crate plans for holonomic robots with per-dimension velocity limits
//! among obstacles whose trajectories are known in advance. States live in
//! the product of a Euclidean configuration space and a time axis, and the
//! objective is the arrival time at the goal region.
//!
//! - [`space`]: states, the asymmetric space-time distance and the velocity
//!   bounds derived from it.
//! - [`goal`]: goal regions with optionally bounded arrival time.
//! - [`scenario`]: world model, validity checking, scenario files and
//!   generators.
//! - [`planner`]: the bidirectional ST-RRT* planner.
//! - [`baselines`]: space-time RRT-Connect and RRT* with a fixed time bound.
//! - [`validate`]: an independent re-check of solution paths.

#![allow(clippy::neg_cmp_op_on_partial_ord)] // NaN must fail these checks

pub mod baselines;
pub mod error;
pub mod goal;
pub mod planner;
pub mod scenario;
pub mod solution;
pub mod space;
pub mod tree;
pub mod validate;

pub use error::{CoreError, Result};
pub use goal::{GoalConfigs, GoalRegion};
pub use scenario::Scenario;
pub use solution::{PlanOutcome, RunStats, SolutionPath, Termination};
pub use space::{SpaceTimeSpace, State, TravelBound};
