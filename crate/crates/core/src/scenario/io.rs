//! Scenario files: one UTF-8 JSON document, unknown keys rejected.

use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::obstacle::{DynamicSphereObstacle, ObstacleTrajectory, TimedBoxObstacle, TrajectoryError};
use super::Scenario;
use crate::error::CoreError;
use crate::goal::{GoalConfigs, GoalRegion};
use crate::space::{SpaceTimeSpace, State};

#[derive(Debug, Error)]
pub enum ScenarioError {
    #[error("cannot read scenario file {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("malformed scenario at `{path}`: {message}")]
    Parse { path: String, message: String },
    #[error("invalid scenario at `{path}`: {message}")]
    Invalid { path: String, message: String },
}

impl ScenarioError {
    /// Field path of the offending value, `.` for the document root.
    pub fn path(&self) -> &str {
        match self {
            ScenarioError::Io { path, .. } => path,
            ScenarioError::Parse { path, .. } | ScenarioError::Invalid { path, .. } => path,
        }
    }

    fn invalid(path: impl Into<String>, message: impl Into<String>) -> Self {
        ScenarioError::Invalid {
            path: path.into(),
            message: message.into(),
        }
    }
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ScenarioDoc {
    dim: usize,
    lower: Vec<f64>,
    upper: Vec<f64>,
    vmax: Vec<f64>,
    lambda: f64,
    start: StateDoc,
    goal: GoalDoc,
    robot_radius: f64,
    check_resolution: f64,
    #[serde(default)]
    sphere_obstacles: Vec<SphereDoc>,
    #[serde(default)]
    box_obstacles: Vec<BoxDoc>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct StateDoc {
    q: Vec<f64>,
    t: f64,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GoalDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    q_set: Option<Vec<Vec<f64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    q_box: Option<BoxBoundsDoc>,
    t_max: TimeBoundDoc,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct BoxBoundsDoc {
    lo: Vec<f64>,
    hi: Vec<f64>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(untagged)]
enum TimeBoundDoc {
    Finite(f64),
    Named(String),
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SphereDoc {
    radius: f64,
    waypoints: Vec<(f64, Vec<f64>)>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct BoxDoc {
    lo: Vec<f64>,
    hi: Vec<f64>,
    #[serde(default)]
    open_windows: Vec<(f64, f64)>,
}

pub fn load_scenario(bytes: &[u8]) -> Result<Scenario, ScenarioError> {
    let de = &mut serde_json::Deserializer::from_slice(bytes);
    let doc: ScenarioDoc = serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        ScenarioError::Parse {
            path,
            message: e.into_inner().to_string(),
        }
    })?;
    from_doc(doc)
}

pub fn load_scenario_file(path: impl AsRef<Path>) -> Result<Scenario, ScenarioError> {
    let path = path.as_ref();
    let bytes = std::fs::read(path).map_err(|source| ScenarioError::Io {
        path: path.display().to_string(),
        source,
    })?;
    load_scenario(&bytes)
}

/// Pretty-printed JSON with a trailing newline. Output is a pure function of
/// the scenario.
pub fn save_scenario(scn: &Scenario) -> Vec<u8> {
    let mut out = serde_json::to_vec_pretty(&to_doc(scn)).expect("scenario serialisation");
    out.push(b'\n');
    out
}

fn to_doc(scn: &Scenario) -> ScenarioDoc {
    let (q_set, q_box) = match &scn.goal.configs {
        GoalConfigs::Set(qs) => (Some(qs.clone()), None),
        GoalConfigs::Box { lo, hi } => (
            None,
            Some(BoxBoundsDoc {
                lo: lo.clone(),
                hi: hi.clone(),
            }),
        ),
    };
    ScenarioDoc {
        dim: scn.space.dim(),
        lower: scn.space.lower().to_vec(),
        upper: scn.space.upper().to_vec(),
        vmax: scn.space.vmax().to_vec(),
        lambda: scn.space.lambda(),
        start: StateDoc {
            q: scn.start.q.clone(),
            t: scn.start.t,
        },
        goal: GoalDoc {
            q_set,
            q_box,
            t_max: match scn.goal.t_max {
                Some(t) => TimeBoundDoc::Finite(t),
                None => TimeBoundDoc::Named("inf".into()),
            },
        },
        robot_radius: scn.robot_radius,
        check_resolution: scn.check_resolution,
        sphere_obstacles: scn
            .sphere_obstacles
            .iter()
            .map(|s| SphereDoc {
                radius: s.radius,
                waypoints: s.trajectory.waypoints().to_vec(),
            })
            .collect(),
        box_obstacles: scn
            .box_obstacles
            .iter()
            .map(|b| BoxDoc {
                lo: b.lo.clone(),
                hi: b.hi.clone(),
                open_windows: b.open_windows.clone(),
            })
            .collect(),
    }
}

fn expect_len(path: &str, v: &[f64], dim: usize) -> Result<(), ScenarioError> {
    if v.len() != dim {
        return Err(ScenarioError::invalid(
            path,
            format!("expected {dim} values, found {}", v.len()),
        ));
    }
    Ok(())
}

fn from_doc(doc: ScenarioDoc) -> Result<Scenario, ScenarioError> {
    let dim = doc.dim;
    if dim == 0 {
        return Err(ScenarioError::invalid("dim", "must be positive"));
    }
    expect_len("lower", &doc.lower, dim)?;
    expect_len("upper", &doc.upper, dim)?;
    expect_len("vmax", &doc.vmax, dim)?;
    let space = SpaceTimeSpace::new(doc.lower, doc.upper, doc.vmax, doc.lambda)
        .map_err(|e| ScenarioError::invalid(".", e.to_string()))?;

    expect_len("start.q", &doc.start.q, dim)?;
    let start = State::new(doc.start.q, doc.start.t);

    let configs = match (doc.goal.q_set, doc.goal.q_box) {
        (Some(qs), None) => {
            for (i, q) in qs.iter().enumerate() {
                expect_len(&format!("goal.q_set[{i}]"), q, dim)?;
            }
            GoalConfigs::Set(qs)
        }
        (None, Some(b)) => {
            expect_len("goal.q_box.lo", &b.lo, dim)?;
            expect_len("goal.q_box.hi", &b.hi, dim)?;
            GoalConfigs::Box { lo: b.lo, hi: b.hi }
        }
        _ => {
            return Err(ScenarioError::invalid(
                "goal",
                "exactly one of `q_set` and `q_box` is required",
            ))
        }
    };
    let t_max = match doc.goal.t_max {
        TimeBoundDoc::Finite(t) => Some(t),
        TimeBoundDoc::Named(s) if s == "inf" => None,
        TimeBoundDoc::Named(s) => {
            return Err(ScenarioError::invalid(
                "goal.t_max",
                format!("expected a number or \"inf\", found {s:?}"),
            ))
        }
    };
    let goal = GoalRegion { configs, t_max };

    let mut sphere_obstacles = Vec::with_capacity(doc.sphere_obstacles.len());
    for (i, s) in doc.sphere_obstacles.into_iter().enumerate() {
        if !(s.radius > 0.0 && s.radius.is_finite()) {
            return Err(ScenarioError::invalid(
                format!("sphere_obstacles[{i}].radius"),
                "must be positive",
            ));
        }
        let trajectory = ObstacleTrajectory::new(s.waypoints, dim).map_err(|e| {
            let (at, message) = match e {
                TrajectoryError::Empty => (String::new(), "at least one waypoint is required".to_string()),
                TrajectoryError::NonIncreasingTime { index } => (
                    format!("[{index}]"),
                    format!("waypoint times of obstacle {i} must be strictly increasing"),
                ),
                TrajectoryError::Dimension { index } => {
                    (format!("[{index}]"), format!("position must have {dim} values"))
                }
                TrajectoryError::NonFinite { index } => {
                    (format!("[{index}]"), "values must be finite".to_string())
                }
            };
            ScenarioError::invalid(format!("sphere_obstacles[{i}].waypoints{at}"), message)
        })?;
        sphere_obstacles.push(DynamicSphereObstacle {
            radius: s.radius,
            trajectory,
        });
    }

    let mut box_obstacles = Vec::with_capacity(doc.box_obstacles.len());
    for (i, b) in doc.box_obstacles.into_iter().enumerate() {
        expect_len(&format!("box_obstacles[{i}].lo"), &b.lo, dim)?;
        expect_len(&format!("box_obstacles[{i}].hi"), &b.hi, dim)?;
        if b.lo.iter().zip(&b.hi).any(|(l, h)| !(l <= h)) {
            return Err(ScenarioError::invalid(
                format!("box_obstacles[{i}]"),
                "lo must not exceed hi",
            ));
        }
        let mut windows = b.open_windows.clone();
        windows.sort_by(|a, b| a.0.total_cmp(&b.0));
        for (k, w) in windows.iter().enumerate() {
            if !(w.0 < w.1) {
                return Err(ScenarioError::invalid(
                    format!("box_obstacles[{i}].open_windows"),
                    "every window needs positive length",
                ));
            }
            if k > 0 && windows[k - 1].1 > w.0 {
                return Err(ScenarioError::invalid(
                    format!("box_obstacles[{i}].open_windows"),
                    "windows must be disjoint",
                ));
            }
        }
        box_obstacles.push(TimedBoxObstacle {
            lo: b.lo,
            hi: b.hi,
            open_windows: b.open_windows,
        });
    }

    let scn = Scenario {
        space,
        start,
        goal,
        robot_radius: doc.robot_radius,
        sphere_obstacles,
        box_obstacles,
        check_resolution: doc.check_resolution,
    };
    scn.validate().map_err(|e| {
        let path = match e {
            CoreError::InvalidStart => "start",
            CoreError::InvalidGoal(_) => "goal",
            CoreError::InvalidParameter { name, .. } => name,
            _ => ".",
        };
        ScenarioError::invalid(path, e.to_string())
    })?;
    Ok(scn)
}
