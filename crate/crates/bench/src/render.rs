//! SVG drawings of scenarios, planner trees and solutions.
//!
//! Colours: start tree blue, goal trees red, obstacles black, goal region
//! yellow, solution orange. One-dimensional scenarios are drawn in the
//! `(q, t)` plane with time pointing up; two-dimensional ones as a grid of
//! frames at evenly spaced times. Coordinates are printed with two decimals,
//! so identical inputs give identical files.

use std::fmt::Write as _;

use strrt::planner::TreeSnapshot;
use strrt::space::interpolate;
use strrt::{GoalConfigs, Scenario, SolutionPath, State};

use crate::{BenchError, Result};

const PLOT: f64 = 480.0;
const MARGIN: f64 = 40.0;
const FRAME: f64 = 240.0;
const FRAME_GAP: f64 = 30.0;
const FRAME_COLUMNS: usize = 4;
const SPHERE_SLICES: usize = 200;

const START_TREE: &str = "blue";
const GOAL_TREE: &str = "red";
const OBSTACLE: &str = "black";
const GOAL_REGION: &str = "yellow";
const SOLUTION: &str = "orange";

/// Renders `scn` with optional planner trees and solution. `frames` is the
/// number of time slices for two-dimensional scenarios.
pub fn render_svg(
    scn: &Scenario,
    trees: Option<&TreeSnapshot>,
    solution: Option<&SolutionPath>,
    frames: usize,
) -> Result<String> {
    let horizon = time_horizon(scn, trees, solution);
    match scn.dim() {
        1 => Ok(render_line(scn, trees, solution, horizon)),
        2 => Ok(render_frames(scn, trees, solution, horizon, frames.max(1))),
        d => Err(BenchError::RenderDimension(d)),
    }
}

/// Upper end of the drawn time axis.
fn time_horizon(scn: &Scenario, trees: Option<&TreeSnapshot>, solution: Option<&SolutionPath>) -> f64 {
    let mut t = scn.start.t;
    let mut bump = |v: f64| {
        if v.is_finite() && v > t {
            t = v;
        }
    };
    if let Some(p) = solution {
        bump(p.cost);
    }
    if let Some(s) = trees {
        bump(s.t_max);
        for (a, b) in s.start_edges.iter().chain(&s.goal_edges) {
            bump(a.t);
            bump(b.t);
        }
        for r in &s.goal_roots {
            bump(r.t);
        }
    }
    if let Some(d) = scn.goal.t_max {
        bump(d);
    }
    if t <= scn.start.t {
        let lb = scn.goal.travel_time_from(&scn.space, &scn.start.q);
        t = scn.start.t + 2.0 * lb.max(1.0);
    }
    t * 1.05
}

fn header(out: &mut String, width: f64, height: f64) {
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width:.0}" height="{height:.0}" viewBox="0 0 {width:.0} {height:.0}">"#
    )
    .unwrap();
    writeln!(out, r#"<rect x="0" y="0" width="{width:.0}" height="{height:.0}" fill="white"/>"#).unwrap();
}

fn line(out: &mut String, a: (f64, f64), b: (f64, f64), colour: &str, width: f64) {
    writeln!(
        out,
        r#"<line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="{colour}" stroke-width="{width}"/>"#,
        a.0, a.1, b.0, b.1
    )
    .unwrap();
}

fn polyline(out: &mut String, pts: &[(f64, f64)], colour: &str, width: f64) {
    let coords: Vec<String> = pts.iter().map(|p| format!("{:.2},{:.2}", p.0, p.1)).collect();
    writeln!(
        out,
        r#"<polyline points="{}" fill="none" stroke="{colour}" stroke-width="{width}"/>"#,
        coords.join(" ")
    )
    .unwrap();
}

fn rect(out: &mut String, x0: f64, y0: f64, x1: f64, y1: f64, fill: &str, opacity: f64) {
    writeln!(
        out,
        r#"<rect x="{:.2}" y="{:.2}" width="{:.2}" height="{:.2}" fill="{fill}" fill-opacity="{opacity}"/>"#,
        x0.min(x1),
        y0.min(y1),
        (x1 - x0).abs(),
        (y1 - y0).abs()
    )
    .unwrap();
}

fn circle(out: &mut String, c: (f64, f64), r: f64, fill: &str) {
    writeln!(
        out,
        r#"<circle cx="{:.2}" cy="{:.2}" r="{:.2}" fill="{fill}"/>"#,
        c.0, c.1, r
    )
    .unwrap();
}

fn text(out: &mut String, x: f64, y: f64, s: &str) {
    writeln!(
        out,
        r#"<text x="{x:.2}" y="{y:.2}" font-family="sans-serif" font-size="12">{s}</text>"#
    )
    .unwrap();
}

/// Intervals of `[0, horizon]` during which a box with these windows exists.
fn active_intervals(windows: &[(f64, f64)], horizon: f64) -> Vec<(f64, f64)> {
    let mut sorted = windows.to_vec();
    sorted.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut out = Vec::new();
    let mut from = 0.0;
    for (a, b) in sorted {
        if a > from {
            out.push((from, a.min(horizon)));
        }
        from = from.max(b);
        if from >= horizon {
            break;
        }
    }
    if from < horizon {
        out.push((from, horizon));
    }
    out.retain(|(a, b)| b > a);
    out
}

fn render_line(
    scn: &Scenario,
    trees: Option<&TreeSnapshot>,
    solution: Option<&SolutionPath>,
    horizon: f64,
) -> String {
    let (lo, hi) = (scn.space.lower()[0], scn.space.upper()[0]);
    let px = |q: f64| MARGIN + (q - lo) / (hi - lo) * PLOT;
    let py = |t: f64| MARGIN + PLOT - t / horizon * PLOT;
    let pt = |s: &State| (px(s.q[0]), py(s.t));
    let mut out = String::new();
    header(&mut out, PLOT + 2.0 * MARGIN, PLOT + 2.0 * MARGIN);

    // goal band up to the deadline
    let t_goal = scn.goal.t_max.unwrap_or(horizon).min(horizon);
    match &scn.goal.configs {
        GoalConfigs::Set(qs) => {
            for q in qs {
                rect(&mut out, px(q[0]) - 3.0, py(0.0), px(q[0]) + 3.0, py(t_goal), GOAL_REGION, 0.8);
            }
        }
        GoalConfigs::Box { lo: gl, hi: gh } => {
            rect(&mut out, px(gl[0]), py(0.0), px(gh[0]), py(t_goal), GOAL_REGION, 0.8);
        }
    }

    for b in &scn.box_obstacles {
        for (t0, t1) in active_intervals(&b.open_windows, horizon) {
            rect(&mut out, px(b.lo[0]), py(t0), px(b.hi[0]), py(t1), OBSTACLE, 1.0);
        }
    }
    for s in &scn.sphere_obstacles {
        let mut left = Vec::with_capacity(SPHERE_SLICES + 1);
        let mut right = Vec::with_capacity(SPHERE_SLICES + 1);
        for k in 0..=SPHERE_SLICES {
            let t = horizon * k as f64 / SPHERE_SLICES as f64;
            let c = s.trajectory.position_at(t)[0];
            left.push(format!("{:.2},{:.2}", px((c - s.radius).max(lo)), py(t)));
            right.push(format!("{:.2},{:.2}", px((c + s.radius).min(hi)), py(t)));
        }
        right.reverse();
        left.extend(right);
        writeln!(out, r#"<polygon points="{}" fill="{OBSTACLE}"/>"#, left.join(" ")).unwrap();
    }

    if let Some(snap) = trees {
        for (a, b) in &snap.goal_edges {
            line(&mut out, pt(a), pt(b), GOAL_TREE, 0.7);
        }
        for r in &snap.goal_roots {
            circle(&mut out, pt(r), 2.0, GOAL_TREE);
        }
        for (a, b) in &snap.start_edges {
            line(&mut out, pt(a), pt(b), START_TREE, 0.7);
        }
        if snap.t_max.is_finite() && snap.t_max <= horizon {
            writeln!(
                out,
                r#"<line x1="{:.2}" y1="{y:.2}" x2="{:.2}" y2="{y:.2}" stroke="gray" stroke-dasharray="6,4"/>"#,
                px(lo),
                px(hi),
                y = py(snap.t_max)
            )
            .unwrap();
        }
    }
    if let Some(p) = solution {
        let pts: Vec<(f64, f64)> = p.states.iter().map(pt).collect();
        polyline(&mut out, &pts, SOLUTION, 2.5);
    }
    circle(&mut out, pt(&scn.start), 4.0, START_TREE);

    // axes
    line(&mut out, (px(lo), py(0.0)), (px(hi), py(0.0)), "gray", 1.0);
    line(&mut out, (px(lo), py(0.0)), (px(lo), py(horizon)), "gray", 1.0);
    text(&mut out, px(hi) - 10.0, py(0.0) + 20.0, "q");
    text(&mut out, px(lo) - 20.0, py(horizon) + 10.0, "t");
    text(&mut out, px(lo) - 30.0, py(0.0) + 4.0, "0");
    text(&mut out, px(lo) - 36.0, py(horizon) + 24.0, &format!("{horizon:.1}"));
    out.push_str("</svg>\n");
    out
}

/// Position along `path` at time `t`, clamped to its ends.
fn position_at(path: &SolutionPath, t: f64) -> Option<State> {
    let first = path.states.first()?;
    if t <= first.t {
        return Some(first.clone());
    }
    for w in path.states.windows(2) {
        if t <= w[1].t {
            let s = if w[1].t > w[0].t { (t - w[0].t) / (w[1].t - w[0].t) } else { 1.0 };
            return Some(interpolate(&w[0], &w[1], s));
        }
    }
    path.states.last().cloned()
}

fn render_frames(
    scn: &Scenario,
    trees: Option<&TreeSnapshot>,
    solution: Option<&SolutionPath>,
    horizon: f64,
    frames: usize,
) -> String {
    let (lo, hi) = (scn.space.lower(), scn.space.upper());
    let cols = frames.min(FRAME_COLUMNS);
    let rows = frames.div_ceil(cols);
    let width = MARGIN * 2.0 + cols as f64 * FRAME + (cols - 1) as f64 * FRAME_GAP;
    let height = MARGIN * 2.0 + rows as f64 * (FRAME + FRAME_GAP);
    let mut out = String::new();
    header(&mut out, width, height);
    let scale = FRAME / (hi[0] - lo[0]).max(hi[1] - lo[1]);

    for k in 0..frames {
        let t = if frames == 1 {
            horizon
        } else {
            scn.start.t + (horizon - scn.start.t) * k as f64 / (frames - 1) as f64
        };
        let ox = MARGIN + (k % cols) as f64 * (FRAME + FRAME_GAP);
        let oy = MARGIN + (k / cols) as f64 * (FRAME + FRAME_GAP);
        let p = |q: &[f64]| (ox + (q[0] - lo[0]) * scale, oy + FRAME - (q[1] - lo[1]) * scale);

        writeln!(out, "<g>").unwrap();
        let (c0, c1) = (p(lo), p(hi));
        writeln!(
            out,
            r#"<rect x="{:.2}" y="{:.2}" width="{:.2}" height="{:.2}" fill="none" stroke="gray"/>"#,
            c0.0,
            c1.1,
            c1.0 - c0.0,
            c0.1 - c1.1
        )
        .unwrap();
        text(&mut out, ox, oy - 6.0, &format!("t = {t:.2}"));

        let goal_open = scn.goal.t_max.is_none_or(|d| t <= d);
        if goal_open {
            match &scn.goal.configs {
                GoalConfigs::Set(qs) => {
                    for q in qs {
                        circle(&mut out, p(q), 5.0, GOAL_REGION);
                    }
                }
                GoalConfigs::Box { lo: gl, hi: gh } => {
                    let (a, b) = (p(gl), p(gh));
                    rect(&mut out, a.0, a.1, b.0, b.1, GOAL_REGION, 0.8);
                }
            }
        }
        for b in scn.box_obstacles.iter().filter(|b| b.is_active(t)) {
            let (a, c) = (p(&b.lo), p(&b.hi));
            rect(&mut out, a.0, a.1, c.0, c.1, OBSTACLE, 1.0);
        }
        for s in &scn.sphere_obstacles {
            circle(&mut out, p(&s.trajectory.position_at(t)), s.radius * scale, OBSTACLE);
        }
        if let Some(snap) = trees {
            for (a, b) in snap.goal_edges.iter().filter(|(a, _)| a.t >= t) {
                line(&mut out, p(&a.q), p(&b.q), GOAL_TREE, 0.5);
            }
            for (a, b) in snap.start_edges.iter().filter(|(_, b)| b.t <= t) {
                line(&mut out, p(&a.q), p(&b.q), START_TREE, 0.5);
            }
        }
        if let Some(path) = solution {
            let pts: Vec<(f64, f64)> = path.states.iter().map(|s| p(&s.q)).collect();
            polyline(&mut out, &pts, SOLUTION, 1.5);
            if let Some(here) = position_at(path, t) {
                circle(&mut out, p(&here.q), (scn.robot_radius * scale).max(2.0), SOLUTION);
            }
        }
        circle(&mut out, p(&scn.start.q), 3.0, START_TREE);
        writeln!(out, "</g>").unwrap();
    }
    out.push_str("</svg>\n");
    out
}
