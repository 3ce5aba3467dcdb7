//! Brute-force earliest-arrival search on a space-time lattice for 1-D
//! scenarios with a single goal configuration.
//!
//! Time advances in steps of `tau`; each step moves by `-h`, `0` or `+h` with
//! `h = vmax * tau`, so every lattice edge is velocity-feasible. Edges are
//! checked by dense sampling of `Scenario::is_valid_at`, independently of the
//! planner's motion checker. The grid is aligned with the start and goal
//! configurations.

use strrt::{GoalConfigs, Scenario};

/// Spacing between validity probes along a lattice edge.
const PROBE: f64 = 2e-3;

/// Earliest lattice arrival with `steps` grid cells between start and goal,
/// or `None` if the goal is not reached by `t_cap`.
pub fn earliest_arrival(scn: &Scenario, steps: usize, t_cap: f64) -> Option<f64> {
    assert_eq!(scn.dim(), 1, "lattice oracle is one-dimensional");
    let goal = match &scn.goal.configs {
        GoalConfigs::Set(qs) if qs.len() == 1 => qs[0][0],
        _ => panic!("lattice oracle needs a single goal configuration"),
    };
    let (lo, hi) = (scn.space.lower()[0], scn.space.upper()[0]);
    let vmax = scn.space.vmax()[0];
    let q0 = scn.start.q[0];
    let t0 = scn.start.t;
    let h = (goal - q0).abs() / steps as f64;
    let tau = h / vmax;
    // grid positions q0 + i*h for i in [i_lo, i_hi]
    let i_lo = -((q0 - lo) / h + 1e-9).floor() as i64;
    let i_hi = ((hi - q0) / h + 1e-9).floor() as i64;
    let n = (i_hi - i_lo + 1) as usize;
    let pos = |k: usize| q0 + (k as i64 + i_lo) as f64 * h;
    let goal_idx = ((goal - q0) / h).round() as i64 - i_lo;
    let probes = (h.max(tau) / PROBE).ceil().max(1.0) as usize;

    let edge_ok = |qa: f64, qb: f64, ta: f64| {
        (0..=probes).all(|j| {
            let s = j as f64 / probes as f64;
            scn.is_valid_at(&[qa + (qb - qa) * s], ta + tau * s)
        })
    };

    let mut reach = vec![false; n];
    reach[(-i_lo) as usize] = true;
    let mut layer = 0usize;
    loop {
        let t = t0 + layer as f64 * tau;
        if reach[goal_idx as usize] {
            return Some(t);
        }
        if t > t_cap {
            return None;
        }
        let mut next = vec![false; n];
        for k in (0..n).filter(|&k| reach[k]) {
            for dk in [-1i64, 0, 1] {
                let j = k as i64 + dk;
                if j < 0 || j >= n as i64 || next[j as usize] {
                    continue;
                }
                if edge_ok(pos(k), pos(j as usize), t) {
                    next[j as usize] = true;
                }
            }
        }
        if !next.iter().any(|&r| r) {
            return None;
        }
        reach = next;
        layer += 1;
    }
}

/// Refines the lattice by halving the step until the optimum changes by less
/// than 1%. Returns the finest optimum and the `(steps, optimum)` history.
pub fn converged_optimum(scn: &Scenario, t_cap: f64) -> (f64, Vec<(usize, f64)>) {
    let mut steps = 36;
    let mut history = vec![];
    let mut prev = earliest_arrival(scn, steps, t_cap).expect("lattice finds a path");
    history.push((steps, prev));
    loop {
        steps *= 2;
        let cur = earliest_arrival(scn, steps, t_cap).expect("lattice finds a path");
        history.push((steps, cur));
        if ((prev - cur) / cur).abs() < 0.01 {
            return (cur, history);
        }
        prev = cur;
    }
}
