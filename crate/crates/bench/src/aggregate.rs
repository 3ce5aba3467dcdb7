//! Success-rate and median-cost curves over a time grid.
//!
//! Unsolved runs count as infinite cost, so the median stays infinite until
//! more than half of the runs have a solution. The confidence interval on the
//! median uses the order statistics at the normal-approximation ranks of a
//! Binomial(n, 1/2).

use serde::{Deserialize, Serialize};

use crate::runner::RunRecord;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AggregatePoint {
    pub t: f64,
    pub success_rate: f64,
    pub cost_median: f64,
    pub cost_lo: f64,
    pub cost_hi: f64,
}

/// 1-based ranks of the 95% confidence bounds on the median of `n` values,
/// clamped to `[1, n]`. For `n = 100` this gives `(40, 60)`.
pub fn ci_ranks(n: usize) -> (usize, usize) {
    assert!(n > 0, "no samples");
    let nf = n as f64;
    let half_width = 1.96 * nf.sqrt();
    let lo = ((nf - half_width) / 2.0).floor().max(1.0) as usize;
    let hi = (((nf + half_width) / 2.0).ceil() as usize).clamp(1, n);
    (lo.min(n), hi)
}

/// Median of sorted values; the mean of the middle two for even counts.
pub fn median(sorted: &[f64]) -> f64 {
    assert!(!sorted.is_empty(), "no samples");
    let n = sorted.len();
    if n % 2 == 1 {
        sorted[n / 2]
    } else {
        let (a, b) = (sorted[n / 2 - 1], sorted[n / 2]);
        if a.is_infinite() || b.is_infinite() {
            a.max(b)
        } else {
            0.5 * (a + b)
        }
    }
}

/// Summary of a set of costs (infinite for failures) at one instant.
pub fn summarize(t: f64, mut costs: Vec<f64>) -> AggregatePoint {
    costs.sort_by(f64::total_cmp);
    let n = costs.len();
    let solved = costs.iter().filter(|c| c.is_finite()).count();
    let (lo, hi) = ci_ranks(n);
    AggregatePoint {
        t,
        success_rate: solved as f64 / n as f64,
        cost_median: median(&costs),
        cost_lo: costs[lo - 1],
        cost_hi: costs[hi - 1],
    }
}

/// Curves for the records of one planner, evaluated at every grid time.
pub fn aggregate(records: &[&RunRecord], grid: &[f64]) -> Vec<AggregatePoint> {
    grid.iter()
        .map(|&t| summarize(t, records.iter().map(|r| r.cost_at(t)).collect()))
        .collect()
}

/// Median over runs of the first-solution clock value, infinite for failures.
pub fn median_first_solution(records: &[&RunRecord]) -> f64 {
    let mut v: Vec<f64> = records
        .iter()
        .map(|r| r.first_solution.unwrap_or(f64::INFINITY))
        .collect();
    v.sort_by(f64::total_cmp);
    median(&v)
}

/// Median over runs of the final cost, infinite for failures.
pub fn median_final_cost(records: &[&RunRecord]) -> f64 {
    let mut v: Vec<f64> = records.iter().map(|r| r.final_cost).collect();
    v.sort_by(f64::total_cmp);
    median(&v)
}
