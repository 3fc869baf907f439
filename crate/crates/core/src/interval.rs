//! Exact dispersion for sorted interior-disjoint intervals on a line and on
//! a closed curve of length `L`, each as one small LP:
//!
//! ```text
//! maximize z   s.t.  a_i <= x_i <= b_i,  x_{i+1} - x_i >= z   (line)
//!                    ... and x_1 + L - x_n >= z                (curve)
//! ```

use crate::error::{Error, Result};
use crate::lp::{solve_lp, LpModel, LpStatus, Relation};

#[derive(Debug, Clone, PartialEq)]
pub struct IntervalInstance {
    intervals: Vec<(f64, f64)>,
    length: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct IntervalSolution {
    pub z_star: f64,
    pub points: Vec<f64>,
}

impl IntervalInstance {
    /// Intervals on a line; they must satisfy `a_i <= b_i <= a_{i+1}`.
    pub fn line(intervals: Vec<(f64, f64)>) -> Result<Self> {
        check_sorted(&intervals)?;
        Ok(IntervalInstance {
            intervals,
            length: None,
        })
    }

    /// Intervals on a closed curve of length `length`, within `[0, length]`.
    pub fn cycle(intervals: Vec<(f64, f64)>, length: f64) -> Result<Self> {
        if !(length.is_finite() && length > 0.0) {
            return Err(Error::MissingCurveLength);
        }
        check_sorted(&intervals)?;
        if let (Some(first), Some(last)) = (intervals.first(), intervals.last()) {
            if first.0 < 0.0 || last.1 > length {
                return Err(Error::InvalidIntervals(format!(
                    "intervals must lie in [0, {length}]"
                )));
            }
        }
        Ok(IntervalInstance {
            intervals,
            length: Some(length),
        })
    }

    pub fn intervals(&self) -> &[(f64, f64)] {
        &self.intervals
    }

    pub fn length(&self) -> Option<f64> {
        self.length
    }

    pub fn len(&self) -> usize {
        self.intervals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }
}

fn check_sorted(intervals: &[(f64, f64)]) -> Result<()> {
    for (i, &(a, b)) in intervals.iter().enumerate() {
        if !(a.is_finite() && b.is_finite()) {
            return Err(Error::InvalidIntervals(format!(
                "interval {i} is not finite"
            )));
        }
        if a > b {
            return Err(Error::InvalidIntervals(format!(
                "interval {i} has a > b ({a} > {b})"
            )));
        }
        if i > 0 && intervals[i - 1].1 > a {
            return Err(Error::InvalidIntervals(format!(
                "intervals {} and {i} overlap or are out of order",
                i - 1
            )));
        }
    }
    Ok(())
}

/// The LP for `inst`: variables `x_0 .. x_{n-1}` then `z`.
pub fn build_interval_lp(inst: &IntervalInstance) -> LpModel {
    let n = inst.len();
    let mut m = LpModel::new();
    let xs: Vec<usize> = (0..n).map(|i| m.add_var(format!("x{i}"), 0.0)).collect();
    let z = m.add_var("z", 1.0);
    for (i, &(a, b)) in inst.intervals.iter().enumerate() {
        m.add_constraint(&[(xs[i], 1.0)], Relation::Ge, a);
        m.add_constraint(&[(xs[i], 1.0)], Relation::Le, b);
    }
    for i in 0..n.saturating_sub(1) {
        m.add_constraint(
            &[(xs[i + 1], 1.0), (xs[i], -1.0), (z, -1.0)],
            Relation::Ge,
            0.0,
        );
    }
    if let Some(len) = inst.length {
        m.add_constraint(
            &[(xs[0], 1.0), (xs[n - 1], -1.0), (z, -1.0)],
            Relation::Ge,
            -len,
        );
    }
    m
}

fn solve(inst: &IntervalInstance) -> Result<IntervalSolution> {
    if inst.len() < 2 {
        return Err(Error::InvalidIntervals(format!(
            "need at least 2 intervals, found {}",
            inst.len()
        )));
    }
    let sol = solve_lp(&build_interval_lp(inst))?;
    match sol.status {
        LpStatus::Optimal => {}
        LpStatus::Infeasible => return Err(Error::LpNotOptimal("infeasible")),
        LpStatus::Unbounded => return Err(Error::LpNotOptimal("unbounded")),
    }
    let n = inst.len();
    // Snap round-off back into the intervals.
    let points = sol.values[..n]
        .iter()
        .zip(&inst.intervals)
        .map(|(&x, &(a, b))| x.clamp(a, b))
        .collect();
    Ok(IntervalSolution {
        z_star: sol.values[n],
        points,
    })
}

/// Exact optimum on the line.
pub fn solve_line(inst: &IntervalInstance) -> Result<IntervalSolution> {
    if inst.length.is_some() {
        return Err(Error::InvalidArgument("expected a line instance".into()));
    }
    solve(inst)
}

/// Exact optimum on the closed curve, including the wrap-around gap.
pub fn solve_cycle(inst: &IntervalInstance) -> Result<IntervalSolution> {
    if inst.length.is_none() {
        return Err(Error::MissingCurveLength);
    }
    solve(inst)
}
