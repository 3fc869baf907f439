//! The baseline: pick every center.

use crate::geometry::{Algorithm, BallInstance, Solution};

/// Returns the centers; `min_distance` is `delta`, or `+inf` for one ball.
pub fn solve_centers(inst: &BallInstance) -> Solution {
    Solution::new(inst.centers(), Algorithm::Centers)
}
