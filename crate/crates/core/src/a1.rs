//! Perturbation algorithm for unit balls.
//!
//! With `delta` the minimum center distance and `sigma = sigma(delta)`: if
//! some ball has its second-nearest center within `sigma`, the centers are
//! returned. Otherwise the balls whose nearest center is within `sigma` come
//! in mutual-nearest pairs, and each paired point moves `(sigma - delta) / 4`
//! away from its partner along the center line, so the minimum distance is
//! at least `(sigma + delta) / 2`.

use crate::error::{Error, Result};
use crate::geometry::{Algorithm, BallInstance, Solution};
use crate::neighbors::{neighbor_info, NeighborInfo};
use crate::ratio::solve_sigma;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CaseTag {
    /// Some ball has two centers within `sigma`; points are the centers.
    Centers,
    /// Close balls form a matching and are pushed apart.
    Matching,
}

impl CaseTag {
    pub fn name(self) -> &'static str {
        match self {
            CaseTag::Centers => "CENTERS_CASE",
            CaseTag::Matching => "MATCHING_CASE",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct A1Outcome {
    pub solution: Solution,
    pub case_tag: CaseTag,
    /// Minimum center distance.
    pub delta: f64,
    /// `sigma(delta)`; `None` for a single ball.
    pub sigma: Option<f64>,
    /// Lower bound on `solution.min_distance` promised by the case analysis.
    pub guaranteed_value: f64,
    /// Set when the `sigma`-distance graph was not a matching and the centers
    /// were returned instead.
    pub fallback: bool,
    /// Number of balls that were moved.
    pub moved: usize,
}

/// `true` iff some ball's second-nearest center is within `sigma`.
pub fn second_neighbor_within(info: &NeighborInfo, sigma: f64) -> bool {
    (0..info.len()).any(|i| info.second(i).1 <= sigma)
}

pub fn solve_a1(inst: &BallInstance) -> Result<A1Outcome> {
    inst.require_unit()?;
    let centers = inst.centers();
    if inst.len() == 1 {
        return Ok(centers_outcome(inst, f64::INFINITY, None, false));
    }
    let info = neighbor_info(inst);
    let delta = info.min_distance();
    if delta <= 0.0 {
        return Err(Error::DegenerateDelta { delta });
    }
    let sigma = solve_sigma(delta)?;
    if second_neighbor_within(&info, sigma) {
        return Ok(centers_outcome(inst, delta, Some(sigma), false));
    }

    let shift = (sigma - delta) / 4.0;
    let mut points = centers.clone();
    let mut moved = 0;
    for (i, point) in points.iter_mut().enumerate() {
        let (partner, d) = info.nearest(i);
        let Some(j) = partner else { continue };
        if d > sigma {
            continue;
        }
        if info.nearest(j).0 != Some(i) {
            return Ok(centers_outcome(inst, delta, Some(sigma), true));
        }
        for (p, (a, b)) in point.iter_mut().zip(centers[i].iter().zip(&centers[j])) {
            *p = a + shift * (a - b) / d;
        }
        moved += 1;
    }
    Ok(A1Outcome {
        solution: Solution::new(points, Algorithm::A1),
        case_tag: CaseTag::Matching,
        delta,
        sigma: Some(sigma),
        guaranteed_value: (sigma + delta) / 2.0,
        fallback: false,
        moved,
    })
}

fn centers_outcome(
    inst: &BallInstance,
    delta: f64,
    sigma: Option<f64>,
    fallback: bool,
) -> A1Outcome {
    A1Outcome {
        solution: Solution::new(inst.centers(), Algorithm::A1),
        case_tag: CaseTag::Centers,
        delta,
        sigma,
        guaranteed_value: delta,
        fallback,
        moved: 0,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Ball;
    use approx::assert_abs_diff_eq;

    #[test]
    fn tangent_pair_is_matching_case() {
        let inst = BallInstance::unit_balls([[0.0, 0.0], [2.0, 0.0]]).unwrap();
        let out = solve_a1(&inst).unwrap();
        let sigma = out.sigma.unwrap();
        assert_eq!(out.case_tag, CaseTag::Matching);
        assert_abs_diff_eq!(sigma, 2.0883, epsilon = 1e-4);
        let shift = (sigma - 2.0) / 4.0;
        assert_abs_diff_eq!(out.solution.points[0][0], -shift, epsilon = 1e-15);
        assert_abs_diff_eq!(out.solution.points[1][0], 2.0 + shift, epsilon = 1e-15);
        assert_abs_diff_eq!(out.solution.points[0][0], -0.02208, epsilon = 1e-4);
        assert_abs_diff_eq!(
            out.solution.min_distance,
            (sigma + 2.0) / 2.0,
            epsilon = 1e-12
        );
        assert_abs_diff_eq!(out.guaranteed_value, 2.04417, epsilon = 1e-4);
        assert_eq!(out.moved, 2);
        assert!(!out.fallback);
    }

    #[test]
    fn equilateral_triangle_is_centers_case() {
        let h = 4.0 * 3f64.sqrt() / 2.0;
        let inst = BallInstance::unit_balls([[0.0, 0.0], [4.0, 0.0], [2.0, h]]).unwrap();
        let out = solve_a1(&inst).unwrap();
        assert_eq!(out.case_tag, CaseTag::Centers);
        assert_abs_diff_eq!(out.solution.min_distance, 4.0, epsilon = 1e-12);
        assert_abs_diff_eq!(out.guaranteed_value, 4.0, epsilon = 1e-12);
    }

    #[test]
    fn single_ball() {
        let inst = BallInstance::unit_balls([[0.0, 0.0]]).unwrap();
        let out = solve_a1(&inst).unwrap();
        assert_eq!(out.case_tag, CaseTag::Centers);
        assert_eq!(out.sigma, None);
        assert_eq!(out.solution.points, inst.centers());
    }

    #[test]
    fn far_ball_stays_put() {
        let inst = BallInstance::unit_balls([[0.0, 0.0], [2.0, 0.0], [100.0, 0.0]]).unwrap();
        let out = solve_a1(&inst).unwrap();
        assert_eq!(out.case_tag, CaseTag::Matching);
        assert_eq!(out.moved, 2);
        assert_eq!(out.solution.points[2], vec![100.0, 0.0]);
    }

    #[test]
    fn rejects_bad_input() {
        let inst =
            BallInstance::new(2, vec![Ball::new([0.0, 0.0], 2.0), Ball::unit([5.0, 0.0])]).unwrap();
        assert!(matches!(
            solve_a1(&inst),
            Err(Error::NonUnitRadius { index: 0, .. })
        ));
        let inst = BallInstance::unit_balls([[1.0, 1.0], [1.0, 1.0]]).unwrap();
        assert!(matches!(
            solve_a1(&inst),
            Err(Error::DegenerateDelta { .. })
        ));
    }

    #[test]
    fn overlapping_pair_moves_inside() {
        let inst = BallInstance::unit_balls([[0.0, 0.0], [1.0, 0.0]]).unwrap();
        let out = solve_a1(&inst).unwrap();
        assert_eq!(out.case_tag, CaseTag::Matching);
        out.solution.check_containment(&inst, 1e-12).unwrap();
        assert!(out.solution.min_distance >= out.guaranteed_value - 1e-12);
    }

    #[test]
    fn works_in_three_dimensions() {
        let inst = BallInstance::unit_balls([[0.0, 0.0, 0.0], [0.0, 0.0, 2.5]]).unwrap();
        let out = solve_a1(&inst).unwrap();
        assert_eq!(out.case_tag, CaseTag::Matching);
        assert!(out.solution.min_distance > 2.5);
    }
}
