//! LP algorithm for pairwise-disjoint balls in the plane and in space.
//!
//! Each point `q_i` is confined to the container polytope `Q_i` of its ball,
//! and the LP maximises `z` subject to `<a_ij, q_j - q_i> >= z` for every pair
//! with center distance at most `7 delta`, where `a_ij` is the unit vector
//! from `o_i` to `o_j`. Pairs farther apart need no row: their points are at
//! least `delta_ij / 4 > 7 delta / 4 >= z*` apart anyway.
//!
//! The LP variables are the displacements `u_i = q_i - o_i` and `z`, so every
//! row reads `<n, u_i> <= offset` or `<a_ij, u_i - u_j> + z <= delta_ij` with
//! a non-negative right-hand side.

use crate::error::{Error, Result};
use crate::geometry::{dist, Algorithm, BallInstance, Solution};
use crate::lp::{solve_lp, LpModel, LpStatus, Relation};
use crate::polytope::{build_container_polytope, ContainerPolytope};

pub const DEFAULT_EPSILON: f64 = 1e-4;

/// Pruning factor: pairs with center distance above `PRUNE_FACTOR * delta` get no row.
pub const PRUNE_FACTOR: f64 = 7.0;

#[derive(Debug, Clone, PartialEq)]
pub struct Lp3 {
    pub model: LpModel,
    /// Pairs `(i, j)`, `i < j`, that received a projection row.
    pub pairs: Vec<(usize, usize)>,
    pub delta: f64,
    /// Index of `z`; ball `i` owns variables `i*d .. (i+1)*d`.
    pub z_index: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct A2Outcome {
    pub solution: Solution,
    pub z_star: f64,
    pub included_pairs: usize,
    pub num_constraints: usize,
    pub epsilon: f64,
}

/// Pairs `i < j` with center distance `<= threshold`, by exhaustive scan.
pub fn close_pairs(inst: &BallInstance, threshold: f64) -> Vec<(usize, usize)> {
    let balls = inst.balls();
    let mut out = Vec::new();
    for i in 0..balls.len() {
        for j in i + 1..balls.len() {
            if dist(&balls[i].center, &balls[j].center) <= threshold {
                out.push((i, j));
            }
        }
    }
    out
}

pub fn container_polytopes(inst: &BallInstance) -> Result<Vec<ContainerPolytope>> {
    inst.balls()
        .iter()
        .map(|b| build_container_polytope(b, inst.dimension()))
        .collect()
}

pub fn build_lp3(inst: &BallInstance, polytopes: &[ContainerPolytope]) -> Result<Lp3> {
    inst.require_at_least(2)?;
    inst.require_disjoint()?;
    if polytopes.len() != inst.len() {
        return Err(Error::PointCountMismatch {
            expected: inst.len(),
            found: polytopes.len(),
        });
    }
    let d = inst.dimension();
    let n = inst.len();
    let mut model = LpModel::new();
    for i in 0..n {
        for k in 0..d {
            model.add_var(format!("u{i}_{k}"), 0.0);
        }
    }
    let z = model.add_var("z", 1.0);

    for (i, poly) in polytopes.iter().enumerate() {
        for (f, h) in poly.halfspaces.iter().enumerate() {
            let terms: Vec<(usize, f64)> = (0..d).map(|k| (i * d + k, h.normal[k])).collect();
            model.add_constraint(&terms, Relation::Le, h.offset);
            model.name_last_row(format!("q{i}_f{f}"));
        }
    }

    let centers = inst.centers();
    let delta = crate::geometry::min_pairwise_distance(&centers);
    let pairs = close_pairs(inst, PRUNE_FACTOR * delta);
    for &(i, j) in &pairs {
        let dij = dist(&centers[i], &centers[j]);
        let mut terms = Vec::with_capacity(2 * d + 1);
        for k in 0..d {
            let a = (centers[j][k] - centers[i][k]) / dij;
            terms.push((i * d + k, a));
            terms.push((j * d + k, -a));
        }
        terms.push((z, 1.0));
        model.add_constraint(&terms, Relation::Le, dij);
        model.name_last_row(format!("p{i}_{j}"));
    }
    Ok(Lp3 {
        model,
        pairs,
        delta,
        z_index: z,
    })
}

/// Number of projection rows LP3 would have, without building it.
pub fn count_projection_rows(inst: &BallInstance) -> Result<usize> {
    inst.require_at_least(2)?;
    let delta = crate::geometry::min_pairwise_distance(&inst.centers());
    Ok(close_pairs(inst, PRUNE_FACTOR * delta).len())
}

/// Solves LP3; `epsilon` in `(0, 1)` is the accuracy the guarantee
/// `(1 - epsilon) / sqrt 2` is stated for and is reported back unchanged.
pub fn solve_a2(inst: &BallInstance, epsilon: f64) -> Result<A2Outcome> {
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(Error::InvalidArgument(format!(
            "epsilon must lie in (0, 1), got {epsilon}"
        )));
    }
    let d = inst.dimension();
    if d != 2 && d != 3 {
        return Err(Error::UnsupportedDimension(d));
    }
    inst.require_at_least(2)?;
    inst.require_disjoint()?;
    let polytopes = container_polytopes(inst)?;
    let lp = build_lp3(inst, &polytopes)?;
    let sol = solve_lp(&lp.model)?;
    match sol.status {
        LpStatus::Optimal => {}
        LpStatus::Infeasible => return Err(Error::LpNotOptimal("infeasible")),
        LpStatus::Unbounded => return Err(Error::LpNotOptimal("unbounded")),
    }
    let points = inst
        .balls()
        .iter()
        .enumerate()
        .map(|(i, b)| {
            b.center
                .iter()
                .enumerate()
                .map(|(k, c)| c + sol.values[i * d + k])
                .collect()
        })
        .collect();
    Ok(A2Outcome {
        solution: Solution::new(points, Algorithm::A2),
        z_star: sol.values[lp.z_index],
        included_pairs: lp.pairs.len(),
        num_constraints: lp.model.num_constraints(),
        epsilon,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Ball;
    use approx::assert_abs_diff_eq;

    #[test]
    fn tangent_pair() {
        let inst = BallInstance::unit_balls([[0.0, 0.0], [2.0, 0.0]]).unwrap();
        let lp = build_lp3(&inst, &container_polytopes(&inst).unwrap()).unwrap();
        assert_eq!(lp.model.num_vars(), 5);
        assert_eq!(lp.model.num_constraints(), 9);
        let out = solve_a2(&inst, DEFAULT_EPSILON).unwrap();
        assert_abs_diff_eq!(out.z_star, 3.0, epsilon = 1e-9);
        assert_abs_diff_eq!(out.solution.min_distance, 3.0, epsilon = 1e-9);
        assert_abs_diff_eq!(out.solution.points[0][0], -0.5, epsilon = 1e-9);
        assert_abs_diff_eq!(out.solution.points[1][0], 2.5, epsilon = 1e-9);
    }

    #[test]
    fn three_collinear() {
        let inst = BallInstance::unit_balls([[0.0, 0.0], [2.0, 0.0], [4.0, 0.0]]).unwrap();
        let lp = build_lp3(&inst, &container_polytopes(&inst).unwrap()).unwrap();
        assert_eq!(lp.pairs.len(), 3);
        assert_eq!(lp.model.num_constraints(), 15);
        let out = solve_a2(&inst, DEFAULT_EPSILON).unwrap();
        assert_abs_diff_eq!(out.z_star, 2.5, epsilon = 1e-9);
        assert!(out.solution.min_distance >= 2.5 - 1e-9);
    }

    #[test]
    fn far_pairs_are_pruned() {
        let inst = BallInstance::unit_balls([[0.0, 0.0], [2.0, 0.0], [100.0, 0.0]]).unwrap();
        let out = solve_a2(&inst, DEFAULT_EPSILON).unwrap();
        assert_eq!(out.included_pairs, 1);
        assert!(out.solution.min_distance >= out.z_star - 1e-9);
    }

    #[test]
    fn space_pair() {
        let inst = BallInstance::unit_balls([[0.0, 0.0, 0.0], [0.0, 2.0, 0.0]]).unwrap();
        let out = solve_a2(&inst, DEFAULT_EPSILON).unwrap();
        let q = build_container_polytope(&inst.balls()[0], 3).unwrap();
        assert!(out.z_star >= 2.0 + 2.0 * q.inradius - 1e-9);
        assert!(out.z_star <= 2.0 + 2.0 * q.circumradius + 1e-9);
        out.solution.check_containment(&inst, 1e-9).unwrap();
    }

    #[test]
    fn mixed_radii_stay_inside() {
        let inst = BallInstance::new(
            2,
            vec![
                Ball::new([0.0, 0.0], 1.0),
                Ball::new([3.0, 0.0], 2.0),
                Ball::new([0.0, 4.0], 0.5),
            ],
        )
        .unwrap();
        let out = solve_a2(&inst, DEFAULT_EPSILON).unwrap();
        out.solution.check_containment(&inst, 1e-9).unwrap();
        assert!(out.z_star >= 3.0 - 1e-9);
    }

    #[test]
    fn rejects_bad_input() {
        let overlap = BallInstance::unit_balls([[0.0, 0.0], [1.0, 0.0]]).unwrap();
        assert!(matches!(
            solve_a2(&overlap, 1e-4),
            Err(Error::Overlap { .. })
        ));
        let line = BallInstance::unit_balls([[0.0], [3.0]]).unwrap();
        assert_eq!(
            solve_a2(&line, 1e-4).unwrap_err(),
            Error::UnsupportedDimension(1)
        );
        let single = BallInstance::unit_balls([[0.0, 0.0]]).unwrap();
        assert!(matches!(
            solve_a2(&single, 1e-4),
            Err(Error::TooFewBalls { .. })
        ));
        let pair = BallInstance::unit_balls([[0.0, 0.0], [2.0, 0.0]]).unwrap();
        assert!(matches!(
            solve_a2(&pair, 0.0),
            Err(Error::InvalidArgument(_))
        ));
    }
}
