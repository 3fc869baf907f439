//! Balls, instances, solutions and the handful of metric primitives every
//! solver shares.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::neighbors;

/// Absolute tolerance for containment and disjointness checks.
pub const TOL: f64 = 1e-9;

pub type Point = Vec<f64>;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Ball {
    pub center: Point,
    pub radius: f64,
}

impl Ball {
    pub fn new(center: impl Into<Point>, radius: f64) -> Self {
        Ball {
            center: center.into(),
            radius,
        }
    }

    pub fn unit(center: impl Into<Point>) -> Self {
        Ball::new(center, 1.0)
    }

    pub fn dimension(&self) -> usize {
        self.center.len()
    }

    /// Signed amount by which `p` sticks out of the ball (negative inside).
    pub fn excess(&self, p: &[f64]) -> f64 {
        dist(&self.center, p) - self.radius
    }

    pub fn contains(&self, p: &[f64], tol: f64) -> bool {
        self.excess(p) <= tol
    }
}

/// A dispersion instance: `n >= 1` balls sharing one dimension.
#[derive(Debug, Clone, PartialEq)]
pub struct BallInstance {
    dimension: usize,
    balls: Vec<Ball>,
}

impl BallInstance {
    pub fn new(dimension: usize, balls: Vec<Ball>) -> Result<Self> {
        if dimension == 0 {
            return Err(Error::ZeroDimension);
        }
        if balls.is_empty() {
            return Err(Error::TooFewBalls {
                required: 1,
                found: 0,
            });
        }
        for (index, ball) in balls.iter().enumerate() {
            if ball.center.len() != dimension {
                return Err(Error::DimensionMismatch {
                    expected: dimension,
                    found: ball.center.len(),
                });
            }
            if ball.center.iter().any(|c| !c.is_finite()) {
                return Err(Error::NonFiniteCenter { index });
            }
            if !(ball.radius.is_finite() && ball.radius >= 0.0) {
                return Err(Error::InvalidRadius {
                    index,
                    radius: ball.radius,
                });
            }
        }
        Ok(BallInstance { dimension, balls })
    }

    /// Unit balls centered at `centers`; the dimension is taken from the first center.
    pub fn unit_balls<P: Into<Point>>(centers: impl IntoIterator<Item = P>) -> Result<Self> {
        let balls: Vec<Ball> = centers.into_iter().map(Ball::unit).collect();
        let dimension = balls.first().map_or(0, Ball::dimension);
        BallInstance::new(dimension, balls)
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn balls(&self) -> &[Ball] {
        &self.balls
    }

    pub fn len(&self) -> usize {
        self.balls.len()
    }

    pub fn is_empty(&self) -> bool {
        self.balls.is_empty()
    }

    pub fn centers(&self) -> Vec<Point> {
        self.balls.iter().map(|b| b.center.clone()).collect()
    }

    pub fn max_radius(&self) -> f64 {
        self.balls.iter().map(|b| b.radius).fold(0.0, f64::max)
    }

    pub fn is_unit(&self) -> bool {
        self.balls.iter().all(|b| (b.radius - 1.0).abs() <= TOL)
    }

    pub fn is_disjoint(&self) -> bool {
        first_overlap(self).is_none()
    }

    pub fn require_unit(&self) -> Result<()> {
        match self.balls.iter().position(|b| (b.radius - 1.0).abs() > TOL) {
            Some(index) => Err(Error::NonUnitRadius {
                index,
                radius: self.balls[index].radius,
            }),
            None => Ok(()),
        }
    }

    pub fn require_disjoint(&self) -> Result<()> {
        match first_overlap(self) {
            Some((i, j)) => {
                let (a, b) = (&self.balls[i], &self.balls[j]);
                Err(Error::Overlap {
                    i,
                    j,
                    distance: dist(&a.center, &b.center),
                    radius_sum: a.radius + b.radius,
                })
            }
            None => Ok(()),
        }
    }

    pub fn require_at_least(&self, required: usize) -> Result<()> {
        if self.len() < required {
            return Err(Error::TooFewBalls {
                required,
                found: self.len(),
            });
        }
        Ok(())
    }

    /// Center distance between balls `i` and `j`.
    pub fn center_distance(&self, i: usize, j: usize) -> f64 {
        dist(&self.balls[i].center, &self.balls[j].center)
    }
}

fn first_overlap(inst: &BallInstance) -> Option<(usize, usize)> {
    let balls = inst.balls();
    for i in 0..balls.len() {
        for j in i + 1..balls.len() {
            let d = dist(&balls[i].center, &balls[j].center);
            if d < balls[i].radius + balls[j].radius - TOL {
                return Some((i, j));
            }
        }
    }
    None
}

/// Which solver produced a solution.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Algorithm {
    Centers,
    A1,
    A2,
}

impl Algorithm {
    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Centers => "centers",
            Algorithm::A1 => "a1",
            Algorithm::A2 => "a2",
        }
    }
}

impl std::fmt::Display for Algorithm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// One point per ball plus the minimum pairwise distance, always recomputed
/// from the points (`+inf` for a single point).
#[derive(Debug, Clone, PartialEq)]
pub struct Solution {
    pub points: Vec<Point>,
    pub min_distance: f64,
    pub algorithm: Algorithm,
}

impl Solution {
    pub fn new(points: Vec<Point>, algorithm: Algorithm) -> Self {
        let min_distance = min_pairwise_distance(&points);
        Solution {
            points,
            min_distance,
            algorithm,
        }
    }

    /// Checks that every point lies in its ball within `tol`.
    pub fn check_containment(&self, inst: &BallInstance, tol: f64) -> Result<()> {
        if self.points.len() != inst.len() {
            return Err(Error::PointCountMismatch {
                expected: inst.len(),
                found: self.points.len(),
            });
        }
        for (index, (p, ball)) in self.points.iter().zip(inst.balls()).enumerate() {
            if p.len() != inst.dimension() {
                return Err(Error::DimensionMismatch {
                    expected: inst.dimension(),
                    found: p.len(),
                });
            }
            let excess = ball.excess(p);
            if !(excess <= tol) {
                return Err(Error::PointOutsideBall { index, excess });
            }
        }
        Ok(())
    }
}

/// Euclidean distance.
pub fn distance(p: &[f64], q: &[f64]) -> Result<f64> {
    if p.len() != q.len() {
        return Err(Error::DimensionMismatch {
            expected: p.len(),
            found: q.len(),
        });
    }
    Ok(dist(p, q))
}

/// Euclidean distance without the dimension check; callers guarantee equal lengths.
#[inline]
pub(crate) fn dist(p: &[f64], q: &[f64]) -> f64 {
    debug_assert_eq!(p.len(), q.len());
    p.iter()
        .zip(q)
        .map(|(a, b)| (a - b) * (a - b))
        .sum::<f64>()
        .sqrt()
}

pub(crate) fn dot(u: &[f64], v: &[f64]) -> f64 {
    u.iter().zip(v).map(|(a, b)| a * b).sum()
}

pub(crate) fn norm(u: &[f64]) -> f64 {
    dot(u, u).sqrt()
}

/// Minimum pairwise center distance `delta`.
pub fn min_center_distance(inst: &BallInstance) -> Result<f64> {
    inst.require_at_least(2)?;
    Ok(min_pairwise_distance(&inst.centers()))
}

/// Minimum distance over all pairs of points, `+inf` for fewer than two.
pub fn min_pairwise_distance(points: &[Point]) -> f64 {
    neighbors::nearest_two(points)
        .iter()
        .filter_map(|e| e.first.map(|n| n.distance))
        .fold(f64::INFINITY, f64::min)
}

/// Signed length of the projection of `q - p` onto the unit vector `direction`.
pub fn scalar_projection(direction: &[f64], p: &[f64], q: &[f64]) -> Result<f64> {
    if direction.len() != p.len() || p.len() != q.len() {
        return Err(Error::DimensionMismatch {
            expected: direction.len(),
            found: if direction.len() != p.len() {
                p.len()
            } else {
                q.len()
            },
        });
    }
    let n = norm(direction);
    if (n - 1.0).abs() > TOL {
        return Err(Error::NonUnitDirection { norm: n });
    }
    Ok(direction
        .iter()
        .zip(p.iter().zip(q))
        .map(|(u, (a, b))| u * (b - a))
        .sum())
}

/// Unit vector from `from` to `to`, `None` when the points coincide.
pub fn unit_direction(from: &[f64], to: &[f64]) -> Option<Point> {
    let len = dist(from, to);
    if len == 0.0 {
        return None;
    }
    Some(from.iter().zip(to).map(|(a, b)| (b - a) / len).collect())
}

/// The point on segment `center -> p` at `factor * |center p|` from `center`.
pub fn scale_toward(center: &[f64], p: &[f64], factor: f64) -> Point {
    center
        .iter()
        .zip(p)
        .map(|(c, x)| c + factor * (x - c))
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub enum Violation {
    Overlap {
        i: usize,
        j: usize,
        distance: f64,
        radius_sum: f64,
    },
    NonUnitRadius {
        index: usize,
        radius: f64,
    },
}

/// Violated instance requirements; empty means valid.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl std::fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_valid() {
            return f.write_str("valid");
        }
        for (k, v) in self.violations.iter().enumerate() {
            if k > 0 {
                f.write_str("; ")?;
            }
            match v {
                Violation::Overlap {
                    i,
                    j,
                    distance,
                    radius_sum,
                } => write!(
                    f,
                    "balls {i} and {j} overlap (center distance {distance} < {radius_sum})"
                )?,
                Violation::NonUnitRadius { index, radius } => {
                    write!(f, "ball {index} has radius {radius}, expected 1")?
                }
            }
        }
        Ok(())
    }
}

pub fn validate(
    inst: &BallInstance,
    require_disjoint: bool,
    require_unit: bool,
) -> ValidationReport {
    let mut violations = Vec::new();
    if require_unit {
        for (index, b) in inst.balls().iter().enumerate() {
            if (b.radius - 1.0).abs() > TOL {
                violations.push(Violation::NonUnitRadius {
                    index,
                    radius: b.radius,
                });
            }
        }
    }
    if require_disjoint {
        let balls = inst.balls();
        for i in 0..balls.len() {
            for j in i + 1..balls.len() {
                let distance = dist(&balls[i].center, &balls[j].center);
                let radius_sum = balls[i].radius + balls[j].radius;
                if distance < radius_sum - TOL {
                    violations.push(Violation::Overlap {
                        i,
                        j,
                        distance,
                        radius_sum,
                    });
                }
            }
        }
    }
    ValidationReport { violations }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    #[test]
    fn distance_examples() {
        assert_eq!(distance(&[0.0, 0.0], &[3.0, 4.0]).unwrap(), 5.0);
        assert_eq!(distance(&[1.0, 1.0], &[1.0, 1.0]).unwrap(), 0.0);
        assert_abs_diff_eq!(
            distance(&[0.0, 0.0, 0.0], &[1.0, 1.0, 1.0]).unwrap(),
            3f64.sqrt(),
            epsilon = 1e-15
        );
        assert!(matches!(
            distance(&[0.0], &[0.0, 1.0]),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn min_center_distance_examples() {
        let inst = BallInstance::unit_balls([[0.0, 0.0], [2.0, 0.0], [5.0, 0.0]]).unwrap();
        assert_eq!(min_center_distance(&inst).unwrap(), 2.0);
        let inst = BallInstance::unit_balls([[1.0, 1.0], [1.0, 1.0]]).unwrap();
        assert_eq!(min_center_distance(&inst).unwrap(), 0.0);
        let inst = BallInstance::unit_balls([[1.0, 1.0]]).unwrap();
        assert!(matches!(
            min_center_distance(&inst),
            Err(Error::TooFewBalls { .. })
        ));
    }

    #[test]
    fn projection_examples() {
        let (p, q) = ([0.0, 0.0], [3.0, 4.0]);
        assert_eq!(scalar_projection(&[1.0, 0.0], &p, &q).unwrap(), 3.0);
        assert_eq!(scalar_projection(&[0.0, 1.0], &p, &q).unwrap(), 4.0);
        let s = std::f64::consts::FRAC_1_SQRT_2;
        assert_abs_diff_eq!(
            scalar_projection(&[s, s], &p, &[2.0, 0.0]).unwrap(),
            2f64.sqrt(),
            epsilon = 1e-15
        );
        assert!(matches!(
            scalar_projection(&[1.0, 1.0], &p, &q),
            Err(Error::NonUnitDirection { .. })
        ));
    }

    #[test]
    fn validate_examples() {
        let tangent = BallInstance::unit_balls([[0.0, 0.0], [2.0, 0.0]]).unwrap();
        assert!(validate(&tangent, true, true).is_valid());

        let overlap = BallInstance::unit_balls([[0.0, 0.0], [1.0, 0.0]]).unwrap();
        let report = validate(&overlap, true, false);
        assert!(matches!(
            report.violations.as_slice(),
            [Violation::Overlap { i: 0, j: 1, .. }]
        ));

        let big = BallInstance::new(2, vec![Ball::new([0.0, 0.0], 2.0)]).unwrap();
        assert!(matches!(
            validate(&big, false, true).violations.as_slice(),
            [Violation::NonUnitRadius { index: 0, .. }]
        ));
        assert!(validate(&big, true, false).is_valid());
    }

    #[test]
    fn instance_rejects_malformed_input() {
        assert!(BallInstance::new(2, vec![]).is_err());
        assert!(BallInstance::new(2, vec![Ball::new([0.0], 1.0)]).is_err());
        assert!(BallInstance::new(1, vec![Ball::new([0.0], -1.0)]).is_err());
        assert!(BallInstance::new(1, vec![Ball::new([f64::NAN], 1.0)]).is_err());
    }

    #[test]
    fn single_point_solution_has_infinite_min_distance() {
        let s = Solution::new(vec![vec![0.0, 0.0]], Algorithm::Centers);
        assert_eq!(s.min_distance, f64::INFINITY);
    }

    fn point(d: usize) -> impl Strategy<Value = Vec<f64>> {
        prop::collection::vec(-100.0..100.0f64, d)
    }

    proptest! {
        #[test]
        fn triangle_inequality(p in point(3), q in point(3), r in point(3)) {
            let pr = distance(&p, &r).unwrap();
            let pq = distance(&p, &q).unwrap();
            let qr = distance(&q, &r).unwrap();
            prop_assert!(pr <= pq + qr + 1e-12);
        }

        #[test]
        fn projection_bounded_by_length(
            angle in 0.0..std::f64::consts::TAU,
            p in point(2),
            q in point(2),
        ) {
            let u = [angle.cos(), angle.sin()];
            let proj = scalar_projection(&u, &p, &q).unwrap();
            prop_assert!(proj.abs() <= distance(&p, &q).unwrap() + 1e-12);
        }

        #[test]
        fn min_center_distance_permutation_invariant(
            centers in prop::collection::vec(point(2), 2..20),
            rot in 0usize..20,
        ) {
            let inst = BallInstance::unit_balls(centers.clone()).unwrap();
            let mut shuffled = centers;
            let k = rot % shuffled.len();
            shuffled.rotate_left(k);
            shuffled.reverse();
            let other = BallInstance::unit_balls(shuffled).unwrap();
            prop_assert_eq!(
                min_center_distance(&inst).unwrap(),
                min_center_distance(&other).unwrap()
            );
        }
    }
}
