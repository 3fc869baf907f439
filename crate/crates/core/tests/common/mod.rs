//! Samplers and numeric checks shared by the integration suites.

#![allow(dead_code)]

use dispersion::geometry::{min_pairwise_distance, Ball, BallInstance};
use dispersion::ratio::f;
use dispersion::rng::SeededRng;

pub fn dist(p: &[f64], q: &[f64]) -> f64 {
    p.iter()
        .zip(q)
        .map(|(a, b)| (a - b) * (a - b))
        .sum::<f64>()
        .sqrt()
}

/// `center + factor * (p - center)`.
pub fn toward(center: &[f64], p: &[f64], factor: f64) -> Vec<f64> {
    center
        .iter()
        .zip(p)
        .map(|(c, x)| c + factor * (x - c))
        .collect()
}

/// Minimum over the `101 x 720` grid of `(1 + a cos(t) / 2) / sqrt(1 + a^2 + 2 a cos(t))`.
pub fn projection_ratio_grid_min() -> f64 {
    let mut best = f64::INFINITY;
    for i in 0..=100 {
        let a = i as f64 / 100.0;
        for k in 0..720 {
            let t = 2.0 * std::f64::consts::PI * k as f64 / 720.0;
            let v = (1.0 + 0.5 * a * t.cos()) / (1.0 + a * a + 2.0 * a * t.cos()).sqrt();
            best = best.min(v);
        }
    }
    best
}

/// Smallest `<u, q_j - q_i> / |p_i p_j|` over random disjoint ball pairs,
/// where `u` is the unit vector between the centers and `q` is `p` pulled
/// halfway to its center.
pub fn shrunk_projection_min_ratio(rng: &mut SeededRng, d: usize, samples: usize) -> f64 {
    let mut worst = f64::INFINITY;
    for _ in 0..samples {
        let gap = rng.uniform(0.1, 5.0);
        let oi: Vec<f64> = (0..d).map(|_| rng.uniform(-3.0, 3.0)).collect();
        let u = rng.unit_vector(d);
        let oj: Vec<f64> = oi.iter().zip(&u).map(|(a, b)| a + gap * b).collect();
        let ri = gap * rng.uniform01();
        let rj = (gap - ri) * rng.uniform01();
        let pi = rng.point_in_ball(&oi, ri);
        let pj = rng.point_in_ball(&oj, rj);
        let qi = toward(&oi, &pi, 0.5);
        let qj = toward(&oj, &pj, 0.5);
        let proj: f64 = u
            .iter()
            .zip(qi.iter().zip(&qj))
            .map(|(a, (x, y))| a * (y - x))
            .sum();
        let len = dist(&pi, &pj);
        if len > 0.0 {
            worst = worst.min(proj / len);
        }
    }
    worst
}

/// Largest `t - f(s)` over random unit-disk triples, for each choice of the
/// middle disk: `t` is the minimum pairwise distance of points drawn in the
/// disks and `s` the larger distance from the middle center to the others.
pub fn three_disk_max_excess(rng: &mut SeededRng, samples: usize) -> f64 {
    let mut worst = f64::NEG_INFINITY;
    for _ in 0..samples {
        let spread = rng.uniform(0.0, 8.0);
        let centers: Vec<Vec<f64>> = (0..3)
            .map(|_| vec![rng.uniform(0.0, spread), rng.uniform(0.0, spread)])
            .collect();
        let pts: Vec<Vec<f64>> = centers
            .iter()
            .map(|c| {
                // Half the draws on the boundary, where extremes live.
                if rng.index(2) == 0 {
                    let u = rng.unit_vector(2);
                    vec![c[0] + u[0], c[1] + u[1]]
                } else {
                    rng.point_in_ball(c, 1.0)
                }
            })
            .collect();
        let t = min_pairwise_distance(&pts);
        for mid in 0..3 {
            let s = (0..3)
                .filter(|&j| j != mid)
                .map(|j| dist(&centers[mid], &centers[j]))
                .fold(0.0, f64::max);
            worst = worst.max(t - f(s).unwrap());
        }
    }
    worst
}

/// Smallest `min_dist(Q) - (min_dist(P) - 2(1 - mu))` where `P` is a random
/// point set in random unit disks and `Q` is `P` pulled toward the centers
/// by the factor `mu`.
pub fn shrink_min_slack(rng: &mut SeededRng, samples: usize) -> f64 {
    let mut worst = f64::INFINITY;
    for _ in 0..samples {
        let n = 2 + rng.index(5);
        let side = rng.uniform(0.5, 6.0);
        let centers: Vec<Vec<f64>> = (0..n)
            .map(|_| vec![rng.uniform(0.0, side), rng.uniform(0.0, side)])
            .collect();
        let p: Vec<Vec<f64>> = centers.iter().map(|c| rng.point_in_ball(c, 1.0)).collect();
        let mu = rng.uniform01();
        let q: Vec<Vec<f64>> = centers
            .iter()
            .zip(&p)
            .map(|(c, x)| toward(c, x, mu))
            .collect();
        let m = min_pairwise_distance(&p);
        worst = worst.min(min_pairwise_distance(&q) - (m - 2.0 * (1.0 - mu)));
    }
    worst
}

/// A small planar instance whose balls sit close together: each new ball
/// touches-plus-gap a random earlier one, overlaps are rejected.
pub fn tight_instance(rng: &mut SeededRng, n: usize, unit: bool, max_gap: f64) -> BallInstance {
    let radius = |rng: &mut SeededRng| if unit { 1.0 } else { rng.uniform(0.25, 2.0) };
    let first = radius(rng);
    let mut balls = vec![Ball::new([0.0, 0.0], first)];
    while balls.len() < n {
        let r = radius(rng);
        let anchor = balls[rng.index(balls.len())].clone();
        let u = rng.unit_vector(2);
        let reach = anchor.radius + r + rng.uniform(0.0, max_gap);
        let c = vec![
            anchor.center[0] + reach * u[0],
            anchor.center[1] + reach * u[1],
        ];
        if balls.iter().all(|b| dist(&b.center, &c) >= b.radius + r) {
            balls.push(Ball::new(c, r));
        }
    }
    BallInstance::new(2, balls).unwrap()
}

/// Unit disks dropped in a small square, overlaps allowed.
pub fn tight_unit_overlap(rng: &mut SeededRng, n: usize) -> BallInstance {
    let side = rng.uniform(0.5, 4.0);
    let centers: Vec<[f64; 2]> = (0..n)
        .map(|_| [rng.uniform(0.0, side), rng.uniform(0.0, side)])
        .collect();
    BallInstance::unit_balls(centers).unwrap()
}

/// Second-nearest center distance of every ball, by sorting all distances.
pub fn second_nearest(inst: &BallInstance) -> Vec<f64> {
    let c = inst.centers();
    (0..c.len())
        .map(|i| {
            let mut ds: Vec<f64> = (0..c.len())
                .filter(|&j| j != i)
                .map(|j| dist(&c[i], &c[j]))
                .collect();
            ds.sort_by(f64::total_cmp);
            ds.get(1).copied().unwrap_or(f64::INFINITY)
        })
        .collect()
}

/// Absorbs round-off from adding `z` repeatedly.
pub const SLACK: f64 = 1e-12;

/// Greedy: leftmost placement with consecutive gaps at least `z`.
pub fn line_feasible(iv: &[(f64, f64)], z: f64) -> bool {
    let mut prev = f64::NEG_INFINITY;
    for &(a, b) in iv {
        let x = a.max(prev + z);
        if x > b + SLACK {
            return false;
        }
        prev = x.min(b);
    }
    true
}

/// For fixed `z`, later points only move right as `x_1` grows while the
/// wrap gap `x_1 + L - x_n` only improves, so `x_1` is taken as large as the
/// upper ends allow and the rest are placed greedily.
pub fn cycle_feasible(iv: &[(f64, f64)], len: f64, z: f64) -> bool {
    let x1 = iv
        .iter()
        .enumerate()
        .map(|(i, &(_, b))| b - i as f64 * z)
        .fold(f64::INFINITY, f64::min);
    if x1 < iv[0].0 - SLACK {
        return false;
    }
    let mut prev = x1;
    for &(a, b) in &iv[1..] {
        let x = a.max(prev + z);
        if x > b + SLACK {
            return false;
        }
        prev = x.min(b);
    }
    prev <= x1 + len - z + SLACK
}

pub fn bisect_max(mut feasible: impl FnMut(f64) -> bool, hi: f64) -> f64 {
    let (mut lo, mut hi) = (0.0, hi);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if feasible(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    lo
}

pub fn line_oracle(iv: &[(f64, f64)]) -> f64 {
    let span = iv.last().unwrap().1 - iv[0].0;
    bisect_max(|z| line_feasible(iv, z), span / (iv.len() - 1) as f64 + 1.0)
}

pub fn cycle_oracle(iv: &[(f64, f64)], len: f64) -> f64 {
    bisect_max(|z| cycle_feasible(iv, len, z), len / iv.len() as f64 + 1.0)
}

pub fn random_intervals(rng: &mut SeededRng) -> Vec<(f64, f64)> {
    let n = 2 + rng.index(14);
    let mut pos = rng.uniform(0.0, 2.0);
    let mut out = Vec::with_capacity(n);
    for _ in 0..n {
        let width = if rng.index(5) == 0 {
            0.0
        } else {
            rng.uniform(0.0, 3.0)
        };
        out.push((pos, pos + width));
        pos += width
            + if rng.index(6) == 0 {
                0.0
            } else {
                rng.uniform(0.0, 4.0)
            };
    }
    out
}
