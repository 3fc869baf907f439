//! Seeded instance generators. Each is a pure function of its parameters.
//!
//! Disjoint kinds place balls uniformly in a cube sized for a low fill
//! fraction and reject any ball closer than `r_i + r_j + min_gap` to one
//! already placed. The overlapping kind drops unit balls in a cube small
//! enough that many pairs overlap.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::geometry::{dist, Ball, BallInstance};
use crate::rng::SeededRng;

/// Fraction of the cube covered by the (gap-inflated) balls.
pub const FILL_FRACTION: f64 = 0.12;
/// Placement attempts per ball before giving up.
pub const ATTEMPTS_PER_BALL: usize = 10_000;
/// Radius range of `disjoint-arbitrary`.
pub const RADIUS_RANGE: (f64, f64) = (0.25, 2.0);

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GeneratorKind {
    DisjointUnit,
    DisjointArbitrary,
    UnitOverlap,
}

impl GeneratorKind {
    pub fn name(self) -> &'static str {
        match self {
            GeneratorKind::DisjointUnit => "disjoint-unit",
            GeneratorKind::DisjointArbitrary => "disjoint-arbitrary",
            GeneratorKind::UnitOverlap => "unit-overlap",
        }
    }
}

impl fmt::Display for GeneratorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for GeneratorKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "disjoint-unit" => Ok(GeneratorKind::DisjointUnit),
            "disjoint-arbitrary" => Ok(GeneratorKind::DisjointArbitrary),
            "unit-overlap" => Ok(GeneratorKind::UnitOverlap),
            other => Err(Error::InvalidArgument(format!(
                "unknown generator kind {other:?} (expected disjoint-unit, disjoint-arbitrary or unit-overlap)"
            ))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GeneratorParams {
    pub kind: GeneratorKind,
    pub n: usize,
    pub seed: u64,
    pub min_gap: f64,
    pub dimension: usize,
}

impl GeneratorParams {
    pub fn new(kind: GeneratorKind, n: usize, seed: u64) -> Self {
        GeneratorParams {
            kind,
            n,
            seed,
            min_gap: 0.0,
            dimension: 2,
        }
    }

    pub fn min_gap(mut self, gap: f64) -> Self {
        self.min_gap = gap;
        self
    }

    pub fn dimension(mut self, d: usize) -> Self {
        self.dimension = d;
        self
    }
}

fn unit_ball_volume(d: usize) -> f64 {
    let mut v = [1.0, 2.0];
    for k in 2..=d {
        v[k % 2] *= 2.0 * std::f64::consts::PI / k as f64;
    }
    v[d % 2]
}

/// Mean of `(r + g/2)^d` for `r` uniform in `[a, b]` (or fixed when `a == b`).
fn mean_inflated_power(a: f64, b: f64, g: f64, d: usize) -> f64 {
    let (a, b) = (a + g / 2.0, b + g / 2.0);
    let p = d as i32;
    if b - a < 1e-12 {
        return a.powi(p);
    }
    (b.powi(p + 1) - a.powi(p + 1)) / ((p + 1) as f64 * (b - a))
}

pub fn generate(params: &GeneratorParams) -> Result<BallInstance> {
    let GeneratorParams {
        kind,
        n,
        seed,
        min_gap,
        dimension: d,
    } = *params;
    if n == 0 {
        return Err(Error::InvalidArgument("n must be at least 1".into()));
    }
    if d == 0 {
        return Err(Error::ZeroDimension);
    }
    if !(min_gap.is_finite() && min_gap >= 0.0) {
        return Err(Error::InvalidArgument(format!(
            "min gap must be >= 0, got {min_gap}"
        )));
    }
    let mut rng = SeededRng::new(seed);
    let balls = match kind {
        GeneratorKind::UnitOverlap => {
            let side = 1.5 * (n as f64).powf(1.0 / d as f64);
            (0..n)
                .map(|_| Ball::unit((0..d).map(|_| rng.uniform(0.0, side)).collect::<Vec<_>>()))
                .collect()
        }
        GeneratorKind::DisjointUnit => place_disjoint(&mut rng, n, d, min_gap, (1.0, 1.0))?,
        GeneratorKind::DisjointArbitrary => place_disjoint(&mut rng, n, d, min_gap, RADIUS_RANGE)?,
    };
    BallInstance::new(d, balls)
}

fn place_disjoint(
    rng: &mut SeededRng,
    n: usize,
    d: usize,
    gap: f64,
    (r_lo, r_hi): (f64, f64),
) -> Result<Vec<Ball>> {
    let volume = n as f64 * unit_ball_volume(d) * mean_inflated_power(r_lo, r_hi, gap, d);
    let side = (volume / FILL_FRACTION).powf(1.0 / d as f64);
    let cell = 2.0 * r_hi + gap;
    let mut index: HashMap<Vec<i64>, Vec<usize>> = HashMap::new();
    let mut balls: Vec<Ball> = Vec::with_capacity(n);
    let key = |p: &[f64]| -> Vec<i64> { p.iter().map(|x| (x / cell).floor() as i64).collect() };
    for placed in 0..n {
        let radius = if r_hi > r_lo {
            rng.uniform(r_lo, r_hi)
        } else {
            r_lo
        };
        let mut ok = None;
        for _ in 0..ATTEMPTS_PER_BALL {
            let center: Vec<f64> = (0..d).map(|_| rng.uniform(0.0, side)).collect();
            let home = key(&center);
            let clear = neighbor_cells(&home).iter().all(|k| {
                index.get(k).is_none_or(|ids| {
                    ids.iter()
                        .all(|&j| dist(&balls[j].center, &center) >= balls[j].radius + radius + gap)
                })
            });
            if clear {
                ok = Some((center, home));
                break;
            }
        }
        let Some((center, home)) = ok else {
            return Err(Error::GeneratorExhausted {
                placed,
                requested: n,
                attempts: ATTEMPTS_PER_BALL,
            });
        };
        index.entry(home).or_default().push(placed);
        balls.push(Ball::new(center, radius));
    }
    Ok(balls)
}

/// The `3^d` cells around `home`, itself included.
fn neighbor_cells(home: &[i64]) -> Vec<Vec<i64>> {
    let mut out = vec![home.to_vec()];
    for axis in 0..home.len() {
        let mut next = Vec::with_capacity(out.len() * 3);
        for cell in &out {
            for delta in [-1, 0, 1] {
                let mut c = cell.clone();
                c[axis] += delta;
                next.push(c);
            }
        }
        out = next;
    }
    out
}
