//! Upper bounds on the optimum, a brute-force lower-bound oracle, and
//! per-solution ratio certificates.

use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::geometry::{dist, min_pairwise_distance, Ball, BallInstance, Solution, TOL};
use crate::neighbors::neighbor_info;
use crate::ratio::f;

/// Largest instance the brute-force oracle accepts.
pub const ORACLE_MAX_BALLS: usize = 5;
/// Default cap on search nodes for [`brute_force_opt`].
pub const DEFAULT_NODE_BUDGET: u64 = 2_000_000_000;

/// Which argument produced an upper bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundSource {
    /// `|o_i o_j| + r_i + r_j` for the closest such pair.
    TwoBalls,
    /// The three-disk packing bound `f(s)` for unit disks in the plane.
    ThreeDisks,
    /// A single ball: nothing to bound.
    Trivial,
}

impl BoundSource {
    pub fn name(self) -> &'static str {
        match self {
            BoundSource::TwoBalls => "two-balls",
            BoundSource::ThreeDisks => "three-disks",
            BoundSource::Trivial => "trivial",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Certificate {
    /// Recomputed minimum pairwise distance of the solution.
    pub achieved: f64,
    pub opt_upper: f64,
    /// Best value found by the oracle, if it was run.
    pub opt_lower: Option<f64>,
    /// `achieved / opt_upper`, a lower bound on the true ratio.
    pub ratio_lower_bound: f64,
    pub bound_provenance: BoundSource,
}

/// Largest possible distance between a point of `b1` and a point of `b2`.
pub fn opt_two_balls(b1: &Ball, b2: &Ball) -> f64 {
    dist(&b1.center, &b2.center) + b1.radius + b2.radius
}

fn min_two_ball_bound(inst: &BallInstance) -> f64 {
    let balls = inst.balls();
    let mut best = f64::INFINITY;
    for i in 0..balls.len() {
        for j in i + 1..balls.len() {
            best = best.min(opt_two_balls(&balls[i], &balls[j]));
        }
    }
    best
}

/// Upper bound for disjoint balls: the tightest two-ball bound, at most `2 delta`.
pub fn opt_upper_disjoint(inst: &BallInstance) -> Result<f64> {
    inst.require_at_least(2)?;
    inst.require_disjoint()?;
    Ok(min_two_ball_bound(inst))
}

/// Upper bound for unit balls: `delta + 2`, and in the plane with at least
/// three disks also `f(s2)` where `s2` is the smallest second-nearest center
/// distance.
pub fn opt_upper_unit(inst: &BallInstance) -> Result<f64> {
    inst.require_unit()?;
    inst.require_at_least(2)?;
    Ok(unit_bound(inst)?.0)
}

fn unit_bound(inst: &BallInstance) -> Result<(f64, BoundSource)> {
    let info = neighbor_info(inst);
    let two = info.min_distance() + 2.0;
    if inst.dimension() == 2 && inst.len() >= 3 {
        let s2 = (0..info.len())
            .map(|i| info.second(i).1)
            .fold(f64::INFINITY, f64::min);
        let three = f(s2)?;
        if three < two {
            return Ok((three, BoundSource::ThreeDisks));
        }
    }
    Ok((two, BoundSource::TwoBalls))
}

/// Tightest upper bound on the optimum that applies to `inst`.
pub fn opt_upper(inst: &BallInstance) -> Result<(f64, BoundSource)> {
    if inst.len() < 2 {
        return Ok((f64::INFINITY, BoundSource::Trivial));
    }
    let two = (min_two_ball_bound(inst), BoundSource::TwoBalls);
    if inst.is_unit() {
        let unit = unit_bound(inst)?;
        if unit.0 < two.0 {
            return Ok(unit);
        }
    }
    Ok(two)
}

/// Certificate for `sol`; the points must lie in their balls.
pub fn certify(sol: &Solution, inst: &BallInstance) -> Result<Certificate> {
    sol.check_containment(inst, TOL * inst.max_radius().max(1.0))?;
    let achieved = min_pairwise_distance(&sol.points);
    let (opt_upper, bound_provenance) = opt_upper(inst)?;
    let ratio_lower_bound = if inst.len() < 2 || opt_upper == 0.0 {
        1.0
    } else {
        achieved / opt_upper
    };
    Ok(Certificate {
        achieved,
        opt_upper,
        opt_lower: None,
        ratio_lower_bound,
        bound_provenance,
    })
}

/// [`certify`] plus the oracle's best-found value as `opt_lower`.
pub fn certify_with_oracle(sol: &Solution, inst: &BallInstance, k: usize) -> Result<Certificate> {
    let mut cert = certify(sol, inst)?;
    cert.opt_lower = Some(brute_force_opt(inst, k)?.best);
    Ok(cert)
}

#[derive(Debug, Clone, PartialEq)]
pub struct OracleResult {
    /// Best minimum distance over the grid product; a lower bound on the optimum.
    pub best: f64,
    /// `r_max * sqrt(d) / (k - 1)`.
    pub grid_error: f64,
    /// Search nodes visited.
    pub nodes: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct OracleConfig {
    /// Grid points per axis.
    pub k: usize,
    pub node_budget: u64,
    /// Stop once this value is reached (e.g. a known upper bound).
    pub stop_at: Option<f64>,
}

impl OracleConfig {
    pub fn new(k: usize) -> Self {
        OracleConfig {
            k,
            node_budget: DEFAULT_NODE_BUDGET,
            stop_at: None,
        }
    }
}

/// Grid points of the bounding box of `ball`, `k` per axis including both
/// ends, kept if inside the ball; sorted by decreasing distance from the center.
pub fn ball_grid(ball: &Ball, k: usize) -> Vec<Vec<f64>> {
    let d = ball.dimension();
    if ball.radius == 0.0 || k == 1 {
        return vec![ball.center.clone()];
    }
    let step = 2.0 * ball.radius / (k - 1) as f64;
    let mut out: Vec<(f64, Vec<f64>)> = Vec::new();
    let mut idx = vec![0usize; d];
    loop {
        let offset: Vec<f64> = idx
            .iter()
            .map(|&t| -ball.radius + step * t as f64)
            .collect();
        let r = offset.iter().map(|x| x * x).sum::<f64>().sqrt();
        if r <= ball.radius * (1.0 + 1e-12) {
            let p = ball
                .center
                .iter()
                .zip(&offset)
                .map(|(c, o)| c + o)
                .collect();
            out.push((r, p));
        }
        let mut axis = 0;
        while axis < d {
            idx[axis] += 1;
            if idx[axis] < k {
                break;
            }
            idx[axis] = 0;
            axis += 1;
        }
        if axis == d {
            break;
        }
    }
    // Stable sort keeps the enumeration order among equal radii.
    out.sort_by(|a, b| b.0.total_cmp(&a.0));
    out.into_iter().map(|(_, p)| p).collect()
}

/// Brute force over per-ball grids with `k` points per axis (see [`ball_grid`]).
pub fn brute_force_opt(inst: &BallInstance, k: usize) -> Result<OracleResult> {
    brute_force_opt_with(inst, &OracleConfig::new(k))
}

pub fn brute_force_opt_with(inst: &BallInstance, cfg: &OracleConfig) -> Result<OracleResult> {
    let n = inst.len();
    if n > ORACLE_MAX_BALLS {
        return Err(Error::BudgetExceeded(format!(
            "{n} balls; the oracle handles at most {ORACLE_MAX_BALLS}"
        )));
    }
    if cfg.k == 0 {
        return Err(Error::InvalidArgument(
            "grid resolution k must be positive".into(),
        ));
    }
    let d = inst.dimension();
    let grid_error = if cfg.k > 1 {
        inst.max_radius() * (d as f64).sqrt() / (cfg.k - 1) as f64
    } else {
        2.0 * inst.max_radius()
    };
    if n < 2 {
        return Ok(OracleResult {
            best: f64::INFINITY,
            grid_error,
            nodes: 0,
        });
    }

    let order = search_order(inst);
    let grids: Vec<Vec<Vec<f64>>> = order
        .iter()
        .map(|&i| ball_grid(&inst.balls()[i], cfg.k))
        .collect();
    let seed = local_search(&grids);
    let search = Search {
        grids: &grids,
        best: AtomicU64::new(seed.to_bits()),
        nodes: AtomicU64::new(0),
        stop: AtomicBool::new(false),
        over_budget: AtomicBool::new(false),
        budget: cfg.node_budget,
        stop_at: cfg.stop_at.unwrap_or(f64::INFINITY),
    };
    if seed >= search.stop_at {
        search.stop.store(true, Ordering::Relaxed);
    }
    let all: Vec<Vec<u32>> = grids
        .iter()
        .map(|g| (0..g.len() as u32).collect())
        .collect();
    (0..grids[0].len()).into_par_iter().for_each(|i| {
        let mut chosen = vec![i as u32];
        search.descend(&mut chosen, f64::INFINITY, &all[1..]);
    });
    if search.over_budget.load(Ordering::Relaxed) {
        return Err(Error::BudgetExceeded(format!(
            "more than {} search nodes at k = {}",
            cfg.node_budget, cfg.k
        )));
    }
    Ok(OracleResult {
        best: f64::from_bits(search.best.load(Ordering::Relaxed)),
        grid_error,
        nodes: search.nodes.load(Ordering::Relaxed),
    })
}

/// Closest pair first, then repeatedly the ball closest to those already placed.
fn search_order(inst: &BallInstance) -> Vec<usize> {
    let n = inst.len();
    let mut best = (0, 1, f64::INFINITY);
    for i in 0..n {
        for j in i + 1..n {
            let d = inst.center_distance(i, j);
            if d < best.2 {
                best = (i, j, d);
            }
        }
    }
    let mut order = vec![best.0, best.1];
    while order.len() < n {
        let next = (0..n)
            .filter(|i| !order.contains(i))
            .min_by(|&a, &b| {
                let da = order
                    .iter()
                    .map(|&o| inst.center_distance(a, o))
                    .fold(f64::INFINITY, f64::min);
                let db = order
                    .iter()
                    .map(|&o| inst.center_distance(b, o))
                    .fold(f64::INFINITY, f64::min);
                da.total_cmp(&db)
            })
            .expect("a ball remains");
        order.push(next);
    }
    order
}

/// Coordinate ascent over the grids from the innermost points; its value is
/// attained by a grid configuration, so it is a valid starting incumbent.
fn local_search(grids: &[Vec<Vec<f64>>]) -> f64 {
    let n = grids.len();
    let mut pick: Vec<usize> = grids.iter().map(|g| g.len() - 1).collect();
    let value = |pick: &[usize]| {
        let pts: Vec<Vec<f64>> = pick
            .iter()
            .enumerate()
            .map(|(i, &p)| grids[i][p].clone())
            .collect();
        min_pairwise_distance(&pts)
    };
    let mut current = value(&pick);
    for _ in 0..8 {
        let mut improved = false;
        for i in 0..n {
            let mut best = (pick[i], f64::NEG_INFINITY);
            for (c, p) in grids[i].iter().enumerate() {
                let m = (0..n)
                    .filter(|&j| j != i)
                    .map(|j| dist(p, &grids[j][pick[j]]))
                    .fold(f64::INFINITY, f64::min);
                if m > best.1 {
                    best = (c, m);
                }
            }
            pick[i] = best.0;
        }
        let v = value(&pick);
        if v > current {
            current = v;
            improved = true;
        }
        if !improved {
            break;
        }
    }
    current
}

struct Search<'a> {
    grids: &'a [Vec<Vec<f64>>],
    /// Bits of the best value found; non-negative floats order like their bits.
    best: AtomicU64,
    nodes: AtomicU64,
    stop: AtomicBool,
    over_budget: AtomicBool,
    budget: u64,
    stop_at: f64,
}

impl Search<'_> {
    fn best(&self) -> f64 {
        f64::from_bits(self.best.load(Ordering::Relaxed))
    }

    /// `chosen[t]` indexes `grids[t]`; `rest[j]` lists the still-admissible
    /// candidates of ball `chosen.len() + j`.
    fn descend(&self, chosen: &mut Vec<u32>, cur_min: f64, rest: &[Vec<u32>]) {
        if self.stop.load(Ordering::Relaxed) {
            return;
        }
        let level = chosen.len();
        let last = chosen[level - 1] as usize;
        let p = &self.grids[level - 1][last];
        let visited = self.nodes.fetch_add(1, Ordering::Relaxed);
        if visited >= self.budget {
            self.over_budget.store(true, Ordering::Relaxed);
            self.stop.store(true, Ordering::Relaxed);
            return;
        }
        let mut m = cur_min;
        for (t, &c) in chosen[..level - 1].iter().enumerate() {
            m = m.min(dist(p, &self.grids[t][c as usize]));
        }
        let best = self.best();
        if m <= best {
            return;
        }
        if rest.is_empty() {
            self.best.fetch_max(m.to_bits(), Ordering::Relaxed);
            if m >= self.stop_at {
                self.stop.store(true, Ordering::Relaxed);
            }
            return;
        }
        let mut filtered = Vec::with_capacity(rest.len());
        for (j, cands) in rest.iter().enumerate() {
            let grid = &self.grids[level + j];
            let keep: Vec<u32> = cands
                .iter()
                .copied()
                .filter(|&c| dist(p, &grid[c as usize]) > best)
                .collect();
            if keep.is_empty() {
                return;
            }
            filtered.push(keep);
        }
        let (next, tail) = filtered.split_first().expect("rest is non-empty");
        for &c in next {
            chosen.push(c);
            self.descend(chosen, m, tail);
            chosen.pop();
            if self.stop.load(Ordering::Relaxed) {
                return;
            }
        }
    }
}
