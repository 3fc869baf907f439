//! Portfolio for unit balls that may overlap: the centers, A1, and A2 on
//! the concentric balls of radius `mu = min(delta / 2, 1)`, which are
//! pairwise disjoint. The best recomputed minimum distance wins.

use crate::a1::solve_a1;
use crate::a2::solve_a2;
use crate::centers::solve_centers;
use crate::error::{Error, Result};
use crate::geometry::{min_pairwise_distance, Algorithm, Ball, BallInstance, Solution};
use crate::ratio::c;

#[derive(Debug, Clone, PartialEq)]
pub enum CandidateResult {
    Solved(Solution),
    Skipped(String),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Candidate {
    pub algorithm: Algorithm,
    pub result: CandidateResult,
}

impl Candidate {
    pub fn min_distance(&self) -> Option<f64> {
        match &self.result {
            CandidateResult::Solved(s) => Some(s.min_distance),
            CandidateResult::Skipped(_) => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct HybridOutcome {
    pub solution: Solution,
    pub winner: Algorithm,
    /// In the fixed order centers, A1, A2.
    pub candidates: Vec<Candidate>,
    pub delta: f64,
    pub mu: f64,
    /// Instance-level ratio guarantee of the portfolio, `None` when `delta = 0`.
    pub guarantee: Option<f64>,
}

/// Concentric balls of radius `mu`.
pub fn shrink_instance(inst: &BallInstance, mu: f64) -> Result<BallInstance> {
    inst.require_unit()?;
    if !(0.0..=1.0).contains(&mu) {
        return Err(Error::OutOfDomain {
            function: "shrink_instance",
            value: mu,
            domain: "[0, 1]",
        });
    }
    let balls = inst
        .balls()
        .iter()
        .map(|b| Ball::new(b.center.clone(), mu))
        .collect();
    BallInstance::new(inst.dimension(), balls)
}

/// Worst-case ratio the portfolio guarantees at minimum center distance
/// `delta` with the A2 accuracy `epsilon`.
///
/// A1 contributes `c(delta)`. Shrinking loses at most `2(1 - mu)` of the
/// optimum, and the optimum is at least `delta`, so A2 on the shrunk balls
/// contributes `(1 - eps)(2 mu - 1) / (mu sqrt 2)` with `mu = min(delta/2, 1)`.
pub fn portfolio_guarantee(delta: f64, epsilon: f64) -> Option<f64> {
    if !(delta > 0.0) {
        return None;
    }
    if delta.is_infinite() {
        return Some(1.0);
    }
    let mu = (delta / 2.0).min(1.0);
    let from_a2 = (1.0 - epsilon) * (2.0 * mu - 1.0) / (mu * std::f64::consts::SQRT_2);
    let from_a1 = c(delta).ok()?;
    Some(from_a1.max(from_a2))
}

pub fn solve_hybrid(inst: &BallInstance, epsilon: f64) -> Result<HybridOutcome> {
    inst.require_unit()?;
    let delta = min_pairwise_distance(&inst.centers());
    let mu = (delta / 2.0).min(1.0);

    let mut candidates = vec![Candidate {
        algorithm: Algorithm::Centers,
        result: CandidateResult::Solved(solve_centers(inst)),
    }];

    let a1 = if delta > 0.0 {
        match solve_a1(inst) {
            Ok(out) => CandidateResult::Solved(out.solution),
            Err(e) => CandidateResult::Skipped(e.to_string()),
        }
    } else {
        CandidateResult::Skipped("minimum center distance is 0".into())
    };
    candidates.push(Candidate {
        algorithm: Algorithm::A1,
        result: a1,
    });

    let a2 = if mu > 0.0 {
        match shrink_instance(inst, mu).and_then(|s| solve_a2(&s, epsilon)) {
            Ok(out) => CandidateResult::Solved(out.solution),
            Err(e) => CandidateResult::Skipped(e.to_string()),
        }
    } else {
        CandidateResult::Skipped("shrink radius is 0".into())
    };
    candidates.push(Candidate {
        algorithm: Algorithm::A2,
        result: a2,
    });

    let mut best: Option<&Candidate> = None;
    for cand in &candidates {
        if let Some(v) = cand.min_distance() {
            if best.is_none_or(|b| v > b.min_distance().unwrap_or(f64::NEG_INFINITY)) {
                best = Some(cand);
            }
        }
    }
    let best = best.expect("the centers candidate always succeeds");
    let CandidateResult::Solved(solution) = &best.result else {
        unreachable!("best candidate is solved")
    };
    Ok(HybridOutcome {
        solution: solution.clone(),
        winner: best.algorithm,
        guarantee: portfolio_guarantee(delta, epsilon),
        candidates,
        delta,
        mu,
    })
}
