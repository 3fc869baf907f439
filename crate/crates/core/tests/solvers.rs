mod common;

use common::{second_nearest, tight_instance, tight_unit_overlap};
use dispersion::a1::{solve_a1, CaseTag};
use dispersion::a2::{close_pairs, solve_a2, DEFAULT_EPSILON, PRUNE_FACTOR};
use dispersion::certify::{brute_force_opt, opt_upper, opt_upper_disjoint};
use dispersion::generate::{generate, GeneratorKind, GeneratorParams};
use dispersion::geometry::{min_center_distance, Ball, BallInstance};
use dispersion::hybrid::{shrink_instance, solve_hybrid};
use dispersion::ratio::solve_sigma;
use dispersion::rng::SeededRng;
use proptest::prelude::*;

fn disjoint(n: usize, seed: u64, d: usize, unit: bool) -> BallInstance {
    let kind = if unit {
        GeneratorKind::DisjointUnit
    } else {
        GeneratorKind::DisjointArbitrary
    };
    generate(&GeneratorParams::new(kind, n, seed).dimension(d)).unwrap()
}

#[test]
fn a1_case_tag_follows_second_neighbors() {
    for seed in 0..60 {
        let inst = disjoint(2 + (seed as usize % 12), seed, 2, true);
        let out = solve_a1(&inst).unwrap();
        let delta = min_center_distance(&inst).unwrap();
        let sigma = solve_sigma(delta).unwrap();
        let close = second_nearest(&inst).iter().any(|&s| s <= sigma);
        assert_eq!(out.case_tag == CaseTag::Centers, close, "seed {seed}");
        out.solution.check_containment(&inst, 1e-9).unwrap();
        assert!(!out.fallback);
        if out.case_tag == CaseTag::Matching {
            assert!(out.solution.min_distance >= (sigma + delta) / 2.0 - 1e-9);
        }
    }
}

#[test]
fn a2_value_is_bracketed_and_achieved() {
    for seed in 0..20 {
        let d = 2 + seed as usize % 2;
        let inst = disjoint(3 + seed as usize % 15, seed, d, seed % 3 != 0);
        let out = solve_a2(&inst, DEFAULT_EPSILON).unwrap();
        let delta = min_center_distance(&inst).unwrap();
        assert!(out.z_star >= delta - 1e-6 && out.z_star <= 1.75 * delta + 1e-6);
        assert!(out.solution.min_distance >= out.z_star - 1e-6);
        out.solution.check_containment(&inst, 1e-7).unwrap();
    }
}

#[test]
fn pruned_pairs_are_exactly_the_close_ones() {
    let inst = disjoint(40, 5, 2, false);
    let delta = min_center_distance(&inst).unwrap();
    let pairs = close_pairs(&inst, PRUNE_FACTOR * delta);
    for i in 0..inst.len() {
        for j in i + 1..inst.len() {
            let close = inst.center_distance(i, j) <= PRUNE_FACTOR * delta;
            assert_eq!(pairs.contains(&(i, j)), close, "pair ({i}, {j})");
        }
    }
}

#[test]
fn a2_ignores_ball_order() {
    let inst = disjoint(12, 9, 2, false);
    let mut balls = inst.balls().to_vec();
    balls.reverse();
    let flipped = BallInstance::new(2, balls).unwrap();
    let a = solve_a2(&inst, DEFAULT_EPSILON).unwrap().z_star;
    let b = solve_a2(&flipped, DEFAULT_EPSILON).unwrap().z_star;
    assert!((a - b).abs() <= 1e-7, "{a} vs {b}");
}

#[test]
fn hybrid_picks_the_best_candidate_inside_the_disks() {
    let mut rng = SeededRng::new(3);
    for _ in 0..30 {
        let n = 2 + rng.index(6);
        let inst = tight_unit_overlap(&mut rng, n);
        let out = solve_hybrid(&inst, DEFAULT_EPSILON).unwrap();
        out.solution.check_containment(&inst, 1e-7).unwrap();
        for cand in &out.candidates {
            if let Some(m) = cand.min_distance() {
                assert!(out.solution.min_distance >= m - 1e-12);
            }
        }
        let shrunk = shrink_instance(&inst, out.mu).unwrap();
        assert!(shrunk
            .balls()
            .iter()
            .all(|b| (b.radius - out.mu).abs() < 1e-15));
    }
}

#[test]
fn oracle_never_beats_the_upper_bound() {
    let mut rng = SeededRng::new(11);
    for round in 0..12 {
        let inst = if round % 2 == 0 {
            tight_instance(&mut rng, 3, round % 4 == 0, 1.0)
        } else {
            tight_unit_overlap(&mut rng, 3)
        };
        let best = brute_force_opt(&inst, 9).unwrap().best;
        let (upper, _) = opt_upper(&inst).unwrap();
        assert!(best <= upper + 1e-6, "round {round}: {best} > {upper}");
        if inst.is_disjoint() {
            let delta = min_center_distance(&inst).unwrap();
            assert!(opt_upper_disjoint(&inst).unwrap() <= 2.0 * delta + 1e-9);
        }
    }
}

#[test]
fn oracle_improves_on_nested_grids() {
    let mut rng = SeededRng::new(17);
    for _ in 0..5 {
        let inst = tight_instance(&mut rng, 3, false, 0.5);
        let coarse = brute_force_opt(&inst, 3).unwrap().best;
        let mid = brute_force_opt(&inst, 5).unwrap().best;
        let fine = brute_force_opt(&inst, 9).unwrap().best;
        assert!(
            coarse <= mid + 1e-12 && mid <= fine + 1e-12,
            "{coarse} {mid} {fine}"
        );
    }
}

#[test]
fn shared_samplers_hold_the_geometric_bounds() {
    let mut rng = SeededRng::new(1);
    assert!(common::projection_ratio_grid_min() >= std::f64::consts::FRAC_1_SQRT_2 - 1e-9);
    for d in [2, 3] {
        let r = common::shrunk_projection_min_ratio(&mut rng, d, 2000);
        assert!(r >= std::f64::consts::FRAC_1_SQRT_2 - 1e-9, "d={d}: {r}");
    }
    assert!(common::three_disk_max_excess(&mut rng, 5000) <= 1e-9);
    assert!(common::shrink_min_slack(&mut rng, 2000) >= -1e-9);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn a2_handles_arbitrary_pairs(
        x in -5.0f64..5.0, y in -5.0f64..5.0,
        r1 in 0.0f64..2.0, r2 in 0.0f64..2.0, gap in 0.01f64..3.0,
    ) {
        let a = Ball::new([x, y], r1);
        let b = Ball::new([x + r1 + r2 + gap, y], r2);
        let inst = BallInstance::new(2, vec![a, b]).unwrap();
        let out = solve_a2(&inst, DEFAULT_EPSILON).unwrap();
        let delta = r1 + r2 + gap;
        prop_assert!(out.z_star >= delta - 1e-6);
        prop_assert!(out.z_star <= 1.75 * delta + 1e-6);
        prop_assert!(out.solution.min_distance >= out.z_star - 1e-6);
    }

    #[test]
    fn a1_points_stay_in_their_disks(seed in 0u64..10_000, n in 2usize..30) {
        let inst = disjoint(n, seed, 2, true);
        let out = solve_a1(&inst).unwrap();
        prop_assert!(out.solution.check_containment(&inst, 1e-9).is_ok());
        prop_assert!(out.solution.min_distance >= out.guaranteed_value - 1e-9);
    }
}
