//! First and second nearest neighbors by center distance.
//!
//! [`nearest_two_scan`] is the exhaustive reference. [`nearest_two_grid`]
//! buckets points into a uniform grid and searches rings of cells outward;
//! it returns exactly what the scan returns, ties included, because both
//! rank candidates by `(distance, index)` with identical distance arithmetic.

use rayon::prelude::*;

use crate::geometry::{dist, BallInstance, Point};

/// Above this size [`nearest_two`] switches from the scan to the grid.
const GRID_THRESHOLD: usize = 256;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Neighbor {
    pub index: usize,
    pub distance: f64,
}

impl Neighbor {
    #[inline]
    fn beats(&self, other: &Neighbor) -> bool {
        self.distance < other.distance
            || (self.distance == other.distance && self.index < other.index)
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct NearestTwo {
    pub first: Option<Neighbor>,
    pub second: Option<Neighbor>,
}

impl NearestTwo {
    #[inline]
    fn offer(&mut self, cand: Neighbor) {
        match self.first {
            Some(first) if !cand.beats(&first) => match self.second {
                Some(second) if !cand.beats(&second) => {}
                _ => self.second = Some(cand),
            },
            _ => {
                self.second = self.first;
                self.first = Some(cand);
            }
        }
    }

    pub fn first_distance(&self) -> f64 {
        self.first.map_or(f64::INFINITY, |n| n.distance)
    }

    pub fn second_distance(&self) -> f64 {
        self.second.map_or(f64::INFINITY, |n| n.distance)
    }
}

/// Per-ball nearest and second-nearest neighbor by center distance.
#[derive(Debug, Clone, PartialEq)]
pub struct NeighborInfo {
    pub entries: Vec<NearestTwo>,
}

impl NeighborInfo {
    pub fn nearest(&self, i: usize) -> (Option<usize>, f64) {
        let e = &self.entries[i];
        (e.first.map(|n| n.index), e.first_distance())
    }

    pub fn second(&self, i: usize) -> (Option<usize>, f64) {
        let e = &self.entries[i];
        (e.second.map(|n| n.index), e.second_distance())
    }

    /// Minimum nearest-neighbor distance, i.e. the minimum pairwise distance.
    pub fn min_distance(&self) -> f64 {
        self.entries
            .iter()
            .map(NearestTwo::first_distance)
            .fold(f64::INFINITY, f64::min)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

pub fn neighbor_info(inst: &BallInstance) -> NeighborInfo {
    NeighborInfo {
        entries: nearest_two(&inst.centers()),
    }
}

pub fn nearest_two(points: &[Point]) -> Vec<NearestTwo> {
    let d = points.first().map_or(0, Vec::len);
    if points.len() > GRID_THRESHOLD && (1..=3).contains(&d) {
        nearest_two_grid(points)
    } else {
        nearest_two_scan(points)
    }
}

pub fn nearest_two_scan(points: &[Point]) -> Vec<NearestTwo> {
    let n = points.len();
    let mut out = vec![NearestTwo::default(); n];
    for i in 0..n {
        for j in i + 1..n {
            let distance = dist(&points[i], &points[j]);
            out[i].offer(Neighbor { index: j, distance });
            out[j].offer(Neighbor { index: i, distance });
        }
    }
    out
}

/// Uniform grid in CSR form: the points of cell `c` are
/// `items[start[c]..start[c + 1]]`.
struct Grid {
    dim: usize,
    origin: [f64; 3],
    cell: f64,
    extent: [i64; 3],
    start: Vec<u32>,
    items: Vec<u32>,
    coords: Vec<[f64; 3]>,
}

impl Grid {
    fn build(points: &[Point]) -> Option<Grid> {
        let dim = points[0].len();
        let mut lo = [0.0f64; 3];
        let mut hi = [0.0f64; 3];
        for k in 0..dim {
            lo[k] = points.iter().map(|p| p[k]).fold(f64::INFINITY, f64::min);
            hi[k] = points
                .iter()
                .map(|p| p[k])
                .fold(f64::NEG_INFINITY, f64::max);
        }
        let span = (0..dim).map(|k| hi[k] - lo[k]).fold(0.0, f64::max);
        if !(span > 0.0) || !span.is_finite() || points.len() >= u32::MAX as usize {
            return None;
        }
        // About two points per cell.
        let per_axis = (points.len() as f64 / 2.0)
            .powf(1.0 / dim as f64)
            .ceil()
            .max(1.0);
        let cell = span / per_axis;
        let mut extent = [1i64; 3];
        for k in 0..dim {
            extent[k] = ((hi[k] - lo[k]) / cell).floor() as i64 + 1;
        }
        let mut grid = Grid {
            dim,
            origin: lo,
            cell,
            extent,
            start: Vec::new(),
            items: Vec::new(),
            coords: points
                .iter()
                .map(|p| {
                    let mut c = [0.0; 3];
                    c[..dim].copy_from_slice(p);
                    c
                })
                .collect(),
        };
        let cells = (extent[0] * extent[1] * extent[2]) as usize;
        let keys: Vec<usize> = grid.coords.iter().map(|c| grid.flat(grid.key(c))).collect();
        let mut start = vec![0u32; cells + 1];
        for &k in &keys {
            start[k + 1] += 1;
        }
        for c in 0..cells {
            start[c + 1] += start[c];
        }
        let mut fill = start.clone();
        let mut items = vec![0u32; points.len()];
        for (i, &k) in keys.iter().enumerate() {
            items[fill[k] as usize] = i as u32;
            fill[k] += 1;
        }
        grid.start = start;
        grid.items = items;
        Some(grid)
    }

    fn key(&self, p: &[f64; 3]) -> [i64; 3] {
        let mut key = [0i64; 3];
        for k in 0..self.dim {
            let t = ((p[k] - self.origin[k]) / self.cell).floor() as i64;
            key[k] = t.clamp(0, self.extent[k] - 1);
        }
        key
    }

    fn flat(&self, key: [i64; 3]) -> usize {
        ((key[0] * self.extent[1] + key[1]) * self.extent[2] + key[2]) as usize
    }

    fn max_ring(&self) -> i64 {
        self.extent[..self.dim].iter().copied().max().unwrap_or(1)
    }

    fn bucket(&self, key: [i64; 3]) -> &[u32] {
        let c = self.flat(key);
        &self.items[self.start[c] as usize..self.start[c + 1] as usize]
    }

    /// Calls `visit` for every cell at Chebyshev distance exactly `ring`.
    fn for_ring(&self, home: [i64; 3], ring: i64, mut visit: impl FnMut(&[u32])) {
        let clip = |k: usize| {
            if k < self.dim {
                (home[k] - ring).max(0)..=(home[k] + ring).min(self.extent[k] - 1)
            } else {
                0..=0
            }
        };
        for a in clip(0) {
            for b in clip(1) {
                let shell = (a - home[0]).abs().max((b - home[1]).abs()) == ring;
                if shell {
                    for c in clip(2) {
                        visit(self.bucket([a, b, c]));
                    }
                } else if self.dim == 3 {
                    for c in [home[2] - ring, home[2] + ring] {
                        if (0..self.extent[2]).contains(&c) {
                            visit(self.bucket([a, b, c]));
                        }
                    }
                }
            }
        }
    }
}

/// Same arithmetic as [`dist`] (sum of squares in axis order), on padded
/// coordinates; the padding adds exact zeros.
#[inline]
fn dist3(p: &[f64; 3], q: &[f64; 3]) -> f64 {
    let d0 = p[0] - q[0];
    let d1 = p[1] - q[1];
    let d2 = p[2] - q[2];
    (d0 * d0 + d1 * d1 + d2 * d2).sqrt()
}

/// Grid-accelerated nearest-two query for dimensions 1 to 3; any other
/// dimension, or a degenerate point set, falls back to the scan.
pub fn nearest_two_grid(points: &[Point]) -> Vec<NearestTwo> {
    let d = points.first().map_or(0, Vec::len);
    if points.len() < 2 || !(1..=3).contains(&d) {
        return nearest_two_scan(points);
    }
    let Some(grid) = Grid::build(points) else {
        return nearest_two_scan(points);
    };
    let max_ring = grid.max_ring();
    // Points outside ring k are at least k * cell away; the factor absorbs
    // rounding in the cell assignment.
    let reach = |ring: i64| ring as f64 * grid.cell * (1.0 - 1e-9);
    (0..points.len())
        .into_par_iter()
        .map(|i| {
            let p = &grid.coords[i];
            let home = grid.key(p);
            let mut best = NearestTwo::default();
            let mut ring = 0;
            loop {
                grid.for_ring(home, ring, |bucket| {
                    for &j in bucket {
                        let j = j as usize;
                        if j != i {
                            best.offer(Neighbor {
                                index: j,
                                distance: dist3(p, &grid.coords[j]),
                            });
                        }
                    }
                });
                if best.second_distance() < reach(ring) || ring > max_ring {
                    break;
                }
                ring += 1;
            }
            best
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand_core::Rng;

    use crate::rng::SeededRng;

    #[test]
    fn collinear_example() {
        let inst = BallInstance::unit_balls([[0.0], [2.0], [5.0]]).unwrap();
        let info = neighbor_info(&inst);
        assert_eq!(info.nearest(0), (Some(1), 2.0));
        assert_eq!(info.second(0), (Some(2), 5.0));
        assert_eq!(info.nearest(2), (Some(1), 3.0));
    }

    #[test]
    fn missing_neighbors_are_infinite() {
        let one = BallInstance::unit_balls([[0.0, 0.0]]).unwrap();
        let info = neighbor_info(&one);
        assert_eq!(info.nearest(0), (None, f64::INFINITY));
        assert_eq!(info.second(0), (None, f64::INFINITY));

        let two = BallInstance::unit_balls([[0.0, 0.0], [3.0, 4.0]]).unwrap();
        let info = neighbor_info(&two);
        assert_eq!(info.nearest(1), (Some(0), 5.0));
        assert_eq!(info.second(1), (None, f64::INFINITY));
    }

    #[test]
    fn ties_go_to_lowest_index() {
        let pts = vec![
            vec![0.0, 0.0],
            vec![1.0, 0.0],
            vec![-1.0, 0.0],
            vec![0.0, 1.0],
        ];
        let scan = nearest_two_scan(&pts);
        assert_eq!(scan[0].first.unwrap().index, 1);
        assert_eq!(scan[0].second.unwrap().index, 2);
        assert_eq!(nearest_two_grid(&pts), scan);
    }

    fn random_points(rng: &mut SeededRng, n: usize, d: usize, side: f64) -> Vec<Point> {
        (0..n)
            .map(|_| (0..d).map(|_| rng.uniform(0.0, side)).collect())
            .collect()
    }

    /// Oracle: the textbook double loop, kept independent of `offer`.
    fn brute_force(points: &[Point]) -> Vec<(Option<usize>, f64, Option<usize>, f64)> {
        (0..points.len())
            .map(|i| {
                let mut cands: Vec<(f64, usize)> = (0..points.len())
                    .filter(|&j| j != i)
                    .map(|j| (dist(&points[i], &points[j]), j))
                    .collect();
                cands.sort_by(|a, b| a.partial_cmp(b).unwrap());
                let get = |k: usize| {
                    cands
                        .get(k)
                        .map_or((None, f64::INFINITY), |&(d, j)| (Some(j), d))
                };
                let (a, b) = get(0);
                let (c, e) = get(1);
                (a, b, c, e)
            })
            .collect()
    }

    #[test]
    fn scan_and_grid_match_brute_force() {
        let mut rng = SeededRng::new(11);
        for &(n, d) in &[(200, 2), (500, 2), (300, 3), (257, 1), (400, 3)] {
            let pts = random_points(&mut rng, n, d, 50.0);
            let oracle = brute_force(&pts);
            let scan = nearest_two_scan(&pts);
            let grid = nearest_two_grid(&pts);
            assert_eq!(scan, grid, "n={n} d={d}");
            for (i, e) in scan.iter().enumerate() {
                let got = (
                    e.first.map(|x| x.index),
                    e.first_distance(),
                    e.second.map(|x| x.index),
                    e.second_distance(),
                );
                assert_eq!(got, oracle[i]);
            }
        }
    }

    #[test]
    fn grid_handles_clustered_and_duplicate_points() {
        let mut rng = SeededRng::new(5);
        let mut pts = random_points(&mut rng, 300, 2, 1.0);
        pts.extend(random_points(&mut rng, 20, 2, 1000.0));
        pts.push(pts[3].clone());
        pts.push(pts[3].clone());
        assert_eq!(nearest_two_grid(&pts), nearest_two_scan(&pts));

        let same = vec![vec![1.0, 1.0]; 300];
        assert_eq!(nearest_two_grid(&same), nearest_two_scan(&same));
    }

    #[test]
    fn integer_lattice_ties_agree() {
        let mut rng = SeededRng::new(9);
        let pts: Vec<Point> = (0..400)
            .map(|_| vec![(rng.next_u64() % 30) as f64, (rng.next_u64() % 30) as f64])
            .collect();
        assert_eq!(nearest_two_grid(&pts), nearest_two_scan(&pts));
    }
}
