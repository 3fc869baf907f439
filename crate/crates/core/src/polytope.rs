//! Convex container polytopes `Q` with `B(o, r/2) ⊂ Q ⊂ B(o, 3r/4)`.
//!
//! The plane uses the axis-aligned square of side `r`; space uses a regular
//! icosahedron with inradius `r/2`. Both radii are certified from the
//! halfspace description itself: the inradius is the smallest facet offset
//! and the circumradius is the largest vertex norm, vertices being found by
//! intersecting every `d`-subset of facet planes.

use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::geometry::{dot, norm, Ball, Point};

/// Required inradius as a fraction of the ball radius.
pub const INNER_FRACTION: f64 = 0.5;
/// Allowed circumradius as a fraction of the ball radius.
pub const OUTER_FRACTION: f64 = 0.75;

const CERT_TOL: f64 = 1e-9;

/// `{q : <normal, q - center> <= offset}` with a unit normal.
#[derive(Debug, Clone, PartialEq)]
pub struct Halfspace {
    pub normal: Point,
    pub offset: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ContainerPolytope {
    pub center: Point,
    pub radius: f64,
    pub halfspaces: Vec<Halfspace>,
    /// Radius of the largest ball around `center` inside the polytope.
    pub inradius: f64,
    /// Distance from `center` to the farthest vertex.
    pub circumradius: f64,
}

impl ContainerPolytope {
    /// Certifies the radii of a bounded polytope around `center` and checks
    /// the containment sandwich for a ball of radius `radius`.
    pub fn from_halfspaces(center: Point, radius: f64, halfspaces: Vec<Halfspace>) -> Result<Self> {
        let d = center.len();
        for h in &halfspaces {
            if h.normal.len() != d {
                return Err(Error::DimensionMismatch {
                    expected: d,
                    found: h.normal.len(),
                });
            }
            if (norm(&h.normal) - 1.0).abs() > CERT_TOL {
                return Err(Error::InvalidPolytope(
                    "facet normal is not a unit vector".into(),
                ));
            }
        }
        let inradius = halfspaces
            .iter()
            .map(|h| h.offset)
            .fold(f64::INFINITY, f64::min);
        let circumradius = circumradius(&halfspaces, d)?;
        let poly = ContainerPolytope {
            center,
            radius,
            halfspaces,
            inradius,
            circumradius,
        };
        poly.validate()?;
        Ok(poly)
    }

    /// Checks `inradius >= r/2` and `circumradius <= 3r/4`.
    pub fn validate(&self) -> Result<()> {
        let tol = CERT_TOL * self.radius.max(1.0);
        if self.inradius < INNER_FRACTION * self.radius - tol {
            return Err(Error::InvalidPolytope(format!(
                "inradius {} below {}",
                self.inradius,
                INNER_FRACTION * self.radius
            )));
        }
        if self.circumradius > OUTER_FRACTION * self.radius + tol {
            return Err(Error::InvalidPolytope(format!(
                "circumradius {} exceeds {}",
                self.circumradius,
                OUTER_FRACTION * self.radius
            )));
        }
        Ok(())
    }

    pub fn dimension(&self) -> usize {
        self.center.len()
    }

    /// Largest facet violation of `q` (zero or negative inside).
    pub fn violation(&self, q: &[f64]) -> f64 {
        let rel: Vec<f64> = q.iter().zip(&self.center).map(|(a, b)| a - b).collect();
        self.halfspaces
            .iter()
            .map(|h| dot(&h.normal, &rel) - h.offset)
            .fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn contains(&self, q: &[f64], tol: f64) -> bool {
        self.violation(q) <= tol
    }

    /// Vertices in absolute coordinates, in enumeration order.
    pub fn vertices(&self) -> Vec<Point> {
        vertices(&self.halfspaces, self.dimension())
            .into_iter()
            .map(|v| v.iter().zip(&self.center).map(|(a, b)| a + b).collect())
            .collect()
    }
}

/// Container polytope for `ball` in dimension 2 (square) or 3 (icosahedron).
pub fn build_container_polytope(ball: &Ball, d: usize) -> Result<ContainerPolytope> {
    if ball.dimension() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            found: ball.dimension(),
        });
    }
    let template = template(d)?;
    let r = ball.radius;
    Ok(ContainerPolytope {
        center: ball.center.clone(),
        radius: r,
        halfspaces: template
            .halfspaces
            .iter()
            .map(|h| Halfspace {
                normal: h.normal.clone(),
                offset: h.offset * r,
            })
            .collect(),
        inradius: template.inradius * r,
        circumradius: template.circumradius * r,
    })
}

/// The certified unit-radius polytope, computed once per dimension.
fn template(d: usize) -> Result<&'static ContainerPolytope> {
    static SQUARE: OnceLock<ContainerPolytope> = OnceLock::new();
    static ICOSAHEDRON: OnceLock<ContainerPolytope> = OnceLock::new();
    match d {
        2 => Ok(SQUARE.get_or_init(|| {
            ContainerPolytope::from_halfspaces(vec![0.0; 2], 1.0, square_halfspaces())
                .expect("square satisfies the containment sandwich")
        })),
        3 => Ok(ICOSAHEDRON.get_or_init(|| {
            ContainerPolytope::from_halfspaces(vec![0.0; 3], 1.0, icosahedron_halfspaces())
                .expect("icosahedron satisfies the containment sandwich")
        })),
        _ => Err(Error::UnsupportedDimension(d)),
    }
}

fn square_halfspaces() -> Vec<Halfspace> {
    let mut out = Vec::new();
    for axis in 0..2 {
        for sign in [1.0, -1.0] {
            let mut normal = vec![0.0; 2];
            normal[axis] = sign;
            out.push(Halfspace {
                normal,
                offset: INNER_FRACTION,
            });
        }
    }
    out
}

/// Regular icosahedron with vertices at the cyclic permutations of
/// `(0, ±1, ±phi)`; each face is a vertex triple at mutual distance 2, and
/// its outward normal is the direction of the face centroid.
fn icosahedron_halfspaces() -> Vec<Halfspace> {
    let phi = (1.0 + 5f64.sqrt()) / 2.0;
    let mut verts: Vec<[f64; 3]> = Vec::new();
    for s1 in [1.0, -1.0] {
        for s2 in [1.0, -1.0] {
            verts.push([0.0, s1, s2 * phi]);
            verts.push([s1, s2 * phi, 0.0]);
            verts.push([s2 * phi, 0.0, s1]);
        }
    }
    let edge = |a: &[f64; 3], b: &[f64; 3]| {
        let d2: f64 = a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum();
        (d2 - 4.0).abs() < 1e-9
    };
    let mut out = Vec::new();
    for i in 0..12 {
        for j in i + 1..12 {
            for k in j + 1..12 {
                let (a, b, c) = (&verts[i], &verts[j], &verts[k]);
                if edge(a, b) && edge(b, c) && edge(a, c) {
                    let centroid: Vec<f64> = (0..3).map(|t| (a[t] + b[t] + c[t]) / 3.0).collect();
                    let len = norm(&centroid);
                    out.push(Halfspace {
                        normal: centroid.iter().map(|x| x / len).collect(),
                        offset: INNER_FRACTION,
                    });
                }
            }
        }
    }
    debug_assert_eq!(out.len(), 20);
    out
}

fn solve_square(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Option<Vec<f64>> {
    let n = b.len();
    for col in 0..n {
        let piv = (col..n).max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))?;
        if a[piv][col].abs() < 1e-12 {
            return None;
        }
        a.swap(col, piv);
        b.swap(col, piv);
        for r in 0..n {
            if r != col {
                let f = a[r][col] / a[col][col];
                for c in col..n {
                    a[r][c] -= f * a[col][c];
                }
                b[r] -= f * b[col];
            }
        }
    }
    Some((0..n).map(|i| b[i] / a[i][i]).collect())
}

fn vertices(halfspaces: &[Halfspace], d: usize) -> Vec<Point> {
    let m = halfspaces.len();
    let scale = halfspaces
        .iter()
        .map(|h| h.offset.abs())
        .fold(1.0, f64::max);
    let mut out: Vec<Point> = Vec::new();
    let mut idx: Vec<usize> = (0..d).collect();
    if m < d {
        return out;
    }
    loop {
        let a = idx.iter().map(|&i| halfspaces[i].normal.clone()).collect();
        let b = idx.iter().map(|&i| halfspaces[i].offset).collect();
        if let Some(v) = solve_square(a, b) {
            let inside = halfspaces
                .iter()
                .all(|h| dot(&h.normal, &v) <= h.offset + 1e-9 * scale);
            let fresh = out
                .iter()
                .all(|w| w.iter().zip(&v).any(|(x, y)| (x - y).abs() > 1e-9 * scale));
            if inside && fresh {
                out.push(v);
            }
        }
        // Next d-subset in lexicographic order.
        let mut k = d;
        while k > 0 && idx[k - 1] == m - d + k - 1 {
            k -= 1;
        }
        if k == 0 {
            break;
        }
        idx[k - 1] += 1;
        for t in k..d {
            idx[t] = idx[t - 1] + 1;
        }
    }
    out
}

fn circumradius(halfspaces: &[Halfspace], d: usize) -> Result<f64> {
    let verts = vertices(halfspaces, d);
    if verts.len() < d + 1 {
        return Err(Error::InvalidPolytope(format!(
            "only {} vertices found; the halfspaces do not bound a full-dimensional polytope",
            verts.len()
        )));
    }
    // Each signed coordinate direction must be blocked by some facet.
    for axis in 0..d {
        for sign in [1.0, -1.0] {
            if halfspaces.iter().all(|h| sign * h.normal[axis] <= 1e-12) {
                return Err(Error::InvalidPolytope("halfspaces are unbounded".into()));
            }
        }
    }
    Ok(verts.iter().map(|v| norm(v)).fold(0.0, f64::max))
}
