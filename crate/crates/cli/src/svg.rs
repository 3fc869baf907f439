//! SVG pictures of planar instances and solutions.
//!
//! Elements carry a `class`: `disk` for input disks, `inner` for the shrunk
//! disks of radius `r/2` and `container` for the container squares (both
//! only for LP solutions), `point` for chosen points and `closest` for the
//! segment joining the closest pair.

use std::fmt::Write;

use dispersion::geometry::min_pairwise_distance;
use dispersion::io::SolutionFile;
use dispersion::polytope::build_container_polytope;
use dispersion::{Ball, BallInstance, Error, Result};

/// Radii of the balls the LP ran on, if the solution came from it.
fn lp_radii(inst: &BallInstance, algorithm: &str) -> Option<Vec<f64>> {
    match algorithm {
        "a2" => Some(inst.balls().iter().map(|b| b.radius).collect()),
        "hybrid/a2" => {
            let mu = (min_pairwise_distance(&inst.centers()) / 2.0).min(1.0);
            Some(vec![mu; inst.len()])
        }
        _ => None,
    }
}

pub fn render(inst: &BallInstance, sol: &SolutionFile) -> Result<String> {
    if inst.dimension() != 2 {
        return Err(Error::InvalidArgument(format!(
            "SVG output needs a planar instance, got dimension {}",
            inst.dimension()
        )));
    }
    if sol.points.len() != inst.len() {
        return Err(Error::PointCountMismatch {
            expected: inst.len(),
            found: sol.points.len(),
        });
    }
    if let Some(p) = sol.points.iter().find(|p| p.len() != 2) {
        return Err(Error::DimensionMismatch {
            expected: 2,
            found: p.len(),
        });
    }

    let (mut lo, mut hi) = ([f64::INFINITY; 2], [f64::NEG_INFINITY; 2]);
    for b in inst.balls() {
        for k in 0..2 {
            lo[k] = lo[k].min(b.center[k] - b.radius);
            hi[k] = hi[k].max(b.center[k] + b.radius);
        }
    }
    for p in &sol.points {
        for k in 0..2 {
            lo[k] = lo[k].min(p[k]);
            hi[k] = hi[k].max(p[k]);
        }
    }
    let size = (hi[0] - lo[0]).max(hi[1] - lo[1]).max(1e-9);
    let margin = 0.05 * size;
    let stroke = 0.004 * size;
    let dot = 0.012 * size;

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="{} {} {} {}">"#,
        lo[0] - margin,
        -(hi[1] + margin),
        hi[0] - lo[0] + 2.0 * margin,
        hi[1] - lo[1] + 2.0 * margin
    );
    let _ = writeln!(
        out,
        r#"<g transform="scale(1,-1)" fill="none" stroke-width="{stroke}">"#
    );
    for b in inst.balls() {
        circle(&mut out, "disk", &b.center, b.radius, "stroke=\"black\"");
    }
    if let Some(radii) = lp_radii(inst, &sol.algorithm) {
        for (b, &r) in inst.balls().iter().zip(&radii) {
            circle(
                &mut out,
                "inner",
                &b.center,
                r / 2.0,
                "stroke=\"gray\" stroke-dasharray=\"2%\"",
            );
            let q = build_container_polytope(&Ball::new(b.center.clone(), r), 2)?;
            let pts: Vec<String> = polygon_order(q.vertices())
                .iter()
                .map(|v| format!("{},{}", v[0], v[1]))
                .collect();
            let _ = writeln!(
                out,
                r#"<polygon class="container" points="{}" stroke="steelblue"/>"#,
                pts.join(" ")
            );
        }
    }
    if let Some((i, j)) = closest_pair(&sol.points) {
        let (p, q) = (&sol.points[i], &sol.points[j]);
        let _ = writeln!(
            out,
            r#"<line class="closest" x1="{}" y1="{}" x2="{}" y2="{}" stroke="crimson"/>"#,
            p[0], p[1], q[0], q[1]
        );
    }
    for p in &sol.points {
        circle(
            &mut out,
            "point",
            p,
            dot,
            "fill=\"crimson\" stroke=\"none\"",
        );
    }
    out.push_str("</g>\n</svg>\n");
    Ok(out)
}

fn circle(out: &mut String, class: &str, c: &[f64], r: f64, style: &str) {
    let _ = writeln!(
        out,
        r#"<circle class="{class}" cx="{}" cy="{}" r="{r}" {style}/>"#,
        c[0], c[1]
    );
}

/// Vertices sorted by angle around their centroid.
fn polygon_order(mut vs: Vec<Vec<f64>>) -> Vec<Vec<f64>> {
    let n = vs.len() as f64;
    let cx = vs.iter().map(|v| v[0]).sum::<f64>() / n;
    let cy = vs.iter().map(|v| v[1]).sum::<f64>() / n;
    vs.sort_by(|a, b| {
        let ta = (a[1] - cy).atan2(a[0] - cx);
        let tb = (b[1] - cy).atan2(b[0] - cx);
        ta.total_cmp(&tb)
    });
    vs
}

fn closest_pair(points: &[Vec<f64>]) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, f64)> = None;
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            let d = dispersion::geometry::distance(&points[i], &points[j]).ok()?;
            if best.is_none_or(|b| d < b.2) {
                best = Some((i, j, d));
            }
        }
    }
    best.map(|(i, j, _)| (i, j))
}

#[cfg(test)]
mod tests {
    use super::*;
    use dispersion::certify::certify;

    fn count(svg: &str, class: &str) -> usize {
        svg.matches(&format!("class=\"{class}\"")).count()
    }

    #[test]
    fn tangent_pair_lp_picture() {
        let inst = BallInstance::unit_balls([[0.0, 0.0], [2.0, 0.0]]).unwrap();
        let out = dispersion::a2::solve_a2(&inst, 1e-4).unwrap();
        let cert = certify(&out.solution, &inst).unwrap();
        let file = SolutionFile::new("a2", out.solution.points.clone(), &cert);
        let svg = render(&inst, &file).unwrap();
        assert_eq!(count(&svg, "disk"), 2);
        assert_eq!(count(&svg, "container"), 2);
        assert_eq!(count(&svg, "inner"), 2);
        assert_eq!(count(&svg, "point"), 2);
        assert_eq!(count(&svg, "closest"), 1);
    }

    #[test]
    fn single_disk_picture() {
        let inst = BallInstance::unit_balls([[0.0, 0.0]]).unwrap();
        let sol = dispersion::centers::solve_centers(&inst);
        let file = SolutionFile::new(
            "centers",
            sol.points.clone(),
            &certify(&sol, &inst).unwrap(),
        );
        let svg = render(&inst, &file).unwrap();
        assert_eq!(count(&svg, "disk"), 1);
        assert_eq!(count(&svg, "point"), 1);
        assert_eq!(count(&svg, "closest"), 0);
        assert_eq!(count(&svg, "container"), 0);
    }

    #[test]
    fn non_planar_rejected() {
        let inst = BallInstance::unit_balls([[0.0, 0.0, 0.0]]).unwrap();
        let sol = dispersion::centers::solve_centers(&inst);
        let file = SolutionFile::new(
            "centers",
            sol.points.clone(),
            &certify(&sol, &inst).unwrap(),
        );
        assert!(render(&inst, &file).is_err());
    }

    #[test]
    fn square_vertices_in_cyclic_order() {
        let q = build_container_polytope(&Ball::unit([0.0, 0.0]), 2).unwrap();
        let vs = polygon_order(q.vertices());
        for w in 0..4 {
            let (a, b) = (&vs[w], &vs[(w + 1) % 4]);
            let side = ((a[0] - b[0]).powi(2) + (a[1] - b[1]).powi(2)).sqrt();
            assert!((side - 1.0).abs() < 1e-12);
        }
    }
}
