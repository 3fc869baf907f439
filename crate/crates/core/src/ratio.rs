//! Scalar ratio curves and the constants derived from them.
//!
//! Everything here is a pure function of its arguments. Roots are found by
//! plain bisection on monotone differences, so no derivatives are needed and
//! convergence is unconditional.

use std::f64::consts::SQRT_2;

use crate::error::{Error, Result};

const SQRT_3: f64 = 1.732_050_807_568_877_2;
const MAX_BISECTIONS: usize = 200;

/// Target residual for the sigma equation.
pub const SIGMA_RESIDUAL: f64 = 1e-12;
/// Target residual for curve crossovers.
pub const CROSSOVER_RESIDUAL: f64 = 1e-9;

fn domain_error(function: &'static str, value: f64, domain: &'static str) -> Error {
    Error::OutOfDomain {
        function,
        value,
        domain,
    }
}

/// Three-disk packing bound: `f(s) = sqrt((1+s)^2 + 1/2 + sqrt(3(1+s)^2 - 3/4))`.
///
/// Any three points in three unit disks, whose centers lie within `s` of the
/// center of one of them, have minimum pairwise distance at most `f(s)`.
pub fn f(s: f64) -> Result<f64> {
    if !(s >= 0.0) || !s.is_finite() {
        return Err(domain_error("f", s, "[0, inf)"));
    }
    let a = (1.0 + s) * (1.0 + s);
    Ok((a + 0.5 + (3.0 * a - 0.75).sqrt()).sqrt())
}

fn sigma_equation(delta: f64, sigma: f64) -> f64 {
    // f is only ever called with sigma > delta > 0 here.
    let fs = f(sigma).expect("sigma is positive");
    delta / fs - (sigma + delta) / (2.0 * (delta + 2.0))
}

/// Residual of the balance equation `delta / f(sigma) = (sigma + delta) / (2 (delta + 2))`.
pub fn sigma_residual(delta: f64, sigma: f64) -> f64 {
    sigma_equation(delta, sigma).abs()
}

/// Unique root `sigma` of the balance equation; lies strictly inside `(delta, delta + 4)`.
pub fn solve_sigma(delta: f64) -> Result<f64> {
    if !(delta > 0.0) || !delta.is_finite() {
        return Err(Error::DegenerateDelta { delta });
    }
    // The left side decreases in sigma, the right side increases: the
    // difference is positive at delta and negative at delta + 4.
    let (mut lo, mut hi) = (delta, delta + 4.0);
    for _ in 0..MAX_BISECTIONS {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let g = sigma_equation(delta, mid);
        if g == 0.0 {
            return Ok(mid);
        }
        if g > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let (glo, ghi) = (
        sigma_equation(delta, lo).abs(),
        sigma_equation(delta, hi).abs(),
    );
    let sigma = if glo <= ghi { lo } else { hi };
    // Keep the open-interval guarantee even when bisection collapses onto an end.
    Ok(sigma.clamp(next_up(delta), next_down(delta + 4.0)))
}

fn next_up(x: f64) -> f64 {
    f64::from_bits(x.to_bits() + 1)
}

fn next_down(x: f64) -> f64 {
    f64::from_bits(x.to_bits() - 1)
}

/// Approximation ratio of A1 as a function of the minimum center distance,
/// in the `(sigma + delta) / (2 (delta + 2))` form.
pub fn c(delta: f64) -> Result<f64> {
    let sigma = solve_sigma(delta)?;
    Ok((sigma + delta) / (2.0 * (delta + 2.0)))
}

/// The same ratio in the `delta / f(sigma)` form.
pub fn c_packing_form(delta: f64) -> Result<f64> {
    let sigma = solve_sigma(delta)?;
    Ok(delta / f(sigma)?)
}

/// Ratio curve of Cabello's PLACEMENT in terms of `x = OPT / 2`; constant 1/2 below 1.
pub fn c1(x: f64) -> Result<f64> {
    if !(x >= 0.0) || x > 2.0 {
        return Err(domain_error("c1", x, "[0, 2]"));
    }
    if x < 1.0 {
        return Ok(0.5);
    }
    Ok((-SQRT_3 + SQRT_3 * x + (3.0 + 2.0 * x - x * x).sqrt()) / (4.0 * x))
}

/// Ratio curve of CENTERS on unit disks: `(x - 1) / x`.
pub fn c2(x: f64) -> Result<f64> {
    if !(x >= 1.0) || !x.is_finite() {
        return Err(domain_error("c2", x, "[1, inf)"));
    }
    Ok((x - 1.0) / x)
}

/// Ratio curve of A1 on unit disks: `c(2x - 2)`.
pub fn a1(x: f64) -> Result<f64> {
    if !(x > 1.0) || !x.is_finite() {
        return Err(Error::DegenerateDelta {
            delta: 2.0 * x - 2.0,
        });
    }
    c(2.0 * x - 2.0)
}

/// Ratio curve of A2 run on the shrunk disks: `(x - 1 + mu) / (x sqrt 2)`.
pub fn a2(x: f64, mu: f64) -> Result<f64> {
    if !(1.0..=2.0).contains(&x) {
        return Err(domain_error("a2", x, "x in [1, 2]"));
    }
    if !(0.0..=1.0).contains(&mu) {
        return Err(domain_error("a2", mu, "mu in [0, 1]"));
    }
    Ok((x - 1.0 + mu) / (x * SQRT_2))
}

/// Positive root `y = x - 1` of `c1(x) = a2(x, mu)`.
pub fn y1(mu: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&mu) {
        return Err(domain_error("y1", mu, "[0, 1]"));
    }
    let s6 = 6f64.sqrt();
    let disc = 12.0 - 4.0 * s6 - 2.0 * mu * mu;
    if disc < 0.0 {
        return Err(domain_error("y1", mu, "[0, sqrt(6 - 2 sqrt 6)]"));
    }
    Ok((-(4.0 - s6) * mu + disc.sqrt()) / (2.0 * (3.0 - s6)))
}

pub fn x1(mu: f64) -> Result<f64> {
    Ok(1.0 + y1(mu)?)
}

/// Fixed point of `y1`, closed form `1 / sqrt(9 - 2 sqrt 6)`.
pub fn mu0() -> f64 {
    1.0 / (9.0 - 2.0 * 6f64.sqrt()).sqrt()
}

/// Second closed form of the same constant, `sqrt((9 + 2 sqrt 6) / 57)`.
pub fn mu0_alternate() -> f64 {
    ((9.0 + 2.0 * 6f64.sqrt()) / 57.0).sqrt()
}

/// The constant found numerically as the root of `y1(mu) = mu` on `[0, 1/sqrt 2]`.
pub fn mu0_solved() -> Result<f64> {
    let g = |mu: f64| y1(mu).map(|y| y - mu);
    Ok(bisect(g, 0.0, std::f64::consts::FRAC_1_SQRT_2)?.0)
}

/// Closed form of the hybrid floor: `sqrt 2 / (1 + sqrt(9 - 2 sqrt 6))`.
pub fn hybrid_floor_closed_form() -> f64 {
    SQRT_2 / (1.0 + (9.0 - 2.0 * 6f64.sqrt()).sqrt())
}

/// Bisection root of `g` on `[lo, hi]`; returns `(root, |g(root)|)`.
pub fn bisect(mut g: impl FnMut(f64) -> Result<f64>, lo: f64, hi: f64) -> Result<(f64, f64)> {
    let (mut lo, mut hi) = (lo, hi);
    let (mut g_lo, g_hi) = (g(lo)?, g(hi)?);
    if g_lo == 0.0 {
        return Ok((lo, 0.0));
    }
    if g_hi == 0.0 {
        return Ok((hi, 0.0));
    }
    if g_lo.signum() == g_hi.signum() || g_lo.is_nan() || g_hi.is_nan() {
        return Err(Error::NoSignChange {
            lo,
            hi,
            f_lo: g_lo,
            f_hi: g_hi,
        });
    }
    for _ in 0..MAX_BISECTIONS {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let g_mid = g(mid)?;
        if g_mid == 0.0 {
            return Ok((mid, 0.0));
        }
        if g_mid.signum() == g_lo.signum() {
            lo = mid;
            g_lo = g_mid;
        } else {
            hi = mid;
        }
    }
    let root = 0.5 * (lo + hi);
    Ok((root, g(root)?.abs()))
}

/// Curves that can take part in a crossover search.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RatioCurve {
    F,
    C,
    C1,
    C2,
    A1,
    /// `a2(., mu)` with the second argument held fixed.
    A2 {
        mu: f64,
    },
}

impl RatioCurve {
    pub fn name(&self) -> String {
        match self {
            RatioCurve::F => "f".into(),
            RatioCurve::C => "c".into(),
            RatioCurve::C1 => "c1".into(),
            RatioCurve::C2 => "c2".into(),
            RatioCurve::A1 => "a1".into(),
            RatioCurve::A2 { mu } => format!("a2(., {mu})"),
        }
    }

    /// Closed-open or closed interval on which `eval` is defined.
    pub fn domain(&self) -> (f64, f64) {
        match self {
            RatioCurve::F => (0.0, f64::INFINITY),
            RatioCurve::C => (f64::MIN_POSITIVE, f64::INFINITY),
            RatioCurve::C1 => (0.0, 2.0),
            RatioCurve::C2 => (1.0, f64::INFINITY),
            RatioCurve::A1 => (1.0 + f64::EPSILON, f64::INFINITY),
            RatioCurve::A2 { .. } => (1.0, 2.0),
        }
    }

    pub fn eval(&self, x: f64) -> Result<f64> {
        match *self {
            RatioCurve::F => f(x),
            RatioCurve::C => c(x),
            RatioCurve::C1 => c1(x),
            RatioCurve::C2 => c2(x),
            RatioCurve::A1 => a1(x),
            RatioCurve::A2 { mu } => a2(x, mu),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CrossoverResult {
    pub x_star: f64,
    pub value: f64,
    pub residual: f64,
}

/// Intersection of two curves on a bracket where their difference changes sign.
pub fn crossover(a: RatioCurve, b: RatioCurve, lo: f64, hi: f64) -> Result<CrossoverResult> {
    let (x_star, residual) = bisect(|x| Ok(a.eval(x)? - b.eval(x)?), lo, hi)?;
    if residual > CROSSOVER_RESIDUAL {
        return Err(Error::NoSignChange {
            lo,
            hi,
            f_lo: a.eval(lo)? - b.eval(lo)?,
            f_hi: a.eval(hi)? - b.eval(hi)?,
        });
    }
    Ok(CrossoverResult {
        x_star,
        value: a.eval(x_star)?,
        residual,
    })
}

/// `min over x in [1, 1 + mu] of max{c1(x), a2(x, mu)}` on a uniform grid of `grid` points.
pub fn hybrid_floor(mu: f64, grid: usize) -> Result<f64> {
    if !(0.0..=1.0).contains(&mu) {
        return Err(domain_error("hybrid_floor", mu, "[0, 1]"));
    }
    if grid < 2 {
        return Err(Error::InvalidArgument(format!(
            "hybrid_floor grid must have at least 2 points, got {grid}"
        )));
    }
    let mut floor = f64::INFINITY;
    for k in 0..grid {
        let x = (1.0 + mu * k as f64 / (grid - 1) as f64).min(2.0);
        floor = floor.min(c1(x)?.max(a2(x, mu)?));
    }
    Ok(floor)
}

/// One line of the constants report.
#[derive(Debug, Clone, PartialEq)]
pub struct ConstantRow {
    pub name: &'static str,
    pub value: f64,
    /// Second, independently computed value (closed form or numerical root).
    pub cross_check: Option<f64>,
    /// Root residual or `|value - cross_check|`.
    pub residual: f64,
}

/// Every named constant of the analysis, each paired with an independent check.
pub fn constants_report() -> Result<Vec<ConstantRow>> {
    let mut rows = Vec::new();

    let sigma2 = solve_sigma(2.0)?;
    rows.push(ConstantRow {
        name: "sigma(2)",
        value: sigma2,
        cross_check: None,
        residual: sigma_residual(2.0, sigma2),
    });

    let c2_closed = c(2.0)?;
    let c2_packing = c_packing_form(2.0)?;
    rows.push(ConstantRow {
        name: "c(2)",
        value: c2_closed,
        cross_check: Some(c2_packing),
        residual: (c2_closed - c2_packing).abs(),
    });

    let m = mu0();
    let m_solved = mu0_solved()?;
    rows.push(ConstantRow {
        name: "mu0",
        value: m,
        cross_check: Some(m_solved),
        residual: (m - m_solved).abs(),
    });

    let floor = hybrid_floor(m, 10_001)?;
    let floor_closed = hybrid_floor_closed_form();
    rows.push(ConstantRow {
        name: "hybrid_floor",
        value: floor,
        cross_check: Some(floor_closed),
        residual: (floor - floor_closed).abs(),
    });

    let c1c2 = crossover(RatioCurve::C1, RatioCurve::C2, 1.0, 2.0)?;
    let c1c2_x = 1.0 + 1.0 / (5.0 - 2.0 * SQRT_3).sqrt();
    rows.push(ConstantRow {
        name: "c1/c2 crossover x",
        value: c1c2.x_star,
        cross_check: Some(c1c2_x),
        residual: c1c2.residual,
    });
    rows.push(ConstantRow {
        name: "c1/c2 crossover value",
        value: c1c2.value,
        cross_check: Some(c2(c1c2_x)?),
        residual: c1c2.residual,
    });

    let c1a1 = crossover(RatioCurve::C1, RatioCurve::A1, 1.01, 2.0)?;
    rows.push(ConstantRow {
        name: "c1/a1 crossover x",
        value: c1a1.x_star,
        cross_check: None,
        residual: c1a1.residual,
    });
    rows.push(ConstantRow {
        name: "c1/a1 crossover value",
        value: c1a1.value,
        cross_check: Some(a1(c1a1.x_star)?),
        residual: c1a1.residual,
    });

    let c1a2 = crossover(RatioCurve::C1, RatioCurve::A2 { mu: m }, 1.0, 2.0)?;
    rows.push(ConstantRow {
        name: "c1/a2(mu0) crossover x",
        value: c1a2.x_star,
        cross_check: Some(1.0 + m),
        residual: c1a2.residual,
    });

    let y0 = y1(0.0)?;
    let y0_closed = 1.0 / (3.0 - 6f64.sqrt()).sqrt();
    rows.push(ConstantRow {
        name: "y1(0)",
        value: y0,
        cross_check: Some(y0_closed),
        residual: (y0 - y0_closed).abs(),
    });

    let eps = 1e-4;
    rows.push(ConstantRow {
        name: "A2 ratio (1-eps)/sqrt2, eps=1e-4",
        value: (1.0 - eps) / SQRT_2,
        cross_check: None,
        residual: 0.0,
    });

    Ok(rows)
}
