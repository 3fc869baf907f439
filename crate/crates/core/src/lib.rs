//! Dispersion in balls: pick one point in each of `n` balls so that the
//! minimum pairwise distance of the chosen points is as large as possible.
//!
//! The crate provides
//!
//! - [`centers`] and [`a1`]: the center baseline and a perturbation
//!   algorithm for unit disks with ratio `c(delta) >= 0.511`;
//! - [`a2`]: a linear program over projections onto center lines, ratio
//!   `(1 - eps) / sqrt 2` on disjoint balls in the plane and in space;
//! - [`hybrid`]: a portfolio for overlapping unit disks;
//! - [`interval`]: exact solvers on a line and on a closed curve;
//! - [`ratio`]: every ratio curve and constant of the analysis;
//! - [`certify`]: upper bounds on the optimum, a brute-force oracle, and
//!   per-instance ratio certificates.

#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

pub mod a1;
pub mod a2;
pub mod centers;
pub mod certify;
pub mod error;
pub mod generate;
pub mod geometry;
pub mod hybrid;
pub mod interval;
pub mod io;
pub mod lp;
pub mod neighbors;
pub mod polytope;
pub mod ratio;
pub mod rng;

pub use error::{Error, Result};
pub use geometry::{Algorithm, Ball, BallInstance, Point, Solution, TOL};
