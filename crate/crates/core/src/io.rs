//! JSON instance and solution files.
//!
//! ```json
//! {"dimension": 2, "disks": [{"center": [0.0, 0.0], "radius": 1.0}]}
//! ```
//!
//! Numbers are written in shortest round-trip form, so every `f64` reads
//! back bit-identically. Non-finite values are written as `null`.

use serde::{Deserialize, Serialize};

use crate::certify::Certificate;
use crate::error::{Error, Result};
use crate::geometry::{min_pairwise_distance, Ball, BallInstance, Point};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    pub dimension: usize,
    pub disks: Vec<Ball>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CertificateEntry {
    pub opt_upper: Option<f64>,
    pub ratio_lower_bound: Option<f64>,
    pub opt_lower: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolutionFile {
    pub algorithm: String,
    pub points: Vec<Point>,
    pub min_distance: Option<f64>,
    pub certificate: CertificateEntry,
}

fn finite(x: f64) -> Option<f64> {
    x.is_finite().then_some(x)
}

impl From<&BallInstance> for InstanceFile {
    fn from(inst: &BallInstance) -> Self {
        InstanceFile {
            dimension: inst.dimension(),
            disks: inst.balls().to_vec(),
        }
    }
}

impl InstanceFile {
    pub fn into_instance(self) -> Result<BallInstance> {
        BallInstance::new(self.dimension, self.disks)
    }
}

impl From<&Certificate> for CertificateEntry {
    fn from(c: &Certificate) -> Self {
        CertificateEntry {
            opt_upper: finite(c.opt_upper),
            ratio_lower_bound: finite(c.ratio_lower_bound),
            opt_lower: c.opt_lower.and_then(finite),
        }
    }
}

impl SolutionFile {
    pub fn new(
        algorithm: impl Into<String>,
        points: Vec<Point>,
        certificate: &Certificate,
    ) -> Self {
        let min_distance = finite(min_pairwise_distance(&points));
        SolutionFile {
            algorithm: algorithm.into(),
            points,
            min_distance,
            certificate: certificate.into(),
        }
    }

    /// Checks that `min_distance` matches the points within `tol`
    /// (`null` is expected for fewer than two points).
    pub fn check_min_distance(&self, tol: f64) -> Result<()> {
        let recomputed = min_pairwise_distance(&self.points);
        let ok = match self.min_distance {
            None => !recomputed.is_finite(),
            Some(v) => (v - recomputed).abs() <= tol,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidArgument(format!(
                "min_distance {:?} does not match the points ({recomputed})",
                self.min_distance
            )))
        }
    }
}

pub fn instance_to_json(inst: &BallInstance) -> String {
    let mut s =
        serde_json::to_string_pretty(&InstanceFile::from(inst)).expect("instance serializes");
    s.push('\n');
    s
}

pub fn instance_from_json(text: &str) -> Result<BallInstance> {
    let file: InstanceFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    file.into_instance()
}

pub fn solution_to_json(sol: &SolutionFile) -> String {
    let mut s = serde_json::to_string_pretty(sol).expect("solution serializes");
    s.push('\n');
    s
}

pub fn solution_from_json(text: &str) -> Result<SolutionFile> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}
