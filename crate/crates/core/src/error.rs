use thiserror::Error;

use crate::lp::LpError;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("instance dimension must be at least 1")]
    ZeroDimension,

    #[error("need at least {required} balls, found {found}")]
    TooFewBalls { required: usize, found: usize },

    #[error("ball {index}: invalid radius {radius}")]
    InvalidRadius { index: usize, radius: f64 },

    #[error("ball {index}: non-finite center coordinate")]
    NonFiniteCenter { index: usize },

    #[error("direction is not a unit vector (norm {norm})")]
    NonUnitDirection { norm: f64 },

    #[error("{function}: argument {value} outside its domain {domain}")]
    OutOfDomain {
        function: &'static str,
        value: f64,
        domain: &'static str,
    },

    #[error("minimum center distance is {delta}; the ratio analysis needs a positive distance")]
    DegenerateDelta { delta: f64 },

    #[error("no sign change on [{lo}, {hi}] (values {f_lo}, {f_hi})")]
    NoSignChange {
        lo: f64,
        hi: f64,
        f_lo: f64,
        f_hi: f64,
    },

    #[error("ball {index} has radius {radius}; a unit-radius instance is required")]
    NonUnitRadius { index: usize, radius: f64 },

    #[error(
        "balls must be pairwise interior-disjoint: balls {i} and {j} overlap \
         (center distance {distance} < radius sum {radius_sum})"
    )]
    Overlap {
        i: usize,
        j: usize,
        distance: f64,
        radius_sum: f64,
    },

    #[error("unsupported dimension {0}; container polytopes exist for d = 2 and d = 3 only")]
    UnsupportedDimension(usize),

    #[error("container polytope rejected: {0}")]
    InvalidPolytope(String),

    #[error("invalid interval instance: {0}")]
    InvalidIntervals(String),

    #[error("cyclic interval instance requires a positive curve length")]
    MissingCurveLength,

    #[error("point {index} lies outside its ball by {excess}")]
    PointOutsideBall { index: usize, excess: f64 },

    #[error("solution has {found} points for {expected} balls")]
    PointCountMismatch { expected: usize, found: usize },

    #[error("brute-force search exceeded its budget: {0}")]
    BudgetExceeded(String),

    #[error("generator could not place ball {placed} of {requested} after {attempts} attempts")]
    GeneratorExhausted {
        placed: usize,
        requested: usize,
        attempts: usize,
    },

    #[error("malformed JSON: {0}")]
    Parse(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("linear program is {0}; the formulation should always have an optimum")]
    LpNotOptimal(&'static str),

    #[error("linear program: {0}")]
    Lp(#[from] LpError),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
