//! Crate-wide error type and exit-code mapping.

use std::path::PathBuf;

use thiserror::Error;

use crate::sampler::SampleBatch;

/// Everything public in this crate that can fail reports one of these.
#[derive(Debug, Error)]
pub enum Error {
    /// A chord longer than the circle diameter cannot subtend any angle.
    #[error("chord {chord} exceeds diameter of circle with radius {radius}")]
    ChordTooLong { chord: f64, radius: f64 },

    /// Triangle sides that violate the triangle inequality beyond the
    /// configured slack have no interior angle.
    #[error("sides ({a}, {b}, {c}) do not form a triangle")]
    DegenerateTriangle { a: f64, b: f64, c: f64 },

    /// A direction was requested from a vector with (near-)zero norm.
    #[error("zero-length vector has no direction")]
    ZeroVector,

    /// Rolling contact updates are undefined when the contact coincides
    /// with the object centre.
    #[error("contact coincides with object centre; rolling update undefined")]
    ContactAtCenter,

    /// A joint that the recovery formulas require to sit on a link circle
    /// is off that circle beyond tolerance.
    #[error("joint is off its link circle: |{distance} - {radius}| exceeds tolerance {tolerance}")]
    OffCircle {
        distance: f64,
        radius: f64,
        tolerance: f64,
    },

    /// The cost integral diverges for a vanishing distal displacement.
    #[error("cost integral diverges: distal displacement is zero with nonzero task motion")]
    DivergentIntegral,

    /// A contact target lies outside the annulus a finger can reach.
    #[error("finger {finger_id}: target at distance {distance} outside reachable range [{min_reach}, {max_reach}]")]
    Unreachable {
        finger_id: usize,
        distance: f64,
        min_reach: f64,
        max_reach: f64,
    },

    /// The attempt budget ran out before `target_count` solutions were
    /// accepted. The partial batch and its statistics ride along.
    #[error("sampling budget exhausted: {} of {requested} solutions after {} attempts", partial.solutions.len(), partial.stats.attempts)]
    BudgetExhausted {
        requested: usize,
        partial: Box<SampleBatch>,
    },

    /// Weight allocation needs at least one finger.
    #[error("weight allocation requires at least one finger")]
    NoFingers,

    /// Weight allocation over an all-but-zero cost vector is ill-posed.
    #[error("weight allocation degenerate: sum of squared costs {sum_sq} below 1e-18")]
    DegenerateCosts { sum_sq: f64 },

    /// k-means needs at least k distinct samples.
    #[error("k-means with k = {k} needs at least k distinct samples, got {distinct}")]
    TooFewSamples { k: usize, distinct: usize },

    /// Scenario synthesis could not place a consistent grasp.
    #[error("infeasible grasp: {reason}")]
    InfeasibleGrasp { reason: String },

    /// A scenario file failed to parse.
    #[error("{path}: parse error at line {line}, column {column}: {message}")]
    Parse {
        path: PathBuf,
        line: usize,
        column: usize,
        message: String,
    },

    /// A well-formed input carried a value outside its domain.
    #[error("invalid value for `{field}`: {reason}")]
    Validation { field: String, reason: String },

    /// Plain I/O failure while reading inputs or writing the bundle.
    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn validation(field: impl Into<String>, reason: impl Into<String>) -> Self {
        Error::Validation {
            field: field.into(),
            reason: reason.into(),
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    /// Process exit code for the CLI: 2 for usage and input-format errors,
    /// 1 for domain failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse { .. } | Error::Validation { .. } => 2,
            _ => 1,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
