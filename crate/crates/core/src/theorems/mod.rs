//! Combinatorial freeness theorems and replayable certificates.
//!
//! The `check_*` functions verify the hypotheses of addition-deletion,
//! multiple addition (MAT, MAT2), multiple deletion (MDT) and the
//! restriction count criterion on concrete arrangements and emit a
//! [`CertificateStep`]. Conclusions are not re-derived: a verified step
//! states the exponents the theorem predicts. [`replay_certificate`]
//! re-checks a whole chain of steps using intersection-lattice data only.

mod checks;
mod exponents;
mod replay;

pub use checks::{
    check_addition_deletion, check_mat, check_mat2, check_mat2_subset, check_mdt, check_mdt_subset, check_mrt_count,
    AdFacts, MrtVerdict,
};
pub use exponents::{is_sorted_exponents, StepPlan};
pub use replay::{find_isomorphism, replay_certificate, replay_certificate_trusting, LatticeData, ReplayError};

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arrangement::ArrangementError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum StepKind {
    AdditionDeletion,
    #[serde(rename = "MAT")]
    Mat,
    #[serde(rename = "MAT2")]
    Mat2,
    #[serde(rename = "MDT")]
    Mdt,
    #[serde(rename = "MDTSubset")]
    MdtSubset,
    #[serde(rename = "MAT2Subset")]
    Mat2Subset,
    #[serde(rename = "MRTCount")]
    MrtCount,
}

impl fmt::Display for StepKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            StepKind::AdditionDeletion => "AdditionDeletion",
            StepKind::Mat => "MAT",
            StepKind::Mat2 => "MAT2",
            StepKind::Mdt => "MDT",
            StepKind::MdtSubset => "MDTSubset",
            StepKind::Mat2Subset => "MAT2Subset",
            StepKind::MrtCount => "MRTCount",
        };
        f.write_str(s)
    }
}

/// The combinatorial quantities a step's hypotheses are stated in.
///
/// Which fields are present depends on the kind; replay recomputes the
/// whole record and compares it for equality.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Evidence {
    /// Size of the step's input arrangement.
    pub cardinality: usize,
    /// `|A''_j|` for each listed hyperplane (or `|A^X|` for a restriction).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub restricted: Option<Vec<usize>>,
    /// The value each `cardinality - restricted[j]` must equal.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub targets: Option<Vec<u32>>,
    /// Positions in the sorted input exponents that change.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub positions: Option<Vec<usize>>,
    /// Codimension of the intersection of the listed hyperplanes.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub codim: Option<usize>,
    /// The constant top exponent `d` (MAT only).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub block: Option<u32>,
    /// Indices into the listed hyperplanes actually added or removed.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub subset: Option<Vec<usize>>,
    /// Exponents of the restriction to the toggled hyperplane.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub restriction_exponents: Option<Vec<u32>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CertificateStep {
    pub kind: StepKind,
    pub hyperplanes: Vec<Vec<i64>>,
    pub before: Vec<u32>,
    pub after: Vec<u32>,
    pub evidence: Evidence,
}

impl CertificateStep {
    /// An addition-deletion step read in the other direction.
    pub fn reversed(&self) -> Option<CertificateStep> {
        if self.kind != StepKind::AdditionDeletion {
            return None;
        }
        let n = self.evidence.cardinality;
        let cardinality = if self.after.iter().sum::<u32>() < self.before.iter().sum::<u32>() {
            n - 1
        } else {
            n + 1
        };
        Some(CertificateStep {
            before: self.after.clone(),
            after: self.before.clone(),
            evidence: Evidence {
                cardinality,
                ..self.evidence.clone()
            },
            ..self.clone()
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SeedVerdict {
    /// Certified by the derivation-module oracle.
    FreeWithExponents,
    /// The empty arrangement, exponents all zero.
    Empty,
    /// Exponents supplied by the caller.
    Supplied,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Seed {
    /// A named family or a file name; informational for replay.
    pub source: String,
    pub verdict: SeedVerdict,
    pub exponents: Vec<u32>,
    pub hyperplanes: Vec<Vec<i64>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Certificate {
    pub dim: usize,
    pub seed: Seed,
    pub steps: Vec<CertificateStep>,
}

impl Certificate {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificates serialize")
    }

    pub fn from_json(s: &str) -> Result<Certificate, serde_json::Error> {
        serde_json::from_str(s)
    }

    /// Exponents claimed at the end of the chain.
    pub fn final_exponents(&self) -> &[u32] {
        self.steps
            .last()
            .map(|s| s.after.as_slice())
            .unwrap_or(&self.seed.exponents)
    }
}

/// A failed hypothesis, with its witness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Failure {
    /// `|A| - |A''_j|` differs from the target for hyperplane `index`.
    Count {
        index: usize,
        hyperplane: Vec<i64>,
        difference: i64,
        target: u32,
    },
    /// The listed hyperplanes meet in the wrong codimension.
    Codim { expected: usize, got: usize },
    /// The intersection lies inside `witness`.
    Contained { witness: Vec<i64> },
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Count {
                index,
                hyperplane,
                difference,
                target,
            } => write!(
                f,
                "condition (1) fails at j={index} {hyperplane:?}: difference {difference}, expected {target}"
            ),
            Failure::Codim { expected, got } => {
                write!(f, "condition (2) fails: codimension {got}, expected {expected}")
            }
            Failure::Contained { witness } => {
                write!(f, "condition (3) fails: intersection lies in {witness:?}")
            }
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TheoremError {
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("not applicable: {0}")]
    NotApplicable(String),
    #[error("exponents inconsistent at position {position}: {message}")]
    ExponentShape { position: usize, message: String },
    #[error("hypotheses fail: {}", .0.iter().map(|f| f.to_string()).collect::<Vec<_>>().join("; "))]
    Rejected(Vec<Failure>),
    #[error("counts {counts:?} match targets {targets:?} only after reordering the hyperplanes")]
    IndexMismatch { counts: Vec<u32>, targets: Vec<u32> },
    #[error("subspace is not a flat of the arrangement")]
    NotAFlat,
    #[error(transparent)]
    Arrangement(#[from] ArrangementError),
}
