//! Exact computations for central hyperplane arrangements: intersection
//! lattices, logarithmic derivation modules, Saito's criterion, and
//! combinatorial freeness certificates built from multiple addition,
//! deletion and restriction steps.

pub mod arrangement;
pub mod derivmod;
pub mod exactla;
pub mod rootsys;
pub mod theorems;

pub use arrangement::{
    Arrangement, ArrangementError, Hyperplane, IntersectionLattice, Multiplicity, Subspace, UniPoly,
};
pub use derivmod::{freeness_oracle, Derivation, FreenessStatus, FreenessVerdict};
pub use exactla::{LinAlgError, Matrix, Poly, Rational};
pub use rootsys::{RootSystem, RootType};
pub use theorems::{Certificate, CertificateStep, LatticeData, ReplayError, StepKind};
