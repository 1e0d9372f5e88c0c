//! Height-by-height certificate from `Shi^k` to `Cat^k`: stage `s` adds
//! `H_β^{-k}` for every root `β` of height `s` in one MAT2 step.

use std::collections::BTreeSet;

use crate::arrangement::{Arrangement, Multiplicity};
use crate::derivmod::{freeness_oracle, Derivation, FreenessStatus};
use crate::theorems::{
    check_mat2, replay_certificate, replay_certificate_trusting, Certificate, LatticeData, ReplayError, Seed,
    SeedVerdict,
};

use super::{build_cone, cone_hyperplane, parse_family, roots_of_height, ConeKind, RootError, RootSystem};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SeedPolicy {
    /// Certify the seed with the derivation-module oracle.
    Oracle { bound: Option<u32> },
    /// Take the seed exponents on trust.
    Supplied(Vec<u32>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Stage {
    pub height: u32,
    pub roots: Vec<Vec<i64>>,
    /// `|A^{H_j}|` for each added hyperplane.
    pub restricted: Vec<usize>,
    /// `|A| - |A^{H_j}|`, to be compared with the paired exponents.
    pub counts: Vec<u32>,
    pub exponents: Vec<u32>,
}

#[derive(Clone, Debug)]
pub struct CatalanCertificate {
    pub certificate: Certificate,
    pub stages: Vec<Stage>,
    /// Basis of `D(Shi^k)` when the oracle certified the seed.
    pub seed_basis: Option<Vec<Derivation>>,
    pub arrangement: Arrangement,
}

pub fn catalan_certificate(rs: &RootSystem, k: u32, policy: SeedPolicy) -> Result<CatalanCertificate, RootError> {
    let shi = build_cone(rs, ConeKind::Shi { k })?.arrangement;
    let (verdict, mut exps, seed_basis) = match policy {
        SeedPolicy::Oracle { bound } => {
            let m = Multiplicity::simple(shi.len());
            let v = freeness_oracle(&shi, &m, bound);
            match (v.status, v.exponents) {
                (FreenessStatus::FreeWithExponents, Some(e)) => (SeedVerdict::FreeWithExponents, e, v.basis),
                (status, _) => return Err(RootError::Seed(format!("oracle verdict {status:?} for Shi^{k}({rs})"))),
            }
        }
        SeedPolicy::Supplied(e) => (SeedVerdict::Supplied, e, None),
    };
    exps.sort_unstable();
    let seed = Seed {
        source: format!("shi:{rs}:k={k}"),
        verdict,
        exponents: exps.clone(),
        hyperplanes: shi.iter().map(|h| h.normal().to_vec()).collect(),
    };

    let mut current = shi;
    let mut steps = Vec::new();
    let mut stages = Vec::new();
    for s in 1..rs.coxeter_number() {
        let roots = roots_of_height(rs, s);
        let hs: Vec<_> = roots.iter().map(|r| cone_hyperplane(r, -(k as i64))).collect();
        let (after, step) = check_mat2(&current, &hs, &exps).map_err(|e| RootError::Stage {
            stage: s as usize,
            reason: e.to_string(),
        })?;
        let restricted = step.evidence.restricted.clone().unwrap_or_default();
        stages.push(Stage {
            height: s,
            roots,
            counts: restricted.iter().map(|&r| (current.len() - r) as u32).collect(),
            restricted,
            exponents: after.clone(),
        });
        current = current.with(&hs).expect("check_mat2 verified the additions are new");
        exps = after;
        steps.push(step);
    }
    let certificate = Certificate {
        dim: rs.rank() + 1,
        seed,
        steps,
    };
    Ok(CatalanCertificate {
        certificate,
        stages,
        seed_basis,
        arrangement: current,
    })
}

/// Checks that the seed hyperplanes are those of the named source. A source
/// `"empty"` needs an empty seed; `"file:<name>"` is not checked.
pub fn verify_seed_source(cert: &Certificate) -> Result<(), RootError> {
    let source = cert.seed.source.as_str();
    if source == "empty" {
        return if cert.seed.hyperplanes.is_empty() {
            Ok(())
        } else {
            Err(RootError::Seed("source \"empty\" with a nonempty seed".into()))
        };
    }
    if source.starts_with("file:") {
        return Ok(());
    }
    let (_, cone) = parse_family(source)?.build()?;
    if cone.arrangement.dim() != cert.dim {
        return Err(RootError::Seed(format!(
            "source {source} lives in dimension {}, certificate in {}",
            cone.arrangement.dim(),
            cert.dim
        )));
    }
    let expected: BTreeSet<Vec<i64>> = cone.arrangement.iter().map(|h| h.normal().to_vec()).collect();
    let given: BTreeSet<Vec<i64>> = cert.seed.hyperplanes.iter().cloned().collect();
    if expected != given || given.len() != cert.seed.hyperplanes.len() {
        return Err(RootError::Seed(format!("seed hyperplanes are not those of {source}")));
    }
    Ok(())
}

/// [`verify_seed_source`] followed by lattice replay.
pub fn replay_with_source(
    data: &LatticeData,
    cert: &Certificate,
    trust_supplied: bool,
) -> Result<Vec<u32>, ReplayError> {
    verify_seed_source(cert).map_err(|e| ReplayError {
        step: None,
        message: e.to_string(),
    })?;
    if trust_supplied {
        replay_certificate_trusting(data, cert)
    } else {
        replay_certificate(data, cert)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::{build_root_system, RootType};

    fn run(kind: RootType, n: usize) -> CatalanCertificate {
        let rs = build_root_system(kind, n).unwrap();
        catalan_certificate(&rs, 1, SeedPolicy::Oracle { bound: None }).unwrap()
    }

    #[test]
    fn a1() {
        let c = run(RootType::A, 1);
        assert_eq!(c.certificate.seed.exponents, vec![1, 2]);
        assert_eq!(c.stages[0].counts, vec![2]);
        assert_eq!(c.certificate.final_exponents(), &[1, 3]);
        assert_eq!(c.arrangement.len(), 4);
    }

    #[test]
    fn a2() {
        let c = run(RootType::A, 2);
        assert_eq!(c.certificate.seed.exponents, vec![1, 3, 3]);
        let counts: Vec<_> = c.stages.iter().map(|s| s.counts.clone()).collect();
        assert_eq!(counts, vec![vec![3, 3], vec![4]]);
        assert_eq!(c.certificate.final_exponents(), &[1, 4, 5]);
        verify_seed_source(&c.certificate).unwrap();
    }

    #[test]
    fn b2() {
        let c = run(RootType::B, 2);
        assert_eq!(c.certificate.seed.exponents, vec![1, 4, 4]);
        let counts: Vec<_> = c.stages.iter().map(|s| s.counts.clone()).collect();
        assert_eq!(counts, vec![vec![4, 4], vec![5], vec![6]]);
        assert_eq!(c.certificate.final_exponents(), &[1, 5, 7]);
    }

    #[test]
    fn wrong_supplied_seed_fails_at_stage_one() {
        let rs = build_root_system(RootType::A, 2).unwrap();
        let err = catalan_certificate(&rs, 1, SeedPolicy::Supplied(vec![1, 2, 4])).unwrap_err();
        assert!(matches!(err, RootError::Stage { stage: 1, .. }), "{err:?}");
    }

    #[test]
    fn seed_source_mismatch() {
        let mut c = run(RootType::A, 1).certificate;
        c.seed.source = "shi:A1:k=2".into();
        assert!(verify_seed_source(&c).is_err());
        c.seed.source = "file:seed.txt".into();
        assert!(verify_seed_source(&c).is_ok());
    }
}
