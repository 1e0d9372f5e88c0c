use std::collections::BTreeSet;

use super::exponents::{check_subset, complete_ad, plan_mat, plan_mat2, plan_mdt, shift, StepPlan};
use super::{CertificateStep, Evidence, Failure, StepKind, TheoremError};
use crate::arrangement::{localize, restrict, Arrangement, ArrangementError, Hyperplane, Subspace};

fn normals(hs: &[Hyperplane]) -> Vec<Vec<i64>> {
    hs.iter().map(|h| h.normal().to_vec()).collect()
}

fn check_exponents(e: &[u32], dim: usize, card: usize, what: &str) -> Result<(), TheoremError> {
    if e.len() != dim {
        return Err(TheoremError::Precondition(format!(
            "{what} has {} exponents in dimension {dim}",
            e.len()
        )));
    }
    let sum: u32 = e.iter().sum();
    if sum as usize != card {
        return Err(TheoremError::Precondition(format!(
            "exponents of {what} sum to {sum} but it has {card} hyperplanes"
        )));
    }
    Ok(())
}

fn check_distinct(a: &Arrangement, hs: &[Hyperplane]) -> Result<(), TheoremError> {
    let mut seen = BTreeSet::new();
    for h in hs {
        if h.dim() != a.dim() {
            return Err(ArrangementError::DimensionMismatch {
                got: h.dim(),
                dim: a.dim(),
            }
            .into());
        }
        if !seen.insert(h) {
            return Err(ArrangementError::Duplicate(h.clone()).into());
        }
    }
    Ok(())
}

/// `|A''_j|` for `H_j`: the restriction of `base` to `H_j` (members equal
/// to `H_j` drop out).
fn restricted_sizes(base: &Arrangement, hs: &[Hyperplane]) -> Result<Vec<usize>, TheoremError> {
    hs.iter()
        .map(|h| {
            let x = Subspace::from_hyperplanes(base.dim(), [h]);
            Ok(restrict(base, &x)?.arrangement.len())
        })
        .collect()
}

/// Conditions (1)-(3) shared by MAT, MAT2 and MDT.
fn verify_conditions(
    cardinality: usize,
    restricted: &[usize],
    plan: &StepPlan,
    hs: &[Hyperplane],
    others: &Arrangement,
    dim: usize,
) -> (usize, Vec<Failure>) {
    let mut failures = Vec::new();
    for (j, (&r, &t)) in restricted.iter().zip(&plan.targets).enumerate() {
        let difference = cardinality as i64 - r as i64;
        if difference != t as i64 {
            failures.push(Failure::Count {
                index: j,
                hyperplane: hs[j].normal().to_vec(),
                difference,
                target: t,
            });
        }
    }
    let x = Subspace::from_hyperplanes(dim, hs);
    if x.codim() != hs.len() {
        failures.push(Failure::Codim {
            expected: hs.len(),
            got: x.codim(),
        });
    }
    // over an infinite field X lies in the union of the K iff it lies in one
    if let Some(k) = others.iter().find(|k| x.is_inside(k)) {
        failures.push(Failure::Contained {
            witness: k.normal().to_vec(),
        });
    }
    (x.codim(), failures)
}

fn differences(cardinality: usize, restricted: &[usize]) -> Vec<u32> {
    restricted
        .iter()
        .map(|&r| cardinality.saturating_sub(r) as u32)
        .collect()
}

fn additions(a_prime: &Arrangement, new_hs: &[Hyperplane], exp_prime: &[u32]) -> Result<(), TheoremError> {
    check_distinct(a_prime, new_hs)?;
    if let Some(h) = new_hs.iter().find(|h| a_prime.contains(h)) {
        return Err(ArrangementError::AlreadyPresent(h.clone()).into());
    }
    check_exponents(exp_prime, a_prime.dim(), a_prime.len(), "A'")
}

/// Multiple addition: the top `p` exponents are a constant block `d`,
/// each `|A'| - |A''_j| = d`, the new hyperplanes meet in codimension
/// `p`, and their intersection lies in no member of `A'`.
pub fn check_mat(
    a_prime: &Arrangement,
    new_hs: &[Hyperplane],
    exp_prime: &[u32],
) -> Result<(Vec<u32>, CertificateStep), TheoremError> {
    additions(a_prime, new_hs, exp_prime)?;
    let (plan, d) = plan_mat(exp_prime, new_hs.len())?;
    let restricted = restricted_sizes(a_prime, new_hs)?;
    let (codim, failures) = verify_conditions(a_prime.len(), &restricted, &plan, new_hs, a_prime, a_prime.dim());
    if !failures.is_empty() {
        return Err(TheoremError::Rejected(failures));
    }
    let after = shift(exp_prime, &plan.positions, 1);
    let step = CertificateStep {
        kind: StepKind::Mat,
        hyperplanes: normals(new_hs),
        before: exp_prime.to_vec(),
        after: after.clone(),
        evidence: Evidence {
            cardinality: a_prime.len(),
            restricted: Some(restricted),
            targets: Some(plan.targets),
            positions: Some(plan.positions),
            codim: Some(codim),
            block: Some(d),
            ..Evidence::default()
        },
    };
    Ok((after, step))
}

fn mat2_core(
    a_prime: &Arrangement,
    new_hs: &[Hyperplane],
    exp_prime: &[u32],
) -> Result<(StepPlan, Vec<usize>, usize), TheoremError> {
    additions(a_prime, new_hs, exp_prime)?;
    let plan = plan_mat2(exp_prime, new_hs.len())?;
    let restricted = restricted_sizes(a_prime, new_hs)?;
    let (codim, failures) = verify_conditions(a_prime.len(), &restricted, &plan, new_hs, a_prime, a_prime.dim());
    if !failures.is_empty() {
        let only_counts = failures.iter().all(|f| matches!(f, Failure::Count { .. }));
        let counts = differences(a_prime.len(), &restricted);
        let mut sorted_counts = counts.clone();
        sorted_counts.sort_unstable();
        let mut sorted_targets = plan.targets.clone();
        sorted_targets.sort_unstable();
        if only_counts && sorted_counts == sorted_targets {
            return Err(TheoremError::IndexMismatch {
                counts,
                targets: plan.targets,
            });
        }
        return Err(TheoremError::Rejected(failures));
    }
    Ok((plan, restricted, codim))
}

/// Generalized multiple addition: `exp A' = (1, d_2, ..., d_l)`; the `j`-th
/// new hyperplane is paired with the `j`-th of the top `p` exponents and
/// must satisfy `|A'| - |A''_j| = d_j`.
pub fn check_mat2(
    a_prime: &Arrangement,
    new_hs: &[Hyperplane],
    exp_prime: &[u32],
) -> Result<(Vec<u32>, CertificateStep), TheoremError> {
    let (plan, restricted, codim) = mat2_core(a_prime, new_hs, exp_prime)?;
    let after = shift(exp_prime, &plan.positions, 1);
    let step = CertificateStep {
        kind: StepKind::Mat2,
        hyperplanes: normals(new_hs),
        before: exp_prime.to_vec(),
        after: after.clone(),
        evidence: Evidence {
            cardinality: a_prime.len(),
            restricted: Some(restricted),
            targets: Some(plan.targets),
            positions: Some(plan.positions),
            codim: Some(codim),
            ..Evidence::default()
        },
    };
    Ok((after, step))
}

/// Verifies the whole MAT2 family but adds only the hyperplanes indexed by
/// `subset`, raising only their exponents.
pub fn check_mat2_subset(
    a_prime: &Arrangement,
    new_hs: &[Hyperplane],
    exp_prime: &[u32],
    subset: &[usize],
) -> Result<(Vec<u32>, CertificateStep), TheoremError> {
    check_subset(subset, new_hs.len())?;
    let (plan, restricted, codim) = mat2_core(a_prime, new_hs, exp_prime)?;
    let moved: Vec<usize> = subset.iter().map(|&i| plan.positions[i]).collect();
    let after = shift(exp_prime, &moved, 1);
    let step = CertificateStep {
        kind: StepKind::Mat2Subset,
        hyperplanes: normals(new_hs),
        before: exp_prime.to_vec(),
        after: after.clone(),
        evidence: Evidence {
            cardinality: a_prime.len(),
            restricted: Some(restricted),
            targets: Some(plan.targets),
            positions: Some(plan.positions),
            codim: Some(codim),
            subset: Some(subset.to_vec()),
            ..Evidence::default()
        },
    };
    Ok((after, step))
}

fn mdt_core(
    a: &Arrangement,
    del_hs: &[Hyperplane],
    exp_a: &[u32],
) -> Result<(StepPlan, Vec<usize>, usize), TheoremError> {
    check_distinct(a, del_hs)?;
    if let Some(h) = del_hs.iter().find(|h| !a.contains(h)) {
        return Err(ArrangementError::Missing(h.clone()).into());
    }
    check_exponents(exp_a, a.dim(), a.len(), "A")?;
    let plan = plan_mdt(exp_a, del_hs.len())?;
    let restricted = restricted_sizes(a, del_hs)?;
    let a_prime = a.without(del_hs)?;
    let (codim, failures) = verify_conditions(a.len(), &restricted, &plan, del_hs, &a_prime, a.dim());
    if !failures.is_empty() {
        return Err(TheoremError::Rejected(failures));
    }
    Ok((plan, restricted, codim))
}

/// Multiple deletion: `exp A = (1, d_2, ..., d_l)` with `1 < d_2`; the
/// `j`-th deleted hyperplane is paired with `d_{j+1}` and must satisfy
/// `|A| - |A^{H_j}| = d_{j+1}`; condition (3) is checked against the
/// arrangement after deletion.
pub fn check_mdt(
    a: &Arrangement,
    del_hs: &[Hyperplane],
    exp_a: &[u32],
) -> Result<(Vec<u32>, CertificateStep), TheoremError> {
    let (plan, restricted, codim) = mdt_core(a, del_hs, exp_a)?;
    let after = shift(exp_a, &plan.positions, -1);
    let step = CertificateStep {
        kind: StepKind::Mdt,
        hyperplanes: normals(del_hs),
        before: exp_a.to_vec(),
        after: after.clone(),
        evidence: Evidence {
            cardinality: a.len(),
            restricted: Some(restricted),
            targets: Some(plan.targets),
            positions: Some(plan.positions),
            codim: Some(codim),
            ..Evidence::default()
        },
    };
    Ok((after, step))
}

/// Verifies the whole MDT family but deletes only the hyperplanes indexed by
/// `subset`.
pub fn check_mdt_subset(
    a: &Arrangement,
    del_hs: &[Hyperplane],
    exp_a: &[u32],
    subset: &[usize],
) -> Result<(Vec<u32>, CertificateStep), TheoremError> {
    check_subset(subset, del_hs.len())?;
    let (plan, restricted, codim) = mdt_core(a, del_hs, exp_a)?;
    let moved: Vec<usize> = subset.iter().map(|&i| plan.positions[i]).collect();
    let after = shift(exp_a, &moved, -1);
    let step = CertificateStep {
        kind: StepKind::MdtSubset,
        hyperplanes: normals(del_hs),
        before: exp_a.to_vec(),
        after: after.clone(),
        evidence: Evidence {
            cardinality: a.len(),
            restricted: Some(restricted),
            targets: Some(plan.targets),
            positions: Some(plan.positions),
            codim: Some(codim),
            subset: Some(subset.to_vec()),
            ..Evidence::default()
        },
    };
    Ok((after, step))
}

/// Known exponent tuples for `A`, `A' = A ∖ {H}` and `A'' = A^H`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AdFacts {
    pub full: Option<Vec<u32>>,
    pub deletion: Option<Vec<u32>>,
    pub restriction: Option<Vec<u32>>,
}

/// Addition-deletion: from two of the three facts infers the third. The
/// known facts are taken as verified; only their shapes and degree sums
/// are checked. The step reads as the deletion `A → A'`.
pub fn check_addition_deletion(
    a: &Arrangement,
    h: &Hyperplane,
    known: &AdFacts,
) -> Result<(AdFacts, CertificateStep), TheoremError> {
    if !a.contains(h) {
        return Err(ArrangementError::Missing(h.clone()).into());
    }
    let l = a.dim();
    for (e, len, what) in [
        (&known.full, l, "A"),
        (&known.deletion, l, "A'"),
        (&known.restriction, l.saturating_sub(1), "A''"),
    ] {
        if let Some(e) = e {
            if e.len() != len {
                return Err(TheoremError::ExponentShape {
                    position: e.len().min(len),
                    message: format!("{what} needs {len} exponents, got {}", e.len()),
                });
            }
        }
    }
    let (f, d, r) = complete_ad(
        known.full.as_deref(),
        known.deletion.as_deref(),
        known.restriction.as_deref(),
    )?;
    let restricted = restrict(a, &Subspace::from_hyperplanes(l, [h]))?.arrangement.len();
    check_exponents(&f, l, a.len(), "A")?;
    check_exponents(&d, l, a.len() - 1, "A'")?;
    check_exponents(&r, l - 1, restricted, "A''")?;
    let step = CertificateStep {
        kind: StepKind::AdditionDeletion,
        hyperplanes: vec![h.normal().to_vec()],
        before: f.clone(),
        after: d.clone(),
        evidence: Evidence {
            cardinality: a.len(),
            restricted: Some(vec![restricted]),
            restriction_exponents: Some(r.clone()),
            ..Evidence::default()
        },
    };
    Ok((
        AdFacts {
            full: Some(f),
            deletion: Some(d),
            restriction: Some(r),
        },
        step,
    ))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MrtVerdict {
    /// `|A^X|` matches and `A^X` is free with these exponents.
    Free { exponents: Vec<u32> },
    /// The count refutes the stated exponent tuple (not freeness of `A^X`).
    Refuted { count: usize, target: u32 },
}

/// Restriction count criterion: for `X ∈ L_k(A)` and
/// `exp A = (1, d_2, ..., d_l)`, `A^X` is free with exponents
/// `(1, d_{k+2}, ..., d_l)` iff `|A^X| = 1 + d_{k+2} + ... + d_l`.
///
/// A step is produced only for a positive verdict.
pub fn check_mrt_count(
    a: &Arrangement,
    x: &Subspace,
    exp_a: &[u32],
) -> Result<(MrtVerdict, Option<CertificateStep>), TheoremError> {
    let l = a.dim();
    if x.ambient() != l {
        return Err(ArrangementError::DimensionMismatch {
            got: x.ambient(),
            dim: l,
        }
        .into());
    }
    check_exponents(exp_a, l, a.len(), "A")?;
    if !super::is_sorted_exponents(exp_a) || exp_a.first() != Some(&1) {
        return Err(TheoremError::Precondition(format!(
            "exponents {exp_a:?} are not (1, d_2, ...) ascending"
        )));
    }
    let local = localize(a, x);
    if Subspace::from_hyperplanes(l, local.iter()) != *x {
        return Err(TheoremError::NotAFlat);
    }
    let k = x.codim();
    if k >= l {
        return Err(TheoremError::Precondition(
            "the flat must have positive dimension".into(),
        ));
    }
    let count = if k == 0 {
        a.len()
    } else {
        restrict(a, x)?.arrangement.len()
    };
    let tail = &exp_a[k + 1..];
    let target = 1 + tail.iter().sum::<u32>();
    if count != target as usize {
        return Ok((MrtVerdict::Refuted { count, target }, None));
    }
    let mut exponents = vec![1];
    exponents.extend_from_slice(tail);
    let step = CertificateStep {
        kind: StepKind::MrtCount,
        hyperplanes: normals(local.hyperplanes()),
        before: exp_a.to_vec(),
        after: exponents.clone(),
        evidence: Evidence {
            cardinality: a.len(),
            restricted: Some(vec![count]),
            targets: Some(vec![target]),
            codim: Some(k),
            ..Evidence::default()
        },
    };
    Ok((MrtVerdict::Free { exponents }, Some(step)))
}
