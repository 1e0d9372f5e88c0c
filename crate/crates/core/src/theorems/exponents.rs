//! Bookkeeping on ascending exponent tuples shared by the checkers and the
//! replayer.

use super::TheoremError;

pub fn is_sorted_exponents(e: &[u32]) -> bool {
    e.windows(2).all(|w| w[0] <= w[1])
}

/// Which sorted positions a multiple step touches and the exponent each of
/// its hyperplanes is paired with.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StepPlan {
    pub positions: Vec<usize>,
    pub targets: Vec<u32>,
}

fn require_sorted(e: &[u32]) -> Result<(), TheoremError> {
    if is_sorted_exponents(e) {
        Ok(())
    } else {
        Err(TheoremError::Precondition(format!("exponents {e:?} are not ascending")))
    }
}

fn require_count(l: usize, p: usize) -> Result<(), TheoremError> {
    if p == 0 {
        return Err(TheoremError::Precondition("no hyperplanes given".into()));
    }
    if p + 1 > l {
        return Err(TheoremError::Precondition(format!(
            "{p} hyperplanes need at least {} exponents, have {l}",
            p + 1
        )));
    }
    Ok(())
}

fn top(before: &[u32], p: usize) -> StepPlan {
    let l = before.len();
    let positions: Vec<usize> = (l - p..l).collect();
    let targets = positions.iter().map(|&i| before[i]).collect();
    StepPlan { positions, targets }
}

/// MAT: the top `p` exponents form a constant block `d`.
pub(crate) fn plan_mat(before: &[u32], p: usize) -> Result<(StepPlan, u32), TheoremError> {
    require_sorted(before)?;
    require_count(before.len(), p)?;
    let plan = top(before, p);
    let d = plan.targets[0];
    if plan.targets.iter().any(|&t| t != d) {
        return Err(TheoremError::Precondition(format!(
            "top {p} exponents of {before:?} are not a constant block"
        )));
    }
    Ok((plan, d))
}

/// MAT2: `before = (1, d_2, ..., d_l)`, new hyperplanes paired with the top
/// `p` positions in order.
pub(crate) fn plan_mat2(before: &[u32], p: usize) -> Result<StepPlan, TheoremError> {
    require_sorted(before)?;
    require_count(before.len(), p)?;
    if before[0] != 1 {
        return Err(TheoremError::Precondition(format!(
            "smallest exponent of {before:?} is not 1"
        )));
    }
    Ok(top(before, p))
}

/// MDT: `before = (1, d_2, ..., d_l)` with `1 < d_2`; deleted hyperplanes
/// paired with positions `1..=p`.
pub(crate) fn plan_mdt(before: &[u32], p: usize) -> Result<StepPlan, TheoremError> {
    require_sorted(before)?;
    if before.first() != Some(&1) || before.get(1).is_none_or(|&d| d <= 1) {
        return Err(TheoremError::NotApplicable(format!(
            "exponents {before:?} do not have exactly one entry equal to 1"
        )));
    }
    require_count(before.len(), p)?;
    let positions: Vec<usize> = (1..=p).collect();
    let targets = positions.iter().map(|&i| before[i]).collect();
    Ok(StepPlan { positions, targets })
}

pub(crate) fn check_subset(subset: &[usize], p: usize) -> Result<(), TheoremError> {
    if subset.windows(2).any(|w| w[0] >= w[1]) || subset.last().is_some_and(|&i| i >= p) {
        return Err(TheoremError::Precondition(format!(
            "subset {subset:?} is not an increasing list of indices below {p}"
        )));
    }
    Ok(())
}

/// Adds `delta` at the given positions and re-sorts.
pub(crate) fn shift(before: &[u32], positions: &[usize], delta: i64) -> Vec<u32> {
    let mut out = before.to_vec();
    for &i in positions {
        out[i] = (out[i] as i64 + delta) as u32;
    }
    out.sort_unstable();
    out
}

/// Removes `small` from `big` as multisets, where `big` has exactly one
/// more element; returns the leftover or the first unmatched index of
/// `small`.
fn leftover(big: &[u32], small: &[u32]) -> Result<u32, usize> {
    if big.len() != small.len() + 1 {
        return Err(small.len().min(big.len()));
    }
    let mut j = 0;
    let mut rest = Vec::new();
    for &b in big {
        if j < small.len() && small[j] == b {
            j += 1;
        } else if j < small.len() && small[j] < b {
            return Err(j);
        } else {
            rest.push(b);
        }
    }
    if j < small.len() || rest.len() != 1 {
        return Err(j);
    }
    Ok(rest[0])
}

fn shape_error(position: usize, message: impl Into<String>) -> TheoremError {
    TheoremError::ExponentShape {
        position,
        message: message.into(),
    }
}

/// `(exp A, exp A', exp A'')`.
type AdTriple = (Vec<u32>, Vec<u32>, Vec<u32>);

/// Completes the triple `(exp A, exp A', exp A'')` of addition-deletion
/// from two known entries. All tuples are ascending.
pub(crate) fn complete_ad(
    full: Option<&[u32]>,
    deletion: Option<&[u32]>,
    restriction: Option<&[u32]>,
) -> Result<AdTriple, TheoremError> {
    for e in [full, deletion, restriction].into_iter().flatten() {
        require_sorted(e)?;
    }
    match (full, deletion, restriction) {
        (Some(f), _, Some(r)) => {
            let e = leftover(f, r).map_err(|i| shape_error(i, format!("{r:?} is not contained in {f:?}")))?;
            if e == 0 {
                return Err(shape_error(f.len() - 1, "the exponent shared with the deletion is 0"));
            }
            let mut d = r.to_vec();
            d.push(e - 1);
            d.sort_unstable();
            if let Some(given) = deletion {
                if given != d.as_slice() {
                    let i = given.iter().zip(&d).position(|(a, b)| a != b).unwrap_or(0);
                    return Err(shape_error(i, format!("deletion exponents should be {d:?}")));
                }
            }
            Ok((f.to_vec(), d, r.to_vec()))
        }
        (Some(f), Some(d), None) => {
            if f.len() != d.len() {
                return Err(shape_error(f.len().min(d.len()), "tuples differ in length"));
            }
            let mut seen = Vec::new();
            for &e in f {
                if e == 0 || seen.contains(&e) {
                    continue;
                }
                seen.push(e);
                let i = f.iter().position(|&x| x == e).unwrap();
                if shift(f, &[i], -1) == d {
                    let mut r = f.to_vec();
                    r.remove(i);
                    return Ok((f.to_vec(), d.to_vec(), r));
                }
            }
            let i = f.iter().zip(d).position(|(a, b)| a != b).unwrap_or(0);
            Err(shape_error(
                i,
                format!("{d:?} is not {f:?} with one entry lowered by 1"),
            ))
        }
        (None, Some(d), Some(r)) => {
            let e = leftover(d, r).map_err(|i| shape_error(i, format!("{r:?} is not contained in {d:?}")))?;
            let mut f = r.to_vec();
            f.push(e + 1);
            f.sort_unstable();
            Ok((f, d.to_vec(), r.to_vec()))
        }
        _ => Err(TheoremError::Precondition(
            "addition-deletion needs two of the three exponent tuples".into(),
        )),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn boolean_deletion_from_restriction() {
        let (_, d, _) = complete_ad(Some(&[1, 1]), None, Some(&[1])).unwrap();
        assert_eq!(d, vec![0, 1]);
    }

    #[test]
    fn a2_deletion() {
        let (_, d, _) = complete_ad(Some(&[1, 2]), None, Some(&[1])).unwrap();
        assert_eq!(d, vec![1, 1]);
    }

    #[test]
    fn full_from_deletion_and_restriction() {
        let (f, _, _) = complete_ad(None, Some(&[1, 1]), Some(&[1])).unwrap();
        assert_eq!(f, vec![1, 2]);
    }

    #[test]
    fn restriction_from_full_and_deletion() {
        let (_, _, r) = complete_ad(Some(&[1, 2, 3]), Some(&[1, 2, 2]), None).unwrap();
        assert_eq!(r, vec![1, 2]);
    }

    #[test]
    fn mismatch_reports_index() {
        let err = complete_ad(Some(&[1, 2, 3]), None, Some(&[1, 4])).unwrap_err();
        assert_eq!(
            err,
            TheoremError::ExponentShape {
                position: 1,
                message: "[1, 4] is not contained in [1, 2, 3]".into()
            }
        );
    }

    #[test]
    fn mdt_needs_single_one() {
        assert!(matches!(plan_mdt(&[1, 1], 1), Err(TheoremError::NotApplicable(_))));
        assert_eq!(plan_mdt(&[1, 3], 1).unwrap().positions, vec![1]);
    }

    #[test]
    fn mat_block() {
        assert_eq!(plan_mat(&[1, 2, 2], 2).unwrap().1, 2);
        assert!(plan_mat(&[1, 2, 3], 2).is_err());
        assert!(plan_mat(&[1, 2, 2], 3).is_err());
    }
}
