use num_traits::Zero;

use super::{in_module, DerivError, Derivation};
use crate::arrangement::{Arrangement, Multiplicity};
use crate::exactla::{linear_power_remainder, Poly, Rational};

/// Outcome of Saito's criterion on `ℓ` members of `D(A, m)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SaitoVerdict {
    /// `det(θ_i(x_j)) = scalar · Q(A, m)` with `scalar ≠ 0`.
    Basis {
        scalar: Rational,
    },
    ZeroDeterminant,
    DegreeSumMismatch {
        sum: u32,
        expected: u32,
    },
}

impl SaitoVerdict {
    pub fn is_basis(&self) -> bool {
        matches!(self, SaitoVerdict::Basis { .. })
    }
}

/// Determinant of a square matrix of polynomials by cofactor expansion
/// along the first row.
pub fn poly_det(m: &[Vec<Poly>], nvars: usize) -> Poly {
    let n = m.len();
    if n == 0 {
        return Poly::one(nvars);
    }
    let cols: Vec<usize> = (0..n).collect();
    det_rec(m, 0, &cols, nvars)
}

fn det_rec(m: &[Vec<Poly>], row: usize, cols: &[usize], nvars: usize) -> Poly {
    if cols.len() == 1 {
        return m[row][cols[0]].clone();
    }
    let mut acc = Poly::zero(nvars);
    for (k, &c) in cols.iter().enumerate() {
        let entry = &m[row][c];
        if entry.is_zero() {
            continue;
        }
        let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
        let term = entry * &det_rec(m, row + 1, &rest, nvars);
        acc = if k % 2 == 0 { &acc + &term } else { &acc - &term };
    }
    acc
}

/// Saito's criterion: `ℓ` homogeneous members of `D(A, m)` form a basis iff
/// their coefficient determinant is nonzero and their degrees sum to `|m|`.
///
/// Candidates outside the module are an error, not a rejection.
pub fn saito_check(candidates: &[Derivation], a: &Arrangement, m: &Multiplicity) -> Result<SaitoVerdict, DerivError> {
    let l = a.dim();
    if candidates.len() != l {
        return Err(DerivError::WrongCount {
            got: candidates.len(),
            expected: l,
        });
    }
    for (i, theta) in candidates.iter().enumerate() {
        if let Some(h) = in_module(theta, a, m)? {
            return Err(DerivError::NotInModule {
                candidate: i,
                hyperplane: a.hyperplanes()[h].clone(),
            });
        }
    }
    let rows: Vec<Vec<Poly>> = candidates.iter().map(|t| t.coeffs().to_vec()).collect();
    let det = poly_det(&rows, l);
    if det.is_zero() {
        return Ok(SaitoVerdict::ZeroDeterminant);
    }
    for (h, &k) in a.iter().zip(m.values()) {
        if !linear_power_remainder(&det, &h.form(), k)?.0 {
            return Err(DerivError::DeterminantNotDivisible(h.clone()));
        }
    }
    let sum: u32 = candidates
        .iter()
        .map(|t| if t.is_zero() { 0 } else { t.degree() })
        .sum();
    if sum != m.total() {
        return Ok(SaitoVerdict::DegreeSumMismatch {
            sum,
            expected: m.total(),
        });
    }
    match det.scalar_ratio(&a.defining_poly(m)) {
        Some(c) if !c.is_zero() => Ok(SaitoVerdict::Basis { scalar: c }),
        _ => Err(DerivError::Postcondition(
            "determinant of full degree is not a multiple of Q".into(),
        )),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::default_var_names;

    fn arr(dim: usize, normals: &[&[i64]]) -> Arrangement {
        Arrangement::from_normals(dim, &normals.iter().map(|n| n.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    fn deriv(parts: &[&str]) -> Derivation {
        let names = default_var_names(parts.len());
        Derivation::new(parts.iter().map(|s| Poly::parse(s, &names).unwrap()).collect()).unwrap()
    }

    #[test]
    fn boolean_basis() {
        let a = arr(2, &[&[1, 0], &[0, 1]]);
        let v = saito_check(&[deriv(&["x", "0"]), deriv(&["0", "y"])], &a, &Multiplicity::simple(2)).unwrap();
        assert!(v.is_basis());
    }

    #[test]
    fn a2_weyl_basis() {
        let a = arr(2, &[&[1, 0], &[0, 1], &[1, 1]]);
        let v = saito_check(
            &[Derivation::euler(2), deriv(&["x^2", "-y^2"])],
            &a,
            &Multiplicity::simple(3),
        )
        .unwrap();
        assert!(v.is_basis());
    }

    #[test]
    fn collinear_pair_is_rejected() {
        let a = arr(2, &[&[1, 0], &[0, 1]]);
        let e = Derivation::euler(2);
        let v = saito_check(&[e.clone(), e], &a, &Multiplicity::simple(2)).unwrap();
        assert_eq!(v, SaitoVerdict::ZeroDeterminant);
    }

    #[test]
    fn degree_sum_too_big() {
        let a = arr(2, &[&[1, 0], &[0, 1]]);
        let v = saito_check(
            &[deriv(&["x^2", "0"]), deriv(&["0", "y"])],
            &a,
            &Multiplicity::simple(2),
        )
        .unwrap();
        assert_eq!(v, SaitoVerdict::DegreeSumMismatch { sum: 3, expected: 2 });
    }

    #[test]
    fn non_member_is_an_error() {
        let a = arr(2, &[&[1, 0], &[0, 1]]);
        let err = saito_check(&[deriv(&["y", "0"]), deriv(&["0", "y"])], &a, &Multiplicity::simple(2)).unwrap_err();
        assert!(matches!(err, DerivError::NotInModule { candidate: 0, .. }));
    }

    #[test]
    fn wrong_count() {
        let a = arr(2, &[&[1, 0]]);
        assert!(matches!(
            saito_check(&[Derivation::euler(2)], &a, &Multiplicity::simple(1)),
            Err(DerivError::WrongCount { got: 1, expected: 2 })
        ));
    }

    #[test]
    fn det_three_by_three() {
        let n = 3;
        let id: Vec<Vec<Poly>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| if i == j { Poly::var(n, i) } else { Poly::zero(n) })
                    .collect()
            })
            .collect();
        let names = default_var_names(3);
        assert_eq!(poly_det(&id, n), Poly::parse("x*y*z", &names).unwrap());
    }
}
