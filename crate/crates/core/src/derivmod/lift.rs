use num_traits::Zero;

use super::{saito_check, DerivError, Derivation};
use crate::arrangement::{b_polynomial, Arrangement, Hyperplane, Multiplicity};
use crate::exactla::Poly;

/// Lifts a basis of `D(A')` to a basis of `D(A' ∪ {H})`.
///
/// With `B` the polynomial of the pair `(A', H)` and `r_i = θ_i(α_H)|_H`,
/// some basis element `θ` of degree `deg B` has `r = c·B` with `c ≠ 0`
/// (otherwise the addition does not apply). Each other element of degree at
/// least `deg B` has `r_i` divisible by `r`; subtracting the lifted
/// quotient times `θ` makes it vanish on `α_H`. Finally `θ` becomes
/// `α_H · θ`. The output is checked with Saito's criterion.
pub fn lift_basis_addition(
    basis: &[Derivation],
    a_prime: &Arrangement,
    h: &Hyperplane,
) -> Result<Vec<Derivation>, DerivError> {
    let l = a_prime.dim();
    let b = b_polynomial(a_prime, h)?;
    let d = b.degree();
    let form = h.form();
    let r: Vec<Poly> = basis
        .iter()
        .map(|t| b.coordinates.restrict_poly(&t.apply(&form)))
        .collect();
    let pivot = basis
        .iter()
        .zip(&r)
        .position(|(t, ri)| t.degree() == d && ri.scalar_ratio(&b.poly).is_some_and(|c| !c.is_zero()))
        .ok_or_else(|| {
            DerivError::NotApplicable(format!("no basis element of degree {d} restricts to a multiple of B"))
        })?;

    // u = P x expresses the flat coordinates of H as forms on the ambient space
    let p = b.coordinates.left_inverse();
    let lift: Vec<Poly> = (0..p.rows()).map(|j| Poly::linear(p.row(j))).collect();
    let theta = &basis[pivot];
    let alpha = h.poly();

    let mut out = Vec::with_capacity(basis.len());
    for (i, t) in basis.iter().enumerate() {
        if i == pivot {
            out.push(t.mul_poly(&alpha)?);
            continue;
        }
        if t.degree() < d || r[i].is_zero() {
            out.push(t.clone());
            continue;
        }
        let g = r[i]
            .div_exact(&r[pivot])
            .ok_or_else(|| DerivError::NotApplicable(format!("restriction of element {i} is not divisible by B")))?;
        let g = if l > 0 { g.substitute(&lift) } else { g };
        out.push(t.sub(&theta.mul_poly(&g)?)?);
    }

    let a = a_prime.with(std::slice::from_ref(h))?;
    match saito_check(&out, &a, &Multiplicity::simple(a.len())) {
        Ok(v) if v.is_basis() => Ok(out),
        Ok(v) => Err(DerivError::Postcondition(format!("lifted family rejected: {v:?}"))),
        Err(e) => Err(DerivError::Postcondition(format!("lifted family invalid: {e}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::default_var_names;

    fn arr(dim: usize, normals: &[&[i64]]) -> Arrangement {
        Arrangement::from_normals(dim, &normals.iter().map(|n| n.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    fn hp(n: &[i64]) -> Hyperplane {
        Hyperplane::new(n.to_vec()).unwrap()
    }

    fn deriv(parts: &[&str]) -> Derivation {
        let names = default_var_names(parts.len());
        Derivation::new(parts.iter().map(|s| Poly::parse(s, &names).unwrap()).collect()).unwrap()
    }

    #[test]
    fn add_second_coordinate_line() {
        let out = lift_basis_addition(
            &[deriv(&["x", "0"]), deriv(&["0", "1"])],
            &arr(2, &[&[1, 0]]),
            &hp(&[0, 1]),
        )
        .unwrap();
        assert_eq!(out, vec![deriv(&["x", "0"]), deriv(&["0", "y"])]);
    }

    #[test]
    fn add_diagonal_to_boolean() {
        let out = lift_basis_addition(
            &[deriv(&["x", "0"]), deriv(&["0", "y"])],
            &arr(2, &[&[1, 0], &[0, 1]]),
            &hp(&[1, 1]),
        )
        .unwrap();
        assert_eq!(out, vec![deriv(&["x^2 + x*y", "0"]), deriv(&["x", "y"])]);
    }

    #[test]
    fn mismatched_degrees_not_applicable() {
        // the plane x+y+z meets the coordinate planes in three distinct lines, so deg B = 0
        let a = arr(3, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
        let basis = [
            deriv(&["x", "0", "0"]),
            deriv(&["0", "y", "0"]),
            deriv(&["0", "0", "z"]),
        ];
        assert!(matches!(
            lift_basis_addition(&basis, &a, &hp(&[1, 1, 1])),
            Err(DerivError::NotApplicable(_))
        ));
    }
}
