use super::{in_module, DerivError, Derivation};
use crate::arrangement::{restrict, Arrangement, Hyperplane, Multiplicity, Subspace};
use crate::exactla::Poly;

/// Restricts a derivation tangent to `x` to the flat coordinates of `x`.
///
/// Tangency means `θ(β)` vanishes on `x` for every defining form `β`; the
/// restricted vector field is then read off through a left inverse of the
/// coordinate basis.
pub fn restrict_to_flat(theta: &Derivation, x: &Subspace) -> Result<Derivation, DerivError> {
    if theta.dim() != x.ambient() {
        return Err(DerivError::Dimension {
            got: theta.dim(),
            expected: x.ambient(),
        });
    }
    let coords = x.coordinates();
    for form in x.forms() {
        if !coords.restrict_poly(&theta.apply(&form)).is_zero() {
            return Err(DerivError::NotTangent);
        }
    }
    let p = coords.left_inverse();
    let restricted: Vec<Poly> = theta.coeffs().iter().map(|c| coords.restrict_poly(c)).collect();
    let k = coords.dim();
    let coeffs = (0..k)
        .map(|j| {
            restricted
                .iter()
                .enumerate()
                .fold(Poly::zero(k), |acc, (i, f)| &acc + &f.scale(&p[(j, i)]))
        })
        .collect();
    Derivation::with_degree(theta.degree(), coeffs)
}

fn hyperplane_flat(a: &Arrangement, h: &Hyperplane) -> Result<Subspace, DerivError> {
    if !a.contains(h) {
        return Err(DerivError::MissingHyperplane(h.clone()));
    }
    Ok(Subspace::from_hyperplanes(a.dim(), [h]))
}

/// `θ ∈ D(A)` restricted to `H ∈ A`; the result lies in `D(A^H)`.
pub fn euler_restrict(theta: &Derivation, h: &Hyperplane, a: &Arrangement) -> Result<Derivation, DerivError> {
    let x = hyperplane_flat(a, h)?;
    if let Some(i) = in_module(theta, a, &Multiplicity::simple(a.len()))? {
        return Err(DerivError::NotInModule {
            candidate: 0,
            hyperplane: a.hyperplanes()[i].clone(),
        });
    }
    let out = restrict_to_flat(theta, &x)?;
    let r = restrict(a, &x)?;
    let simple = Multiplicity::simple(r.arrangement.len());
    if in_module(&out, &r.arrangement, &simple)?.is_some() {
        return Err(DerivError::Postcondition("restriction left D(A^H)".into()));
    }
    Ok(out)
}

/// Ziegler's map on `D_H(A) = {θ ∈ D(A) : θ(α_H) = 0}`; the result lies in
/// `D(A^H, m^H)`.
pub fn ziegler_restrict(theta: &Derivation, h: &Hyperplane, a: &Arrangement) -> Result<Derivation, DerivError> {
    let x = hyperplane_flat(a, h)?;
    if !theta.apply_to(h).is_zero() {
        return Err(DerivError::NotInKernel(h.clone()));
    }
    if let Some(i) = in_module(theta, a, &Multiplicity::simple(a.len()))? {
        return Err(DerivError::NotInModule {
            candidate: 0,
            hyperplane: a.hyperplanes()[i].clone(),
        });
    }
    let out = restrict_to_flat(theta, &x)?;
    let r = restrict(a, &x)?;
    if in_module(&out, &r.arrangement, &r.multiplicity)?.is_some() {
        return Err(DerivError::Postcondition("restriction left D(A^H, m^H)".into()));
    }
    Ok(out)
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
    fn euler_restricts_to_euler() {
        let a = arr(3, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
        let r = euler_restrict(&Derivation::euler(3), &hp(&[0, 0, 1]), &a).unwrap();
        assert_eq!(r, Derivation::euler(2));
    }

    #[test]
    fn ziegler_on_boolean_plane() {
        let a = arr(2, &[&[1, 0], &[0, 1]]);
        let r = ziegler_restrict(&deriv(&["x", "0"]), &hp(&[0, 1]), &a).unwrap();
        assert_eq!(r, Derivation::euler(1));
    }

    #[test]
    fn ziegler_needs_kernel_member() {
        let a = arr(2, &[&[1, 0], &[0, 1]]);
        assert!(matches!(
            ziegler_restrict(&Derivation::euler(2), &hp(&[0, 1]), &a),
            Err(DerivError::NotInKernel(_))
        ));
    }

    #[test]
    fn ziegler_catalan_a1_lands_in_multiarrangement() {
        // y ∈ A; θ = x(x-y)(x+y)∂x kills y and lies in D(A)
        let a = arr(2, &[&[1, 0], &[1, -1], &[1, 1], &[0, 1]]);
        let theta = deriv(&["x^3 - x*y^2", "0"]);
        let r = ziegler_restrict(&theta, &hp(&[0, 1]), &a).unwrap();
        assert_eq!(r.degree(), 3);
    }

    #[test]
    fn non_tangent_rejected() {
        let x = Subspace::from_hyperplanes(2, [&hp(&[0, 1])]);
        assert_eq!(
            restrict_to_flat(&Derivation::partial(2, 1), &x).unwrap_err(),
            DerivError::NotTangent
        );
    }

    #[test]
    fn missing_hyperplane() {
        let a = arr(2, &[&[1, 0]]);
        assert!(matches!(
            euler_restrict(&Derivation::euler(2), &hp(&[0, 1]), &a),
            Err(DerivError::MissingHyperplane(_))
        ));
    }
}
