use std::collections::{BTreeMap, HashMap};

use num_traits::Zero;

use super::{DerivError, Derivation};
use crate::arrangement::{Arrangement, Multiplicity};
use crate::exactla::{
    linear_power_remainder, monomials_of_degree, AdaptedCoordinates, Matrix, Monomial, Poly, Rational,
};

/// Positions of the degree-`d` monomials, used to flatten derivations into
/// coefficient vectors of length `dim · #monomials`.
#[derive(Clone, Debug)]
pub struct MonomialIndex {
    dim: usize,
    degree: u32,
    monomials: Vec<Monomial>,
    position: HashMap<Monomial, usize>,
}

impl MonomialIndex {
    pub fn new(dim: usize, degree: u32) -> Self {
        let monomials = monomials_of_degree(dim, degree);
        let position = monomials.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        MonomialIndex {
            dim,
            degree,
            monomials,
            position,
        }
    }

    pub fn num_monomials(&self) -> usize {
        self.monomials.len()
    }

    pub fn vector_len(&self) -> usize {
        self.dim * self.monomials.len()
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    pub fn to_vector(&self, theta: &Derivation) -> Vec<Rational> {
        assert_eq!(theta.dim(), self.dim, "dimension mismatch");
        let m = self.monomials.len();
        let mut v = vec![Rational::zero(); self.vector_len()];
        if theta.is_zero() {
            return v;
        }
        assert_eq!(theta.degree(), self.degree, "degree mismatch");
        for (i, c) in theta.coeffs().iter().enumerate() {
            for (mono, coeff) in c.terms() {
                v[i * m + self.position[mono]] = coeff.clone();
            }
        }
        v
    }

    pub fn from_vector(&self, v: &[Rational]) -> Derivation {
        let m = self.monomials.len();
        let coeffs = (0..self.dim)
            .map(|i| {
                Poly::from_terms(
                    self.dim,
                    self.monomials
                        .iter()
                        .enumerate()
                        .map(|(j, mono)| (mono.clone(), v[i * m + j].clone())),
                )
            })
            .collect();
        Derivation::with_degree(self.degree, coeffs).expect("monomials share the degree")
    }
}

/// A basis of the degree-`d` part of `D(A, m)`.
#[derive(Clone, Debug)]
pub struct DerivationSlice {
    pub degree: u32,
    pub basis: Vec<Derivation>,
    /// Dimension of all degree-`d` derivations, `ℓ · C(d+ℓ-1, ℓ-1)`.
    pub ambient_dim: usize,
}

impl DerivationSlice {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

/// Solves for `D(A, m)_d`.
///
/// For each hyperplane the coordinates are changed so that `α_H = y_1`; a
/// degree-`d` derivation lies in the module iff every coefficient of
/// `θ(α_H)` on a monomial with `y_1`-exponent below `m(H)` vanishes. Those
/// coefficients are linear in the unknown coefficients of `θ`.
pub fn derivation_slice(a: &Arrangement, m: &Multiplicity, d: u32) -> DerivationSlice {
    assert_eq!(a.len(), m.len(), "multiplicity does not match arrangement");
    let dim = a.dim();
    let index = MonomialIndex::new(dim, d);
    let nm = index.num_monomials();
    let ncols = index.vector_len();
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    for (h, &mult) in a.iter().zip(m.values()) {
        let form = h.form();
        let coords = AdaptedCoordinates::new(&form).expect("normals are nonzero");
        let mut block: BTreeMap<Monomial, Vec<Rational>> = BTreeMap::new();
        for (j, mono) in index.monomials().iter().enumerate() {
            let rewritten = coords.rewrite(&Poly::monomial(dim, mono.clone(), Rational::from_integer(1.into())));
            for (u, c) in rewritten.terms() {
                if u.exponents()[0] >= mult {
                    continue;
                }
                let row = block.entry(u.clone()).or_insert_with(|| vec![Rational::zero(); ncols]);
                for (i, a_i) in form.iter().enumerate() {
                    if !a_i.is_zero() {
                        let v = &row[i * nm + j] + c * a_i;
                        row[i * nm + j] = v;
                    }
                }
            }
        }
        rows.extend(block.into_values());
    }
    let kernel = Matrix::from_rows(ncols, rows)
        .expect("rows have uniform width")
        .kernel_basis();
    DerivationSlice {
        degree: d,
        basis: kernel.iter().map(|v| index.from_vector(v)).collect(),
        ambient_dim: ncols,
    }
}

/// Index of the first hyperplane whose divisibility condition `θ` violates.
pub fn in_module(theta: &Derivation, a: &Arrangement, m: &Multiplicity) -> Result<Option<usize>, DerivError> {
    if theta.dim() != a.dim() {
        return Err(DerivError::Dimension {
            got: theta.dim(),
            expected: a.dim(),
        });
    }
    for (i, (h, &mult)) in a.iter().zip(m.values()).enumerate() {
        let (ok, _) = linear_power_remainder(&theta.apply_to(h), &h.form(), mult)?;
        if !ok {
            return Ok(Some(i));
        }
    }
    Ok(None)
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
    fn boolean_degree_one() {
        let a = arr(2, &[&[1, 0], &[0, 1]]);
        let s = derivation_slice(&a, &Multiplicity::simple(2), 1);
        assert_eq!(s.dim(), 2);
        assert_eq!(s.ambient_dim, 4);
        let idx = MonomialIndex::new(2, 1);
        let mut span = crate::exactla::EchelonSpan::new(4);
        for b in &s.basis {
            span.insert(&idx.to_vector(b));
        }
        assert!(span.contains(&idx.to_vector(&deriv(&["x", "0"]))));
        assert!(span.contains(&idx.to_vector(&deriv(&["0", "y"]))));
    }

    #[test]
    fn a2_weyl_degree_two() {
        let a = arr(2, &[&[1, 0], &[0, 1], &[1, 1]]);
        let s = derivation_slice(&a, &Multiplicity::simple(3), 2);
        assert_eq!(s.dim(), 3);
        let idx = MonomialIndex::new(2, 2);
        let mut span = crate::exactla::EchelonSpan::new(idx.vector_len());
        for b in &s.basis {
            span.insert(&idx.to_vector(b));
        }
        assert!(span.contains(&idx.to_vector(&deriv(&["x^2", "-y^2"]))));
        assert!(span.contains(&idx.to_vector(&deriv(&["x^2", "x*y"]))));
    }

    #[test]
    fn essential_degree_zero_is_empty() {
        let a = arr(3, &[&[1, 0, 0], &[0, 1, 0], &[1, 1, 1]]);
        assert_eq!(derivation_slice(&a, &Multiplicity::simple(3), 0).dim(), 0);
    }

    #[test]
    fn slice_members_pass_membership() {
        let a = arr(3, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[1, 1, 0], &[1, 0, -1]]);
        let m = Multiplicity::new(vec![1, 2, 1, 1, 2]).unwrap();
        for d in 0..4 {
            for b in derivation_slice(&a, &m, d).basis {
                assert_eq!(in_module(&b, &a, &m).unwrap(), None);
            }
        }
    }

    #[test]
    fn vector_round_trip() {
        let idx = MonomialIndex::new(2, 2);
        let d = deriv(&["x^2 - 2*x*y", "3*y^2"]);
        assert_eq!(idx.from_vector(&idx.to_vector(&d)), d);
    }
}
