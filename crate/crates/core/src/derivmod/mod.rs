//! Logarithmic derivation modules `D(A, m)`.
//!
//! A homogeneous derivation `θ = Σ f_i ∂_i` is stored by its coefficient
//! polynomials `θ(x_i) = f_i`. Everything here works one degree at a time:
//! the degree-`d` part of `D(A, m)` is the kernel of an exact linear system
//! on the coefficients of a generic degree-`d` derivation.

mod lift;
mod oracle;
mod restrict;
mod saito;
mod slice;

pub use lift::lift_basis_addition;
pub use oracle::{freeness_oracle, FreenessStatus, FreenessVerdict};
pub use restrict::{euler_restrict, restrict_to_flat, ziegler_restrict};
pub use saito::{poly_det, saito_check, SaitoVerdict};
pub use slice::{derivation_slice, in_module, DerivationSlice, MonomialIndex};

use std::fmt;

use thiserror::Error;

use crate::arrangement::{ArrangementError, Hyperplane};
use crate::exactla::{default_var_names, LinAlgError, Monomial, Poly, Rational};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DerivError {
    #[error("derivation has {got} coefficients, expected {expected}")]
    Dimension { got: usize, expected: usize },
    #[error("coefficient {index} is not homogeneous of degree {degree}")]
    NotHomogeneous { index: usize, degree: u32 },
    #[error("candidate {candidate} is not in D(A,m): fails at {hyperplane}")]
    NotInModule { candidate: usize, hyperplane: Hyperplane },
    #[error("expected {expected} candidates, got {got}")]
    WrongCount { got: usize, expected: usize },
    #[error("determinant is not divisible by the power of the form of {0}")]
    DeterminantNotDivisible(Hyperplane),
    #[error("derivation is not tangent to the flat")]
    NotTangent,
    #[error("derivation does not annihilate the form of {0}")]
    NotInKernel(Hyperplane),
    #[error("hyperplane {0} is not in the arrangement")]
    MissingHyperplane(Hyperplane),
    #[error("not applicable: {0}")]
    NotApplicable(String),
    #[error("internal check failed: {0}")]
    Postcondition(String),
    #[error(transparent)]
    Arrangement(#[from] ArrangementError),
    #[error(transparent)]
    LinAlg(#[from] LinAlgError),
}

/// A homogeneous polynomial derivation.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Derivation {
    degree: u32,
    coeffs: Vec<Poly>,
}

impl Derivation {
    /// Infers the degree from the nonzero coefficients; the zero
    /// derivation gets degree 0.
    pub fn new(coeffs: Vec<Poly>) -> Result<Self, DerivError> {
        let degree = coeffs.iter().find_map(Poly::degree).unwrap_or(0);
        Derivation::with_degree(degree, coeffs)
    }

    pub fn with_degree(degree: u32, coeffs: Vec<Poly>) -> Result<Self, DerivError> {
        let n = coeffs.len();
        for (i, c) in coeffs.iter().enumerate() {
            if c.nvars() != n {
                return Err(DerivError::Dimension {
                    got: c.nvars(),
                    expected: n,
                });
            }
            if !c.is_zero() && (!c.is_homogeneous() || c.degree() != Some(degree)) {
                return Err(DerivError::NotHomogeneous { index: i, degree });
            }
        }
        Ok(Derivation { degree, coeffs })
    }

    pub fn zero(dim: usize, degree: u32) -> Self {
        Derivation {
            degree,
            coeffs: vec![Poly::zero(dim); dim],
        }
    }

    /// `θ_E = Σ x_i ∂_i`.
    pub fn euler(dim: usize) -> Self {
        Derivation {
            degree: 1,
            coeffs: (0..dim).map(|i| Poly::var(dim, i)).collect(),
        }
    }

    /// `∂_i`.
    pub fn partial(dim: usize, i: usize) -> Self {
        let mut coeffs = vec![Poly::zero(dim); dim];
        coeffs[i] = Poly::one(dim);
        Derivation { degree: 0, coeffs }
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn coeffs(&self) -> &[Poly] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Poly::is_zero)
    }

    /// `θ(α)` for a linear form `α`.
    pub fn apply(&self, form: &[Rational]) -> Poly {
        assert_eq!(form.len(), self.dim(), "form arity mismatch");
        self.coeffs
            .iter()
            .zip(form)
            .fold(Poly::zero(self.dim()), |acc, (c, a)| &acc + &c.scale(a))
    }

    pub fn apply_to(&self, h: &Hyperplane) -> Poly {
        self.apply(&h.form())
    }

    /// `θ(f)` for an arbitrary polynomial, by the Leibniz rule.
    pub fn apply_poly(&self, f: &Poly) -> Poly {
        let n = self.dim();
        let mut out = Poly::zero(n);
        for (m, c) in f.terms() {
            for (i, coeff) in self.coeffs.iter().enumerate() {
                let e = m.exponents()[i];
                if e == 0 || coeff.is_zero() {
                    continue;
                }
                let mut dm = m.exponents().to_vec();
                dm[i] -= 1;
                let term = Poly::monomial(n, Monomial(dm), c * Rational::from_integer(e.into()));
                out = &out + &(&term * coeff);
            }
        }
        out
    }

    /// `f · θ` for a homogeneous polynomial `f`.
    pub fn mul_poly(&self, f: &Poly) -> Result<Derivation, DerivError> {
        if !f.is_homogeneous() {
            return Err(DerivError::NotHomogeneous { index: 0, degree: 0 });
        }
        let df = f.degree().unwrap_or(0);
        Ok(Derivation {
            degree: self.degree + df,
            coeffs: self.coeffs.iter().map(|c| c * f).collect(),
        })
    }

    pub fn scale(&self, c: &Rational) -> Derivation {
        Derivation {
            degree: self.degree,
            coeffs: self.coeffs.iter().map(|p| p.scale(c)).collect(),
        }
    }

    /// Sum of two derivations of the same degree (a zero summand adopts the
    /// other's degree).
    pub fn add(&self, other: &Derivation) -> Result<Derivation, DerivError> {
        let degree = match (self.is_zero(), other.is_zero()) {
            (true, _) => other.degree,
            (_, true) => self.degree,
            _ if self.degree == other.degree => self.degree,
            _ => {
                return Err(DerivError::NotHomogeneous {
                    index: 0,
                    degree: self.degree,
                })
            }
        };
        Ok(Derivation {
            degree,
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn sub(&self, other: &Derivation) -> Result<Derivation, DerivError> {
        self.add(&other.scale(&-Rational::from_integer(1.into())))
    }

    /// Coefficient polynomials as strings in canonical term order.
    pub fn to_strings(&self) -> Vec<String> {
        let names = default_var_names(self.dim());
        self.coeffs.iter().map(|p| p.display_with(&names)).collect()
    }

    pub fn from_strings(parts: &[String]) -> Result<Derivation, DerivError> {
        let names = default_var_names(parts.len());
        let coeffs = parts
            .iter()
            .map(|s| Poly::parse(s, &names))
            .collect::<Result<Vec<_>, _>>()?;
        Derivation::new(coeffs)
    }
}

impl fmt::Display for Derivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.to_strings().join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::rats;

    #[test]
    fn euler_in_two_variables() {
        let e = Derivation::euler(2);
        assert_eq!(e.to_strings(), vec!["x", "y"]);
        assert_eq!(e.degree(), 1);
    }

    #[test]
    fn euler_fixes_linear_forms() {
        let e = Derivation::euler(3);
        for form in [rats(&[1, 2, 3]), rats(&[0, -1, 4]), rats(&[5, 0, 0])] {
            assert_eq!(e.apply(&form), Poly::linear(&form));
        }
    }

    #[test]
    fn euler_acts_as_degree_on_homogeneous() {
        let names = default_var_names(2);
        let f = Poly::parse("x^2*y - 3*y^3", &names).unwrap();
        let e = Derivation::euler(2);
        assert_eq!(e.apply_poly(&f), f.scale(&Rational::from_integer(3.into())));
    }

    #[test]
    fn rejects_mixed_degrees() {
        let names = default_var_names(2);
        let c = vec![Poly::parse("x", &names).unwrap(), Poly::parse("y^2", &names).unwrap()];
        assert!(Derivation::new(c).is_err());
    }

    #[test]
    fn string_round_trip() {
        let names = default_var_names(2);
        let d = Derivation::new(vec![
            Poly::parse("x^2", &names).unwrap(),
            Poly::parse("-y^2", &names).unwrap(),
        ])
        .unwrap();
        assert_eq!(Derivation::from_strings(&d.to_strings()).unwrap(), d);
    }
}
