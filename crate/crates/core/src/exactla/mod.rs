//! Exact linear algebra over Q and sparse polynomial arithmetic.

mod matrix;
mod poly;

pub use matrix::{primitive_integer, primitive_rational, Echelon, EchelonSpan, Matrix};
pub use poly::{default_var_names, monomials_of_degree, Monomial, Poly};

use num_traits::{One, Zero};
use thiserror::Error;

pub type Rational = num_rational::BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

pub fn rats(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|&x| rat(x)).collect()
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinAlgError {
    #[error("matrix is {rows}x{cols}, expected square")]
    NotSquare { rows: usize, cols: usize },
    #[error("row {row} has length {len}, expected {expected}")]
    RaggedRow { row: usize, len: usize, expected: usize },
    #[error("linear form is zero")]
    ZeroForm,
    #[error("linear form has {got} coefficients, polynomial has {expected} variables")]
    FormArity { got: usize, expected: usize },
    #[error("cannot parse polynomial {input:?}: {reason}")]
    PolyParse { input: String, reason: String },
}

/// Coordinates `y = L x` in which a given nonzero linear form becomes `y_1`.
///
/// `L` has the form as its first row; the remaining rows are standard unit
/// covectors appended in index order, skipping any that are dependent on
/// the rows already chosen.
#[derive(Clone, Debug)]
pub struct AdaptedCoordinates {
    forward: Matrix,
    /// `x_i` written as linear polynomials in `y`.
    x_in_y: Vec<Poly>,
}

impl AdaptedCoordinates {
    pub fn new(form: &[Rational]) -> Result<Self, LinAlgError> {
        if form.iter().all(Zero::is_zero) {
            return Err(LinAlgError::ZeroForm);
        }
        let n = form.len();
        let mut span = EchelonSpan::new(n);
        span.insert(form);
        let mut rows = vec![form.to_vec()];
        for i in 0..n {
            if rows.len() == n {
                break;
            }
            let mut e = vec![Rational::zero(); n];
            e[i] = Rational::one();
            if span.insert(&e) {
                rows.push(e);
            }
        }
        let forward = Matrix::from_rows(n, rows)?;
        let inverse = forward.inverse().expect("completed basis is invertible");
        let x_in_y = (0..n).map(|i| Poly::linear(inverse.row(i))).collect();
        Ok(AdaptedCoordinates { forward, x_in_y })
    }

    pub fn forward(&self) -> &Matrix {
        &self.forward
    }

    /// Rewrites a polynomial in `x` as a polynomial in `y`.
    pub fn rewrite(&self, p: &Poly) -> Poly {
        p.substitute(&self.x_in_y)
    }
}

/// Divisibility of `p` by `lambda^m`.
///
/// Returns the flag together with the part of `p` (in adapted coordinates
/// where `lambda = y_1`) whose `y_1`-degree is below `m`. The witness is
/// zero exactly when `p` is divisible.
pub fn linear_power_remainder(p: &Poly, lambda: &[Rational], m: u32) -> Result<(bool, Poly), LinAlgError> {
    if lambda.len() != p.nvars() {
        return Err(LinAlgError::FormArity {
            got: lambda.len(),
            expected: p.nvars(),
        });
    }
    let coords = AdaptedCoordinates::new(lambda)?;
    let rewritten = coords.rewrite(p);
    let witness = Poly::from_terms(
        p.nvars(),
        rewritten
            .terms()
            .filter(|(mono, _)| mono.exponents()[0] < m)
            .map(|(mono, c)| (mono.clone(), c.clone())),
    );
    Ok((witness.is_zero(), witness))
}

/// Coordinates on the common zero set of some linear forms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlatCoordinates {
    /// `ambient × dim` matrix whose columns are a primitive integer basis
    /// of the flat; a point of the flat is `basis · u`.
    pub basis: Matrix,
    pub codim: usize,
}

impl FlatCoordinates {
    pub fn ambient(&self) -> usize {
        self.basis.rows()
    }

    pub fn dim(&self) -> usize {
        self.basis.cols()
    }

    /// `x_i` as linear polynomials in the flat coordinates `u`.
    pub fn embedding(&self) -> Vec<Poly> {
        (0..self.ambient()).map(|i| Poly::linear(self.basis.row(i))).collect()
    }

    /// Restricts a polynomial on the ambient space to the flat.
    pub fn restrict_poly(&self, p: &Poly) -> Poly {
        p.substitute(&self.embedding())
    }

    /// Pulls back a linear form: the coefficients of `form ∘ basis`.
    pub fn pull_back(&self, form: &[Rational]) -> Vec<Rational> {
        self.basis.transpose().mul_vec(form)
    }

    /// A left inverse `P` of the basis (`P · basis = I`), used to read flat
    /// coordinates off ambient vectors that lie in the flat.
    pub fn left_inverse(&self) -> Matrix {
        let bt = self.basis.transpose();
        let gram = &bt * &self.basis;
        let inv = gram.inverse().expect("basis columns are independent");
        &inv * &bt
    }
}

/// Codimension and coordinate basis of the intersection of the kernels of
/// the given forms on Q^ambient.
pub fn flat_coordinates(ambient: usize, forms: &[Vec<Rational>]) -> Result<FlatCoordinates, LinAlgError> {
    let m = Matrix::from_rows(ambient, forms.to_vec())?;
    let kernel = m.kernel_basis();
    let codim = ambient - kernel.len();
    Ok(FlatCoordinates {
        basis: Matrix::from_columns(ambient, &kernel),
        codim,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(n: usize) -> Vec<String> {
        default_var_names(n)
    }

    fn p2(s: &str) -> Poly {
        Poly::parse(s, &names(2)).unwrap()
    }

    #[test]
    fn difference_of_squares_divisible_by_sum() {
        let (ok, w) = linear_power_remainder(&p2("x^2 - y^2"), &rats(&[1, 1]), 1).unwrap();
        assert!(ok);
        assert!(w.is_zero());
    }

    #[test]
    fn sum_of_squares_not_divisible_by_sum() {
        // y1 = x + y, y2 = x, so x = y2 and y = y1 - y2; the y1-free part is 2*y2^2.
        let (ok, w) = linear_power_remainder(&p2("x^2 + y^2"), &rats(&[1, 1]), 1).unwrap();
        assert!(!ok);
        assert_eq!(w, p2("2*y^2"));
    }

    #[test]
    fn cube_divisible_by_square() {
        let (ok, _) = linear_power_remainder(&p2("x^3"), &rats(&[1, 0]), 2).unwrap();
        assert!(ok);
        let (ok, _) = linear_power_remainder(&p2("x^3"), &rats(&[1, 0]), 4).unwrap();
        assert!(!ok);
    }

    #[test]
    fn zero_form_rejected() {
        assert_eq!(
            linear_power_remainder(&p2("x"), &rats(&[0, 0]), 1).unwrap_err(),
            LinAlgError::ZeroForm
        );
    }

    #[test]
    fn flat_of_single_form() {
        let fc = flat_coordinates(2, &[rats(&[1, 0])]).unwrap();
        assert_eq!(fc.codim, 1);
        assert_eq!(fc.basis.column(0), rats(&[0, 1]));
    }

    #[test]
    fn flat_of_no_forms_is_everything() {
        let fc = flat_coordinates(3, &[]).unwrap();
        assert_eq!(fc.codim, 0);
        assert_eq!(fc.basis, Matrix::identity(3));
    }

    #[test]
    fn flat_of_two_forms_in_three_space() {
        let fc = flat_coordinates(3, &[rats(&[1, 1, 0]), rats(&[1, -1, 1])]).unwrap();
        assert_eq!(fc.codim, 2);
        assert_eq!(fc.basis.column(0), rats(&[1, -1, -2]));
    }

    #[test]
    fn left_inverse_recovers_coordinates() {
        let fc = flat_coordinates(3, &[rats(&[1, 1, 1])]).unwrap();
        let p = fc.left_inverse();
        assert_eq!(&p * &fc.basis, Matrix::identity(2));
    }
}
