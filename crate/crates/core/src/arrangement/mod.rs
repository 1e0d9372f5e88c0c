//! Central hyperplane arrangements over Q.

mod bitset;
mod format;
mod lattice;
mod restrict;
mod unipoly;

pub use bitset::IndexSet;
pub use format::{parse_arrangement, write_arrangement, ParseError};
pub use lattice::{build_lattice, char_poly, CharPolys, Flat, IntersectionLattice};
pub use restrict::{b_polynomial, localize, restrict, BPolynomial, Restriction};
pub use unipoly::UniPoly;

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactla::{flat_coordinates, primitive_integer, FlatCoordinates, Matrix, Poly, Rational};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ArrangementError {
    #[error("normal vector is zero")]
    ZeroNormal,
    #[error("normal has length {got}, arrangement dimension is {dim}")]
    DimensionMismatch { got: usize, dim: usize },
    #[error("duplicate hyperplane {0}")]
    Duplicate(Hyperplane),
    #[error("hyperplane {0} is not in the arrangement")]
    Missing(Hyperplane),
    #[error("hyperplane {0} is already in the arrangement")]
    AlreadyPresent(Hyperplane),
    #[error("restriction to the whole space")]
    WholeSpace,
    #[error("coefficient does not fit in 64 bits")]
    Overflow,
}

/// A linear hyperplane, stored as the primitive integer normal of its
/// defining form with positive leading entry.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Hyperplane {
    normal: Vec<i64>,
}

impl Hyperplane {
    pub fn new(normal: Vec<i64>) -> Result<Self, ArrangementError> {
        let Some(&first) = normal.iter().find(|&&v| v != 0) else {
            return Err(ArrangementError::ZeroNormal);
        };
        let mut g = normal.iter().fold(0i64, |acc, &v| acc.gcd(&v));
        if first < 0 {
            g = -g;
        }
        Ok(Hyperplane {
            normal: normal.into_iter().map(|v| v / g).collect(),
        })
    }

    pub fn from_rationals(form: &[Rational]) -> Result<Self, ArrangementError> {
        let ints = primitive_integer(form);
        if ints.iter().all(Zero::is_zero) {
            return Err(ArrangementError::ZeroNormal);
        }
        let normal = ints
            .iter()
            .map(|v| v.to_i64().ok_or(ArrangementError::Overflow))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Hyperplane { normal })
    }

    pub fn normal(&self) -> &[i64] {
        &self.normal
    }

    pub fn dim(&self) -> usize {
        self.normal.len()
    }

    /// Coefficients of the defining form as rationals.
    pub fn form(&self) -> Vec<Rational> {
        self.normal
            .iter()
            .map(|&v| Rational::from_integer(BigInt::from(v)))
            .collect()
    }

    /// The defining form `α_H` as a polynomial.
    pub fn poly(&self) -> Poly {
        Poly::linear_i64(&self.normal)
    }
}

impl fmt::Display for Hyperplane {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = crate::exactla::default_var_names(self.dim());
        write!(f, "{{{} = 0}}", self.poly().display_with(&names))
    }
}

/// A central arrangement: a duplicate-free set of hyperplanes in Q^dim,
/// stored in ascending order of normal vectors.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Arrangement {
    dim: usize,
    hyperplanes: Vec<Hyperplane>,
}

impl Arrangement {
    pub fn new(dim: usize, hyperplanes: Vec<Hyperplane>) -> Result<Self, ArrangementError> {
        let mut hs = hyperplanes;
        for h in &hs {
            if h.dim() != dim {
                return Err(ArrangementError::DimensionMismatch { got: h.dim(), dim });
            }
        }
        hs.sort();
        if let Some(w) = hs.windows(2).find(|w| w[0] == w[1]) {
            return Err(ArrangementError::Duplicate(w[0].clone()));
        }
        Ok(Arrangement { dim, hyperplanes: hs })
    }

    pub fn from_normals(dim: usize, normals: &[Vec<i64>]) -> Result<Self, ArrangementError> {
        let hs = normals
            .iter()
            .map(|n| Hyperplane::new(n.clone()))
            .collect::<Result<Vec<_>, _>>()?;
        Arrangement::new(dim, hs)
    }

    pub fn empty(dim: usize) -> Self {
        Arrangement {
            dim,
            hyperplanes: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.hyperplanes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.hyperplanes.is_empty()
    }

    pub fn hyperplanes(&self) -> &[Hyperplane] {
        &self.hyperplanes
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Hyperplane> {
        self.hyperplanes.iter()
    }

    pub fn index_of(&self, h: &Hyperplane) -> Option<usize> {
        self.hyperplanes.binary_search(h).ok()
    }

    pub fn contains(&self, h: &Hyperplane) -> bool {
        self.index_of(h).is_some()
    }

    /// `self ∪ hs`; fails if any of `hs` is already present.
    pub fn with(&self, hs: &[Hyperplane]) -> Result<Arrangement, ArrangementError> {
        for h in hs {
            if self.contains(h) {
                return Err(ArrangementError::AlreadyPresent(h.clone()));
            }
        }
        let mut all = self.hyperplanes.clone();
        all.extend(hs.iter().cloned());
        Arrangement::new(self.dim, all)
    }

    /// `self ∖ hs`; fails if any of `hs` is absent.
    pub fn without(&self, hs: &[Hyperplane]) -> Result<Arrangement, ArrangementError> {
        for h in hs {
            if !self.contains(h) {
                return Err(ArrangementError::Missing(h.clone()));
            }
        }
        Ok(Arrangement {
            dim: self.dim,
            hyperplanes: self.hyperplanes.iter().filter(|h| !hs.contains(h)).cloned().collect(),
        })
    }

    /// Rank of the arrangement: codimension of the intersection of all
    /// hyperplanes.
    pub fn rank(&self) -> usize {
        let forms: Vec<Vec<Rational>> = self.hyperplanes.iter().map(Hyperplane::form).collect();
        Matrix::from_rows(self.dim, forms)
            .expect("forms have arrangement dimension")
            .rank()
    }

    pub fn is_essential(&self) -> bool {
        self.rank() == self.dim
    }

    /// Defining polynomial `Q(A, m) = Π α_H^{m(H)}`.
    pub fn defining_poly(&self, m: &Multiplicity) -> Poly {
        self.hyperplanes
            .iter()
            .zip(m.values())
            .fold(Poly::one(self.dim), |acc, (h, &e)| &acc * &h.poly().pow(e))
    }
}

impl fmt::Display for Arrangement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&write_arrangement(self))
    }
}

/// Multiplicities aligned with an arrangement's hyperplane order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Multiplicity(Vec<u32>);

impl Multiplicity {
    /// Fails if any value is zero.
    pub fn new(values: Vec<u32>) -> Option<Self> {
        values.iter().all(|&v| v >= 1).then_some(Multiplicity(values))
    }

    /// The constant multiplicity 1 on `n` hyperplanes.
    pub fn simple(n: usize) -> Self {
        Multiplicity(vec![1; n])
    }

    pub fn values(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `|m|`.
    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_simple(&self) -> bool {
        self.0.iter().all(|&v| v == 1)
    }
}

/// A linear subspace of Q^dim, cut out by a canonical stack of forms: the
/// reduced row echelon form of any defining system, with each row scaled to
/// a primitive integer vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subspace {
    dim: usize,
    rows: Vec<Vec<BigInt>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn whole(dim: usize) -> Self {
        Subspace {
            dim,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn from_forms(dim: usize, forms: &[Vec<Rational>]) -> Self {
        let m = Matrix::from_rows(dim, forms.to_vec()).expect("forms have ambient dimension");
        let ech = m.rref();
        let rows = (0..ech.pivots.len())
            .map(|r| primitive_integer(ech.reduced.row(r)))
            .collect();
        Subspace {
            dim,
            rows,
            pivots: ech.pivots,
        }
    }

    pub fn from_hyperplanes<'a>(dim: usize, hs: impl IntoIterator<Item = &'a Hyperplane>) -> Self {
        let forms: Vec<Vec<Rational>> = hs.into_iter().map(Hyperplane::form).collect();
        Subspace::from_forms(dim, &forms)
    }

    pub fn ambient(&self) -> usize {
        self.dim
    }

    pub fn codim(&self) -> usize {
        self.rows.len()
    }

    pub fn dim(&self) -> usize {
        self.dim - self.rows.len()
    }

    /// Defining forms (canonical rows) as rationals.
    pub fn forms(&self) -> Vec<Vec<Rational>> {
        self.rows
            .iter()
            .map(|r| r.iter().cloned().map(Rational::from_integer).collect())
            .collect()
    }

    pub fn rows(&self) -> &[Vec<BigInt>] {
        &self.rows
    }

    /// Whether the form vanishes identically on the subspace, i.e. lies in
    /// the row space.
    pub fn annihilated_by(&self, form: &[Rational]) -> bool {
        assert_eq!(form.len(), self.dim, "form arity mismatch");
        let mut v = form.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if v[p].is_zero() {
                continue;
            }
            let f = &v[p] / Rational::from_integer(row[p].clone());
            for (j, r) in row.iter().enumerate() {
                if !r.is_zero() {
                    v[j] = &v[j] - &f * Rational::from_integer(r.clone());
                }
            }
        }
        v.iter().all(Zero::is_zero)
    }

    /// Whether the subspace lies inside the hyperplane.
    pub fn is_inside(&self, h: &Hyperplane) -> bool {
        self.annihilated_by(&h.form())
    }

    /// Whether `self ⊆ other`.
    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        other.forms().iter().all(|f| self.annihilated_by(f))
    }

    pub fn intersect_form(&self, form: &[Rational]) -> Subspace {
        let mut forms = self.forms();
        forms.push(form.to_vec());
        Subspace::from_forms(self.dim, &forms)
    }

    pub fn coordinates(&self) -> FlatCoordinates {
        flat_coordinates(self.dim, &self.forms()).expect("rows have ambient dimension")
    }

    /// A pseudo-random integer point of the subspace (coordinates drawn
    /// from [-1000, 1000] in the flat basis), for probabilistic checks.
    pub fn sample_point(&self, seed: u64) -> Vec<Rational> {
        let fc = self.coordinates();
        let mut state = seed ^ 0x9e37_79b9_7f4a_7c15;
        let u: Vec<Rational> = (0..fc.dim())
            .map(|_| {
                state = state
                    .wrapping_mul(6364136223846793005)
                    .wrapping_add(1442695040888963407);
                let v = ((state >> 33) % 2001) as i64 - 1000;
                Rational::from_integer(v.into())
            })
            .collect();
        fc.basis.mul_vec(&u)
    }
}
