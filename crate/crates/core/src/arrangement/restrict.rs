//! Localization, restriction with Ziegler multiplicities, and the
//! polynomial `B` controlling single-hyperplane additions.

use std::collections::BTreeMap;

use super::{Arrangement, ArrangementError, Hyperplane, Multiplicity, Subspace};
use crate::exactla::{FlatCoordinates, Poly};

/// `A_X`: the hyperplanes containing `x`.
pub fn localize(a: &Arrangement, x: &Subspace) -> Arrangement {
    let hs = a.iter().filter(|h| x.is_inside(h)).cloned().collect();
    Arrangement::new(a.dim(), hs).expect("subset of a valid arrangement")
}

/// The restriction `A^X` in the flat coordinates of `x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Restriction {
    pub arrangement: Arrangement,
    /// How many hyperplanes of `A ∖ A_X` meet `x` in each restricted
    /// hyperplane; for `x = H ∈ A` this is the Ziegler multiplicity `m^H`.
    pub multiplicity: Multiplicity,
    pub coordinates: FlatCoordinates,
}

/// Restricts `a` to `x`, pulling every defining form back through the
/// coordinate basis of `x` and merging hyperplanes that coincide there.
pub fn restrict(a: &Arrangement, x: &Subspace) -> Result<Restriction, ArrangementError> {
    if x.codim() == 0 {
        return Err(ArrangementError::WholeSpace);
    }
    let coords = x.coordinates();
    let mut counts: BTreeMap<Hyperplane, u32> = BTreeMap::new();
    for h in a.iter() {
        let pulled = coords.pull_back(&h.form());
        match Hyperplane::from_rationals(&pulled) {
            Ok(r) => *counts.entry(r).or_insert(0) += 1,
            Err(ArrangementError::ZeroNormal) => {}
            Err(e) => return Err(e),
        }
    }
    let (hs, ms): (Vec<_>, Vec<_>) = counts.into_iter().unzip();
    Ok(Restriction {
        arrangement: Arrangement::new(coords.dim(), hs)?,
        multiplicity: Multiplicity::new(ms).expect("counts are positive"),
        coordinates: coords,
    })
}

/// `B` for the pair `(A', H)`, in the flat coordinates of `H`, scaled to
/// leading coefficient 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BPolynomial {
    pub poly: Poly,
    pub coordinates: FlatCoordinates,
}

impl BPolynomial {
    pub fn degree(&self) -> u32 {
        self.poly.degree().unwrap_or(0)
    }
}

/// Computes `B = Q(A')|_H / Q(A'')` where `A'' = (A' ∪ {H})^H`. Each
/// restricted hyperplane `X` hit by `k` members of `A'` contributes
/// `β_X^{k-1}`, so `deg B = |A'| - |A''|`.
pub fn b_polynomial(a_prime: &Arrangement, h: &Hyperplane) -> Result<BPolynomial, ArrangementError> {
    if a_prime.contains(h) {
        return Err(ArrangementError::AlreadyPresent(h.clone()));
    }
    if h.dim() != a_prime.dim() {
        return Err(ArrangementError::DimensionMismatch {
            got: h.dim(),
            dim: a_prime.dim(),
        });
    }
    let x = Subspace::from_hyperplanes(a_prime.dim(), [h]);
    let r = restrict(a_prime, &x)?;
    let poly = r
        .arrangement
        .iter()
        .zip(r.multiplicity.values())
        .fold(Poly::one(r.coordinates.dim()), |acc, (g, &k)| {
            &acc * &g.poly().pow(k - 1)
        })
        .monic();
    Ok(BPolynomial {
        poly,
        coordinates: r.coordinates,
    })
}
