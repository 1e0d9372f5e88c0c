use serde::{Deserialize, Serialize};

use super::{derivation_slice, saito_check, Derivation, MonomialIndex};
use crate::arrangement::{build_lattice, char_poly, Arrangement, Multiplicity};
use crate::exactla::{monomials_of_degree, EchelonSpan, Poly, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum FreenessStatus {
    FreeWithExponents,
    NotFreeByFactorization,
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreenessVerdict {
    pub status: FreenessStatus,
    /// Sorted ascending; present only when free.
    pub exponents: Option<Vec<u32>>,
    pub basis: Option<Vec<Derivation>>,
    /// Roots of `χ(A;t)` when it splits over the nonnegative integers
    /// (simple arrangements only).
    pub char_roots: Option<Vec<u64>>,
}

impl FreenessVerdict {
    fn status_only(status: FreenessStatus, char_roots: Option<Vec<u64>>) -> Self {
        FreenessVerdict {
            status,
            exponents: None,
            basis: None,
            char_roots,
        }
    }
}

/// Decides freeness of `(A, m)` by harvesting minimal homogeneous
/// generators of `D(A, m)` degree by degree, up to `bound` (default `|m|`).
///
/// In degree `d` the span of all monomial multiples of earlier generators
/// is computed; slice vectors outside it are new minimal generators. Once
/// `ℓ` generators with degree sum `|m|` are found, Saito's criterion
/// certifies the basis. For simple arrangements a characteristic
/// polynomial without a complete nonnegative integer factorization rules
/// out freeness at once, and a generator degree outside its roots stops
/// the search.
pub fn freeness_oracle(a: &Arrangement, m: &Multiplicity, bound: Option<u32>) -> FreenessVerdict {
    assert_eq!(a.len(), m.len(), "multiplicity does not match arrangement");
    let l = a.dim();
    let total = m.total();
    let bound = bound.unwrap_or(total);

    let roots = if m.is_simple() {
        let chi = char_poly(&build_lattice(a)).chi;
        match chi.nonnegative_integer_roots() {
            Some(mut r) => {
                r.sort_unstable();
                Some(r)
            }
            None => return FreenessVerdict::status_only(FreenessStatus::NotFreeByFactorization, None),
        }
    } else {
        None
    };

    let mut gens: Vec<Derivation> = Vec::new();
    for d in 0..=bound {
        let index = MonomialIndex::new(l, d);
        let mut span = EchelonSpan::new(index.vector_len());
        for g in &gens {
            for mono in monomials_of_degree(l, d - g.degree()) {
                let f = Poly::monomial(l, mono, Rational::from_integer(1.into()));
                let multiple = g.mul_poly(&f).expect("monomials are homogeneous");
                span.insert(&index.to_vector(&multiple));
            }
        }
        for b in derivation_slice(a, m, d).basis {
            if span.insert(&index.to_vector(&b)) {
                gens.push(b);
            }
        }
        if gens.len() > l {
            break;
        }
        if let Some(r) = &roots {
            let found = gens.iter().filter(|g| g.degree() <= d).count();
            let expected = r.iter().filter(|&&e| e <= d as u64).count();
            if found != expected {
                break;
            }
        }
        let sum: u32 = gens.iter().map(Derivation::degree).sum();
        if gens.len() == l && sum == total {
            if let Ok(v) = saito_check(&gens, a, m) {
                if v.is_basis() {
                    let mut exps: Vec<u32> = gens.iter().map(Derivation::degree).collect();
                    exps.sort_unstable();
                    return FreenessVerdict {
                        status: FreenessStatus::FreeWithExponents,
                        exponents: Some(exps),
                        basis: Some(gens),
                        char_roots: roots,
                    };
                }
            }
        }
        if sum > total {
            break;
        }
    }
    FreenessVerdict::status_only(FreenessStatus::Unknown, roots)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn arr(dim: usize, normals: &[&[i64]]) -> Arrangement {
        Arrangement::from_normals(dim, &normals.iter().map(|n| n.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn boolean_plane_is_free() {
        let v = freeness_oracle(&arr(2, &[&[1, 0], &[0, 1]]), &Multiplicity::simple(2), None);
        assert_eq!(v.status, FreenessStatus::FreeWithExponents);
        assert_eq!(v.exponents, Some(vec![1, 1]));
    }

    #[test]
    fn a2_weyl_exponents() {
        let v = freeness_oracle(&arr(2, &[&[1, 0], &[0, 1], &[1, 1]]), &Multiplicity::simple(3), None);
        assert_eq!(v.exponents, Some(vec![1, 2]));
    }

    #[test]
    fn catalan_a1() {
        let v = freeness_oracle(
            &arr(2, &[&[1, 0], &[1, -1], &[1, 1], &[0, 1]]),
            &Multiplicity::simple(4),
            None,
        );
        assert_eq!(v.exponents, Some(vec![1, 3]));
    }

    #[test]
    fn non_essential_has_zero_exponent() {
        let v = freeness_oracle(&arr(3, &[&[1, 0, 0], &[0, 1, 0]]), &Multiplicity::simple(2), None);
        assert_eq!(v.exponents, Some(vec![0, 1, 1]));
    }

    #[test]
    fn generic_four_planes_not_free() {
        // χ = t^3 - 4t^2 + 6t - 3 = (t - 1)(t^2 - 3t + 3)
        let a = arr(3, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[1, 1, 1]]);
        let v = freeness_oracle(&a, &Multiplicity::simple(4), None);
        assert_eq!(v.status, FreenessStatus::NotFreeByFactorization);
    }

    #[test]
    fn multiarrangement_on_two_lines() {
        let a = arr(2, &[&[1, 0], &[0, 1]]);
        let m = Multiplicity::new(vec![2, 3]).unwrap();
        let v = freeness_oracle(&a, &m, None);
        assert_eq!(v.exponents, Some(vec![2, 3]));
    }

    #[test]
    fn a2_with_double_line() {
        // rank-2 multiarrangements are always free; exponents sum to |m|
        let a = arr(2, &[&[1, 0], &[0, 1], &[1, 1]]);
        let m = Multiplicity::new(vec![2, 1, 1]).unwrap();
        let v = freeness_oracle(&a, &m, None);
        assert_eq!(v.exponents, Some(vec![2, 2]));
    }
}
