//! Intersection lattices and their Möbius function.

use std::collections::BTreeMap;

use super::{Arrangement, IndexSet, Subspace, UniPoly};

/// An element of the intersection lattice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Flat {
    /// Indices of the hyperplanes containing the flat.
    pub members: IndexSet,
    pub space: Subspace,
    pub codim: usize,
    pub mobius: i64,
}

/// `L(A)`, flats ordered by codimension and then by canonical key.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntersectionLattice {
    dim: usize,
    num_hyperplanes: usize,
    flats: Vec<Flat>,
    /// `level_start[k]..level_start[k+1]` are the flats of codimension `k`.
    level_start: Vec<usize>,
    /// For each flat, the flats of one higher codimension contained in it.
    covers: Vec<Vec<usize>>,
}

impl IntersectionLattice {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn num_hyperplanes(&self) -> usize {
        self.num_hyperplanes
    }

    pub fn flats(&self) -> &[Flat] {
        &self.flats
    }

    pub fn len(&self) -> usize {
        self.flats.len()
    }

    pub fn is_empty(&self) -> bool {
        self.flats.is_empty()
    }

    /// Codimension of the smallest flat (the rank of the arrangement).
    pub fn rank(&self) -> usize {
        self.level_start.len() - 2
    }

    pub fn level(&self, k: usize) -> &[Flat] {
        if k + 1 >= self.level_start.len() {
            return &[];
        }
        &self.flats[self.level_start[k]..self.level_start[k + 1]]
    }

    pub fn level_range(&self, k: usize) -> std::ops::Range<usize> {
        if k + 1 >= self.level_start.len() {
            return 0..0;
        }
        self.level_start[k]..self.level_start[k + 1]
    }

    pub fn covers(&self, i: usize) -> &[usize] {
        &self.covers[i]
    }

    /// Index of the flat equal to the given subspace, if it is one.
    pub fn find(&self, space: &Subspace) -> Option<usize> {
        let range = self.level_range(space.codim());
        self.flats[range.clone()]
            .binary_search_by(|f| f.space.cmp(space))
            .ok()
            .map(|i| range.start + i)
    }

    /// Whether `μ(X) = -Σ_{Y ⊋ X} μ(Y)` holds at every flat.
    pub fn mobius_recursion_holds(&self) -> bool {
        self.flats.iter().all(|x| {
            if x.codim == 0 {
                return x.mobius == 1;
            }
            let above: i64 = self
                .flats
                .iter()
                .filter(|y| y.codim < x.codim && y.members.is_subset(&x.members))
                .map(|y| y.mobius)
                .sum();
            x.mobius == -above
        })
    }
}

/// Enumerates `L(A)` level by level: every flat of codimension `k+1` is the
/// intersection of a flat of codimension `k` with a hyperplane not
/// containing it. Flats are deduplicated by their canonical subspace.
pub fn build_lattice(a: &Arrangement) -> IntersectionLattice {
    let n = a.len();
    let forms: Vec<_> = a.iter().map(|h| h.form()).collect();
    let mut flats = vec![Flat {
        members: IndexSet::new(),
        space: Subspace::whole(a.dim()),
        codim: 0,
        mobius: 1,
    }];
    let mut level_start = vec![0, 1];
    let mut covers: Vec<Vec<usize>> = vec![Vec::new()];

    loop {
        let k = level_start.len() - 2;
        let range = level_start[k]..level_start[k + 1];
        let mut next: BTreeMap<Subspace, Vec<usize>> = BTreeMap::new();
        for xi in range.clone() {
            let x = &flats[xi];
            let mut seen = IndexSet::new();
            for h in 0..n {
                if x.members.contains(h) || seen.contains(h) {
                    continue;
                }
                let y = x.space.intersect_form(&forms[h]);
                // hyperplanes through y are redundant generators from x
                for (g, form) in forms.iter().enumerate() {
                    if !x.members.contains(g) && y.annihilated_by(form) {
                        seen.insert(g);
                    }
                }
                next.entry(y).or_default().push(xi);
            }
        }
        if next.is_empty() {
            break;
        }
        let base = flats.len();
        for (yi, (space, parents)) in next.into_iter().enumerate() {
            let members = IndexSet::from_indices((0..n).filter(|&h| space.annihilated_by(&forms[h])));
            for p in parents {
                covers[p].push(base + yi);
            }
            flats.push(Flat {
                members,
                codim: k + 1,
                space,
                mobius: 0,
            });
            covers.push(Vec::new());
        }
        level_start.push(flats.len());
    }

    for i in 1..flats.len() {
        let (done, rest) = flats.split_at(i);
        let x = &rest[0];
        let s: i64 = done
            .iter()
            .filter(|y| y.codim < x.codim && y.members.is_subset(&x.members))
            .map(|y| y.mobius)
            .sum();
        flats[i].mobius = -s;
    }

    IntersectionLattice {
        dim: a.dim(),
        num_hyperplanes: n,
        flats,
        level_start,
        covers,
    }
}

/// Characteristic and Poincaré polynomials of an arrangement.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharPolys {
    /// `χ(A;t) = Σ μ(X) t^{dim X}`
    pub chi: UniPoly,
    /// `π(A;t) = Σ μ(X) (-t)^{codim X}`
    pub poincare: UniPoly,
}

pub fn char_poly(lat: &IntersectionLattice) -> CharPolys {
    let l = lat.dim();
    let mut chi = vec![0i64; l + 1];
    let mut pi = vec![0i64; l + 1];
    for x in lat.flats() {
        chi[l - x.codim] += x.mobius;
        let sign = if x.codim % 2 == 0 { 1 } else { -1 };
        pi[x.codim] += sign * x.mobius;
    }
    CharPolys {
        chi: UniPoly::new(chi),
        poincare: UniPoly::new(pi),
    }
}
