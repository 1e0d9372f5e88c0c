//! Crystallographic root systems and the Weyl, Shi and Catalan
//! arrangements built from them.
//!
//! Roots are integer vectors in the basis of simple roots. Taking the
//! simple roots themselves as coordinate functions, the hyperplane of a
//! root `α = Σ c_i α_i` has normal `c`, and `H_α^j = {α = jz}` has normal
//! `(c, -j)` with the cone coordinate `z` last.

mod catalan;
mod family;

pub use catalan::{catalan_certificate, replay_with_source, verify_seed_source, CatalanCertificate, SeedPolicy, Stage};
pub use family::{parse_family, parse_root, parse_type_label, FamilyKind, FamilySpec};

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use thiserror::Error;

use crate::arrangement::{Arrangement, Hyperplane};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RootError {
    #[error("unsupported root system {0}")]
    Unsupported(String),
    #[error("cannot parse {input:?}: {reason}")]
    Parse { input: String, reason: String },
    #[error("{0:?} is not a positive root")]
    NotARoot(Vec<i64>),
    #[error("level k must be at least 1")]
    Level,
    #[error("stage {stage} failed: {reason}")]
    Stage { stage: usize, reason: String },
    #[error("seed: {0}")]
    Seed(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RootType {
    A,
    B,
    C,
    D,
    G,
    F,
}

/// An irreducible root system with its positive roots.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootSystem {
    kind: RootType,
    rank: usize,
    /// Sorted by height, then lexicographically.
    positive: Vec<Vec<i64>>,
}

impl fmt::Display for RootSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}{}", self.kind, self.rank)
    }
}

/// Symmetric Gram matrix of the simple roots, scaled to integers.
fn gram(kind: RootType, n: usize) -> Vec<Vec<i64>> {
    let mut g = vec![vec![0i64; n]; n];
    for (i, row) in g.iter_mut().enumerate() {
        row[i] = 2;
    }
    let chain = |g: &mut Vec<Vec<i64>>, i: usize, j: usize, v: i64| {
        g[i][j] = v;
        g[j][i] = v;
    };
    match kind {
        RootType::A => (1..n).for_each(|i| chain(&mut g, i - 1, i, -1)),
        RootType::B => {
            (1..n).for_each(|i| chain(&mut g, i - 1, i, -1));
            g[n - 1][n - 1] = 1;
        }
        RootType::C => {
            (1..n - 1).for_each(|i| chain(&mut g, i - 1, i, -1));
            chain(&mut g, n - 2, n - 1, -2);
            g[n - 1][n - 1] = 4;
        }
        RootType::D => {
            (1..n - 1).for_each(|i| chain(&mut g, i - 1, i, -1));
            chain(&mut g, n - 3, n - 1, -1);
        }
        RootType::G => {
            g[1][1] = 6;
            chain(&mut g, 0, 1, -3);
        }
        RootType::F => {
            g[0][0] = 4;
            g[1][1] = 4;
            chain(&mut g, 0, 1, -2);
            chain(&mut g, 1, 2, -2);
            chain(&mut g, 2, 3, -1);
        }
    }
    g
}

pub fn build_root_system(kind: RootType, rank: usize) -> Result<RootSystem, RootError> {
    let ok = match kind {
        RootType::A => rank >= 1,
        RootType::B | RootType::C => rank >= 2,
        RootType::D => rank >= 4,
        RootType::G => rank == 2,
        RootType::F => rank == 4,
    };
    if !ok {
        return Err(RootError::Unsupported(format!("{kind:?}{rank}")));
    }
    let g = gram(kind, rank);
    // <β, α_i^∨> = 2(β, α_i)/(α_i, α_i)
    let pairing = |beta: &[i64], i: usize| -> i64 {
        let ip: i64 = (0..rank).map(|j| beta[j] * g[j][i]).sum();
        2 * ip / g[i][i]
    };
    let mut roots: BTreeSet<Vec<i64>> = BTreeSet::new();
    let mut queue = VecDeque::new();
    for i in 0..rank {
        let mut e = vec![0; rank];
        e[i] = 1;
        roots.insert(e.clone());
        queue.push_back(e);
    }
    // α_i-strings through β: p - q = <β, α_i^∨>, p read off the known
    // lower part of the string
    while let Some(beta) = queue.pop_front() {
        for i in 0..rank {
            let mut p = 0;
            let mut down = beta.clone();
            loop {
                down[i] -= 1;
                if down[i] < 0 || !roots.contains(&down) {
                    break;
                }
                p += 1;
            }
            let q = p - pairing(&beta, i);
            if q > 0 {
                let mut up = beta.clone();
                up[i] += 1;
                if roots.insert(up.clone()) {
                    queue.push_back(up);
                }
            }
        }
    }
    let mut positive: Vec<Vec<i64>> = roots.into_iter().collect();
    positive.sort_by(|a, b| height(a).cmp(&height(b)).then_with(|| a.cmp(b)));
    Ok(RootSystem { kind, rank, positive })
}

pub fn height(root: &[i64]) -> i64 {
    root.iter().sum()
}

impl RootSystem {
    pub fn kind(&self) -> RootType {
        self.kind
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn positive_roots(&self) -> &[Vec<i64>] {
        &self.positive
    }

    pub fn highest_root(&self) -> &[i64] {
        self.positive.last().expect("nonempty")
    }

    /// `h = 1 + height of the highest root`.
    pub fn coxeter_number(&self) -> u32 {
        1 + height(self.highest_root()) as u32
    }

    pub fn heights(&self) -> Vec<u32> {
        self.positive.iter().map(|r| height(r) as u32).collect()
    }

    pub fn is_root(&self, r: &[i64]) -> bool {
        self.positive.iter().any(|p| p.as_slice() == r)
    }

    pub fn full_ideal(&self) -> Ideal {
        Ideal {
            roots: self.positive.clone(),
        }
    }

    /// `A_I = {ker α : α ∈ I}` in dimension `ℓ`.
    pub fn ideal_arrangement(&self, roots: &[Vec<i64>]) -> Arrangement {
        let hs = roots
            .iter()
            .map(|r| Hyperplane::new(r.clone()).expect("roots are nonzero"))
            .collect();
        Arrangement::new(self.rank, hs).expect("distinct positive roots")
    }
}

/// A lower-closed set of positive roots.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Ideal {
    /// Sorted by height, then lexicographically.
    roots: Vec<Vec<i64>>,
}

impl Ideal {
    pub fn empty() -> Self {
        Ideal::default()
    }

    pub fn roots(&self) -> &[Vec<i64>] {
        &self.roots
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    /// Height of the tallest root, 0 if empty.
    pub fn max_height(&self) -> u32 {
        self.roots.iter().map(|r| height(r) as u32).max().unwrap_or(0)
    }
}

fn below(a: &[i64], b: &[i64]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

/// The smallest ideal containing `gens`.
pub fn ideal_closure(rs: &RootSystem, gens: &[Vec<i64>]) -> Result<Ideal, RootError> {
    if let Some(g) = gens.iter().find(|g| !rs.is_root(g)) {
        return Err(RootError::NotARoot(g.clone()));
    }
    let roots = rs
        .positive
        .iter()
        .filter(|r| gens.iter().any(|g| below(r, g)))
        .cloned()
        .collect();
    Ok(Ideal { roots })
}

/// Whether `set` (positive roots) is lower closed.
pub fn is_ideal(rs: &RootSystem, set: &[Vec<i64>]) -> bool {
    set.iter().all(|g| rs.is_root(g))
        && rs
            .positive
            .iter()
            .all(|r| !set.iter().any(|g| below(r, g)) || set.contains(r))
}

/// Conjugate of the height distribution of `ideal`, padded with zeros to
/// `ℓ` entries and sorted ascending.
pub fn dual_partition_exponents(rs: &RootSystem, ideal: &Ideal) -> Vec<u32> {
    let h = ideal.max_height() as usize;
    let mut counts = vec![0u32; h];
    for r in &ideal.roots {
        counts[height(r) as usize - 1] += 1;
    }
    let width = counts.iter().copied().max().unwrap_or(0);
    let mut out: Vec<u32> = (1..=width)
        .map(|i| counts.iter().filter(|&&c| c >= i).count() as u32)
        .collect();
    out.resize(rs.rank.max(out.len()), 0);
    out.sort_unstable();
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConeKind {
    Weyl,
    Shi { k: u32 },
    Catalan { k: u32 },
    ShiPlusIdeal { k: u32, ideal: Ideal },
}

/// An arrangement tagged with its construction. Weyl arrangements live in
/// `ℓ` dimensions, the coned families in `ℓ + 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConeArrangement {
    pub kind: ConeKind,
    pub arrangement: Arrangement,
}

/// `H_α^j = {α = jz}`.
pub fn cone_hyperplane(root: &[i64], j: i64) -> Hyperplane {
    let mut n = root.to_vec();
    n.push(-j);
    Hyperplane::new(n).expect("roots are nonzero")
}

pub fn z_hyperplane(rank: usize) -> Hyperplane {
    let mut n = vec![0; rank];
    n.push(1);
    Hyperplane::new(n).expect("nonzero")
}

pub fn build_cone(rs: &RootSystem, kind: ConeKind) -> Result<ConeArrangement, RootError> {
    let levels = |lo: i64, hi: i64| -> Vec<Hyperplane> {
        let mut hs = vec![z_hyperplane(rs.rank)];
        for r in &rs.positive {
            for j in lo..=hi {
                hs.push(cone_hyperplane(r, j));
            }
        }
        hs
    };
    let hs = match &kind {
        ConeKind::Weyl => {
            return Ok(ConeArrangement {
                arrangement: rs.ideal_arrangement(&rs.positive),
                kind,
            })
        }
        ConeKind::Shi { k } | ConeKind::Catalan { k } | ConeKind::ShiPlusIdeal { k, .. } if *k == 0 => {
            return Err(RootError::Level)
        }
        ConeKind::Shi { k } => levels(1 - *k as i64, *k as i64),
        ConeKind::Catalan { k } => levels(-(*k as i64), *k as i64),
        ConeKind::ShiPlusIdeal { k, ideal } => {
            if !is_ideal(rs, &ideal.roots) {
                return Err(RootError::Parse {
                    input: format!("{:?}", ideal.roots),
                    reason: "not an ideal".into(),
                });
            }
            let mut hs = levels(1 - *k as i64, *k as i64);
            hs.extend(ideal.roots.iter().map(|r| cone_hyperplane(r, -(*k as i64))));
            hs
        }
    };
    Ok(ConeArrangement {
        arrangement: Arrangement::new(rs.rank + 1, hs).expect("distinct levels"),
        kind,
    })
}

/// Roots of the given height, in the fixed stage order.
pub fn roots_of_height(rs: &RootSystem, s: u32) -> Vec<Vec<i64>> {
    rs.positive.iter().filter(|r| height(r) == s as i64).cloned().collect()
}

/// Compact name of a root in simple-root coordinates, e.g. `a1+2a2`.
pub fn root_name(root: &[i64]) -> String {
    let parts: Vec<String> = root
        .iter()
        .enumerate()
        .filter(|(_, &c)| c != 0)
        .map(|(i, &c)| {
            if c == 1 {
                format!("a{}", i + 1)
            } else {
                format!("{c}a{}", i + 1)
            }
        })
        .collect();
    parts.join("+")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn a2_data() {
        let rs = build_root_system(RootType::A, 2).unwrap();
        assert_eq!(rs.positive_roots(), &[vec![0, 1], vec![1, 0], vec![1, 1]]);
        assert_eq!(rs.heights(), vec![1, 1, 2]);
        assert_eq!(rs.coxeter_number(), 3);
    }

    #[test]
    fn b2_data() {
        let rs = build_root_system(RootType::B, 2).unwrap();
        assert_eq!(rs.heights(), vec![1, 1, 2, 3]);
        assert_eq!(rs.coxeter_number(), 4);
        assert_eq!(rs.highest_root(), &[1, 2]);
    }

    #[test]
    fn g2_data() {
        let rs = build_root_system(RootType::G, 2).unwrap();
        assert_eq!(rs.heights(), vec![1, 1, 2, 3, 4, 5]);
        assert_eq!(rs.coxeter_number(), 6);
        assert_eq!(rs.highest_root(), &[3, 2]);
    }

    #[test]
    fn root_counts_and_coxeter_numbers() {
        for (kind, n, count, h) in [
            (RootType::A, 3, 6, 4),
            (RootType::A, 4, 10, 5),
            (RootType::B, 3, 9, 6),
            (RootType::C, 3, 9, 6),
            (RootType::D, 4, 12, 6),
            (RootType::D, 5, 20, 8),
            (RootType::F, 4, 24, 12),
        ] {
            let rs = build_root_system(kind, n).unwrap();
            assert_eq!(rs.positive_roots().len(), count, "{kind:?}{n}");
            assert_eq!(rs.coxeter_number(), h, "{kind:?}{n}");
        }
    }

    #[test]
    fn unsupported_ranks() {
        assert!(build_root_system(RootType::G, 3).is_err());
        assert!(build_root_system(RootType::D, 3).is_err());
    }

    #[test]
    fn closures() {
        let a2 = build_root_system(RootType::A, 2).unwrap();
        assert_eq!(ideal_closure(&a2, &[vec![1, 1]]).unwrap().len(), 3);
        assert_eq!(ideal_closure(&a2, &[vec![1, 0]]).unwrap().roots(), &[vec![1, 0]]);
        let b2 = build_root_system(RootType::B, 2).unwrap();
        let i = ideal_closure(&b2, &[vec![1, 1]]).unwrap();
        assert_eq!(i.roots(), &[vec![0, 1], vec![1, 0], vec![1, 1]]);
        assert!(is_ideal(&b2, i.roots()));
        assert!(!is_ideal(&b2, &[vec![1, 1]]));
    }

    #[test]
    fn dual_partitions() {
        let a2 = build_root_system(RootType::A, 2).unwrap();
        assert_eq!(dual_partition_exponents(&a2, &a2.full_ideal()), vec![1, 2]);
        assert_eq!(dual_partition_exponents(&a2, &Ideal::empty()), vec![0, 0]);
        let g2 = build_root_system(RootType::G, 2).unwrap();
        assert_eq!(dual_partition_exponents(&g2, &g2.full_ideal()), vec![1, 5]);
    }

    #[test]
    fn cone_sizes() {
        let a1 = build_root_system(RootType::A, 1).unwrap();
        let cat = build_cone(&a1, ConeKind::Catalan { k: 1 }).unwrap().arrangement;
        let expected = Arrangement::from_normals(2, &[vec![1, 0], vec![1, -1], vec![1, 1], vec![0, 1]]).unwrap();
        assert_eq!(cat, expected);

        let a2 = build_root_system(RootType::A, 2).unwrap();
        assert_eq!(
            build_cone(&a2, ConeKind::Catalan { k: 1 }).unwrap().arrangement.len(),
            10
        );
        assert_eq!(build_cone(&a2, ConeKind::Shi { k: 1 }).unwrap().arrangement.len(), 7);
        assert_eq!(build_cone(&a2, ConeKind::Shi { k: 2 }).unwrap().arrangement.len(), 13);
        let i = ideal_closure(&a2, &[vec![1, 0]]).unwrap();
        assert_eq!(
            build_cone(&a2, ConeKind::ShiPlusIdeal { k: 1, ideal: i })
                .unwrap()
                .arrangement
                .len(),
            8
        );
        assert_eq!(build_cone(&a2, ConeKind::Shi { k: 0 }).unwrap_err(), RootError::Level);
    }

    #[test]
    fn names() {
        assert_eq!(root_name(&[1, 2]), "a1+2a2");
        assert_eq!(root_name(&[0, 1, 0]), "a2");
    }
}
