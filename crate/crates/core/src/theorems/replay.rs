//! Replaying certificates against intersection-lattice data.
//!
//! Nothing here looks at coordinates of the source arrangement: every
//! count is a number of distinct lattice joins, every codimension a rank.

use std::collections::BTreeSet;
use std::fmt;

use super::exponents::{check_subset, complete_ad, plan_mat, plan_mat2, plan_mdt, shift};
use super::{is_sorted_exponents, Certificate, CertificateStep, Evidence, SeedVerdict, StepKind};
use crate::arrangement::{build_lattice, Arrangement, Hyperplane, IndexSet, UniPoly};

/// The flats of an arrangement as sets of hyperplane labels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeData {
    pub dim: usize,
    /// Normal vectors naming the hyperplanes, used only to bind a
    /// certificate's hyperplanes to lattice elements.
    pub labels: Vec<Vec<i64>>,
    /// `(members, codim)` for every flat, including the whole space.
    pub flats: Vec<(IndexSet, usize)>,
}

impl LatticeData {
    pub fn new(dim: usize, labels: Vec<Vec<i64>>, mut flats: Vec<(IndexSet, usize)>) -> Self {
        flats.sort_by_key(|f| f.1);
        LatticeData { dim, labels, flats }
    }

    pub fn from_arrangement(a: &Arrangement) -> Self {
        let lat = build_lattice(a);
        LatticeData::new(
            a.dim(),
            a.iter().map(|h| h.normal().to_vec()).collect(),
            lat.flats().iter().map(|f| (f.members.clone(), f.codim)).collect(),
        )
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    /// Checks the axioms replay relies on: the whole space and every atom
    /// are flats, member sets are distinct, and joining a flat with a
    /// hyperplane outside it raises the codimension by exactly one.
    pub fn validate(&self) -> Result<(), String> {
        let n = self.labels.len();
        if self.flats.first().map(|f| (f.0.len(), f.1)) != Some((0, 0)) {
            return Err("the whole space is missing".into());
        }
        let distinct: BTreeSet<Vec<usize>> = self.flats.iter().map(|f| f.0.iter().collect()).collect();
        if distinct.len() != self.flats.len() {
            return Err("two flats have the same members".into());
        }
        for (members, codim) in &self.flats {
            if members.iter().any(|i| i >= n) || *codim > self.dim {
                return Err("flat out of range".into());
            }
        }
        for i in 0..n {
            if self.rank(&IndexSet::from_indices([i])) != Some(1) {
                return Err(format!(
                    "hyperplane {:?} is not a flat of codimension 1",
                    self.labels[i]
                ));
            }
        }
        for (members, codim) in &self.flats {
            for h in (0..n).filter(|&h| !members.contains(h)) {
                let mut t = members.clone();
                t.insert(h);
                if self.rank(&t) != Some(codim + 1) {
                    return Err(format!(
                        "joining a flat of codimension {codim} with {:?} does not give codimension {}",
                        self.labels[h],
                        codim + 1
                    ));
                }
            }
        }
        Ok(())
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    /// The smallest flat containing every hyperplane of `t`, i.e. their
    /// intersection.
    pub fn closure(&self, t: &IndexSet) -> Option<usize> {
        self.flats.iter().position(|(m, _)| t.is_subset(m))
    }

    pub fn rank(&self, t: &IndexSet) -> Option<usize> {
        self.closure(t).map(|i| self.flats[i].1)
    }

    /// `|B^X|` for the sub-arrangement `base`: the number of distinct
    /// intersections of `X` with members of `base` not containing it.
    pub fn restriction_size(&self, base: &IndexSet, x: usize) -> Option<usize> {
        let xm = &self.flats[x].0;
        let mut seen = BTreeSet::new();
        for k in base.iter() {
            if xm.contains(k) {
                continue;
            }
            let mut t = xm.clone();
            t.insert(k);
            seen.insert(self.closure(&t)?);
        }
        Some(seen.len())
    }

    /// `χ` of the restriction of the sub-arrangement `s` to the flat `x`.
    ///
    /// The flats of `s` are those `F` equal to the closure of
    /// `members(F) ∩ s`; the Möbius function is recomputed on the interval
    /// below `x`.
    pub fn restricted_char_poly(&self, s: &IndexSet, x: usize) -> Option<UniPoly> {
        let xm = self.flats[x].0.intersection(s);
        let mut sflats: Vec<(IndexSet, usize)> = Vec::new();
        for (i, (m, codim)) in self.flats.iter().enumerate() {
            let ms = m.intersection(s);
            if !xm.is_subset(&ms) {
                continue;
            }
            if self.closure(&ms)? == i {
                sflats.push((ms, *codim));
            }
        }
        let mut mu: Vec<i64> = Vec::with_capacity(sflats.len());
        for (i, (m, c)) in sflats.iter().enumerate() {
            let v = if i == 0 {
                1
            } else {
                -sflats[..i]
                    .iter()
                    .zip(&mu)
                    .filter(|((g, gc), _)| gc < c && g.is_subset(m))
                    .map(|(_, &u)| u)
                    .sum::<i64>()
            };
            mu.push(v);
        }
        let mut coeffs = vec![0i64; self.dim + 1];
        for ((_, c), u) in sflats.iter().zip(&mu) {
            coeffs[self.dim - c] += u;
        }
        Some(UniPoly::new(coeffs))
    }

    pub fn char_poly(&self, s: &IndexSet) -> Option<UniPoly> {
        let top = self.closure(&IndexSet::new())?;
        self.restricted_char_poly(s, top)
    }

    fn pair_flats(&self) -> Option<Vec<Vec<usize>>> {
        let n = self.len();
        let mut out = vec![vec![0; n]; n];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                if i != j {
                    *cell = self.closure(&IndexSet::from_indices([i, j]))?;
                }
            }
        }
        Some(out)
    }
}

/// A relabelling `σ` of hyperplanes with `σ(src flats) = dst flats`, if
/// one exists. Searches by backtracking, pruning on rank-2 flats.
pub fn find_isomorphism(src: &LatticeData, dst: &LatticeData) -> Option<Vec<usize>> {
    let n = src.len();
    if n != dst.len() || src.flats.len() != dst.flats.len() {
        return None;
    }
    let codims = |d: &LatticeData| {
        let mut v: Vec<usize> = d.flats.iter().map(|f| f.1).collect();
        v.sort_unstable();
        v
    };
    if codims(src) != codims(dst) {
        return None;
    }
    let sp = src.pair_flats()?;
    let dp = dst.pair_flats()?;
    let signature = |d: &LatticeData, p: &[Vec<usize>], i: usize| {
        let mut sizes: Vec<usize> = (0..n)
            .filter(|&j| j != i)
            .map(|j| p[i][j])
            .collect::<BTreeSet<_>>()
            .into_iter()
            .map(|f| d.flats[f].0.len())
            .collect();
        sizes.sort_unstable();
        sizes
    };
    let ssig: Vec<_> = (0..n).map(|i| signature(src, &sp, i)).collect();
    let dsig: Vec<_> = (0..n).map(|i| signature(dst, &dp, i)).collect();
    let target: BTreeSet<(Vec<usize>, usize)> = dst.flats.iter().map(|(m, c)| (m.iter().collect(), *c)).collect();

    let mut sigma = vec![usize::MAX; n];
    let mut used = vec![false; n];
    fn search(
        i: usize,
        n: usize,
        sigma: &mut Vec<usize>,
        used: &mut Vec<bool>,
        ctx: &dyn Fn(&[usize], usize, usize) -> bool,
        done: &dyn Fn(&[usize]) -> bool,
    ) -> bool {
        if i == n {
            return done(sigma);
        }
        for c in 0..n {
            if used[c] || !ctx(sigma, i, c) {
                continue;
            }
            sigma[i] = c;
            used[c] = true;
            if search(i + 1, n, sigma, used, ctx, done) {
                return true;
            }
            used[c] = false;
        }
        sigma[i] = usize::MAX;
        false
    }
    let consistent = |sigma: &[usize], i: usize, c: usize| {
        if ssig[i] != dsig[c] {
            return false;
        }
        for a in 0..i {
            for b in a + 1..i {
                let in_src = src.flats[sp[a][b]].0.contains(i);
                let in_dst = dst.flats[dp[sigma[a]][sigma[b]]].0.contains(c);
                if in_src != in_dst {
                    return false;
                }
            }
        }
        true
    };
    let complete = |sigma: &[usize]| {
        src.flats.iter().all(|(m, c)| {
            let mut image: Vec<usize> = m.iter().map(|k| sigma[k]).collect();
            image.sort_unstable();
            target.contains(&(image, *c))
        })
    };
    search(0, n, &mut sigma, &mut used, &consistent, &complete).then_some(sigma)
}

/// Why replay stopped; `step` is `None` for the seed or binding stage.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReplayError {
    pub step: Option<usize>,
    pub message: String,
}

impl fmt::Display for ReplayError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.step {
            Some(i) => write!(f, "step {i}: {}", self.message),
            None => write!(f, "seed: {}", self.message),
        }
    }
}

impl std::error::Error for ReplayError {}

fn seed_err(message: impl Into<String>) -> ReplayError {
    ReplayError {
        step: None,
        message: message.into(),
    }
}

fn canonical(n: &[i64]) -> Result<(), ReplayError> {
    match Hyperplane::new(n.to_vec()) {
        Ok(h) if h.normal() == n => Ok(()),
        _ => Err(seed_err(format!("normal {n:?} is not a canonical primitive vector"))),
    }
}

/// Maps every normal used by the certificate to a lattice element: by
/// equal labels when possible, otherwise through a lattice isomorphism
/// between the certificate's own hyperplanes and the source.
fn bind(data: &LatticeData, cert: &Certificate) -> Result<Vec<(Vec<i64>, usize)>, ReplayError> {
    let mut universe: Vec<Vec<i64>> = Vec::new();
    for n in cert
        .seed
        .hyperplanes
        .iter()
        .chain(cert.steps.iter().flat_map(|s| s.hyperplanes.iter()))
    {
        if n.len() != cert.dim {
            return Err(seed_err(format!("normal {n:?} does not have {} entries", cert.dim)));
        }
        canonical(n)?;
        if !universe.contains(n) {
            universe.push(n.clone());
        }
    }
    let direct: Option<Vec<usize>> = universe
        .iter()
        .map(|n| data.labels.iter().position(|l| l == n))
        .collect();
    if let Some(idx) = direct {
        return Ok(universe.into_iter().zip(idx).collect());
    }
    let arrangement = Arrangement::from_normals(cert.dim, &universe)
        .map_err(|e| seed_err(format!("certificate hyperplanes are invalid: {e}")))?;
    let own = LatticeData::from_arrangement(&arrangement);
    let sigma = find_isomorphism(&own, data)
        .ok_or_else(|| seed_err("the source lattice is not isomorphic to the certificate's"))?;
    Ok(own.labels.into_iter().zip(sigma).collect())
}

struct Replayer<'a> {
    data: &'a LatticeData,
    binding: Vec<(Vec<i64>, usize)>,
}

impl Replayer<'_> {
    fn index(&self, n: &[i64]) -> usize {
        self.binding
            .iter()
            .find(|(m, _)| m.as_slice() == n)
            .map(|(_, i)| *i)
            .expect("all certificate normals are bound")
    }

    fn set(&self, ns: &[Vec<i64>]) -> IndexSet {
        IndexSet::from_indices(ns.iter().map(|n| self.index(n)))
    }

    fn closure(&self, t: &IndexSet) -> Result<usize, String> {
        self.data
            .closure(t)
            .ok_or_else(|| "lattice data has no flat containing the given hyperplanes".to_string())
    }

    fn restriction_size(&self, base: &IndexSet, x: usize) -> Result<usize, String> {
        self.data
            .restriction_size(base, x)
            .ok_or_else(|| "lattice data is not closed under intersection".to_string())
    }

    fn multiple(&self, step: &CertificateStep, s: &IndexSet) -> Result<(Evidence, Vec<u32>, IndexSet), String> {
        let hs: Vec<usize> = step.hyperplanes.iter().map(|n| self.index(n)).collect();
        let p = hs.len();
        let hset = IndexSet::from_indices(hs.iter().copied());
        if hset.len() != p {
            return Err("repeated hyperplane".into());
        }
        let adding = matches!(step.kind, StepKind::Mat | StepKind::Mat2 | StepKind::Mat2Subset);
        let (plan, block) = match step.kind {
            StepKind::Mat => {
                let (plan, d) = plan_mat(&step.before, p).map_err(|e| e.to_string())?;
                (plan, Some(d))
            }
            StepKind::Mat2 | StepKind::Mat2Subset => (plan_mat2(&step.before, p).map_err(|e| e.to_string())?, None),
            _ => (plan_mdt(&step.before, p).map_err(|e| e.to_string())?, None),
        };
        if adding && !hset.is_disjoint(s) {
            return Err("added hyperplane already present".into());
        }
        if !adding && !hset.is_subset(s) {
            return Err("deleted hyperplane not present".into());
        }
        let mut restricted = Vec::with_capacity(p);
        for &h in &hs {
            let x = self.closure(&IndexSet::from_indices([h]))?;
            let mut base = s.clone();
            base.remove(h);
            restricted.push(self.restriction_size(&base, x)?);
        }
        for (j, (&r, &t)) in restricted.iter().zip(&plan.targets).enumerate() {
            if s.len() as i64 - r as i64 != t as i64 {
                return Err(format!("condition (1) fails at j={j}: {} - {r} != {t}", s.len()));
            }
        }
        let x = self.closure(&hset)?;
        let codim = self.data.flats[x].1;
        if codim != p {
            return Err(format!("condition (2) fails: codimension {codim}, expected {p}"));
        }
        let others = if adding { s.clone() } else { s.difference(&hset) };
        if let Some(k) = others.iter().find(|&k| self.data.flats[x].0.contains(k)) {
            return Err(format!(
                "condition (3) fails: intersection lies in {:?}",
                self.data.labels[k]
            ));
        }
        let subset = match step.kind {
            StepKind::Mat2Subset | StepKind::MdtSubset => {
                let sub = step
                    .evidence
                    .subset
                    .clone()
                    .ok_or_else(|| "subset step without a subset".to_string())?;
                check_subset(&sub, p).map_err(|e| e.to_string())?;
                Some(sub)
            }
            _ => None,
        };
        let chosen: Vec<usize> = match &subset {
            Some(sub) => sub.clone(),
            None => (0..p).collect(),
        };
        let moved: Vec<usize> = chosen.iter().map(|&i| plan.positions[i]).collect();
        let after = shift(&step.before, &moved, if adding { 1 } else { -1 });
        let touched = IndexSet::from_indices(chosen.iter().map(|&i| hs[i]));
        let next = if adding {
            s.union(&touched)
        } else {
            s.difference(&touched)
        };
        let evidence = Evidence {
            cardinality: s.len(),
            restricted: Some(restricted),
            targets: Some(plan.targets),
            positions: Some(plan.positions),
            codim: Some(codim),
            block,
            subset,
            restriction_exponents: None,
        };
        Ok((evidence, after, next))
    }

    fn addition_deletion(
        &self,
        step: &CertificateStep,
        s: &IndexSet,
    ) -> Result<(Evidence, Vec<u32>, IndexSet), String> {
        let [n] = step.hyperplanes.as_slice() else {
            return Err("addition-deletion needs exactly one hyperplane".into());
        };
        let h = self.index(n);
        let deleting = s.contains(h);
        let mut full_set = s.clone();
        full_set.insert(h);
        let mut rest = s.clone();
        rest.remove(h);
        let (full, deletion) = if deleting {
            (&step.before, &step.after)
        } else {
            (&step.after, &step.before)
        };
        let r = step
            .evidence
            .restriction_exponents
            .clone()
            .ok_or_else(|| "missing restriction exponents".to_string())?;
        if r.len() + 1 != self.data.dim {
            return Err("restriction exponents have the wrong length".into());
        }
        complete_ad(Some(full), Some(deletion), Some(&r)).map_err(|e| e.to_string())?;
        let x = self.closure(&IndexSet::from_indices([h]))?;
        let restricted = self.restriction_size(&rest, x)?;
        if r.iter().sum::<u32>() as usize != restricted {
            return Err(format!("restriction exponents do not sum to |A''| = {restricted}"));
        }
        let chi = self
            .data
            .restricted_char_poly(&full_set, x)
            .ok_or_else(|| "lattice data is not closed under intersection".to_string())?;
        let roots: Vec<u64> = r.iter().map(|&e| e as u64).collect();
        if chi != UniPoly::from_roots(&roots) {
            return Err(format!("χ(A'') = {chi} does not factor with roots {r:?}"));
        }
        let evidence = Evidence {
            cardinality: s.len(),
            restricted: Some(vec![restricted]),
            restriction_exponents: Some(r),
            ..Evidence::default()
        };
        let next = if deleting { rest } else { full_set };
        Ok((evidence, step.after.clone(), next))
    }

    fn restriction_count(&self, step: &CertificateStep, s: &IndexSet) -> Result<(Evidence, Vec<u32>), String> {
        let hset = self.set(&step.hyperplanes);
        if !hset.is_subset(s) {
            return Err("restriction hyperplanes are not in the arrangement".into());
        }
        let x = self.closure(&hset)?;
        if self.data.flats[x].0.intersection(s) != hset {
            return Err("listed hyperplanes are not all members of A containing X".into());
        }
        let k = self.data.flats[x].1;
        if k >= self.data.dim || step.before.first() != Some(&1) {
            return Err("criterion needs a flat of positive dimension and exponents (1, ...)".into());
        }
        let count = self.restriction_size(s, x)?;
        let tail = &step.before[k + 1..];
        let target = 1 + tail.iter().sum::<u32>();
        if count != target as usize {
            return Err(format!("|A^X| = {count} but 1 + Σ d = {target}"));
        }
        let mut after = vec![1];
        after.extend_from_slice(tail);
        let evidence = Evidence {
            cardinality: s.len(),
            restricted: Some(vec![count]),
            targets: Some(vec![target]),
            codim: Some(k),
            ..Evidence::default()
        };
        Ok((evidence, after))
    }
}

/// Re-verifies a certificate on lattice data alone and returns the
/// certified exponents.
///
/// The seed's freeness is trusted; its exponents must sum to its size and
/// be the roots of its characteristic polynomial. Each step's hypotheses
/// and evidence are recomputed and compared exactly. Seeds with a
/// `Supplied` verdict are rejected; see [`replay_certificate_trusting`].
pub fn replay_certificate(data: &LatticeData, cert: &Certificate) -> Result<Vec<u32>, ReplayError> {
    if cert.seed.verdict == SeedVerdict::Supplied {
        return Err(seed_err("exponents were supplied, not certified"));
    }
    replay_certificate_trusting(data, cert)
}

/// As [`replay_certificate`], also accepting caller-supplied seeds.
pub fn replay_certificate_trusting(data: &LatticeData, cert: &Certificate) -> Result<Vec<u32>, ReplayError> {
    if cert.dim != data.dim {
        return Err(seed_err(format!(
            "certificate is in dimension {} but the lattice in {}",
            cert.dim, data.dim
        )));
    }
    data.validate()
        .map_err(|e| seed_err(format!("invalid lattice data: {e}")))?;
    let binding = bind(data, cert)?;
    let r = Replayer { data, binding };

    let seed = &cert.seed;
    let mut s = r.set(&seed.hyperplanes);
    if s.len() != seed.hyperplanes.len() {
        return Err(seed_err("repeated seed hyperplane"));
    }
    let mut exps = seed.exponents.clone();
    if exps.len() != cert.dim || !is_sorted_exponents(&exps) {
        return Err(seed_err(format!(
            "exponents {exps:?} are not {} ascending entries",
            cert.dim
        )));
    }
    if seed.verdict == SeedVerdict::Empty && (!seed.hyperplanes.is_empty() || exps.iter().any(|&e| e != 0)) {
        return Err(seed_err("an empty seed has no hyperplanes and zero exponents"));
    }
    if exps.iter().sum::<u32>() as usize != s.len() {
        return Err(seed_err("exponents do not sum to the number of hyperplanes"));
    }
    let chi = data
        .char_poly(&s)
        .ok_or_else(|| seed_err("lattice data is not closed under intersection"))?;
    let roots: Vec<u64> = exps.iter().map(|&e| e as u64).collect();
    if chi != UniPoly::from_roots(&roots) {
        return Err(seed_err(format!("χ = {chi} does not have roots {exps:?}")));
    }

    for (i, step) in cert.steps.iter().enumerate() {
        let fail = |message: String| ReplayError {
            step: Some(i),
            message: format!("{}: {message}", step.kind),
        };
        if step.before != exps {
            return Err(fail(format!(
                "claims input exponents {:?}, chain has {exps:?}",
                step.before
            )));
        }
        let (evidence, after, next) = match step.kind {
            StepKind::AdditionDeletion => r.addition_deletion(step, &s).map_err(fail)?,
            StepKind::MrtCount => {
                if i + 1 != cert.steps.len() {
                    return Err(fail("a restriction must be the last step".into()));
                }
                let (e, a) = r.restriction_count(step, &s).map_err(fail)?;
                (e, a, s.clone())
            }
            _ => r.multiple(step, &s).map_err(fail)?,
        };
        if evidence != step.evidence {
            return Err(fail(format!(
                "evidence {:?} differs from the lattice's {evidence:?}",
                step.evidence
            )));
        }
        if after != step.after {
            return Err(fail(format!("claims output {:?}, theorem gives {after:?}", step.after)));
        }
        if step.kind != StepKind::MrtCount && after.iter().sum::<u32>() as usize != next.len() {
            return Err(fail("output exponents do not sum to the output size".into()));
        }
        exps = after;
        s = next;
    }
    Ok(exps)
}
