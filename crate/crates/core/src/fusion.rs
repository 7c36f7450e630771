//! Fusion rings with sparse nonnegative-integer structure constants.
//!
//! [`build_su2_ring`] gives `R_ℓ`, [`tensor_ring`] forms products, and the
//! Neveu-Schwarz ring `T_m` is obtained two ways: [`build_ns_ring`] uses the
//! coset fusion formula directly, [`quotient_ns_ring`] pushes the tensor ring
//! `R_ℓ ⊗ R_{ℓ+2}` down through the label involution.

use std::collections::{BTreeMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::kac::{canonicalize, enumerate_ns_basis, Level, NSLabel, Spin};

/// A basis label of a fusion ring.
pub trait Label: Clone + Ord + fmt::Debug + fmt::Display {
    /// Doubled-spin coordinates used in serialized form.
    fn coords(&self) -> Vec<u32>;
}

impl Label for Spin {
    fn coords(&self) -> Vec<u32> {
        vec![self.twice()]
    }
}

impl Label for NSLabel {
    fn coords(&self) -> Vec<u32> {
        NSLabel::coords(*self).to_vec()
    }
}

/// Pair labels of a tensor-product ring.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Pair<A, B>(pub A, pub B);

impl<A: fmt::Display, B: fmt::Display> fmt::Display for Pair<A, B> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.0, self.1)
    }
}

impl<A: Label, B: Label> Label for Pair<A, B> {
    fn coords(&self) -> Vec<u32> {
        let mut c = self.0.coords();
        c.extend(self.1.coords());
        c
    }
}

/// A finite-rank ring with basis labels `L` and structure constants
/// `N_{ab}^c`, stored sparsely (zeros are never stored).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FusionRing<L> {
    level: Level,
    basis: Vec<L>,
    index: BTreeMap<L, usize>,
    structure: BTreeMap<(usize, usize, usize), u32>,
    unit: usize,
}

impl<L: Label> FusionRing<L> {
    /// Builds a ring from `(a, b, c, N)` index tuples. Zero entries are
    /// dropped; repeated tuples accumulate.
    pub fn new(
        level: Level,
        basis: Vec<L>,
        entries: impl IntoIterator<Item = (usize, usize, usize, u32)>,
        unit: usize,
    ) -> Result<Self> {
        let n = basis.len();
        if unit >= n {
            return domain(format!("unit index {unit} outside a basis of size {n}"));
        }
        let index: BTreeMap<L, usize> = basis.iter().cloned().zip(0..).collect();
        if index.len() != n {
            return domain("duplicate basis labels");
        }
        let mut structure = BTreeMap::new();
        for (a, b, c, mult) in entries {
            if a >= n || b >= n || c >= n {
                return domain(format!("structure index ({a}, {b}, {c}) outside basis"));
            }
            if mult > 0 {
                *structure.entry((a, b, c)).or_insert(0) += mult;
            }
        }
        Ok(FusionRing {
            level,
            basis,
            index,
            structure,
            unit,
        })
    }

    pub fn level(&self) -> Level {
        self.level
    }

    pub fn basis(&self) -> &[L] {
        &self.basis
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn unit(&self) -> usize {
        self.unit
    }

    pub fn index_of(&self, label: &L) -> Option<usize> {
        self.index.get(label).copied()
    }

    fn require(&self, label: &L) -> Result<usize> {
        match self.index_of(label) {
            Some(i) => Ok(i),
            None => domain(format!("label {label} is not in the ring basis")),
        }
    }

    pub fn multiplicity(&self, a: usize, b: usize, c: usize) -> u32 {
        self.structure.get(&(a, b, c)).copied().unwrap_or(0)
    }

    /// Nonzero `(c, N_{ab}^c)` for fixed `a, b`.
    pub fn product(&self, a: usize, b: usize) -> impl Iterator<Item = (usize, u32)> + '_ {
        self.structure
            .range((a, b, 0)..=(a, b, usize::MAX))
            .map(|(&(_, _, c), &m)| (c, m))
    }

    /// Product of two labels as `(label, multiplicity)` pairs.
    pub fn fuse(&self, a: &L, b: &L) -> Result<Vec<(L, u32)>> {
        let (a, b) = (self.require(a)?, self.require(b)?);
        Ok(self
            .product(a, b)
            .map(|(c, m)| (self.basis[c].clone(), m))
            .collect())
    }

    /// Overwrites one structure constant.
    pub fn set_multiplicity(&mut self, a: usize, b: usize, c: usize, mult: u32) {
        if mult == 0 {
            self.structure.remove(&(a, b, c));
        } else {
            self.structure.insert((a, b, c), mult);
        }
    }

    /// All nonzero entries in index order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, usize, u32)> + '_ {
        self.structure.iter().map(|(&(a, b, c), &m)| (a, b, c, m))
    }

    pub fn record(&self) -> RingRecord {
        RingRecord {
            level: self.level.ell(),
            basis: self.basis.iter().map(Label::coords).collect(),
            n: self
                .entries()
                .map(|(a, b, c, m)| [a as u64, b as u64, c as u64, m as u64])
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.record()).expect("ring record serializes")
    }
}

impl FusionRing<NSLabel> {
    /// Rebuilds a Neveu-Schwarz ring from its serialized form.
    pub fn from_record(record: &RingRecord) -> Result<Self> {
        let level = Level::new(record.level);
        let basis = record
            .basis
            .iter()
            .map(|c| match c.as_slice() {
                [a, b] => NSLabel::from_twice(*a, *b, level),
                _ => domain(format!("basis entry {c:?} is not a pair")),
            })
            .collect::<Result<Vec<_>>>()?;
        let unit = match basis.iter().position(|x| *x == NSLabel::vacuum(level)) {
            Some(u) => u,
            None => return domain("serialized ring has no vacuum label"),
        };
        let entries = record
            .n
            .iter()
            .map(|&[a, b, c, m]| (a as usize, b as usize, c as usize, m as u32));
        FusionRing::new(level, basis, entries, unit)
    }
}

/// Serialized ring: `{"level": ℓ, "basis": [[2i, 2i'], …], "N": [[a, b, c, mult], …]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RingRecord {
    pub level: u32,
    pub basis: Vec<Vec<u32>>,
    #[serde(rename = "N")]
    pub n: Vec<[u64; 4]>,
}

/// `(M_x)_{kj} = N_{xj}^k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FusionMatrix {
    pub generator: usize,
    pub entries: Vec<Vec<u32>>,
}

impl FusionMatrix {
    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn row_sums(&self) -> Vec<u32> {
        self.entries.iter().map(|r| r.iter().sum()).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.entries
            .iter()
            .enumerate()
            .all(|(k, row)| row.iter().enumerate().all(|(j, &v)| v == u32::from(j == k)))
    }
}

/// `⟨a, b⟩_n = { c = |a−b|, |a−b|+1, …, a+b : a+b+c ≤ n }`, `n` in units of
/// spin (so `n = ℓ` at level `ℓ`).
pub fn su2_interval(a: Spin, b: Spin, n: u32) -> Vec<Spin> {
    let (ta, tb) = (a.twice(), b.twice());
    let lo = ta.abs_diff(tb);
    (lo..=ta + tb)
        .step_by(2)
        .filter(|tc| ta + tb + tc <= 2 * n)
        .map(Spin::from_twice)
        .collect()
}

/// `R_ℓ` on the basis `0, 1/2, …, ℓ/2`, `N_{ij}^k = [k ∈ ⟨i, j⟩_ℓ]`.
pub fn build_su2_ring(level: Level) -> FusionRing<Spin> {
    let basis: Vec<Spin> = level.spins().collect();
    let mut entries = Vec::new();
    for (a, &i) in basis.iter().enumerate() {
        for (b, &j) in basis.iter().enumerate() {
            for k in su2_interval(i, j, level.ell()) {
                entries.push((a, b, k.twice() as usize, 1));
            }
        }
    }
    FusionRing::new(level, basis, entries, 0).expect("R_ℓ is well formed")
}

/// Basis is the cartesian product (row-major), `N` multiplies componentwise.
pub fn tensor_ring<A: Label, B: Label>(
    r1: &FusionRing<A>,
    r2: &FusionRing<B>,
) -> FusionRing<Pair<A, B>> {
    let n2 = r2.rank();
    let at = |x: usize, y: usize| x * n2 + y;
    let basis = r1
        .basis()
        .iter()
        .flat_map(|a| r2.basis().iter().map(move |b| Pair(a.clone(), b.clone())))
        .collect();
    let mut entries = Vec::new();
    for (a1, b1, c1, m1) in r1.entries() {
        for (a2, b2, c2, m2) in r2.entries() {
            entries.push((at(a1, a2), at(b1, b2), at(c1, c2), m1 * m2));
        }
    }
    FusionRing::new(r1.level(), basis, entries, at(r1.unit(), r2.unit()))
        .expect("tensor product is well formed")
}

/// Coset fusion of two labels: fuse the chosen representatives componentwise
/// over `⟨i, j⟩_ℓ × ⟨i', j'⟩_{ℓ+2}` and canonicalize each product.
pub fn ns_fuse(x: &NSLabel, y: &NSLabel) -> Result<Vec<(NSLabel, u32)>> {
    x.same_level(*y)?;
    let level = x.level();
    let mut acc: BTreeMap<NSLabel, u32> = BTreeMap::new();
    for a in su2_interval(x.i(), y.i(), level.ell()) {
        for b in su2_interval(x.i_prime(), y.i_prime(), level.shifted().ell()) {
            let z = NSLabel::new(a, b, level)?;
            *acc.entry(canonicalize(&z)).or_insert(0) += 1;
        }
    }
    Ok(acc.into_iter().collect())
}

/// Which representative of each class to feed into the fusion formula.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Lift {
    Canonical,
    Image,
}

impl Lift {
    fn apply(self, x: &NSLabel) -> NSLabel {
        match self {
            Lift::Canonical => *x,
            Lift::Image => x.involution(),
        }
    }
}

/// `T_m` from the coset fusion formula with the given lifts of the left and
/// right factors.
pub fn build_ns_ring_lifted(level: Level, left: Lift, right: Lift) -> FusionRing<NSLabel> {
    let basis = enumerate_ns_basis(level);
    let index: BTreeMap<NSLabel, usize> = basis.iter().copied().zip(0..).collect();
    let mut entries = Vec::new();
    for (a, x) in basis.iter().enumerate() {
        for (b, y) in basis.iter().enumerate() {
            let prod = ns_fuse(&left.apply(x), &right.apply(y)).expect("same level");
            for (z, m) in prod {
                entries.push((a, b, index[&z], m));
            }
        }
    }
    let unit = index[&NSLabel::vacuum(level)];
    FusionRing::new(level, basis, entries, unit).expect("T_m is well formed")
}

/// `T_m` with canonical lifts.
pub fn build_ns_ring(level: Level) -> FusionRing<NSLabel> {
    build_ns_ring_lifted(level, Lift::Canonical, Lift::Canonical)
}

/// `T_m` as the quotient of `R_ℓ ⊗ R_{ℓ+2}`: lift, multiply in the tensor
/// ring, push every product down through `canonicalize`.
pub fn quotient_ns_ring(tensor: &FusionRing<Pair<Spin, Spin>>) -> Result<FusionRing<NSLabel>> {
    let level = tensor.level();
    let basis = enumerate_ns_basis(level);
    let index: BTreeMap<NSLabel, usize> = basis.iter().copied().zip(0..).collect();
    let lift = |x: &NSLabel| {
        tensor
            .index_of(&Pair(x.i(), x.i_prime()))
            .ok_or_else(|| crate::Error::Domain(format!("{x} missing from tensor ring")))
    };
    let mut entries = Vec::new();
    for (a, x) in basis.iter().enumerate() {
        for (b, y) in basis.iter().enumerate() {
            for (c, m) in tensor.product(lift(x)?, lift(y)?) {
                let Pair(s, t) = &tensor.basis()[c];
                let z = canonicalize(&NSLabel::new(*s, *t, level)?);
                entries.push((a, b, index[&z], m));
            }
        }
    }
    let unit = index[&NSLabel::vacuum(level)];
    FusionRing::new(level, basis, entries, unit)
}

pub fn fusion_matrix<L: Label>(ring: &FusionRing<L>, x: &L) -> Result<FusionMatrix> {
    let g = ring.require(x)?;
    let n = ring.rank();
    let mut entries = vec![vec![0; n]; n];
    for (j, row) in (0..n).map(|j| (j, ring.product(g, j))) {
        for (k, m) in row {
            entries[k][j] = m;
        }
    }
    Ok(FusionMatrix {
        generator: g,
        entries,
    })
}

/// `N_{a,1}^c = δ_ac` and `N_{1,b}^c = δ_bc`.
pub fn verify_unit<L: Label>(ring: &FusionRing<L>) -> bool {
    let n = ring.rank();
    let u = ring.unit();
    (0..n).all(|a| {
        (0..n).all(|c| {
            let want = u32::from(a == c);
            ring.multiplicity(a, u, c) == want && ring.multiplicity(u, a, c) == want
        })
    })
}

/// `Σ_e N_{ab}^e N_{ec}^d = Σ_f N_{bc}^f N_{af}^d` for all `a, b, c, d`.
pub fn verify_associativity<L: Label>(ring: &FusionRing<L>) -> bool {
    let n = ring.rank();
    for a in 0..n {
        for b in 0..n {
            let ab: Vec<(usize, u32)> = ring.product(a, b).collect();
            for c in 0..n {
                let mut left = vec![0u64; n];
                for &(e, m) in &ab {
                    for (d, m2) in ring.product(e, c) {
                        left[d] += u64::from(m) * u64::from(m2);
                    }
                }
                let mut right = vec![0u64; n];
                for (f, m) in ring.product(b, c) {
                    for (d, m2) in ring.product(a, f) {
                        right[d] += u64::from(m) * u64::from(m2);
                    }
                }
                if left != right {
                    return false;
                }
            }
        }
    }
    true
}

pub fn verify_commutativity<L: Label>(ring: &FusionRing<L>) -> bool {
    ring.entries()
        .all(|(a, b, c, m)| ring.multiplicity(b, a, c) == m)
}

/// Dual index of each basis element: the unique `b` with `N_{ab}^1 ≥ 1`.
pub fn duals<L: Label>(ring: &FusionRing<L>) -> Vec<Option<usize>> {
    let n = ring.rank();
    (0..n)
        .map(|a| {
            let hits: Vec<usize> = (0..n)
                .filter(|&b| ring.multiplicity(a, b, ring.unit()) >= 1)
                .collect();
            match hits.as_slice() {
                [b] => Some(*b),
                _ => None,
            }
        })
        .collect()
}

/// Outcome of [`verify_frobenius`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrobeniusReport {
    /// `N_{bc}^a = N_{b* a}^c` for all `a, b, c`.
    pub reciprocity: bool,
    /// Every basis element satisfies `N_{aa}^1 = 1`.
    pub self_dual: bool,
    /// First basis element without a unique dual, if any.
    pub missing_dual: Option<String>,
}

impl FrobeniusReport {
    pub fn passed(&self) -> bool {
        self.reciprocity && self.self_dual && self.missing_dual.is_none()
    }
}

pub fn verify_frobenius<L: Label>(ring: &FusionRing<L>) -> FrobeniusReport {
    let n = ring.rank();
    let dual = duals(ring);
    if let Some(a) = dual.iter().position(Option::is_none) {
        return FrobeniusReport {
            reciprocity: false,
            self_dual: false,
            missing_dual: Some(ring.basis()[a].to_string()),
        };
    }
    let dual: Vec<usize> = dual.into_iter().flatten().collect();
    let reciprocity = (0..n).all(|a| {
        (0..n).all(|b| (0..n).all(|c| ring.multiplicity(b, c, a) == ring.multiplicity(dual[b], a, c)))
    });
    let self_dual = (0..n).all(|a| ring.multiplicity(a, a, ring.unit()) == 1);
    FrobeniusReport {
        reciprocity,
        self_dual,
        missing_dual: None,
    }
}

/// Connectivity of the graph on the basis with an edge between `j` and `k` whenever
/// `N_{xj}^k ≥ 1`.
pub fn weak_generator_check<L: Label>(ring: &FusionRing<L>, x: &L) -> Result<bool> {
    let g = ring.require(x)?;
    let n = ring.rank();
    let mut adj = vec![Vec::new(); n];
    for j in 0..n {
        for (k, _) in ring.product(g, j) {
            adj[j].push(k);
            adj[k].push(j);
        }
    }
    Ok(connected(&adj))
}

pub(crate) fn connected(adj: &[Vec<usize>]) -> bool {
    let n = adj.len();
    if n == 0 {
        return true;
    }
    let mut seen = vec![false; n];
    let mut queue = VecDeque::from([0]);
    seen[0] = true;
    while let Some(v) = queue.pop_front() {
        for &w in &adj[v] {
            if !seen[w] {
                seen[w] = true;
                queue.push_back(w);
            }
        }
    }
    seen.into_iter().all(|s| s)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(t: u32) -> Spin {
        Spin::from_twice(t)
    }

    fn ns(a: u32, b: u32, ell: u32) -> NSLabel {
        NSLabel::from_twice(a, b, Level::new(ell)).unwrap()
    }

    #[test]
    fn interval_examples() {
        assert_eq!(su2_interval(s(1), s(1), 1), vec![s(0)]);
        assert_eq!(su2_interval(s(1), s(1), 2), vec![s(0), s(2)]);
        for n in 0..6 {
            for tj in 0..=n {
                assert_eq!(su2_interval(s(0), s(tj), n), vec![s(tj)]);
            }
        }
    }

    #[test]
    fn su2_ring_examples() {
        let r1 = build_su2_ring(Level::new(1));
        assert_eq!(r1.basis(), &[s(0), s(1)]);
        assert_eq!(r1.fuse(&s(1), &s(1)).unwrap(), vec![(s(0), 1)]);
        let r2 = build_su2_ring(Level::new(2));
        assert_eq!(r2.fuse(&s(1), &s(1)).unwrap(), vec![(s(0), 1), (s(2), 1)]);
        for ell in 0..=8 {
            assert!(verify_unit(&build_su2_ring(Level::new(ell))));
        }
    }

    #[test]
    fn tricritical_ising() {
        let t = build_ns_ring(Level::new(1));
        let (one, eps) = (ns(0, 0, 1), ns(0, 2, 1));
        assert_eq!(t.basis(), &[one, eps]);
        assert_eq!(t.fuse(&eps, &eps).unwrap(), vec![(one, 1), (eps, 1)]);
        let m = fusion_matrix(&t, &eps).unwrap();
        assert_eq!(m.entries, vec![vec![0, 1], vec![1, 1]]);
        assert!(fusion_matrix(&t, &one).unwrap().is_identity());
        assert!(fusion_matrix(&t, &ns(0, 0, 2)).is_err());
    }

    #[test]
    fn tensor_counts_and_unit() {
        let t = tensor_ring(&build_su2_ring(Level::new(1)), &build_su2_ring(Level::new(3)));
        assert_eq!(t.rank(), 8);
        assert_eq!(t.basis()[t.unit()], Pair(s(0), s(0)));
        assert!(verify_unit(&t));
        let r1 = build_su2_ring(Level::new(1));
        let r3 = build_su2_ring(Level::new(3));
        for (a, b, c, m) in t.entries() {
            let (a1, a2) = (a / 4, a % 4);
            let (b1, b2) = (b / 4, b % 4);
            let (c1, c2) = (c / 4, c % 4);
            assert_eq!(m, r1.multiplicity(a1, b1, c1) * r3.multiplicity(a2, b2, c2));
        }
    }

    #[test]
    fn ring_axioms_sweep() {
        for ell in 0..=8 {
            let level = Level::new(ell);
            let r = build_su2_ring(level);
            assert!(verify_associativity(&r) && verify_commutativity(&r), "R_{ell}");
            assert!(verify_frobenius(&r).passed(), "R_{ell}");
            let t = build_ns_ring(level);
            assert!(verify_unit(&t), "T ℓ={ell}");
            assert!(verify_associativity(&t), "T ℓ={ell}");
            assert!(verify_commutativity(&t), "T ℓ={ell}");
            assert!(verify_frobenius(&t).passed(), "T ℓ={ell}");
        }
        for ell in 0..=3 {
            let level = Level::new(ell);
            let tensor = tensor_ring(&build_su2_ring(level), &build_su2_ring(level.shifted()));
            assert!(verify_frobenius(&tensor).passed());
            assert!(verify_associativity(&tensor));
        }
    }

    #[test]
    fn lift_independence_and_quotient_agree() {
        for ell in 0..=6 {
            let level = Level::new(ell);
            let base = build_ns_ring(level);
            for (l, r) in [
                (Lift::Image, Lift::Canonical),
                (Lift::Canonical, Lift::Image),
                (Lift::Image, Lift::Image),
            ] {
                assert_eq!(build_ns_ring_lifted(level, l, r), base, "ℓ={ell}");
            }
            let tensor = tensor_ring(&build_su2_ring(level), &build_su2_ring(level.shifted()));
            assert_eq!(quotient_ns_ring(&tensor).unwrap(), base, "ℓ={ell}");
        }
    }

    #[test]
    fn mutations_are_detected() {
        let mut t = build_ns_ring(Level::new(2));
        let eps = 1;
        let before = t.multiplicity(eps, eps, 0);
        t.set_multiplicity(eps, eps, 0, before + 1);
        assert!(!verify_associativity(&t));
        assert!(!verify_frobenius(&t).passed());

        let mut t = build_ns_ring(Level::new(3));
        let (a, b, c, m) = t.entries().find(|&(a, b, _, _)| a != b).unwrap();
        t.set_multiplicity(a, b, c, m + 1);
        assert!(!verify_commutativity(&t));
        assert!(!verify_associativity(&t));
    }

    #[test]
    fn alpha_fusion_row_sums_and_weak_generation() {
        for ell in 1..=8 {
            let level = Level::new(ell);
            let t = build_ns_ring(level);
            let alpha = canonicalize(&ns(1, 1, ell));
            let m = fusion_matrix(&t, &alpha).unwrap();
            assert!(m.row_sums().iter().all(|&r| r <= 4));
            assert!(weak_generator_check(&t, &alpha).unwrap(), "ℓ={ell}");
            assert!(!weak_generator_check(&t, &NSLabel::vacuum(level)).unwrap());
        }
        let t3 = build_ns_ring(Level::new(1));
        let beta = canonicalize(&ns(0, 2, 1));
        assert!(weak_generator_check(&t3, &beta).unwrap());
        let t4 = build_ns_ring(Level::new(2));
        assert!(!weak_generator_check(&t4, &canonicalize(&ns(0, 2, 2))).unwrap());
    }

    #[test]
    fn alpha_fusion_matches_coset_index_set() {
        for ell in 1..=8 {
            let level = Level::new(ell);
            let t = build_ns_ring(level);
            let alpha = canonicalize(&ns(1, 1, ell));
            for x in t.basis() {
                let mut expect: BTreeMap<NSLabel, u32> = BTreeMap::new();
                for a in su2_interval(Spin::HALF, x.i(), ell) {
                    for b in su2_interval(Spin::HALF, x.i_prime(), ell + 2) {
                        *expect
                            .entry(canonicalize(&NSLabel::new(a, b, level).unwrap()))
                            .or_default() += 1;
                    }
                }
                let got: BTreeMap<NSLabel, u32> = t.fuse(&alpha, x).unwrap().into_iter().collect();
                assert_eq!(got, expect);
            }
        }
    }

    #[test]
    fn json_shape_and_round_trip() {
        let t = build_ns_ring(Level::new(1));
        assert_eq!(
            t.to_json(),
            r#"{"level":1,"basis":[[0,0],[0,2]],"N":[[0,0,0,1],[0,1,1,1],[1,0,1,1],[1,1,0,1],[1,1,1,1]]}"#
        );
        for ell in 0..=5 {
            let t = build_ns_ring(Level::new(ell));
            let rec: RingRecord = serde_json::from_str(&t.to_json()).unwrap();
            assert_eq!(FusionRing::from_record(&rec).unwrap(), t);
        }
    }
}
