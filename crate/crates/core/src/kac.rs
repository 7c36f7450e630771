//! Exact conformal-weight arithmetic for SU(2) at level `ℓ` and for the
//! Neveu-Schwarz discrete series at `m = ℓ + 2`.
//!
//! Spins are stored doubled so that half-integers stay exact, and every
//! weight is a reduced [`Rational`].

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};

/// Arbitrary-precision reduced rational.
pub type Rational = BigRational;

pub(crate) fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// A half-integer spin, stored as `2i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Spin(u32);

impl Spin {
    pub const ZERO: Spin = Spin(0);
    pub const HALF: Spin = Spin(1);
    pub const ONE: Spin = Spin(2);

    pub const fn from_twice(twice_spin: u32) -> Self {
        Spin(twice_spin)
    }

    pub const fn twice(self) -> u32 {
        self.0
    }

    pub fn to_rational(self) -> Rational {
        rat(self.0 as i64, 2)
    }

    pub fn to_f64(self) -> f64 {
        self.0 as f64 / 2.0
    }

    /// `2i + 1`, the dimension of the spin-`i` representation.
    pub const fn dim(self) -> u32 {
        self.0 + 1
    }
}

impl fmt::Display for Spin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_multiple_of(2) {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

/// A level `ℓ ≥ 0`. The associated Neveu-Schwarz charge label is `m = ℓ + 2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Level(u32);

impl Level {
    pub const fn new(ell: u32) -> Self {
        Level(ell)
    }

    /// Level from the charge label `m`; `m ≥ 2`.
    pub fn from_m(m: u32) -> Result<Self> {
        if m < 2 {
            return domain(format!("m = {m} is below the minimum 2"));
        }
        Ok(Level(m - 2))
    }

    pub const fn ell(self) -> u32 {
        self.0
    }

    pub const fn m(self) -> u32 {
        self.0 + 2
    }

    /// The level `ℓ + 2` carrying the second coset factor.
    pub const fn shifted(self) -> Level {
        Level(self.0 + 2)
    }

    pub const fn admits(self, spin: Spin) -> bool {
        spin.0 <= self.0
    }

    /// All admissible spins `0, 1/2, …, ℓ/2`.
    pub fn spins(self) -> impl Iterator<Item = Spin> {
        (0..=self.0).map(Spin)
    }

    /// The spin `ℓ/2 − i`.
    pub fn reflect(self, spin: Spin) -> Spin {
        Spin(self.0 - spin.0)
    }

    fn require(self, spin: Spin) -> Result<()> {
        if self.admits(spin) {
            Ok(())
        } else {
            domain(format!("spin {spin} exceeds {}/2 at level {}", self.0, self.0))
        }
    }
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A Neveu-Schwarz Kac label `(p, q)` at charge label `m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct KacLabel {
    p: u32,
    q: u32,
    m: u32,
}

impl KacLabel {
    /// Validates `1 ≤ p ≤ m−1`, `1 ≤ q ≤ m+1` and NS parity `p ≡ q (mod 2)`.
    pub fn new(p: u32, q: u32, m: u32) -> Result<Self> {
        if m < 2 {
            return domain(format!("m = {m} is below the minimum 2"));
        }
        if !(1..m).contains(&p) {
            return domain(format!("p = {p} outside 1..={}", m - 1));
        }
        if !(1..=m + 1).contains(&q) {
            return domain(format!("q = {q} outside 1..={}", m + 1));
        }
        if !(p + q).is_multiple_of(2) {
            return domain(format!("(p, q) = ({p}, {q}) has Ramond parity"));
        }
        Ok(KacLabel { p, q, m })
    }

    pub const fn p(self) -> u32 {
        self.p
    }

    pub const fn q(self) -> u32 {
        self.q
    }

    pub const fn m(self) -> u32 {
        self.m
    }

    /// The identified label `(m − p, m + 2 − q)`.
    pub fn reflected(self) -> KacLabel {
        KacLabel {
            p: self.m - self.p,
            q: self.m + 2 - self.q,
            m: self.m,
        }
    }

    pub fn to_ns(self) -> NSLabel {
        NSLabel {
            i: Spin(self.p - 1),
            i_prime: Spin(self.q - 1),
            level: Level(self.m - 2),
        }
    }
}

impl fmt::Display for KacLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(p={}, q={}, m={})", self.p, self.q, self.m)
    }
}

/// A coset label: spin `i` at level `ℓ` and spin `i'` at level `ℓ + 2`,
/// with `i − i' ∈ ℤ` (Neveu-Schwarz sector).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct NSLabel {
    i: Spin,
    i_prime: Spin,
    level: Level,
}

impl NSLabel {
    pub fn new(i: Spin, i_prime: Spin, level: Level) -> Result<Self> {
        level.require(i)?;
        level.shifted().require(i_prime)?;
        if !(i.0 + i_prime.0).is_multiple_of(2) {
            return domain(format!(
                "({i}, {i_prime}) has half-integer spin difference (Ramond sector)"
            ));
        }
        Ok(NSLabel { i, i_prime, level })
    }

    /// Convenience constructor from doubled spins `(2i, 2i')`.
    pub fn from_twice(twice_i: u32, twice_i_prime: u32, level: Level) -> Result<Self> {
        Self::new(Spin(twice_i), Spin(twice_i_prime), level)
    }

    pub fn vacuum(level: Level) -> Self {
        NSLabel {
            i: Spin::ZERO,
            i_prime: Spin::ZERO,
            level,
        }
    }

    pub const fn i(self) -> Spin {
        self.i
    }

    pub const fn i_prime(self) -> Spin {
        self.i_prime
    }

    pub const fn level(self) -> Level {
        self.level
    }

    pub fn kac(self) -> KacLabel {
        KacLabel {
            p: self.i.dim(),
            q: self.i_prime.dim(),
            m: self.level.m(),
        }
    }

    /// `(ℓ/2 − i, (ℓ+2)/2 − i')`, the other representative of the same
    /// Neveu-Schwarz representation.
    pub fn involution(self) -> Self {
        NSLabel {
            i: self.level.reflect(self.i),
            i_prime: self.level.shifted().reflect(self.i_prime),
            level: self.level,
        }
    }

    /// Conformal weight `h_{pq}^m` of this label.
    pub fn weight(self) -> Rational {
        h_ns(&self.kac())
    }

    /// `(2i, 2i')`.
    pub fn coords(self) -> [u32; 2] {
        [self.i.0, self.i_prime.0]
    }

    pub(crate) fn same_level(self, other: NSLabel) -> Result<()> {
        if self.level == other.level {
            Ok(())
        } else {
            domain(format!(
                "labels at different levels {} and {}",
                self.level, other.level
            ))
        }
    }
}

impl fmt::Display for NSLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.i, self.i_prime)
    }
}

/// `h_i^ℓ = (i² + i)/(ℓ + 2)`.
pub fn h_su2(i: Spin, level: Level) -> Result<Rational> {
    level.require(i)?;
    Ok(h_su2_unchecked(i, level))
}

fn h_su2_unchecked(i: Spin, level: Level) -> Rational {
    // (i² + i) with i = t/2 is t(t+2)/4.
    let t = i.0 as i64;
    rat(t * (t + 2), 4 * level.m() as i64)
}

/// `h_{pq}^m = ([(m+2)p − mq]² − 4) / (8m(m+2))`.
pub fn h_ns(label: &KacLabel) -> Rational {
    let (p, q, m) = (label.p as i64, label.q as i64, label.m as i64);
    let x = (m + 2) * p - m * q;
    rat(x * x - 4, 8 * m * (m + 2))
}

/// The lexicographically smaller of `label` and its involution image,
/// compared on `(2i, 2i')`.
pub fn canonicalize(label: &NSLabel) -> NSLabel {
    let image = label.involution();
    if image.coords() < label.coords() {
        image
    } else {
        *label
    }
}

/// All Neveu-Schwarz pairs `(i, i')` at this level, representatives not merged.
pub fn ns_pairs(level: Level) -> Vec<NSLabel> {
    level
        .spins()
        .flat_map(|i| {
            level
                .shifted()
                .spins()
                .filter(move |ip| (i.0 + ip.0) % 2 == 0)
                .map(move |ip| NSLabel {
                    i,
                    i_prime: ip,
                    level,
                })
        })
        .collect()
}

/// One canonical representative per identification class, sorted.
pub fn enumerate_ns_basis(level: Level) -> Vec<NSLabel> {
    let mut out: Vec<NSLabel> = ns_pairs(level)
        .into_iter()
        .filter(|x| canonicalize(x) == *x)
        .collect();
    out.sort();
    out
}

/// Checks `h_i^ℓ = h_{pq}^m + h_{i'}^{ℓ+2} − ½(i − i')²` exactly.
pub fn weight_relation_check(i: Spin, i_prime: Spin, level: Level) -> Result<bool> {
    let label = NSLabel::new(i, i_prime, level)?;
    let lhs = h_su2(i, level)?;
    let diff = i.to_rational() - i_prime.to_rational();
    let rhs = label.weight() + h_su2(i_prime, level.shifted())? - &diff * &diff / rat(2, 1);
    Ok(lhs == rhs)
}

/// `Δ = h(charge) − h(source) + h(target)`, the mode offset of a primary
/// field from `source` to `target`.
pub fn delta_ns(target: &NSLabel, source: &NSLabel, charge: &NSLabel) -> Result<Rational> {
    target.same_level(*source)?;
    target.same_level(*charge)?;
    Ok(charge.weight() - source.weight() + target.weight())
}

/// SU(2) analogue `Δ_{ij}^{k,ℓ} = h_k^ℓ − h_j^ℓ + h_i^ℓ`.
pub fn delta_su2(target: Spin, source: Spin, charge: Spin, level: Level) -> Result<Rational> {
    Ok(h_su2(charge, level)? - h_su2(source, level)? + h_su2(target, level)?)
}

/// `C = ½[(i − i')² − (j − j')² + (k − k')²]`.
pub fn c_coefficient(
    i: Spin,
    i_prime: Spin,
    j: Spin,
    j_prime: Spin,
    k: Spin,
    k_prime: Spin,
) -> Rational {
    let sq = |a: Spin, b: Spin| {
        let d = a.0 as i64 - b.0 as i64;
        d * d
    };
    // Doubled spins square to 4×, so ½·(·)/4 = (·)/8.
    rat(sq(i, i_prime) - sq(j, j_prime) + sq(k, k_prime), 8)
}

/// Checks `Δ^{k,ℓ}_{ij} = Δ_ns + Δ^{k',ℓ+2}_{i'j'} − C` for one triple of labels.
pub fn triangle_relation_check(target: &NSLabel, source: &NSLabel, charge: &NSLabel) -> Result<bool> {
    let level = target.level;
    let lhs = delta_su2(target.i, source.i, charge.i, level)?;
    let rhs = delta_ns(target, source, charge)?
        + delta_su2(target.i_prime, source.i_prime, charge.i_prime, level.shifted())?
        - c_coefficient(
            target.i,
            target.i_prime,
            source.i,
            source.i_prime,
            charge.i,
            charge.i_prime,
        );
    Ok(lhs == rhs)
}

pub(crate) fn is_integer(x: &Rational) -> bool {
    x.denom().is_one()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    fn ns(ti: u32, tip: u32, ell: u32) -> NSLabel {
        NSLabel::from_twice(ti, tip, Level::new(ell)).unwrap()
    }

    #[test]
    fn su2_weights() {
        for ell in 0..6 {
            assert_eq!(h_su2(Spin::ZERO, Level::new(ell)).unwrap(), rat(0, 1));
        }
        assert_eq!(h_su2(Spin::HALF, Level::new(1)).unwrap(), rat(1, 4));
        assert_eq!(h_su2(Spin::ONE, Level::new(2)).unwrap(), rat(1, 2));
        assert!(h_su2(Spin::ONE, Level::new(1)).is_err());
    }

    #[test]
    fn ns_weights() {
        let h = |p, q, m| h_ns(&KacLabel::new(p, q, m).unwrap());
        assert_eq!(h(1, 1, 3), rat(0, 1));
        assert_eq!(h(1, 3, 3), rat(1, 10));
        assert_eq!(h(2, 2, 3), rat(1, 10));
        assert_eq!(h(2, 4, 3), rat(0, 1));
    }

    #[test]
    fn kac_label_validation() {
        assert!(KacLabel::new(1, 2, 2).is_err(), "Ramond parity");
        assert!(KacLabel::new(0, 1, 3).is_err());
        assert!(KacLabel::new(3, 1, 3).is_err());
        assert!(KacLabel::new(1, 5, 3).is_err());
        assert!(KacLabel::new(1, 1, 1).is_err());
        assert!(NSLabel::from_twice(1, 0, Level::new(1)).is_err());
        assert!(NSLabel::from_twice(2, 0, Level::new(1)).is_err());
        assert!(NSLabel::from_twice(0, 2, Level::new(1)).is_ok());
        assert!(NSLabel::from_twice(1, 3, Level::new(1)).is_ok());
        assert!(NSLabel::from_twice(0, 4, Level::new(1)).is_err());
    }

    #[test]
    fn canonicalize_examples() {
        assert_eq!(canonicalize(&ns(1, 3, 1)), ns(0, 0, 1));
        assert_eq!(canonicalize(&ns(0, 0, 1)), ns(0, 0, 1));
        assert_eq!(canonicalize(&ns(1, 1, 1)), ns(0, 2, 1));
    }

    /// Orbit enumeration that only uses the involution, never `canonicalize`.
    fn brute_force_classes(ell: u32) -> (usize, usize, BTreeSet<BTreeSet<[u32; 2]>>) {
        let mut pairs = Vec::new();
        for ti in 0..=ell {
            for tip in 0..=ell + 2 {
                if (ti + tip) % 2 == 0 {
                    pairs.push([ti, tip]);
                }
            }
        }
        let orbits: BTreeSet<BTreeSet<[u32; 2]>> = pairs
            .iter()
            .map(|&[a, b]| [[a, b], [ell - a, ell + 2 - b]].into_iter().collect())
            .collect();
        let fixed = pairs
            .iter()
            .filter(|&&[a, b]| [a, b] == [ell - a, ell + 2 - b])
            .count();
        (pairs.len(), fixed, orbits)
    }

    #[test]
    fn basis_matches_orbit_enumeration() {
        for ell in 0..=12 {
            let basis = enumerate_ns_basis(Level::new(ell));
            let (pairs, fixed, orbits) = brute_force_classes(ell);
            assert_eq!(basis.len(), orbits.len(), "ℓ={ell}");
            assert_eq!(basis.len(), (pairs - fixed) / 2 + fixed, "ℓ={ell}");
            // NS pairs never sit on a fixed point of the involution.
            assert_eq!(fixed, 0);
            let got: BTreeSet<BTreeSet<[u32; 2]>> = basis
                .iter()
                .map(|x| [x.coords(), x.involution().coords()].into_iter().collect())
                .collect();
            assert_eq!(got, orbits);
            assert!(basis.windows(2).all(|w| w[0] < w[1]));
        }
    }

    #[test]
    fn basis_small_levels() {
        assert_eq!(enumerate_ns_basis(Level::new(1)), vec![ns(0, 0, 1), ns(0, 2, 1)]);
        assert_eq!(enumerate_ns_basis(Level::new(0)), vec![ns(0, 0, 0)]);
        assert_eq!(enumerate_ns_basis(Level::new(2)).len(), 4);
        assert_eq!(ns_pairs(Level::new(2)).len(), 8);
    }

    #[test]
    fn kac_symmetry_sweep() {
        for m in 2..=20 {
            for p in 1..m {
                for q in 1..=m + 1 {
                    if let Ok(label) = KacLabel::new(p, q, m) {
                        assert_eq!(h_ns(&label), h_ns(&label.reflected()));
                        assert_eq!(canonicalize(&label.to_ns()).weight(), label.to_ns().weight());
                    }
                }
            }
        }
    }

    #[test]
    fn weight_relation_examples_and_sweep() {
        assert!(weight_relation_check(Spin::ZERO, Spin::ZERO, Level::new(1)).unwrap());
        assert!(weight_relation_check(Spin::ZERO, Spin::ONE, Level::new(1)).unwrap());
        for ell in 0..=10 {
            for x in ns_pairs(Level::new(ell)) {
                assert!(weight_relation_check(x.i(), x.i_prime(), x.level()).unwrap());
            }
        }
        assert!(weight_relation_check(Spin::ZERO, Spin::HALF, Level::new(1)).is_err());
    }

    #[test]
    fn delta_examples() {
        let l = Level::new(1);
        let vac = NSLabel::vacuum(l);
        assert_eq!(delta_ns(&vac, &vac, &vac).unwrap(), rat(0, 1));
        let alpha = ns(1, 1, 1);
        assert_eq!(delta_ns(&ns(0, 2, 1), &vac, &alpha).unwrap(), rat(1, 5));
        assert!(delta_ns(&vac, &NSLabel::vacuum(Level::new(2)), &vac).is_err());
    }

    #[test]
    fn delta_is_class_invariant() {
        for ell in 0..=6 {
            let pairs = ns_pairs(Level::new(ell));
            for a in &pairs {
                for b in &pairs {
                    for c in &pairs {
                        let d = delta_ns(a, b, c).unwrap();
                        let e = delta_ns(&canonicalize(a), &canonicalize(b), &canonicalize(c)).unwrap();
                        assert_eq!(d, e);
                    }
                }
            }
        }
    }

    #[test]
    fn c_coefficient_examples() {
        let s = Spin::from_twice;
        assert_eq!(c_coefficient(s(1), s(1), s(3), s(3), s(2), s(2)), rat(0, 1));
        assert_eq!(c_coefficient(s(0), s(2), s(0), s(0), s(1), s(1)), rat(1, 2));
    }

    #[test]
    fn triangle_relation_sweep() {
        for ell in 0..=6 {
            let pairs = ns_pairs(Level::new(ell));
            for a in &pairs {
                for b in &pairs {
                    for c in &pairs {
                        assert!(triangle_relation_check(a, b, c).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn display() {
        assert_eq!(Spin::from_twice(3).to_string(), "3/2");
        assert_eq!(Spin::from_twice(4).to_string(), "2");
        assert_eq!(ns(1, 3, 1).to_string(), "(1/2, 3/2)");
        assert_eq!(rat(1, 10).to_string(), "1/10");
    }

    proptest::proptest! {
        #[test]
        fn canonicalize_idempotent_and_orbit_constant(ell in 0u32..16, a in 0u32..16, b in 0u32..18) {
            let level = Level::new(ell);
            if let Ok(x) = NSLabel::from_twice(a, b, level) {
                let c = canonicalize(&x);
                proptest::prop_assert_eq!(canonicalize(&c), c);
                proptest::prop_assert_eq!(canonicalize(&x.involution()), c);
                proptest::prop_assert_eq!(x.involution().involution(), x);
            }
        }
    }
}
