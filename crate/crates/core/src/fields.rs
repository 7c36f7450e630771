//! Constructibility of primary fields, their adjacency sets and braiding
//! supports.
//!
//! A Neveu-Schwarz field of charge α from `(j, j')` to `(i, i')` is the
//! compression of a spin-1/2 field `j → i` at level `ℓ` tensored with a
//! spin-1/2 field `j' → i'` at level `ℓ + 2`; a field of charge β keeps the
//! level-`ℓ` spin and carries a spin-1 field at level `ℓ + 2`.

use std::collections::BTreeSet;
use std::fmt;

use crate::density::Sigma;
use crate::error::{domain, Error, Result};
use crate::fusion::connected;
use crate::kac::{c_coefficient, canonicalize, enumerate_ns_basis, ns_pairs, rat, Level, NSLabel, Rational, Spin};

/// Generating charges of the Neveu-Schwarz primary fields.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Charge {
    /// `(1/2, 1/2)`
    Alpha,
    /// `(0, 1)`
    Beta,
}

impl Charge {
    /// Spins `(k, k')` of the charge.
    pub fn spins(self) -> (Spin, Spin) {
        match self {
            Charge::Alpha => (Spin::HALF, Spin::HALF),
            Charge::Beta => (Spin::ZERO, Spin::ONE),
        }
    }

    /// The raw charge label `(k, k')` at `level`; α needs `ℓ ≥ 1`.
    pub fn label(self, level: Level) -> Result<NSLabel> {
        let (k, kp) = self.spins();
        NSLabel::new(k, kp, level)
    }
}

impl fmt::Display for Charge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Charge::Alpha => "alpha",
            Charge::Beta => "beta",
        })
    }
}

impl std::str::FromStr for Charge {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "alpha" | "α" => Ok(Charge::Alpha),
            "beta" | "β" => Ok(Charge::Beta),
            other => domain(format!("unknown charge {other:?}")),
        }
    }
}

/// A candidate primary field `φ: source → target` of a given charge and
/// moding.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FieldSpec {
    pub target: NSLabel,
    pub source: NSLabel,
    pub charge: Charge,
    pub sigma: Sigma,
}

/// Non-vanishing of the SU(2) primary field of spin `k ∈ {1/2, 1}` from
/// `L_j^ℓ` to `L_i^ℓ`.
///
/// Spin 1/2: `j = i ± 1/2` and `i + j + 1/2 ≤ ℓ`. Spin 1: `j ∈ {i−1, i, i+1}`,
/// `i + j + 1 ≤ ℓ`, and the Clebsch-Gordan triangle `|i − j| ≤ 1 ≤ i + j`
/// (which removes the `i = j = 0` case).
pub fn su2_nonzero(i: Spin, j: Spin, k: Spin, level: Level) -> Result<bool> {
    if !level.admits(i) || !level.admits(j) {
        return domain(format!("spins ({i}, {j}) out of range at level {level}"));
    }
    let (ti, tj, ell) = (i.twice(), j.twice(), level.ell());
    match k.twice() {
        1 => Ok(ti.abs_diff(tj) == 1 && ti + tj < 2 * ell),
        2 => Ok(ti.abs_diff(tj) % 2 == 0
            && ti.abs_diff(tj) <= 2
            && ti + tj >= 2
            && ti + tj + 2 <= 2 * ell),
        _ => Err(Error::Unsupported(format!("primary fields of spin {k}"))),
    }
}

fn signed_shift(to: Spin, from: Spin) -> i64 {
    from.twice() as i64 - to.twice() as i64
}

/// The moding `σ` of the constructible field `source → target` of this
/// charge, or `None` when no such field is constructible.
pub fn constructible_sigma(target: &NSLabel, source: &NSLabel, charge: Charge) -> Result<Option<Sigma>> {
    target.same_level(*source)?;
    let level = target.level();
    let upper = level.shifted();
    match charge {
        Charge::Alpha => {
            let ok = su2_nonzero(target.i(), source.i(), Spin::HALF, level)?
                && su2_nonzero(target.i_prime(), source.i_prime(), Spin::HALF, upper)?;
            if !ok {
                return Ok(None);
            }
            let same = signed_shift(target.i(), source.i()) == signed_shift(target.i_prime(), source.i_prime());
            Ok(Some(if same { Sigma::Integer } else { Sigma::HalfInteger }))
        }
        Charge::Beta => {
            let ok = target.i() == source.i()
                && su2_nonzero(target.i_prime(), source.i_prime(), Spin::ONE, upper)?;
            if !ok {
                return Ok(None);
            }
            Ok(Some(if target.i_prime() == source.i_prime() {
                Sigma::HalfInteger
            } else {
                Sigma::Integer
            }))
        }
    }
}

/// Whether the field described by `spec` is constructible with the stated
/// moding.
pub fn ns_constructible(spec: &FieldSpec) -> Result<bool> {
    Ok(constructible_sigma(&spec.target, &spec.source, spec.charge)? == Some(spec.sigma))
}

/// `σ` read off the weights: the coefficient `C` of the coset
/// decomposition of `Δ` is an integer for integer moding and a half-integer
/// otherwise.
pub fn sigma_from_weights(target: &NSLabel, source: &NSLabel, charge: Charge) -> Result<Sigma> {
    let (k, kp) = charge.spins();
    let c = c_coefficient(target.i(), target.i_prime(), source.i(), source.i_prime(), k, kp);
    let twice: Rational = c * rat(2, 1);
    if !crate::kac::is_integer(&twice) {
        return domain(format!("C for {source} → {target} is not in ½ℤ"));
    }
    let odd = twice.to_integer() % 2 != num_bigint::BigInt::from(0);
    Ok(if odd { Sigma::HalfInteger } else { Sigma::Integer })
}

/// Sign-rule `σ` versus weight-derived `σ` on every constructible field at
/// this level. Returns the mismatching `(target, source)` pairs.
pub fn sigma_mismatches(level: Level, charge: Charge) -> Result<Vec<(NSLabel, NSLabel)>> {
    let pairs = ns_pairs(level);
    let mut out = Vec::new();
    for t in &pairs {
        for s in &pairs {
            if let Some(sigma) = constructible_sigma(t, s, charge)? {
                if sigma_from_weights(t, s, charge)? != sigma {
                    out.push((*t, *s));
                }
            }
        }
    }
    Ok(out)
}

/// Canonical classes `y` carrying a nonzero field of this charge from `x`.
pub fn adjacency_set(x: &NSLabel, charge: Charge) -> Result<BTreeSet<NSLabel>> {
    let level = x.level();
    let mut out = BTreeSet::new();
    for source in [*x, x.involution()] {
        for y in ns_pairs(level) {
            if constructible_sigma(&y, &source, charge)?.is_some() {
                out.insert(canonicalize(&y));
            }
        }
    }
    Ok(out)
}

/// Connectivity of the graph on canonical classes with edges from
/// [`adjacency_set`].
pub fn charge_graph_connected(level: Level, charge: Charge) -> Result<bool> {
    let basis = enumerate_ns_basis(level);
    let mut adj = vec![Vec::new(); basis.len()];
    for (j, x) in basis.iter().enumerate() {
        for y in adjacency_set(x, charge)? {
            let k = basis.binary_search(&y).expect("adjacency yields basis classes");
            adj[j].push(k);
            adj[k].push(j);
        }
    }
    Ok(connected(&adj))
}

/// Phase exponent `λ = h(target) + h(source) − h(left) − h(right)` of the
/// localized braiding `φ_{target,left} φ_{left,source} → φ_{target,right} φ_{right,source}`.
pub fn braiding_phase(
    target: &NSLabel,
    source: &NSLabel,
    intermediate_left: &NSLabel,
    intermediate_right: &NSLabel,
) -> Result<Rational> {
    target.same_level(*source)?;
    target.same_level(*intermediate_left)?;
    target.same_level(*intermediate_right)?;
    Ok(target.weight() + source.weight() - intermediate_left.weight() - intermediate_right.weight())
}

/// Allowed intermediate classes `r` in
/// `φ^{left}_{outer,·} φ^{right}_{·,inner} = Σ_r μ_r φ^{right}_{outer,r} φ^{left}_{r,inner}`:
/// `adjacency_set(outer, right) ∩ adjacency_set(inner, left)`.
pub fn braiding_support(
    left_charge: Charge,
    right_charge: Charge,
    outer: &NSLabel,
    inner: &NSLabel,
) -> Result<BTreeSet<NSLabel>> {
    outer.same_level(*inner)?;
    if left_charge == Charge::Beta && right_charge == Charge::Beta {
        return Err(Error::Unsupported(
            "braiding of two β fields (non-vanishing of the coefficients is not established)".into(),
        ));
    }
    let a = adjacency_set(outer, right_charge)?;
    let b = adjacency_set(inner, left_charge)?;
    Ok(a.intersection(&b).copied().collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fusion::{build_ns_ring, weak_generator_check};
    use crate::qdim::{alpha_label, beta_index_set, beta_label};

    fn ns(a: u32, b: u32, ell: u32) -> NSLabel {
        NSLabel::from_twice(a, b, Level::new(ell)).unwrap()
    }

    fn s(t: u32) -> Spin {
        Spin::from_twice(t)
    }

    #[test]
    fn su2_examples() {
        let l1 = Level::new(1);
        assert!(su2_nonzero(s(0), s(1), s(1), l1).unwrap());
        assert!(!su2_nonzero(s(1), s(1), s(1), l1).unwrap());
        assert!(!su2_nonzero(s(1), s(1), s(2), l1).unwrap());
        assert!(!su2_nonzero(s(0), s(0), s(2), Level::new(4)).unwrap());
        assert!(su2_nonzero(s(2), s(0), s(2), Level::new(3)).unwrap());
        assert!(matches!(su2_nonzero(s(0), s(0), s(3), l1), Err(Error::Unsupported(_))));
    }

    /// Spin-k field i ← j is nonzero iff i ∈ ⟨k, j⟩_ℓ.
    #[test]
    fn su2_nonzero_matches_fusion_interval() {
        for ell in 0..=10 {
            let level = Level::new(ell);
            for k in [Spin::HALF, Spin::ONE] {
                for i in level.spins() {
                    for j in level.spins() {
                        let by_fusion = crate::fusion::su2_interval(k, j, ell).contains(&i);
                        assert_eq!(su2_nonzero(i, j, k, level).unwrap(), by_fusion);
                    }
                }
            }
        }
    }

    #[test]
    fn constructible_examples() {
        let vac = NSLabel::vacuum(Level::new(1));
        let alpha_raw = ns(1, 1, 1);
        let spec = FieldSpec {
            target: alpha_raw,
            source: vac,
            charge: Charge::Alpha,
            sigma: Sigma::Integer,
        };
        assert!(ns_constructible(&spec).unwrap());
        assert!(!ns_constructible(&FieldSpec { sigma: Sigma::HalfInteger, ..spec }).unwrap());
        assert_eq!(constructible_sigma(&vac, &vac, Charge::Alpha).unwrap(), None);
        assert_eq!(
            constructible_sigma(&ns(0, 2, 1), &vac, Charge::Beta).unwrap(),
            Some(Sigma::Integer)
        );
    }

    #[test]
    fn sigma_partition_and_weight_rule() {
        for ell in 1..=6 {
            let level = Level::new(ell);
            let mut counts = std::collections::BTreeMap::new();
            for t in ns_pairs(level) {
                for src in ns_pairs(level) {
                    if let Some(sigma) = constructible_sigma(&t, &src, Charge::Alpha).unwrap() {
                        let key = (
                            signed_shift(t.i(), src.i()).signum(),
                            signed_shift(t.i_prime(), src.i_prime()).signum(),
                        );
                        let want = if key.0 == key.1 { Sigma::Integer } else { Sigma::HalfInteger };
                        assert_eq!(sigma, want);
                        *counts.entry(key).or_insert(0) += 1;
                    }
                }
            }
            assert!(counts.len() <= 4);
            for charge in [Charge::Alpha, Charge::Beta] {
                assert!(sigma_mismatches(level, charge).unwrap().is_empty());
            }
        }
    }

    #[test]
    fn adjacency_examples() {
        let l1 = Level::new(1);
        let got = adjacency_set(&NSLabel::vacuum(l1), Charge::Alpha).unwrap();
        assert_eq!(got, [ns(0, 2, 1)].into_iter().collect());
        let l2 = Level::new(2);
        let got = adjacency_set(&NSLabel::vacuum(l2), Charge::Beta).unwrap();
        assert_eq!(got, [ns(0, 2, 2)].into_iter().collect());
    }

    #[test]
    fn adjacency_matches_fusion_supports() {
        for ell in 0..=6 {
            let level = Level::new(ell);
            let t = build_ns_ring(level);
            for x in t.basis() {
                if let Some(alpha) = alpha_label(level) {
                    let fused: BTreeSet<NSLabel> =
                        t.fuse(&alpha, x).unwrap().into_iter().map(|(z, _)| z).collect();
                    assert_eq!(adjacency_set(x, Charge::Alpha).unwrap(), fused, "ℓ={ell} {x}");
                }
                let beta: BTreeSet<NSLabel> = beta_index_set(x).into_iter().collect();
                assert_eq!(adjacency_set(x, Charge::Beta).unwrap(), beta, "ℓ={ell} {x}");
            }
        }
    }

    #[test]
    fn graph_connectivity_matches_ring() {
        for ell in 1..=8 {
            let level = Level::new(ell);
            assert!(charge_graph_connected(level, Charge::Alpha).unwrap());
            let t = build_ns_ring(level);
            let beta_weak = weak_generator_check(&t, &beta_label(level)).unwrap();
            assert_eq!(charge_graph_connected(level, Charge::Beta).unwrap(), beta_weak);
        }
        assert!(!charge_graph_connected(Level::new(2), Charge::Beta).unwrap());
    }

    #[test]
    fn braiding_phase_examples() {
        let l1 = Level::new(1);
        let (vac, eps) = (NSLabel::vacuum(l1), ns(0, 2, 1));
        assert_eq!(braiding_phase(&eps, &eps, &eps, &eps).unwrap(), rat(0, 1));
        assert_eq!(braiding_phase(&vac, &vac, &eps, &eps).unwrap(), rat(-1, 5));
        for ell in 0..=4 {
            let pairs = ns_pairs(Level::new(ell));
            for a in &pairs {
                for b in &pairs {
                    for c in pairs.iter().take(4) {
                        for d in pairs.iter().take(4) {
                            let x = braiding_phase(a, b, c, d).unwrap();
                            let y = braiding_phase(c, d, a, b).unwrap();
                            assert_eq!(x, -y);
                        }
                    }
                }
            }
        }
        assert!(braiding_phase(&vac, &NSLabel::vacuum(Level::new(2)), &vac, &vac).is_err());
    }

    #[test]
    fn braiding_support_examples() {
        let l2 = Level::new(2);
        let vac = NSLabel::vacuum(l2);
        let got = braiding_support(Charge::Alpha, Charge::Alpha, &vac, &vac).unwrap();
        assert_eq!(got, [alpha_label(l2).unwrap()].into_iter().collect());
        assert!(matches!(
            braiding_support(Charge::Beta, Charge::Beta, &vac, &vac),
            Err(Error::Unsupported(_))
        ));
    }

    /// Enumerates raw intermediate pairs and tests both factor fields
    /// directly, in their stated direction.
    #[test]
    fn braiding_support_brute_force() {
        for ell in 1..=6 {
            let level = Level::new(ell);
            let pairs = ns_pairs(level);
            let classes = enumerate_ns_basis(level);
            for &(left, right) in &[
                (Charge::Alpha, Charge::Alpha),
                (Charge::Beta, Charge::Alpha),
                (Charge::Alpha, Charge::Beta),
            ] {
                for outer in &classes {
                    for inner in &classes {
                        let mut brute = BTreeSet::new();
                        for r in &pairs {
                            let first = [*outer, outer.involution()].iter().any(|o| {
                                constructible_sigma(o, r, right).unwrap().is_some()
                            });
                            let second = [*inner, inner.involution()].iter().any(|k| {
                                constructible_sigma(r, k, left).unwrap().is_some()
                            });
                            if first && second {
                                brute.insert(canonicalize(r));
                            }
                        }
                        let got = braiding_support(left, right, outer, inner).unwrap();
                        assert_eq!(got, brute, "ℓ={ell} {outer} {inner}");
                    }
                }
            }
        }
    }
}
