//! Quantum dimensions, computed from the closed sine formula and
//! independently as the Perron-Frobenius eigenvector of a weak generator's
//! fusion matrix; subfactor indices; β saturation.

use std::f64::consts::PI;

use crate::error::{domain, Error, Result};
use crate::fusion::{fusion_matrix, su2_interval, weak_generator_check, FusionRing, Label};
use crate::kac::{canonicalize, enumerate_ns_basis, Level, NSLabel, Spin};

/// Max-norm change between successive normalized iterates that counts as
/// converged.
pub const PF_CONVERGENCE: f64 = 1e-13;
pub const PF_MAX_ITERATIONS: usize = 100_000;
/// Tolerance for dimension identities (saturation, multiplicativity, PF vs
/// closed form).
pub const DIM_TOLERANCE: f64 = 1e-8;

/// `sin((2i+1)π/m) / sin(π/m)` with `m = ℓ + 2`.
pub fn qdim_su2(i: Spin, level: Level) -> Result<f64> {
    if !level.admits(i) {
        return domain(format!("spin {i} exceeds level {level}"));
    }
    let m = level.m() as f64;
    Ok((i.dim() as f64 * PI / m).sin() / (PI / m).sin())
}

/// `d(H_i^ℓ) · d(H_{i'}^{ℓ+2})`.
pub fn qdim_ns(label: &NSLabel) -> f64 {
    let level = label.level();
    qdim_su2(label.i(), level).expect("label spins are admissible")
        * qdim_su2(label.i_prime(), level.shifted()).expect("label spins are admissible")
}

/// Jones index `d(x)²` of the subfactor attached to `label`.
pub fn subfactor_index(label: &NSLabel) -> f64 {
    qdim_ns(label).powi(2)
}

/// Positive dimension vector, normalized so the unit has dimension 1.
#[derive(Clone, Debug)]
pub struct DimVector<L> {
    pub labels: Vec<L>,
    pub values: Vec<f64>,
    /// Perron-Frobenius eigenvalue of the generator's fusion matrix.
    pub eigenvalue: f64,
    pub iterations: usize,
}

impl<L: PartialEq> DimVector<L> {
    pub fn get(&self, label: &L) -> Option<f64> {
        self.labels
            .iter()
            .position(|l| l == label)
            .map(|i| self.values[i])
    }
}

/// Perron-Frobenius dimension vector of `ring` from the fusion matrix of
/// `generator`.
///
/// Iterates `v ← (M + I) v / ‖(M + I) v‖_∞` from the all-ones vector. The
/// shift keeps the iteration convergent when `M` is irreducible but
/// imprimitive (bipartite fusion graphs), without moving the eigenvector.
pub fn pf_dims<L: Label>(ring: &FusionRing<L>, generator: &L) -> Result<DimVector<L>> {
    if !weak_generator_check(ring, generator)? {
        return domain(format!("{generator} is not a weak generator"));
    }
    let m = fusion_matrix(ring, generator)?;
    let n = m.dim();
    let apply = |v: &[f64]| -> Vec<f64> {
        (0..n)
            .map(|k| v[k] + (0..n).map(|j| m.entries[k][j] as f64 * v[j]).sum::<f64>())
            .collect()
    };
    let normalize = |mut v: Vec<f64>| {
        let top = v.iter().cloned().fold(0.0, f64::max);
        v.iter_mut().for_each(|x| *x /= top);
        v
    };
    let mut v = vec![1.0; n];
    let mut change = f64::INFINITY;
    for it in 1..=PF_MAX_ITERATIONS {
        let next = normalize(apply(&v));
        change = next
            .iter()
            .zip(&v)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        v = next;
        if change < PF_CONVERGENCE {
            let unit = v[ring.unit()];
            let values: Vec<f64> = v.iter().map(|x| x / unit).collect();
            let mv = apply(&values);
            let eigenvalue = mv[ring.unit()] - 1.0;
            return Ok(DimVector {
                labels: ring.basis().to_vec(),
                values,
                eigenvalue,
                iterations: it,
            });
        }
    }
    Err(Error::Numeric {
        message: format!("power iteration did not converge in {PF_MAX_ITERATIONS} steps"),
        residual: change,
    })
}

/// The β index set `⟨0, i⟩_ℓ × ⟨1, i'⟩_{ℓ+2}`, canonicalized, with
/// multiplicity.
pub fn beta_index_set(x: &NSLabel) -> Vec<NSLabel> {
    let level = x.level();
    let mut out = Vec::new();
    for a in su2_interval(Spin::ZERO, x.i(), level.ell()) {
        for b in su2_interval(Spin::ONE, x.i_prime(), level.shifted().ell()) {
            let z = NSLabel::new(a, b, level).expect("interval stays in range");
            out.push(canonicalize(&z));
        }
    }
    out
}

/// `d(β)·d(x) = Σ_{z ∈ terms} d(z)` within [`DIM_TOLERANCE`].
pub fn saturation_balances(beta: &NSLabel, x: &NSLabel, terms: &[NSLabel]) -> bool {
    let lhs = qdim_ns(beta) * qdim_ns(x);
    let rhs: f64 = terms.iter().map(qdim_ns).sum();
    (lhs - rhs).abs() <= DIM_TOLERANCE
}

/// The β charge `(0, 1)` as a canonical class.
pub fn beta_label(level: Level) -> NSLabel {
    canonicalize(&NSLabel::new(Spin::ZERO, Spin::ONE, level).expect("(0,1) is admissible"))
}

/// The α charge `(1/2, 1/2)` as a canonical class; absent at `ℓ = 0`.
pub fn alpha_label(level: Level) -> Option<NSLabel> {
    NSLabel::new(Spin::HALF, Spin::HALF, level)
        .ok()
        .map(|a| canonicalize(&a))
}

/// Checks that the fusion inequality for `β` saturates on quantum
/// dimensions for every basis label.
pub fn beta_saturation_check(level: Level) -> bool {
    let beta = beta_label(level);
    enumerate_ns_basis(level)
        .iter()
        .all(|x| saturation_balances(&beta, x, &beta_index_set(x)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fusion::{build_ns_ring, build_su2_ring};

    const PHI: f64 = 1.618_033_988_749_895;

    #[test]
    fn closed_form_examples() {
        for ell in 0..6 {
            assert!((qdim_su2(Spin::ZERO, Level::new(ell)).unwrap() - 1.0).abs() < 1e-15);
        }
        assert!((qdim_su2(Spin::ONE, Level::new(2)).unwrap() - 1.0).abs() < 1e-12);
        assert!((qdim_su2(Spin::ONE, Level::new(3)).unwrap() - PHI).abs() < 1e-12);
        assert!(qdim_su2(Spin::ONE, Level::new(1)).is_err());
        let eps = NSLabel::from_twice(0, 2, Level::new(1)).unwrap();
        assert!((qdim_ns(&eps) - PHI).abs() < 1e-10);
        assert!((subfactor_index(&eps) - (PHI + 1.0)).abs() < 1e-9);
        assert!((subfactor_index(&NSLabel::vacuum(Level::new(4))) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn involution_invariance() {
        for ell in 0..=10 {
            for x in crate::kac::ns_pairs(Level::new(ell)) {
                assert!((qdim_ns(&x) - qdim_ns(&x.involution())).abs() < 1e-12);
                assert!(qdim_ns(&x) >= 1.0 - 1e-9);
            }
        }
    }

    #[test]
    fn pf_tricritical_ising() {
        let t = build_ns_ring(Level::new(1));
        let eps = t.basis()[1];
        let d = pf_dims(&t, &eps).unwrap();
        assert!((d.eigenvalue - PHI).abs() < 1e-10);
        assert!((d.values[0] - 1.0).abs() < 1e-15);
        assert!((d.values[1] - PHI).abs() < 1e-10);
    }

    #[test]
    fn pf_trivial_ring() {
        let t = build_ns_ring(Level::new(0));
        let d = pf_dims(&t, &t.basis()[0]).unwrap();
        assert_eq!(d.values, vec![1.0]);
    }

    #[test]
    fn pf_rejects_non_generator() {
        let t = build_ns_ring(Level::new(2));
        assert!(pf_dims(&t, &NSLabel::vacuum(Level::new(2))).is_err());
    }

    #[test]
    fn pf_matches_closed_form() {
        for ell in 1..=8 {
            let level = Level::new(ell);
            let t = build_ns_ring(level);
            let alpha = alpha_label(level).unwrap();
            let d = pf_dims(&t, &alpha).unwrap();
            for (x, v) in d.labels.iter().zip(&d.values) {
                assert!((v - qdim_ns(x)).abs() < DIM_TOLERANCE, "ℓ={ell} {x}");
            }
            assert!((d.eigenvalue - qdim_ns(&alpha)).abs() < DIM_TOLERANCE);
        }
    }

    #[test]
    fn pf_on_bipartite_su2_ring() {
        // M_{1/2} on R_ℓ has spectrum symmetric about 0.
        for ell in 1..=8 {
            let level = Level::new(ell);
            let r = build_su2_ring(level);
            let d = pf_dims(&r, &Spin::HALF).unwrap();
            for (i, v) in d.labels.iter().zip(&d.values) {
                assert!((v - qdim_su2(*i, level).unwrap()).abs() < DIM_TOLERANCE);
            }
        }
    }

    #[test]
    fn multiplicativity() {
        for ell in 0..=8 {
            let t = build_ns_ring(Level::new(ell));
            for x in t.basis() {
                for y in t.basis() {
                    let rhs: f64 = t
                        .fuse(x, y)
                        .unwrap()
                        .iter()
                        .map(|(z, m)| *m as f64 * qdim_ns(z))
                        .sum();
                    assert!((qdim_ns(x) * qdim_ns(y) - rhs).abs() < 1e-7);
                }
            }
        }
    }

    #[test]
    fn beta_saturation() {
        for ell in 0..=8 {
            assert!(beta_saturation_check(Level::new(ell)), "ℓ={ell}");
        }
        let level = Level::new(3);
        let beta = beta_label(level);
        let x = enumerate_ns_basis(level)[1];
        let mut terms = beta_index_set(&x);
        assert!(saturation_balances(&beta, &x, &terms));
        terms.pop();
        assert!(!saturation_balances(&beta, &x, &terms));
    }
}
