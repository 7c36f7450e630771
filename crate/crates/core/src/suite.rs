//! The full invariant sweep, one named check per invariant, plus mutation
//! checks confirming each verifier rejects a perturbed structure.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::One;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::density::{self, DensityModule, Mode, Perturbed, Sector, Sigma};
use crate::error::Result;
use crate::fields::{self, Charge};
use crate::fuchsian::{self, CMatrix, FuchsianSystem};
use crate::fusion::{self, Lift};
use crate::graded;
use crate::kac::{self, rat, KacLabel, Level, NSLabel, Rational};
use crate::qdim;

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub module: &'static str,
    pub name: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "String::is_empty")]
    pub detail: String,
}

fn check(module: &'static str, name: impl Into<String>, outcome: Result<std::result::Result<(), String>>) -> Check {
    let (passed, detail) = match outcome {
        Ok(Ok(())) => (true, String::new()),
        Ok(Err(why)) => (false, why),
        Err(e) => (false, e.to_string()),
    };
    Check {
        module,
        name: name.into(),
        passed,
        detail,
    }
}

fn ensure(cond: bool, why: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(why())
    }
}

/// Sweep sizes. `level_max` bounds every level-indexed sweep.
#[derive(Clone, Copy, Debug)]
pub struct SuiteConfig {
    pub level_max: u32,
    pub kac_m_max: u32,
    pub seed: u64,
    pub random_systems: usize,
}

impl SuiteConfig {
    pub fn new(level_max: u32, seed: u64) -> Self {
        SuiteConfig {
            level_max,
            kac_m_max: 20,
            seed,
            random_systems: 20,
        }
    }
}

pub fn kac_symmetry(m_max: u32) -> std::result::Result<(), String> {
    for m in 2..=m_max {
        for p in 1..m {
            for q in (1..=m + 1).filter(|q| (p + q) % 2 == 0) {
                let x = KacLabel::new(p, q, m).map_err(|e| e.to_string())?;
                let (h, h2) = (kac::h_ns(&x), kac::h_ns(&x.reflected()));
                ensure(h == h2, || format!("h{x} = {h} but the reflected label gives {h2}"))?;
            }
        }
    }
    Ok(())
}

pub fn weight_relations(level_max: u32) -> Result<std::result::Result<(), String>> {
    for ell in 0..=level_max {
        for x in kac::ns_pairs(Level::new(ell)) {
            if !kac::weight_relation_check(x.i(), x.i_prime(), x.level())? {
                return Ok(Err(format!("weight relation fails at {x}, ℓ={ell}")));
            }
        }
    }
    Ok(Ok(()))
}

pub fn ring_axioms(level: Level) -> Result<std::result::Result<(), String>> {
    let t = fusion::build_ns_ring(level);
    let fr = fusion::verify_frobenius(&t);
    Ok(ensure(fusion::verify_unit(&t), || "unit".into())
        .and_then(|_| ensure(fusion::verify_associativity(&t), || "associativity".into()))
        .and_then(|_| ensure(fusion::verify_commutativity(&t), || "commutativity".into()))
        .and_then(|_| ensure(fr.passed(), || format!("frobenius/self-duality: {fr:?}"))))
}

pub fn lift_and_quotient(level: Level) -> Result<std::result::Result<(), String>> {
    let base = fusion::build_ns_ring(level);
    for (l, r) in [
        (Lift::Image, Lift::Canonical),
        (Lift::Canonical, Lift::Image),
        (Lift::Image, Lift::Image),
    ] {
        if fusion::build_ns_ring_lifted(level, l, r) != base {
            return Ok(Err(format!("lift {l:?}×{r:?} changes the ring")));
        }
    }
    let tensor = fusion::tensor_ring(&fusion::build_su2_ring(level), &fusion::build_su2_ring(level.shifted()));
    Ok(ensure(fusion::quotient_ns_ring(&tensor)? == base, || {
        "tensor quotient differs from the direct formula".into()
    }))
}

pub fn pf_matches_closed_form(level: Level) -> Result<std::result::Result<(), String>> {
    let t = fusion::build_ns_ring(level);
    let Some(alpha) = qdim::alpha_label(level) else {
        return Ok(Ok(()));
    };
    let d = qdim::pf_dims(&t, &alpha)?;
    for (x, v) in d.labels.iter().zip(&d.values) {
        let closed = qdim::qdim_ns(x);
        if (v - closed).abs() > qdim::DIM_TOLERANCE {
            return Ok(Err(format!("d({x}): closed {closed} vs PF {v}")));
        }
    }
    Ok(Ok(()))
}

/// Adjacency sets of the α fields against the α-fusion support.
pub fn alpha_duality(level: Level) -> Result<std::result::Result<(), String>> {
    let Some(alpha) = qdim::alpha_label(level) else {
        return Ok(Ok(()));
    };
    let t = fusion::build_ns_ring(level);
    for x in t.basis() {
        let fused: BTreeSet<NSLabel> = t.fuse(&alpha, x)?.into_iter().map(|(z, _)| z).collect();
        let adj = fields::adjacency_set(x, Charge::Alpha)?;
        if fused != adj {
            return Ok(Err(format!("at {x}: fields {adj:?} vs fusion {fused:?}")));
        }
    }
    Ok(Ok(()))
}

pub fn beta_duality(level: Level) -> Result<std::result::Result<(), String>> {
    for x in kac::enumerate_ns_basis(level) {
        let idx: BTreeSet<NSLabel> = qdim::beta_index_set(&x).into_iter().collect();
        let adj = fields::adjacency_set(&x, Charge::Beta)?;
        if idx != adj {
            return Ok(Err(format!("at {x}: fields {adj:?} vs β index set {idx:?}")));
        }
    }
    Ok(Ok(()))
}

/// The nine `(λ, μ)` pairs of the density-module grid.
pub fn density_grid() -> Vec<(Rational, Rational)> {
    let lambdas = [rat(0, 1), rat(1, 2), rat(1, 1)];
    let mus = [rat(0, 1), rat(1, 3), rat(-2, 5)];
    lambdas
        .iter()
        .flat_map(|l| mus.iter().map(move |m| (l.clone(), m.clone())))
        .collect()
}

pub const DENSITY_WINDOW: i64 = 12;
pub const DENSITY_MAX_MODE: i64 = 3;

pub fn density_relations() -> Result<std::result::Result<(), String>> {
    for (l, m) in density_grid() {
        for sigma in [Sigma::Integer, Sigma::HalfInteger] {
            let module = DensityModule::new(l.clone(), m.clone(), sigma, DENSITY_WINDOW)?;
            if let Some(rel) = density::first_failing_relation(&module, DENSITY_MAX_MODE)? {
                return Ok(Err(format!("{rel} fails at λ={l}, μ={m}, σ={sigma}")));
            }
        }
    }
    Ok(Ok(()))
}

pub fn density_covariance() -> Result<std::result::Result<(), String>> {
    for (l, m) in density_grid() {
        for sigma in [Sigma::Integer, Sigma::HalfInteger] {
            let module = DensityModule::new(l.clone(), m.clone(), sigma, DENSITY_WINDOW)?;
            let h = Rational::one() - &l;
            for n in -DENSITY_MAX_MODE..=DENSITY_MAX_MODE {
                if !density::covariance_consistency(&module, n, &h)? {
                    return Ok(Err(format!("n={n} at λ={l}, μ={m}, σ={sigma}")));
                }
            }
            let grading = [Mode::L(0), Mode::L(1), Mode::L(-2), Mode::g(1)?, Mode::g(-3)?]
                .into_iter()
                .map(|mode| module.mode_checked(mode))
                .collect::<Result<Vec<bool>>>()?;
            if grading.iter().any(|ok| !ok) {
                return Ok(Err(format!("grading violated at λ={l}, μ={m}, σ={sigma}")));
            }
        }
    }
    Ok(Ok(()))
}

/// Worst `(pairing drift, inverse-transpose error)` over random systems of
/// sizes cycling through 1, 2, 3.
pub fn fuchsian_duality(seed: u64, count: usize) -> Result<std::result::Result<(), String>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for k in 0..count {
        let n = 1 + k % 3;
        let sys = fuchsian::random_system(&mut rng, n);
        let report = fuchsian::duality_report(&sys)?;
        if !report.passed {
            return Ok(Err(format!("system {k} (n={n}): {report:?}")));
        }
    }
    Ok(Ok(()))
}

pub fn fuchsian_scalar_oracle(seed: u64, count: usize) -> Result<std::result::Result<(), String>> {
    use rand::Rng;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..count {
        let a = num_complex::Complex64::new(rng.random_range(-0.5..0.5), rng.random_range(-0.5..0.5));
        let b = num_complex::Complex64::new(rng.random_range(-0.5..0.5), rng.random_range(-0.5..0.5));
        let sys = FuchsianSystem::new(CMatrix::from_element(1, 1, a), CMatrix::from_element(1, 1, b))?;
        let got = fuchsian::transport_matrix(&sys)?.matrix()[(0, 0)];
        let want = fuchsian::scalar_transport_oracle(b);
        if (got - want).norm() > 1e-9 {
            return Ok(Err(format!("a={a}, b={b}: transport {got} vs closed form {want}")));
        }
        let start = fuchsian::frobenius_basis(&sys)?.eval(num_complex::Complex64::new(0.25, 0.0))?;
        let path = [
            num_complex::Complex64::new(0.25, 0.0),
            num_complex::Complex64::new(0.25, -0.5),
            num_complex::Complex64::new(-0.25, -0.5),
            num_complex::Complex64::new(-0.25, 0.0),
        ];
        let end = fuchsian::continue_solution(&sys, &start, &path)?[(0, 0)];
        let want = fuchsian::scalar_lower_half_plane_oracle(a, b);
        if (end - want).norm() > 1e-9 {
            return Ok(Err(format!("a={a}, b={b}: continued {end} vs closed form {want}")));
        }
    }
    Ok(Ok(()))
}

pub fn fuchsian_monodromy(seed: u64, count: usize) -> Result<std::result::Result<(), String>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for k in 0..count {
        let sys = fuchsian::random_system(&mut rng, 1 + k % 3);
        let dev = fuchsian::monodromy_deviation(&sys, 0.25)?;
        if dev > 1e-7 {
            return Ok(Err(format!("system {k}: monodromy deviation {dev:e}")));
        }
    }
    Ok(Ok(()))
}

pub fn graded_library() -> Result<std::result::Result<(), String>> {
    for name in graded::SAMPLE_NAMES {
        let r = graded::sample_report(name)?;
        if !r.passed {
            return Ok(Err(format!("{r:?}")));
        }
    }
    Ok(Ok(()))
}

/// Each verifier must reject its perturbed target.
pub fn mutation_ring() -> std::result::Result<(), String> {
    let level = Level::new(2);
    let mut t = fusion::build_ns_ring(level);
    let (a, b, c, m) = t.entries().find(|e| e.0 != e.1).expect("nonempty");
    t.set_multiplicity(a, b, c, m + 1);
    let all_pass = fusion::verify_unit(&t)
        && fusion::verify_associativity(&t)
        && fusion::verify_commutativity(&t)
        && fusion::verify_frobenius(&t).passed();
    ensure(!all_pass, || "ring suite accepted a structure constant raised by 1".into())?;
    let tensor = fusion::tensor_ring(&fusion::build_su2_ring(level), &fusion::build_su2_ring(level.shifted()));
    let q = fusion::quotient_ns_ring(&tensor).map_err(|e| e.to_string())?;
    ensure(q != t, || "quotient comparison accepted the mutated ring".into())
}

pub fn mutation_transport(seed: u64) -> Result<std::result::Result<(), String>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let sys = fuchsian::random_system(&mut rng, 2);
    let c_orig = fuchsian::transport_matrix(&sys)?.matrix();
    let mut c_dual = fuchsian::transport_matrix(&sys.dual()?)?.matrix();
    if !fuchsian::inverse_transpose_law(&c_orig, &c_dual, fuchsian::DUALITY_TOL) {
        return Ok(Err("unperturbed transport fails the law".into()));
    }
    c_dual[(0, 0)] *= 1.01;
    Ok(ensure(
        !fuchsian::inverse_transpose_law(&c_orig, &c_dual, fuchsian::DUALITY_TOL),
        || "law accepted a transport entry scaled by 1.01".into(),
    ))
}

pub fn mutation_density() -> Result<std::result::Result<(), String>> {
    let module = DensityModule::new(rat(1, 2), rat(1, 3), Sigma::Integer, DENSITY_WINDOW)?;
    let mode = Mode::g(1)?;
    let column = density::BasisVector {
        sector: Sector::W,
        twice_index: -1,
    };
    let (_, coeff) = module.act(mode, &column);
    let bad = Perturbed {
        base: &module,
        mode,
        column,
        value: coeff + rat(1, 7),
    };
    Ok(ensure(density::first_failing_relation(&bad, DENSITY_MAX_MODE)?.is_some(), || {
        "relations held after altering one coefficient".into()
    }))
}

pub fn run(cfg: &SuiteConfig) -> Vec<Check> {
    let mut out = Vec::new();
    out.push(check("kac_core", format!("kac symmetry m ≤ {}", cfg.kac_m_max), Ok(kac_symmetry(cfg.kac_m_max))));
    out.push(check(
        "kac_core",
        format!("weight relation ℓ ≤ {}", cfg.level_max.max(10)),
        weight_relations(cfg.level_max.max(10)),
    ));
    let triangle = (|| -> Result<std::result::Result<(), String>> {
        for ell in 0..=cfg.level_max.min(6) {
            let level = Level::new(ell);
            let basis = kac::ns_pairs(level);
            for z in &basis {
                for x in &basis {
                    for y in &basis {
                        if !kac::triangle_relation_check(z, x, y)? {
                            return Ok(Err(format!("Δ triangle relation fails for {z}, {x}, {y}")));
                        }
                    }
                }
            }
        }
        Ok(Ok(()))
    })();
    out.push(check("kac_core", "triangle relation", triangle));

    for ell in 0..=cfg.level_max {
        let level = Level::new(ell);
        out.push(check("fusion_ring", format!("axioms ℓ={ell}"), ring_axioms(level)));
        out.push(check("fusion_ring", format!("lift independence and quotient ℓ={ell}"), lift_and_quotient(level)));
    }
    let weak = (|| -> Result<std::result::Result<(), String>> {
        for ell in 1..=cfg.level_max {
            let level = Level::new(ell);
            let t = fusion::build_ns_ring(level);
            let alpha = qdim::alpha_label(level).expect("ℓ ≥ 1");
            if !fusion::weak_generator_check(&t, &alpha)? {
                return Ok(Err(format!("α does not generate at ℓ={ell}")));
            }
            if fusion::fusion_matrix(&t, &alpha)?.row_sums().iter().any(|&r| r > 4) {
                return Ok(Err(format!("α row sum above 4 at ℓ={ell}")));
            }
        }
        Ok(Ok(()))
    })();
    out.push(check("fusion_ring", "α weak generator", weak));

    for ell in 1..=cfg.level_max {
        out.push(check("quantum_dim", format!("PF vs closed form ℓ={ell}"), pf_matches_closed_form(Level::new(ell))));
    }
    let eps = NSLabel::from_twice(0, 2, Level::new(1)).expect("valid");
    let phi2 = (3.0 + 5f64.sqrt()) / 2.0;
    let idx = qdim::subfactor_index(&eps);
    out.push(check(
        "quantum_dim",
        "index of ε at ℓ=1",
        Ok(ensure((idx - phi2).abs() <= 1e-9, || format!("{idx} vs {phi2}"))),
    ));
    out.push(check(
        "quantum_dim",
        format!("β saturation ℓ ≤ {}", cfg.level_max),
        Ok(ensure((0..=cfg.level_max).all(|l| qdim::beta_saturation_check(Level::new(l))), || {
            "unbalanced".into()
        })),
    ));
    let multiplicative = (|| -> Result<std::result::Result<(), String>> {
        for ell in 0..=cfg.level_max {
            let t = fusion::build_ns_ring(Level::new(ell));
            for x in t.basis() {
                for y in t.basis() {
                    let rhs: f64 = t.fuse(x, y)?.iter().map(|(z, m)| *m as f64 * qdim::qdim_ns(z)).sum();
                    if (qdim::qdim_ns(x) * qdim::qdim_ns(y) - rhs).abs() > 1e-7 {
                        return Ok(Err(format!("d({x})d({y}) ≠ Σ d at ℓ={ell}")));
                    }
                }
            }
        }
        Ok(Ok(()))
    })();
    out.push(check("quantum_dim", "multiplicativity", multiplicative));

    for ell in 0..=cfg.level_max {
        let level = Level::new(ell);
        out.push(check("field_catalog", format!("α adjacency = α fusion ℓ={ell}"), alpha_duality(level)));
        out.push(check("field_catalog", format!("β adjacency = β index set ℓ={ell}"), beta_duality(level)));
        let sigma = (|| -> Result<std::result::Result<(), String>> {
            for charge in [Charge::Alpha, Charge::Beta] {
                let bad = fields::sigma_mismatches(level, charge)?;
                if !bad.is_empty() {
                    return Ok(Err(format!("{charge}: σ disagrees with weights on {bad:?}")));
                }
            }
            Ok(Ok(()))
        })();
        out.push(check("field_catalog", format!("σ rule ℓ={ell}"), sigma));
    }
    let graph = (|| -> Result<std::result::Result<(), String>> {
        for ell in 1..=cfg.level_max {
            if !fields::charge_graph_connected(Level::new(ell), Charge::Alpha)? {
                return Ok(Err(format!("G_α disconnected at ℓ={ell}")));
            }
        }
        Ok(Ok(()))
    })();
    out.push(check("field_catalog", "G_α connected", graph));

    out.push(check("density_module", "NS relations on the grid", density_relations()));
    out.push(check("density_module", "covariance and grading", density_covariance()));

    out.push(check(
        "fuchsian_braid",
        format!("duality on {} random systems", cfg.random_systems),
        fuchsian_duality(cfg.seed, cfg.random_systems),
    ));
    out.push(check("fuchsian_braid", "scalar closed form", fuchsian_scalar_oracle(cfg.seed ^ 0x5ca1, 10)));
    out.push(check("fuchsian_braid", "monodromy", fuchsian_monodromy(cfg.seed ^ 0x3d, 6)));

    out.push(check("graded_lab", "sample library", graded_library()));

    out.push(check("mutation", "ring structure constant +1", Ok(mutation_ring())));
    out.push(check("mutation", "transport entry ×1.01", mutation_transport(cfg.seed)));
    out.push(check("mutation", "density coefficient", mutation_density()));
    out
}

/// Failed checks grouped by module.
pub fn failures(checks: &[Check]) -> BTreeMap<&'static str, Vec<&Check>> {
    let mut out: BTreeMap<&'static str, Vec<&Check>> = BTreeMap::new();
    for c in checks.iter().filter(|c| !c.passed) {
        out.entry(c.module).or_default().push(c);
    }
    out
}
