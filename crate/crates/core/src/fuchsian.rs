//! Connection data for first-order Fuchsian systems
//! `f′ = (P/z + Q/(1−z)) f` with singular points `0, 1, ∞`.
//!
//! The basis normalized at `0` is the fundamental matrix `Φ₀(z) = g(z) z^P`
//! with `g` holomorphic near `0` and `g(0) = I`. Under `w = 1/z` the system
//! becomes `h′ = ((Q−P)/w + Q/(1−w)) h`, whose own `Φ₀` gives the basis
//! normalized at infinity, `Φ_∞(z) = G(1/z) (1/z)^{Q−P}`. The transport
//! matrix `c` satisfies `Φ₀ = Φ_∞ c` after continuing `Φ₀` from `z = ¼` to
//! `z = 4` through the lower half-plane.

use nalgebra::{DMatrix, Schur};
use num_complex::Complex64;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};

pub type CMatrix = DMatrix<Complex64>;

pub const DEFAULT_SERIES_ORDER: usize = 60;
pub const ODE_TOL: f64 = 1e-12;
pub const MATCH_TOL: f64 = 1e-8;
/// Distance the path has to keep from the singular points `0` and `1`.
pub const SINGULAR_CLEARANCE: f64 = 0.05;
const TAYLOR_ORDER: usize = 40;
const MIN_STEP: f64 = 1e-10;
/// Largest `|z|` at which the series at a singular point is evaluated.
const SERIES_RADIUS: f64 = 0.5;
const RESONANCE_EPS: f64 = 1e-9;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// The canonical continuation path `¼ → ¼−i → 4−i → 4`.
pub fn canonical_path() -> Vec<Complex64> {
    vec![c(0.25, 0.0), c(0.25, -1.0), c(4.0, -1.0), c(4.0, 0.0)]
}

#[derive(Clone, Debug)]
pub struct FuchsianSystem {
    pub p: CMatrix,
    pub q: CMatrix,
    pub series_order: usize,
    pub path: Vec<Complex64>,
    pub ode_tol: f64,
    pub match_tol: f64,
}

/// JSON form: complex numbers are `[re, im]` pairs.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SystemFile {
    pub n: usize,
    #[serde(rename = "P")]
    pub p: Vec<Vec<[f64; 2]>>,
    #[serde(rename = "Q")]
    pub q: Vec<Vec<[f64; 2]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub series_order: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub path: Option<Vec<[f64; 2]>>,
}

pub fn matrix_from_json(n: usize, rows: &[Vec<[f64; 2]>], name: &str) -> Result<CMatrix> {
    if rows.len() != n || rows.iter().any(|r| r.len() != n) {
        return domain(format!("{name} must be {n}×{n}"));
    }
    Ok(CMatrix::from_fn(n, n, |i, j| c(rows[i][j][0], rows[i][j][1])))
}

pub fn matrix_to_json(m: &CMatrix) -> Vec<Vec<[f64; 2]>> {
    (0..m.nrows())
        .map(|i| (0..m.ncols()).map(|j| [m[(i, j)].re, m[(i, j)].im]).collect())
        .collect()
}

impl FuchsianSystem {
    pub fn new(p: CMatrix, q: CMatrix) -> Result<Self> {
        Self::with_path(p, q, DEFAULT_SERIES_ORDER, canonical_path())
    }

    pub fn with_path(p: CMatrix, q: CMatrix, series_order: usize, path: Vec<Complex64>) -> Result<Self> {
        let n = p.nrows();
        if n == 0 || !p.is_square() || q.shape() != (n, n) {
            return domain("P and Q must be square matrices of the same size");
        }
        if series_order < 2 {
            return domain(format!("series order {series_order} is too small"));
        }
        let sys = FuchsianSystem {
            p,
            q,
            series_order,
            path,
            ode_tol: ODE_TOL,
            match_tol: MATCH_TOL,
        };
        sys.validate_path()?;
        check_non_resonant(&sys.p)?;
        Ok(sys)
    }

    pub fn from_file(file: &SystemFile) -> Result<Self> {
        let p = matrix_from_json(file.n, &file.p, "P")?;
        let q = matrix_from_json(file.n, &file.q, "Q")?;
        let path = match &file.path {
            Some(pts) => pts.iter().map(|z| c(z[0], z[1])).collect(),
            None => canonical_path(),
        };
        Self::with_path(p, q, file.series_order.unwrap_or(DEFAULT_SERIES_ORDER), path)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Self::from_file(&serde_json::from_str(text)?)
    }

    pub fn dim(&self) -> usize {
        self.p.nrows()
    }

    /// The system `−A(z)ᵀ` satisfied by `(Φ⁻¹)ᵀ`.
    pub fn dual(&self) -> Result<Self> {
        let mut d = self.clone();
        d.p = -self.p.transpose();
        d.q = -self.q.transpose();
        check_non_resonant(&d.p)?;
        Ok(d)
    }

    /// The system in `w = 1/z`: residues `Q − P` at `0` and `Q` at `1`.
    pub fn at_infinity(&self) -> Result<Self> {
        let mut d = self.clone();
        d.p = &self.q - &self.p;
        check_non_resonant(&d.p)?;
        Ok(d)
    }

    pub fn coefficient(&self, z: Complex64) -> CMatrix {
        &self.p / z + &self.q / (Complex64::new(1.0, 0.0) - z)
    }

    /// The path starts inside the series disc at `0`, ends outside radius
    /// 2, keeps its clearance from `0` and `1`, and meets the real half
    /// line `[0, ∞)` only at its endpoints.
    fn validate_path(&self) -> Result<()> {
        let path = &self.path;
        if path.len() < 2 {
            return domain("path needs at least two waypoints");
        }
        if path[0].norm() > SERIES_RADIUS {
            return domain(format!("path must start within |z| ≤ {SERIES_RADIUS}"));
        }
        if path[path.len() - 1].norm() < 1.0 / SERIES_RADIUS {
            return domain(format!("path must end at |z| ≥ {}", 1.0 / SERIES_RADIUS));
        }
        for seg in path.windows(2) {
            let (a, b) = (seg[0], seg[1]);
            for s in [c(0.0, 0.0), c(1.0, 0.0)] {
                if segment_distance(a, b, s) < SINGULAR_CLEARANCE {
                    return Err(Error::Domain(format!(
                        "path segment {a} → {b} passes within {SINGULAR_CLEARANCE} of the singular point {s}"
                    )));
                }
            }
            // Interior crossing of the positive real axis.
            if a.im * b.im < 0.0 {
                let t = a.im / (a.im - b.im);
                let x = a.re + t * (b.re - a.re);
                if x >= 0.0 {
                    return domain(format!("path segment {a} → {b} crosses the branch cut at {x}"));
                }
            }
            let on_axis = |z: Complex64| z.im == 0.0 && z.re >= 0.0;
            if on_axis(a) && on_axis(b) {
                return domain(format!("path segment {a} → {b} runs along the branch cut"));
            }
        }
        for z in &path[1..path.len() - 1] {
            if z.im == 0.0 && z.re >= 0.0 {
                return domain(format!("waypoint {z} lies on the branch cut"));
            }
        }
        Ok(())
    }
}

fn segment_distance(a: Complex64, b: Complex64, s: Complex64) -> f64 {
    let d = b - a;
    let t = if d.norm_sqr() == 0.0 {
        0.0
    } else {
        (((s - a) * d.conj()).re / d.norm_sqr()).clamp(0.0, 1.0)
    };
    (a + d * t - s).norm()
}

pub fn eigenvalues(m: &CMatrix) -> Vec<Complex64> {
    let (_, t) = Schur::new(m.clone()).unpack();
    t.diagonal().iter().cloned().collect()
}

/// Smallest distance from an eigenvalue difference of `m` to a nonzero
/// integer.
pub fn resonance_margin(m: &CMatrix) -> f64 {
    let ev = eigenvalues(m);
    let mut best = f64::INFINITY;
    for (a, x) in ev.iter().enumerate() {
        for (b, y) in ev.iter().enumerate() {
            if a == b {
                continue;
            }
            let d = x - y;
            let k = d.re.round();
            let nearest = if k != 0.0 {
                k
            } else if d.re < 0.0 {
                -1.0
            } else {
                1.0
            };
            best = best.min((d - c(nearest, 0.0)).norm());
        }
    }
    best
}

/// Rejects matrices with two eigenvalues a nonzero integer apart.
pub fn check_non_resonant(m: &CMatrix) -> Result<()> {
    let ev = eigenvalues(m);
    for (a, x) in ev.iter().enumerate() {
        for y in &ev[a + 1..] {
            let d = x - y;
            let k = d.re.round();
            if k != 0.0 && (d - c(k, 0.0)).norm() < RESONANCE_EPS {
                return Err(Error::Resonance {
                    first: *x,
                    second: *y,
                    gap: k as i64,
                });
            }
        }
    }
    Ok(())
}

pub fn max_abs(m: &CMatrix) -> f64 {
    m.iter().map(|x| x.norm()).fold(0.0, f64::max)
}

/// `z^M = exp(M log z)` on the principal branch.
pub fn matrix_power(z: Complex64, m: &CMatrix) -> CMatrix {
    (m * z.ln()).exp()
}

/// The holomorphic gauge `g(z) = Σ g_k z^k` with `g(0) = I`, solved from
/// `(k − ad_P) g_k = Q Σ_{j<k} g_j`.
#[derive(Clone, Debug)]
pub struct Gauge {
    pub coefficients: Vec<CMatrix>,
}

impl Gauge {
    pub fn eval(&self, z: Complex64) -> CMatrix {
        let n = self.coefficients[0].nrows();
        let mut acc = CMatrix::zeros(n, n);
        for g in self.coefficients.iter().rev() {
            acc = acc * z + g;
        }
        acc
    }

    pub fn derivative(&self, z: Complex64) -> CMatrix {
        let n = self.coefficients[0].nrows();
        let mut acc = CMatrix::zeros(n, n);
        for (k, g) in self.coefficients.iter().enumerate().skip(1).rev() {
            acc = acc * z + g * c(k as f64, 0.0);
        }
        acc
    }
}

pub fn gauge_series(sys: &FuchsianSystem) -> Result<Gauge> {
    let n = sys.dim();
    let id = CMatrix::identity(n, n);
    // vec(P X − X P) = (I ⊗ P − Pᵀ ⊗ I) vec(X), column-major.
    let ad = id.kronecker(&sys.p) - sys.p.transpose().kronecker(&id);
    let mut coefficients = vec![id.clone()];
    let mut partial = id;
    for k in 1..=sys.series_order {
        let rhs = &sys.q * &partial;
        let lhs = CMatrix::identity(n * n, n * n) * c(k as f64, 0.0) - &ad;
        let b = DMatrix::from_column_slice(n * n, 1, rhs.as_slice());
        let x = lhs.lu().solve(&b).ok_or_else(|| Error::Numeric {
            message: format!("gauge recurrence singular at degree {k}"),
            residual: f64::INFINITY,
        })?;
        let gk = CMatrix::from_column_slice(n, n, x.as_slice());
        partial += &gk;
        coefficients.push(gk);
    }
    let scale = coefficients.iter().map(max_abs).fold(1.0, f64::max);
    let tail = max_abs(&coefficients[sys.series_order]) * SERIES_RADIUS.powi(sys.series_order as i32);
    if tail > sys.ode_tol * scale {
        return Err(Error::Numeric {
            message: format!("gauge series not converged at |z| = {SERIES_RADIUS}"),
            residual: tail,
        });
    }
    Ok(Gauge { coefficients })
}

/// Residual of the gauge equation `g′ = (P g − g P)/z + Q g/(1−z)` at `z`.
pub fn gauge_residual(sys: &FuchsianSystem, gauge: &Gauge, z: Complex64) -> f64 {
    let g = gauge.eval(z);
    let lhs = gauge.derivative(z);
    let rhs = (&sys.p * &g - &g * &sys.p) / z + &sys.q * &g / (c(1.0, 0.0) - z);
    max_abs(&(lhs - rhs))
}

/// Evaluator for the fundamental solution `g(z) z^P` near `0`.
#[derive(Clone, Debug)]
pub struct FrobeniusBasis {
    pub gauge: Gauge,
    pub p: CMatrix,
}

impl FrobeniusBasis {
    pub fn eval(&self, z: Complex64) -> Result<CMatrix> {
        if z.norm() > SERIES_RADIUS || z.norm() == 0.0 {
            return domain(format!("series basis evaluated outside 0 < |z| ≤ {SERIES_RADIUS}"));
        }
        Ok(self.gauge.eval(z) * matrix_power(z, &self.p))
    }
}

pub fn frobenius_basis(sys: &FuchsianSystem) -> Result<FrobeniusBasis> {
    Ok(FrobeniusBasis {
        gauge: gauge_series(sys)?,
        p: sys.p.clone(),
    })
}

/// One Taylor step of `F′ = A(z) F` from `z` by `h`. Returns the new value
/// and the size of the last two series terms.
fn taylor_step(sys: &FuchsianSystem, z: Complex64, f: &CMatrix, h: Complex64) -> (CMatrix, f64) {
    let one = c(1.0, 0.0);
    let ap = one / z;
    let aq = one / (one - z);
    // Scaled Laurent coefficients A_j h^j of P/(z+t) + Q/(1−z−t).
    let mut a_terms = Vec::with_capacity(TAYLOR_ORDER);
    let (mut sp, mut sq) = (ap, aq);
    for j in 0..TAYLOR_ORDER {
        let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
        a_terms.push(&sys.p * (sp * sign) + &sys.q * sq);
        sp *= ap * h;
        sq *= aq * h;
    }
    // G_k = F_k h^k with G_{k+1} = h/(k+1) Σ_j Ã_j G_{k−j}.
    let mut g = vec![f.clone()];
    for k in 0..TAYLOR_ORDER {
        let mut s = CMatrix::zeros(f.nrows(), f.ncols());
        for j in 0..=k {
            s += &a_terms[j] * &g[k - j];
        }
        g.push(s * (h / c((k + 1) as f64, 0.0)));
    }
    let sum = g.iter().fold(CMatrix::zeros(f.nrows(), f.ncols()), |acc, x| acc + x);
    let tail = max_abs(&g[TAYLOR_ORDER]) + max_abs(&g[TAYLOR_ORDER - 1]);
    (sum, tail)
}

fn radius(z: Complex64) -> f64 {
    z.norm().min((c(1.0, 0.0) - z).norm())
}

/// Continues `value` (any number of columns) along the straight segment
/// `from → to`.
pub fn continue_segment(
    sys: &FuchsianSystem,
    value: &CMatrix,
    from: Complex64,
    to: Complex64,
) -> Result<CMatrix> {
    let mut z = from;
    let mut f = value.clone();
    let total = (to - from).norm();
    if total == 0.0 {
        return Ok(f);
    }
    let dir = (to - from) / total;
    let mut travelled = 0.0;
    while travelled < total {
        let rho = radius(z);
        if rho < SINGULAR_CLEARANCE {
            return Err(Error::Domain(format!("continuation reached {z}, next to a singular point")));
        }
        let mut step = (0.4 * rho).min(total - travelled);
        loop {
            if step < MIN_STEP {
                return Err(Error::Numeric {
                    message: format!("step size underflow at {z}"),
                    residual: step,
                });
            }
            let (next, tail) = taylor_step(sys, z, &f, dir * step);
            if tail <= sys.ode_tol * max_abs(&f).max(1e-300) {
                f = next;
                break;
            }
            step *= 0.5;
        }
        travelled += step;
        z = if (total - travelled) <= 0.0 { to } else { from + dir * travelled };
    }
    Ok(f)
}

/// Continues `value` along the polyline `path`.
pub fn continue_solution(sys: &FuchsianSystem, value: &CMatrix, path: &[Complex64]) -> Result<CMatrix> {
    let mut f = value.clone();
    for seg in path.windows(2) {
        f = continue_segment(sys, &f, seg[0], seg[1])?;
    }
    Ok(f)
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TransportMatrix {
    pub c: Vec<Vec<[f64; 2]>>,
    /// Spread of `Φ_∞⁻¹ Φ₀` over the checkpoints where both bases are
    /// available.
    pub residual: f64,
    pub condition_number: f64,
    /// Whether every entry exceeds `1e-10` in modulus (reported only).
    pub all_entries_nonzero: bool,
}

impl TransportMatrix {
    pub fn matrix(&self) -> CMatrix {
        let n = self.c.len();
        matrix_from_json(n, &self.c, "c").expect("stored square")
    }
}

pub fn condition_number(m: &CMatrix) -> f64 {
    let sv = m.clone().svd(false, false).singular_values;
    let max = sv.iter().cloned().fold(0.0, f64::max);
    let min = sv.iter().cloned().fold(f64::INFINITY, f64::min);
    max / min
}

/// Basis normalized at infinity, evaluated at `z`.
fn infinity_basis(at_inf: &FrobeniusBasis, z: Complex64) -> Result<CMatrix> {
    at_inf.eval(c(1.0, 0.0) / z)
}

pub fn transport_matrix(sys: &FuchsianSystem) -> Result<TransportMatrix> {
    let zero_basis = frobenius_basis(sys)?;
    let inf_basis = frobenius_basis(&sys.at_infinity()?)?;
    let path = &sys.path;
    let start = zero_basis.eval(path[0])?;
    // Checkpoints on the far part of the path, ending at the anchor.
    let mut f = start;
    let mut estimates = Vec::new();
    for seg in path.windows(2) {
        let pieces = 4;
        for k in 0..pieces {
            let a = seg[0] + (seg[1] - seg[0]) * (k as f64 / pieces as f64);
            let b = seg[0] + (seg[1] - seg[0]) * ((k + 1) as f64 / pieces as f64);
            f = continue_segment(sys, &f, a, b)?;
            if b.norm() >= 1.0 / SERIES_RADIUS {
                let phi_inf = infinity_basis(&inf_basis, b)?;
                let est = phi_inf.lu().solve(&f).ok_or_else(|| Error::Numeric {
                    message: format!("basis at infinity singular at {b}"),
                    residual: f64::INFINITY,
                })?;
                estimates.push(est);
            }
        }
    }
    let cm = estimates.pop().expect("path ends outside radius 2");
    let scale = max_abs(&cm).max(1.0);
    let residual = estimates
        .iter()
        .map(|e| max_abs(&(e - &cm)) / scale)
        .fold(0.0, f64::max);
    if residual > sys.match_tol {
        return Err(Error::Numeric {
            message: "transport estimates disagree along the path".into(),
            residual,
        });
    }
    Ok(TransportMatrix {
        condition_number: condition_number(&cm),
        all_entries_nonzero: cm.iter().all(|x| x.norm() > 1e-10),
        c: matrix_to_json(&cm),
        residual,
    })
}

/// Entrywise test of `c_dual = (c⁻¹)ᵀ`.
pub fn inverse_transpose_law(c_orig: &CMatrix, c_dual: &CMatrix, tol: f64) -> bool {
    match c_orig.clone().try_inverse() {
        Some(inv) => max_abs(&(inv.transpose() - c_dual)) <= tol,
        None => false,
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DualityReport {
    /// Largest deviation of `Ψᵀ Φ` from `I` at the checkpoints.
    pub pairing_drift: f64,
    /// Largest deviation of the dual gauge from `(g⁻¹)ᵀ` on `|z| = ¼`.
    pub gauge_deviation: f64,
    pub inverse_transpose_error: f64,
    pub passed: bool,
}

pub const PAIRING_TOL: f64 = 1e-8;
pub const DUALITY_TOL: f64 = 1e-6;

pub fn duality_report(sys: &FuchsianSystem) -> Result<DualityReport> {
    let dual = sys.dual()?;
    let fb = frobenius_basis(sys)?;
    let db = frobenius_basis(&dual)?;
    let mut gauge_deviation: f64 = 0.0;
    for k in 0..8 {
        let z = Complex64::from_polar(0.25, std::f64::consts::PI * k as f64 / 4.0);
        let g = fb.gauge.eval(z);
        let h = db.gauge.eval(z);
        let inv = g.try_inverse().ok_or_else(|| Error::Numeric {
            message: format!("gauge singular at {z}"),
            residual: f64::INFINITY,
        })?;
        gauge_deviation = gauge_deviation.max(max_abs(&(inv.transpose() - h)));
    }
    let path = &sys.path;
    let mut f = fb.eval(path[0])?;
    let mut k = db.eval(path[0])?;
    let id = CMatrix::identity(sys.dim(), sys.dim());
    let mut pairing_drift = max_abs(&(k.transpose() * &f - &id));
    for seg in path.windows(2) {
        let pieces = 8;
        for s in 0..pieces {
            let a = seg[0] + (seg[1] - seg[0]) * (s as f64 / pieces as f64);
            let b = seg[0] + (seg[1] - seg[0]) * ((s + 1) as f64 / pieces as f64);
            f = continue_segment(sys, &f, a, b)?;
            k = continue_segment(&dual, &k, a, b)?;
            pairing_drift = pairing_drift.max(max_abs(&(k.transpose() * &f - &id)));
        }
    }
    let c_orig = transport_matrix(sys)?.matrix();
    let c_dual = transport_matrix(&dual)?.matrix();
    let inverse_transpose_error = match c_orig.try_inverse() {
        Some(inv) => max_abs(&(inv.transpose() - &c_dual)),
        None => f64::INFINITY,
    };
    Ok(DualityReport {
        passed: pairing_drift <= PAIRING_TOL
            && gauge_deviation <= PAIRING_TOL
            && inverse_transpose_error <= DUALITY_TOL,
        pairing_drift,
        gauge_deviation,
        inverse_transpose_error,
    })
}

pub fn contragredient_check(sys: &FuchsianSystem) -> Result<bool> {
    Ok(duality_report(sys)?.passed)
}

/// Deviation of `Φ₀` continued once counter-clockwise around `|z| = r`
/// from `Φ₀(r) e^{2πiP}`.
pub fn monodromy_deviation(sys: &FuchsianSystem, r: f64) -> Result<f64> {
    let fb = frobenius_basis(sys)?;
    let z0 = c(r, 0.0);
    let start = fb.eval(z0)?;
    let loop_path: Vec<Complex64> = (0..=16)
        .map(|k| Complex64::from_polar(r, 2.0 * std::f64::consts::PI * k as f64 / 16.0))
        .collect();
    let end = continue_solution(sys, &start, &loop_path)?;
    let expected = &start * (&sys.p * c(0.0, 2.0 * std::f64::consts::PI)).exp();
    Ok(max_abs(&(end - expected)) / max_abs(&start).max(1.0))
}

/// `(z^a (1−z)^{−b})` data for the scalar system `(a, b)`: the transport
/// factor `e^{−iπb}` along the canonical path.
pub fn scalar_transport_oracle(b: Complex64) -> Complex64 {
    (c(0.0, -std::f64::consts::PI) * b).exp()
}

/// The principal-branch value of `z^a (1−z)^{−b}` continued from `¼` to
/// `−¼` through the lower half-plane.
pub fn scalar_lower_half_plane_oracle(a: Complex64, b: Complex64) -> Complex64 {
    let log_z = c(0.25f64.ln(), -std::f64::consts::PI);
    (a * log_z).exp() * (-b * 1.25f64.ln()).exp()
}

/// Kronecker assembly of the composite braiding matrix:
/// `μ_{(r,r′),(s,s′)} = (c_ℓ)_{rs} · ((c_{ℓ+2})⁻¹)ᵀ_{r′s′}` over the
/// intermediate pairs listed in `pairing`.
#[derive(Clone, Debug)]
pub struct CompositeBraiding {
    pub pairing: Vec<(usize, usize)>,
    pub matrix: CMatrix,
    pub nonzero: Vec<Vec<bool>>,
}

pub const NONZERO_TOL: f64 = 1e-10;

pub fn compose_ns_braiding(c_l: &CMatrix, c_l2: &CMatrix, pairing: &[(usize, usize)]) -> Result<CompositeBraiding> {
    if !c_l.is_square() || !c_l2.is_square() {
        return domain("transport matrices must be square");
    }
    if let Some(&(r, r2)) = pairing.iter().find(|(r, r2)| *r >= c_l.nrows() || *r2 >= c_l2.nrows()) {
        return domain(format!(
            "pair ({r}, {r2}) out of range for {}×{} and {}×{} transport matrices",
            c_l.nrows(),
            c_l.nrows(),
            c_l2.nrows(),
            c_l2.nrows()
        ));
    }
    let dual = c_l2
        .clone()
        .try_inverse()
        .ok_or_else(|| Error::Domain("level ℓ+2 transport matrix is singular".into()))?
        .transpose();
    let k = pairing.len();
    let matrix = CMatrix::from_fn(k, k, |a, b| {
        let (r, r2) = pairing[a];
        let (s, s2) = pairing[b];
        c_l[(r, s)] * dual[(r2, s2)]
    });
    let nonzero = (0..k)
        .map(|a| (0..k).map(|b| matrix[(a, b)].norm() > NONZERO_TOL).collect())
        .collect();
    Ok(CompositeBraiding {
        pairing: pairing.to_vec(),
        matrix,
        nonzero,
    })
}

/// Uniform sample from the disc of radius `r`.
pub fn random_in_disc(rng: &mut impl Rng, r: f64) -> Complex64 {
    let rad = r * rng.random::<f64>().sqrt();
    Complex64::from_polar(rad, 2.0 * std::f64::consts::PI * rng.random::<f64>())
}

/// Random `n×n` system with entries in the disc of radius `½`, resampled
/// until `P`, `Q − P` and their duals keep a margin from resonance.
pub fn random_system(rng: &mut impl Rng, n: usize) -> FuchsianSystem {
    loop {
        let p = CMatrix::from_fn(n, n, |_, _| random_in_disc(rng, 0.5));
        let q = CMatrix::from_fn(n, n, |_, _| random_in_disc(rng, 0.5));
        if resonance_margin(&p) < 0.05 || resonance_margin(&(&q - &p)) < 0.05 {
            continue;
        }
        if let Ok(sys) = FuchsianSystem::new(p, q) {
            return sys;
        }
    }
}
