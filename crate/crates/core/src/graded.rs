//! Finite-dimensional ℤ₂-graded matrix algebras: supercommutators, the Klein
//! transformation, commutants and supercommutants.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{domain, Error, Result};

pub type CMatrix = DMatrix<Complex64>;

/// Rank and subspace tolerance.
pub const SUBSPACE_TOL: f64 = 1e-10;
pub const IDENTITY_TOL: f64 = 1e-12;

const I: Complex64 = Complex64::new(0.0, 1.0);

fn frob(x: &CMatrix) -> f64 {
    x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

fn inner(a: &CMatrix, b: &CMatrix) -> Complex64 {
    a.iter().zip(b.iter()).map(|(x, y)| x.conj() * y).sum()
}

/// `ℂ^d` with a grading unitary `u`, `u² = I`.
#[derive(Clone, Debug)]
pub struct GradedSpace {
    pub u: CMatrix,
    pub p0: CMatrix,
    pub p1: CMatrix,
    pub kappa: CMatrix,
}

impl GradedSpace {
    pub fn new(u: CMatrix) -> Result<Self> {
        let d = u.nrows();
        if d == 0 || !u.is_square() {
            return domain("grading must be a nonempty square matrix");
        }
        let id = CMatrix::identity(d, d);
        if frob(&(&u * &u - &id)) > IDENTITY_TOL || frob(&(&u * u.adjoint() - &id)) > IDENTITY_TOL {
            return domain("grading must be a unitary involution");
        }
        let half = Complex64::new(0.5, 0.0);
        let p0 = (&id + &u) * half;
        let p1 = (&id - &u) * half;
        let kappa = &p0 + &p1 * I;
        Ok(GradedSpace { u, p0, p1, kappa })
    }

    /// Grading `diag(signs)`.
    pub fn diagonal(signs: &[i8]) -> Result<Self> {
        let diag: Vec<Complex64> = signs.iter().map(|&s| Complex64::new(s as f64, 0.0)).collect();
        Self::new(CMatrix::from_diagonal(&nalgebra::DVector::from_vec(diag)))
    }

    pub fn dim(&self) -> usize {
        self.u.nrows()
    }

    /// `τ(x) = u x u`.
    pub fn tau(&self, x: &CMatrix) -> CMatrix {
        &self.u * x * &self.u
    }

    /// `(x₀, x₁)` with `x₀ = ½(x + uxu)`, `x₁ = ½(x − uxu)`.
    pub fn split(&self, x: &CMatrix) -> (CMatrix, CMatrix) {
        let t = self.tau(x);
        let half = Complex64::new(0.5, 0.0);
        ((x + &t) * half, (x - &t) * half)
    }
}

pub fn commutator(x: &CMatrix, y: &CMatrix) -> CMatrix {
    x * y - y * x
}

/// `[x₀,y₀] + [x₀,y₁] + [x₁,y₀] + [x₁,y₁]₊`.
pub fn super_commutator(x: &CMatrix, y: &CMatrix, space: &GradedSpace) -> Result<CMatrix> {
    let d = space.dim();
    if x.shape() != (d, d) || y.shape() != (d, d) {
        return domain("matrix size does not match the graded space");
    }
    let (x0, x1) = space.split(x);
    let (y0, y1) = space.split(y);
    Ok(commutator(&x0, &y0) + commutator(&x0, &y1) + commutator(&x1, &y0) + (&x1 * &y1 + &y1 * &x1))
}

/// A linear subspace of `M_d(ℂ)` with an orthonormal basis for the
/// Hilbert-Schmidt inner product.
#[derive(Clone, Debug)]
pub struct Subspace {
    pub d: usize,
    pub basis: Vec<CMatrix>,
}

impl Subspace {
    pub fn empty(d: usize) -> Self {
        Subspace { d, basis: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    fn project_out(&self, x: &CMatrix) -> CMatrix {
        let mut r = x.clone();
        for _ in 0..2 {
            for b in &self.basis {
                let c = inner(b, &r);
                r -= b * c;
            }
        }
        r
    }

    /// Adds `x` if it is independent of the current basis; returns whether
    /// it was added.
    pub fn insert(&mut self, x: &CMatrix) -> bool {
        let n = frob(x);
        if n == 0.0 {
            return false;
        }
        let r = self.project_out(&(x / Complex64::new(n, 0.0)));
        let rn = frob(&r);
        if rn > SUBSPACE_TOL {
            self.basis.push(r / Complex64::new(rn, 0.0));
            true
        } else {
            false
        }
    }

    pub fn spanned_by<'a>(d: usize, items: impl IntoIterator<Item = &'a CMatrix>) -> Self {
        let mut s = Subspace::empty(d);
        for x in items {
            s.insert(x);
        }
        s
    }

    /// Distance from `x / ‖x‖` to the subspace.
    pub fn residual(&self, x: &CMatrix) -> f64 {
        let n = frob(x);
        if n == 0.0 {
            return 0.0;
        }
        frob(&self.project_out(x)) / n
    }

    /// Largest residual of either basis in the other's span.
    pub fn distance(&self, other: &Subspace) -> f64 {
        let a = self.basis.iter().map(|x| other.residual(x)).fold(0.0, f64::max);
        let b = other.basis.iter().map(|x| self.residual(x)).fold(0.0, f64::max);
        if self.dim() != other.dim() {
            return a.max(b).max(1.0);
        }
        a.max(b)
    }

    pub fn same_as(&self, other: &Subspace) -> bool {
        self.distance(other) < SUBSPACE_TOL
    }

    pub fn conjugated(&self, k: &CMatrix) -> Subspace {
        let kad = k.adjoint();
        let items: Vec<CMatrix> = self.basis.iter().map(|x| k * x * &kad).collect();
        Subspace::spanned_by(self.d, &items)
    }
}

/// Orthonormal basis of the null space of a stacked linear map on
/// column-major vectorized `d×d` matrices.
fn null_space(d: usize, blocks: &[CMatrix]) -> Subspace {
    let n = d * d;
    let rows: usize = blocks.iter().map(|b| b.nrows()).sum::<usize>().max(n);
    let mut m = CMatrix::zeros(rows, n);
    let mut r = 0;
    for b in blocks {
        m.view_mut((r, 0), (b.nrows(), n)).copy_from(b);
        r += b.nrows();
    }
    let svd = m.svd(false, true);
    let v_t = svd.v_t.expect("requested");
    let smax = svd.singular_values.iter().cloned().fold(0.0, f64::max);
    let cut = SUBSPACE_TOL * smax.max(1.0);
    let mut out = Subspace::empty(d);
    for (k, s) in svd.singular_values.iter().enumerate() {
        if *s <= cut {
            let row: Vec<Complex64> = v_t.row(k).iter().map(|z| z.conj()).collect();
            out.insert(&CMatrix::from_column_slice(d, d, &row));
        }
    }
    out
}

/// `x ↦ g x − x g`, i.e. `I ⊗ g − gᵀ ⊗ I`.
fn commutator_map(g: &CMatrix) -> CMatrix {
    let d = g.nrows();
    let id = CMatrix::identity(d, d);
    id.kronecker(g) - g.transpose().kronecker(&id)
}

/// `x ↦ [g, x]_τ` for homogeneous `g`; for odd `g` this is `g x − (u x u) g`.
fn super_commutator_map(g: &CMatrix, odd: bool, space: &GradedSpace) -> CMatrix {
    let d = g.nrows();
    let id = CMatrix::identity(d, d);
    if odd {
        id.kronecker(g) - (&space.u * g).transpose().kronecker(&space.u)
    } else {
        commutator_map(g)
    }
}

/// An algebra given by generators on a graded space; the closure is the
/// generated unital *-algebra.
#[derive(Clone, Debug)]
pub struct GradedAlgebra {
    pub space: GradedSpace,
    pub generators: Vec<CMatrix>,
    pub closure: Subspace,
}

impl GradedAlgebra {
    pub fn new(space: GradedSpace, generators: Vec<CMatrix>) -> Result<Self> {
        let d = space.dim();
        if generators.iter().any(|g| g.shape() != (d, d)) {
            return domain("generator size does not match the graded space");
        }
        let closure = closure(d, &generators);
        Ok(GradedAlgebra {
            space,
            generators,
            closure,
        })
    }

    /// Generators and their adjoints, split into homogeneous parts.
    fn homogeneous_generators(&self) -> Vec<(CMatrix, bool)> {
        let mut out = Vec::new();
        for g in self.generators.iter().flat_map(|g| [g.clone(), g.adjoint()]) {
            let (g0, g1) = self.space.split(&g);
            if frob(&g0) > IDENTITY_TOL {
                out.push((g0, false));
            }
            if frob(&g1) > IDENTITY_TOL {
                out.push((g1, true));
            }
        }
        out
    }

    /// Every generator is homogeneous.
    pub fn generators_homogeneous(&self) -> bool {
        self.generators.iter().all(|g| {
            let (g0, g1) = self.space.split(g);
            frob(&g0) <= IDENTITY_TOL || frob(&g1) <= IDENTITY_TOL
        })
    }

    /// `τ` maps the closure to itself.
    pub fn tau_invariant(&self) -> bool {
        self.closure
            .basis
            .iter()
            .all(|x| self.closure.residual(&self.space.tau(x)) < SUBSPACE_TOL)
    }

    /// Closed under products and adjoints and contains `I`.
    pub fn closure_is_algebra(&self) -> bool {
        let d = self.space.dim();
        let c = &self.closure;
        c.residual(&CMatrix::identity(d, d)) < SUBSPACE_TOL
            && c.basis.iter().all(|x| c.residual(&x.adjoint()) < SUBSPACE_TOL)
            && c.basis
                .iter()
                .all(|x| c.basis.iter().all(|y| c.residual(&(x * y)) < SUBSPACE_TOL))
    }

    pub fn commutant(&self) -> Subspace {
        let mut blocks = vec![commutator_map(&CMatrix::identity(self.space.dim(), self.space.dim()))];
        for g in self.generators.iter().flat_map(|g| [g.clone(), g.adjoint()]) {
            blocks.push(commutator_map(&g));
        }
        null_space(self.space.dim(), &blocks)
    }

    /// The supercommutant by direct null-space computation.
    pub fn supercommutant_direct(&self) -> Subspace {
        let d = self.space.dim();
        let mut blocks = vec![commutator_map(&CMatrix::identity(d, d))];
        for (g, odd) in self.homogeneous_generators() {
            blocks.push(super_commutator_map(&g, odd, &self.space));
        }
        null_space(d, &blocks)
    }

    /// `κ A′ κ*`.
    pub fn supercommutant_klein(&self) -> Subspace {
        self.commutant().conjugated(&self.space.kappa)
    }

    /// The supercommutant, computed both ways; disagreement is an error.
    pub fn supercommutant(&self) -> Result<Subspace> {
        let direct = self.supercommutant_direct();
        let klein = self.supercommutant_klein();
        let dist = direct.distance(&klein);
        if dist >= SUBSPACE_TOL {
            return Err(Error::InvariantViolation(format!(
                "supercommutant by null space (dim {}) differs from κA′κ* (dim {}) by {dist:e}",
                direct.dim(),
                klein.dim()
            )));
        }
        Ok(direct)
    }

    /// The supercommutant as an algebra on the same space.
    pub fn supercommutant_algebra(&self) -> Result<GradedAlgebra> {
        let sc = self.supercommutant()?;
        let mut gens = Vec::new();
        for x in &sc.basis {
            let (x0, x1) = self.space.split(x);
            gens.extend([x0, x1].into_iter().filter(|y| frob(y) > IDENTITY_TOL));
        }
        GradedAlgebra::new(self.space.clone(), gens)
    }

    pub fn commutant_algebra(&self) -> Result<GradedAlgebra> {
        GradedAlgebra::new(self.space.clone(), self.commutant().basis)
    }
}

/// Span of all words in the generators and their adjoints, including `I`.
pub fn closure(d: usize, generators: &[CMatrix]) -> Subspace {
    let letters: Vec<CMatrix> = generators.iter().flat_map(|g| [g.clone(), g.adjoint()]).collect();
    let mut span = Subspace::empty(d);
    span.insert(&CMatrix::identity(d, d));
    for g in &letters {
        span.insert(g);
    }
    let mut frontier = span.basis.clone();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for x in &frontier {
            for g in &letters {
                let y = g * x;
                if span.insert(&y) {
                    next.push(span.basis.last().expect("just inserted").clone());
                }
            }
        }
        frontier = next;
    }
    span
}

/// `A^♮ = κA′κ*`; errors carry the disagreement.
pub fn naturals_check(alg: &GradedAlgebra) -> Result<f64> {
    let d = alg.supercommutant_direct();
    let k = alg.supercommutant_klein();
    Ok(d.distance(&k))
}

/// `A^♮♮ = A`.
pub fn double_supercommutant_check(alg: &GradedAlgebra) -> Result<bool> {
    let inner = alg.supercommutant_algebra()?;
    let twice = inner.supercommutant()?;
    Ok(twice.same_as(&alg.closure))
}

/// `A′′ = A`.
pub fn double_commutant_check(alg: &GradedAlgebra) -> Result<bool> {
    Ok(alg.commutant_algebra()?.commutant().same_as(&alg.closure))
}

/// `κκ* = I`, `κ² = u`, and on every homogeneous part of every matrix unit
/// `ux₀u = x₀`, `ux₁u = −x₁`, `κx₀κ* = x₀`, `κx₁κ* = −iux₁`.
pub fn klein_identities_check(space: &GradedSpace) -> bool {
    let d = space.dim();
    let id = CMatrix::identity(d, d);
    let k = &space.kappa;
    let kad = k.adjoint();
    let close = |a: &CMatrix, b: &CMatrix| frob(&(a - b)) <= IDENTITY_TOL;
    if !close(&(k * &kad), &id) || !close(&(k * k), &space.u) {
        return false;
    }
    for i in 0..d {
        for j in 0..d {
            let mut e = CMatrix::zeros(d, d);
            e[(i, j)] = Complex64::new(1.0, 0.0);
            let (x0, x1) = space.split(&e);
            let ok = close(&space.tau(&x0), &x0)
                && close(&space.tau(&x1), &-&x1)
                && close(&(k * &x0 * &kad), &x0)
                && close(&(k * &x1 * &kad), &(&space.u * &x1 * -I));
            if !ok {
                return false;
            }
        }
    }
    true
}

fn real(rows: usize, cols: usize, entries: &[f64]) -> CMatrix {
    CMatrix::from_row_slice(rows, cols, &entries.iter().map(|&x| Complex64::new(x, 0.0)).collect::<Vec<_>>())
}

fn unit(d: usize, i: usize, j: usize) -> CMatrix {
    let mut e = CMatrix::zeros(d, d);
    e[(i, j)] = Complex64::new(1.0, 0.0);
    e
}

fn kron_all(factors: &[CMatrix]) -> CMatrix {
    factors
        .iter()
        .skip(1)
        .fold(factors[0].clone(), |acc, f| acc.kronecker(f))
}

/// Clifford algebra on `n` modes in the Jordan-Wigner picture on `ℂ^{2ⁿ}`,
/// graded by parity. The generators are `c(e_k) = a_k + a_k*`, and with
/// `full` also `c(ie_k) = i(a_k* − a_k)`.
pub fn clifford(n: usize, full: bool) -> Result<GradedAlgebra> {
    let x = real(2, 2, &[0.0, 1.0, 1.0, 0.0]);
    let y = CMatrix::from_row_slice(2, 2, &[Complex64::new(0.0, 0.0), -I, I, Complex64::new(0.0, 0.0)]);
    let z = real(2, 2, &[1.0, 0.0, 0.0, -1.0]);
    let id2 = CMatrix::identity(2, 2);
    let string = |k: usize, m: &CMatrix| -> CMatrix {
        let factors: Vec<CMatrix> = (0..n)
            .map(|j| match j.cmp(&k) {
                std::cmp::Ordering::Less => z.clone(),
                std::cmp::Ordering::Equal => m.clone(),
                std::cmp::Ordering::Greater => id2.clone(),
            })
            .collect();
        kron_all(&factors)
    };
    let mut gens = Vec::new();
    for k in 0..n {
        gens.push(string(k, &x));
        if full {
            gens.push(string(k, &y));
        }
    }
    let parity = kron_all(&vec![z.clone(); n]);
    GradedAlgebra::new(GradedSpace::new(parity)?, gens)
}

/// Names accepted by [`sample`].
pub const SAMPLE_NAMES: &[&str] = &[
    "scalars2",
    "full2",
    "full4",
    "diag2",
    "diag4",
    "odd2",
    "block4",
    "mixed4",
    "clifford1",
    "clifford2",
    "clifford3",
    "clifford1-full",
    "clifford2-full",
    "clifford3-full",
];

pub fn sample(name: &str) -> Result<GradedAlgebra> {
    let sx = real(2, 2, &[0.0, 1.0, 1.0, 0.0]);
    let id2 = CMatrix::identity(2, 2);
    let full = |d: usize, signs: &[i8]| -> Result<GradedAlgebra> {
        let gens = (0..d).flat_map(|i| (0..d).map(move |j| unit(d, i, j))).collect();
        GradedAlgebra::new(GradedSpace::diagonal(signs)?, gens)
    };
    match name {
        "scalars2" => GradedAlgebra::new(GradedSpace::diagonal(&[1, -1])?, vec![]),
        "full2" => full(2, &[1, -1]),
        "full4" => full(4, &[1, 1, -1, -1]),
        "diag2" => GradedAlgebra::new(GradedSpace::diagonal(&[1, -1])?, vec![unit(2, 0, 0), unit(2, 1, 1)]),
        "diag4" => GradedAlgebra::new(
            GradedSpace::diagonal(&[1, -1, 1, -1])?,
            (0..4).map(|i| unit(4, i, i)).collect(),
        ),
        "odd2" => GradedAlgebra::new(GradedSpace::diagonal(&[1, -1])?, vec![sx]),
        // M_2 ⊗ I, even for the grading I ⊗ σ_z.
        "block4" => GradedAlgebra::new(
            GradedSpace::diagonal(&[1, -1, 1, -1])?,
            (0..2)
                .flat_map(|i| (0..2).map(move |j| (i, j)))
                .map(|(i, j)| unit(2, i, j).kronecker(&id2))
                .collect(),
        ),
        // M_2 ⊗ I with the grading σ_z ⊗ σ_z: off-diagonal units are odd.
        "mixed4" => GradedAlgebra::new(
            GradedSpace::diagonal(&[1, -1, -1, 1])?,
            (0..2)
                .flat_map(|i| (0..2).map(move |j| (i, j)))
                .map(|(i, j)| unit(2, i, j).kronecker(&id2))
                .collect(),
        ),
        _ => {
            let (base, full) = match name.strip_suffix("-full") {
                Some(b) => (b, true),
                None => (name, false),
            };
            match base.strip_prefix("clifford").and_then(|k| k.parse::<usize>().ok()) {
                Some(n @ 1..=3) => clifford(n, full),
                _ => domain(format!("unknown sample algebra {name:?}; known: {}", SAMPLE_NAMES.join(", "))),
            }
        }
    }
}

#[derive(Clone, Debug, serde::Serialize)]
pub struct SampleReport {
    pub name: String,
    pub dim_space: usize,
    pub dim_algebra: usize,
    pub dim_commutant: usize,
    pub dim_supercommutant: usize,
    pub naturals_residual: f64,
    pub double_commutant: bool,
    pub double_supercommutant: bool,
    pub klein_identities: bool,
    pub passed: bool,
}

pub fn sample_report(name: &str) -> Result<SampleReport> {
    let alg = sample(name)?;
    let naturals_residual = naturals_check(&alg)?;
    let double_commutant = double_commutant_check(&alg)?;
    let double_supercommutant = double_supercommutant_check(&alg)?;
    let klein_identities = klein_identities_check(&alg.space);
    Ok(SampleReport {
        name: name.to_string(),
        dim_space: alg.space.dim(),
        dim_algebra: alg.closure.dim(),
        dim_commutant: alg.commutant().dim(),
        dim_supercommutant: alg.supercommutant_direct().dim(),
        passed: naturals_residual < SUBSPACE_TOL && double_commutant && double_supercommutant && klein_identities,
        naturals_residual,
        double_commutant,
        double_supercommutant,
        klein_identities,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn super_commutator_cases() {
        let space = GradedSpace::diagonal(&[1, -1]).unwrap();
        let e = unit(2, 0, 0);
        let f = unit(2, 1, 1);
        assert_eq!(super_commutator(&e, &f, &space).unwrap(), commutator(&e, &f));
        let x = real(2, 2, &[0.0, 1.0, 1.0, 0.0]);
        let s = super_commutator(&x, &x, &space).unwrap();
        assert!(frob(&(s - &x * &x * c(2.0, 0.0))) < 1e-15);
        let m = CMatrix::from_fn(2, 2, |i, j| c(i as f64 + 0.5, j as f64 - 0.25));
        let id = CMatrix::identity(2, 2);
        assert!(frob(&super_commutator(&m, &id, &space).unwrap()) < 1e-15);
        assert!(super_commutator(&m, &CMatrix::identity(3, 3), &space).is_err());
    }

    #[test]
    fn even_argument_gives_commutator() {
        let space = GradedSpace::diagonal(&[1, -1, 1]).unwrap();
        let x = CMatrix::from_fn(3, 3, |i, j| c((i * 3 + j) as f64, (i as f64) - (j as f64)));
        let p = space.p0.clone();
        assert!(frob(&(super_commutator(&x, &p, &space).unwrap() - commutator(&x, &p))) < 1e-12);
    }

    #[test]
    fn klein_example() {
        let space = GradedSpace::diagonal(&[1, -1]).unwrap();
        let x1 = unit(2, 0, 1);
        let lhs = &space.kappa * &x1 * space.kappa.adjoint();
        let rhs = &space.u * &x1 * -I;
        assert!(frob(&(lhs - rhs)) < 1e-15);
        assert!(klein_identities_check(&space));
        assert!(frob(&(&space.kappa * &space.kappa - &space.u)) < 1e-15);
    }

    #[test]
    fn bad_grading() {
        assert!(GradedSpace::new(real(2, 2, &[1.0, 1.0, 0.0, 1.0])).is_err());
        assert!(GradedSpace::new(real(2, 2, &[2.0, 0.0, 0.0, 0.5])).is_err());
    }

    #[test]
    fn commutant_examples() {
        assert_eq!(sample("full2").unwrap().commutant().dim(), 1);
        let diag = sample("diag2").unwrap();
        let comm = diag.commutant();
        assert!(comm.same_as(&Subspace::spanned_by(2, &[unit(2, 0, 0), unit(2, 1, 1)])));
        assert!(double_commutant_check(&diag).unwrap());
    }

    #[test]
    fn odd_generator_supercommutant() {
        let alg = sample("odd2").unwrap();
        let sc = alg.supercommutant().unwrap();
        let sy = CMatrix::from_row_slice(2, 2, &[c(0.0, 0.0), -I, I, c(0.0, 0.0)]);
        let x = real(2, 2, &[0.0, 1.0, 1.0, 0.0]);
        assert!(frob(&(&space_u(&alg) * &x * -I - &sy)) < 1e-15);
        assert!(sc.residual(&sy) < 1e-12);
        assert!(sc.residual(&CMatrix::identity(2, 2)) < 1e-12);
        assert_eq!(sc.dim(), 2);
        assert!(frob(&(&x * &sy + &sy * &x)) < 1e-15);
    }

    fn space_u(alg: &GradedAlgebra) -> CMatrix {
        alg.space.u.clone()
    }

    #[test]
    fn trivial_supercommutants() {
        assert_eq!(sample("full4").unwrap().supercommutant().unwrap().dim(), 1);
        let diag = sample("diag2").unwrap();
        assert!(diag.supercommutant().unwrap().same_as(&diag.closure));
        let scalars = sample("scalars2").unwrap();
        assert_eq!(scalars.closure.dim(), 1);
        assert_eq!(scalars.supercommutant().unwrap().dim(), 4);
        assert!(double_supercommutant_check(&scalars).unwrap());
    }

    #[test]
    fn clifford_closures() {
        for (n, dim, dim_full) in [(1, 2, 4), (2, 4, 16), (3, 8, 64)] {
            let alg = clifford(n, false).unwrap();
            assert_eq!(alg.closure.dim(), dim);
            assert_eq!(clifford(n, true).unwrap().closure.dim(), dim_full);
            // {c(e_j), c(e_k)} = 2δ_jk
            for (j, a) in alg.generators.iter().enumerate() {
                for (k, b) in alg.generators.iter().enumerate() {
                    let want = if j == k { 2.0 } else { 0.0 };
                    let ac = a * b + b * a;
                    assert!(frob(&(ac - CMatrix::identity(1 << n, 1 << n) * c(want, 0.0))) < 1e-14);
                }
            }
        }
    }

    #[test]
    fn sample_library() {
        for name in SAMPLE_NAMES {
            let alg = sample(name).unwrap();
            assert!(alg.generators_homogeneous(), "{name}");
            assert!(alg.tau_invariant(), "{name}");
            assert!(alg.closure_is_algebra(), "{name}");
            let report = sample_report(name).unwrap();
            assert!(report.passed, "{report:?}");
        }
        assert!(sample("clifford4").is_err());
        assert!(sample("nope").is_err());
    }

    #[test]
    fn wrong_klein_is_detected() {
        // Conjugating the commutant by p0 + p1 (no factor i) misses odd parts.
        let alg = sample("odd2").unwrap();
        let direct = alg.supercommutant_direct();
        let plain = alg.commutant();
        assert!(!direct.same_as(&plain));
    }
}
