//! The density modules `F^σ_{λ,μ}` of the Neveu-Schwarz algebra on a
//! truncated index window, with exact checks of the bracket relations and of
//! the mode form of the covariance relations.
//!
//! Basis `v_i` (`i ∈ ℤ + σ/2`) and `w_j` (`j ∈ ℤ + (1−σ)/2`), with
//!
//! ```text
//! L_n v_i = −(i + μ + λn) v_{i+n}          G_s v_i = w_{i+s}
//! L_n w_j = −(j + μ + (λ − ½)n) w_{j+n}    G_s w_j = −(j + μ + (2λ − 1)s) v_{j+s}
//! ```
//!
//! Indices are stored doubled throughout.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::kac::{rat, Rational};

/// Integer (`σ = 0`) or half-integer (`σ = 1`) moding of the ordinary part.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Sigma {
    Integer,
    HalfInteger,
}

impl Sigma {
    pub fn value(self) -> u8 {
        match self {
            Sigma::Integer => 0,
            Sigma::HalfInteger => 1,
        }
    }
}

impl fmt::Display for Sigma {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sector {
    V,
    W,
}

/// Basis vector `v_i` or `w_j`; `twice_index = 2i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BasisVector {
    pub sector: Sector,
    pub twice_index: i64,
}

/// A mode `L_n` (`n ∈ ℤ`) or `G_s` (`s ∈ ℤ + ½`, stored as `2s`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Mode {
    L(i64),
    G { twice_s: i64 },
}

impl Mode {
    pub fn g(twice_s: i64) -> Result<Mode> {
        if twice_s.rem_euclid(2) != 1 {
            return domain(format!("G_s needs s ∈ ℤ + ½, got 2s = {twice_s}"));
        }
        Ok(Mode::G { twice_s })
    }

    pub fn twice_shift(self) -> i64 {
        match self {
            Mode::L(n) => 2 * n,
            Mode::G { twice_s } => twice_s,
        }
    }

    fn is_odd(self) -> bool {
        matches!(self, Mode::G { .. })
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mode::L(n) => write!(f, "L({n})"),
            Mode::G { twice_s } => write!(f, "G({twice_s}/2)"),
        }
    }
}

/// `F^σ_{λ,μ}` restricted to basis indices `|index| ≤ window`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DensityModule {
    pub lambda: Rational,
    pub mu: Rational,
    pub sigma: Sigma,
    pub window: i64,
}

pub type Vector = BTreeMap<BasisVector, Rational>;

/// Image of one basis vector under a mode.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Image {
    Term(BasisVector, Rational),
    OutOfWindow,
}

/// The matrix of a mode on the windowed basis. Every mode is monomial, so
/// column `k` is stored as the single image of `basis[k]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModeOperator {
    pub mode: Mode,
    pub basis: Vec<BasisVector>,
    pub columns: Vec<Image>,
}

impl ModeOperator {
    pub fn image(&self, b: &BasisVector) -> Option<&Image> {
        self.basis.binary_search(b).ok().map(|k| &self.columns[k])
    }

    /// `None` when part of the result falls outside the window.
    pub fn apply(&self, v: &Vector) -> Option<Vector> {
        let mut out = Vector::new();
        for (b, c) in v {
            match self.image(b)? {
                Image::Term(t, coeff) => {
                    let e = out.entry(*t).or_insert_with(Rational::zero);
                    *e += coeff * c;
                }
                Image::OutOfWindow => return None,
            }
        }
        out.retain(|_, c| !c.is_zero());
        Some(out)
    }

    /// `L_n` keeps sectors and `G_s` swaps them.
    pub fn respects_grading(&self) -> bool {
        self.basis.iter().zip(&self.columns).all(|(b, img)| match img {
            Image::Term(t, _) => (t.sector != b.sector) == self.mode.is_odd(),
            Image::OutOfWindow => true,
        })
    }

    /// Replaces the coefficient on column `k`.
    pub fn set_coefficient(&mut self, k: usize, value: Rational) {
        if let Image::Term(_, c) = &mut self.columns[k] {
            *c = value;
        }
    }
}

/// Anything that can hand out mode operators on a fixed windowed basis.
pub trait ModeSource {
    fn window(&self) -> i64;
    fn mode(&self, mode: Mode) -> Result<ModeOperator>;
}

impl DensityModule {
    pub fn new(lambda: Rational, mu: Rational, sigma: Sigma, window: i64) -> Result<Self> {
        if window <= 0 {
            return domain(format!("window {window} must be positive"));
        }
        Ok(DensityModule {
            lambda,
            mu,
            sigma,
            window,
        })
    }

    fn parity(&self, sector: Sector) -> i64 {
        let s = self.sigma.value() as i64;
        match sector {
            Sector::V => s,
            Sector::W => 1 - s,
        }
    }

    /// Windowed basis, sorted.
    pub fn basis(&self) -> Vec<BasisVector> {
        let mut out = Vec::new();
        for sector in [Sector::V, Sector::W] {
            let p = self.parity(sector);
            for t in -2 * self.window..=2 * self.window {
                if t.rem_euclid(2) == p {
                    out.push(BasisVector {
                        sector,
                        twice_index: t,
                    });
                }
            }
        }
        out.sort();
        out
    }

    /// Builds `mode` and checks its sector grading.
    pub fn mode_checked(&self, mode: Mode) -> Result<bool> {
        Ok(self.mode(mode)?.respects_grading())
    }

    fn in_window(&self, b: &BasisVector) -> bool {
        b.twice_index.abs() <= 2 * self.window
    }

    /// The coefficient and image of one basis vector under one mode.
    pub fn act(&self, mode: Mode, b: &BasisVector) -> (BasisVector, Rational) {
        let idx = rat(b.twice_index, 2);
        let half = rat(1, 2);
        let target_index = b.twice_index + mode.twice_shift();
        match (mode, b.sector) {
            (Mode::L(n), Sector::V) => {
                let n = rat(n, 1);
                let c = -(idx + &self.mu + &self.lambda * n);
                (BasisVector { sector: Sector::V, twice_index: target_index }, c)
            }
            (Mode::L(n), Sector::W) => {
                let n = rat(n, 1);
                let c = -(idx + &self.mu + (&self.lambda - half) * n);
                (BasisVector { sector: Sector::W, twice_index: target_index }, c)
            }
            (Mode::G { .. }, Sector::V) => (
                BasisVector { sector: Sector::W, twice_index: target_index },
                Rational::one(),
            ),
            (Mode::G { twice_s }, Sector::W) => {
                let s = rat(twice_s, 2);
                let c = -(idx + &self.mu + (&self.lambda * rat(2, 1) - Rational::one()) * s);
                (BasisVector { sector: Sector::V, twice_index: target_index }, c)
            }
        }
    }
}

impl ModeSource for DensityModule {
    fn window(&self) -> i64 {
        self.window
    }

    fn mode(&self, mode: Mode) -> Result<ModeOperator> {
        if mode.twice_shift().abs() > 2 * self.window {
            return domain(format!("{mode} is too large for window {}", self.window));
        }
        let basis = self.basis();
        let columns = basis
            .iter()
            .map(|b| {
                let (t, c) = self.act(mode, b);
                if self.in_window(&t) {
                    Image::Term(t, c)
                } else {
                    Image::OutOfWindow
                }
            })
            .collect();
        Ok(ModeOperator {
            mode,
            basis,
            columns,
        })
    }
}

/// A [`DensityModule`] with one matrix coefficient overwritten.
pub struct Perturbed<'a> {
    pub base: &'a DensityModule,
    pub mode: Mode,
    pub column: BasisVector,
    pub value: Rational,
}

impl ModeSource for Perturbed<'_> {
    fn window(&self) -> i64 {
        self.base.window
    }

    fn mode(&self, mode: Mode) -> Result<ModeOperator> {
        let mut op = self.base.mode(mode)?;
        if mode == self.mode {
            if let Ok(k) = op.basis.binary_search(&self.column) {
                op.set_coefficient(k, self.value.clone());
            }
        }
        Ok(op)
    }
}

/// The three families of bracket relations, all with vanishing central term.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    /// `[L_m, L_n] = (m − n) L_{m+n}`
    LL { m: i64, n: i64 },
    /// `[L_n, G_s] = (n/2 − s) G_{n+s}`
    LG { n: i64, twice_s: i64 },
    /// `[G_r, G_s]_+ = 2 L_{r+s}`
    GG { twice_r: i64, twice_s: i64 },
}

impl Relation {
    fn twice_reach(self) -> i64 {
        match self {
            Relation::LL { m, n } => 2 * (m.abs() + n.abs()),
            Relation::LG { n, twice_s } => 2 * n.abs() + twice_s.abs(),
            Relation::GG { twice_r, twice_s } => twice_r.abs() + twice_s.abs(),
        }
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Relation::LL { m, n } => write!(f, "[L({m}), L({n})]"),
            Relation::LG { n, twice_s } => write!(f, "[L({n}), G({twice_s}/2)]"),
            Relation::GG { twice_r, twice_s } => write!(f, "[G({twice_r}/2), G({twice_s}/2)]+"),
        }
    }
}

fn add_scaled(acc: &mut Vector, v: &Vector, scale: &Rational) {
    for (b, c) in v {
        let e = acc.entry(*b).or_insert_with(Rational::zero);
        *e += c * scale;
    }
    acc.retain(|_, c| !c.is_zero());
}

/// Checks one relation on every basis vector far enough inside the window
/// that no intermediate image is clipped.
pub fn check_relation(source: &impl ModeSource, rel: Relation) -> Result<bool> {
    let reach = rel.twice_reach();
    if reach > 2 * source.window() {
        return domain(format!("window {} too small for {rel}", source.window()));
    }
    let (a, b, sign, rhs_mode, rhs_coeff) = match rel {
        Relation::LL { m, n } => (Mode::L(m), Mode::L(n), -1, Mode::L(m + n), rat(m - n, 1)),
        Relation::LG { n, twice_s } => (
            Mode::L(n),
            Mode::g(twice_s)?,
            -1,
            Mode::g(2 * n + twice_s)?,
            rat(n, 2) - rat(twice_s, 2),
        ),
        Relation::GG { twice_r, twice_s } => {
            (Mode::g(twice_r)?, Mode::g(twice_s)?, 1, Mode::L((twice_r + twice_s) / 2), rat(2, 1))
        }
    };
    let (op_a, op_b) = (source.mode(a)?, source.mode(b)?);
    let op_rhs = source.mode(rhs_mode)?;
    let sign = rat(sign, 1);
    for e in op_a.basis.iter().filter(|e| e.twice_index.abs() + reach <= 2 * source.window()) {
        let v: Vector = [(*e, Rational::one())].into_iter().collect();
        let clipped = || crate::Error::InvariantViolation(format!("{rel} clipped on interior vector {e:?}"));
        let ab = op_a.apply(&op_b.apply(&v).ok_or_else(clipped)?).ok_or_else(clipped)?;
        let ba = op_b.apply(&op_a.apply(&v).ok_or_else(clipped)?).ok_or_else(clipped)?;
        let rhs = op_rhs.apply(&v).ok_or_else(clipped)?;
        let mut diff = ab;
        add_scaled(&mut diff, &ba, &sign);
        add_scaled(&mut diff, &rhs, &-rhs_coeff.clone());
        if !diff.is_empty() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Every relation with `|m|, |n|, |r|, |s| ≤ max_mode`.
pub fn all_relations(max_mode: i64) -> Vec<Relation> {
    let ints: Vec<i64> = (-max_mode..=max_mode).collect();
    let halves: Vec<i64> = (-2 * max_mode..=2 * max_mode).filter(|t| t.rem_euclid(2) == 1).collect();
    let mut out = Vec::new();
    for &m in &ints {
        for &n in &ints {
            out.push(Relation::LL { m, n });
        }
    }
    for &n in &ints {
        for &s in &halves {
            out.push(Relation::LG { n, twice_s: s });
        }
    }
    for &r in &halves {
        for &s in &halves {
            out.push(Relation::GG { twice_r: r, twice_s: s });
        }
    }
    out
}

/// First failing relation, if any.
pub fn first_failing_relation(source: &impl ModeSource, max_mode: i64) -> Result<Option<Relation>> {
    for rel in all_relations(max_mode) {
        if !check_relation(source, rel)? {
            return Ok(Some(rel));
        }
    }
    Ok(None)
}

/// Mode form of the covariance relations with conformal dimension `h`.
///
/// With `Δ = h + μ`, `φ(z) = Σ φ(v_k) z^{−k−Δ}` and
/// `θ(z) = Σ φ(w_k) z^{−k−½−Δ}`, the four generating-function relations
/// `[L_n, φ] = (z^{n+1}∂ + h(n+1)z^n)φ`, `[G_{n−½}, φ] = z^n θ`,
/// `[L_n, θ] = (z^{n+1}∂ + (h+½)(n+1)z^n)θ`,
/// `[G_{n−½}, θ]_+ = (z^n ∂ + 2hn z^{n−1})φ` fix a coefficient for every
/// index. This compares those coefficients with the module's `L_n` and
/// `G_{n−½}` matrices on the interior of the window; it holds for all `n`
/// exactly when `h = 1 − λ`.
pub fn covariance_consistency(module: &DensityModule, n: i64, h: &Rational) -> Result<bool> {
    if n.abs() > module.window {
        return domain(format!("n = {n} exceeds window {}", module.window));
    }
    let delta = h + &module.mu;
    let half = rat(1, 2);
    let l = module.mode(Mode::L(n))?;
    let g = module.mode(Mode::g(2 * n - 1)?)?;
    let reach = 2 * n.abs() + 1;
    let nr = rat(n, 1);
    for (k, b) in l.basis.iter().enumerate() {
        if b.twice_index.abs() + reach > 2 * module.window {
            continue;
        }
        let idx = rat(b.twice_index, 2);
        // Coefficient of the source index in each relation.
        let (want_l, want_g) = match b.sector {
            Sector::V => (
                -(&idx + &nr) - &delta + h * (&nr + Rational::one()),
                Rational::one(),
            ),
            Sector::W => {
                let s = &nr - &half;
                let l_coeff = -(&idx + &nr) - &half - &delta + (h + &half) * (&nr + Rational::one());
                let g_coeff = -(&idx + &s) - &delta + h * rat(2, 1) * &nr;
                (l_coeff, g_coeff)
            }
        };
        let got = |img: &Image| match img {
            Image::Term(_, c) => Some(c.clone()),
            Image::OutOfWindow => None,
        };
        if got(&l.columns[k]) != Some(want_l) || got(&g.columns[k]) != Some(want_g) {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn module(lambda: Rational, mu: Rational, sigma: Sigma) -> DensityModule {
        DensityModule::new(lambda, mu, sigma, 12).unwrap()
    }

    fn v(t: i64) -> BasisVector {
        BasisVector { sector: Sector::V, twice_index: t }
    }

    fn w(t: i64) -> BasisVector {
        BasisVector { sector: Sector::W, twice_index: t }
    }

    #[test]
    fn mode_formulas() {
        let m = module(rat(1, 2), rat(0, 1), Sigma::Integer);
        let l0 = m.mode(Mode::L(0)).unwrap();
        for t in (-24..=24).step_by(2) {
            assert_eq!(l0.image(&v(t)), Some(&Image::Term(v(t), -rat(t, 2))));
        }
        let g = m.mode(Mode::g(1).unwrap()).unwrap();
        assert_eq!(g.image(&v(0)), Some(&Image::Term(w(1), rat(1, 1))));
        assert_eq!(g.image(&w(-1)), Some(&Image::Term(v(0), rat(1, 2))));
        assert_eq!(g.image(&w(23)), Some(&Image::Term(v(24), -rat(23, 2))));
        let g3 = m.mode(Mode::g(3).unwrap()).unwrap();
        assert_eq!(g3.image(&w(23)), Some(&Image::OutOfWindow));
        assert!(m.mode(Mode::L(13)).is_err());
        assert!(Mode::g(2).is_err());
    }

    #[test]
    fn anticommutator_on_v0() {
        // [G_{1/2}, G_{-1/2}]_+ v_0 = 2 L_0 v_0 = 0 at λ = ½, μ = 0.
        let m = module(rat(1, 2), rat(0, 1), Sigma::Integer);
        let gp = m.mode(Mode::g(1).unwrap()).unwrap();
        let gm = m.mode(Mode::g(-1).unwrap()).unwrap();
        let e: Vector = [(v(0), Rational::one())].into_iter().collect();
        let mut sum = gp.apply(&gm.apply(&e).unwrap()).unwrap();
        add_scaled(&mut sum, &gm.apply(&gp.apply(&e).unwrap()).unwrap(), &Rational::one());
        assert!(sum.is_empty());
    }

    #[test]
    fn virasoro_bracket_example() {
        let m = module(rat(3, 4), rat(1, 3), Sigma::Integer);
        assert!(check_relation(&m, Relation::LL { m: 1, n: -1 }).unwrap());
    }

    #[test]
    fn window_too_small() {
        let m = DensityModule::new(rat(0, 1), rat(0, 1), Sigma::Integer, 2).unwrap();
        assert!(check_relation(&m, Relation::LL { m: 2, n: 1 }).is_err());
        assert!(DensityModule::new(rat(0, 1), rat(0, 1), Sigma::Integer, 0).is_err());
    }

    #[test]
    fn all_relations_on_grid() {
        let lambdas = [rat(0, 1), rat(1, 2), rat(1, 1)];
        let mus = [rat(0, 1), rat(1, 3), rat(-2, 5)];
        for l in &lambdas {
            for mu in &mus {
                for sigma in [Sigma::Integer, Sigma::HalfInteger] {
                    let m = module(l.clone(), mu.clone(), sigma);
                    assert_eq!(first_failing_relation(&m, 3).unwrap(), None, "λ={l} μ={mu} σ={sigma}");
                }
            }
        }
    }

    #[test]
    fn grading_and_lattices() {
        for sigma in [Sigma::Integer, Sigma::HalfInteger] {
            let m = module(rat(1, 3), rat(1, 7), sigma);
            let basis = m.basis();
            for b in &basis {
                let p = b.twice_index.rem_euclid(2);
                match b.sector {
                    Sector::V => assert_eq!(p, sigma.value() as i64),
                    Sector::W => assert_eq!(p, 1 - sigma.value() as i64),
                }
            }
            for mode in [Mode::L(0), Mode::L(2), Mode::L(-3), Mode::g(1).unwrap(), Mode::g(-5).unwrap()] {
                assert!(m.mode(mode).unwrap().respects_grading());
            }
        }
    }

    #[test]
    fn perturbation_breaks_relations() {
        let m = module(rat(1, 2), rat(1, 3), Sigma::Integer);
        let bad = Perturbed {
            base: &m,
            mode: Mode::g(1).unwrap(),
            column: w(-1),
            value: rat(7, 3),
        };
        assert!(first_failing_relation(&bad, 3).unwrap().is_some());
    }

    #[test]
    fn covariance() {
        for sigma in [Sigma::Integer, Sigma::HalfInteger] {
            for l in [rat(0, 1), rat(1, 2), rat(1, 1)] {
                for mu in [rat(0, 1), rat(1, 3)] {
                    let m = module(l.clone(), mu, sigma);
                    let h = Rational::one() - &l;
                    for n in -3..=3 {
                        assert!(covariance_consistency(&m, n, &h).unwrap());
                    }
                    let wrong = &h + rat(1, 5);
                    assert!(!covariance_consistency(&m, 1, &wrong).unwrap());
                }
            }
        }
    }
}
