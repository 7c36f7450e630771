//! Fusion rings, quantum dimensions and subfactor indices of the
//! Neveu-Schwarz discrete series, computed through the SU(2) coset
//! construction and cross-checked against independent routes.
//!
//! Modules:
//!
//! - [`kac`]: exact conformal weights, Kac labels and the label involution.
//! - [`fusion`]: the SU(2) rings `R_ℓ`, their tensor products and the
//!   Neveu-Schwarz ring `T_m`, with brute-force ring-axiom checks.
//! - [`qdim`]: quantum dimensions from sine ratios and from Perron-Frobenius
//!   eigenvectors, subfactor indices, β saturation.
//! - [`fields`]: constructibility of primary fields, adjacency sets,
//!   braiding supports and phases.
//! - [`density`]: exact mode-level checks on the density modules `F^σ_{λ,μ}`.
//! - [`fuchsian`]: Frobenius bases, continuation and transport matrices of
//!   Fuchsian systems `f' = (P/z + Q/(1-z)) f`.
//! - [`graded`]: finite-dimensional Z2-graded matrix algebras, commutants and
//!   supercommutants.
//! - [`suite`]: the invariant sweep behind `fusionkit verify`.

pub mod density;
pub mod error;
pub mod fields;
pub mod fuchsian;
pub mod fusion;
pub mod graded;
pub mod kac;
pub mod qdim;
pub mod suite;

pub use error::{Error, Result};
pub use kac::{KacLabel, Level, NSLabel, Rational, Spin};
