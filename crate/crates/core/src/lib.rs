//! Pointwise algebraic models of 3-(α,δ)-Sasaki manifolds.
//!
//! Every curvature and torsion object of the geometry is assembled as a
//! symmetric operator on 2-forms over an adapted orthonormal frame of
//! `ℝ^{4n+3}`. The crate is organised bottom-up:
//!
//! - [`exterior`]: p-forms (p ≤ 4), wedge products, the 4-form ↔ operator
//!   correspondence, the Bianchi split and the Kulkarni–Nomizu product.
//! - [`structure`]: parameters, the adapted-frame point model and the
//!   orthogonal splitting `Λ² = Λ²₁ ⊕ Λ²₂ ⊕ Λ²₃`.
//! - [`torsion`]: torsion of the canonical connection, `σ_T`, `dT`, `G_T`, `S_T`.
//! - [`curvature`]: `R⊥`, `R_par`, the canonical and Riemannian curvature
//!   operators, the base model `R^{g_N}` and the Ricci tensor.
//! - [`spectral`]: eigendecomposition and eigenform / Einstein verification.
//! - [`positivity`]: block analysis and strong positivity certificates.
//! - [`homogeneous`]: structure-constant models `G/H` and their pointwise frame.

pub mod curvature;
pub mod error;
pub mod exterior;
pub mod homogeneous;
pub mod positivity;
pub mod report;
pub mod spectral;
pub mod structure;
pub mod tolerance;
pub mod torsion;

pub use error::{Error, Result};
pub use nalgebra;
