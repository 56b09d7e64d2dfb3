//! Numerical tolerances shared by every check in the crate.

/// Identity checks on unit-scale data.
pub const IDENTITY: f64 = 1e-10;

/// Relative tolerance for quantities that scale with α and δ.
pub const RELATIVE: f64 = 1e-8;

/// Maximum asymmetry accepted when an operator is assembled.
pub const SYMMETRY: f64 = 1e-12;

/// Residual threshold below which a form counts as an eigenform.
pub const EIGENFORM: f64 = 1e-8;

/// Per-eigenvalue tolerance for multiset spectrum comparison.
pub const SPECTRUM: f64 = 1e-7;

/// Gap separating eigenvalue clusters when counting multiplicities.
pub const CLUSTER_GAP: f64 = 1e-6;

/// Off-block coupling allowed for operators that preserve the splitting.
pub const BLOCK_COUPLING: f64 = 1e-9;

/// Floor for non-negativity: `λ_min > -NONNEGATIVE` counts as `≥ 0`.
pub const NONNEGATIVE: f64 = 1e-9;

/// Strict positivity requires `λ_min > STRICT_POSITIVE * ‖R^g‖_max`.
pub const STRICT_POSITIVE: f64 = 1e-9;

/// Scale for a relative tolerance: `max(1, |x|)`.
pub fn scale(x: f64) -> f64 {
    x.abs().max(1.0)
}
