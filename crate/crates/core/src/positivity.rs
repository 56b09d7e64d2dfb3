//! Strong positivity and strong non-negativity certificates.
//!
//! A metric is strongly positive when some 4-form `ω` makes `𝓡^g + ω`
//! positive definite. Since `⟨ω(σ), σ⟩ = 0` on decomposable `σ`, this still
//! bounds sectional curvature.

use nalgebra::{DMatrix, Matrix2};
use serde::Serialize;

use crate::curvature::CurvatureSuite;
use crate::error::{Error, Result};
use crate::exterior::{fourform_as_operator, multi_indices, PForm, SymOp};
use crate::spectral::{spectrum, spectrum_of_matrix};
use crate::structure::{lambda2_split, Lambda2Split, Params, PointModel};
use crate::tolerance;

/// The three diagonal blocks of an operator in the split bases.
#[derive(Debug, Clone, PartialEq)]
pub struct BlockDecomposition {
    pub blocks: [DMatrix<f64>; 3],
    /// Largest entry coupling different blocks.
    pub coupling: f64,
}

impl BlockDecomposition {
    pub fn minima(&self) -> [f64; 3] {
        [0, 1, 2].map(|b| block_min(&self.blocks[b]))
    }
}

fn block_min(m: &DMatrix<f64>) -> f64 {
    if m.nrows() == 0 {
        return f64::INFINITY;
    }
    spectrum_of_matrix(m).map(|s| s.min()).unwrap_or(f64::NAN)
}

pub fn block_decompose(op: &SymOp, split: &Lambda2Split) -> BlockDecomposition {
    let full = op.restrict(&split.full_basis());
    let (d1, d2, d3) = split.dims();
    let offsets = [0, d1, d1 + d2];
    let sizes = [d1, d2, d3];
    let blocks = [0, 1, 2].map(|b| full.view((offsets[b], offsets[b]), (sizes[b], sizes[b])).into_owned());
    let mut coupling: f64 = 0.0;
    for a in 0..3 {
        for b in 0..3 {
            if a != b && sizes[a] > 0 && sizes[b] > 0 {
                coupling = coupling.max(full.view((offsets[a], offsets[b]), (sizes[a], sizes[b])).amax());
            }
        }
    }
    BlockDecomposition { blocks, coupling }
}

/// `αβR⊥ + ¼G_T + ν_p` on `N_i` in the basis `{Φ_i^H/√(2n), ξ_jk}`.
pub fn ni_block(params: &Params, nu_p: f64) -> Matrix2<f64> {
    let (a, d, n) = (params.alpha(), params.delta(), params.n() as f64);
    let off = -(2.0 * n).sqrt() * a * (3.0 * d - 4.0 * a);
    Matrix2::new(2.0 * n * a * (2.0 * d - 3.0 * a) + nu_p, off, off, d * d)
}

/// Closed forms `(trace, determinant)` of [`ni_block`].
pub fn ni_invariants(params: &Params, nu_p: f64) -> (f64, f64) {
    let (a, d, n) = (params.alpha(), params.delta(), params.n() as f64);
    (
        2.0 * n * a * (2.0 * d - 3.0 * a) + d * d + nu_p,
        4.0 * n * a * (d - 2.0 * a).powi(3) + d * d * nu_p,
    )
}

/// Smallest eigenvalue of a symmetric 2×2 matrix.
pub fn min_eigenvalue_2x2(m: &Matrix2<f64>) -> f64 {
    let tr = m[(0, 0)] + m[(1, 1)];
    let diff = m[(0, 0)] - m[(1, 1)];
    0.5 * (tr - (diff * diff + 4.0 * m[(0, 1)] * m[(1, 0)]).sqrt())
}

/// The three polynomial conditions on `(α, δ, ν)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PositivityConditions {
    /// `δ² + 4nαδ − 6nα² + ν`.
    pub trace: f64,
    /// `4nα(δ − 2α)³ + δ²ν`.
    pub determinant: f64,
    /// `δ − 2α`.
    pub delta_gap: f64,
}

impl PositivityConditions {
    pub fn new(params: &Params, nu: f64) -> Self {
        let (a, d, n) = (params.alpha(), params.delta(), params.n() as f64);
        Self {
            trace: d * d + 4.0 * n * a * d - 6.0 * n * a * a + nu,
            determinant: 4.0 * n * a * (d - 2.0 * a).powi(3) + d * d * nu,
            delta_gap: d - 2.0 * a,
        }
    }

    pub fn strict(&self) -> (bool, bool, bool) {
        (self.trace > 0.0, self.determinant > 0.0, self.delta_gap > 0.0)
    }

    pub fn non_strict(&self) -> (bool, bool, bool) {
        (self.trace >= 0.0, self.determinant >= 0.0, self.delta_gap >= 0.0)
    }
}

pub fn positivity_conditions(params: &Params, nu: f64) -> (bool, bool, bool) {
    PositivityConditions::new(params, nu).strict()
}

/// A horizontal 4-form whose operator has `span{Φ_i^H}` inside one eigenspace.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AdaptedFourForm {
    #[serde(skip)]
    pub omega: PForm,
    /// Smallest eigenvalue of the operator on `Λ²H`.
    pub nu_min: f64,
    /// Eigenvalue on `span{Φ_i^H}`.
    pub q_eigenvalue: f64,
}

impl AdaptedFourForm {
    pub fn new(model: &PointModel, omega: PForm) -> Result<Self> {
        if omega.degree() != 4 || omega.dim() != model.dim() {
            return Err(Error::InvalidInput("adapted form must be a 4-form on the model".into()));
        }
        let tol = tolerance::BLOCK_COUPLING * tolerance::scale(omega.max_abs());
        let vertical_leg = multi_indices(model.dim(), 4)
            .iter()
            .zip(omega.coeffs())
            .filter(|(q, _)| q[0] < 3)
            .map(|(_, c)| c.abs())
            .fold(0.0, f64::max);
        if vertical_leg > tol {
            return Err(Error::Constraint(format!(
                "4-form is not horizontal (vertical component {vertical_leg:e})"
            )));
        }
        let op = fourform_as_operator(&omega)?;
        let first = model.horizontal_fundamental(0);
        let q_eigenvalue = op.pairing(first, first) / first.norm_squared();
        for i in 0..3 {
            let f = model.horizontal_fundamental(i);
            let residual = (&op.apply(f) - &f.scaled(q_eigenvalue)).norm() / f.norm();
            if residual > tol {
                return Err(Error::Constraint(format!(
                    "quaternionic bundle is not an eigenspace (residual {residual:e} at i = {})",
                    i + 1
                )));
            }
        }
        let split = lambda2_split(model);
        let horizontal = DMatrix::from_fn(model.dim2(), 3 + split.basis2.ncols(), |r, c| {
            if c < 3 {
                split.basis1[(r, 2 * c)]
            } else {
                split.basis2[(r, c - 3)]
            }
        });
        let nu_min = block_min(&op.restrict(&horizontal));
        Ok(Self {
            omega,
            nu_min,
            q_eigenvalue,
        })
    }

    /// `c · Σ Φ_i^H ∧ Φ_i^H`.
    pub fn quaternionic(model: &PointModel, c: f64) -> Self {
        let mut omega = PForm::zeros(model.dim(), 4).expect("dim >= 4");
        for i in 0..3 {
            let f = model.horizontal_fundamental(i);
            omega = &omega + &f.wedge(f).expect("degree 4");
        }
        Self::new(model, omega.scaled(c)).expect("the fundamental 4-form is adapted")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ModifierKind {
    /// No 4-form; certifies `𝓡^g` itself.
    None,
    /// `−(¼ + ε) σ_T`.
    SigmaOnly,
    /// `(αδ/4) Σ Φ_i^H∧Φ_i^H − (¼ + ε) σ_T`.
    SphereLike,
    /// A supplied adapted form plus `−(¼ + ε) σ_T`.
    Custom,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Modifier {
    pub kind: ModifierKind,
    pub epsilon: f64,
    pub adapted: Option<AdaptedFourForm>,
    pub form: PForm,
}

impl Modifier {
    pub fn new(model: &PointModel, kind: ModifierKind, adapted: Option<AdaptedFourForm>, epsilon: f64) -> Result<Self> {
        if !epsilon.is_finite() || epsilon < 0.0 {
            return Err(Error::InvalidInput(format!("epsilon must be a finite non-negative number, got {epsilon}")));
        }
        if kind == ModifierKind::None {
            return Ok(Self {
                kind,
                epsilon: 0.0,
                adapted: None,
                form: PForm::zeros(model.dim(), 4)?,
            });
        }
        let adapted = match kind {
            ModifierKind::None | ModifierKind::SigmaOnly => None,
            ModifierKind::SphereLike => {
                let p = model.params();
                Some(AdaptedFourForm::quaternionic(model, p.alpha() * p.delta() / 4.0))
            }
            ModifierKind::Custom => Some(
                adapted.ok_or_else(|| Error::InvalidInput("custom modifier needs an adapted 4-form".into()))?,
            ),
        };
        let sigma = crate::torsion::sigma_t(model);
        let mut form = sigma.scaled(-(0.25 + epsilon));
        if let Some(a) = &adapted {
            form = &form + &a.omega;
        }
        Ok(Self {
            kind,
            epsilon,
            adapted,
            form,
        })
    }

    fn nu_p(&self) -> f64 {
        self.adapted.as_ref().map_or(0.0, |a| a.q_eigenvalue)
    }
}

pub fn canonical_modifier(model: &PointModel, kind: ModifierKind, epsilon: f64) -> Result<PForm> {
    if kind == ModifierKind::Custom {
        return Err(Error::InvalidInput("custom modifiers need an adapted 4-form".into()));
    }
    Ok(Modifier::new(model, kind, None, epsilon)?.form)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    StronglyPositive,
    StronglyNonnegative,
    Fail,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NiEvidence {
    pub trace: f64,
    pub determinant: f64,
    pub formula_trace: f64,
    pub formula_determinant: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BlockEvidence {
    /// Minimal eigenvalues of the modified operator on `Λ²₁, Λ²₂, Λ²₃`.
    pub block_minima: [f64; 3],
    pub coupling: f64,
    /// `(αβR⊥ + ¼G_T + ω)` on each `N_i`, without the `ε` term.
    pub ni: Vec<NiEvidence>,
    /// Largest `|⟨ω(σ), σ⟩|` over frame 2-planes.
    pub sectional_shift: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PositivityCertificate {
    pub verdict: Verdict,
    pub modifier: ModifierKind,
    pub epsilon: f64,
    pub nu_min: Option<f64>,
    pub q_eigenvalue: Option<f64>,
    pub lambda_min: f64,
    pub threshold: f64,
    pub block_evidence: BlockEvidence,
}

impl PositivityCertificate {
    pub fn certified(&self) -> bool {
        self.verdict != Verdict::Fail
    }
}

/// Classifies `λ_min(𝓡^g + ω)`.
pub fn certify(suite: &CurvatureSuite, model: &PointModel, modifier: &Modifier) -> PositivityCertificate {
    let omega = fourform_as_operator(&modifier.form).expect("degree 4");
    let modified = &suite.riemannian + &omega;
    let lambda_min = spectrum(&modified).min();
    let threshold = tolerance::STRICT_POSITIVE * suite.riemannian.max_abs();
    let verdict = if lambda_min > threshold {
        Verdict::StronglyPositive
    } else if lambda_min > -tolerance::NONNEGATIVE {
        Verdict::StronglyNonnegative
    } else {
        Verdict::Fail
    };

    let split = lambda2_split(model);
    let blocks = block_decompose(&modified, &split);
    let p = model.params();
    let (ft, fd) = ni_invariants(p, modifier.nu_p());
    let base = &(&suite.canonical + &suite.torsion.gram.scaled(0.25))
        + &modifier
            .adapted
            .as_ref()
            .map(|a| fourform_as_operator(&a.omega).expect("degree 4"))
            .unwrap_or_else(|| SymOp::zeros(model.dim()));
    let ni = (0..3)
        .map(|i| {
            let m = base.restrict(&split.ni_basis(i));
            NiEvidence {
                trace: m.trace(),
                determinant: m[(0, 0)] * m[(1, 1)] - m[(0, 1)] * m[(1, 0)],
                formula_trace: ft,
                formula_determinant: fd,
            }
        })
        .collect();
    let d = model.dim();
    let mut sectional_shift: f64 = 0.0;
    for a in 0..d {
        for b in (a + 1)..d {
            sectional_shift = sectional_shift.max(omega.entry(a, b, a, b).abs());
        }
    }

    PositivityCertificate {
        verdict,
        modifier: modifier.kind,
        epsilon: modifier.epsilon,
        nu_min: modifier.adapted.as_ref().map(|a| a.nu_min),
        q_eigenvalue: modifier.adapted.as_ref().map(|a| a.q_eigenvalue),
        lambda_min,
        threshold,
        block_evidence: BlockEvidence {
            block_minima: blocks.minima(),
            coupling: blocks.coupling,
            ni,
            sectional_shift,
        },
    }
}

/// Halves `ε` from `|αβ|/10` until the modified operator is strictly positive.
/// Falls back to `ε = 0` when no tried value certifies strict positivity.
pub fn certify_auto(
    suite: &CurvatureSuite,
    model: &PointModel,
    kind: ModifierKind,
    adapted: Option<AdaptedFourForm>,
) -> Result<PositivityCertificate> {
    let p = model.params();
    let mut eps = (p.alpha() * p.beta()).abs() / 10.0;
    if eps > 0.0 && kind != ModifierKind::None {
        for _ in 0..60 {
            let m = Modifier::new(model, kind, adapted.clone(), eps)?;
            let cert = certify(suite, model, &m);
            if cert.verdict == Verdict::StronglyPositive {
                return Ok(cert);
            }
            eps *= 0.5;
        }
    }
    let m = Modifier::new(model, kind, adapted, 0.0)?;
    Ok(certify(suite, model, &m))
}

/// Fatness operator `F = (δ²/4α²) G₃` in the `Λ²₃` basis.
pub fn fatness_operator(model: &PointModel, suite: &CurvatureSuite) -> DMatrix<f64> {
    let p = model.params();
    let split = lambda2_split(model);
    suite.torsion.gram.restrict(&split.basis3) * (p.delta() * p.delta() / (4.0 * p.alpha() * p.alpha()))
}

/// `F + τ` with `τ = −ε σ_T` restricted to `Λ²₃`.
pub fn fatness_with_tau(model: &PointModel, suite: &CurvatureSuite, epsilon: f64) -> DMatrix<f64> {
    let split = lambda2_split(model);
    fatness_operator(model, suite) - suite.torsion.sigma_operator.restrict(&split.basis3) * epsilon
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn setup(n: usize, a: f64, d: f64) -> (PointModel, CurvatureSuite) {
        let m = PointModel::build(Params::new(n, a, d).unwrap());
        let s = CurvatureSuite::new(&m);
        (m, s)
    }

    #[test]
    fn invariant_operators_are_block_diagonal() {
        for (n, a, d) in [(1, 1.0, 3.0), (2, -0.5, 1.2)] {
            let (m, s) = setup(n, a, d);
            let split = lambda2_split(&m);
            for op in [&s.canonical, &s.torsion.gram, &s.torsion.sigma_operator] {
                assert!(block_decompose(op, &split).coupling < 1e-9);
            }
            let g = block_decompose(&s.torsion.gram, &split);
            assert!(g.blocks[1].amax() < 1e-12);
            assert!(block_decompose(&s.canonical, &split).blocks[2].amax() < 1e-12);
            let omega = AdaptedFourForm::quaternionic(&m, 0.7);
            let op = fourform_as_operator(&omega.omega).unwrap();
            assert!(block_decompose(&op, &split).coupling < 1e-9);
            let assembled = &(&s.canonical + &s.torsion.gram.scaled(0.25)) + &op;
            assert!(block_decompose(&assembled, &split).coupling < 1e-9);
        }
    }

    #[test]
    fn random_operator_couples_blocks() {
        let (m, _) = setup(1, 1.0, 1.0);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let raw = DMatrix::from_fn(21, 21, |_, _| rng.gen_range(-1.0..1.0));
        let op = SymOp::from_matrix(7, (&raw + raw.transpose()) * 0.5).unwrap();
        assert!(block_decompose(&op, &lambda2_split(&m)).coupling > 1e-3);
    }

    #[test]
    fn ni_block_matches_assembled_operator() {
        for (n, a, d) in [(1, 1.0, 3.0), (2, 0.6, -1.1), (3, -1.0, 2.0)] {
            let (m, s) = setup(n, a, d);
            let split = lambda2_split(&m);
            let op = &s.canonical + &s.torsion.gram.scaled(0.25);
            let want = ni_block(m.params(), 0.0);
            for i in 0..3 {
                let got = op.restrict(&split.ni_basis(i));
                let want = DMatrix::from_fn(2, 2, |r, c| want[(r, c)]);
                assert!((got - want).amax() < 1e-10);
            }
        }
        let p = Params::new(1, 1.0, 3.0).unwrap();
        let (tr, det) = ni_invariants(&p, 0.0);
        assert!((tr - 15.0).abs() < 1e-12 && (det - 4.0).abs() < 1e-12);
        let b = ni_block(&p, 0.0);
        assert!((b.trace() - tr).abs() < 1e-12 && (b.determinant() - det).abs() < 1e-10);
    }

    #[test]
    fn ni_block_positive_iff_alpha_beta_positive() {
        for (a, d) in [(1.0, 3.0), (1.0, 1.0), (-1.0, -3.0), (-1.0, 0.5), (2.0, 4.0)] {
            let p = Params::new(2, a, d).unwrap();
            let ab = p.alpha() * p.beta();
            let lam = min_eigenvalue_2x2(&ni_block(&p, 0.0));
            assert_eq!(lam > 1e-12, ab > 0.0, "a={a} d={d}");
        }
    }

    #[test]
    fn polynomial_conditions() {
        let p = Params::new(1, 1.0, 3.0).unwrap();
        assert_eq!(positivity_conditions(&p, 0.0), (true, true, true));
        let p = Params::new(1, 1.0, 2.0).unwrap();
        let (_, det, gap) = positivity_conditions(&p, 0.0);
        assert!(!det && !gap);
        let (_, det, _) = positivity_conditions(&p, -0.5);
        assert!(!det);
        for ratio in [10.0, 50.0, 200.0] {
            let p = Params::new(2, 1.0, ratio).unwrap();
            assert_eq!(positivity_conditions(&p, -5.0), (true, true, true));
        }
    }

    #[test]
    fn sphere_modifier_is_adapted() {
        let (m, _) = setup(1, 1.0, 1.0);
        let a = AdaptedFourForm::quaternionic(&m, 0.25);
        assert!((a.q_eigenvalue - 1.5).abs() < 1e-12);
        for (n, al, de) in [(2, 0.5, 2.0), (3, 1.0, -1.0)] {
            let (m, _) = setup(n, al, de);
            let c = al * de / 4.0;
            let a = AdaptedFourForm::quaternionic(&m, c);
            assert!((a.q_eigenvalue - al * de / 2.0 * (2 * n + 1) as f64).abs() < 1e-12);
            assert!(a.q_eigenvalue >= a.nu_min - 1e-9);
        }
    }

    #[test]
    fn non_adapted_forms_are_rejected() {
        let (m, _) = setup(1, 1.0, 1.0);
        let vertical = PForm::basis(7, &[0, 3, 4, 5]).unwrap();
        assert!(matches!(AdaptedFourForm::new(&m, vertical), Err(Error::Constraint(_))));
        let (m, _) = setup(2, 1.0, 1.0);
        let skew = PForm::basis(11, &[3, 4, 7, 8]).unwrap();
        assert!(matches!(AdaptedFourForm::new(&m, skew), Err(Error::Constraint(_))));
    }

    #[test]
    fn modifier_forms() {
        let (m, _) = setup(1, 1.0, 1.0);
        assert!(matches!(
            canonical_modifier(&m, ModifierKind::SigmaOnly, -0.1),
            Err(Error::InvalidInput(_))
        ));
        let base = canonical_modifier(&m, ModifierKind::SigmaOnly, 0.0).unwrap();
        let sigma = crate::torsion::sigma_t(&m);
        assert!((&base + &sigma.scaled(0.25)).max_abs() < 1e-14);
        let sphere = canonical_modifier(&m, ModifierKind::SphereLike, 0.0).unwrap();
        let diff = &sphere - &base;
        let op = fourform_as_operator(&diff).unwrap();
        let norms: Vec<f64> = (0..3).map(|i| op.apply(m.horizontal_fundamental(i)).norm()).collect();
        assert!((norms[0] - norms[1]).abs() < 1e-12 && (norms[1] - norms[2]).abs() < 1e-12);
    }

    #[test]
    fn unmodified_round_sphere() {
        let (m, s) = setup(1, 1.0, 1.0);
        let cert = certify_auto(&s, &m, ModifierKind::None, None).unwrap();
        assert_eq!(cert.verdict, Verdict::StronglyPositive);
        assert_eq!(cert.epsilon, 0.0);
        assert!((cert.lambda_min - 1.0).abs() < 1e-12);
    }

    #[test]
    fn sphere_is_strongly_positive_when_alpha_beta_positive() {
        for n in 1..=2 {
            let (m, s) = setup(n, 1.0, 3.0);
            let modifier = Modifier::new(&m, ModifierKind::SphereLike, None, 0.01).unwrap();
            let cert = certify(&s, &m, &modifier);
            assert_eq!(cert.verdict, Verdict::StronglyPositive, "n={n}: {cert:?}");
            assert!(cert.block_evidence.coupling < 1e-9);
            assert!(cert.block_evidence.sectional_shift < 1e-12);
            let ni = &cert.block_evidence.ni[0];
            assert!((ni.trace - ni.formula_trace).abs() < 1e-9);
            assert!((ni.determinant - ni.formula_determinant).abs() < 1e-8);
        }
    }

    #[test]
    fn negative_alpha_beta_fails() {
        let (m, s) = setup(1, 1.0, 1.0);
        let modifier = Modifier::new(&m, ModifierKind::SigmaOnly, None, 0.0).unwrap();
        let cert = certify(&s, &m, &modifier);
        assert_eq!(cert.verdict, Verdict::Fail);
        assert!(cert.block_evidence.block_minima[0] < 0.0);
        assert!(cert.block_evidence.ni[0].determinant < 0.0);
    }

    #[test]
    fn nonnegative_with_quarter_sigma() {
        let (m, s) = setup(1, 1.0, 2.5);
        let modifier = Modifier::new(&m, ModifierKind::SigmaOnly, None, 0.0).unwrap();
        let cert = certify(&s, &m, &modifier);
        assert_eq!(cert.verdict, Verdict::StronglyNonnegative, "{cert:?}");
        assert!(cert.lambda_min >= -1e-9);
    }

    #[test]
    fn automatic_epsilon() {
        let (m, s) = setup(1, 1.0, 3.0);
        let cert = certify_auto(&s, &m, ModifierKind::SphereLike, None).unwrap();
        assert_eq!(cert.verdict, Verdict::StronglyPositive);
        assert!(cert.epsilon > 0.0 && cert.epsilon <= 0.2);
        let (m, s) = setup(1, 1.0, 1.0);
        let cert = certify_auto(&s, &m, ModifierKind::SphereLike, None).unwrap();
        assert_eq!(cert.verdict, Verdict::Fail);
        assert_eq!(cert.epsilon, 0.0);
    }

    #[test]
    fn small_volume_form_modifier() {
        // n = 1: ω = −t dVol_N is adapted with ν = −t.
        let (m, s) = setup(1, 1.0, 3.0);
        let t = 0.1;
        let omega = PForm::basis(7, &[3, 4, 5, 6]).unwrap().scaled(-t);
        let a = AdaptedFourForm::new(&m, omega).unwrap();
        assert!((a.nu_min + t).abs() < 1e-12);
        let values = PositivityConditions::new(m.params(), a.nu_min);
        assert_eq!(values.non_strict(), (true, true, true));
        let modifier = Modifier::new(&m, ModifierKind::Custom, Some(a), 0.0).unwrap();
        let cert = certify(&s, &m, &modifier);
        assert!(cert.certified(), "{cert:?}");
    }

    #[test]
    fn fatness() {
        for n in 1..=2 {
            let (m, s) = setup(n, 1.0, 3.0);
            let f = fatness_operator(&m, &s);
            let c = spectrum_of_matrix(&f).unwrap().clusters();
            assert_eq!(c.len(), 2);
            assert!(c[0].value.abs() < 1e-10 && c[0].multiplicity == 8 * n);
            assert!((c[1].value - 27.0).abs() < 1e-10 && c[1].multiplicity == 4 * n);
            assert!(spectrum_of_matrix(&fatness_with_tau(&m, &s, 1e-3)).unwrap().min() > 0.0);
            assert!(spectrum_of_matrix(&fatness_with_tau(&m, &s, 0.0)).unwrap().min().abs() < 1e-10);
        }
        let (m, s) = setup(1, 1.0, 1.0);
        assert!(spectrum_of_matrix(&fatness_with_tau(&m, &s, 1e-3)).unwrap().min() < 0.0);
    }
}
