//! Verification suites and the per-point summary shared with `sweep`.

use serde::Serialize;
use serde_json::{json, Value};

use sasaki_core::curvature::{compare_ricci, curvature_tensor_identities, r1_report, CurvatureSuite};
use sasaki_core::exterior::{fourform_as_operator, SymOp};
use sasaki_core::homogeneous::{verify_homogeneous_identities, LieModel};
use sasaki_core::positivity::{
    block_decompose, certify, certify_auto, min_eigenvalue_2x2, ni_block, AdaptedFourForm, PositivityConditions,
    Modifier, ModifierKind, PositivityCertificate,
};
use sasaki_core::report::{CheckReport, Residual};
use sasaki_core::spectral::{
    einstein_classify, spectrum, spectrum_relations, verify_canonical_eigenforms, verify_einstein_equivalence,
    Cluster, EinsteinClass,
};
use sasaki_core::structure::{check_structure_axioms, expected_split_dims, lambda2_split, PointModel};
use sasaki_core::tolerance;
use sasaki_core::torsion::{operator_gram_explicit, TorsionPackage};

use crate::config::{CheckName, Epsilon, ModifierChoice, RunConfig};
use crate::error::{config, CliResult};
use crate::model::{load_form, Loaded};

#[derive(Debug, Clone, Serialize)]
pub struct SuiteResult {
    pub name: CheckName,
    pub passed: bool,
    pub checks: Vec<Residual>,
    pub data: Value,
}

impl SuiteResult {
    fn new(name: CheckName, report: CheckReport, data: Value) -> Self {
        Self {
            name,
            passed: report.passed(),
            checks: report.checks,
            data,
        }
    }
}

fn flag(report: &mut CheckReport, name: &str, ok: bool) {
    report.push(name, if ok { 0.0 } else { 1.0 }, 0.5);
}

fn clusters(op: &SymOp) -> Vec<Cluster> {
    spectrum(op).clusters()
}

fn structure(model: &PointModel) -> SuiteResult {
    let mut report = check_structure_axioms(model);
    let dims = lambda2_split(model).dims();
    flag(&mut report, "Lambda^2 split dimensions", dims == expected_split_dims(model.n()));
    SuiteResult::new(
        CheckName::Structure,
        report,
        json!({ "dim": model.dim(), "split_dims": [dims.0, dims.1, dims.2], "convention": model.convention() }),
    )
}

fn torsion(model: &PointModel, t: &TorsionPackage) -> SuiteResult {
    let mut report = CheckReport::default();
    let scale = tolerance::scale(t.gram.max_abs());
    report.push(
        "dT = 2 sigma_T",
        (&t.exterior_derivative - &t.sigma.scaled(2.0)).max_abs(),
        tolerance::IDENTITY * scale,
    );
    report.push(
        "G_T from torsion map = G_T from frame formulas",
        t.gram.distance(&operator_gram_explicit(model)),
        tolerance::IDENTITY * scale,
    );
    let gram = spectrum(&t.gram);
    report.push("G_T positive semidefinite", (-gram.min()).max(0.0), tolerance::NONNEGATIVE * scale);
    SuiteResult::new(
        CheckName::Torsion,
        report,
        json!({
            "sigma_t_norm": t.sigma.norm(),
            "gram_spectrum": gram.clusters(),
            "sigma_operator_spectrum": clusters(&t.sigma_operator),
        }),
    )
}

fn curvature(model: &PointModel, suite: &CurvatureSuite, has_r1: bool) -> CliResult<SuiteResult> {
    let mut report = curvature_tensor_identities(model, &suite.canonical);
    let ricci = compare_ricci(model, &suite.riemannian);
    report.push(
        "Ricci tensor matches closed form",
        ricci.max_deviation,
        tolerance::IDENTITY * tolerance::scale(suite.riemannian.max_abs()),
    );
    if has_r1 {
        report.extend(r1_report(model, &suite.r1)?);
    }
    Ok(SuiteResult::new(
        CheckName::Curvature,
        report,
        json!({ "ricci": ricci, "nu_scal": suite.nu_scal }),
    ))
}

fn spectra(model: &PointModel, suite: &CurvatureSuite) -> SuiteResult {
    let eig = verify_canonical_eigenforms(suite, model);
    let mut report = eig.checks;
    let rel = spectrum_relations(suite, model);
    report.push("Spec R = Spec R_par with 2 alpha beta (n+2)", rel.canonical_multiset_gap, tolerance::SPECTRUM);
    report.push("Spec R^gN = Spec R_par with 4 alpha delta n", rel.base_multiset_gap, tolerance::SPECTRUM);
    flag(&mut report, "spectrum sets agree", rel.canonical_sets_agree && rel.base_sets_agree);
    SuiteResult::new(
        CheckName::Spectra,
        report,
        json!({
            "canonical": eig.spectrum.clusters,
            "distinguished_forms": eig.spectrum.distinguished,
            "riemannian": clusters(&suite.riemannian),
            "base": clusters(&suite.base),
            "r_par": clusters(&suite.r_par),
        }),
    )
}

fn einstein(model: &PointModel, suite: &CurvatureSuite) -> SuiteResult {
    let e = verify_einstein_equivalence(suite, model);
    let data = json!({
        "classification": e.classification,
        "ricci_isotropic": e.ricci_isotropic,
        "first_sum": e.first_sum,
        "first_sum_closed": e.first_sum_closed,
        "second_combination": e.second_combination,
        "second_combination_closed": e.second_combination_closed,
        "first_triple": e.first_triple,
        "second_triple": e.second_triple,
    });
    SuiteResult::new(CheckName::Einstein, e.checks, data)
}

/// Builds the configured modifier and certifies.
pub fn run_certificate(cfg: &RunConfig, loaded: &Loaded) -> CliResult<PositivityCertificate> {
    let model = &loaded.point;
    let (kind, adapted) = match cfg.modifier_choice() {
        ModifierChoice::None => (ModifierKind::None, None),
        ModifierChoice::SigmaOnly => (ModifierKind::SigmaOnly, None),
        ModifierChoice::SphereLike => (ModifierKind::SphereLike, None),
        ModifierChoice::Custom => {
            let path = cfg
                .modifier_form
                .as_ref()
                .ok_or_else(|| config("--modifier custom needs --modifier-form"))?;
            let omega = load_form(path, model)?;
            (ModifierKind::Custom, Some(AdaptedFourForm::new(model, omega)?))
        }
    };
    Ok(match cfg.epsilon_choice() {
        Epsilon::Auto => certify_auto(&loaded.suite, model, kind, adapted)?,
        Epsilon::Fixed(eps) => certify(&loaded.suite, model, &Modifier::new(model, kind, adapted, eps)?),
    })
}

fn positivity(cfg: &RunConfig, loaded: &Loaded) -> CliResult<SuiteResult> {
    let (model, suite) = (&loaded.point, &loaded.suite);
    let p = model.params();
    let split = lambda2_split(model);
    let certificate = run_certificate(cfg, loaded)?;
    let mut report = CheckReport::default();
    let modifier = fourform_as_operator(&Modifier::new(model, ModifierKind::SphereLike, None, 0.0)?.form)?;
    for (name, op) in [
        ("R", &suite.canonical),
        ("G_T", &suite.torsion.gram),
        ("S_T", &suite.torsion.sigma_operator),
        ("sphere-like modifier", &modifier),
    ] {
        let scale = tolerance::scale(op.max_abs());
        report.push(
            format!("{name} is block diagonal"),
            block_decompose(op, &split).coupling,
            tolerance::BLOCK_COUPLING * scale,
        );
    }
    let g_scale = tolerance::scale(suite.torsion.gram.max_abs());
    report.push(
        "G_T vanishes on Lambda^2_2",
        suite.torsion.gram.restrict(&split.basis2).amax(),
        tolerance::BLOCK_COUPLING * g_scale,
    );
    let ni = certificate
        .block_evidence
        .ni
        .iter()
        .map(|e| (e.trace - e.formula_trace).abs().max((e.determinant - e.formula_determinant).abs()))
        .fold(0.0, f64::max);
    report.push(
        "N_i trace and determinant match closed form",
        ni,
        tolerance::RELATIVE * tolerance::scale(suite.riemannian.max_abs()).powi(2),
    );
    let summary = summarize(model, suite);
    flag(&mut report, "Lambda^2_1 block sign follows alpha beta", summary.block_sign_follows_alpha_beta);
    let data = json!({
        "certificate": certificate,
        "conditions": summary.conditions,
        "ni_min": summary.ni_min,
        "alpha_beta": p.alpha() * p.beta(),
    });
    Ok(SuiteResult::new(CheckName::Positivity, report, data))
}

fn homogeneous(lm: &LieModel) -> SuiteResult {
    let report = verify_homogeneous_identities(lm);
    SuiteResult::new(
        CheckName::Homogeneous,
        report,
        json!({
            "label": lm.label,
            "dim_g": lm.data.algebra.dim(),
            "dim_m": lm.dim_m(),
            "compact": lm.compact,
        }),
    )
}

pub fn run_suite(name: CheckName, cfg: &RunConfig, loaded: &Loaded) -> CliResult<SuiteResult> {
    let (model, suite) = (&loaded.point, &loaded.suite);
    Ok(match name {
        CheckName::Structure => structure(model),
        CheckName::Torsion => torsion(model, &suite.torsion),
        CheckName::Curvature => curvature(model, suite, loaded.info.r1)?,
        CheckName::Spectra => spectra(model, suite),
        CheckName::Einstein => einstein(model, suite),
        CheckName::Positivity => positivity(cfg, loaded)?,
        CheckName::Homogeneous => homogeneous(
            loaded
                .lie
                .as_ref()
                .ok_or_else(|| config("the homogeneous suite needs a Lie model"))?,
        ),
        CheckName::All => return Err(config("'all' must be expanded before running")),
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct ConditionSummary {
    pub values: PositivityConditions,
    pub trace_positive: bool,
    pub determinant_positive: bool,
    pub delta_gap_positive: bool,
    pub all: bool,
}

/// Per-point verdicts reported by `verify` and by every `sweep` row.
#[derive(Debug, Clone, Serialize)]
pub struct PointSummary {
    pub n: usize,
    pub alpha: f64,
    pub delta: f64,
    pub alpha_beta: f64,
    /// Conditions at `ν = 0`.
    pub conditions: ConditionSummary,
    /// Smallest eigenvalue of `αβR⊥ + ¼G_T` on `N_i`.
    pub ni_min: f64,
    pub canonical_min: f64,
    pub canonical_nonnegative: bool,
    pub block_sign_follows_alpha_beta: bool,
    pub einstein: EinsteinClass,
}

pub fn summarize(model: &PointModel, suite: &CurvatureSuite) -> PointSummary {
    let p = *model.params();
    let ab = p.alpha() * p.beta();
    let values = PositivityConditions::new(&p, 0.0);
    let (t, d, g) = values.strict();
    let split = lambda2_split(model);
    let first = (&suite.canonical + &suite.torsion.gram.scaled(0.25)).restrict(&split.basis1);
    let block_min = sasaki_core::spectral::spectrum_of_matrix(&first)
        .map(|s| s.min())
        .unwrap_or(f64::NAN);
    let ni_min = min_eigenvalue_2x2(&ni_block(&p, 0.0));
    let tol = tolerance::NONNEGATIVE * tolerance::scale(suite.canonical.max_abs());
    let canonical_min = spectrum(&suite.canonical).min();
    let sign = |x: f64| if x > tol { 1 } else if x < -tol { -1 } else { 0 };
    let ab_sign = if ab > 0.0 { 1 } else if ab < 0.0 { -1 } else { 0 };
    PointSummary {
        n: p.n(),
        alpha: p.alpha(),
        delta: p.delta(),
        alpha_beta: ab,
        conditions: ConditionSummary {
            values,
            trace_positive: t,
            determinant_positive: d,
            delta_gap_positive: g,
            all: t && d && g,
        },
        ni_min,
        canonical_min,
        canonical_nonnegative: canonical_min >= -tol,
        block_sign_follows_alpha_beta: sign(block_min) == ab_sign && sign(ni_min) == ab_sign,
        einstein: einstein_classify(&p),
    }
}
