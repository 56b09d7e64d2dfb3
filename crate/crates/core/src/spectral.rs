//! Eigendecomposition, eigenform residuals and the Einstein characterization.

use nalgebra::{DMatrix, SymmetricEigen};
use serde::Serialize;

use crate::curvature::{ricci_from_rg, CurvatureSuite};
use crate::error::{Error, Result};
use crate::exterior::{asymmetry, PForm, SymOp};
use crate::report::CheckReport;
use crate::structure::{cyclic, Params, PointModel};
use crate::tolerance;

/// A maximal run of eigenvalues whose consecutive gaps are below the cluster gap.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Cluster {
    pub value: f64,
    pub multiplicity: usize,
}

/// Ascending eigenvalues with an orthonormal eigenbasis (columns).
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: DMatrix<f64>,
}

pub fn spectrum(op: &SymOp) -> Spectrum {
    decompose(op.matrix().clone())
}

/// Eigendecomposition of a raw matrix, rejecting non-symmetric input.
pub fn spectrum_of_matrix(mat: &DMatrix<f64>) -> Result<Spectrum> {
    if mat.nrows() != mat.ncols() {
        return Err(Error::InvalidInput("matrix must be square".into()));
    }
    let skew = asymmetry(mat);
    if skew > tolerance::SYMMETRY * tolerance::scale(mat.amax()) {
        return Err(Error::NotSymmetric(skew));
    }
    Ok(decompose((mat + mat.transpose()) * 0.5))
}

fn decompose(mat: DMatrix<f64>) -> Spectrum {
    let n = mat.nrows();
    if n == 0 {
        return Spectrum {
            eigenvalues: Vec::new(),
            eigenvectors: DMatrix::zeros(0, 0),
        };
    }
    let eig = SymmetricEigen::new(mat);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let eigenvalues = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let eigenvectors = DMatrix::from_fn(n, n, |r, c| eig.eigenvectors[(r, order[c])]);
    Spectrum {
        eigenvalues,
        eigenvectors,
    }
}

impl Spectrum {
    pub fn min(&self) -> f64 {
        self.eigenvalues.first().copied().unwrap_or(0.0)
    }

    pub fn max(&self) -> f64 {
        self.eigenvalues.last().copied().unwrap_or(0.0)
    }

    pub fn clusters(&self) -> Vec<Cluster> {
        clusters(&self.eigenvalues, tolerance::CLUSTER_GAP)
    }

    /// `max |⟨v_i, v_j⟩ − δ_ij|`.
    pub fn orthonormality_defect(&self) -> f64 {
        let n = self.eigenvectors.ncols();
        (self.eigenvectors.transpose() * &self.eigenvectors - DMatrix::identity(n, n)).amax()
    }

    /// `‖A − Σ μ_i v_i⊗v_i‖_max`.
    pub fn reconstruction_error(&self, mat: &DMatrix<f64>) -> f64 {
        let v = &self.eigenvectors;
        let d = DMatrix::from_diagonal(&nalgebra::DVector::from_column_slice(&self.eigenvalues));
        (v * d * v.transpose() - mat).amax()
    }
}

/// Groups sorted values into clusters separated by more than `gap`.
pub fn clusters(sorted: &[f64], gap: f64) -> Vec<Cluster> {
    let mut out: Vec<(f64, usize)> = Vec::new();
    let mut last = f64::NEG_INFINITY;
    for &v in sorted {
        match out.last_mut() {
            Some((sum, count)) if v - last <= gap => {
                *sum += v;
                *count += 1;
            }
            _ => out.push((v, 1)),
        }
        last = v;
    }
    out.into_iter()
        .map(|(sum, multiplicity)| Cluster {
            value: sum / multiplicity as f64,
            multiplicity,
        })
        .collect()
}

/// Sorted multisets agree entrywise within `tol · max(1, |x|)`.
pub fn multiset_eq(a: &[f64], b: &[f64], tol: f64) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    a.sort_by(f64::total_cmp);
    b.sort_by(f64::total_cmp);
    a.iter().zip(&b).all(|(x, y)| (x - y).abs() <= tol * tolerance::scale(x.abs().max(y.abs())))
}

/// Largest entrywise gap between two sorted multisets of equal size.
pub fn multiset_distance(a: &[f64], b: &[f64]) -> f64 {
    if a.len() != b.len() {
        return f64::INFINITY;
    }
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    a.sort_by(f64::total_cmp);
    b.sort_by(f64::total_cmp);
    a.iter().zip(&b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

/// Distinct values (cluster centres) of a sorted spectrum.
pub fn distinct_values(sorted: &[f64]) -> Vec<f64> {
    clusters(sorted, tolerance::CLUSTER_GAP).into_iter().map(|c| c.value).collect()
}

/// Set equality of two value lists up to `tol`.
pub fn set_eq(a: &[f64], b: &[f64], tol: f64) -> bool {
    let close = |x: f64, y: f64| (x - y).abs() <= tol * tolerance::scale(x.abs().max(y.abs()));
    a.iter().all(|&x| b.iter().any(|&y| close(x, y))) && b.iter().all(|&y| a.iter().any(|&x| close(x, y)))
}

/// Replaces `count` eigenvalues nearest to zero by `value`.
/// Returns `None` if fewer than `count` values lie within `tol` of zero.
pub fn replace_zeros(sorted: &[f64], count: usize, value: f64, tol: f64) -> Option<Vec<f64>> {
    let mut by_size: Vec<usize> = (0..sorted.len()).collect();
    by_size.sort_by(|&a, &b| sorted[a].abs().total_cmp(&sorted[b].abs()));
    let chosen = &by_size[..count.min(by_size.len())];
    if chosen.len() < count || chosen.iter().any(|&i| sorted[i].abs() > tol) {
        return None;
    }
    let mut out: Vec<f64> = (0..sorted.len())
        .filter(|i| !chosen.contains(i))
        .map(|i| sorted[i])
        .collect();
    out.extend(std::iter::repeat_n(value, count));
    out.sort_by(f64::total_cmp);
    Some(out)
}

/// Residual of a candidate eigenform against an operator.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FormCheck {
    pub name: String,
    pub is_eigenform: bool,
    /// Rayleigh quotient `⟨Av, v⟩ / ⟨v, v⟩`.
    pub eigenvalue: f64,
    /// `‖Av − μv‖ / ‖v‖`.
    pub residual: f64,
}

pub fn form_check(op: &SymOp, name: impl Into<String>, v: &PForm) -> FormCheck {
    let x = v.to_vector();
    let ax = op.matrix() * &x;
    let norm2 = x.norm_squared();
    let mu = ax.dot(&x) / norm2;
    let residual = (ax - &x * mu).norm() / norm2.sqrt();
    FormCheck {
        name: name.into(),
        is_eigenform: residual < tolerance::EIGENFORM * tolerance::scale(op.max_abs()),
        eigenvalue: mu,
        residual,
    }
}

/// The two triples of distinguished forms and `Φ_i^H`.
pub fn distinguished_forms(model: &PointModel) -> Vec<(String, PForm)> {
    let n1 = model.n() as f64 + 1.0;
    let mut out = Vec::new();
    for i in 0..3 {
        let (_, j, k) = cyclic(i);
        let pair = format!("xi_{}{}", j + 1, k + 1);
        out.push((
            format!("Phi_{} - {pair}", i + 1),
            model.fundamental(i) - model.xi_pair(i),
        ));
        out.push((
            format!("Phi_{} + (n+1) {pair}", i + 1),
            model.fundamental(i) + &model.xi_pair(i).scaled(n1),
        ));
        out.push((format!("Phi_{}^H", i + 1), model.horizontal_fundamental(i).clone()));
    }
    out
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectrumReport {
    pub eigenvalues: Vec<f64>,
    pub clusters: Vec<Cluster>,
    pub distinguished: Vec<FormCheck>,
}

impl SpectrumReport {
    pub fn new(op: &SymOp, forms: &[(String, PForm)]) -> Self {
        let s = spectrum(op);
        Self {
            clusters: s.clusters(),
            eigenvalues: s.eigenvalues,
            distinguished: forms.iter().map(|(name, f)| form_check(op, name.clone(), f)).collect(),
        }
    }

    pub fn form(&self, name: &str) -> Option<&FormCheck> {
        self.distinguished.iter().find(|f| f.name == name)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EigenformVerification {
    pub spectrum: SpectrumReport,
    pub checks: CheckReport,
}

/// Checks the six distinguished eigenforms of the canonical curvature operator.
pub fn verify_canonical_eigenforms(suite: &CurvatureSuite, model: &PointModel) -> EigenformVerification {
    let p = model.params();
    let op = &suite.canonical;
    let forms = distinguished_forms(model);
    let spectrum = SpectrumReport::new(op, &forms);
    let tol = tolerance::EIGENFORM * tolerance::scale(op.max_abs());
    let expected = 2.0 * p.alpha() * p.beta() * (p.n() as f64 + 2.0);

    let mut checks = CheckReport::default();
    let mut first: f64 = 0.0;
    let mut second: f64 = 0.0;
    let mut triples = Vec::new();
    for i in 0..3 {
        let a = model.fundamental(i) - model.xi_pair(i);
        let b = model.fundamental(i) + &model.xi_pair(i).scaled(p.n() as f64 + 1.0);
        let ea = a.scaled(expected);
        first = first.max((&op.apply(&a) - &ea).max_abs() / a.norm());
        second = second.max(op.apply(&b).max_abs() / b.norm());
        triples.push(a);
        triples.push(b);
    }
    checks.push("Phi_i - xi_jk eigenvalue 2 alpha beta (n+2)", first, tol);
    checks.push("Phi_i + (n+1) xi_jk in kernel", second, tol);
    let mut ortho: f64 = 0.0;
    for (a, x) in triples.iter().enumerate() {
        for y in &triples[a + 1..] {
            ortho = ortho.max(x.inner(y).expect("same shape").abs());
        }
    }
    checks.push("six eigenforms pairwise orthogonal", ortho, tolerance::IDENTITY);
    EigenformVerification { spectrum, checks }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum EinsteinClass {
    /// `δ = α`: both triples have eigenvalue `α²`.
    DeltaEqAlpha { lambda: f64 },
    /// `δ = (2n+3)α`.
    DeltaEqTwoNPlusThreeAlpha { lambda1: f64, lambda2: f64 },
    NotEinstein,
}

impl EinsteinClass {
    pub fn is_einstein(&self) -> bool {
        !matches!(self, EinsteinClass::NotEinstein)
    }

    /// Predicted eigenvalues on `Φ_i − ξ_jk` and `Φ_i + (n+1)ξ_jk`.
    pub fn eigenvalues(&self) -> Option<(f64, f64)> {
        match *self {
            EinsteinClass::DeltaEqAlpha { lambda } => Some((lambda, lambda)),
            EinsteinClass::DeltaEqTwoNPlusThreeAlpha { lambda1, lambda2 } => Some((lambda1, lambda2)),
            EinsteinClass::NotEinstein => None,
        }
    }
}

pub fn einstein_classify(params: &Params) -> EinsteinClass {
    let (a, d, n) = (params.alpha(), params.delta(), params.n() as f64);
    let tol = tolerance::RELATIVE * tolerance::scale(a.abs().max(d.abs()));
    if (d - a).abs() <= tol {
        EinsteinClass::DeltaEqAlpha { lambda: a * a }
    } else if (d - (2.0 * n + 3.0) * a).abs() <= tol {
        EinsteinClass::DeltaEqTwoNPlusThreeAlpha {
            lambda1: a * a * (8.0 * n * n + 16.0 * n + 9.0),
            lambda2: a * a * (2.0 * n + 1.0).powi(2),
        }
    } else {
        EinsteinClass::NotEinstein
    }
}

/// Whether a Ricci tensor is a multiple of the identity.
pub fn ricci_is_isotropic(ric: &DMatrix<f64>) -> bool {
    let d = ric.nrows();
    let mean = ric.trace() / d as f64;
    let dev = (ric - DMatrix::identity(d, d) * mean).amax();
    dev <= tolerance::RELATIVE * tolerance::scale(ric.amax())
}

/// Coefficients `(c_Φ, c_ξ)` of the projection of `v` onto `span{Φ_i, ξ_jk}`.
fn coefficients(model: &PointModel, i: usize, v: &PForm) -> (f64, f64) {
    let f = model.fundamental(i);
    let x = model.xi_pair(i);
    let g11 = f.inner(f).expect("same shape");
    let g12 = f.inner(x).expect("same shape");
    let g22 = x.inner(x).expect("same shape");
    let r1 = v.inner(f).expect("same shape");
    let r2 = v.inner(x).expect("same shape");
    let det = g11 * g22 - g12 * g12;
    ((r1 * g22 - r2 * g12) / det, (g11 * r2 - g12 * r1) / det)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EinsteinReport {
    pub a: f64,
    pub b: f64,
    pub a_prime: f64,
    pub b_prime: f64,
    /// `a + b` from the assembled operator.
    pub first_sum: f64,
    /// `2(δ−α){α(2n+3) − δ}`.
    pub first_sum_closed: f64,
    /// `(n+1)a′ − b′` from the assembled operator.
    pub second_combination: f64,
    /// `n(δ−α){α(2n+3) − δ}`.
    pub second_combination_closed: f64,
    pub first_triple: Vec<FormCheck>,
    pub second_triple: Vec<FormCheck>,
    pub classification: EinsteinClass,
    pub ricci_isotropic: bool,
    pub checks: CheckReport,
}

impl EinsteinReport {
    pub fn passed(&self) -> bool {
        self.checks.passed()
    }
}

/// Relates eigenform status of both triples under `𝓡^g` to the Einstein condition.
pub fn verify_einstein_equivalence(suite: &CurvatureSuite, model: &PointModel) -> EinsteinReport {
    let p = model.params();
    let (al, de, n) = (p.alpha(), p.delta(), p.n() as f64);
    let rg = &suite.riemannian;
    let scale = tolerance::scale(rg.max_abs());
    let n1 = n + 1.0;

    let mut first_triple = Vec::new();
    let mut second_triple = Vec::new();
    let mut coeffs = Vec::new();
    for i in 0..3 {
        let (_, j, k) = cyclic(i);
        let pair = format!("xi_{}{}", j + 1, k + 1);
        let u = model.fundamental(i) - model.xi_pair(i);
        let w = model.fundamental(i) + &model.xi_pair(i).scaled(n1);
        first_triple.push(form_check(rg, format!("Phi_{} - {pair}", i + 1), &u));
        second_triple.push(form_check(rg, format!("Phi_{} + (n+1) {pair}", i + 1), &w));
        let (a, b) = coefficients(model, i, &rg.apply(&u));
        let (a2, b2) = coefficients(model, i, &rg.apply(&w));
        coeffs.push((a, b, a2, b2));
    }
    let (a, b, a_prime, b_prime) = coeffs[0];
    let first_sum_closed = 2.0 * (de - al) * (al * (2.0 * n + 3.0) - de);
    let second_combination_closed = n * (de - al) * (al * (2.0 * n + 3.0) - de);
    let classification = einstein_classify(p);
    let ricci_isotropic = ricci_is_isotropic(&ricci_from_rg(rg));

    let tol = tolerance::IDENTITY * scale;
    let mut checks = CheckReport::default();
    let spread = coeffs
        .iter()
        .map(|c| {
            (c.0 - a).abs().max((c.1 - b).abs()).max((c.2 - a_prime).abs()).max((c.3 - b_prime).abs())
        })
        .fold(0.0, f64::max);
    checks.push("coefficients independent of i", spread, tol);
    checks.push("a + b closed form", (a + b - first_sum_closed).abs(), tol);
    checks.push(
        "(n+1)a' - b' closed form",
        (n1 * a_prime - b_prime - second_combination_closed).abs(),
        tol,
    );
    let einstein = classification.is_einstein();
    let agree = |flag: bool| if flag == einstein { 0.0 } else { 1.0 };
    checks.push(
        "Phi_i - xi_jk eigenform iff Einstein",
        agree(first_triple.iter().all(|f| f.is_eigenform)),
        0.5,
    );
    checks.push(
        "Phi_i + (n+1) xi_jk eigenform iff Einstein",
        agree(second_triple.iter().all(|f| f.is_eigenform)),
        0.5,
    );
    checks.push("Ricci isotropic iff Einstein", agree(ricci_isotropic), 0.5);
    if let Some((l1, l2)) = classification.eigenvalues() {
        let dev1 = first_triple.iter().map(|f| (f.eigenvalue - l1).abs()).fold(0.0, f64::max);
        let dev2 = second_triple.iter().map(|f| (f.eigenvalue - l2).abs()).fold(0.0, f64::max);
        checks.push("first triple eigenvalue", dev1, tolerance::EIGENFORM * scale);
        checks.push("second triple eigenvalue", dev2, tolerance::EIGENFORM * scale);
    }

    EinsteinReport {
        a,
        b,
        a_prime,
        b_prime,
        first_sum: a + b,
        first_sum_closed,
        second_combination: n1 * a_prime - b_prime,
        second_combination_closed,
        first_triple,
        second_triple,
        classification,
        ricci_isotropic,
        checks,
    }
}

/// Spectrum relations between `𝓡`, `R_par` and `R^{g_N}`, as multisets and as sets.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectrumRelations {
    pub canonical_multiset_gap: f64,
    pub base_multiset_gap: f64,
    pub canonical_sets_agree: bool,
    pub base_sets_agree: bool,
}

impl SpectrumRelations {
    pub fn passed(&self) -> bool {
        self.canonical_multiset_gap <= tolerance::SPECTRUM
            && self.base_multiset_gap <= tolerance::SPECTRUM
            && self.canonical_sets_agree
            && self.base_sets_agree
    }
}

/// `Spec 𝓡 = Spec R_par ∪ {0, 2αβ(n+2)}` and `Spec R^{g_N} ∪ {0} = Spec R_par ∪ {0, 4αδn}`.
pub fn spectrum_relations(suite: &CurvatureSuite, model: &PointModel) -> SpectrumRelations {
    let p = model.params();
    let n = p.n() as f64;
    let par = spectrum(&suite.r_par).eigenvalues;
    let can = spectrum(&suite.canonical).eigenvalues;
    let base = spectrum(&suite.base).eigenvalues;
    let scale = tolerance::scale(suite.canonical.max_abs().max(suite.base.max_abs()));
    let zero_tol = tolerance::SPECTRUM * scale;
    let perp_value = 2.0 * p.alpha() * p.beta() * (n + 2.0);
    let base_value = 4.0 * p.alpha() * p.delta() * n;

    let gap = |predicted: Option<Vec<f64>>, actual: &[f64]| {
        predicted.map_or(f64::INFINITY, |v| multiset_distance(&v, actual) / scale)
    };
    let canonical_multiset_gap = gap(replace_zeros(&par, 3, perp_value, zero_tol), &can);
    let base_multiset_gap = gap(replace_zeros(&par, 3, base_value, zero_tol), &base);

    let with = |v: &[f64], extra: &[f64]| {
        let mut all = distinct_values(v);
        all.extend_from_slice(extra);
        all
    };
    let canonical_sets_agree = set_eq(
        &distinct_values(&can),
        &with(&par, &[0.0, perp_value]),
        tolerance::SPECTRUM * scale,
    );
    let base_sets_agree = set_eq(
        &with(&base, &[0.0]),
        &with(&par, &[0.0, base_value]),
        tolerance::SPECTRUM * scale,
    );
    SpectrumRelations {
        canonical_multiset_gap,
        base_multiset_gap,
        canonical_sets_agree,
        base_sets_agree,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structure::lambda2_split;

    fn model(n: usize, a: f64, d: f64) -> PointModel {
        PointModel::build(Params::new(n, a, d).unwrap())
    }

    #[test]
    fn identity_has_one_cluster() {
        let s = spectrum(&SymOp::identity(7));
        assert_eq!(s.clusters(), vec![Cluster { value: 1.0, multiplicity: 21 }]);
    }

    #[test]
    fn scaled_r_perp_spectrum() {
        let m = model(1, 1.0, 1.0);
        let suite = CurvatureSuite::new(&m);
        let s = spectrum(&suite.r_perp.scaled(-2.0));
        let c = s.clusters();
        assert_eq!(c.len(), 2);
        assert!((c[0].value + 12.0).abs() < 1e-10 && c[0].multiplicity == 3);
        assert!(c[1].value.abs() < 1e-10 && c[1].multiplicity == 18);
    }

    #[test]
    fn mixed_gram_block_spectrum() {
        for (n, a) in [(1, 1.0), (2, -0.5), (3, 1.5)] {
            let m = model(n, a, 0.3);
            let suite = CurvatureSuite::new(&m);
            let split = lambda2_split(&m);
            let block = suite.torsion.gram.restrict(&split.basis3);
            let c = spectrum_of_matrix(&block).unwrap().clusters();
            assert_eq!(c.len(), 2);
            assert!(c[0].value.abs() < 1e-10 && c[0].multiplicity == 8 * n);
            assert!((c[1].value - 12.0 * a * a).abs() < 1e-10 && c[1].multiplicity == 4 * n);
        }
    }

    #[test]
    fn non_symmetric_input_is_rejected() {
        let m = DMatrix::from_row_slice(2, 2, &[1.0, 2.0, 0.0, 1.0]);
        assert!(matches!(spectrum_of_matrix(&m), Err(Error::NotSymmetric(_))));
    }

    #[test]
    fn eigenbasis_is_orthonormal_and_reconstructs() {
        let m = model(2, 0.9, -1.7);
        let suite = CurvatureSuite::new(&m);
        let s = spectrum(&suite.riemannian);
        assert!(s.orthonormality_defect() < 1e-9);
        assert!(s.reconstruction_error(suite.riemannian.matrix()) < 1e-8);
    }

    #[test]
    fn canonical_eigenforms() {
        for (n, a, d, value) in [(1, 1.0, 1.0, -12.0), (2, 1.0, 3.0, 16.0), (1, 1.0, 2.0, 0.0)] {
            let m = model(n, a, d);
            let suite = CurvatureSuite::new(&m);
            let v = verify_canonical_eigenforms(&suite, &m);
            assert!(v.checks.passed(), "{:?}", v.checks);
            let f = v.spectrum.form("Phi_1 - xi_23").unwrap();
            assert!(f.is_eigenform && (f.eigenvalue - value).abs() < 1e-10);
            let g = v.spectrum.form("Phi_2 + (n+1) xi_31").unwrap();
            assert!(g.is_eigenform && g.eigenvalue.abs() < 1e-10);
        }
    }

    #[test]
    fn einstein_classification() {
        let p = |n, a, d| Params::new(n, a, d).unwrap();
        assert_eq!(einstein_classify(&p(1, 1.0, 1.0)), EinsteinClass::DeltaEqAlpha { lambda: 1.0 });
        assert_eq!(
            einstein_classify(&p(1, 1.0, 5.0)),
            EinsteinClass::DeltaEqTwoNPlusThreeAlpha { lambda1: 33.0, lambda2: 9.0 }
        );
        assert_eq!(einstein_classify(&p(1, 1.0, 2.0)), EinsteinClass::NotEinstein);
    }

    #[test]
    fn einstein_equivalence_reports() {
        let m = model(1, 1.0, 3.0);
        let r = verify_einstein_equivalence(&CurvatureSuite::new(&m), &m);
        assert!(r.passed(), "{:?}", r.checks);
        assert!((r.first_sum - 8.0).abs() < 1e-10);
        assert!((r.second_combination - 4.0).abs() < 1e-10);

        let m = model(1, 1.0, 5.0);
        let r = verify_einstein_equivalence(&CurvatureSuite::new(&m), &m);
        assert!(r.passed(), "{:?}", r.checks);
        assert!(r.first_sum.abs() < 1e-10 && r.second_combination.abs() < 1e-10);
        assert!((r.first_triple[0].eigenvalue - 33.0).abs() < 1e-10);
        assert!((r.second_triple[0].eigenvalue - 9.0).abs() < 1e-10);

        let m = model(1, 1.0, 2.0);
        let r = verify_einstein_equivalence(&CurvatureSuite::new(&m), &m);
        assert!(r.passed());
        assert!(r.first_triple.iter().chain(&r.second_triple).all(|f| f.residual > 1e-6));

        let m = model(2, -0.7, -0.7);
        let r = verify_einstein_equivalence(&CurvatureSuite::new(&m), &m);
        assert!(r.passed() && r.first_sum.abs() < 1e-12);
    }

    #[test]
    fn spectra_relations_hold() {
        for (n, a, d) in [(1, 1.0, 1.0), (1, 0.5, -2.0), (2, 1.0, 3.0), (2, -1.0, 0.4)] {
            let m = model(n, a, d);
            let rel = spectrum_relations(&CurvatureSuite::new(&m), &m);
            assert!(rel.passed(), "n={n} a={a} d={d}: {rel:?}");
        }
    }

    #[test]
    fn zero_replacement() {
        let v = replace_zeros(&[-1.0, 0.0, 1e-12, 2.0], 2, 5.0, 1e-9).unwrap();
        assert_eq!(v, vec![-1.0, 2.0, 5.0, 5.0]);
        assert!(replace_zeros(&[-1.0, 0.0, 2.0], 2, 5.0, 1e-9).is_none());
        assert!(multiset_eq(&[1.0, 2.0], &[2.0, 1.0 + 1e-12], 1e-9));
        assert!(!multiset_eq(&[1.0, 2.0], &[2.0, 2.0], 1e-9));
    }
}
