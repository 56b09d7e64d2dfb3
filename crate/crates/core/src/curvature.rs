//! Curvature operators on 2-forms.
//!
//! Operators follow `⟨𝓡(X∧Y), Z∧V⟩ = −R(X,Y,Z,V)` with
//! `R(X,Y,Z,V) = g(R(X,Y)Z, V)`; sectional curvature is `⟨𝓡σ, σ⟩`.

use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exterior::{bianchi_map, kulkarni_nomizu_operator, multi_indices, Bilinear, PForm, SymOp};
use crate::report::CheckReport;
use crate::structure::{cyclic, PointModel};
use crate::tolerance;
use crate::torsion::TorsionPackage;

/// `R⊥ = Σ_cyc (Φ_i − ξ_jk) ⊗ (Φ_i − ξ_jk)`.
pub fn operator_r_perp(model: &PointModel) -> SymOp {
    let mut out = SymOp::zeros(model.dim());
    for i in 0..3 {
        out = &out + &SymOp::rank_one(&(model.fundamental(i) - model.xi_pair(i)));
    }
    out
}

fn sum_rank_one_horizontal(model: &PointModel) -> SymOp {
    let mut out = SymOp::zeros(model.dim());
    for i in 0..3 {
        out = &out + &SymOp::rank_one(model.horizontal_fundamental(i));
    }
    out
}

/// `g_H ⊘ g_H + Σ Φ_μ^H ⊘ Φ_μ^H`.
fn kulkarni_nomizu_part(model: &PointModel) -> SymOp {
    let gh = Bilinear::Symmetric(model.horizontal_metric());
    let mut out = kulkarni_nomizu_operator(&gh, &gh).expect("same kind and size");
    for i in 0..3 {
        let f = Bilinear::TwoForm(model.horizontal_fundamental(i).clone());
        out = &out + &kulkarni_nomizu_operator(&f, &f).expect("same kind and size");
    }
    out
}

/// Curvature operator of quaternionic projective space on `Λ²H`,
/// `⅛(g⊘g + Σ Φ_μ^H⊘Φ_μ^H + 4 Σ Φ_μ^H⊗Φ_μ^H)`.
pub fn operator_r0(model: &PointModel) -> SymOp {
    let sum = &kulkarni_nomizu_part(model) + &sum_rank_one_horizontal(model).scaled(4.0);
    sum.scaled(0.125)
}

/// `R^{g_N} = 4αδ R₀ + R₁`.
pub fn operator_rgn(model: &PointModel, r1: &SymOp) -> Result<SymOp> {
    validate_r1(model, r1)?;
    Ok(&operator_r0(model).scaled(model.params().nu_scal()) + r1)
}

/// `R_par = R^{g_N} − 2αδ Σ Φ_μ^H ⊗ Φ_μ^H`.
pub fn operator_r_par(model: &PointModel, r1: &SymOp) -> Result<SymOp> {
    let p = model.params();
    let rgn = operator_rgn(model, r1)?;
    Ok(&rgn - &sum_rank_one_horizontal(model).scaled(2.0 * p.alpha() * p.delta()))
}

/// `R_par = (αδ/2)(g⊘g + Σ Φ_μ^H⊘Φ_μ^H) + R₁`.
pub fn operator_r_par_kulkarni_nomizu(model: &PointModel, r1: &SymOp) -> Result<SymOp> {
    validate_r1(model, r1)?;
    let p = model.params();
    Ok(&kulkarni_nomizu_part(model).scaled(0.5 * p.alpha() * p.delta()) + r1)
}

/// Canonical curvature operator `αβ R⊥ + R_par`.
pub fn operator_r(model: &PointModel, r1: &SymOp) -> Result<SymOp> {
    let p = model.params();
    Ok(&operator_r_perp(model).scaled(p.alpha() * p.beta()) + &operator_r_par(model, r1)?)
}

/// Riemannian curvature operator `𝓡 + ¼G_T + ¼S_T`.
pub fn operator_rg(model: &PointModel, r1: &SymOp) -> Result<SymOp> {
    let torsion = TorsionPackage::new(model);
    Ok(riemannian_from(&operator_r(model, r1)?, &torsion))
}

fn riemannian_from(rcan: &SymOp, torsion: &TorsionPackage) -> SymOp {
    &(rcan + &torsion.gram.scaled(0.25)) + &torsion.sigma_operator.scaled(0.25)
}

/// `Ric(X, Y) = Σ_r ⟨𝓡(e_r∧X), e_r∧Y⟩` in the frame.
pub fn ricci_from_operator(op: &SymOp) -> DMatrix<f64> {
    let d = op.base_dim();
    DMatrix::from_fn(d, d, |x, y| (0..d).map(|r| op.entry(r, x, r, y)).sum())
}

pub fn ricci_from_rg(rg: &SymOp) -> DMatrix<f64> {
    ricci_from_operator(rg)
}

/// `2α{2δ(n+2) − 3α} g + 2(α−δ){(2n+3)α − δ} Σ η_i⊗η_i`.
pub fn ricci_closed_form(model: &PointModel) -> DMatrix<f64> {
    let (a, b) = ricci_coefficients(model);
    let d = model.dim();
    let mut ric = DMatrix::identity(d, d) * a;
    for i in 0..3 {
        ric += model.eta(i) * model.eta(i).transpose() * b;
    }
    ric
}

/// Coefficients of `g` and `Σ η_i⊗η_i` in the Riemannian Ricci tensor.
pub fn ricci_coefficients(model: &PointModel) -> (f64, f64) {
    let p = model.params();
    let (a, d, n) = (p.alpha(), p.delta(), p.n() as f64);
    (
        2.0 * a * (2.0 * d * (n + 2.0) - 3.0 * a),
        2.0 * (a - d) * ((2.0 * n + 3.0) * a - d),
    )
}

/// Checks the hyper-Kähler-type conditions on `R₁`.
pub fn r1_report(model: &PointModel, r1: &SymOp) -> Result<CheckReport> {
    if r1.base_dim() != model.dim() {
        return Err(Error::DimensionMismatch {
            expected: model.dim(),
            got: r1.base_dim(),
        });
    }
    let tol = tolerance::IDENTITY * tolerance::scale(r1.max_abs());
    let m = r1.matrix();
    let mut report = CheckReport::default();
    report.push("symmetric", crate::exterior::asymmetry(m), tol);

    let pairs = multi_indices(model.dim(), 2);
    let mut outside: f64 = 0.0;
    for (i, p) in pairs.iter().enumerate() {
        if !model.is_horizontal_pair(p[0], p[1]) {
            outside = outside.max(m.row(i).amax()).max(m.column(i).amax());
        }
    }
    report.push("supported on horizontal 2-forms", outside, tol);

    let killed = (0..3)
        .map(|i| r1.apply(model.horizontal_fundamental(i)).max_abs())
        .fold(0.0, f64::max);
    report.push("annihilates Phi_i^H", killed, tol);

    let commutator = (0..3)
        .map(|i| {
            let di = model.induced_action(i);
            (&di * m - m * &di).amax()
        })
        .fold(0.0, f64::max);
    report.push("commutes with the quaternionic structure", commutator, tol);
    report.push("Ricci-flat", ricci_from_operator(r1).amax(), tol);
    report.push("first Bianchi identity", bianchi_map(r1).max_abs(), tol);
    Ok(report)
}

pub fn validate_r1(model: &PointModel, r1: &SymOp) -> Result<()> {
    let report = r1_report(model, r1)?;
    let first = report.failures().next().map(|bad| Error::InvalidR1 {
        failed: bad.name.clone(),
        violation: bad.value,
    });
    first.map_or(Ok(()), Err)
}

/// All curvature operators of one model.
#[derive(Debug, Clone, PartialEq)]
pub struct CurvatureSuite {
    pub r_perp: SymOp,
    pub r_par: SymOp,
    /// Canonical curvature operator `αβ R⊥ + R_par`.
    pub canonical: SymOp,
    /// Base curvature operator lifted to `Λ²H`.
    pub base: SymOp,
    /// Riemannian curvature operator.
    pub riemannian: SymOp,
    pub r1: SymOp,
    pub nu_scal: f64,
    pub torsion: TorsionPackage,
}

impl CurvatureSuite {
    pub fn new(model: &PointModel) -> Self {
        Self::with_r1(model, SymOp::zeros(model.dim())).expect("zero R1 is valid")
    }

    pub fn with_r1(model: &PointModel, r1: SymOp) -> Result<Self> {
        let p = model.params();
        let base = operator_rgn(model, &r1)?;
        let r_par = &base - &sum_rank_one_horizontal(model).scaled(2.0 * p.alpha() * p.delta());
        let r_perp = operator_r_perp(model);
        let canonical = &r_perp.scaled(p.alpha() * p.beta()) + &r_par;
        let torsion = TorsionPackage::new(model);
        let riemannian = riemannian_from(&canonical, &torsion);
        Ok(Self {
            r_perp,
            r_par,
            canonical,
            base,
            riemannian,
            r1,
            nu_scal: p.nu_scal(),
            torsion,
        })
    }

    pub fn ricci(&self) -> DMatrix<f64> {
        ricci_from_operator(&self.riemannian)
    }
}

/// The `(0,4)` tensor `R(X,Y,Z,V) = −⟨𝓡(X∧Y), Z∧V⟩`.
#[derive(Debug, Clone, Copy)]
pub struct CurvatureTensor<'a> {
    op: &'a SymOp,
}

impl<'a> CurvatureTensor<'a> {
    pub fn new(op: &'a SymOp) -> Self {
        Self { op }
    }

    pub fn eval(&self, x: &[f64], y: &[f64], z: &[f64], v: &[f64]) -> f64 {
        -self.op.pairing(&PForm::decomposable(x, y), &PForm::decomposable(z, v))
    }

    pub fn frame(&self, a: usize, b: usize, c: usize, d: usize) -> f64 {
        -self.op.entry(a, b, c, d)
    }

    /// Matrix of the endomorphism `Z ↦ R(e_a, e_b) Z`.
    pub fn endomorphism(&self, a: usize, b: usize) -> DMatrix<f64> {
        let d = self.op.base_dim();
        DMatrix::from_fn(d, d, |c, z| self.frame(a, b, z, c))
    }
}

fn eta_pair(model: &PointModel, i: usize, j: usize, a: usize, b: usize) -> f64 {
    let (ei, ej) = (model.eta(i), model.eta(j));
    ei[a] * ej[b] - ei[b] * ej[a]
}

fn random_vector(rng: &mut ChaCha8Rng, d: usize) -> DVector<f64> {
    DVector::from_fn(d, |_, _| rng.gen_range(-1.0..1.0))
}

/// Max violation of each tensor identity satisfied by the canonical curvature.
pub fn curvature_tensor_identities(model: &PointModel, rcan: &SymOp) -> CheckReport {
    let d = model.dim();
    let p = model.params();
    let ab = p.alpha() * p.beta();
    let tol = tolerance::IDENTITY * tolerance::scale(rcan.max_abs());
    let r = CurvatureTensor::new(rcan);
    let horizontal: Vec<usize> = model.horizontal_indices().collect();
    let mut report = CheckReport::default();

    report.push("pair symmetry", crate::exterior::asymmetry(rcan.matrix()), tol);

    let mut zero: f64 = 0.0;
    for i in 0..3 {
        for j in 0..3 {
            for &x in &horizontal {
                for &y in &horizontal {
                    zero = zero.max(r.frame(x, i, y, j).abs());
                    for &z in &horizontal {
                        zero = zero.max(r.frame(x, y, z, i).abs());
                    }
                }
                for k in 0..3 {
                    zero = zero.max(r.frame(i, j, k, x).abs());
                }
            }
        }
    }
    report.push("R vanishes with one vertical or mixed vertical pairs", zero, tol);

    let mut vertical: f64 = 0.0;
    for i in 0..3 {
        for j in 0..3 {
            for k in 0..3 {
                for l in 0..3 {
                    let kd = |a: usize, b: usize| if a == b { 1.0 } else { 0.0 };
                    let want = -4.0 * ab * (kd(i, k) * kd(j, l) - kd(i, l) * kd(j, k));
                    vertical = vertical.max((r.frame(i, j, k, l) - want).abs());
                }
            }
        }
    }
    report.push("R(xi_i,xi_j,xi_k,xi_l) = -4 alpha beta (d_ik d_jl - d_il d_jk)", vertical, tol);

    let mut offdiag: f64 = 0.0;
    for i in 0..3 {
        let (_, j, k) = cyclic(i);
        for &x in &horizontal {
            for &y in &horizontal {
                let want = 2.0 * ab * model.fundamental(k).component(&[x, y]);
                offdiag = offdiag.max((r.frame(i, j, x, y) - want).abs());
            }
        }
    }
    report.push("R(xi_i,xi_j,X,Y) = 2 alpha beta Phi_k(X,Y)", offdiag, tol);

    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_2c0e);
    let mut horizontal_samples: Vec<DVector<f64>> = horizontal.iter().map(|&r| model.frame_vector(r)).collect();
    for _ in 0..8 {
        let mut z = random_vector(&mut rng, d);
        z.rows_mut(0, 3).fill(0.0);
        horizontal_samples.push(z);
    }
    let mut second: f64 = 0.0;
    for i in 0..3 {
        let (_, j, k) = cyclic(i);
        for &x in &horizontal {
            for &y in &horizontal {
                let (ex, ey) = (model.frame_vector(x), model.frame_vector(y));
                for z in &horizontal_samples {
                    let fi = model.phi(i) * z;
                    let fj = model.phi(j) * z;
                    let fk = model.phi(k) * z;
                    let lhs = r.eval(ex.as_slice(), ey.as_slice(), z.as_slice(), fi.as_slice())
                        + r.eval(ex.as_slice(), ey.as_slice(), fj.as_slice(), fk.as_slice());
                    let want = 2.0 * ab * model.fundamental(i).component(&[x, y]) * z.norm_squared();
                    second = second.max((lhs - want).abs());
                }
            }
        }
    }
    report.push(
        "R(X,Y,Z,phi_i Z) + R(X,Y,phi_j Z,phi_k Z) = 2 alpha beta Phi_i(X,Y) |Z|^2",
        second,
        tol,
    );

    let mut xi_rule: f64 = 0.0;
    let mut phi_rule: f64 = 0.0;
    for pr in multi_indices(d, 2) {
        let (a, b) = (pr[0], pr[1]);
        let rab = r.endomorphism(a, b);
        for i in 0..3 {
            let (_, j, k) = cyclic(i);
            let phik = model.fundamental(k).component(&[a, b]);
            let phij = model.fundamental(j).component(&[a, b]);
            let eij = eta_pair(model, i, j, a, b);
            let eki = eta_pair(model, k, i, a, b);
            let want_xi = (model.xi(j) * phik - model.xi(k) * phij) * (2.0 * ab)
                - (model.xi(j) * eij - model.xi(k) * eki) * (2.0 * ab);
            xi_rule = xi_rule.max((&rab * model.xi(i) - want_xi).amax());

            let lhs = &rab * model.phi(i) - model.phi(i) * &rab;
            let want = (model.phi(j) * phik - model.phi(k) * phij) * (2.0 * ab)
                - (model.phi(j) * eij - model.phi(k) * eki) * (2.0 * ab);
            phi_rule = phi_rule.max((lhs - want).amax());
        }
    }
    report.push("R(X,Y) xi_i formula", xi_rule, tol);
    report.push("[R(X,Y), phi_i] formula", phi_rule, tol);

    let torsion = TorsionPackage::new(model);
    let mut bianchi: f64 = 0.0;
    for _ in 0..200 {
        let v: Vec<DVector<f64>> = (0..4).map(|_| random_vector(&mut rng, d)).collect();
        let s = |a: usize, b: usize, c: usize| r.eval(v[a].as_slice(), v[b].as_slice(), v[c].as_slice(), v[3].as_slice());
        let cyclic_sum = s(0, 1, 2) + s(1, 2, 0) + s(2, 0, 1);
        let want = torsion
            .sigma
            .eval(&[v[0].as_slice(), v[1].as_slice(), v[2].as_slice(), v[3].as_slice()]);
        bianchi = bianchi.max((cyclic_sum - want).abs());
    }
    report.push("first Bianchi identity with sigma_T", bianchi, tol * 10.0);
    report
}

/// Sectional curvature `⟨𝓡(X∧Y), X∧Y⟩ / |X∧Y|²`.
pub fn sectional(op: &SymOp, x: &[f64], y: &[f64]) -> f64 {
    let s = PForm::decomposable(x, y);
    op.pairing(&s, &s) / s.norm_squared()
}

#[derive(Debug, Clone, Serialize)]
pub struct RicciComparison {
    pub max_deviation: f64,
    pub g_coefficient: f64,
    pub vertical_coefficient: f64,
}

pub fn compare_ricci(model: &PointModel, rg: &SymOp) -> RicciComparison {
    let (a, b) = ricci_coefficients(model);
    RicciComparison {
        max_deviation: (ricci_from_rg(rg) - ricci_closed_form(model)).amax(),
        g_coefficient: a,
        vertical_coefficient: b,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structure::{lambda2_split, Params};
    use nalgebra::SymmetricEigen;

    fn model(n: usize, a: f64, d: f64) -> PointModel {
        PointModel::build(Params::new(n, a, d).unwrap())
    }

    fn eigenvalues(op: &SymOp) -> Vec<f64> {
        let mut v: Vec<f64> = SymmetricEigen::new(op.matrix().clone()).eigenvalues.iter().copied().collect();
        v.sort_by(f64::total_cmp);
        v
    }

    #[test]
    fn r_perp_spectrum() {
        for n in 1..=3 {
            let m = model(n, 1.0, 1.0);
            let rp = operator_r_perp(&m);
            let nonzero: Vec<f64> = eigenvalues(&rp).into_iter().filter(|v| v.abs() > 1e-9).collect();
            assert_eq!(nonzero.len(), 3);
            for v in nonzero {
                assert!((v - 2.0 * (n as f64 + 2.0)).abs() < 1e-10);
            }
            for i in 0..3 {
                let f = m.fundamental(i) + &m.xi_pair(i).scaled(n as f64 + 1.0);
                assert!(rp.apply(&f).max_abs() < 1e-12);
            }
            let s = lambda2_split(&m);
            assert!((rp.matrix() * &s.basis2).amax() < 1e-12);
            assert!((rp.matrix() * &s.basis3).amax() < 1e-12);
        }
    }

    #[test]
    fn base_operator_on_quaternionic_forms() {
        for n in 1..=3 {
            let m = model(n, 1.0, 1.0);
            let zero = SymOp::zeros(m.dim());
            let rgn = operator_rgn(&m, &zero).unwrap();
            for i in 0..3 {
                let f = m.horizontal_fundamental(i);
                let got = rgn.apply(f);
                assert!((&got - &f.scaled(4.0 * n as f64)).max_abs() < 1e-12);
            }
        }
    }

    #[test]
    fn base_operator_of_the_seven_sphere_is_the_identity_on_horizontal_forms() {
        let m = model(1, 1.0, 1.0);
        let rgn = operator_rgn(&m, &SymOp::zeros(7)).unwrap();
        let s = lambda2_split(&m);
        let horizontal = DMatrix::from_fn(21, 6, |row, col| {
            let q = [s.basis1.column(0), s.basis1.column(2), s.basis1.column(4)];
            if col < 3 {
                q[col][row]
            } else {
                s.basis2[(row, col - 3)]
            }
        });
        let block = rgn.restrict(&horizontal);
        assert!((block - DMatrix::identity(6, 6) * 4.0).amax() < 1e-12);
    }

    #[test]
    fn degenerate_base_is_r1() {
        let m = model(2, 1.0, 0.0);
        let zero = SymOp::zeros(m.dim());
        assert!(operator_rgn(&m, &zero).unwrap().max_abs() < 1e-15);
        assert!(operator_r_par(&m, &zero).unwrap().max_abs() < 1e-15);
    }

    #[test]
    fn two_expressions_for_r_par_agree_and_kill_quaternionic_forms() {
        for (n, a, d) in [(1, 1.0, 1.0), (2, 0.5, -2.0), (3, -1.5, 0.7)] {
            let m = model(n, a, d);
            let zero = SymOp::zeros(m.dim());
            let one = operator_r_par(&m, &zero).unwrap();
            let two = operator_r_par_kulkarni_nomizu(&m, &zero).unwrap();
            assert!(one.distance(&two) < 1e-10);
            for i in 0..3 {
                assert!(one.apply(m.horizontal_fundamental(i)).max_abs() < 1e-12);
            }
            for r in m.horizontal_indices() {
                let z = m.frame_vector(r);
                for i in 0..3 {
                    let (_, j, k) = cyclic(i);
                    let w = &PForm::decomposable(z.as_slice(), (m.phi(i) * &z).as_slice())
                        + &PForm::decomposable((m.phi(j) * &z).as_slice(), (m.phi(k) * &z).as_slice());
                    assert!(one.apply(&w).max_abs() < 1e-12);
                }
            }
            let pairs = multi_indices(m.dim(), 2);
            for (row, p) in pairs.iter().enumerate() {
                if !m.is_horizontal_pair(p[0], p[1]) {
                    assert!(one.matrix().row(row).amax() < 1e-15);
                }
            }
        }
    }

    #[test]
    fn canonical_operator_on_first_block() {
        let m = model(1, 1.0, 1.0);
        let r = operator_r(&m, &SymOp::zeros(7)).unwrap();
        for i in 0..3 {
            let diff = m.fundamental(i) - m.xi_pair(i);
            assert!((&r.apply(m.fundamental(i)) - &diff.scaled(-8.0)).max_abs() < 1e-12);
            assert!((&r.apply(m.xi_pair(i)) - &diff.scaled(4.0)).max_abs() < 1e-12);
        }
        let s = lambda2_split(&m);
        assert!((r.matrix() * &s.basis3).amax() < 1e-12);
    }

    #[test]
    fn riemannian_operator_on_first_block() {
        for (n, a, d) in [(1, 1.0, 1.0), (2, 0.7, 2.1), (1, -1.0, 0.5)] {
            let m = model(n, a, d);
            let rg = operator_rg(&m, &SymOp::zeros(m.dim())).unwrap();
            let n = n as f64;
            for i in 0..3 {
                let got = rg.apply(m.xi_pair(i));
                let want = &m.fundamental(i).scaled(2.0 * a * (a - d))
                    + &m.xi_pair(i).scaled(a * a + (a - d) * (a - d));
                assert!((&got - &want).max_abs() < 1e-11);
                let got = rg.apply(m.fundamental(i));
                let want = &m.fundamental(i).scaled(a * (d - a) * (4.0 * n + 1.0) + a * d)
                    - &m.xi_pair(i).scaled((a - d) * (a - d));
                assert!((&got - &want).max_abs() < 1e-11);
            }
        }
    }

    #[test]
    fn round_seven_sphere_has_unit_sectional_curvature() {
        let m = model(1, 1.0, 1.0);
        let rg = operator_rg(&m, &SymOp::zeros(7)).unwrap();
        let mut planes = 0;
        for a in 0..7 {
            for b in (a + 1)..7 {
                let k = sectional(&rg, m.frame_vector(a).as_slice(), m.frame_vector(b).as_slice());
                assert!((k - 1.0).abs() < 1e-12);
                planes += 1;
            }
        }
        assert_eq!(planes, 21);
        assert!(rg.distance(&SymOp::identity(7)) < 1e-12);
    }

    #[test]
    fn ricci_matches_closed_form() {
        for (n, a, d) in [(1, 1.0, 1.0), (1, 1.0, 5.0), (1, 1.0, 2.0), (2, -0.4, 1.3), (3, 2.0, 0.0)] {
            let m = model(n, a, d);
            let rg = operator_rg(&m, &SymOp::zeros(m.dim())).unwrap();
            let cmp = compare_ricci(&m, &rg);
            assert!(cmp.max_deviation < 1e-9, "n={n} a={a} d={d}: {}", cmp.max_deviation);
        }
        let m = model(1, 1.0, 1.0);
        let ric = ricci_from_rg(&operator_rg(&m, &SymOp::zeros(7)).unwrap());
        assert!((ric - DMatrix::identity(7, 7) * 6.0).amax() < 1e-12);
        let (_, b) = ricci_coefficients(&model(1, 1.0, 5.0));
        assert_eq!(b, 0.0);
        let m = model(1, 1.0, 2.0);
        let ric = ricci_from_rg(&operator_rg(&m, &SymOp::zeros(7)).unwrap());
        assert!((ric[(0, 0)] - ric[(3, 3)] + 6.0).abs() < 1e-12);
    }

    #[test]
    fn canonical_tensor_identities_hold() {
        for (n, a, d) in [(1, 1.0, 1.0), (1, 0.5, 3.0), (2, -1.2, 0.8), (2, 1.0, 2.0)] {
            let m = model(n, a, d);
            let r = operator_r(&m, &SymOp::zeros(m.dim())).unwrap();
            let report = curvature_tensor_identities(&m, &r);
            assert!(report.passed(), "{:?}", report.failures().collect::<Vec<_>>());
        }
    }

    #[test]
    fn parallel_case_kills_reeb_vectors() {
        let m = model(1, 1.0, 2.0);
        let r = operator_r(&m, &SymOp::zeros(7)).unwrap();
        let t = CurvatureTensor::new(&r);
        for pr in multi_indices(7, 2) {
            for i in 0..3 {
                assert!((t.endomorphism(pr[0], pr[1]) * m.xi(i)).amax() < 1e-14);
            }
        }
    }

    #[test]
    fn perturbed_operator_breaks_bianchi() {
        let m = model(1, 1.0, 1.0);
        let r = operator_r(&m, &SymOp::zeros(7)).unwrap();
        let bump = SymOp::rank_one(&PForm::basis(7, &[3, 4]).unwrap());
        let report = curvature_tensor_identities(&m, &(&r + &bump.scaled(0.1)));
        assert!(!report.passed());
    }

    /// A traceless symmetric operator on the anti-self-dual block of `ℍ`.
    pub(crate) fn anti_self_dual_r1(m: &PointModel) -> SymOp {
        let s = lambda2_split(m);
        let b = &s.basis2;
        let coeffs = DMatrix::from_row_slice(3, 3, &[1.0, 0.3, 0.0, 0.3, -0.4, 0.2, 0.0, 0.2, -0.6]);
        SymOp::from_matrix(m.dim(), b * coeffs * b.transpose()).unwrap()
    }

    #[test]
    fn nonzero_hyper_kaehler_type_input_is_accepted() {
        let m = model(1, 1.0, 1.0);
        let r1 = anti_self_dual_r1(&m);
        assert!(r1.max_abs() > 0.1);
        validate_r1(&m, &r1).unwrap();
        let suite = CurvatureSuite::with_r1(&m, r1).unwrap();
        let cmp = compare_ricci(&m, &suite.riemannian);
        assert!(cmp.max_deviation < 1e-9);
        let report = curvature_tensor_identities(&m, &suite.canonical);
        assert!(report.passed(), "{:?}", report.failures().collect::<Vec<_>>());
    }

    #[test]
    fn invalid_r1_names_the_failed_condition() {
        let m = model(1, 1.0, 1.0);
        let bad = SymOp::rank_one(m.horizontal_fundamental(0));
        match validate_r1(&m, &bad) {
            Err(Error::InvalidR1 { failed, .. }) => assert_eq!(failed, "annihilates Phi_i^H"),
            other => panic!("unexpected {other:?}"),
        }
        let vertical = SymOp::rank_one(m.xi_pair(0));
        match validate_r1(&m, &vertical) {
            Err(Error::InvalidR1 { failed, .. }) => assert_eq!(failed, "supported on horizontal 2-forms"),
            other => panic!("unexpected {other:?}"),
        }
        let wrong = SymOp::zeros(11);
        assert!(matches!(validate_r1(&m, &wrong), Err(Error::DimensionMismatch { .. })));
    }
}
