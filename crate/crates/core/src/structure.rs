//! The pointwise model of a 3-(α,δ)-Sasaki manifold in an adapted frame.
//!
//! Coordinates `0, 1, 2` are the Reeb vectors `ξ₁, ξ₂, ξ₃`; the horizontal
//! space is split into quaternionic blocks `H_l` occupying coordinates
//! `3 + 4l .. 3 + 4l + 4`, where `e_{4l+i} = φ_i e_{4l}`. On every block the
//! `φ_i` act as left multiplication by the units `i, j, k` on `ℍ`, which
//! is what `φ_i φ_j = φ_k` on `H` forces.

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exterior::{binomial, multi_indices, pair_index, PForm};
use crate::report::CheckReport;
use crate::tolerance;

/// The even permutation `(i, j, k)` starting at `i`.
pub fn cyclic(i: usize) -> (usize, usize, usize) {
    (i, (i + 1) % 3, (i + 2) % 3)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Sign {
    Degenerate,
    Positive,
    Negative,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Params {
    n: usize,
    alpha: f64,
    delta: f64,
}

impl Params {
    pub fn new(n: usize, alpha: f64, delta: f64) -> Result<Self> {
        if n < 1 {
            return Err(Error::InvalidInput("n must be at least 1".into()));
        }
        if !alpha.is_finite() || !delta.is_finite() {
            return Err(Error::InvalidInput("alpha and delta must be finite".into()));
        }
        if alpha == 0.0 {
            return Err(Error::InvalidInput("alpha must be nonzero".into()));
        }
        Ok(Self { n, alpha, delta })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    /// `β = 2(δ − 2α)`.
    pub fn beta(&self) -> f64 {
        2.0 * (self.delta - 2.0 * self.alpha)
    }

    /// `dim M = 4n + 3`.
    pub fn dim(&self) -> usize {
        4 * self.n + 3
    }

    /// Reduced scalar curvature `4αδ` of the quaternionic Kähler base.
    pub fn nu_scal(&self) -> f64 {
        4.0 * self.alpha * self.delta
    }

    pub fn sign(&self) -> Sign {
        let ad = self.alpha * self.delta;
        if self.delta == 0.0 {
            Sign::Degenerate
        } else if ad > 0.0 {
            Sign::Positive
        } else {
            Sign::Negative
        }
    }

    /// `δ = 2α`, i.e. `β = 0`.
    pub fn is_parallel(&self) -> bool {
        self.beta().abs() <= 1e-12 * tolerance::scale(self.alpha.abs().max(self.delta.abs()))
    }
}

/// Product of quaternion units `a·b`, indices `0..4` for `1, i, j, k`.
fn unit_product(a: usize, b: usize) -> (f64, usize) {
    const TABLE: [[(f64, usize); 4]; 4] = [
        [(1.0, 0), (1.0, 1), (1.0, 2), (1.0, 3)],
        [(1.0, 1), (-1.0, 0), (1.0, 3), (-1.0, 2)],
        [(1.0, 2), (-1.0, 3), (-1.0, 0), (1.0, 1)],
        [(1.0, 3), (1.0, 2), (-1.0, 1), (-1.0, 0)],
    ];
    TABLE[a][b]
}

pub const CANONICAL_CONVENTION: &str = "adapted-v1: e1..e3 = xi1..xi3, e(4l+i) = phi_i e(4l), phi_i = left quaternion multiplication";

#[derive(Debug, Clone, PartialEq)]
pub struct PointModel {
    params: Params,
    convention: String,
    phi: [DMatrix<f64>; 3],
    xi: [DVector<f64>; 3],
    fundamental: [PForm; 3],
    horizontal_fundamental: [PForm; 3],
    xi_pairs: [PForm; 3],
}

impl PointModel {
    /// The canonical adapted-frame model.
    pub fn build(params: Params) -> Self {
        let d = params.dim();
        let mut phi = [DMatrix::zeros(d, d), DMatrix::zeros(d, d), DMatrix::zeros(d, d)];
        for (i, p) in phi.iter_mut().enumerate() {
            let (_, j, k) = cyclic(i);
            // φ_i ξ_j = ξ_k, φ_i ξ_k = −ξ_j
            p[(k, j)] = 1.0;
            p[(j, k)] = -1.0;
            for l in 0..params.n {
                let base = 3 + 4 * l;
                for s in 0..4 {
                    let (sign, t) = unit_product(i + 1, s);
                    p[(base + t, base + s)] = sign;
                }
            }
        }
        let xi = [0, 1, 2].map(|i| unit(d, i));
        Self::from_parts(params, phi, xi, CANONICAL_CONVENTION)
            .expect("canonical model has consistent shapes")
    }

    /// Assembles a model from raw structure tensors in an orthonormal frame
    /// whose first three coordinates are vertical. No axiom is enforced here;
    /// use [`check_structure_axioms`].
    pub fn from_parts(
        params: Params,
        phi: [DMatrix<f64>; 3],
        xi: [DVector<f64>; 3],
        convention: &str,
    ) -> Result<Self> {
        let d = params.dim();
        for m in &phi {
            if m.nrows() != d || m.ncols() != d {
                return Err(Error::DimensionMismatch {
                    expected: d,
                    got: m.nrows(),
                });
            }
        }
        for v in &xi {
            if v.len() != d {
                return Err(Error::DimensionMismatch {
                    expected: d,
                    got: v.len(),
                });
            }
        }
        let fundamental = [0, 1, 2].map(|i| fundamental_form(&phi[i]));
        let xi_pairs = [0, 1, 2].map(|i| {
            let (_, j, k) = cyclic(i);
            let a = PForm::one_form(xi[j].as_slice());
            let b = PForm::one_form(xi[k].as_slice());
            a.wedge(&b).expect("1-forms of equal dimension")
        });
        let horizontal_fundamental = [0, 1, 2].map(|i| &fundamental[i] + &xi_pairs[i]);
        Ok(Self {
            params,
            convention: convention.to_string(),
            phi,
            xi,
            fundamental,
            horizontal_fundamental,
            xi_pairs,
        })
    }

    pub fn params(&self) -> &Params {
        &self.params
    }

    pub fn n(&self) -> usize {
        self.params.n
    }

    pub fn dim(&self) -> usize {
        self.params.dim()
    }

    /// `dim Λ² = C(4n+3, 2)`.
    pub fn dim2(&self) -> usize {
        binomial(self.dim(), 2)
    }

    pub fn convention(&self) -> &str {
        &self.convention
    }

    pub fn phi(&self, i: usize) -> &DMatrix<f64> {
        &self.phi[i]
    }

    pub fn xi(&self, i: usize) -> &DVector<f64> {
        &self.xi[i]
    }

    /// `η_i = g(·, ξ_i)`; the frame is orthonormal so the components agree with `ξ_i`.
    pub fn eta(&self, i: usize) -> &DVector<f64> {
        &self.xi[i]
    }

    pub fn eta_form(&self, i: usize) -> PForm {
        PForm::one_form(self.xi[i].as_slice())
    }

    /// `Φ_i(X, Y) = g(X, φ_i Y)`.
    pub fn fundamental(&self, i: usize) -> &PForm {
        &self.fundamental[i]
    }

    /// `Φ_i^H = Φ_i + ξ_{jk}`.
    pub fn horizontal_fundamental(&self, i: usize) -> &PForm {
        &self.horizontal_fundamental[i]
    }

    /// `ξ_{jk} = ξ_j ∧ ξ_k` for the even permutation `(i, j, k)`.
    pub fn xi_pair(&self, i: usize) -> &PForm {
        &self.xi_pairs[i]
    }

    pub fn vertical_indices(&self) -> std::ops::Range<usize> {
        0..3
    }

    pub fn horizontal_indices(&self) -> std::ops::Range<usize> {
        3..self.dim()
    }

    /// Frame vector `e_r` (0-based).
    pub fn frame_vector(&self, r: usize) -> DVector<f64> {
        unit(self.dim(), r)
    }

    /// The metric restricted to `H`, i.e. `g − Σ η_i ⊗ η_i`.
    pub fn horizontal_metric(&self) -> DMatrix<f64> {
        let mut g = DMatrix::identity(self.dim(), self.dim());
        for i in 0..3 {
            g -= &self.xi[i] * self.xi[i].transpose();
        }
        g
    }

    /// Whether the pair basis element `e_a ∧ e_b` lies in `Λ²H`.
    pub fn is_horizontal_pair(&self, a: usize, b: usize) -> bool {
        a >= 3 && b >= 3
    }

    /// Matrix of the derivation `X∧Y ↦ φ_iX∧Y + X∧φ_iY` on `Λ²`.
    pub fn induced_action(&self, i: usize) -> DMatrix<f64> {
        induced_derivation(&self.phi[i])
    }

    pub fn to_document(&self) -> PointModelDocument {
        PointModelDocument {
            n: self.params.n,
            alpha: self.params.alpha,
            delta: self.params.delta,
            convention: self.convention.clone(),
            phi: self.phi.iter().map(rows).collect(),
        }
    }

    pub fn from_document(doc: &PointModelDocument) -> Result<Self> {
        let params = Params::new(doc.n, doc.alpha, doc.delta)?;
        let d = params.dim();
        if doc.phi.len() != 3 {
            return Err(Error::InvalidInput("expected three phi matrices".into()));
        }
        let mut phi = [DMatrix::zeros(d, d), DMatrix::zeros(d, d), DMatrix::zeros(d, d)];
        for (slot, m) in phi.iter_mut().zip(&doc.phi) {
            if m.len() != d || m.iter().any(|r| r.len() != d) {
                return Err(Error::DimensionMismatch {
                    expected: d,
                    got: m.len(),
                });
            }
            *slot = DMatrix::from_fn(d, d, |a, b| m[a][b]);
        }
        let xi = [0, 1, 2].map(|i| unit(d, i));
        Self::from_parts(params, phi, xi, &doc.convention)
    }
}

/// JSON form of a [`PointModel`]; `phi` holds three row-major matrices.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PointModelDocument {
    pub n: usize,
    pub alpha: f64,
    pub delta: f64,
    pub convention: String,
    pub phi: Vec<Vec<Vec<f64>>>,
}

fn rows(m: &DMatrix<f64>) -> Vec<Vec<f64>> {
    (0..m.nrows()).map(|r| m.row(r).iter().copied().collect()).collect()
}

pub(crate) fn unit(d: usize, i: usize) -> DVector<f64> {
    let mut v = DVector::zeros(d);
    v[i] = 1.0;
    v
}

fn fundamental_form(phi: &DMatrix<f64>) -> PForm {
    let d = phi.nrows();
    let coeffs = multi_indices(d, 2).iter().map(|p| phi[(p[0], p[1])]).collect();
    PForm::from_coeffs(d, 2, coeffs).expect("pair count matches")
}

pub(crate) fn induced_derivation(phi: &DMatrix<f64>) -> DMatrix<f64> {
    let d = phi.nrows();
    let pairs = multi_indices(d, 2);
    let n = pairs.len();
    let mut out = DMatrix::zeros(n, n);
    for (col, p) in pairs.iter().enumerate() {
        let (a, b) = (p[0], p[1]);
        let ea = unit(d, a);
        let eb = unit(d, b);
        let image = &PForm::decomposable((phi * &ea).as_slice(), eb.as_slice())
            + &PForm::decomposable(ea.as_slice(), (phi * &eb).as_slice());
        for (row, c) in image.coeffs().iter().enumerate() {
            out[(row, col)] = *c;
        }
    }
    out
}

/// Max-abs violation of every almost 3-contact metric identity.
pub fn check_structure_axioms(model: &PointModel) -> CheckReport {
    let d = model.dim();
    let id = DMatrix::<f64>::identity(d, d);
    let tol = tolerance::IDENTITY;
    let mut report = CheckReport::default();

    let phi = |i: usize| model.phi(i);
    let xi = |i: usize| model.xi(i);
    let eta = |i: usize| model.eta(i);
    let max3 = |f: &dyn Fn(usize) -> f64| (0..3).map(f).fold(0.0, f64::max);

    report.push("eta_i(xi_i) = 1", max3(&|i| (eta(i).dot(xi(i)) - 1.0).abs()), tol);
    report.push("phi_i xi_i = 0", max3(&|i| (phi(i) * xi(i)).amax()), tol);
    report.push(
        "eta_i o phi_i = 0",
        max3(&|i| (eta(i).transpose() * phi(i)).amax()),
        tol,
    );
    report.push(
        "phi_i^2 = -I + eta_i (x) xi_i",
        max3(&|i| (phi(i) * phi(i) + &id - xi(i) * eta(i).transpose()).amax()),
        tol,
    );
    report.push(
        "g(phi X, phi Y) = g(X, Y) - eta(X) eta(Y)",
        max3(&|i| (phi(i).transpose() * phi(i) - &id + eta(i) * eta(i).transpose()).amax()),
        tol,
    );
    let mut ortho: f64 = 0.0;
    for i in 0..3 {
        for j in 0..3 {
            let want = if i == j { 1.0 } else { 0.0 };
            ortho = ortho.max((xi(i).dot(xi(j)) - want).abs());
        }
    }
    report.push("xi orthonormal", ortho, tol);
    report.push(
        "phi_k = phi_i phi_j - eta_j (x) xi_i",
        max3(&|i| {
            let (_, j, k) = cyclic(i);
            (phi(i) * phi(j) - xi(i) * eta(j).transpose() - phi(k)).amax()
        }),
        tol,
    );
    report.push(
        "phi_k = -phi_j phi_i + eta_i (x) xi_j",
        max3(&|i| {
            let (_, j, k) = cyclic(i);
            (-(phi(j) * phi(i)) + xi(j) * eta(i).transpose() - phi(k)).amax()
        }),
        tol,
    );
    report.push(
        "xi_k = phi_i xi_j = -phi_j xi_i",
        max3(&|i| {
            let (_, j, k) = cyclic(i);
            let a = (phi(i) * xi(j) - xi(k)).amax();
            let b = (phi(j) * xi(i) + xi(k)).amax();
            a.max(b)
        }),
        tol,
    );
    report.push(
        "eta_k = eta_i o phi_j = -eta_j o phi_i",
        max3(&|i| {
            let (_, j, k) = cyclic(i);
            let a = (eta(i).transpose() * phi(j) - eta(k).transpose()).amax();
            let b = (eta(j).transpose() * phi(i) + eta(k).transpose()).amax();
            a.max(b)
        }),
        tol,
    );
    report.push(
        "phi_i skew-symmetric",
        max3(&|i| (phi(i) + phi(i).transpose()).amax()),
        tol,
    );

    // Φ_i = −½ Σ_r e_r ∧ φ_i e_r
    report.push(
        "Phi_i = -1/2 sum_r e_r ^ phi_i e_r",
        max3(&|i| {
            let mut acc = PForm::zeros(d, 2).expect("d >= 2");
            for r in 0..d {
                let er = model.frame_vector(r);
                acc = &acc + &PForm::decomposable(er.as_slice(), (phi(i) * &er).as_slice());
            }
            (&acc.scaled(-0.5) - model.fundamental(i)).max_abs()
        }),
        tol,
    );

    // Φ_i^H = −¼ Σ_{r ∈ H} (e_r ∧ φ_i e_r + φ_j e_r ∧ φ_k e_r)
    report.push(
        "Phi_i^H adapted expression",
        max3(&|i| {
            let (_, j, k) = cyclic(i);
            let mut acc = PForm::zeros(d, 2).expect("d >= 2");
            for r in model.horizontal_indices() {
                let er = model.frame_vector(r);
                acc = &acc + &PForm::decomposable(er.as_slice(), (phi(i) * &er).as_slice());
                acc = &acc
                    + &PForm::decomposable((phi(j) * &er).as_slice(), (phi(k) * &er).as_slice());
            }
            (&acc.scaled(-0.25) - model.horizontal_fundamental(i)).max_abs()
        }),
        tol,
    );

    let mut adapted: f64 = 0.0;
    for i in 0..3 {
        adapted = adapted.max((xi(i) - model.frame_vector(i)).amax());
        for l in 0..model.n() {
            let base = 3 + 4 * l;
            let image = phi(i) * model.frame_vector(base);
            adapted = adapted.max((image - model.frame_vector(base + i + 1)).amax());
        }
    }
    report.push("adapted frame e_(4l+i) = phi_i e_(4l)", adapted, tol);

    let two_n_plus_one = (2 * model.n() + 1) as f64;
    let mut gram: f64 = 0.0;
    let mut cross: f64 = 0.0;
    for i in 0..3 {
        for j in 0..3 {
            let want = if i == j { two_n_plus_one } else { 0.0 };
            let got = model.fundamental(i).inner(model.fundamental(j)).expect("same shape");
            gram = gram.max((got - want).abs());
            // ⟨Φ_i, ξ_{j'k'}⟩ = −ε_{i j' k'} where ξ_pair(j) = ξ_{j+1} ∧ ξ_{j+2}
            let want = if i == j { -1.0 } else { 0.0 };
            let got = model.fundamental(i).inner(model.xi_pair(j)).expect("same shape");
            cross = cross.max((got - want).abs());
        }
    }
    report.push("<Phi_i, Phi_j> = (2n+1) delta_ij", gram, tol);
    report.push("<Phi_i, xi_jk> = -eps_ijk", cross, tol);
    report
}

/// Orthonormal bases of `Λ²₁ = ⊕ N_i`, `Λ²₂ = Λ²H ∩ 𝒬^⊥` and `Λ²₃ = V ∧ H`,
/// stored as column matrices in `Λ²` coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct Lambda2Split {
    pub basis1: DMatrix<f64>,
    pub basis2: DMatrix<f64>,
    pub basis3: DMatrix<f64>,
}

impl Lambda2Split {
    pub fn dims(&self) -> (usize, usize, usize) {
        (self.basis1.ncols(), self.basis2.ncols(), self.basis3.ncols())
    }

    pub fn block(&self, b: usize) -> &DMatrix<f64> {
        match b {
            0 => &self.basis1,
            1 => &self.basis2,
            2 => &self.basis3,
            _ => panic!("block index {b} out of range"),
        }
    }

    /// All three bases side by side: an orthogonal `N × N` matrix.
    pub fn full_basis(&self) -> DMatrix<f64> {
        let n = self.basis1.nrows();
        let (a, b, c) = self.dims();
        let mut out = DMatrix::zeros(n, a + b + c);
        out.columns_mut(0, a).copy_from(&self.basis1);
        out.columns_mut(a, b).copy_from(&self.basis2);
        out.columns_mut(a + b, c).copy_from(&self.basis3);
        out
    }

    /// Orthonormal basis `{Φ_i^H/√(2n), ξ_{jk}}` of `N_i`, as two columns.
    pub fn ni_basis(&self, i: usize) -> DMatrix<f64> {
        self.basis1.columns(2 * i, 2).into_owned()
    }
}

/// Expected block dimensions `(6, 6n − 3 + 16·C(n,2), 12n)`.
pub fn expected_split_dims(n: usize) -> (usize, usize, usize) {
    (6, 6 * n - 3 + 16 * binomial(n, 2), 12 * n)
}

pub fn lambda2_split(model: &PointModel) -> Lambda2Split {
    let d = model.dim();
    let size = model.dim2();
    let norm = (2.0 * model.n() as f64).sqrt();

    let mut basis1 = DMatrix::zeros(size, 6);
    for i in 0..3 {
        let q = model.horizontal_fundamental(i).scaled(1.0 / norm);
        basis1.set_column(2 * i, &q.to_vector());
        basis1.set_column(2 * i + 1, &model.xi_pair(i).to_vector());
    }

    let horizontal: Vec<usize> = model.horizontal_indices().collect();
    let mut basis3 = DMatrix::zeros(size, 12 * model.n());
    let mut col = 0;
    for &r in &horizontal {
        for i in 0..3 {
            // e_r ∧ ξ_i = −ξ_i ∧ e_r
            basis3[(pair_index(d, i, r), col)] = -1.0;
            col += 1;
        }
    }

    // Gram–Schmidt of the horizontal pair basis against 𝒬 = span{Φ_i^H}.
    let mut accepted: Vec<DVector<f64>> = (0..3).map(|i| basis1.column(2 * i).into_owned()).collect();
    let mut basis2_cols = Vec::new();
    for (a_pos, &a) in horizontal.iter().enumerate() {
        for &b in &horizontal[a_pos + 1..] {
            let mut v = DVector::zeros(size);
            v[pair_index(d, a, b)] = 1.0;
            for _ in 0..2 {
                for u in &accepted {
                    let c = u.dot(&v);
                    v.axpy(-c, u, 1.0);
                }
            }
            let nv = v.norm();
            if nv > 1e-8 {
                v /= nv;
                accepted.push(v.clone());
                basis2_cols.push(v);
            }
        }
    }
    let basis2 = DMatrix::from_columns(&basis2_cols);
    Lambda2Split { basis1, basis2, basis3 }
}
