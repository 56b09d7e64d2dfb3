//! Homogeneous models `G/H` built from structure constants.
//!
//! The reductive complement is `𝔪 = 𝔰𝔭(1) ⊕ 𝔤₁`. Invariant forms are
//! evaluated at the origin, with `dη(X, Y) = −η([X, Y]_𝔪)` for `X, Y ∈ 𝔪`.

use std::ops::{Add, Mul, Neg, Sub};

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::report::CheckReport;
use crate::structure::{cyclic, Params, PointModel};
use crate::tolerance;

/// A real quaternion `w + xi + yj + zk`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Quaternion {
    pub w: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Quaternion {
    pub const fn new(w: f64, x: f64, y: f64, z: f64) -> Self {
        Self { w, x, y, z }
    }

    /// Units `1, i, j, k` for `0..4`.
    pub fn unit(u: usize) -> Self {
        let mut c = [0.0; 4];
        c[u] = 1.0;
        Self::new(c[0], c[1], c[2], c[3])
    }

    pub fn conj(self) -> Self {
        Self::new(self.w, -self.x, -self.y, -self.z)
    }

    pub fn components(self) -> [f64; 4] {
        [self.w, self.x, self.y, self.z]
    }

    pub fn is_zero(self) -> bool {
        self.components().iter().all(|c| *c == 0.0)
    }
}

impl Add for Quaternion {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self::new(self.w + o.w, self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl Sub for Quaternion {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        self + (-o)
    }
}

impl Neg for Quaternion {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.w, -self.x, -self.y, -self.z)
    }
}

impl Mul for Quaternion {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        Self::new(
            self.w * o.w - self.x * o.x - self.y * o.y - self.z * o.z,
            self.w * o.x + self.x * o.w + self.y * o.z - self.z * o.y,
            self.w * o.y - self.x * o.z + self.y * o.w + self.z * o.x,
            self.w * o.z + self.x * o.y - self.y * o.x + self.z * o.w,
        )
    }
}

/// Square quaternionic matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
struct QuatMatrix {
    size: usize,
    entries: Vec<Quaternion>,
}

impl QuatMatrix {
    fn zeros(size: usize) -> Self {
        Self {
            size,
            entries: vec![Quaternion::default(); size * size],
        }
    }

    fn get(&self, r: usize, c: usize) -> Quaternion {
        self.entries[r * self.size + c]
    }

    fn set(&mut self, r: usize, c: usize, q: Quaternion) {
        self.entries[r * self.size + c] = q;
    }

    fn mul(&self, o: &Self) -> Self {
        let n = self.size;
        let mut out = Self::zeros(n);
        for r in 0..n {
            for c in 0..n {
                let mut acc = Quaternion::default();
                for k in 0..n {
                    acc = acc + self.get(r, k) * o.get(k, c);
                }
                out.set(r, c, acc);
            }
        }
        out
    }

    fn commutator(&self, o: &Self) -> Self {
        let a = self.mul(o);
        let b = o.mul(self);
        Self {
            size: self.size,
            entries: a.entries.iter().zip(&b.entries).map(|(x, y)| *x - *y).collect(),
        }
    }
}

/// A real Lie algebra given by `[e_i, e_j] = Σ_k c_ij^k e_k`.
#[derive(Debug, Clone, PartialEq)]
pub struct LieAlgebra {
    dim: usize,
    constants: Vec<f64>,
}

impl LieAlgebra {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            constants: vec![0.0; dim * dim * dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    fn idx(&self, i: usize, j: usize, k: usize) -> usize {
        (i * self.dim + j) * self.dim + k
    }

    pub fn constant(&self, i: usize, j: usize, k: usize) -> f64 {
        self.constants[self.idx(i, j, k)]
    }

    /// Sets `[e_i, e_j] ∋ c e_k` and the antisymmetric partner.
    pub fn set(&mut self, i: usize, j: usize, k: usize, c: f64) {
        let a = self.idx(i, j, k);
        let b = self.idx(j, i, k);
        self.constants[a] = c;
        self.constants[b] = -c;
    }

    pub fn bracket(&self, x: &DVector<f64>, y: &DVector<f64>) -> DVector<f64> {
        let mut out = DVector::zeros(self.dim);
        for i in 0..self.dim {
            if x[i] == 0.0 {
                continue;
            }
            for j in 0..self.dim {
                let w = x[i] * y[j];
                if w == 0.0 {
                    continue;
                }
                for k in 0..self.dim {
                    out[k] += w * self.constant(i, j, k);
                }
            }
        }
        out
    }

    /// Matrix of `ad(e_i)`.
    pub fn ad_basis(&self, i: usize) -> DMatrix<f64> {
        DMatrix::from_fn(self.dim, self.dim, |k, j| self.constant(i, j, k))
    }

    pub fn ad(&self, x: &DVector<f64>) -> DMatrix<f64> {
        let mut out = DMatrix::zeros(self.dim, self.dim);
        for i in 0..self.dim {
            if x[i] != 0.0 {
                out += self.ad_basis(i) * x[i];
            }
        }
        out
    }

    pub fn basis_vector(&self, i: usize) -> DVector<f64> {
        let mut v = DVector::zeros(self.dim);
        v[i] = 1.0;
        v
    }

    /// Largest violation of antisymmetry and of the Jacobi identity on basis triples.
    pub fn jacobi_residual(&self) -> f64 {
        let n = self.dim;
        let ads: Vec<DMatrix<f64>> = (0..n).map(|i| self.ad_basis(i)).collect();
        let mut worst: f64 = 0.0;
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    worst = worst.max((self.constant(i, j, k) + self.constant(j, i, k)).abs());
                }
                // ad[e_i, e_j] = [ad e_i, ad e_j]
                let mut lhs = DMatrix::zeros(n, n);
                for (k, ad) in ads.iter().enumerate() {
                    let c = self.constant(i, j, k);
                    if c != 0.0 {
                        lhs += ad * c;
                    }
                }
                let rhs = &ads[i] * &ads[j] - &ads[j] * &ads[i];
                worst = worst.max((lhs - rhs).amax());
            }
        }
        worst
    }
}

/// `κ(X, Y) = tr(ad X ∘ ad Y)`.
pub fn killing_form(algebra: &LieAlgebra) -> DMatrix<f64> {
    let n = algebra.dim();
    let ads: Vec<DMatrix<f64>> = (0..n).map(|i| algebra.ad_basis(i)).collect();
    DMatrix::from_fn(n, n, |a, b| (&ads[a] * &ads[b]).trace())
}

/// Largest violation of `κ([Z,X],Y) + κ(X,[Z,Y]) = 0` on basis triples.
pub fn killing_invariance_residual(algebra: &LieAlgebra, killing: &DMatrix<f64>) -> f64 {
    let n = algebra.dim();
    let mut worst: f64 = 0.0;
    for z in 0..n {
        let ad = algebra.ad_basis(z);
        let m = ad.transpose() * killing + killing * &ad;
        worst = worst.max(m.amax());
    }
    worst
}

/// Structure constants with the splitting `𝔤 = 𝔥 ⊕ 𝔰𝔭(1) ⊕ 𝔤₁`.
#[derive(Debug, Clone, PartialEq)]
pub struct LieData {
    pub algebra: LieAlgebra,
    /// Basis elements `σ₁, σ₂, σ₃` with `[σ_i, σ_j] = 2σ_k`.
    pub sp1: [usize; 3],
    pub g1: Vec<usize>,
    pub h: Vec<usize>,
}

/// JSON form of [`LieData`]: `[i, j, k, c]` means `[e_i, e_j] ∋ c e_k`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LieDataDocument {
    pub dim: usize,
    pub triples: Vec<(usize, usize, usize, f64)>,
    pub h: Vec<usize>,
    pub sp1: Vec<usize>,
    pub g1: Vec<usize>,
}

impl LieData {
    pub fn from_document(doc: &LieDataDocument) -> Result<Self> {
        let d = doc.dim;
        if d == 0 {
            return Err(Error::InvalidLieData("dimension must be positive".into()));
        }
        let mut algebra = LieAlgebra::zeros(d);
        for &(i, j, k, c) in &doc.triples {
            if i >= d || j >= d || k >= d {
                return Err(Error::InvalidLieData(format!("index out of range in [{i}, {j}, {k}]")));
            }
            if i == j && c != 0.0 {
                return Err(Error::InvalidLieData(format!("[e_{i}, e_{i}] must vanish")));
            }
            if !c.is_finite() {
                return Err(Error::InvalidLieData("non-finite structure constant".into()));
            }
            algebra.set(i, j, k, c);
        }
        let sp1: [usize; 3] = doc
            .sp1
            .as_slice()
            .try_into()
            .map_err(|_| Error::InvalidLieData("sp(1) needs exactly three indices".into()))?;
        let mut seen = vec![false; d];
        for &i in doc.h.iter().chain(&sp1).chain(&doc.g1) {
            if i >= d || std::mem::replace(&mut seen[i], true) {
                return Err(Error::InvalidLieData(format!("index {i} repeated or out of range")));
            }
        }
        if seen.iter().any(|s| !s) {
            return Err(Error::InvalidLieData("index sets must cover the algebra".into()));
        }
        if doc.g1.is_empty() || !doc.g1.len().is_multiple_of(4) {
            return Err(Error::InvalidLieData(format!(
                "dim g1 = {} is not a positive multiple of 4",
                doc.g1.len()
            )));
        }
        Ok(Self {
            algebra,
            sp1,
            g1: doc.g1.clone(),
            h: doc.h.clone(),
        })
    }

    pub fn to_document(&self) -> LieDataDocument {
        let d = self.algebra.dim();
        let mut triples = Vec::new();
        for i in 0..d {
            for j in (i + 1)..d {
                for k in 0..d {
                    let c = self.algebra.constant(i, j, k);
                    if c != 0.0 {
                        triples.push((i, j, k, c));
                    }
                }
            }
        }
        LieDataDocument {
            dim: d,
            triples,
            h: self.h.clone(),
            sp1: self.sp1.to_vec(),
            g1: self.g1.clone(),
        }
    }

    pub fn n(&self) -> usize {
        self.g1.len() / 4
    }

    /// Indices of `𝔪`: `σ₁, σ₂, σ₃` followed by `𝔤₁`.
    pub fn m_indices(&self) -> Vec<usize> {
        self.sp1.iter().chain(&self.g1).copied().collect()
    }

    fn g0_indices(&self) -> Vec<usize> {
        self.h.iter().chain(&self.sp1).copied().collect()
    }
}

/// Structure constants of `𝔰𝔭(n+1)` with `𝔥 = 𝔰𝔭(n)`.
///
/// Elements are anti-Hermitian quaternionic matrices. Basis order is
/// `u·E₀₀` for `u = i, j, k`, then `q·E₀ₗ − q̄·Eₗ₀` for `l = 1..n`,
/// `q = 1, i, j, k`, then the `𝔰𝔭(n)` block.
pub fn sp_data(n: usize) -> LieData {
    let size = n + 1;
    let mut basis: Vec<QuatMatrix> = Vec::new();
    let diag = |l: usize, u: usize| {
        let mut m = QuatMatrix::zeros(size);
        m.set(l, l, Quaternion::unit(u));
        m
    };
    let off = |a: usize, b: usize, u: usize| {
        let mut m = QuatMatrix::zeros(size);
        let q = Quaternion::unit(u);
        m.set(a, b, q);
        m.set(b, a, -q.conj());
        m
    };
    for u in 1..4 {
        basis.push(diag(0, u));
    }
    for l in 1..size {
        for u in 0..4 {
            basis.push(off(0, l, u));
        }
    }
    for l in 1..size {
        for u in 1..4 {
            basis.push(diag(l, u));
        }
    }
    for a in 1..size {
        for b in (a + 1)..size {
            for u in 0..4 {
                basis.push(off(a, b, u));
            }
        }
    }

    // Coordinates of an anti-Hermitian matrix in this basis.
    let coords = |m: &QuatMatrix| -> Vec<f64> {
        let mut out = Vec::with_capacity(basis.len());
        for u in 1..4 {
            out.push(m.get(0, 0).components()[u]);
        }
        for l in 1..size {
            out.extend_from_slice(&m.get(0, l).components());
        }
        for l in 1..size {
            let c = m.get(l, l).components();
            out.extend_from_slice(&c[1..]);
        }
        for a in 1..size {
            for b in (a + 1)..size {
                out.extend_from_slice(&m.get(a, b).components());
            }
        }
        out
    };

    let dim = basis.len();
    let mut algebra = LieAlgebra::zeros(dim);
    for i in 0..dim {
        for j in (i + 1)..dim {
            let c = coords(&basis[i].commutator(&basis[j]));
            for (k, v) in c.into_iter().enumerate() {
                if v != 0.0 {
                    algebra.set(i, j, k, v);
                }
            }
        }
    }
    LieData {
        algebra,
        sp1: [0, 1, 2],
        g1: (3..3 + 4 * n).collect(),
        h: (3 + 4 * n..dim).collect(),
    }
}

/// A homogeneous 3-(α,δ)-Sasaki structure on `𝔪`.
#[derive(Debug, Clone, PartialEq)]
pub struct LieModel {
    pub data: LieData,
    pub params: Params,
    pub killing: DMatrix<f64>,
    /// Inner product on `𝔪` in the basis [`LieData::m_indices`].
    pub metric: DMatrix<f64>,
    /// `φ_i` on `𝔪`.
    pub phi: [DMatrix<f64>; 3],
    /// `ξ_i = δσ_i` in `𝔪` coordinates.
    pub xi: [DVector<f64>; 3],
    pub compact: bool,
    pub label: String,
}

impl LieModel {
    /// Applies the homogeneous construction to validated data.
    pub fn new(data: LieData, alpha: f64, delta: f64, label: &str) -> Result<Self> {
        let params = Params::new(data.n(), alpha, delta)?;
        if delta == 0.0 {
            return Err(Error::Constraint("the homogeneous construction needs delta != 0".into()));
        }
        let killing = killing_form(&data.algebra);
        let compact = nalgebra::SymmetricEigen::new(killing.clone()).eigenvalues.max()
            < -tolerance::IDENTITY;
        let ad = alpha * delta;
        if compact && ad <= 0.0 {
            return Err(Error::Constraint(format!(
                "compact data requires alpha*delta > 0, got {ad}"
            )));
        }
        if !compact && ad >= 0.0 {
            return Err(Error::Constraint(format!(
                "non-compact data requires alpha*delta < 0, got {ad}"
            )));
        }
        let n = params.n() as f64;
        let m = data.m_indices();
        let dm = m.len();
        let metric = DMatrix::from_fn(dm, dm, |a, b| {
            let k = killing[(m[a], m[b])];
            match (a < 3, b < 3) {
                (true, true) => -k / (4.0 * delta * delta * (n + 2.0)),
                (false, false) => -k / (8.0 * alpha * delta * (n + 2.0)),
                _ => 0.0,
            }
        });
        let xi = [0, 1, 2].map(|i| {
            let mut v = DVector::zeros(dm);
            v[i] = delta;
            v
        });
        let phi = [0, 1, 2].map(|i| {
            let ad_sigma = data.algebra.ad_basis(data.sp1[i]);
            DMatrix::from_fn(dm, dm, |r, c| {
                let factor = if c < 3 { 0.5 } else { 1.0 };
                // (1/2δ) ad ξ_i on V and (1/δ) ad ξ_i on H, with ξ_i = δσ_i
                factor * ad_sigma[(m[r], m[c])]
            })
        });
        Ok(Self {
            data,
            params,
            killing,
            metric,
            phi,
            xi,
            compact,
            label: label.to_string(),
        })
    }

    /// Scales the vertical and horizontal metric blocks; used to exercise the detectors.
    pub fn with_metric_scales(mut self, vertical: f64, horizontal: f64) -> Self {
        let dm = self.metric.nrows();
        for a in 0..dm {
            for b in 0..dm {
                self.metric[(a, b)] *= if a < 3 && b < 3 {
                    vertical
                } else if a >= 3 && b >= 3 {
                    horizontal
                } else {
                    1.0
                };
            }
        }
        self
    }

    pub fn dim_m(&self) -> usize {
        self.metric.nrows()
    }

    /// Embeds `𝔪` coordinates into `𝔤`.
    fn to_algebra(&self, v: &DVector<f64>) -> DVector<f64> {
        let mut out = DVector::zeros(self.data.algebra.dim());
        for (a, &i) in self.data.m_indices().iter().enumerate() {
            out[i] = v[a];
        }
        out
    }

    /// `𝔪`-component of an algebra vector.
    fn project(&self, v: &DVector<f64>) -> DVector<f64> {
        DVector::from_iterator(self.dim_m(), self.data.m_indices().iter().map(|&i| v[i]))
    }

    /// `[X, Y]_𝔪` for `X, Y ∈ 𝔪`.
    pub fn bracket_m(&self, x: &DVector<f64>, y: &DVector<f64>) -> DVector<f64> {
        self.project(&self.data.algebra.bracket(&self.to_algebra(x), &self.to_algebra(y)))
    }

    fn unit_m(&self, a: usize) -> DVector<f64> {
        let mut v = DVector::zeros(self.dim_m());
        v[a] = 1.0;
        v
    }

    pub fn g(&self, x: &DVector<f64>, y: &DVector<f64>) -> f64 {
        (x.transpose() * &self.metric * y)[(0, 0)]
    }

    pub fn eta(&self, i: usize, x: &DVector<f64>) -> f64 {
        self.g(&self.xi[i], x)
    }

    /// `Φ_i(X, Y) = g(X, φ_i Y)`.
    pub fn fundamental(&self, i: usize, x: &DVector<f64>, y: &DVector<f64>) -> f64 {
        self.g(x, &(&self.phi[i] * y))
    }

    /// `dη_i(X, Y) = −η_i([X, Y]_𝔪)`.
    pub fn d_eta(&self, i: usize, x: &DVector<f64>, y: &DVector<f64>) -> f64 {
        -self.eta(i, &self.bracket_m(x, y))
    }
}

/// The round-sphere model `Sp(n+1)/Sp(n)` (also the local model of `ℝP^{4n+3}`).
pub fn build_sp_model(n: usize, alpha: f64, delta: f64) -> Result<LieModel> {
    if n == 0 {
        return Err(Error::InvalidInput("n must be at least 1".into()));
    }
    if alpha * delta <= 0.0 || (alpha * delta).is_nan() {
        return Err(Error::Constraint(format!(
            "sp(n+1)/sp(n) is compact and needs alpha*delta > 0, got {}",
            alpha * delta
        )));
    }
    LieModel::new(sp_data(n), alpha, delta, &format!("sp({})/sp({})", n + 1, n))
}

/// Every manifold-level identity of the construction.
pub fn verify_homogeneous_identities(lm: &LieModel) -> CheckReport {
    let alg = &lm.data.algebra;
    let p = lm.params;
    let (alpha, delta) = (p.alpha(), p.delta());
    let tol = tolerance::IDENTITY * tolerance::scale(alpha.abs().max(delta.abs()).powi(2));
    let mut report = CheckReport::default();

    let killing_scale = tolerance::scale(lm.killing.amax());
    report.push("Jacobi identity", alg.jacobi_residual(), tol);
    report.push(
        "Killing form ad-invariance",
        killing_invariance_residual(alg, &lm.killing) / killing_scale,
        tol,
    );

    let d = alg.dim();
    let leak = |xs: &[usize], ys: &[usize], allowed: &[usize]| -> f64 {
        let mut worst: f64 = 0.0;
        for &x in xs {
            for &y in ys {
                for k in 0..d {
                    if !allowed.contains(&k) {
                        worst = worst.max(alg.constant(x, y, k).abs());
                    }
                }
            }
        }
        worst
    };
    let g0 = lm.data.g0_indices();
    let sp1 = lm.data.sp1;
    report.push("h and sp(1) commute", leak(&lm.data.h, &sp1, &[]), tol);
    report.push("h is a subalgebra", leak(&lm.data.h, &lm.data.h, &lm.data.h), tol);
    report.push("[g0, g1] in g1", leak(&g0, &lm.data.g1, &lm.data.g1), tol);
    report.push("[g1, g1] in g0 (symmetric pair)", leak(&lm.data.g1, &lm.data.g1, &g0), tol);

    let mut sigma: f64 = 0.0;
    let mut reeb: f64 = 0.0;
    for i in 0..3 {
        let (_, j, k) = cyclic(i);
        let s = alg.bracket(&alg.basis_vector(sp1[i]), &alg.basis_vector(sp1[j]));
        sigma = sigma.max((s - alg.basis_vector(sp1[k]) * 2.0).amax());
        let b = lm.bracket_m(&lm.xi[i], &lm.xi[j]);
        reeb = reeb.max((b - &lm.xi[k] * (2.0 * delta)).amax());
    }
    report.push("[sigma_i, sigma_j] = 2 sigma_k", sigma, tol);
    report.push("[xi_i, xi_j] = 2 delta xi_k", reeb, tol);

    let dm = lm.dim_m();
    let horizontal: Vec<usize> = (3..dm).collect();
    let ads: [DMatrix<f64>; 3] = [0, 1, 2].map(|i| {
        let a = alg.ad_basis(sp1[i]);
        DMatrix::from_fn(horizontal.len(), horizontal.len(), |r, c| {
            a[(lm.data.g1[r], lm.data.g1[c])]
        })
    });
    let id = DMatrix::<f64>::identity(horizontal.len(), horizontal.len());
    let mut quaternionic: f64 = 0.0;
    for i in 0..3 {
        let (_, j, k) = cyclic(i);
        quaternionic = quaternionic.max((&ads[i] * &ads[i] + &id).amax());
        quaternionic = quaternionic.max((&ads[i] * &ads[j] - &ads[k]).amax());
    }
    report.push("sp(1) acts quaternionically on g1", quaternionic, tol);

    let gh = lm.metric.view((3, 3), (dm - 3, dm - 3)).into_owned();
    let mut isometry: f64 = 0.0;
    for &hidx in &lm.data.h {
        let a = alg.ad_basis(hidx);
        let block = DMatrix::from_fn(horizontal.len(), horizontal.len(), |r, c| {
            a[(lm.data.g1[r], lm.data.g1[c])]
        });
        isometry = isometry.max((block.transpose() * &gh + &gh * &block).amax());
    }
    report.push("h acts isometrically on g1", isometry, tol);

    let mut deta: f64 = 0.0;
    for i in 0..3 {
        let (_, j, k) = cyclic(i);
        for a in 0..dm {
            for b in 0..dm {
                let (x, y) = (lm.unit_m(a), lm.unit_m(b));
                let ejk = lm.eta(j, &x) * lm.eta(k, &y) - lm.eta(j, &y) * lm.eta(k, &x);
                let want = 2.0 * alpha * lm.fundamental(i, &x, &y) + 2.0 * (alpha - delta) * ejk;
                deta = deta.max((lm.d_eta(i, &x, &y) - want).abs());
            }
        }
    }
    report.push("d eta_i = 2 alpha Phi_i + 2(alpha - delta) eta_jk", deta, tol);

    let mut vcomm: f64 = 0.0;
    let mut killing_compat: f64 = 0.0;
    for &a in &horizontal {
        for &b in &horizontal {
            let (x, y) = (lm.unit_m(a), lm.unit_m(b));
            let bracket = lm.bracket_m(&x, &y);
            let mut vertical = DVector::zeros(dm);
            vertical.rows_mut(0, 3).copy_from(&bracket.rows(0, 3));
            let mut want = DVector::zeros(dm);
            for i in 0..3 {
                want += &lm.xi[i] * (-2.0 * alpha * lm.fundamental(i, &x, &y));
            }
            vcomm = vcomm.max((vertical - want).amax());
        }
        for i in 0..3 {
            for j in 0..3 {
                killing_compat = killing_compat.max(lm.d_eta(i, &lm.unit_m(a), &lm.xi[j]).abs());
            }
        }
    }
    report.push("[X,Y]_V = -2 alpha sum Phi_i(X,Y) xi_i", vcomm, tol);
    report.push("d eta_i(X, xi_j) = 0", killing_compat, tol);
    report
}

/// Adapted orthonormal frame of `𝔪` and the resulting pointwise model.
pub fn pointwise_of(lm: &LieModel) -> Result<PointModel> {
    let report = verify_homogeneous_identities(lm);
    if let Some(bad) = report.failures().next() {
        return Err(Error::Constraint(format!(
            "homogeneous identity '{}' fails with residual {:e}",
            bad.name, bad.value
        )));
    }
    let dm = lm.dim_m();
    let mut frame: Vec<DVector<f64>> = lm.xi.to_vec();
    for a in 3..dm {
        if frame.len() == dm {
            break;
        }
        let mut v = lm.unit_m(a);
        for _ in 0..2 {
            for e in &frame {
                let c = lm.g(e, &v);
                v -= e * c;
            }
        }
        let norm = lm.g(&v, &v).sqrt();
        if norm < 1e-8 {
            continue;
        }
        v /= norm;
        let block: Vec<DVector<f64>> = [0, 1, 2].iter().map(|&i| &lm.phi[i] * &v).collect();
        frame.push(v);
        frame.extend(block);
    }
    if frame.len() != dm {
        return Err(Error::Constraint("could not build an adapted frame".into()));
    }
    let basis = DMatrix::from_columns(&frame);
    let gram = basis.transpose() * &lm.metric * &basis;
    let defect = (gram - DMatrix::identity(dm, dm)).amax();
    if defect > 1e-9 {
        return Err(Error::Constraint(format!("adapted frame is not orthonormal ({defect:e})")));
    }
    let phi = [0, 1, 2].map(|i| basis.transpose() * &lm.metric * &lm.phi[i] * &basis);
    let xi = [0, 1, 2].map(|i| {
        let mut v = DVector::zeros(dm);
        v[i] = 1.0;
        v
    });
    PointModel::from_parts(lm.params, phi, xi, &format!("homogeneous {}", lm.label))
}
