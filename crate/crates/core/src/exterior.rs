//! Dense exterior algebra over `ℝ^d` with an orthonormal frame.
//!
//! A p-form is stored by its coefficients on the strictly increasing
//! multi-indices `i₁ < … < i_p`, enumerated in lexicographic order. With the
//! Gram-determinant inner product this basis is orthonormal, and a p-form
//! evaluates on vectors as `ω(X₁,…,X_p) = Σ_I ω_I det[X_a^{I_b}]`.
//!
//! Symmetric operators on `Λ²` ([`SymOp`]) are indexed by the same ordering
//! of pairs `(a, b)`, `a < b`.

use std::ops::{Add, Mul, Neg, Sub};

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::tolerance;

pub const MAX_DEGREE: usize = 4;

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: usize = 1;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// All strictly increasing multi-indices of length `p` in `0..dim`, in
/// lexicographic order.
pub fn multi_indices(dim: usize, p: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::with_capacity(binomial(dim, p));
    let mut current = Vec::with_capacity(p);
    fn recurse(start: usize, dim: usize, p: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == p {
            out.push(cur.clone());
            return;
        }
        let remaining = p - cur.len();
        for i in start..=(dim - remaining) {
            cur.push(i);
            recurse(i + 1, dim, p, cur, out);
            cur.pop();
        }
    }
    if p <= dim {
        recurse(0, dim, p, &mut current, &mut out);
    }
    out
}

/// Lexicographic rank of a strictly increasing multi-index.
pub fn rank(dim: usize, idx: &[usize]) -> usize {
    let p = idx.len();
    let mut r = 0;
    let mut prev = 0usize;
    for (t, &c) in idx.iter().enumerate() {
        for x in prev..c {
            r += binomial(dim - 1 - x, p - 1 - t);
        }
        prev = c + 1;
    }
    r
}

/// Sorts `idx` in place and returns the permutation sign, or `None` when an
/// index repeats.
pub fn sort_with_sign(idx: &mut [usize]) -> Option<f64> {
    let mut sign = 1.0;
    for i in 1..idx.len() {
        let mut j = i;
        while j > 0 && idx[j - 1] > idx[j] {
            idx.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    if idx.windows(2).any(|w| w[0] == w[1]) {
        None
    } else {
        Some(sign)
    }
}

/// Index of the basis 2-form `e_a ∧ e_b` (`a < b`) in a `Λ²` coordinate vector.
pub fn pair_index(dim: usize, a: usize, b: usize) -> usize {
    debug_assert!(a < b && b < dim);
    rank(dim, &[a, b])
}

/// A p-form on `ℝ^d`, `1 ≤ p ≤ 4`.
#[derive(Debug, Clone, PartialEq)]
pub struct PForm {
    degree: usize,
    dim: usize,
    coeffs: Vec<f64>,
}

fn check_degree(degree: usize) -> Result<()> {
    if degree == 0 || degree > MAX_DEGREE {
        Err(Error::UnsupportedDegree(degree))
    } else {
        Ok(())
    }
}

impl PForm {
    pub fn zeros(dim: usize, degree: usize) -> Result<Self> {
        check_degree(degree)?;
        if degree > dim {
            return Err(Error::InvalidInput(format!(
                "degree {degree} exceeds dimension {dim}"
            )));
        }
        Ok(Self {
            degree,
            dim,
            coeffs: vec![0.0; binomial(dim, degree)],
        })
    }

    pub fn from_coeffs(dim: usize, degree: usize, coeffs: Vec<f64>) -> Result<Self> {
        let mut form = Self::zeros(dim, degree)?;
        if coeffs.len() != form.coeffs.len() {
            return Err(Error::DimensionMismatch {
                expected: form.coeffs.len(),
                got: coeffs.len(),
            });
        }
        form.coeffs = coeffs;
        Ok(form)
    }

    /// The basis element `e_{i₁} ∧ … ∧ e_{i_p}`; indices may be unsorted, in
    /// which case the permutation sign is applied.
    pub fn basis(dim: usize, indices: &[usize]) -> Result<Self> {
        let mut form = Self::zeros(dim, indices.len())?;
        if let Some(&bad) = indices.iter().find(|&&i| i >= dim) {
            return Err(Error::InvalidInput(format!("index {bad} out of range for dimension {dim}")));
        }
        let mut sorted = indices.to_vec();
        let sign = sort_with_sign(&mut sorted)
            .ok_or_else(|| Error::InvalidInput("repeated index in basis form".into()))?;
        form.coeffs[rank(dim, &sorted)] = sign;
        Ok(form)
    }

    pub fn one_form(v: &[f64]) -> Self {
        Self {
            degree: 1,
            dim: v.len(),
            coeffs: v.to_vec(),
        }
    }

    /// The 2-vector `X ∧ Y`.
    pub fn decomposable(x: &[f64], y: &[f64]) -> Self {
        assert_eq!(x.len(), y.len(), "vectors of different dimension");
        let dim = x.len();
        let mut coeffs = Vec::with_capacity(binomial(dim, 2));
        for a in 0..dim {
            for b in (a + 1)..dim {
                coeffs.push(x[a] * y[b] - x[b] * y[a]);
            }
        }
        Self { degree: 2, dim, coeffs }
    }

    pub fn from_vector(dim: usize, degree: usize, v: &DVector<f64>) -> Result<Self> {
        Self::from_coeffs(dim, degree, v.iter().copied().collect())
    }

    pub fn to_vector(&self) -> DVector<f64> {
        DVector::from_column_slice(&self.coeffs)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    /// Coefficient on `e_{i₁} ∧ … ∧ e_{i_p}` for indices in any order
    /// (zero on repeated indices).
    pub fn component(&self, indices: &[usize]) -> f64 {
        assert_eq!(indices.len(), self.degree, "component index has wrong length");
        let mut sorted = indices.to_vec();
        match sort_with_sign(&mut sorted) {
            Some(sign) => sign * self.coeffs[rank(self.dim, &sorted)],
            None => 0.0,
        }
    }

    /// Evaluates the form on `p` vectors.
    pub fn eval(&self, vectors: &[&[f64]]) -> f64 {
        assert_eq!(vectors.len(), self.degree, "wrong number of arguments");
        let p = self.degree;
        let mut total = 0.0;
        for (idx, &c) in multi_indices(self.dim, p).iter().zip(&self.coeffs) {
            if c == 0.0 {
                continue;
            }
            let m = DMatrix::from_fn(p, p, |a, b| vectors[a][idx[b]]);
            total += c * m.determinant();
        }
        total
    }

    pub fn wedge(&self, other: &PForm) -> Result<PForm> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: other.dim,
            });
        }
        let degree = self.degree + other.degree;
        check_degree(degree)?;
        let mut out = PForm::zeros(self.dim, degree)?;
        let left = multi_indices(self.dim, self.degree);
        let right = multi_indices(self.dim, other.degree);
        let mut merged = Vec::with_capacity(degree);
        for (i, &a) in left.iter().zip(&self.coeffs) {
            if a == 0.0 {
                continue;
            }
            for (j, &b) in right.iter().zip(&other.coeffs) {
                if b == 0.0 {
                    continue;
                }
                merged.clear();
                merged.extend_from_slice(i);
                merged.extend_from_slice(j);
                if let Some(sign) = sort_with_sign(&mut merged) {
                    out.coeffs[rank(self.dim, &merged)] += sign * a * b;
                }
            }
        }
        Ok(out)
    }

    pub fn inner(&self, other: &PForm) -> Result<f64> {
        self.same_shape(other)?;
        Ok(self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a * b).sum())
    }

    pub fn norm_squared(&self) -> f64 {
        self.coeffs.iter().map(|c| c * c).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_squared().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().fold(0.0, |m, c| m.max(c.abs()))
    }

    pub fn scaled(&self, s: f64) -> PForm {
        PForm {
            degree: self.degree,
            dim: self.dim,
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
        }
    }

    pub fn try_add(&self, other: &PForm) -> Result<PForm> {
        self.same_shape(other)?;
        Ok(PForm {
            degree: self.degree,
            dim: self.dim,
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        })
    }

    fn same_shape(&self, other: &PForm) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: other.dim,
            });
        }
        if self.degree != other.degree {
            return Err(Error::InvalidInput(format!(
                "degree mismatch: {} vs {}",
                self.degree, other.degree
            )));
        }
        Ok(())
    }

    /// Dense totally antisymmetric array `t[a][b][c]` of a 3-form.
    pub fn three_tensor(&self) -> Vec<f64> {
        assert_eq!(self.degree, 3);
        let d = self.dim;
        let mut t = vec![0.0; d * d * d];
        for (idx, &c) in multi_indices(d, 3).iter().zip(&self.coeffs) {
            if c == 0.0 {
                continue;
            }
            let (a, b, e) = (idx[0], idx[1], idx[2]);
            for (p, s) in [
                ([a, b, e], 1.0),
                ([b, e, a], 1.0),
                ([e, a, b], 1.0),
                ([b, a, e], -1.0),
                ([a, e, b], -1.0),
                ([e, b, a], -1.0),
            ] {
                t[(p[0] * d + p[1]) * d + p[2]] = s * c;
            }
        }
        t
    }
}

impl Add for &PForm {
    type Output = PForm;
    fn add(self, rhs: &PForm) -> PForm {
        self.try_add(rhs).expect("adding forms of different shape")
    }
}

impl Sub for &PForm {
    type Output = PForm;
    fn sub(self, rhs: &PForm) -> PForm {
        self.try_add(&rhs.scaled(-1.0)).expect("subtracting forms of different shape")
    }
}

impl Neg for &PForm {
    type Output = PForm;
    fn neg(self) -> PForm {
        self.scaled(-1.0)
    }
}

impl Mul<&PForm> for f64 {
    type Output = PForm;
    fn mul(self, rhs: &PForm) -> PForm {
        rhs.scaled(self)
    }
}

/// A symmetric operator on `Λ²ℝ^d` in the lexicographic pair basis.
#[derive(Debug, Clone, PartialEq)]
pub struct SymOp {
    dim: usize,
    mat: DMatrix<f64>,
}

impl SymOp {
    pub fn zeros(dim: usize) -> Self {
        let n = binomial(dim, 2);
        Self {
            dim,
            mat: DMatrix::zeros(n, n),
        }
    }

    pub fn identity(dim: usize) -> Self {
        let n = binomial(dim, 2);
        Self {
            dim,
            mat: DMatrix::identity(n, n),
        }
    }

    /// Wraps a matrix, rejecting asymmetry beyond `SYMMETRY · max(1, ‖A‖_max)`
    /// and symmetrizing the rest away.
    pub fn from_matrix(dim: usize, mat: DMatrix<f64>) -> Result<Self> {
        Self::with_tolerance(dim, mat, tolerance::SYMMETRY)
    }

    pub fn with_tolerance(dim: usize, mat: DMatrix<f64>, tol: f64) -> Result<Self> {
        let n = binomial(dim, 2);
        if mat.nrows() != n || mat.ncols() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: mat.nrows().max(mat.ncols()),
            });
        }
        let asym = asymmetry(&mat);
        let scale = tolerance::scale(mat.amax());
        if asym > tol * scale {
            return Err(Error::NotSymmetric(asym));
        }
        let mat = (&mat + mat.transpose()) * 0.5;
        Ok(Self { dim, mat })
    }

    /// `v ⊗ v`, i.e. `x ↦ ⟨v, x⟩ v`.
    pub fn rank_one(v: &PForm) -> Self {
        assert_eq!(v.degree(), 2, "rank_one expects a 2-form");
        let col = v.to_vector();
        Self {
            dim: v.dim(),
            mat: &col * col.transpose(),
        }
    }

    pub fn base_dim(&self) -> usize {
        self.dim
    }

    pub fn size(&self) -> usize {
        self.mat.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.mat
    }

    pub fn into_matrix(self) -> DMatrix<f64> {
        self.mat
    }

    pub fn apply(&self, x: &PForm) -> PForm {
        assert_eq!(x.degree(), 2, "operators act on 2-forms");
        assert_eq!(x.dim(), self.dim, "dimension mismatch");
        let v = &self.mat * x.to_vector();
        PForm::from_vector(self.dim, 2, &v).expect("shape preserved")
    }

    /// `⟨A(x), y⟩`.
    pub fn pairing(&self, x: &PForm, y: &PForm) -> f64 {
        let ax = &self.mat * x.to_vector();
        ax.dot(&y.to_vector())
    }

    /// `⟨A(e_a ∧ e_b), e_c ∧ e_d⟩` for indices in any order.
    pub fn entry(&self, a: usize, b: usize, c: usize, d: usize) -> f64 {
        if a == b || c == d {
            return 0.0;
        }
        let (i, si) = ordered_pair(self.dim, a, b);
        let (j, sj) = ordered_pair(self.dim, c, d);
        si * sj * self.mat[(i, j)]
    }

    pub fn max_abs(&self) -> f64 {
        self.mat.amax()
    }

    pub fn scaled(&self, s: f64) -> SymOp {
        SymOp {
            dim: self.dim,
            mat: &self.mat * s,
        }
    }

    /// `Bᵀ A B` for a matrix of column vectors `B`.
    pub fn restrict(&self, basis: &DMatrix<f64>) -> DMatrix<f64> {
        basis.transpose() * &self.mat * basis
    }

    /// Largest entry of `A - B`.
    pub fn distance(&self, other: &SymOp) -> f64 {
        (&self.mat - &other.mat).amax()
    }
}

fn ordered_pair(dim: usize, a: usize, b: usize) -> (usize, f64) {
    if a < b {
        (pair_index(dim, a, b), 1.0)
    } else {
        (pair_index(dim, b, a), -1.0)
    }
}

pub fn asymmetry(mat: &DMatrix<f64>) -> f64 {
    (mat - mat.transpose()).amax()
}

impl Add for &SymOp {
    type Output = SymOp;
    fn add(self, rhs: &SymOp) -> SymOp {
        assert_eq!(self.dim, rhs.dim, "adding operators of different dimension");
        SymOp {
            dim: self.dim,
            mat: &self.mat + &rhs.mat,
        }
    }
}

impl Sub for &SymOp {
    type Output = SymOp;
    fn sub(self, rhs: &SymOp) -> SymOp {
        assert_eq!(self.dim, rhs.dim, "subtracting operators of different dimension");
        SymOp {
            dim: self.dim,
            mat: &self.mat - &rhs.mat,
        }
    }
}

impl Mul<&SymOp> for f64 {
    type Output = SymOp;
    fn mul(self, rhs: &SymOp) -> SymOp {
        rhs.scaled(self)
    }
}

/// The operator of a 4-form: `⟨ω(α), β⟩ = ⟨ω, α ∧ β⟩`.
pub fn fourform_as_operator(omega: &PForm) -> Result<SymOp> {
    if omega.degree() != 4 {
        return Err(Error::InvalidInput(format!(
            "expected a 4-form, got degree {}",
            omega.degree()
        )));
    }
    let d = omega.dim();
    let pairs = multi_indices(d, 2);
    let n = pairs.len();
    let mut mat = DMatrix::zeros(n, n);
    for (i, p) in pairs.iter().enumerate() {
        for (j, q) in pairs.iter().enumerate().skip(i + 1) {
            let v = omega.component(&[p[0], p[1], q[0], q[1]]);
            mat[(i, j)] = v;
            mat[(j, i)] = v;
        }
    }
    Ok(SymOp { dim: d, mat })
}

/// `𝔟(Ω)(X,Y,Z,V) = Ω(X,Y,Z,V) + Ω(Y,Z,X,V) + Ω(Z,X,Y,V)` with
/// `Ω(X,Y,Z,V) = ⟨Ω(X∧Y), Z∧V⟩`, returned as a 4-form.
pub fn bianchi_map(op: &SymOp) -> PForm {
    let d = op.base_dim();
    let quads = multi_indices(d, 4);
    let coeffs = quads
        .iter()
        .map(|q| {
            let (x, y, z, v) = (q[0], q[1], q[2], q[3]);
            op.entry(x, y, z, v) + op.entry(y, z, x, v) + op.entry(z, x, y, v)
        })
        .collect();
    PForm::from_coeffs(d, 4, coeffs).expect("d >= 4 for a Bianchi map")
}

/// Orthogonal split `S(Λ²) = ker 𝔟 ⊕ Λ⁴`.
///
/// Since `𝔟` acts as `3·id` on 4-forms, the `Λ⁴` component is `𝔟(Ω)/3`.
pub fn bianchi_split(op: &SymOp) -> Result<(SymOp, PForm)> {
    if op.base_dim() < 4 {
        return Err(Error::InvalidInput("Bianchi split needs dimension at least 4".into()));
    }
    let four = bianchi_map(op).scaled(1.0 / 3.0);
    let curvature = op - &fourform_as_operator(&four)?;
    Ok((curvature, four))
}

/// Input to the Kulkarni–Nomizu product: either a symmetric bilinear form or
/// a 2-form, both given by their Gram matrix `h_{ab} = h(e_a, e_b)`.
#[derive(Debug, Clone, PartialEq)]
pub enum Bilinear {
    Symmetric(DMatrix<f64>),
    TwoForm(PForm),
}

impl Bilinear {
    pub fn symmetric(mat: DMatrix<f64>) -> Result<Self> {
        if mat.nrows() != mat.ncols() {
            return Err(Error::InvalidInput("bilinear form must be square".into()));
        }
        if asymmetry(&mat) > tolerance::IDENTITY * tolerance::scale(mat.amax()) {
            return Err(Error::NotSymmetric(asymmetry(&mat)));
        }
        Ok(Bilinear::Symmetric(mat))
    }

    fn dim(&self) -> usize {
        match self {
            Bilinear::Symmetric(m) => m.nrows(),
            Bilinear::TwoForm(f) => f.dim(),
        }
    }

    fn gram(&self) -> Result<DMatrix<f64>> {
        match self {
            Bilinear::Symmetric(m) => Ok(m.clone()),
            Bilinear::TwoForm(f) => {
                if f.degree() != 2 {
                    return Err(Error::InvalidInput("expected a 2-form".into()));
                }
                Ok(DMatrix::from_fn(f.dim(), f.dim(), |a, b| f.component(&[a, b])))
            }
        }
    }
}

/// Operator of the Kulkarni–Nomizu product
/// `(h⊘k)(X,Y,Z,V) = h(X,V)k(Y,Z) + h(Y,Z)k(X,V) − h(X,Z)k(Y,V) − h(Y,V)k(X,Z)`
/// read as a curvature tensor, i.e. `⟨op(X∧Y), Z∧V⟩ = −(h⊘k)(X,Y,Z,V)`.
///
/// With this sign `g⊘g = 2·id` and
/// `(g⊘g + Σ Φ_μ^H ⊘ Φ_μ^H)(Φ_i^H) = 0` on the horizontal block.
pub fn kulkarni_nomizu_operator(h: &Bilinear, k: &Bilinear) -> Result<SymOp> {
    match (h, k) {
        (Bilinear::Symmetric(_), Bilinear::Symmetric(_)) | (Bilinear::TwoForm(_), Bilinear::TwoForm(_)) => {}
        _ => {
            return Err(Error::InvalidInput(
                "Kulkarni-Nomizu product of a symmetric form with a 2-form".into(),
            ))
        }
    }
    if h.dim() != k.dim() {
        return Err(Error::DimensionMismatch {
            expected: h.dim(),
            got: k.dim(),
        });
    }
    let d = h.dim();
    let hm = h.gram()?;
    let km = k.gram()?;
    let pairs = multi_indices(d, 2);
    let n = pairs.len();
    let mut mat = DMatrix::zeros(n, n);
    for (i, p) in pairs.iter().enumerate() {
        let (x, y) = (p[0], p[1]);
        for (j, q) in pairs.iter().enumerate() {
            let (z, v) = (q[0], q[1]);
            let kn = hm[(x, v)] * km[(y, z)] + hm[(y, z)] * km[(x, v)]
                - hm[(x, z)] * km[(y, v)]
                - hm[(y, v)] * km[(x, z)];
            mat[(i, j)] = -kn;
        }
    }
    // h ⊘ k and k ⊘ h agree, so the product is symmetric up to rounding.
    SymOp::with_tolerance(d, mat, 1e-10)
}
