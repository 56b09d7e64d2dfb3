//! Torsion of the canonical connection and the objects built from it.

use nalgebra::{DMatrix, DVector};

use crate::exterior::{fourform_as_operator, multi_indices, PForm, SymOp};
use crate::structure::{cyclic, PointModel};

/// `T = 2α Σ η_i ∧ Φ_i − 2(α − δ) η₁₂₃`.
pub fn torsion_three_form(model: &PointModel) -> PForm {
    let p = model.params();
    let mut t = PForm::zeros(model.dim(), 3).expect("dim >= 3");
    for i in 0..3 {
        let term = model.eta_form(i).wedge(model.fundamental(i)).expect("degree 3");
        t = &t + &term.scaled(2.0 * p.alpha());
    }
    &t + &vertical_volume(model).scaled(-2.0 * (p.alpha() - p.delta()))
}

/// `2α Σ η_i ∧ Φ_i^H + 2(δ − 4α) η₁₂₃`.
pub fn torsion_three_form_horizontal(model: &PointModel) -> PForm {
    let p = model.params();
    let mut t = PForm::zeros(model.dim(), 3).expect("dim >= 3");
    for i in 0..3 {
        let term = model
            .eta_form(i)
            .wedge(model.horizontal_fundamental(i))
            .expect("degree 3");
        t = &t + &term.scaled(2.0 * p.alpha());
    }
    &t + &vertical_volume(model).scaled(2.0 * (p.delta() - 4.0 * p.alpha()))
}

fn vertical_volume(model: &PointModel) -> PForm {
    let e = |i| model.eta_form(i);
    e(0).wedge(&e(1))
        .and_then(|w| w.wedge(&e(2)))
        .expect("degree 3")
}

/// `T(X, Y)` as the vector dual to `Z ↦ T(X, Y, Z)`.
pub fn torsion_map(t3: &PForm, x: &[f64], y: &[f64]) -> DVector<f64> {
    let d = t3.dim();
    let tensor = t3.three_tensor();
    let mut out = DVector::zeros(d);
    for a in 0..d {
        if x[a] == 0.0 {
            continue;
        }
        for b in 0..d {
            let w = x[a] * y[b];
            if w == 0.0 {
                continue;
            }
            for c in 0..d {
                out[c] += w * tensor[(a * d + b) * d + c];
            }
        }
    }
    out
}

/// `T(X, Y)` from the explicit vector formula
/// `2α Σ {η_i(Y) φ_i X − η_i(X) φ_i Y + Φ_i(X, Y) ξ_i} − 2(α − δ) Σ_cyc η_ij(X, Y) ξ_k`.
pub fn torsion_map_explicit(model: &PointModel, x: &[f64], y: &[f64]) -> DVector<f64> {
    let p = model.params();
    let xv = DVector::from_column_slice(x);
    let yv = DVector::from_column_slice(y);
    let mut out = DVector::zeros(model.dim());
    for i in 0..3 {
        let phi = model.phi(i);
        let eta = model.eta(i);
        let fund = model.fundamental(i).eval(&[x, y]);
        out += (phi * &xv * eta.dot(&yv) - phi * &yv * eta.dot(&xv) + model.xi(i) * fund)
            * (2.0 * p.alpha());
        let (_, j, k) = cyclic(i);
        let eta_ij = model.eta(i).dot(&xv) * model.eta(j).dot(&yv)
            - model.eta(i).dot(&yv) * model.eta(j).dot(&xv);
        out -= model.xi(k) * (2.0 * (p.alpha() - p.delta()) * eta_ij);
    }
    out
}

/// Columns `T(e_a, e_b)` for all pairs `a < b`.
fn pair_images(d: usize, f: impl Fn(&[f64], &[f64]) -> DVector<f64>) -> DMatrix<f64> {
    let pairs = multi_indices(d, 2);
    let mut m = DMatrix::zeros(d, pairs.len());
    for (col, p) in pairs.iter().enumerate() {
        let mut x = vec![0.0; d];
        let mut y = vec![0.0; d];
        x[p[0]] = 1.0;
        y[p[1]] = 1.0;
        m.set_column(col, &f(&x, &y));
    }
    m
}

fn gram_operator(d: usize, images: &DMatrix<f64>) -> SymOp {
    SymOp::from_matrix(d, images.transpose() * images).expect("a Gram matrix is symmetric")
}

/// `⟨G_T(X∧Y), Z∧V⟩ = g(T(X,Y), T(Z,V))`.
pub fn operator_gram(model: &PointModel) -> SymOp {
    let t3 = torsion_three_form(model);
    gram_operator(model.dim(), &pair_images(model.dim(), |x, y| torsion_map(&t3, x, y)))
}

/// `G_T` assembled from [`torsion_map_explicit`].
pub fn operator_gram_explicit(model: &PointModel) -> SymOp {
    gram_operator(
        model.dim(),
        &pair_images(model.dim(), |x, y| torsion_map_explicit(model, x, y)),
    )
}

/// `σ_T(X,Y,Z,V) = 𝔖_{XYZ} g(T(X,Y), T(Z,V))`.
pub fn sigma_from_gram(gram: &SymOp) -> PForm {
    let d = gram.base_dim();
    let coeffs = multi_indices(d, 4)
        .iter()
        .map(|q| {
            let (x, y, z, v) = (q[0], q[1], q[2], q[3]);
            gram.entry(x, y, z, v) + gram.entry(y, z, x, v) + gram.entry(z, x, y, v)
        })
        .collect();
    PForm::from_coeffs(d, 4, coeffs).expect("dim >= 4")
}

pub fn sigma_t(model: &PointModel) -> PForm {
    sigma_from_gram(&operator_gram(model))
}

/// `dT = 4α² Σ Φ_i∧Φ_i + 8α(δ − α) Σ_cyc Φ_i∧η_jk`.
pub fn exterior_derivative(model: &PointModel) -> PForm {
    let p = model.params();
    let mut out = PForm::zeros(model.dim(), 4).expect("dim >= 4");
    for i in 0..3 {
        let f = model.fundamental(i);
        out = &out + &f.wedge(f).expect("degree 4").scaled(4.0 * p.alpha() * p.alpha());
        let mixed = f.wedge(model.xi_pair(i)).expect("degree 4");
        out = &out + &mixed.scaled(8.0 * p.alpha() * (p.delta() - p.alpha()));
    }
    out
}

/// `dT = 4α² Σ Φ_i^H∧Φ_i^H + 8α(δ − 2α) Σ_cyc Φ_i^H∧η_jk`.
pub fn exterior_derivative_horizontal(model: &PointModel) -> PForm {
    let p = model.params();
    let mut out = PForm::zeros(model.dim(), 4).expect("dim >= 4");
    for i in 0..3 {
        let f = model.horizontal_fundamental(i);
        out = &out + &f.wedge(f).expect("degree 4").scaled(4.0 * p.alpha() * p.alpha());
        let mixed = f.wedge(model.xi_pair(i)).expect("degree 4");
        out = &out + &mixed.scaled(8.0 * p.alpha() * (p.delta() - 2.0 * p.alpha()));
    }
    out
}

/// Generators `e_r∧ξ_i + φ_j e_r∧ξ_k` of the kernel of `G_T` on `V∧H`,
/// one column per horizontal `e_r` and cyclic `(i, j, k)`.
pub fn mixed_kernel_generators(model: &PointModel) -> DMatrix<f64> {
    let mut cols = Vec::new();
    for r in model.horizontal_indices() {
        let er = model.frame_vector(r);
        for i in 0..3 {
            let (_, j, k) = cyclic(i);
            let a = PForm::decomposable(er.as_slice(), model.xi(i).as_slice());
            let b = PForm::decomposable((model.phi(j) * &er).as_slice(), model.xi(k).as_slice());
            cols.push((&a + &b).to_vector());
        }
    }
    DMatrix::from_columns(&cols)
}

#[derive(Debug, Clone, PartialEq)]
pub struct TorsionPackage {
    pub three_form: PForm,
    pub sigma: PForm,
    pub exterior_derivative: PForm,
    /// `G_T`.
    pub gram: SymOp,
    /// `S_T`, the operator of `σ_T`.
    pub sigma_operator: SymOp,
}

impl TorsionPackage {
    pub fn new(model: &PointModel) -> Self {
        let three_form = torsion_three_form(model);
        let gram = operator_gram(model);
        let sigma = sigma_from_gram(&gram);
        let sigma_operator = fourform_as_operator(&sigma).expect("degree 4");
        Self {
            three_form,
            exterior_derivative: exterior_derivative(model),
            sigma,
            gram,
            sigma_operator,
        }
    }

    pub fn map(&self, x: &[f64], y: &[f64]) -> DVector<f64> {
        torsion_map(&self.three_form, x, y)
    }
}
