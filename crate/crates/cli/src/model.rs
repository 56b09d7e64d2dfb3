use std::path::Path;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use sasaki_core::curvature::CurvatureSuite;
use sasaki_core::exterior::{PForm, SymOp};
use sasaki_core::homogeneous::{build_sp_model, pointwise_of, LieData, LieDataDocument, LieModel};
use sasaki_core::nalgebra::DMatrix;
use sasaki_core::structure::{Params, PointModel};

use crate::config::{ModelKind, RunConfig};
use crate::error::{config, CliError, CliResult};

pub fn read_json<T: DeserializeOwned>(path: &Path) -> CliResult<T> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Read {
        path: path.to_owned(),
        source,
    })?;
    serde_json::from_str(&text).map_err(|source| CliError::Json {
        path: path.to_owned(),
        source,
    })
}

/// Operator file: `matrix` is indexed by pairs `a < b` in lexicographic order.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct OperatorFile {
    pub dim: usize,
    pub matrix: Vec<Vec<f64>>,
}

impl OperatorFile {
    pub fn from_op(op: &SymOp) -> Self {
        let m = op.matrix();
        Self {
            dim: op.base_dim(),
            matrix: m.row_iter().map(|r| r.iter().copied().collect()).collect(),
        }
    }

    pub fn to_op(&self) -> CliResult<SymOp> {
        let size = self.matrix.len();
        if self.matrix.iter().any(|r| r.len() != size) {
            return Err(config("operator matrix must be square"));
        }
        let flat: Vec<f64> = self.matrix.iter().flatten().copied().collect();
        Ok(SymOp::from_matrix(self.dim, DMatrix::from_row_slice(size, size, &flat))?)
    }
}

/// 4-form file: coefficients in lexicographic order of `a < b < c < d`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FormFile {
    pub dim: usize,
    pub coefficients: Vec<f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ModelInfo {
    pub kind: ModelKind,
    pub n: usize,
    pub alpha: f64,
    pub delta: f64,
    pub beta: f64,
    pub dim: usize,
    pub convention: String,
    pub r1: bool,
}

pub struct Loaded {
    pub point: PointModel,
    pub lie: Option<LieModel>,
    pub suite: CurvatureSuite,
    pub info: ModelInfo,
}

fn lie_model(cfg: &RunConfig, n: usize, alpha: f64, delta: f64) -> CliResult<Option<LieModel>> {
    Ok(match cfg.model_kind() {
        ModelKind::Point => None,
        ModelKind::SpHomogeneous => Some(build_sp_model(n, alpha, delta)?),
        ModelKind::CustomLie => {
            let path = cfg
                .lie_data
                .as_ref()
                .ok_or_else(|| config("--model custom_lie needs --lie-data"))?;
            let doc: LieDataDocument = read_json(path)?;
            let data = LieData::from_document(&doc)?;
            if cfg.n.is_some_and(|n| n != data.n()) {
                return Err(config(format!("--n {} disagrees with dim g1 = {}", n, 4 * data.n())));
            }
            Some(LieModel::new(data, alpha, delta, &path.display().to_string())?)
        }
    })
}

/// Builds the model at `(alpha, delta)`, ignoring the configured pair.
pub fn load_at(cfg: &RunConfig, alpha: f64, delta: f64) -> CliResult<Loaded> {
    let n = match cfg.model_kind() {
        ModelKind::CustomLie => cfg.n.unwrap_or(1),
        _ => cfg.require_n()?,
    };
    let lie = lie_model(cfg, n, alpha, delta)?;
    let point = match &lie {
        Some(lm) => pointwise_of(lm)?,
        None => PointModel::build(Params::new(n, alpha, delta)?),
    };
    let suite = match &cfg.r1 {
        Some(path) => {
            let file: OperatorFile = read_json(path)?;
            CurvatureSuite::with_r1(&point, file.to_op()?)?
        }
        None => CurvatureSuite::new(&point),
    };
    let p = *point.params();
    let info = ModelInfo {
        kind: cfg.model_kind(),
        n: p.n(),
        alpha: p.alpha(),
        delta: p.delta(),
        beta: p.beta(),
        dim: p.dim(),
        convention: point.convention().to_string(),
        r1: cfg.r1.is_some(),
    };
    Ok(Loaded { point, lie, suite, info })
}

pub fn load(cfg: &RunConfig) -> CliResult<Loaded> {
    load_at(cfg, cfg.require_alpha()?, cfg.require_delta()?)
}

pub fn load_form(path: &Path, model: &PointModel) -> CliResult<PForm> {
    let file: FormFile = read_json(path)?;
    if file.dim != model.dim() {
        return Err(config(format!("4-form has dim {}, model has {}", file.dim, model.dim())));
    }
    Ok(PForm::from_coeffs(file.dim, 4, file.coefficients)?)
}
