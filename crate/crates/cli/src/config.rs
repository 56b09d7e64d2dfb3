use std::path::{Path, PathBuf};

use clap::ValueEnum;
use serde::{Deserialize, Serialize};

use crate::error::{config, CliError, CliResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "snake_case")]
#[value(rename_all = "snake_case")]
pub enum ModelKind {
    Point,
    SpHomogeneous,
    CustomLie,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "snake_case")]
#[value(rename_all = "snake_case")]
pub enum ModifierChoice {
    None,
    SigmaOnly,
    SphereLike,
    Custom,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "snake_case")]
#[value(rename_all = "snake_case")]
pub enum CheckName {
    All,
    Homogeneous,
    Structure,
    Torsion,
    Curvature,
    Spectra,
    Einstein,
    Positivity,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "snake_case")]
#[value(rename_all = "snake_case")]
pub enum OperatorName {
    Canonical,
    Riemannian,
    Base,
    RPar,
    RPerp,
    R1,
    Gram,
    Sigma,
}

/// `ε` as a number or the automatic halving policy.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Epsilon {
    Auto,
    Fixed(f64),
}

impl std::str::FromStr for Epsilon {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        if s.eq_ignore_ascii_case("auto") {
            return Ok(Self::Auto);
        }
        let v: f64 = s.parse().map_err(|_| format!("epsilon must be a number or \"auto\", got {s:?}"))?;
        Self::fixed(v)
    }
}

impl Epsilon {
    pub fn fixed(v: f64) -> Result<Self, String> {
        if !v.is_finite() || v < 0.0 {
            return Err(format!("epsilon must be finite and non-negative, got {v}"));
        }
        Ok(Self::Fixed(v))
    }
}

impl Serialize for Epsilon {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Self::Auto => s.serialize_str("auto"),
            Self::Fixed(v) => s.serialize_f64(*v),
        }
    }
}

impl<'de> Deserialize<'de> for Epsilon {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Number(f64),
            Text(String),
        }
        match Raw::deserialize(d)? {
            Raw::Number(v) => Epsilon::fixed(v),
            Raw::Text(s) => s.parse(),
        }
        .map_err(serde::de::Error::custom)
    }
}

/// Every setting of a run. Loaded from `--config` and overridden by flags.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub model: Option<ModelKind>,
    pub n: Option<usize>,
    pub alpha: Option<f64>,
    pub delta: Option<f64>,
    pub r1: Option<PathBuf>,
    pub lie_data: Option<PathBuf>,
    pub modifier: Option<ModifierChoice>,
    pub modifier_form: Option<PathBuf>,
    pub epsilon: Option<Epsilon>,
    pub checks: Option<Vec<CheckName>>,
    pub operator: Option<OperatorName>,
    pub alphas: Option<Vec<f64>>,
    pub deltas: Option<Vec<f64>>,
    pub ratios: Option<Vec<f64>>,
    pub output: Option<PathBuf>,
}

macro_rules! overlay {
    ($base:ident, $top:ident; $($field:ident),*) => {
        $( if $top.$field.is_some() { $base.$field = $top.$field; } )*
    };
}

impl RunConfig {
    pub fn load(path: &Path) -> CliResult<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| CliError::Read {
            path: path.to_owned(),
            source,
        })?;
        serde_json::from_str(&text).map_err(|source| CliError::Json {
            path: path.to_owned(),
            source,
        })
    }

    /// Fields set in `top` win.
    pub fn merged(mut self, top: RunConfig) -> Self {
        overlay!(self, top; model, n, alpha, delta, r1, lie_data, modifier, modifier_form,
            epsilon, checks, operator, alphas, deltas, ratios, output);
        self
    }

    pub fn model_kind(&self) -> ModelKind {
        self.model.unwrap_or(ModelKind::Point)
    }

    pub fn require_n(&self) -> CliResult<usize> {
        self.n.ok_or_else(|| config("--n is required"))
    }

    pub fn require_alpha(&self) -> CliResult<f64> {
        self.alpha.ok_or_else(|| config("--alpha is required"))
    }

    pub fn require_delta(&self) -> CliResult<f64> {
        self.delta.ok_or_else(|| config("--delta is required"))
    }

    pub fn modifier_choice(&self) -> ModifierChoice {
        self.modifier.unwrap_or(ModifierChoice::SphereLike)
    }

    pub fn epsilon_choice(&self) -> Epsilon {
        self.epsilon.unwrap_or(Epsilon::Auto)
    }

    /// Requested suites in execution order, `all` expanded.
    pub fn suites(&self, homogeneous: bool) -> CliResult<Vec<CheckName>> {
        let requested = self.checks.clone().unwrap_or_else(|| vec![CheckName::All]);
        if requested.is_empty() {
            return Err(config("--checks must name at least one suite"));
        }
        let mut out: Vec<CheckName> = if requested.contains(&CheckName::All) {
            CheckName::value_variants()
                .iter()
                .copied()
                .filter(|c| *c != CheckName::All && (homogeneous || *c != CheckName::Homogeneous))
                .collect()
        } else {
            requested
        };
        if !homogeneous && out.contains(&CheckName::Homogeneous) {
            return Err(config("the homogeneous suite needs --model sp_homogeneous or custom_lie"));
        }
        out.sort();
        out.dedup();
        Ok(out)
    }

    /// Sweep grid in row-major `(alpha, delta)` order.
    pub fn grid(&self) -> CliResult<Vec<(f64, f64)>> {
        let alphas = self
            .alphas
            .clone()
            .or_else(|| self.alpha.map(|a| vec![a]))
            .unwrap_or_else(|| vec![1.0]);
        let mut grid = Vec::new();
        for &a in &alphas {
            match (&self.deltas, &self.ratios) {
                (Some(_), Some(_)) => return Err(config("give either --deltas or --ratios, not both")),
                (Some(ds), None) => grid.extend(ds.iter().map(|&d| (a, d))),
                (None, Some(rs)) => grid.extend(rs.iter().map(|&r| (a, r * a))),
                (None, None) => {
                    if let Some(d) = self.delta {
                        grid.push((a, d));
                    }
                }
            }
        }
        if grid.is_empty() {
            return Err(config("the sweep grid is empty"));
        }
        Ok(grid)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn epsilon_parsing() {
        assert_eq!("auto".parse::<Epsilon>(), Ok(Epsilon::Auto));
        assert_eq!("0.5".parse::<Epsilon>(), Ok(Epsilon::Fixed(0.5)));
        assert!("-1".parse::<Epsilon>().is_err());
        assert!("x".parse::<Epsilon>().is_err());
        let e: Epsilon = serde_json::from_str("0.25").unwrap();
        assert_eq!(e, Epsilon::Fixed(0.25));
        let e: Epsilon = serde_json::from_str("\"auto\"").unwrap();
        assert_eq!(e, Epsilon::Auto);
    }

    #[test]
    fn flags_override_file() {
        let file: RunConfig = serde_json::from_str(r#"{"n": 2, "alpha": 1.0, "delta": 3.0}"#).unwrap();
        let flags = RunConfig {
            delta: Some(1.0),
            ..Default::default()
        };
        let merged = file.merged(flags);
        assert_eq!((merged.n, merged.alpha, merged.delta), (Some(2), Some(1.0), Some(1.0)));
        assert!(serde_json::from_str::<RunConfig>(r#"{"typo": 1}"#).is_err());
    }

    #[test]
    fn suites_are_ordered() {
        let cfg = RunConfig {
            checks: Some(vec![CheckName::Positivity, CheckName::Structure, CheckName::Structure]),
            ..Default::default()
        };
        assert_eq!(cfg.suites(false).unwrap(), vec![CheckName::Structure, CheckName::Positivity]);
        let all = RunConfig::default().suites(true).unwrap();
        assert_eq!(all.first(), Some(&CheckName::Homogeneous));
        assert_eq!(all.len(), 7);
        let cfg = RunConfig {
            checks: Some(vec![CheckName::Homogeneous]),
            ..Default::default()
        };
        assert!(cfg.suites(false).is_err());
    }

    #[test]
    fn grid_construction() {
        let cfg = RunConfig {
            alphas: Some(vec![1.0, 2.0]),
            ratios: Some(vec![1.0, 3.0]),
            ..Default::default()
        };
        assert_eq!(cfg.grid().unwrap(), vec![(1.0, 1.0), (1.0, 3.0), (2.0, 2.0), (2.0, 6.0)]);
        let empty = RunConfig {
            ratios: Some(vec![]),
            ..Default::default()
        };
        assert!(empty.grid().is_err());
    }
}
