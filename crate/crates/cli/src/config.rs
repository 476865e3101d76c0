//! Experiment documents. Every numeric field is a decimal string.

use crate::error::{CliError, CliResult};
use serde::Deserialize;

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    /// Prefix of every output file; `[A-Za-z0-9_-]+`.
    pub name: String,
    /// Subcommand to run under `report`.
    pub command: Option<String>,
    pub space: Option<SpaceDescriptor>,
    pub tnorm: Option<String>,
    pub relation: Option<String>,
    pub theta: Option<String>,
    pub map: Option<MapDescriptor>,
    pub x0: Option<String>,
    #[serde(default)]
    pub options: OptionsConfig,
    pub points: Option<Vec<String>>,
    pub random_points: Option<RandomPoints>,
    pub axioms: Option<Vec<String>>,
    pub uniqueness: Option<UniquenessConfig>,
    pub sequence: Option<SequenceConfig>,
    pub nc: Option<NcConfig>,
    /// Second norm for the pointwise order check of `verify-tnorm`.
    pub compare_to: Option<String>,
}

#[derive(Clone, Debug, Deserialize, PartialEq)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum SpaceDescriptor {
    FromMetric { metric: String },
    Exponential { metric: String, vartheta: String },
    StationaryRatio,
}

#[derive(Clone, Debug, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct MapDescriptor {
    pub name: String,
    #[serde(default)]
    pub params: Vec<String>,
}

#[derive(Clone, Debug, Default, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct OptionsConfig {
    pub max_iterations: Option<String>,
    pub tolerance: Option<String>,
    pub margin_tolerance: Option<String>,
    pub t_grid: Option<Vec<String>>,
    pub eps_grid: Option<Vec<String>>,
    pub variant: Option<String>,
    pub termination_mode: Option<String>,
    pub window: Option<String>,
    pub probe_points: Option<Vec<String>>,
    /// Points per axis for t-norm grids.
    pub grid_points: Option<String>,
}

#[derive(Clone, Debug, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct RandomPoints {
    pub count: String,
    pub low: String,
    pub high: String,
}

#[derive(Clone, Debug, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct UniquenessConfig {
    pub fp_a: String,
    pub fp_b: String,
    pub bridge: String,
}

#[derive(Clone, Debug, Deserialize, PartialEq)]
#[serde(tag = "generator", rename_all = "snake_case", deny_unknown_fields)]
pub enum SequenceConfig {
    /// Scaled harmonic partial sums.
    Harmonic { length: String, scale: Option<String> },
    /// Orbit of the configured map from `x0`.
    Picard { x0: String, length: String },
    Explicit { values: Vec<String> },
}

#[derive(Clone, Debug, Default, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct NcConfig {
    pub eps_grid: Option<Vec<String>>,
    pub t_grid: Option<Vec<String>>,
    pub regularity_tolerance: Option<String>,
    pub min_pairs: Option<String>,
    /// Prefix lengths for the residual trend.
    pub windows: Option<Vec<String>>,
}

/// Parses a document holding one experiment object or an array of them.
pub fn parse_document(text: &str) -> CliResult<Vec<ExperimentConfig>> {
    let value: serde_json::Value =
        serde_json::from_str(text).map_err(|e| CliError::config("<document>", e.to_string()))?;
    let experiments = match value {
        serde_json::Value::Array(items) => items
            .into_iter()
            .enumerate()
            .map(|(i, item)| {
                serde_json::from_value(item).map_err(|e| CliError::config(format!("[{i}]"), e.to_string()))
            })
            .collect::<CliResult<Vec<ExperimentConfig>>>()?,
        object @ serde_json::Value::Object(_) => {
            vec![serde_json::from_value(object).map_err(|e| CliError::config("<experiment>", e.to_string()))?]
        }
        _ => return Err(CliError::config("<document>", "expected an object or an array of objects")),
    };
    if experiments.is_empty() {
        return Err(CliError::config("<document>", "no experiments"));
    }
    let mut seen = std::collections::BTreeSet::new();
    for e in &experiments {
        let valid = !e.name.is_empty() && e.name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '-');
        if !valid {
            return Err(CliError::config("name", format!("`{}` must match [A-Za-z0-9_-]+", e.name)));
        }
        if !seen.insert(e.name.as_str()) {
            return Err(CliError::config("name", format!("duplicate experiment name `{}`", e.name)));
        }
    }
    Ok(experiments)
}
