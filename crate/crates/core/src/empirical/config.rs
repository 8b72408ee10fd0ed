use std::path::Path;

use serde::{Deserialize, Serialize};

use super::data::{binarize_top_m, BinaryDataset, RankingDataset, RankingFormat};
use super::sweep::{sweep_split, SweepOptions, SweepTable};
use super::tree::{build_tree, QueryOrder};
use crate::error::{Error, Result};

/// Settings for one empirical run, usually read from a TOML file.
///
/// ```toml
/// format = "sushi"
/// m = 2
/// query_cost = 0.3
/// gammas = [0.0, 5.0, 10.0]
/// ```
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct EmpiricalConfig {
    /// `plain` or `sushi`; `header_lines` / `metadata_columns` override the preset.
    pub format: String,
    pub header_lines: Option<usize>,
    pub metadata_columns: Option<usize>,
    pub m: usize,
    /// Defaults to the item count.
    pub max_depth: Option<usize>,
    pub query_cost: f64,
    #[serde(serialize_with = "crate::serde_gamma::serialize_seq")]
    pub gammas: Vec<f64>,
    pub k_min: usize,
    pub k_max: Option<usize>,
    pub order: QueryOrder,
    /// Fraction of users (taken from the end of the file) held out for evaluation. 0 evaluates in-sample.
    pub holdout: f64,
    pub zero_shift: bool,
}

impl Default for EmpiricalConfig {
    fn default() -> Self {
        Self {
            format: "sushi".into(),
            header_lines: None,
            metadata_columns: None,
            m: 2,
            max_depth: None,
            query_cost: 0.3,
            gammas: vec![0.0, 5.0, 10.0],
            k_min: 0,
            k_max: None,
            order: QueryOrder::Adaptive,
            holdout: 0.0,
            zero_shift: true,
        }
    }
}

impl EmpiricalConfig {
    pub fn from_toml(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn from_path(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| Error::Io { path: path.to_path_buf(), source })?;
        Self::from_toml(&text)
    }

    pub fn ranking_format(&self) -> Result<RankingFormat> {
        let mut f: RankingFormat = self.format.parse()?;
        if let Some(h) = self.header_lines {
            f.header_lines = h;
        }
        if let Some(c) = self.metadata_columns {
            f.metadata_columns = c;
        }
        Ok(f)
    }

    /// Training and evaluation sets after binarisation.
    pub fn split(&self, data: &BinaryDataset) -> Result<(BinaryDataset, BinaryDataset)> {
        if !(0.0..1.0).contains(&self.holdout) {
            return Err(Error::InvalidParameter(format!("holdout fraction {} outside [0, 1)", self.holdout)));
        }
        if self.holdout == 0.0 {
            return Ok((data.clone(), data.clone()));
        }
        let held = ((data.m() as f64) * self.holdout).round() as usize;
        let cut = data.m() - held;
        if held == 0 || cut == 0 {
            return Err(Error::InvalidParameter(format!("holdout {} leaves an empty split of {} users", self.holdout, data.m())));
        }
        Ok((data.slice(0..cut), data.slice(cut..data.m())))
    }

    /// Binarise, build the tree on the training users and sweep every `(gamma, k)`.
    pub fn run(&self, rankings: &RankingDataset) -> Result<SweepTable> {
        if rankings.is_empty() {
            return Err(Error::EmptyDataset);
        }
        let n = rankings.n();
        let binary = binarize_top_m(rankings, self.m)?;
        let (train, eval) = self.split(&binary)?;
        let tree = build_tree(&train, self.max_depth.unwrap_or(n))?;
        let options = SweepOptions {
            gammas: self.gammas.clone(),
            query_cost: self.query_cost,
            k_min: self.k_min,
            k_max: self.k_max.unwrap_or(n),
            order: self.order,
            zero_shift: self.zero_shift,
        };
        sweep_split(&train, &tree, &eval, &options)
    }
}
