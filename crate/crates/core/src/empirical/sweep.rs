//! Per-`(gamma, k)` welfare, mean utility and Gini over a real population.

use std::collections::HashMap;
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;

use super::data::{full_mask, BinaryDataset};
use super::infer::predict_mask;
use super::tree::{elicit, ElicitationTree, QueryOrder};
use crate::error::{Error, Result};
use crate::numeric::NeumaierSum;
use crate::serde_gamma;
use crate::sim::weighted_gini;
use crate::welfare::WelfareSpec;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepOptions {
    #[serde(serialize_with = "crate::serde_gamma::serialize_seq")]
    pub gammas: Vec<f64>,
    pub query_cost: f64,
    /// Query counts to evaluate, `k_min..=k_max`.
    pub k_min: usize,
    pub k_max: usize,
    pub order: QueryOrder,
    /// For `gamma >= 1`, evaluate `u + 1`.
    pub zero_shift: bool,
}

impl SweepOptions {
    pub fn new(gammas: Vec<f64>, query_cost: f64, n: usize) -> Self {
        Self { gammas, query_cost, k_min: 0, k_max: n, order: QueryOrder::Adaptive, zero_shift: true }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SweepRow {
    #[serde(serialize_with = "serde_gamma::serialize")]
    pub gamma: f64,
    pub k: usize,
    pub mean_welfare: f64,
    pub mean_utility: f64,
    pub gini: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FrontierPoint {
    pub k: usize,
    pub mean_utility: f64,
    pub gini: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepTable {
    pub rows: Vec<SweepRow>,
}

pub const SWEEP_CSV_HEADER: &str = "gamma,k,mean_welfare,mean_utility,gini";
pub const FRONTIER_CSV_HEADER: &str = "k,mean_utility,gini";

impl SweepTable {
    /// Welfare-maximising `k` for `gamma`; ties go to the smaller `k`.
    pub fn optimal_k(&self, gamma: f64) -> Option<usize> {
        self.rows
            .iter()
            .filter(|r| r.gamma == gamma)
            .fold(None, |best: Option<&SweepRow>, r| match best {
                Some(b) if !crate::policy::strictly_greater(r.mean_welfare, b.mean_welfare) => Some(b),
                _ => Some(r),
            })
            .map(|r| r.k)
    }

    pub fn row(&self, gamma: f64, k: usize) -> Option<&SweepRow> {
        self.rows.iter().find(|r| r.gamma == gamma && r.k == k)
    }

    /// Mean utility against Gini, one point per `k`.
    pub fn frontier(&self) -> Vec<FrontierPoint> {
        let mut points: Vec<FrontierPoint> = Vec::new();
        for r in &self.rows {
            if !points.iter().any(|p| p.k == r.k) {
                points.push(FrontierPoint { k: r.k, mean_utility: r.mean_utility, gini: r.gini });
            }
        }
        points.sort_by_key(|p| p.k);
        points
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from(SWEEP_CSV_HEADER);
        out.push('\n');
        for r in &self.rows {
            let _ = writeln!(out, "{},{},{},{},{}", serde_gamma::format(r.gamma), r.k, r.mean_welfare, r.mean_utility, r.gini);
        }
        out
    }

    pub fn frontier_csv(&self) -> String {
        let mut out = String::from(FRONTIER_CSV_HEADER);
        out.push('\n');
        for p in self.frontier() {
            let _ = writeln!(out, "{},{},{}", p.k, p.mean_utility, p.gini);
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.rows).expect("sweep rows serialise") + "\n"
    }
}

/// Number of wrong guesses for each evaluated user after `k` queries.
///
/// When a user's tree path ends before `k` answers, the remaining queries go to the lowest-index
/// unrevealed features so every user answers exactly `k` questions.
pub fn mistakes_at_k(
    train: &BinaryDataset,
    tree: &ElicitationTree,
    eval: &BinaryDataset,
    k: usize,
    order: QueryOrder,
) -> Result<Vec<usize>> {
    let n = train.n();
    if k > n {
        return Err(Error::InvalidParameter(format!("k = {k} exceeds n = {n}")));
    }
    if eval.n() != n || tree.n() != n {
        return Err(Error::LengthMismatch { expected: n, got: eval.n() });
    }
    let global_order = tree.breadth_first_order();
    let revealed_sets = (0..eval.m())
        .map(|u| {
            let bits = eval.user_bits(u);
            let mut pairs = match order {
                QueryOrder::Adaptive => elicit(tree, &bits, k)?.pairs,
                QueryOrder::BreadthFirst => global_order[..k].iter().map(|&f| (f, bits[f])).collect(),
            };
            let mut f = 0;
            while pairs.len() < k {
                if !pairs.iter().any(|&(g, _)| g == f) {
                    pairs.push((f, bits[f]));
                }
                f += 1;
            }
            Ok(pairs)
        })
        .collect::<Result<Vec<_>>>()?;

    let mut cache: HashMap<&[(usize, bool)], u64> = HashMap::new();
    for pairs in &revealed_sets {
        cache.entry(pairs.as_slice()).or_insert_with(|| predict_mask(train, pairs));
    }
    let full = full_mask(n);
    Ok(revealed_sets
        .iter()
        .enumerate()
        .map(|(u, pairs)| ((cache[pairs.as_slice()] ^ eval.rows()[u]) & full).count_ones() as usize)
        .collect())
}

/// Evaluates every `(gamma, k)` pair. Users are elicited through `tree` (built on `train`),
/// completed by conditional-mode inference on `train`, and scored on `eval`.
///
/// Welfare is the population mean of `u^(1-gamma) / (1-gamma)` (`ln u` at `gamma = 1`, the
/// minimum utility at `gamma = inf`), so values are comparable across `k` but not across `gamma`.
pub fn sweep_split(
    train: &BinaryDataset,
    tree: &ElicitationTree,
    eval: &BinaryDataset,
    options: &SweepOptions,
) -> Result<SweepTable> {
    let n = train.n();
    if options.k_min > options.k_max || options.k_max > n {
        return Err(Error::InvalidParameter(format!("k range {}..={} invalid for n = {n}", options.k_min, options.k_max)));
    }
    if options.gammas.is_empty() {
        return Err(Error::InvalidParameter("at least one gamma is required".into()));
    }
    if eval.m() == 0 {
        return Err(Error::EmptyDataset);
    }
    let specs = options
        .gammas
        .iter()
        .map(|&g| {
            let spec = WelfareSpec { gamma: g, query_cost: options.query_cost, zero_shift: options.zero_shift, ..WelfareSpec::default() };
            spec.validate().map(|_| spec)
        })
        .collect::<Result<Vec<_>>>()?;

    let per_k = (options.k_min..=options.k_max)
        .into_par_iter()
        .map(|k| {
            let mistakes = mistakes_at_k(train, tree, eval, k, options.order)?;
            let utilities: Vec<f64> = mistakes.iter().map(|&b| n as f64 - options.query_cost * k as f64 - b as f64).collect();
            let mean = utilities.iter().copied().collect::<NeumaierSum>().value() / utilities.len() as f64;
            let mut counts = vec![0.0; n - k + 1];
            for &b in &mistakes {
                counts[b] += 1.0;
            }
            let levels: Vec<f64> = (0..=n - k).map(|b| n as f64 - options.query_cost * k as f64 - b as f64).collect();
            let (gini, _) = weighted_gini(&levels, &counts)?;
            let welfare = specs
                .iter()
                .map(|spec| empirical_welfare(&utilities, spec))
                .collect::<Result<Vec<_>>>()?;
            Ok((k, mean, gini, welfare))
        })
        .collect::<Result<Vec<_>>>()?;

    let mut rows = Vec::with_capacity(per_k.len() * specs.len());
    for (gi, spec) in specs.iter().enumerate() {
        for (k, mean, gini, welfare) in &per_k {
            rows.push(SweepRow { gamma: spec.gamma, k: *k, mean_welfare: welfare[gi], mean_utility: *mean, gini: *gini });
        }
    }
    Ok(SweepTable { rows })
}

/// In-sample sweep: the tree, the inference and the evaluation all use `data`.
pub fn sweep(data: &BinaryDataset, tree: &ElicitationTree, options: &SweepOptions) -> Result<SweepTable> {
    sweep_split(data, tree, data, options)
}

fn empirical_welfare(utilities: &[f64], spec: &WelfareSpec) -> Result<f64> {
    if spec.is_maximin() {
        return Ok(utilities.iter().copied().fold(f64::INFINITY, f64::min));
    }
    let mut acc = NeumaierSum::default();
    for &u in utilities {
        acc.add(spec.transform(u)?);
    }
    Ok(spec.outer_factor() * acc.value() / utilities.len() as f64)
}
