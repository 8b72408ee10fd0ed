//! Population simulation used as an independent oracle for the closed forms.
//!
//! Exhaustive mode weights every outcome by its exact probability, either by mistake-count
//! classes (binomial weights) or by raw enumeration of all `2^n` flip patterns per cluster.
//! Monte Carlo mode samples users from the mixture.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::mixture::{reveal_count_pmf, sample_user, Cluster, MixtureParams};
use crate::numeric::{binom_pmf, NeumaierSum};
use crate::welfare::{guess_error_probs, PolicyTable, WelfareSpec};

/// Largest `n` accepted by raw pattern enumeration (`2 * 2^n` outcomes).
pub const RAW_ENUMERATION_MAX_N: usize = 20;

const MC_BATCH: usize = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SimulationMode {
    ExhaustiveClasses,
    ExhaustivePatterns,
    MonteCarlo,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GammaWelfare {
    #[serde(serialize_with = "crate::serde_gamma::serialize")]
    pub gamma: f64,
    pub welfare: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HistogramBin {
    pub mistakes: usize,
    pub utility: f64,
    /// Probability in exhaustive mode, user count in Monte Carlo mode.
    pub frequency: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SimulationReport {
    pub mode: SimulationMode,
    pub n: usize,
    pub k: usize,
    /// `None` for exhaustive runs.
    pub sample_count: Option<usize>,
    pub mean_utility: f64,
    /// Standard error of `mean_utility`; `None` for exhaustive runs.
    pub std_error: Option<f64>,
    pub welfare_by_gamma: Vec<GammaWelfare>,
    pub gini: f64,
    /// Amount added to every utility before computing Gini when some utility was negative.
    pub gini_shift: Option<f64>,
    pub utility_histogram: Vec<HistogramBin>,
}

impl SimulationReport {
    pub fn welfare_at(&self, gamma: f64) -> Option<f64> {
        self.welfare_by_gamma.iter().find(|w| w.gamma == gamma).map(|w| w.welfare)
    }
}

fn check(params: &MixtureParams, policy: &PolicyTable, spec: &WelfareSpec) -> Result<()> {
    spec.validate()?;
    if policy.n() != params.n() {
        return Err(Error::LengthMismatch { expected: params.n(), got: policy.n() });
    }
    Ok(())
}

/// Exact aggregate over all users, by mistake-count classes.
///
/// `gammas` lists the welfare parameters to report; `spec.gamma` is always included.
pub fn run_exhaustive(params: &MixtureParams, policy: &PolicyTable, spec: &WelfareSpec, gammas: &[f64]) -> Result<SimulationReport> {
    check(params, policy, spec)?;
    let k = policy.k();
    let m = policy.unrevealed();
    let reveal = reveal_count_pmf(params, k)?;
    let mut hist = vec![NeumaierSum::default(); m + 1];
    for cluster in Cluster::BOTH {
        let prior = params.prior(cluster);
        let (err0, err1) = guess_error_probs(params, cluster);
        for (a, &pa) in reveal.conditional(cluster).iter().enumerate() {
            let weight = prior * pa;
            if weight == 0.0 {
                continue;
            }
            let z = policy.zeros(a);
            for j in 0..=z {
                let wj = weight * binom_pmf(z, j, err0);
                for l in 0..=m - z {
                    hist[j + l].add(wj * binom_pmf(m - z, l, err1));
                }
            }
        }
    }
    let masses: Vec<f64> = hist.iter().map(NeumaierSum::value).collect();
    summarize(SimulationMode::ExhaustiveClasses, params.n(), k, spec, gammas, &masses, None)
}

/// Exact aggregate by enumerating every flip pattern of both clusters; slow cross-check for
/// [`run_exhaustive`]. The first `k` features are queried and the first `f(a)` unrevealed
/// features are output as zeros.
pub fn run_exhaustive_patterns(params: &MixtureParams, policy: &PolicyTable, spec: &WelfareSpec, gammas: &[f64]) -> Result<SimulationReport> {
    check(params, policy, spec)?;
    let n = params.n();
    if n > RAW_ENUMERATION_MAX_N {
        return Err(Error::EnumerationBudget { n, max: RAW_ENUMERATION_MAX_N });
    }
    let k = policy.k();
    let full: u32 = (1u32 << n) - 1;
    let revealed_mask: u32 = (1u32 << k) - 1;
    let p = params.p();
    let mut hist = vec![NeumaierSum::default(); n - k + 1];
    for cluster in Cluster::BOTH {
        let prior = params.prior(cluster);
        if prior == 0.0 {
            continue;
        }
        let proto = if cluster == Cluster::One { full } else { 0 };
        for flips in 0..=full {
            let flipped = flips.count_ones() as i32;
            let prob = prior * p.powi(flipped) * (1.0 - p).powi(n as i32 - flipped);
            if prob == 0.0 {
                continue;
            }
            let bits = proto ^ flips;
            let a = (bits & revealed_mask).count_ones() as usize;
            let zeros = policy.zeros(a);
            // Output: zeros on features k..k+f(a), ones on the rest of the unrevealed block.
            let ones_out = full & !revealed_mask & !(((1u32 << zeros) - 1) << k);
            let mistakes = ((bits ^ ones_out) & full & !revealed_mask).count_ones() as usize;
            hist[mistakes].add(prob);
        }
    }
    let masses: Vec<f64> = hist.iter().map(NeumaierSum::value).collect();
    summarize(SimulationMode::ExhaustivePatterns, n, k, spec, gammas, &masses, None)
}

/// Monte Carlo estimate from `count` sampled users; deterministic given `seed`.
///
/// Users are generated in fixed-size batches, each with its own ChaCha stream derived from
/// `seed`, so the result does not depend on thread scheduling.
pub fn run_monte_carlo(
    params: &MixtureParams,
    policy: &PolicyTable,
    spec: &WelfareSpec,
    gammas: &[f64],
    count: usize,
    seed: u64,
) -> Result<SimulationReport> {
    check(params, policy, spec)?;
    if count == 0 {
        return Err(Error::InvalidParameter("count must be at least 1".into()));
    }
    let k = policy.k();
    let m = policy.unrevealed();
    let batches = count.div_ceil(MC_BATCH);
    let partials: Vec<Vec<u64>> = (0..batches)
        .into_par_iter()
        .map(|b| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(b as u64);
            let size = MC_BATCH.min(count - b * MC_BATCH);
            let mut hist = vec![0u64; m + 1];
            for _ in 0..size {
                let user = sample_user(params, &mut rng);
                let a = user.bits[..k].iter().filter(|&&x| x).count();
                let zeros = policy.zeros(a);
                let mistakes = user.bits[k..]
                    .iter()
                    .enumerate()
                    .filter(|&(i, &bit)| bit != (i >= zeros))
                    .count();
                hist[mistakes] += 1;
            }
            hist
        })
        .collect();
    let mut hist = vec![0u64; m + 1];
    for part in partials {
        for (h, c) in hist.iter_mut().zip(part) {
            *h += c;
        }
    }
    let counts: Vec<f64> = hist.iter().map(|&c| c as f64).collect();
    summarize(SimulationMode::MonteCarlo, params.n(), k, spec, gammas, &counts, Some(count))
}

fn summarize(
    mode: SimulationMode,
    n: usize,
    k: usize,
    spec: &WelfareSpec,
    gammas: &[f64],
    weights: &[f64],
    sample_count: Option<usize>,
) -> Result<SimulationReport> {
    let utilities: Vec<f64> = (0..weights.len()).map(|b| n as f64 - spec.query_cost * k as f64 - b as f64).collect();
    let total: f64 = weights.iter().copied().collect::<NeumaierSum>().value();
    let mean = weighted_mean(&utilities, weights, total);

    let std_error = sample_count.map(|count| {
        let ss = utilities.iter().zip(weights).map(|(u, w)| w * (u - mean).powi(2)).collect::<NeumaierSum>().value();
        if count > 1 {
            (ss / (count as f64 - 1.0)).sqrt() / (count as f64).sqrt()
        } else {
            0.0
        }
    });

    let mut report_gammas: Vec<f64> = Vec::with_capacity(gammas.len() + 1);
    for &g in std::iter::once(&spec.gamma).chain(gammas) {
        if !report_gammas.contains(&g) {
            report_gammas.push(g);
        }
    }
    let welfare_by_gamma = report_gammas
        .into_iter()
        .map(|gamma| {
            let s = spec.with_gamma(gamma);
            s.validate()?;
            let welfare = if s.is_maximin() {
                let worst = utilities.iter().zip(weights).filter(|(_, &w)| w > 0.0).map(|(&u, _)| u).fold(f64::INFINITY, f64::min);
                let mass = utilities.iter().zip(weights).filter(|(&u, &w)| w > 0.0 && u == worst).map(|(_, &w)| w).sum::<f64>();
                -mass / total
            } else {
                let mut acc = NeumaierSum::default();
                for (&u, &w) in utilities.iter().zip(weights) {
                    if w > 0.0 {
                        acc.add(w * s.transform(u)?);
                    }
                }
                s.outer_factor() * acc.value() / total
            };
            Ok(GammaWelfare { gamma, welfare })
        })
        .collect::<Result<Vec<_>>>()?;

    let (gini, gini_shift) = weighted_gini(&utilities, weights)?;
    let utility_histogram = utilities
        .iter()
        .zip(weights)
        .enumerate()
        .filter(|(_, (_, &w))| w > 0.0)
        .map(|(b, (&utility, &frequency))| HistogramBin { mistakes: b, utility, frequency })
        .collect();
    Ok(SimulationReport {
        mode,
        n,
        k,
        sample_count,
        mean_utility: mean,
        std_error,
        welfare_by_gamma,
        gini,
        gini_shift,
        utility_histogram,
    })
}

fn weighted_mean(values: &[f64], weights: &[f64], total: f64) -> f64 {
    values.iter().zip(weights).map(|(v, w)| v * w).collect::<NeumaierSum>().value() / total
}

/// Gini of a weighted utility distribution. All-equal utilities give 0; negative utilities are
/// shifted by `-min` first and the shift is returned.
pub(crate) fn weighted_gini(values: &[f64], weights: &[f64]) -> Result<(f64, Option<f64>)> {
    let support: Vec<(f64, f64)> = values.iter().copied().zip(weights.iter().copied()).filter(|&(_, w)| w > 0.0).collect();
    if support.is_empty() {
        return Err(Error::UndefinedGini("no outcomes with positive weight"));
    }
    let min = support.iter().map(|&(v, _)| v).fold(f64::INFINITY, f64::min);
    if support.iter().all(|&(v, _)| v == min) {
        return Ok((0.0, None));
    }
    let shift = (min < 0.0).then_some(-min);
    let offset = shift.unwrap_or(0.0);
    let total: f64 = support.iter().map(|&(_, w)| w).collect::<NeumaierSum>().value();
    let mean = support.iter().map(|&(v, w)| (v + offset) * w).collect::<NeumaierSum>().value() / total;
    let mut diff = NeumaierSum::default();
    for (i, &(vi, wi)) in support.iter().enumerate() {
        for &(vj, wj) in &support[i + 1..] {
            diff.add(2.0 * wi * wj * (vi - vj).abs());
        }
    }
    Ok((diff.value() / (2.0 * total * total * mean), shift))
}

/// Gini coefficient `Σ_i Σ_j |u_i - u_j| / (2 m^2 mean)` of non-negative values.
pub fn gini(utilities: &[f64]) -> Result<f64> {
    if utilities.is_empty() {
        return Err(Error::UndefinedGini("empty input"));
    }
    if utilities.iter().any(|&u| u < 0.0 || u.is_nan()) {
        return Err(Error::UndefinedGini("negative or NaN value"));
    }
    let mut sorted = utilities.to_vec();
    sorted.sort_by(f64::total_cmp);
    let total: f64 = sorted.iter().copied().collect::<NeumaierSum>().value();
    if total == 0.0 {
        return Err(Error::UndefinedGini("all values are zero"));
    }
    let m = sorted.len() as f64;
    let weighted = sorted
        .iter()
        .enumerate()
        .map(|(i, &u)| (2.0 * (i as f64 + 1.0) - m - 1.0) * u)
        .collect::<NeumaierSum>()
        .value();
    Ok((weighted / (m * total)).max(0.0))
}
