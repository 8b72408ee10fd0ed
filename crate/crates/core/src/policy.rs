//! Optimal response policies and optimal query counts.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::mixture::{Cluster, MixtureParams};
use crate::numeric::{ln_pow, log_add_exp, log_sum_exp, NeumaierSum};
use crate::welfare::{expected_utility, guess_error_probs, PolicyTable, WelfareKernel, WelfareSpec};

/// Relative tolerance under which two objective values count as tied.
pub const TIE_RTOL: f64 = 1e-12;

pub(crate) fn strictly_greater(candidate: f64, incumbent: f64) -> bool {
    candidate > incumbent + TIE_RTOL * candidate.abs().max(incumbent.abs())
}

/// Additive tolerance for values that are already logarithms.
fn strictly_greater_ln(candidate: f64, incumbent: f64) -> bool {
    if incumbent == f64::NEG_INFINITY {
        return candidate > incumbent;
    }
    candidate > incumbent + TIE_RTOL
}

/// Comparable per-`k` objective.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ObjectiveKey {
    /// Welfare itself.
    Welfare { value: f64 },
    /// `-ln S` where welfare is `S / (1 - gamma)`, `gamma > 1`; used above the log-domain crossover.
    NegLogMass { value: f64 },
    /// Maximin: larger worst utility first, then smaller probability of reaching it.
    Maximin { worst_utility: f64, ln_worst_probability: f64 },
}

impl ObjectiveKey {
    /// `self` is strictly better than `other` beyond tie tolerance.
    pub fn beats(&self, other: &ObjectiveKey) -> bool {
        match (self, other) {
            (ObjectiveKey::Welfare { value: a }, ObjectiveKey::Welfare { value: b }) => strictly_greater(*a, *b),
            (ObjectiveKey::NegLogMass { value: a }, ObjectiveKey::NegLogMass { value: b }) => {
                strictly_greater_ln(*a, *b)
            }
            (
                ObjectiveKey::Maximin { worst_utility: ua, ln_worst_probability: pa },
                ObjectiveKey::Maximin { worst_utility: ub, ln_worst_probability: pb },
            ) => {
                if strictly_greater(*ua, *ub) {
                    true
                } else if strictly_greater(*ub, *ua) {
                    false
                } else {
                    strictly_greater_ln(-pa, -pb)
                }
            }
            _ => false,
        }
    }
}

/// Best response and its objective for one query count.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct KEvaluation {
    pub k: usize,
    pub policy: PolicyTable,
    /// Welfare of `policy` (for maximin, minus the worst-outcome probability).
    pub objective: f64,
    pub key: ObjectiveKey,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OptimizationResult {
    pub best_k: usize,
    pub policy: PolicyTable,
    pub objective_value: f64,
    pub per_k: Vec<KEvaluation>,
}

/// The worst realised utility a policy can produce and the probability of producing it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MaximinValue {
    pub worst_utility: f64,
    pub worst_probability: f64,
    pub ln_worst_probability: f64,
}

/// Worst-outcome objective of a policy.
///
/// For `0 < p < 1/2` every user can have all `n - k` guesses wrong, so the worst utility is
/// `n - c*k - (n - k)` and the objective reduces to the probability of that event.
pub fn maximin_objective(params: &MixtureParams, policy: &PolicyTable, spec: &WelfareSpec) -> Result<MaximinValue> {
    if policy.n() != params.n() {
        return Err(Error::LengthMismatch { expected: params.n(), got: policy.n() });
    }
    let k = policy.k();
    let m = policy.unrevealed();
    let base = params.n() as f64 - spec.query_cost * k as f64;
    let mut worst = f64::INFINITY;
    let mut ln_terms: Vec<f64> = Vec::new();
    for cluster in Cluster::BOTH {
        let prior = params.prior(cluster);
        if prior == 0.0 {
            continue;
        }
        let q = params.one_prob(cluster);
        let (err0, err1) = guess_error_probs(params, cluster);
        for a in 0..=k {
            let ln_reveal = crate::numeric::ln_binom_pmf(k, a, q);
            if ln_reveal == f64::NEG_INFINITY {
                continue;
            }
            let z = policy.zeros(a);
            let wrong0 = if err0 > 0.0 { z } else { 0 };
            let wrong1 = if err1 > 0.0 { m - z } else { 0 };
            let u = base - (wrong0 + wrong1) as f64;
            let ln_p = prior.ln() + ln_reveal + ln_pow(err0, wrong0) + ln_pow(err1, wrong1);
            if u < worst {
                worst = u;
                ln_terms.clear();
            }
            if u == worst {
                ln_terms.push(ln_p);
            }
        }
    }
    let ln_prob = log_sum_exp(ln_terms);
    Ok(MaximinValue { worst_utility: worst, worst_probability: ln_prob.exp(), ln_worst_probability: ln_prob })
}

/// Posterior rule: output the prototype of the more probable cluster (cluster 0 on ties).
pub fn optimal_response_utilitarian(params: &MixtureParams, k: usize) -> Result<PolicyTable> {
    let n = params.n();
    if k > n {
        return Err(Error::InvalidParameter(format!("k = {k} exceeds n = {n}")));
    }
    let zeros = (0..=k)
        .map(|a| {
            let l0 = params.alpha().ln() + ln_pow(params.p(), a) + ln_pow(1.0 - params.p(), k - a);
            let l1 = (1.0 - params.alpha()).ln() + ln_pow(1.0 - params.p(), a) + ln_pow(params.p(), k - a);
            if l0 >= l1 || (l0 == f64::NEG_INFINITY && l1 == f64::NEG_INFINITY) {
                n - k
            } else {
                0
            }
        })
        .collect();
    PolicyTable::new(n, k, zeros)
}

/// Welfare-optimal deterministic response for `k` queries under `spec`.
///
/// Each revealed count `a` is optimised independently by exhaustive search over the number of
/// zeros `z`; ties go to the smaller `z`. `gamma = 0` uses the posterior rule directly and
/// `gamma = inf` delegates to [`maximin_response`].
pub fn optimal_response_general(params: &MixtureParams, k: usize, spec: &WelfareSpec) -> Result<PolicyTable> {
    Ok(best_for_k(params, k, spec)?.policy)
}

/// Optimal response for a fixed `k` together with its objective.
pub fn best_for_k(params: &MixtureParams, k: usize, spec: &WelfareSpec) -> Result<KEvaluation> {
    spec.validate()?;
    if k > params.n() {
        return Err(Error::InvalidParameter(format!("k = {k} exceeds n = {}", params.n())));
    }
    if spec.is_maximin() {
        let policy = maximin_response(params, k)?;
        let v = maximin_objective(params, &policy, spec)?;
        return Ok(KEvaluation {
            k,
            objective: -v.worst_probability,
            key: ObjectiveKey::Maximin { worst_utility: v.worst_utility, ln_worst_probability: v.ln_worst_probability },
            policy,
        });
    }
    if spec.gamma == 0.0 {
        let policy = optimal_response_utilitarian(params, k)?;
        let value = expected_utility(params, &policy, spec)?;
        return Ok(KEvaluation { k, policy, objective: value, key: ObjectiveKey::Welfare { value } });
    }

    let mut kernel = WelfareKernel::new(params, k, spec)?;
    let larger_better = kernel.larger_is_better();
    let log_domain = kernel.log_domain();
    let m = params.n() - k;
    let mut zeros = Vec::with_capacity(k + 1);
    let mut chosen_terms = Vec::with_capacity(k + 1);
    for a in 0..=k {
        let mut best_z = 0;
        let mut best = kernel.term(a, 0)?;
        for z in 1..=m {
            let t = kernel.term(a, z)?;
            let better = match (log_domain, larger_better) {
                (true, true) => strictly_greater_ln(t, best),
                (true, false) => strictly_greater_ln(-t, -best),
                (false, true) => strictly_greater(t, best),
                (false, false) => strictly_greater(-t, -best),
            };
            if better {
                best = t;
                best_z = z;
            }
        }
        zeros.push(best_z);
        chosen_terms.push(best);
    }
    let policy = PolicyTable::new(params.n(), k, zeros)?;
    let (objective, key) = if log_domain {
        let ln_mass = log_sum_exp(chosen_terms);
        (spec.outer_factor() * ln_mass.exp(), ObjectiveKey::NegLogMass { value: -ln_mass })
    } else {
        let value = spec.outer_factor() * chosen_terms.into_iter().collect::<NeumaierSum>().value();
        (value, ObjectiveKey::Welfare { value })
    };
    Ok(KEvaluation { k, policy, objective, key })
}

/// `ln` of the maximin per-`a` objective `alpha p^(a+z) (1-p)^(n-a-z) + (1-alpha) (1-p)^(a+z) p^(n-a-z)`,
/// i.e. the probability (up to `C(k, a)`) of revealing `a` ones and then getting every guess wrong.
pub fn ln_maximin_term(params: &MixtureParams, a: usize, z: usize) -> f64 {
    let n = params.n();
    let p = params.p();
    let agree = a + z;
    let rest = n - agree;
    log_add_exp(
        params.alpha().ln() + ln_pow(p, agree) + ln_pow(1.0 - p, rest),
        (1.0 - params.alpha()).ln() + ln_pow(1.0 - p, agree) + ln_pow(p, rest),
    )
}

/// Real-valued stationary point `(n - 2a + log_r((1-alpha)/alpha)) / 2`, `r = p/(1-p)`, of the
/// maximin objective in the number of zeros.
pub fn maximin_stationary_point(params: &MixtureParams, a: usize) -> f64 {
    let p = params.p();
    let r = p / (1.0 - p);
    let alpha = params.alpha();
    0.5 * (params.n() as f64 - 2.0 * a as f64 + ((1.0 - alpha) / alpha).ln() / r.ln())
}

/// Maximin (`gamma -> inf`) response.
///
/// For `0 < p < 1/2`, `0 < alpha < 1` and `k <= n/2` the integer optimum is the better of the
/// clamped floor and ceiling of [`maximin_stationary_point`]; otherwise the convex objective is
/// scanned over every `z`. `p = 0` uses the posterior rule when `k >= 1` and
/// `p = 1/2` (every response equivalent) outputs `round((n-k)/2)` zeros.
pub fn maximin_response(params: &MixtureParams, k: usize) -> Result<PolicyTable> {
    let n = params.n();
    if k > n {
        return Err(Error::InvalidParameter(format!("k = {k} exceeds n = {n}")));
    }
    let m = n - k;
    let p = params.p();
    if p == 0.0 {
        if k >= 1 {
            return optimal_response_utilitarian(params, k);
        }
        return PolicyTable::new(n, 0, vec![noiseless_maximin_zeros(params, m)]);
    }
    if p == 0.5 {
        return PolicyTable::constant(n, k, (m as f64 / 2.0).round() as usize);
    }
    let closed_form = params.alpha() > 0.0 && params.alpha() < 1.0 && 2 * k <= n;
    let zeros = (0..=k)
        .map(|a| {
            let candidates: Vec<usize> = if closed_form {
                let s = maximin_stationary_point(params, a);
                let clamp = |x: f64| x.clamp(0.0, m as f64) as usize;
                let (lo, hi) = (clamp(s.floor()), clamp(s.ceil()));
                if lo == hi { vec![lo] } else { vec![lo, hi] }
            } else {
                (0..=m).collect()
            };
            argmin_ln(candidates.into_iter().map(|z| (z, ln_maximin_term(params, a, z))))
        })
        .collect();
    PolicyTable::new(n, k, zeros)
}

/// With no noise and no queries each cluster is all-wrong on the bits guessed against it, so
/// the worst case is `max(z, m - z)` mistakes, weighted by which clusters exist.
fn noiseless_maximin_zeros(params: &MixtureParams, m: usize) -> usize {
    let worst = |z: usize| -> (usize, f64) {
        let mut mistakes = 0;
        let mut prob = 0.0;
        for (b, prior) in [(m - z, params.alpha()), (z, 1.0 - params.alpha())] {
            if prior == 0.0 {
                continue;
            }
            if b > mistakes {
                mistakes = b;
                prob = prior;
            } else if b == mistakes {
                prob += prior;
            }
        }
        (mistakes, prob)
    };
    (0..=m)
        .min_by(|&x, &y| {
            let (bx, px) = worst(x);
            let (by, py) = worst(y);
            bx.cmp(&by).then(px.total_cmp(&py)).then(x.cmp(&y))
        })
        .unwrap_or(0)
}

fn argmin_ln(candidates: impl Iterator<Item = (usize, f64)>) -> usize {
    let mut best: Option<(usize, f64)> = None;
    for (z, v) in candidates {
        match best {
            None => best = Some((z, v)),
            Some((_, b)) if strictly_greater_ln(-v, -b) => best = Some((z, v)),
            _ => {}
        }
    }
    best.map(|(z, _)| z).unwrap_or(0)
}

/// Optimal query count in `0..=k_max` with the per-`k` table; ties go to the smaller `k`.
pub fn optimal_query_count(params: &MixtureParams, spec: &WelfareSpec, k_max: usize) -> Result<OptimizationResult> {
    if k_max > params.n() {
        return Err(Error::InvalidParameter(format!("k_max = {k_max} exceeds n = {}", params.n())));
    }
    let per_k = (0..=k_max).map(|k| best_for_k(params, k, spec)).collect::<Result<Vec<_>>>()?;
    let best = per_k
        .iter()
        .fold(&per_k[0], |best, e| if e.key.beats(&best.key) { e } else { best });
    Ok(OptimizationResult {
        best_k: best.k,
        policy: best.policy.clone(),
        objective_value: best.objective,
        per_k: per_k.clone(),
    })
}

/// Optimal query counts over a `(p, alpha)` grid.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RegimeMap {
    pub n: usize,
    #[serde(serialize_with = "crate::serde_gamma::serialize")]
    pub gamma: f64,
    pub p_grid: Vec<f64>,
    pub alpha_grid: Vec<f64>,
    /// `best_k[i][j]` is the optimum at `alpha_grid[i]`, `p_grid[j]`.
    pub best_k: Vec<Vec<usize>>,
}

impl RegimeMap {
    pub fn max_k(&self) -> usize {
        self.best_k.iter().flatten().copied().max().unwrap_or(0)
    }
}

/// Evaluates [`optimal_query_count`] on every grid cell (in parallel; output order is canonical).
pub fn regime_map(n: usize, p_grid: &[f64], alpha_grid: &[f64], spec: &WelfareSpec) -> Result<RegimeMap> {
    use rayon::prelude::*;

    if p_grid.is_empty() || alpha_grid.is_empty() {
        return Err(Error::InvalidParameter("regime grids must be non-empty".into()));
    }
    let cells: Vec<(f64, f64)> = alpha_grid.iter().flat_map(|&a| p_grid.iter().map(move |&p| (a, p))).collect();
    let ks = cells
        .par_iter()
        .map(|&(alpha, p)| {
            let params = MixtureParams::new(n, p, alpha)?;
            Ok(optimal_query_count(&params, spec, n)?.best_k)
        })
        .collect::<Result<Vec<usize>>>()?;
    Ok(RegimeMap {
        n,
        gamma: spec.gamma,
        p_grid: p_grid.to_vec(),
        alpha_grid: alpha_grid.to_vec(),
        best_k: ks.chunks(p_grid.len()).map(<[usize]>::to_vec).collect(),
    })
}
