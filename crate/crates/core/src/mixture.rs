//! Two-cluster Bernoulli mixture over `n` binary preference features.
//!
//! A user is drawn from cluster 0 (all-zero prototype) with probability `alpha`
//! or cluster 1 (all-one prototype) otherwise, and every bit of the prototype is
//! then flipped independently with probability `p`. Features are exchangeable,
//! so everything downstream of a query depends only on how many of the `k`
//! revealed bits are ones.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numeric::{ln_binom_pmf, ln_pow, log_add_exp};

/// Cluster of origin.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Cluster {
    Zero,
    One,
}

impl Cluster {
    pub const BOTH: [Cluster; 2] = [Cluster::Zero, Cluster::One];

    /// The prototype bit for this cluster.
    pub fn prototype_bit(self) -> bool {
        matches!(self, Cluster::One)
    }
}

/// The generative triple `(n, p, alpha)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MixtureParams {
    n: usize,
    p: f64,
    alpha: f64,
}

impl MixtureParams {
    pub fn new(n: usize, p: f64, alpha: f64) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameter("n must be at least 1".into()));
        }
        if !(0.0..=0.5).contains(&p) {
            return Err(Error::InvalidParameter(format!("p = {p} must lie in [0, 0.5]")));
        }
        if !(0.0..=1.0).contains(&alpha) {
            return Err(Error::InvalidParameter(format!("alpha = {alpha} must lie in [0, 1]")));
        }
        Ok(Self { n, p, alpha })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Per-bit flip probability.
    pub fn p(&self) -> f64 {
        self.p
    }

    /// Prior probability of cluster 0.
    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn prior(&self, cluster: Cluster) -> f64 {
        match cluster {
            Cluster::Zero => self.alpha,
            Cluster::One => 1.0 - self.alpha,
        }
    }

    /// Probability that a bit of a `cluster` user equals one.
    pub fn one_prob(&self, cluster: Cluster) -> f64 {
        match cluster {
            Cluster::Zero => self.p,
            Cluster::One => 1.0 - self.p,
        }
    }

    /// Same model with the cluster labels swapped (`alpha -> 1 - alpha`).
    pub fn complement(&self) -> Self {
        Self { alpha: 1.0 - self.alpha, ..*self }
    }

    fn ensure_k(&self, k: usize) -> Result<()> {
        if k > self.n {
            return Err(Error::InvalidParameter(format!("k = {k} exceeds n = {}", self.n)));
        }
        Ok(())
    }
}

/// A user's `n` binary preferences.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PreferenceVector {
    pub bits: Vec<bool>,
    /// Known for synthetic samples, absent for ingested data.
    pub origin_cluster: Option<Cluster>,
}

impl PreferenceVector {
    pub fn ones(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }
}

/// Number of queried features `k` and the count `a` of ones among them.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RevealedSummary {
    k: usize,
    a: usize,
}

impl RevealedSummary {
    pub fn new(params: &MixtureParams, k: usize, a: usize) -> Result<Self> {
        params.ensure_k(k)?;
        if a > k {
            return Err(Error::InvalidParameter(format!("a = {a} exceeds k = {k}")));
        }
        Ok(Self { k, a })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn a(&self) -> usize {
        self.a
    }
}

/// Distribution of the revealed one-count `a` for a fixed `k`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RevealPmf {
    pub k: usize,
    /// `a ~ Binomial(k, p)`.
    pub cluster0: Vec<f64>,
    /// `a ~ Binomial(k, 1 - p)`.
    pub cluster1: Vec<f64>,
    pub marginal: Vec<f64>,
}

impl RevealPmf {
    pub fn conditional(&self, cluster: Cluster) -> &[f64] {
        match cluster {
            Cluster::Zero => &self.cluster0,
            Cluster::One => &self.cluster1,
        }
    }
}

pub(crate) fn sample_user<R: Rng>(params: &MixtureParams, rng: &mut R) -> PreferenceVector {
    let cluster = if rng.random_bool(params.alpha) { Cluster::Zero } else { Cluster::One };
    let proto = cluster.prototype_bit();
    let bits = (0..params.n).map(|_| proto ^ rng.random_bool(params.p)).collect();
    PreferenceVector { bits, origin_cluster: Some(cluster) }
}

/// Draws `count` users from the mixture. Deterministic given `seed`.
pub fn sample_population(params: &MixtureParams, count: usize, seed: u64) -> Result<Vec<PreferenceVector>> {
    if count == 0 {
        return Err(Error::InvalidParameter("count must be at least 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok((0..count).map(|_| sample_user(params, &mut rng)).collect())
}

fn ln_cluster_likelihood(params: &MixtureParams, cluster: Cluster, ones: usize, zeros: usize) -> f64 {
    let q = params.one_prob(cluster);
    ln_pow(q, ones) + ln_pow(1.0 - q, zeros)
}

/// Probability of a specific bit vector under the mixture.
pub fn vector_pmf(params: &MixtureParams, bits: &[bool]) -> Result<f64> {
    if bits.len() != params.n {
        return Err(Error::LengthMismatch { expected: params.n, got: bits.len() });
    }
    let w = bits.iter().filter(|&&b| b).count();
    let z = params.n - w;
    let l0 = params.alpha.ln() + ln_cluster_likelihood(params, Cluster::Zero, w, z);
    let l1 = (1.0 - params.alpha).ln() + ln_cluster_likelihood(params, Cluster::One, w, z);
    Ok(log_add_exp(l0, l1).exp())
}

/// Posterior `(P(cluster 0 | a), P(cluster 1 | a))` after `k` queries revealed `a` ones.
pub fn cluster_posterior(params: &MixtureParams, s: RevealedSummary) -> Result<(f64, f64)> {
    if s.k == 0 {
        return Ok((params.alpha, 1.0 - params.alpha));
    }
    let zeros = s.k - s.a;
    let l0 = params.alpha.ln() + ln_cluster_likelihood(params, Cluster::Zero, s.a, zeros);
    let l1 = (1.0 - params.alpha).ln() + ln_cluster_likelihood(params, Cluster::One, s.a, zeros);
    let norm = log_add_exp(l0, l1);
    if norm == f64::NEG_INFINITY {
        return Err(Error::ImpossibleObservation { k: s.k, a: s.a });
    }
    Ok(((l0 - norm).exp(), (l1 - norm).exp()))
}

/// Per-cluster and marginal distributions of the revealed one-count for `k` queries.
pub fn reveal_count_pmf(params: &MixtureParams, k: usize) -> Result<RevealPmf> {
    params.ensure_k(k)?;
    let cluster0: Vec<f64> = (0..=k).map(|a| ln_binom_pmf(k, a, params.p).exp()).collect();
    let cluster1: Vec<f64> = (0..=k).map(|a| ln_binom_pmf(k, a, 1.0 - params.p).exp()).collect();
    let marginal = cluster0
        .iter()
        .zip(&cluster1)
        .map(|(c0, c1)| params.alpha * c0 + (1.0 - params.alpha) * c1)
        .collect();
    Ok(RevealPmf { k, cluster0, cluster1, marginal })
}
