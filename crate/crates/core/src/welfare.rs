//! Utility and the inequality-averse welfare family.
//!
//! A user who answered `k` queries and received `B` wrong guesses has utility
//! `n - c*k - B`. Welfare with aversion `gamma` is the expectation of
//! `u^(1-gamma) / (1-gamma)` over clusters, revealed counts and mistake patterns,
//! with `ln u` at `gamma = 1` and the worst-outcome (maximin) objective at
//! `gamma = inf`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mixture::{reveal_count_pmf, Cluster, MixtureParams, RevealPmf};
use crate::numeric::{ln_binom_pmf, log_add_exp, log_sum_exp, NeumaierSum};

/// Welfare parameters: inequality aversion, per-query cost and the zero-utility convention.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WelfareSpec {
    /// Inequality aversion; `f64::INFINITY` selects maximin.
    pub gamma: f64,
    /// Cost `c` charged per answered query.
    pub query_cost: f64,
    /// For `gamma >= 1`, evaluate `(u + 1)` instead of `u` so that zero utility stays finite.
    pub zero_shift: bool,
    /// Above this `gamma`, policy search compares welfare terms in the log domain.
    pub log_domain_crossover: f64,
}

impl Default for WelfareSpec {
    fn default() -> Self {
        Self { gamma: 0.0, query_cost: 1.0, zero_shift: true, log_domain_crossover: 50.0 }
    }
}

impl WelfareSpec {
    pub fn new(gamma: f64, query_cost: f64) -> Result<Self> {
        let spec = Self { gamma, query_cost, ..Self::default() };
        spec.validate()?;
        Ok(spec)
    }

    pub fn utilitarian() -> Self {
        Self::default()
    }

    pub fn maximin() -> Self {
        Self { gamma: f64::INFINITY, ..Self::default() }
    }

    pub fn with_gamma(self, gamma: f64) -> Self {
        Self { gamma, ..self }
    }

    pub fn with_query_cost(self, query_cost: f64) -> Self {
        Self { query_cost, ..self }
    }

    pub fn with_zero_shift(self, zero_shift: bool) -> Self {
        Self { zero_shift, ..self }
    }

    pub fn validate(&self) -> Result<()> {
        if self.gamma.is_nan() || self.gamma < 0.0 {
            return Err(Error::InvalidParameter(format!("gamma = {} must be >= 0", self.gamma)));
        }
        if !self.query_cost.is_finite() || self.query_cost < 0.0 {
            return Err(Error::InvalidParameter(format!("query cost = {} must be >= 0", self.query_cost)));
        }
        if self.log_domain_crossover.is_nan() || self.log_domain_crossover < 1.0 {
            return Err(Error::InvalidParameter("log-domain crossover must be >= 1".into()));
        }
        Ok(())
    }

    pub fn is_maximin(&self) -> bool {
        self.gamma == f64::INFINITY
    }

    pub fn is_nash(&self) -> bool {
        self.gamma == 1.0
    }

    /// Offset added to utilities before the power transform.
    pub fn utility_shift(&self) -> f64 {
        if self.zero_shift && self.gamma >= 1.0 {
            1.0
        } else {
            0.0
        }
    }

    pub(crate) fn uses_log_domain(&self) -> bool {
        self.gamma.is_finite() && self.gamma > self.log_domain_crossover
    }

    /// Per-user welfare contribution of a realised utility, before the `1/(1-gamma)` factor.
    ///
    /// `u^(1-gamma)` for `gamma != 1`, `ln u` for `gamma = 1`, applied to the shifted utility.
    pub fn transform(&self, utility: f64) -> Result<f64> {
        let u = utility + self.utility_shift();
        let gamma = self.gamma;
        if u < 0.0 && gamma != 0.0 {
            return Err(Error::NegativeUtility { utility: u, gamma });
        }
        if u == 0.0 && gamma >= 1.0 {
            return Err(Error::ZeroUtility { gamma });
        }
        Ok(if gamma == 1.0 {
            u.ln()
        } else if gamma == 0.0 {
            u
        } else if u == 0.0 {
            0.0
        } else {
            u.powf(1.0 - gamma)
        })
    }

    /// `ln` of the power transform; only meaningful for finite `gamma != 1`.
    pub(crate) fn ln_transform(&self, utility: f64) -> Result<f64> {
        let u = utility + self.utility_shift();
        if u < 0.0 {
            return Err(Error::NegativeUtility { utility: u, gamma: self.gamma });
        }
        if u == 0.0 {
            return if self.gamma >= 1.0 { Err(Error::ZeroUtility { gamma: self.gamma }) } else { Ok(f64::NEG_INFINITY) };
        }
        Ok((1.0 - self.gamma) * u.ln())
    }

    /// The outer `1/(1-gamma)` factor (1 for the Nash case).
    pub fn outer_factor(&self) -> f64 {
        if self.is_nash() {
            1.0
        } else {
            1.0 / (1.0 - self.gamma)
        }
    }
}

/// A deterministic response: after `k` queries revealing `a` ones, output `zeros[a]` zeros
/// (and ones everywhere else) on the `n - k` unrevealed features.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PolicyTable {
    n: usize,
    k: usize,
    zeros: Vec<usize>,
}

impl PolicyTable {
    pub fn new(n: usize, k: usize, zeros: Vec<usize>) -> Result<Self> {
        if k > n {
            return Err(Error::InvalidParameter(format!("k = {k} exceeds n = {n}")));
        }
        if zeros.len() != k + 1 {
            return Err(Error::InvalidParameter(format!(
                "policy for k = {k} needs {} entries, got {}",
                k + 1,
                zeros.len()
            )));
        }
        if let Some((a, z)) = zeros.iter().enumerate().find(|(_, &z)| z > n - k) {
            return Err(Error::InvalidParameter(format!("f({a}) = {z} exceeds n - k = {}", n - k)));
        }
        Ok(Self { n, k, zeros })
    }

    /// The same number of zeros regardless of the revealed count.
    pub fn constant(n: usize, k: usize, zeros: usize) -> Result<Self> {
        Self::new(n, k, vec![zeros; k + 1])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn unrevealed(&self) -> usize {
        self.n - self.k
    }

    /// `f(a)`: zeros output after observing `a` ones.
    pub fn zeros(&self, a: usize) -> usize {
        self.zeros[a]
    }

    pub fn table(&self) -> &[usize] {
        &self.zeros
    }

    fn check_params(&self, params: &MixtureParams) -> Result<()> {
        if self.n != params.n() {
            return Err(Error::LengthMismatch { expected: params.n(), got: self.n });
        }
        Ok(())
    }
}

/// A realised utility.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct UtilityOutcome {
    pub k: usize,
    pub mistakes: usize,
    pub value: f64,
}

/// `n - c*k - mistakes`.
pub fn utility(n: usize, k: usize, mistakes: usize, spec: &WelfareSpec) -> Result<f64> {
    Ok(utility_outcome(n, k, mistakes, spec)?.value)
}

pub fn utility_outcome(n: usize, k: usize, mistakes: usize, spec: &WelfareSpec) -> Result<UtilityOutcome> {
    if k > n {
        return Err(Error::InvalidParameter(format!("k = {k} exceeds n = {n}")));
    }
    if mistakes > n - k {
        return Err(Error::MistakesOutOfRange { mistakes, max: n - k });
    }
    Ok(UtilityOutcome { k, mistakes, value: n as f64 - spec.query_cost * k as f64 - mistakes as f64 })
}

/// Probability that a guessed zero, resp. a guessed one, is wrong for a `cluster` user.
pub(crate) fn guess_error_probs(params: &MixtureParams, cluster: Cluster) -> (f64, f64) {
    let one = params.one_prob(cluster);
    (one, 1.0 - one)
}

/// `E[B | cluster, a]` under the policy.
pub fn expected_mistakes_conditional(
    params: &MixtureParams,
    policy: &PolicyTable,
    cluster: Cluster,
    a: usize,
) -> Result<f64> {
    policy.check_params(params)?;
    if a > policy.k {
        return Err(Error::InvalidParameter(format!("a = {a} exceeds k = {}", policy.k)));
    }
    let z = policy.zeros(a) as f64;
    let rest = (policy.unrevealed() - policy.zeros(a)) as f64;
    let (err0, err1) = guess_error_probs(params, cluster);
    Ok(z * err0 + rest * err1)
}

/// Expected utility `n - c*k - E[B]` of a policy.
pub fn expected_utility(params: &MixtureParams, policy: &PolicyTable, spec: &WelfareSpec) -> Result<f64> {
    policy.check_params(params)?;
    let reveal = reveal_count_pmf(params, policy.k)?;
    let mut mistakes = NeumaierSum::default();
    for cluster in Cluster::BOTH {
        let prior = params.prior(cluster);
        for (a, &pa) in reveal.conditional(cluster).iter().enumerate() {
            mistakes.add(prior * pa * expected_mistakes_conditional(params, policy, cluster, a)?);
        }
    }
    Ok(params.n() as f64 - spec.query_cost * policy.k as f64 - mistakes.value())
}

/// Log-mass of the mistake count `B` when `z` zeros are guessed on `n - k` unrevealed bits.
///
/// `B` is the sum of `Binomial(z, e0)` and `Binomial(n-k-z, e1)` where `e0`/`e1` are the
/// error probabilities of a guessed zero/one for the cluster.
pub fn ln_mistake_pmf(params: &MixtureParams, k: usize, z: usize, cluster: Cluster) -> Vec<f64> {
    let m = params.n() - k;
    let (err0, err1) = guess_error_probs(params, cluster);
    let left: Vec<f64> = (0..=z).map(|j| ln_binom_pmf(z, j, err0)).collect();
    let right: Vec<f64> = (0..=m - z).map(|l| ln_binom_pmf(m - z, l, err1)).collect();
    (0..=m)
        .map(|b| {
            let lo = b.saturating_sub(m - z);
            let hi = b.min(z);
            log_sum_exp((lo..=hi).map(|j| left[j] + right[b - j]))
        })
        .collect()
}

/// `G_{cluster,gamma}(z)`: expected transformed utility of a `cluster` user when `z` of the
/// unrevealed bits are guessed zero. For `gamma = 1` the transform is `ln`.
pub fn g_term(params: &MixtureParams, k: usize, z: usize, spec: &WelfareSpec, cluster: Cluster) -> Result<f64> {
    check_g_args(params, k, z, spec)?;
    let base = params.n() as f64 - spec.query_cost * k as f64;
    let mut acc = NeumaierSum::default();
    for (b, lw) in ln_mistake_pmf(params, k, z, cluster).into_iter().enumerate() {
        if lw == f64::NEG_INFINITY {
            continue;
        }
        acc.add(lw.exp() * spec.transform(base - b as f64)?);
    }
    Ok(acc.value())
}

/// `ln G_{cluster,gamma}(z)` for finite `gamma != 1`.
pub fn ln_g_term(params: &MixtureParams, k: usize, z: usize, spec: &WelfareSpec, cluster: Cluster) -> Result<f64> {
    check_g_args(params, k, z, spec)?;
    if spec.is_nash() {
        return Err(Error::InvalidParameter("ln G is undefined for the Nash (gamma = 1) form".into()));
    }
    let base = params.n() as f64 - spec.query_cost * k as f64;
    let mut terms = Vec::with_capacity(params.n() - k + 1);
    for (b, lw) in ln_mistake_pmf(params, k, z, cluster).into_iter().enumerate() {
        if lw == f64::NEG_INFINITY {
            continue;
        }
        terms.push(lw + spec.ln_transform(base - b as f64)?);
    }
    Ok(log_sum_exp(terms))
}

fn check_g_args(params: &MixtureParams, k: usize, z: usize, spec: &WelfareSpec) -> Result<()> {
    spec.validate()?;
    if spec.is_maximin() {
        return Err(Error::InvalidParameter("gamma = inf has no G term; use the maximin objective".into()));
    }
    if k > params.n() || z > params.n() - k {
        return Err(Error::InvalidParameter(format!("z = {z} outside [0, n - k] for n = {}, k = {k}", params.n())));
    }
    Ok(())
}

/// Cached per-`k` quantities for evaluating welfare terms of many candidate responses.
pub(crate) struct WelfareKernel<'a> {
    params: &'a MixtureParams,
    spec: &'a WelfareSpec,
    k: usize,
    pub(crate) reveal: RevealPmf,
    g: [Vec<Option<f64>>; 2],
    log_domain: bool,
}

impl<'a> WelfareKernel<'a> {
    pub(crate) fn new(params: &'a MixtureParams, k: usize, spec: &'a WelfareSpec) -> Result<Self> {
        spec.validate()?;
        let reveal = reveal_count_pmf(params, k)?;
        let m = params.n() - k;
        Ok(Self {
            params,
            spec,
            k,
            reveal,
            g: [vec![None; m + 1], vec![None; m + 1]],
            log_domain: spec.uses_log_domain(),
        })
    }

    pub(crate) fn log_domain(&self) -> bool {
        self.log_domain
    }

    fn g(&mut self, cluster: Cluster, z: usize) -> Result<f64> {
        let slot = &mut self.g[cluster as usize][z];
        if let Some(v) = *slot {
            return Ok(v);
        }
        let v = if self.log_domain {
            ln_g_term(self.params, self.k, z, self.spec, cluster)?
        } else {
            g_term(self.params, self.k, z, self.spec, cluster)?
        };
        *slot = Some(v);
        Ok(v)
    }

    /// Welfare contribution of responding with `z` zeros after `a` revealed ones, before the
    /// outer factor: `alpha P0(a) G0(z) + (1-alpha) P1(a) G1(z)`. In log-domain mode the
    /// natural log of that quantity is returned instead.
    pub(crate) fn term(&mut self, a: usize, z: usize) -> Result<f64> {
        let mut parts = [0.0f64; 2];
        let mut ln_parts = [f64::NEG_INFINITY; 2];
        for cluster in Cluster::BOTH {
            let weight = self.params.prior(cluster) * self.reveal.conditional(cluster)[a];
            if weight == 0.0 {
                continue;
            }
            let g = self.g(cluster, z)?;
            if self.log_domain {
                ln_parts[cluster as usize] = weight.ln() + g;
            } else {
                parts[cluster as usize] = weight * g;
            }
        }
        Ok(if self.log_domain { log_add_exp(ln_parts[0], ln_parts[1]) } else { parts[0] + parts[1] })
    }

    /// True when a larger `term` value means larger welfare.
    pub(crate) fn larger_is_better(&self) -> bool {
        self.spec.gamma <= 1.0
    }
}

/// Welfare `W(k, gamma)` of a policy.
///
/// `gamma = 0` coincides with [`expected_utility`]; `gamma = 1` is the Nash (log) limit;
/// `gamma = inf` returns minus the probability of the worst realised outcome.
pub fn welfare(params: &MixtureParams, policy: &PolicyTable, spec: &WelfareSpec) -> Result<f64> {
    spec.validate()?;
    policy.check_params(params)?;
    if spec.is_maximin() {
        return Ok(-crate::policy::maximin_objective(params, policy, spec)?.worst_probability);
    }
    let linear = WelfareSpec { log_domain_crossover: f64::INFINITY, ..*spec };
    let mut kernel = WelfareKernel::new(params, policy.k, &linear)?;
    let mut acc = NeumaierSum::default();
    for a in 0..=policy.k {
        acc.add(kernel.term(a, policy.zeros(a))?);
    }
    Ok(spec.outer_factor() * acc.value())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn params(n: usize, p: f64, alpha: f64) -> MixtureParams {
        MixtureParams::new(n, p, alpha).unwrap()
    }

    fn follow_the_bit(n: usize) -> PolicyTable {
        PolicyTable::new(n, 1, vec![n - 1, 0]).unwrap()
    }

    #[test]
    fn utility_examples() {
        let unit = WelfareSpec::default();
        assert_eq!(utility(10, 0, 0, &unit).unwrap(), 10.0);
        assert_eq!(utility(10, 4, 2, &unit).unwrap(), 4.0);
        let v = utility(10, 4, 2, &unit.with_query_cost(0.3)).unwrap();
        assert!((v - 6.8).abs() < 1e-12);
        assert!(matches!(utility(10, 4, 7, &unit), Err(Error::MistakesOutOfRange { mistakes: 7, max: 6 })));
    }

    #[test]
    fn policy_table_validation() {
        assert!(PolicyTable::new(5, 2, vec![3, 3]).is_err());
        assert!(PolicyTable::new(5, 2, vec![3, 4, 0]).is_err());
        assert!(PolicyTable::new(5, 6, vec![0; 7]).is_err());
        assert!(PolicyTable::new(5, 2, vec![3, 1, 0]).is_ok());
    }

    #[test]
    fn conditional_mistake_examples() {
        let m = params(5, 0.0, 0.5);
        let all_zero = PolicyTable::constant(5, 2, 3).unwrap();
        assert_eq!(expected_mistakes_conditional(&m, &all_zero, Cluster::Zero, 1).unwrap(), 0.0);

        let coin = params(8, 0.5, 0.5);
        let mixed = PolicyTable::new(8, 2, vec![6, 2, 4]).unwrap();
        for cluster in Cluster::BOTH {
            for a in 0..=2 {
                assert_eq!(expected_mistakes_conditional(&coin, &mixed, cluster, a).unwrap(), 3.0);
            }
        }

        let m = params(10, 0.1, 0.5);
        let zeros = PolicyTable::constant(10, 2, 8).unwrap();
        let v = expected_mistakes_conditional(&m, &zeros, Cluster::Zero, 0).unwrap();
        assert!((v - 0.8).abs() < 1e-15);
    }

    #[test]
    fn expected_utility_examples() {
        let spec = WelfareSpec::default();
        let v = expected_utility(&params(3, 0.0, 0.5), &follow_the_bit(3), &spec).unwrap();
        assert_eq!(v, 2.0);
        for z in 0..=3 {
            let v = expected_utility(&params(3, 0.5, 0.5), &PolicyTable::constant(3, 0, z).unwrap(), &spec).unwrap();
            assert!((v - 1.5).abs() < 1e-15);
        }
        for f in [[0, 0], [2, 0], [0, 2], [1, 1]] {
            let v = expected_utility(&params(3, 0.5, 0.5), &PolicyTable::new(3, 1, f.to_vec()).unwrap(), &spec).unwrap();
            assert!((v - 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn noiseless_gamma_two_welfare() {
        let spec = WelfareSpec::default().with_gamma(2.0);
        let w = welfare(&params(3, 0.0, 0.5), &follow_the_bit(3), &spec).unwrap();
        assert!((w + 1.0 / 3.0).abs() < 1e-15, "{w}");
    }

    #[test]
    fn g_term_examples() {
        let spec = WelfareSpec::default().with_gamma(0.5);
        let g = g_term(&params(2, 0.0, 0.5), 0, 2, &spec, Cluster::Zero).unwrap();
        assert!((g - 2f64.sqrt()).abs() < 1e-15);
        assert!(g_term(&params(2, 0.1, 0.5), 0, 2, &WelfareSpec::maximin(), Cluster::Zero).is_err());
        assert!(g_term(&params(4, 0.1, 0.5), 1, 4, &spec, Cluster::Zero).is_err());
    }

    // Independent brute force over every (j, l) pair of mistake counts.
    fn g_brute(n: usize, k: usize, z: usize, p: f64, gamma: f64, shift: f64, cluster: Cluster) -> f64 {
        let choose = |n: usize, r: usize| -> f64 { (0..r).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64) };
        let (e0, e1) = if cluster == Cluster::Zero { (p, 1.0 - p) } else { (1.0 - p, p) };
        let m = n - k;
        let mut total = 0.0;
        for j in 0..=z {
            for l in 0..=m - z {
                let w = choose(z, j) * e0.powi(j as i32) * (1.0 - e0).powi((z - j) as i32)
                    * choose(m - z, l) * e1.powi(l as i32) * (1.0 - e1).powi((m - z - l) as i32);
                let u = (n - k - j - l) as f64 + shift;
                total += w * u.powf(1.0 - gamma);
            }
        }
        total
    }

    #[test]
    fn g_term_matches_brute_force() {
        let m = params(4, 0.2, 0.5);
        let spec = WelfareSpec::default().with_gamma(2.0);
        for cluster in Cluster::BOTH {
            let got = g_term(&m, 1, 2, &spec, cluster).unwrap();
            let want = g_brute(4, 1, 2, 0.2, 2.0, 1.0, cluster);
            assert!((got - want).abs() < 1e-13, "{got} vs {want}");
        }
        // Frozen value of the brute-force oracle for cluster 0:
        // e0 = 0.2 on 2 guessed zeros, e1 = 0.8 on 1 guessed one, shifted utilities 4 - B.
        let frozen = 0.128 / 4.0 + 0.576 / 3.0 + 0.264 / 2.0 + 0.032 / 1.0;
        assert!((g_term(&m, 1, 2, &spec, Cluster::Zero).unwrap() - frozen).abs() < 1e-13);
    }

    #[test]
    fn ln_g_term_agrees_with_linear() {
        let m = params(9, 0.15, 0.4);
        let spec = WelfareSpec::default().with_gamma(7.5);
        for z in 0..=6 {
            for cluster in Cluster::BOTH {
                let lin = g_term(&m, 3, z, &spec, cluster).unwrap();
                let log = ln_g_term(&m, 3, z, &spec, cluster).unwrap();
                assert!((lin.ln() - log).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn nash_requires_shift_for_zero_utility() {
        let m = params(4, 0.2, 0.5);
        let policy = PolicyTable::constant(4, 0, 4).unwrap();
        let off = WelfareSpec::default().with_gamma(1.0).with_zero_shift(false);
        assert!(matches!(welfare(&m, &policy, &off), Err(Error::ZeroUtility { .. })));
        let on = off.with_zero_shift(true);
        let w = welfare(&m, &policy, &on).unwrap();
        let want: f64 = (0..=4)
            .map(|b| {
                let w0 = crate::numeric::binom_pmf(4, b, 0.2);
                let w1 = crate::numeric::binom_pmf(4, b, 0.8);
                (0.5 * w0 + 0.5 * w1) * ((4 - b) as f64 + 1.0).ln()
            })
            .sum();
        assert!((w - want).abs() < 1e-13);
    }

    #[test]
    fn noiseless_zero_utility_has_no_mass() {
        // Perfect identification: no user ever hits zero utility, so no shift is needed.
        let policy = follow_the_bit(3);
        let spec = WelfareSpec::default().with_gamma(1.0).with_zero_shift(false);
        let w = welfare(&params(3, 0.0, 0.5), &policy, &spec).unwrap();
        assert!((w - 2f64.ln()).abs() < 1e-15);
    }

    #[test]
    fn negative_utility_rejected_for_positive_gamma() {
        let m = params(4, 0.2, 0.5);
        let spec = WelfareSpec::default().with_gamma(0.5).with_query_cost(3.0);
        let policy = PolicyTable::constant(4, 2, 2).unwrap();
        assert!(matches!(welfare(&m, &policy, &spec), Err(Error::NegativeUtility { .. })));
        assert!(welfare(&m, &policy, &spec.with_gamma(0.0)).is_ok());
    }

    #[test]
    fn expected_utility_non_increasing_in_noise() {
        let spec = WelfareSpec::default();
        let mut prev = f64::INFINITY;
        for i in 0..=50 {
            let p = i as f64 / 100.0;
            let m = params(7, p, 0.5);
            let v = expected_utility(&m, &PolicyTable::constant(7, 0, 7).unwrap(), &spec).unwrap();
            assert!(v <= prev + 1e-12);
            prev = v;
        }
    }

    fn arb_instance() -> impl Strategy<Value = (MixtureParams, PolicyTable)> {
        (1usize..=14, 0.0f64..=0.5, 0.0f64..=1.0)
            .prop_flat_map(|(n, p, alpha)| (Just(MixtureParams::new(n, p, alpha).unwrap()), 0..=n))
            .prop_flat_map(|(m, k)| {
                let n = m.n();
                (Just(m), proptest::collection::vec(0..=n - k, k + 1))
                    .prop_map(move |(m, zeros)| (m, PolicyTable::new(n, k, zeros).unwrap()))
            })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn utilitarian_welfare_is_expected_utility((m, policy) in arb_instance(), c in 0.0f64..2.0) {
            let spec = WelfareSpec::default().with_query_cost(c);
            let w = welfare(&m, &policy, &spec).unwrap();
            let eu = expected_utility(&m, &policy, &spec).unwrap();
            prop_assert!((w - eu).abs() < 1e-9);
        }

        #[test]
        fn g_term_gamma_zero_is_linear((m, policy) in arb_instance(), c in 0.0f64..2.0) {
            let spec = WelfareSpec::default().with_query_cost(c);
            let k = policy.k();
            for cluster in Cluster::BOTH {
                for a in 0..=k {
                    let g = g_term(&m, k, policy.zeros(a), &spec, cluster).unwrap();
                    let linear = m.n() as f64 - c * k as f64
                        - expected_mistakes_conditional(&m, &policy, cluster, a).unwrap();
                    prop_assert!((g - linear).abs() < 1e-9);
                }
            }
        }

        #[test]
        fn expected_utility_complement_invariant((m, policy) in arb_instance()) {
            let k = policy.k();
            let rest = policy.unrevealed();
            let mirrored = PolicyTable::new(m.n(), k, (0..=k).map(|a| rest - policy.zeros(k - a)).collect()).unwrap();
            let spec = WelfareSpec::default();
            let a = expected_utility(&m, &policy, &spec).unwrap();
            let b = expected_utility(&m.complement(), &mirrored, &spec).unwrap();
            prop_assert!((a - b).abs() < 1e-9);
        }
    }
}
