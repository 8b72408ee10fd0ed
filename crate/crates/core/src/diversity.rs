//! Output homogenisation measured as the Shannon entropy of the response distribution.
//!
//! The response of a deterministic policy is the number of zeros `f(a)` it writes on the
//! unrevealed features; the randomness comes only from the revealed count `a`. The entropy here
//! is that of the pushforward of the distribution of `a` through `f`. Revealed bits differ
//! between users but are copied verbatim, so they are not counted as output diversity.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::mixture::{reveal_count_pmf, MixtureParams};
use crate::numeric::compensated_sum;
use crate::welfare::PolicyTable;

/// Distribution over distinct response values `f(a)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OutputDistribution {
    pub support: Vec<usize>,
    pub probabilities: Vec<f64>,
}

impl OutputDistribution {
    pub fn new(support: Vec<usize>, probabilities: Vec<f64>) -> Result<Self> {
        if support.len() != probabilities.len() {
            return Err(Error::InvalidParameter("support and probabilities differ in length".into()));
        }
        if probabilities.iter().any(|&q| q.is_nan() || q < 0.0) {
            return Err(Error::InvalidParameter("probabilities must be non-negative".into()));
        }
        let total = compensated_sum(probabilities.iter().copied());
        if (total - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidParameter(format!("probabilities sum to {total}, not 1")));
        }
        Ok(Self { support, probabilities })
    }

    pub fn len(&self) -> usize {
        self.support.len()
    }

    pub fn is_empty(&self) -> bool {
        self.support.is_empty()
    }
}

/// Pushforward of the revealed-count distribution through the policy.
pub fn output_value_distribution(params: &MixtureParams, policy: &PolicyTable) -> Result<OutputDistribution> {
    if policy.n() != params.n() {
        return Err(Error::LengthMismatch { expected: params.n(), got: policy.n() });
    }
    let reveal = reveal_count_pmf(params, policy.k())?;
    let mut merged: BTreeMap<usize, Vec<f64>> = BTreeMap::new();
    for (a, &mass) in reveal.marginal.iter().enumerate() {
        merged.entry(policy.zeros(a)).or_default().push(mass);
    }
    let (support, probabilities) = merged
        .into_iter()
        .filter_map(|(z, masses)| {
            let q = compensated_sum(masses);
            (q > 0.0).then_some((z, q))
        })
        .unzip();
    Ok(OutputDistribution { support, probabilities })
}

/// Shannon entropy in bits.
pub fn output_entropy(dist: &OutputDistribution) -> f64 {
    output_entropy_base(dist, 2.0)
}

/// Shannon entropy with the given logarithm base (`0 log 0 = 0`).
pub fn output_entropy_base(dist: &OutputDistribution, base: f64) -> f64 {
    let nats = -compensated_sum(dist.probabilities.iter().filter(|&&q| q > 0.0).map(|&q| q * q.ln()));
    (nats / base.ln()).max(0.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::policy::{maximin_response, optimal_response_utilitarian};
    use crate::numeric::binom_pmf;
    use proptest::prelude::*;

    fn params(n: usize, p: f64, alpha: f64) -> MixtureParams {
        MixtureParams::new(n, p, alpha).unwrap()
    }

    #[test]
    fn no_queries_is_a_point_mass() {
        let d = output_value_distribution(&params(6, 0.2, 0.3), &PolicyTable::constant(6, 0, 6).unwrap()).unwrap();
        assert_eq!(d.support, vec![6]);
        assert_eq!(output_entropy(&d), 0.0);
    }

    #[test]
    fn utilitarian_single_query_is_one_bit() {
        let m = params(9, 0.2, 0.5);
        let d = output_value_distribution(&m, &optimal_response_utilitarian(&m, 1).unwrap()).unwrap();
        assert_eq!(d.support, vec![0, 8]);
        for q in &d.probabilities {
            assert!((q - 0.5).abs() < 1e-15);
        }
        assert!((output_entropy(&d) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn maximin_support_has_k_plus_one_values() {
        let m = params(12, 0.1, 0.5);
        for k in 0..=6 {
            let d = output_value_distribution(&m, &maximin_response(&m, k).unwrap()).unwrap();
            assert_eq!(d.len(), k + 1);
        }
    }

    #[test]
    fn uniform_over_four() {
        let d = OutputDistribution::new(vec![0, 1, 2, 3], vec![0.25; 4]).unwrap();
        assert_eq!(output_entropy(&d), 2.0);
        assert!((output_entropy_base(&d, std::f64::consts::E) - 4f64.ln()).abs() < 1e-15);
        assert!(OutputDistribution::new(vec![0, 1], vec![0.5, 0.6]).is_err());
    }

    proptest! {
        #[test]
        fn entropy_bounds_and_brute_force(n in 1usize..20, p in 0.0f64..=0.5, alpha in 0.0f64..=1.0,
                                          kf in 0.0f64..=1.0, seed in any::<u64>()) {
            let m = params(n, p, alpha);
            let k = (kf * n as f64).floor() as usize;
            let mut s = seed;
            let zeros: Vec<usize> = (0..=k).map(|_| { s = s.wrapping_mul(6364136223846793005).wrapping_add(1); (s >> 33) as usize % (n - k + 1) }).collect();
            let policy = PolicyTable::new(n, k, zeros.clone()).unwrap();
            let h = output_entropy(&output_value_distribution(&m, &policy).unwrap());
            prop_assert!(h >= 0.0 && h <= ((k + 1) as f64).log2() + 1e-12);

            // Brute force: sum the mass of every a sharing a response value.
            let mut brute = 0.0;
            for v in 0..=n - k {
                let q: f64 = (0..=k).filter(|&a| zeros[a] == v)
                    .map(|a| alpha * binom_pmf(k, a, p) + (1.0 - alpha) * binom_pmf(k, a, 1.0 - p)).sum();
                if q > 0.0 { brute -= q * q.log2(); }
            }
            prop_assert!((h - brute).abs() < 1e-9);
        }
    }
}
