//! Seeded stand-in for a ranking dataset: two latent taste clusters, each a Plackett-Luce model.

use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::data::RankingDataset;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SyntheticRankings {
    pub n: usize,
    pub users: usize,
    /// Share of users drawn from the first cluster.
    pub alpha: f64,
    /// Log-worth gap between adjacent items in a cluster's preferred order. Larger is less noisy.
    pub spread: f64,
    /// Extra log-worth of item 0 in both clusters (one broadly popular item).
    pub favourite_boost: f64,
    pub seed: u64,
}

impl Default for SyntheticRankings {
    fn default() -> Self {
        Self { n: 10, users: 5000, alpha: 0.6, spread: 0.8, favourite_boost: 2.0, seed: 20_240_601 }
    }
}

impl SyntheticRankings {
    /// Cluster 0 prefers low item indices, cluster 1 high ones, with items in the middle
    /// shuffled by a fixed per-cluster permutation so the two orders are not exact reverses.
    fn log_worths(&self, rng: &mut ChaCha8Rng) -> [Vec<f64>; 2] {
        let n = self.n;
        let base: Vec<f64> = (0..n).map(|r| -self.spread * r as f64).collect();
        let mut order0: Vec<usize> = (0..n).collect();
        let mut order1: Vec<usize> = (0..n).rev().collect();
        for order in [&mut order0, &mut order1] {
            for i in 2..n.saturating_sub(2) {
                let j = rng.random_range(2..n - 2);
                order.swap(i, j);
            }
        }
        let mut w = [vec![0.0; n], vec![0.0; n]];
        for (c, order) in [order0, order1].into_iter().enumerate() {
            for (rank, item) in order.into_iter().enumerate() {
                w[c][item] = base[rank];
            }
            w[c][0] += self.favourite_boost;
        }
        w
    }

    pub fn generate(&self) -> Result<RankingDataset> {
        if self.n < 2 || self.users == 0 || !(0.0..=1.0).contains(&self.alpha) || self.spread.is_nan() || self.spread < 0.0 {
            return Err(Error::InvalidParameter(format!("invalid synthetic ranking configuration {self:?}")));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        let worths = self.log_worths(&mut rng);
        let users = (0..self.users)
            .map(|_| {
                let w = if rng.random_bool(self.alpha) { &worths[0] } else { &worths[1] };
                // Sorting Gumbel-perturbed log-worths samples a Plackett-Luce ranking.
                let mut keyed: Vec<(f64, usize)> = w
                    .iter()
                    .enumerate()
                    .map(|(i, &lw)| {
                        let u: f64 = rng.random_range(f64::MIN_POSITIVE..1.0);
                        (lw - (-u.ln()).ln(), i)
                    })
                    .collect();
                keyed.sort_by(|a, b| b.0.total_cmp(&a.0).then(a.1.cmp(&b.1)));
                keyed.into_iter().map(|(_, i)| i).collect()
            })
            .collect();
        RankingDataset::new(self.n, users)
    }
}

/// Serialises rankings in the sushi order-file layout.
pub fn to_sushi_order(data: &RankingDataset) -> String {
    let mut out = format!("{} 1\n", data.n());
    for r in data.users() {
        let _ = write!(out, "0 {}", data.n());
        for item in r {
            let _ = write!(out, " {item}");
        }
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::empirical::{load_rankings, RankingFormat};

    #[test]
    fn round_trips_through_the_sushi_loader() {
        let cfg = SyntheticRankings { users: 200, ..Default::default() };
        let d = cfg.generate().unwrap();
        let text = to_sushi_order(&d);
        let back = load_rankings(text.as_bytes(), RankingFormat::SUSHI_ORDER).unwrap();
        assert_eq!(back, d);
        assert_eq!(cfg.generate().unwrap(), d);
    }

    #[test]
    fn rejects_degenerate_configs() {
        assert!(SyntheticRankings { n: 1, ..Default::default() }.generate().is_err());
        assert!(SyntheticRankings { users: 0, ..Default::default() }.generate().is_err());
    }
}
