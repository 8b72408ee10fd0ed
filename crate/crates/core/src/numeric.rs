//! Log-space binomial weights and compensated summation.

use statrs::function::gamma::ln_gamma;

/// `ln C(n, k)`; `-inf` when `k > n`.
pub fn ln_choose(n: usize, k: usize) -> f64 {
    if k > n {
        return f64::NEG_INFINITY;
    }
    if k == 0 || k == n {
        return 0.0;
    }
    ln_gamma(n as f64 + 1.0) - ln_gamma(k as f64 + 1.0) - ln_gamma((n - k) as f64 + 1.0)
}

/// `ln x^e` with the convention `0^0 = 1`.
pub fn ln_pow(x: f64, e: usize) -> f64 {
    if e == 0 {
        0.0
    } else {
        e as f64 * x.ln()
    }
}

/// Log of the Binomial(trials, prob) mass at `successes`.
pub fn ln_binom_pmf(trials: usize, successes: usize, prob: f64) -> f64 {
    if successes > trials {
        return f64::NEG_INFINITY;
    }
    ln_choose(trials, successes) + ln_pow(prob, successes) + ln_pow(1.0 - prob, trials - successes)
}

pub fn binom_pmf(trials: usize, successes: usize, prob: f64) -> f64 {
    ln_binom_pmf(trials, successes, prob).exp()
}

/// Full Binomial(trials, prob) mass vector, indexed by success count.
pub fn binom_pmf_vec(trials: usize, prob: f64) -> Vec<f64> {
    (0..=trials).map(|s| binom_pmf(trials, s, prob)).collect()
}

/// Numerically stable `ln Σ exp(x_i)`. Returns `-inf` for an empty or all `-inf` input.
pub fn log_sum_exp<I: IntoIterator<Item = f64>>(terms: I) -> f64 {
    let terms: Vec<f64> = terms.into_iter().collect();
    let max = terms.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if max == f64::NEG_INFINITY {
        return f64::NEG_INFINITY;
    }
    if max == f64::INFINITY {
        return f64::INFINITY;
    }
    let mut acc = NeumaierSum::default();
    for t in terms {
        acc.add((t - max).exp());
    }
    max + acc.value().ln()
}

/// `ln(e^x + e^y)`.
pub fn log_add_exp(x: f64, y: f64) -> f64 {
    let (hi, lo) = if x >= y { (x, y) } else { (y, x) };
    if hi == f64::NEG_INFINITY {
        return hi;
    }
    hi + (lo - hi).exp().ln_1p()
}

/// Neumaier's variant of Kahan summation.
#[derive(Debug, Clone, Copy, Default)]
pub struct NeumaierSum {
    sum: f64,
    compensation: f64,
}

impl NeumaierSum {
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.compensation += (self.sum - t) + x;
        } else {
            self.compensation += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.compensation
    }

    /// Folds another partial sum into this one.
    pub fn merge(&mut self, other: &NeumaierSum) {
        self.add(other.sum);
        self.add(other.compensation);
    }
}

impl std::iter::FromIterator<f64> for NeumaierSum {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut acc = NeumaierSum::default();
        for x in iter {
            acc.add(x);
        }
        acc
    }
}

/// Compensated sum of an iterator of `f64`.
pub fn compensated_sum<I: IntoIterator<Item = f64>>(iter: I) -> f64 {
    iter.into_iter().collect::<NeumaierSum>().value()
}
