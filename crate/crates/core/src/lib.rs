//! Optimal preference elicitation under a two-cluster Bernoulli preference model.
//!
//! A user's `n` binary preferences come from one of two prototypes (all zeros or all ones) with
//! each bit flipped independently with probability `p`. A system may ask `k` of the bits at cost
//! `c` each and then guesses the rest. This crate computes
//!
//! * the welfare-optimal guessing policy `f(a)` (how many zeros to output after seeing `a` ones)
//!   for the whole inequality-aversion family `gamma in [0, inf]`, see [`policy`];
//! * the optimal query count `k*` and regime maps over `(p, alpha)`;
//! * the entropy of the induced output distribution, see [`diversity`];
//! * exhaustive and Monte Carlo population oracles, see [`sim`];
//! * the same sweep on real ranking data via an information-gain elicitation tree, see
//!   [`empirical`].
//!
//! ```
//! use elicit::{optimal_query_count, MixtureParams, WelfareSpec};
//!
//! let params = MixtureParams::new(3, 0.01, 0.5).unwrap();
//! let best = optimal_query_count(&params, &WelfareSpec::utilitarian(), 3).unwrap();
//! assert_eq!(best.best_k, 1);
//! ```

pub mod cli;
pub mod diversity;
pub mod empirical;
pub mod error;
pub mod mixture;
pub mod numeric;
pub mod policy;
pub mod serde_gamma;
pub mod sim;
pub mod welfare;

pub use diversity::{output_entropy, output_entropy_base, output_value_distribution, OutputDistribution};
pub use error::{Error, Result};
pub use mixture::{
    cluster_posterior, reveal_count_pmf, sample_population, vector_pmf, Cluster, MixtureParams, PreferenceVector, RevealPmf,
    RevealedSummary,
};
pub use policy::{
    best_for_k, maximin_objective, maximin_response, optimal_query_count, optimal_response_general, optimal_response_utilitarian, regime_map,
    KEvaluation, MaximinValue, ObjectiveKey, OptimizationResult, RegimeMap, TIE_RTOL,
};
pub use sim::{gini, run_exhaustive, run_exhaustive_patterns, run_monte_carlo, SimulationMode, SimulationReport};
pub use welfare::{expected_utility, g_term, utility, welfare, PolicyTable, WelfareSpec};
