//! Diversity of what the system outputs under the welfare-optimal pipeline.
//!
//!     cargo run --release --example output_entropy

use elicit::{optimal_query_count, output_entropy, output_value_distribution, MixtureParams, WelfareSpec};

fn main() -> elicit::Result<()> {
    let params = MixtureParams::new(25, 0.1, 0.5)?;
    println!("{:>6} {:>3} {:>8}  distribution of zeros output", "gamma", "k", "H bits");
    for gamma in [0.0, 1.0, 2.0, 3.0, 5.0, 7.0, 10.0, 20.0, f64::INFINITY] {
        let best = optimal_query_count(&params, &WelfareSpec::default().with_gamma(gamma), params.n())?;
        let dist = output_value_distribution(&params, &best.policy)?;
        let shown: Vec<String> = dist.support.iter().zip(&dist.probabilities).map(|(z, q)| format!("{z}:{q:.3}")).collect();
        println!("{gamma:>6} {:>3} {:>8.4}  {}", best.best_k, output_entropy(&dist), shown.join(" "));
    }
    Ok(())
}
