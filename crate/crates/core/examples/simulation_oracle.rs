//! Closed-form welfare against exhaustive enumeration and Monte Carlo.
//!
//!     cargo run --release --example simulation_oracle

use elicit::{
    best_for_k, expected_utility, run_exhaustive, run_exhaustive_patterns, run_monte_carlo, welfare, MixtureParams, WelfareSpec,
};

fn main() -> elicit::Result<()> {
    let params = MixtureParams::new(12, 0.15, 0.35)?;
    let spec = WelfareSpec::default();
    let gammas = [0.0, 0.5, 1.0, 2.0, 5.0];
    let policy = best_for_k(&params, 4, &spec.with_gamma(2.0))?.policy;
    println!("policy (zeros per a): {:?}", policy.table());

    let classes = run_exhaustive(&params, &policy, &spec, &gammas)?;
    let patterns = run_exhaustive_patterns(&params, &policy, &spec, &gammas)?;
    let mc = run_monte_carlo(&params, &policy, &spec, &gammas, 200_000, 42)?;

    println!("\nmean utility");
    println!("  closed form {:.12}", expected_utility(&params, &policy, &spec)?);
    println!("  classes     {:.12}", classes.mean_utility);
    println!("  patterns    {:.12}", patterns.mean_utility);
    println!("  monte carlo {:.6} +- {:.6}", mc.mean_utility, mc.std_error.unwrap());

    println!("\n{:>5} {:>18} {:>18} {:>18}", "gamma", "closed form", "enumeration", "monte carlo");
    for &g in &gammas {
        println!(
            "{g:>5} {:>18.12} {:>18.12} {:>18.6}",
            welfare(&params, &policy, &spec.with_gamma(g))?,
            classes.welfare_at(g).unwrap(),
            mc.welfare_at(g).unwrap()
        );
    }
    println!("\ngini: exhaustive {:.6}, monte carlo {:.6}", classes.gini, mc.gini);
    Ok(())
}
