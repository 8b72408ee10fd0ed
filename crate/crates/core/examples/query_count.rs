//! Optimal number of queries as inequality aversion grows.
//!
//!     cargo run --release --example query_count

use elicit::{optimal_query_count, MixtureParams, WelfareSpec};

fn main() -> elicit::Result<()> {
    // Three items: one query pays off only while the noise is low.
    for p in [0.01, 0.1, 0.2, 0.3, 0.4, 0.49] {
        let r = optimal_query_count(&MixtureParams::new(3, p, 0.5)?, &WelfareSpec::utilitarian(), 3)?;
        println!("n=3 p={p:<4} best k = {}", r.best_k);
    }

    let params = MixtureParams::new(25, 0.1, 0.5)?;
    println!("\nn=25 p=0.1 alpha=0.5");
    for gamma in [0.0, 1.0, 2.0, 5.0, 10.0, 20.0, f64::INFINITY] {
        let spec = WelfareSpec::default().with_gamma(gamma);
        let r = optimal_query_count(&params, &spec, params.n())?;
        println!("gamma={gamma:<4} best k = {:>2}  welfare = {:.6e}", r.best_k, r.objective_value);
    }

    // Cheaper queries move the optimum up.
    println!("\nn=25 p=0.1 alpha=0.5 gamma=2");
    for c in [1.0, 0.5, 0.3, 0.1] {
        let spec = WelfareSpec::default().with_gamma(2.0).with_query_cost(c);
        println!("c={c:<3} best k = {}", optimal_query_count(&params, &spec, params.n())?.best_k);
    }
    Ok(())
}
