//! Welfare-by-k sweep on ranking data.
//!
//!     cargo run --release --example empirical_sushi -- [path/to/sushi3a.5000.10.order]
//!
//! Without a path the seeded synthetic stand-in is used.

use elicit::empirical::{load_rankings_path, EmpiricalConfig, SyntheticRankings};

fn main() -> elicit::Result<()> {
    let config = EmpiricalConfig { gammas: vec![0.0, 1.0, 2.0, 5.0, 10.0, f64::INFINITY], ..Default::default() };
    let rankings = match std::env::args().nth(1) {
        Some(path) => load_rankings_path(path.as_ref(), config.ranking_format()?)?,
        None => SyntheticRankings::default().generate()?
    };
    println!("{} users, {} items, top-{} binarised, c = {}", rankings.len(), rankings.n(), config.m, config.query_cost);

    let table = config.run(&rankings)?;
    println!("\n{:>6} {:>3} {:>12} {:>9} {:>7}", "gamma", "k", "welfare", "utility", "gini");
    for r in &table.rows {
        println!("{:>6} {:>3} {:>12.5} {:>9.4} {:>7.4}", r.gamma, r.k, r.mean_welfare, r.mean_utility, r.gini);
    }
    println!("\nwelfare is only comparable within one gamma");
    for &g in &config.gammas {
        println!("gamma = {g:>4}: optimal k = {}", table.optimal_k(g).unwrap());
    }
    println!("\nutility / inequality frontier\n{}", table.frontier_csv());
    Ok(())
}
