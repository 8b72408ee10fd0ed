//! Optimal k over a (p, alpha) grid, printed as a character map.
//!
//!     cargo run --release --example regime_map -- [n] [gamma]

use elicit::{regime_map, WelfareSpec};

fn main() -> elicit::Result<()> {
    let mut args = std::env::args().skip(1);
    let n: usize = args.next().map_or(30, |s| s.parse().expect("n"));
    let gamma: f64 = args.next().map_or(0.0, |s| s.parse().expect("gamma"));

    let p_grid: Vec<f64> = (0..=50).map(|i| i as f64 / 100.0).collect();
    let alpha_grid: Vec<f64> = (0..=20).map(|i| i as f64 / 20.0).collect();
    let map = regime_map(n, &p_grid, &alpha_grid, &WelfareSpec::default().with_gamma(gamma))?;

    println!("n={n} gamma={gamma}; rows alpha 0..1, columns p 0..0.5; digits are best k (+ for >= 10)");
    for (alpha, row) in map.alpha_grid.iter().zip(&map.best_k) {
        let line: String = row.iter().map(|&k| if k >= 10 { '+' } else { char::from(b'0' + k as u8) }).collect();
        println!("{alpha:>5.2} {line}");
    }
    println!("max best k = {}", map.max_k());
    Ok(())
}
