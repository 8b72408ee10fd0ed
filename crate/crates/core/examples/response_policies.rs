//! How the guessing policy changes with inequality aversion.
//!
//!     cargo run --example response_policies

use elicit::{best_for_k, maximin_response, MixtureParams, WelfareSpec};

fn main() -> elicit::Result<()> {
    let params = MixtureParams::new(40, 0.3, 0.5)?;
    let k = 20;
    let mut columns = Vec::new();
    for gamma in [0.0, 2.0, 10.0, 50.0] {
        let spec = WelfareSpec::default().with_gamma(gamma);
        columns.push((format!("g={gamma}"), best_for_k(&params, k, &spec)?.policy));
    }
    columns.push(("maximin".into(), maximin_response(&params, k)?));

    // Ones output among the 20 unrevealed bits, per observed count a.
    print!("{:>3}", "a");
    for (name, _) in &columns {
        print!("{name:>9}");
    }
    println!();
    for a in 0..=k {
        print!("{a:>3}");
        for (_, policy) in &columns {
            print!("{:>9}", policy.unrevealed() - policy.zeros(a));
        }
        println!();
    }

    // A fractional stationary point; the integer optimum sits next to it.
    let skewed = MixtureParams::new(10, 0.2, 0.7)?;
    let f = maximin_response(&skewed, 2)?;
    for a in 0..=2 {
        println!(
            "n=10 p=0.2 alpha=0.7 a={a}: stationary point {:.3}, zeros {}",
            elicit::policy::maximin_stationary_point(&skewed, a),
            f.zeros(a)
        );
    }
    Ok(())
}
