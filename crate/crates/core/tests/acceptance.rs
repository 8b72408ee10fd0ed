//! Acceptance criteria 1-9, one PASS/FAIL line each.
//!
//! Criterion 8 uses the real sushi order file when `SUSHI_ORDER_PATH` points at it and the
//! shipped synthetic fixture otherwise.

use std::path::PathBuf;
use std::process::Command;
use std::time::Instant;

use elicit::empirical::{load_rankings_path, EmpiricalConfig, RankingFormat};
use elicit::{
    maximin_response, optimal_query_count, output_entropy, output_value_distribution, regime_map, run_exhaustive_patterns, welfare,
    MixtureParams, PolicyTable, WelfareSpec,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn best_k(n: usize, p: f64, alpha: f64, gamma: f64) -> usize {
    let params = MixtureParams::new(n, p, alpha).unwrap();
    optimal_query_count(&params, &WelfareSpec::default().with_gamma(gamma), n).unwrap().best_k
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut worst: f64 = 0.0;
    for _ in 0..200 {
        let n = rng.random_range(1..=12);
        let k = rng.random_range(0..=n);
        let params = MixtureParams::new(n, rng.random_range(0.0..=0.5), rng.random_range(0.0..=1.0)).unwrap();
        let zeros = (0..=k).map(|_| rng.random_range(0..=n - k)).collect();
        let policy = PolicyTable::new(n, k, zeros).unwrap();
        let gamma = [0.0, 0.5, 2.0, 5.0][rng.random_range(0..4)];
        let spec = WelfareSpec::default().with_gamma(gamma);
        let oracle = run_exhaustive_patterns(&params, &policy, &spec, &[gamma]).unwrap().welfare_at(gamma).unwrap();
        let closed = welfare(&params, &policy, &spec).unwrap();
        worst = worst.max((oracle - closed).abs());
    }
    let secs = start.elapsed().as_secs_f64();
    ensure(worst <= 1e-9, format!("max |enumeration - closed form| = {worst:e}"))?;
    ensure(secs < 60.0, format!("took {secs:.1}s"))?;
    Ok(format!("200 instances, max deviation {worst:.1e}, {secs:.2}s"))
}

fn criterion_2() -> Outcome {
    let (lo, hi) = (best_k(3, 0.01, 0.5, 0.0), best_k(3, 0.49, 0.5, 0.0));
    ensure(lo == 1 && hi == 0, format!("best k = {lo} at p=0.01, {hi} at p=0.49"))?;
    Ok("n=3 alpha=0.5: best k 1 at p=0.01, 0 at p=0.49".into())
}

fn criterion_3() -> Outcome {
    let grid: Vec<f64> = (0..50).map(|i| 0.5 * i as f64 / 49.0).collect();
    for n in [3, 6] {
        for &p in &grid {
            let k = best_k(n, p, 0.9, 0.0);
            ensure(k == 0, format!("n={n} p={p}: best k = {k}"))?;
        }
    }
    Ok("alpha=0.9: best k = 0 on a 50-point p grid for n=3 and n=6".into())
}

fn criterion_4() -> Outcome {
    let spec = WelfareSpec::utilitarian();
    let p_grid: Vec<f64> = (0..=50).map(|i| i as f64 / 100.0).collect();
    let alpha_grid: Vec<f64> = (0..=20).map(|i| i as f64 / 20.0).collect();
    let map = regime_map(30, &p_grid, &alpha_grid, &spec).unwrap();
    let rows = &map.best_k;
    let intermediate = rows[1..rows.len() - 1].iter().any(|r| r[1..r.len() - 1].iter().any(|&k| k >= 2));
    ensure(intermediate, "no interior cell with best k >= 2")?;
    for i in 0..rows.len() {
        ensure(rows[i] == rows[rows.len() - 1 - i], format!("rows alpha={} and alpha={} differ", alpha_grid[i], 1.0 - alpha_grid[i]))?;
    }
    ensure(rows.iter().all(|r| *r.last().unwrap() == 0), "best k != 0 somewhere at p=0.5")?;
    Ok(format!("n=30: max best k {}, symmetric in alpha, zero column at p=0.5", map.max_k()))
}

/// Argmin over z of the worst-outcome probability, evaluated directly.
fn maximin_scan(n: usize, k: usize, p: f64, alpha: f64, a: usize) -> usize {
    let g = |z: usize| {
        let agree = (a + z) as i32;
        let rest = (n - a - z) as i32;
        alpha * p.powi(agree) * (1.0 - p).powi(rest) + (1.0 - alpha) * (1.0 - p).powi(agree) * p.powi(rest)
    };
    let mut best = 0;
    for z in 1..=n - k {
        if g(z) < g(best) * (1.0 - 1e-12) {
            best = z;
        }
    }
    best
}

fn criterion_5() -> Outcome {
    let mut points = 0;
    for n in 1..=20 {
        for k in 0..=n {
            for pi in 1..=9 {
                let p = 0.05 * pi as f64;
                for ai in 1..=9 {
                    let alpha = 0.1 * ai as f64;
                    let f = maximin_response(&MixtureParams::new(n, p, alpha).unwrap(), k).unwrap();
                    for a in 0..=k {
                        let want = maximin_scan(n, k, p, alpha, a);
                        ensure(f.zeros(a) == want, format!("n={n} k={k} p={p} alpha={alpha} a={a}: {} vs scan {want}", f.zeros(a)))?;
                    }
                    points += 1;
                    if ai == 5 && 2 * k <= n {
                        let mut seen = std::collections::BTreeSet::new();
                        for a in 0..=k {
                            let want = (n - 2 * a) / 2;
                            ensure(f.zeros(a) == want, format!("alpha=0.5 n={n} k={k} a={a}: {} vs {want}", f.zeros(a)))?;
                            seen.insert(f.zeros(a));
                        }
                        ensure(seen.len() == k + 1, format!("alpha=0.5 n={n} k={k}: responses not distinct"))?;
                    }
                }
            }
        }
    }
    Ok(format!("{points} grid points match the exhaustive scan; alpha=0.5 gives n/2 - a, all distinct"))
}

fn criterion_6() -> Outcome {
    let gammas: Vec<f64> = (0..=40).map(|i| i as f64 * 0.5).collect();
    let ks: Vec<usize> = gammas.iter().map(|&g| best_k(3, 0.1, 0.5, g)).collect();
    ensure(ks[0] == 1 && *ks.last().unwrap() == 0, format!("n=3 best k at gamma 0 / 20: {} / {}", ks[0], ks.last().unwrap()))?;
    ensure(ks.windows(2).all(|w| w[0] >= w[1]), format!("n=3 best k not a single 1 -> 0 step: {ks:?}"))?;
    let big: Vec<usize> = [0.0, 2.0, 5.0, 10.0].iter().map(|&g| best_k(25, 0.1, 0.5, g)).collect();
    ensure(big[1..] == [4, 6, 2], format!("n=25 best k at gamma 2,5,10 = {:?}", &big[1..]))?;
    ensure(big[0] <= big[1] && big[2] > big[3], format!("n=25 not rise-then-fall: {big:?}"))?;
    Ok(format!("n=3: 1 -> 0; n=25 over gamma 0,2,5,10: {big:?}"))
}

fn criterion_7() -> Outcome {
    let params = MixtureParams::new(25, 0.1, 0.5).unwrap();
    let mut got = Vec::new();
    for (k, gamma, want) in [(4, 2.0, 1.23), (6, 5.0, 2.42), (2, 10.0, 1.50)] {
        let best = optimal_query_count(&params, &WelfareSpec::default().with_gamma(gamma), 25).unwrap();
        ensure(best.best_k == k, format!("gamma={gamma}: best k {} (expected {k})", best.best_k))?;
        let h = output_entropy(&output_value_distribution(&params, &best.policy).unwrap());
        ensure((h - want).abs() <= 0.02, format!("gamma={gamma}: H = {h:.4}, expected {want}"))?;
        got.push(format!("{h:.4}"));
    }
    Ok(format!("H = {} (base 2, zero_shift on)", got.join(", ")))
}

fn criterion_8() -> Outcome {
    let cfg = EmpiricalConfig { m: 2, query_cost: 0.3, gammas: vec![0.0, 5.0, 10.0], ..Default::default() };
    if let Some(path) = std::env::var_os("SUSHI_ORDER_PATH") {
        let data = load_rankings_path(path.as_ref(), RankingFormat::SUSHI_ORDER).map_err(|e| e.to_string())?;
        ensure(data.len() == 5000 && data.n() == 10, format!("expected 5000 x 10, got {} x {}", data.len(), data.n()))?;
        let t = cfg.run(&data).map_err(|e| e.to_string())?;
        let ks: Vec<usize> = cfg.gammas.iter().map(|&g| t.optimal_k(g).unwrap()).collect();
        let last = t.row(0.0, 10).unwrap();
        ensure(last.gini == 0.0 && last.mean_utility == 7.0, format!("k=10: gini {} utility {}", last.gini, last.mean_utility))?;
        ensure(ks == [4, 9, 10], format!("optimal k at gamma 0,5,10 = {ks:?}, expected [4, 9, 10]"))?;
        return Ok(format!("sushi data: optimal k {ks:?}, k=10 gini 0, utility 7"));
    }
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures/synthetic_rankings.order");
    let data = load_rankings_path(&path, RankingFormat::SUSHI_ORDER).map_err(|e| e.to_string())?;
    let t = cfg.run(&data).map_err(|e| e.to_string())?;
    let ks: Vec<usize> = cfg.gammas.iter().map(|&g| t.optimal_k(g).unwrap()).collect();
    ensure(ks.windows(2).all(|w| w[0] <= w[1]), format!("optimal k not non-decreasing: {ks:?}"))?;
    let last = t.row(0.0, data.n()).unwrap();
    ensure(last.gini == 0.0, format!("gini at k=n is {}", last.gini))?;
    Ok(format!("dataset absent, synthetic fixture: optimal k {ks:?} over gamma 0,5,10, gini(k=n) = 0"))
}

fn criterion_9() -> Outcome {
    let fixture = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures/synthetic_rankings.order");
    let fixture = fixture.to_str().unwrap();
    let commands: Vec<Vec<&str>> = vec![
        vec!["policy", "--n", "40", "--k", "20", "--alpha", "0.5", "--p", "0.3", "--gamma", "inf"],
        vec!["policy", "--n", "12", "--k", "4", "--alpha", "0.7", "--p", "0.2", "--gamma", "3", "--format", "json"],
        vec!["sweep-k", "--n", "10", "--p", "0.05,0.2,0.45", "--alpha", "0.6", "--gamma", "0,1,5,inf"],
        vec!["regime", "--n", "30", "--threads", "4"],
        vec!["regime", "--n", "12", "--gamma", "5", "--format", "json"],
        vec!["entropy", "--n", "25", "--p", "0.1", "--alpha", "0.5", "--gamma", "0,2,5,10,inf"],
        vec!["simulate", "--n", "10", "--p", "0.2", "--alpha", "0.5", "--k", "3", "--policy-gamma", "2"],
        vec!["simulate", "--n", "10", "--p", "0.2", "--alpha", "0.5", "--k", "3", "--mode", "monte-carlo", "--count", "50000", "--seed", "9"],
        vec!["simulate", "--n", "10", "--p", "0.2", "--alpha", "0.5", "--k", "3", "--mode", "patterns", "--format", "csv"],
        vec!["empirical", "--data", fixture, "--gamma", "0,1,5,10,inf"],
        vec!["empirical", "--data", fixture, "--format", "json", "--order", "breadth-first"],
    ];
    for args in &commands {
        let run = || Command::new(env!("CARGO_BIN_EXE_elicit")).args(args).output().unwrap();
        let (a, b) = (run(), run());
        ensure(a.status.success(), format!("{args:?} exited with {:?}", a.status.code()))?;
        ensure(a.stdout == b.stdout && !a.stdout.is_empty(), format!("{args:?} output differs between runs"))?;
    }
    Ok(format!("{} commands byte-identical across two runs", commands.len()))
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("oracle equivalence", criterion_1),
        ("single query vs none, n=3", criterion_2),
        ("no queries at alpha=0.9", criterion_3),
        ("regime map structure", criterion_4),
        ("maximin closed form", criterion_5),
        ("non-monotone optimal k", criterion_6),
        ("output entropy values", criterion_7),
        ("empirical sweep", criterion_8),
        ("determinism audit", criterion_9),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("criterion {}: PASS  {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL  {name}: {why}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
