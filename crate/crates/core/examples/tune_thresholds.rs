//! Quantile-based thresholds: q and p are the alpha and beta percentiles of
//! the absolute differences between every pair of alternatives.
//!
//! ```text
//! cargo run --example tune_thresholds
//! ```

use outrank::dataset::read_boxscore_csv;
use outrank::pipeline::{tune_profile, Profile};
use outrank::tuning::{pairwise_abs_differences, tune_thresholds, TuningConfig};

fn main() -> outrank::Result<()> {
    let values = [0.0, 1.0, 2.0, 3.0];
    let d = pairwise_abs_differences(&values);
    let th = tune_thresholds(&values, TuningConfig::default())?;
    println!("values {values:?}\n|d| over pairs {d:?}\nq = {}, p = {}\n", th.q, th.p);

    // Wider quantiles give a larger indifference zone.
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/examples/data/league.csv");
    let data = read_boxscore_csv(path)?;
    for (alpha, beta) in [(25.0, 75.0), (10.0, 90.0)] {
        println!("point guards, alpha = {alpha}, beta = {beta}");
        let rows = tune_profile(&data, "PG".parse::<Profile>()?, TuningConfig::new(alpha, beta)?, Default::default())?;
        for r in rows {
            println!("  {:<6} q = {:>8.4}  p = {:>8.4}", r.criterion, r.q, r.p);
        }
    }
    Ok(())
}
