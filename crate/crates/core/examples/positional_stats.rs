//! Does position matter? One-way ANOVA of every index across positions,
//! then the strongest correlations within each position.
//!
//! ```text
//! cargo run --example positional_stats
//! ```

use outrank::dataset::read_boxscore_csv;
use outrank::pipeline::{anova_by_position, correlations_by_position};
use outrank::stats::SIGNIFICANCE_LEVEL;

fn main() -> outrank::Result<()> {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/examples/data/league.csv");
    let data = read_boxscore_csv(path)?;

    println!("{:<6} {:>8} {:>9}", "index", "F", "p");
    for row in anova_by_position(&data, Default::default())? {
        let mark = if row.p_value < SIGNIFICANCE_LEVEL { " *" } else { "" };
        println!("{:<6} {:>8.3} {:>9.4}{mark}", row.criterion, row.f_stat, row.p_value);
    }

    for (position, m) in correlations_by_position(&data, Default::default())? {
        let mut pairs = Vec::new();
        for i in 0..m.labels.len() {
            for j in i + 1..m.labels.len() {
                if let Some(c) = &m.cells[i][j] {
                    pairs.push((c.r, &m.labels[i], &m.labels[j], c.significant));
                }
            }
        }
        pairs.sort_by(|a, b| b.0.abs().total_cmp(&a.0.abs()));
        println!("\n{position} (n = {})", m.n);
        for (r, a, b, sig) in pairs.iter().take(3) {
            println!("  {a:>5} ~ {b:<5} r = {r:+.3}{}", if *sig { " *" } else { "" });
        }
    }
    Ok(())
}
