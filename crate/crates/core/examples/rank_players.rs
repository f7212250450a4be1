//! Ranks the point guards of the sample league under both weighting
//! scenarios and prints the complete order.
//!
//! ```text
//! cargo run --example rank_players [PROFILE]
//! ```

use outrank::basketball::Scenario;
use outrank::dataset::read_boxscore_csv;
use outrank::export::flows_table;
use outrank::pipeline::{run_rank, RankRequest};

fn main() -> outrank::Result<()> {
    let profile = std::env::args().nth(1).unwrap_or_else(|| "PG".into());
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/examples/data/league.csv");
    let data = read_boxscore_csv(path)?;

    for scenario in [Scenario::EqualWeights, Scenario::CorrelationBoosted] {
        let resp = run_rank(&data, &RankRequest::for_profile(&profile, scenario))?;
        println!("{profile}, {} ({} eligible players)", resp.scenario, resp.players);
        for w in &resp.weights {
            print!("  {}={:.3}", w.criterion, w.weight);
        }
        println!();
        for warning in &resp.warnings {
            println!("  warning: {warning}");
        }
        println!("{}", flows_table(&resp));
    }
    Ok(())
}
