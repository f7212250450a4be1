//! PROMETHEE I partial order as a Graphviz graph. Only covering edges are
//! drawn; a path from a to b means a is preferred to b.
//!
//! ```text
//! cargo run --example outranking_graph > centers.dot && dot -Tsvg centers.dot -o centers.svg
//! ```

use outrank::basketball::Scenario;
use outrank::dataset::read_boxscore_csv;
use outrank::outranking::{to_dot, DotOptions, Verdict};
use outrank::pipeline::{rank, RankRequest};

fn main() -> outrank::Result<()> {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/examples/data/league.csv");
    let data = read_boxscore_csv(path)?;
    let ranking = rank(&data, &RankRequest::for_profile("C", Scenario::CorrelationBoosted))?;
    let rel = &ranking.relation;

    for (a, b) in rel.incomparable_pairs() {
        eprintln!("incomparable: {} / {}", rel.alternatives[a], rel.alternatives[b]);
    }
    let preferred = (0..rel.len())
        .flat_map(|i| (0..rel.len()).map(move |j| (i, j)))
        .filter(|&(i, j)| rel.verdict(i, j) == Verdict::Preferred)
        .count();
    eprintln!("{preferred} preferred pairs, {} covering edges", rel.edges.len());

    print!("{}", to_dot(rel, &ranking.flows, DotOptions::default()));
    Ok(())
}
