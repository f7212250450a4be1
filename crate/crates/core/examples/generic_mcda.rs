//! The engine knows nothing about basketball. Here it picks a warehouse
//! site, minimizing cost and maximizing the rest.
//!
//! ```text
//! cargo run --example generic_mcda
//! ```

use outrank::flows::{evaluate, promethee_ii_ranking, CriterionSpec};
use outrank::matrix::PerformanceMatrix;
use outrank::outranking::outranking;
use outrank::preference::{PreferenceFunction, PreferenceKind, Thresholds};

fn main() -> outrank::Result<()> {
    let sites = ["Alder", "Birch", "Cedar", "Dogwood"].map(String::from).to_vec();
    let criteria = ["cost", "access", "space", "labour"].map(String::from).to_vec();
    let perf = PerformanceMatrix::new(
        sites,
        criteria,
        vec![
            vec![8.2, 7.0, 1200.0, 3.0],
            vec![6.5, 5.0, 900.0, 4.0],
            vec![9.9, 9.0, 1500.0, 4.0],
            vec![7.1, 6.0, 1000.0, 2.0],
        ],
    )?;

    let specs = vec![
        CriterionSpec::new("cost", 0.4, PreferenceFunction::new(PreferenceKind::VShape, Thresholds::linear(0.0, 2.0)?)?)
            .minimize(),
        CriterionSpec::new("access", 0.2, PreferenceFunction::new(PreferenceKind::Level, Thresholds::linear(1.0, 3.0)?)?),
        CriterionSpec::new("space", 0.25, PreferenceFunction::new(PreferenceKind::Gaussian, Thresholds::new(0.0, 0.0, 250.0)?)?),
        CriterionSpec::new("labour", 0.15, PreferenceFunction::usual()),
    ];

    let (_, flows) = evaluate(&perf, &specs)?;
    for r in promethee_ii_ranking(&flows) {
        let i = flows.index_of(&r.id).expect("ranked site exists");
        println!("{} {:<8} phi = {:+.4}  (phi+ {:.4}, phi- {:.4})", r.rank, r.id, r.phi, flows.phi_plus[i], flows.phi_minus[i]);
    }
    let rel = outranking(&flows);
    println!("\ncovering edges: {:?}", rel.edge_ids());
    for (a, b) in rel.incomparable_pairs() {
        println!("incomparable: {} / {}", flows.alternatives[a], flows.alternatives[b]);
    }
    Ok(())
}
