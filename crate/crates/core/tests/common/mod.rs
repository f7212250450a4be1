//! Helpers shared by the integration tests: random instances and a
//! brute-force reference that shares no code with the engine.

#![allow(dead_code, clippy::needless_range_loop)]

use std::collections::BTreeSet;

use outrank::flows::{CriterionSpec, Direction};
use outrank::matrix::PerformanceMatrix;
use outrank::preference::{PreferenceFunction, PreferenceKind, Thresholds};
use outrank::tuning::{tune_thresholds, TuningConfig};
use rand::rngs::StdRng;
use rand::Rng;

pub struct Instance {
    pub perf: PerformanceMatrix,
    pub criteria: Vec<CriterionSpec>,
}

pub fn random_kind(rng: &mut StdRng) -> PreferenceKind {
    PreferenceKind::ALL[rng.gen_range(0..PreferenceKind::ALL.len())]
}

/// Random matrix with `n` alternatives and `m` criteria, random directions,
/// weights summing to 1, random kinds and quantile-tuned thresholds.
pub fn random_instance(rng: &mut StdRng, n: usize, m: usize) -> Instance {
    let alternatives: Vec<String> = (0..n).map(|i| format!("a{i}")).collect();
    let ids: Vec<String> = (0..m).map(|k| format!("c{k}")).collect();
    let rows: Vec<Vec<f64>> = (0..n)
        .map(|_| {
            (0..m)
                .map(|_| {
                    // Some integer-valued columns so ties and zero differences occur.
                    if rng.gen_bool(0.3) {
                        f64::from(rng.gen_range(0..4))
                    } else {
                        rng.gen_range(-50.0..50.0)
                    }
                })
                .collect()
        })
        .collect();
    let perf = PerformanceMatrix::new(alternatives, ids.clone(), rows).unwrap();

    let raw: Vec<f64> = (0..m).map(|_| rng.gen_range(0.05..1.0)).collect();
    let total: f64 = raw.iter().sum();
    let mut weights: Vec<f64> = raw.iter().map(|w| w / total).collect();
    // Push the rounding residue into the last weight so the sum is 1 to 1e-15.
    let rest: f64 = weights[..m - 1].iter().sum();
    weights[m - 1] = 1.0 - rest;

    let criteria = ids
        .iter()
        .enumerate()
        .map(|(k, id)| {
            let alpha = rng.gen_range(0.0..50.0);
            let beta = rng.gen_range(alpha..100.0);
            let th = tune_thresholds(&perf.column(k), TuningConfig::new(alpha, beta).unwrap()).unwrap();
            let spec = CriterionSpec::new(id.clone(), weights[k], PreferenceFunction::new(random_kind(rng), th).unwrap());
            if rng.gen_bool(0.3) {
                spec.minimize()
            } else {
                spec
            }
        })
        .collect();
    Instance { perf, criteria }
}

/// Preference degree written out case by case.
pub fn reference_h(kind: PreferenceKind, t: Thresholds, d: f64) -> f64 {
    if d <= 0.0 {
        return 0.0;
    }
    let Thresholds { q, p, sigma } = t;
    match kind {
        PreferenceKind::Usual => 1.0,
        PreferenceKind::UShape => {
            if d <= q {
                0.0
            } else {
                1.0
            }
        }
        PreferenceKind::VShape => {
            if p == 0.0 || d > p {
                1.0
            } else {
                d / p
            }
        }
        PreferenceKind::Level => {
            if d <= q {
                0.0
            } else if d <= p && q < p {
                0.5
            } else {
                1.0
            }
        }
        PreferenceKind::VShapeIndifference => {
            if d <= q {
                0.0
            } else if d <= p && q < p {
                (d - q) / (p - q)
            } else {
                1.0
            }
        }
        PreferenceKind::Gaussian => 1.0 - (-(d * d) / (2.0 * sigma * sigma)).exp(),
    }
}

pub struct ReferenceFlows {
    pub pref: Vec<Vec<f64>>,
    pub plus: Vec<f64>,
    pub minus: Vec<f64>,
    pub net: Vec<f64>,
}

pub fn reference_flows(inst: &Instance) -> ReferenceFlows {
    let n = inst.perf.n_alternatives();
    let mut pref = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            for (k, c) in inst.criteria.iter().enumerate() {
                let mut d = inst.perf.value(i, k) - inst.perf.value(j, k);
                if c.direction == Direction::Minimize {
                    d = -d;
                }
                pref[i][j] += c.weight * reference_h(c.preference.kind, c.preference.thresholds, d);
            }
        }
    }
    let denom = (n - 1) as f64;
    let plus: Vec<f64> = (0..n).map(|i| pref[i].iter().sum::<f64>() / denom).collect();
    let minus: Vec<f64> = (0..n).map(|i| (0..n).map(|j| pref[j][i]).sum::<f64>() / denom).collect();
    let net = plus.iter().zip(&minus).map(|(a, b)| a - b).collect();
    ReferenceFlows { pref, plus, minus, net }
}

/// Random DAG on `n` nodes: edges only go from lower to higher position
/// in a random permutation.
pub fn random_dag_edges(rng: &mut StdRng, n: usize) -> Vec<(usize, usize)> {
    let mut perm: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        perm.swap(i, rng.gen_range(0..=i));
    }
    let density = rng.gen_range(0.1..0.9);
    let mut edges = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if rng.gen_bool(density) {
                edges.push((perm[a], perm[b]));
            }
        }
    }
    edges
}

pub fn reachable(n: usize, edges: &BTreeSet<(usize, usize)>, from: usize, to: usize) -> bool {
    let mut seen = vec![false; n];
    let mut stack = vec![from];
    while let Some(v) = stack.pop() {
        for &(a, b) in edges {
            if a == v && !seen[b] {
                if b == to {
                    return true;
                }
                seen[b] = true;
                stack.push(b);
            }
        }
    }
    false
}

/// Keeps an edge exactly when removing it breaks reachability between its
/// endpoints.
pub fn drop_edge_reduction(n: usize, edges: &[(usize, usize)]) -> BTreeSet<(usize, usize)> {
    let all: BTreeSet<(usize, usize)> = edges.iter().copied().collect();
    all.iter()
        .copied()
        .filter(|&e| {
            let mut without = all.clone();
            without.remove(&e);
            !reachable(n, &without, e.0, e.1)
        })
        .collect()
}

pub fn fixture(name: &str) -> std::path::PathBuf {
    std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}
