//! Partial preorder from leaving/entering flows, the outranking digraph and
//! its covering edges, and DOT export.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::flows::FlowResult;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Preferred,
    /// The column alternative is preferred to the row alternative.
    Dominated,
    Indifferent,
    Incomparable,
    SelfPair,
}

/// Pairwise verdicts plus the covering edges of the `Preferred` relation.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OutrankingRelation {
    pub alternatives: Vec<String>,
    verdicts: Vec<Verdict>,
    pub edges: Vec<(usize, usize)>,
}

impl OutrankingRelation {
    pub fn len(&self) -> usize {
        self.alternatives.len()
    }

    pub fn is_empty(&self) -> bool {
        self.alternatives.is_empty()
    }

    pub fn verdict(&self, i: usize, j: usize) -> Verdict {
        self.verdicts[i * self.len() + j]
    }

    pub fn is_preferred(&self, i: usize, j: usize) -> bool {
        self.verdict(i, j) == Verdict::Preferred
    }

    /// Unordered indifferent pairs `(i, j)` with `i < j`.
    pub fn indifferent_pairs(&self) -> Vec<(usize, usize)> {
        self.unordered_pairs(Verdict::Indifferent)
    }

    pub fn incomparable_pairs(&self) -> Vec<(usize, usize)> {
        self.unordered_pairs(Verdict::Incomparable)
    }

    fn unordered_pairs(&self, v: Verdict) -> Vec<(usize, usize)> {
        let n = self.len();
        (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .filter(|&(i, j)| self.verdict(i, j) == v)
            .collect()
    }

    pub fn edge_ids(&self) -> Vec<(&str, &str)> {
        self.edges
            .iter()
            .map(|&(a, b)| (self.alternatives[a].as_str(), self.alternatives[b].as_str()))
            .collect()
    }
}

/// Pairwise verdicts from flows. `Preferred(i, j)` iff `phi+_i >= phi+_j`,
/// `phi-_i <= phi-_j`, and at least one is strict. Comparisons are exact on
/// the computed floats.
pub fn promethee_i_relation(flows: &FlowResult) -> OutrankingRelation {
    let n = flows.len();
    let mut verdicts = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            verdicts.push(pair_verdict(flows, i, j));
        }
    }
    OutrankingRelation {
        alternatives: flows.alternatives.clone(),
        verdicts,
        edges: Vec::new(),
    }
}

fn pair_verdict(f: &FlowResult, i: usize, j: usize) -> Verdict {
    if i == j {
        return Verdict::SelfPair;
    }
    let (pi, pj) = (f.phi_plus[i], f.phi_plus[j]);
    let (mi, mj) = (f.phi_minus[i], f.phi_minus[j]);
    if pi == pj && mi == mj {
        Verdict::Indifferent
    } else if pi >= pj && mi <= mj {
        Verdict::Preferred
    } else if pj >= pi && mj <= mi {
        Verdict::Dominated
    } else {
        Verdict::Incomparable
    }
}

/// Adjacency-list digraph over `0..n`.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct Dag {
    n: usize,
    succ: Vec<BTreeSet<usize>>,
}

impl Dag {
    pub fn new(n: usize) -> Self {
        Dag {
            n,
            succ: vec![BTreeSet::new(); n],
        }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Dag::new(n);
        for &(a, b) in edges {
            if a >= n || b >= n {
                return Err(Error::invalid(format!("edge ({a}, {b}) out of range for {n} nodes")));
            }
            g.succ[a].insert(b);
        }
        Ok(g)
    }

    pub fn node_count(&self) -> usize {
        self.n
    }

    pub fn successors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.succ[v].iter().copied()
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.n)
            .flat_map(|a| self.succ[a].iter().map(move |&b| (a, b)))
            .collect()
    }

    pub fn edge_count(&self) -> usize {
        self.succ.iter().map(BTreeSet::len).sum()
    }

    /// Kahn's algorithm; errors with a node on a cycle.
    pub fn topological_order(&self) -> Result<Vec<usize>> {
        let mut indeg = vec![0usize; self.n];
        for s in &self.succ {
            for &b in s {
                indeg[b] += 1;
            }
        }
        let mut stack: Vec<usize> = (0..self.n).rev().filter(|&v| indeg[v] == 0).collect();
        let mut order = Vec::with_capacity(self.n);
        while let Some(v) = stack.pop() {
            order.push(v);
            for &w in self.succ[v].iter().rev() {
                indeg[w] -= 1;
                if indeg[w] == 0 {
                    stack.push(w);
                }
            }
        }
        if order.len() == self.n {
            Ok(order)
        } else {
            let v = (0..self.n).find(|&v| indeg[v] > 0).unwrap_or(0);
            Err(Error::Cycle(v.to_string()))
        }
    }

    /// Length of the longest path from any source to each node.
    pub fn depths(&self) -> Result<Vec<usize>> {
        let order = self.topological_order()?;
        let mut depth = vec![0usize; self.n];
        for v in order {
            for &w in &self.succ[v] {
                depth[w] = depth[w].max(depth[v] + 1);
            }
        }
        Ok(depth)
    }
}

/// One edge per `Preferred` pair. The relation is a strict partial order on
/// flow pairs so the result is acyclic; a cycle here is a bug.
pub fn build_digraph(relation: &OutrankingRelation) -> Dag {
    let n = relation.len();
    let mut g = Dag::new(n);
    for i in 0..n {
        for j in 0..n {
            if relation.is_preferred(i, j) {
                g.succ[i].insert(j);
            }
        }
    }
    assert!(
        g.topological_order().is_ok(),
        "PROMETHEE I preference relation produced a cycle"
    );
    g
}

/// Minimal edge subset with the same reachability.
///
/// An edge `u -> v` is kept iff `v` is not reachable from any other direct
/// successor of `u`. Reachability sets are built in reverse topological
/// order.
pub fn transitive_reduction(dag: &Dag) -> Result<Dag> {
    let order = dag.topological_order()?;
    let n = dag.n;
    let words = n.div_ceil(64).max(1);
    // reach[v]: nodes reachable from v by a path of length >= 1.
    let mut reach = vec![vec![0u64; words]; n];
    for &v in order.iter().rev() {
        let mut acc = vec![0u64; words];
        for &w in &dag.succ[v] {
            acc[w / 64] |= 1 << (w % 64);
            for (a, r) in acc.iter_mut().zip(&reach[w]) {
                *a |= r;
            }
        }
        reach[v] = acc;
    }
    let mut out = Dag::new(n);
    for u in 0..n {
        for &v in &dag.succ[u] {
            let implied = dag.succ[u]
                .iter()
                .any(|&w| w != v && reach[w][v / 64] & (1 << (v % 64)) != 0);
            if !implied {
                out.succ[u].insert(v);
            }
        }
    }
    Ok(out)
}

/// Verdicts plus covering edges in one step.
pub fn outranking(flows: &FlowResult) -> OutrankingRelation {
    let mut rel = promethee_i_relation(flows);
    let reduced = transitive_reduction(&build_digraph(&rel)).expect("preference digraph is acyclic");
    rel.edges = reduced.edges();
    rel
}

#[derive(Debug, Clone, Copy, Default)]
pub struct DotOptions {
    /// Keep only nodes whose longest-path depth from a source is below this.
    pub top: Option<usize>,
    /// Print flows with 4 decimals (the default), or full precision.
    pub full_precision: bool,
}

/// Graphviz rendering: covering edges solid and directed, indifferent
/// pairs dashed and undirected.
pub fn to_dot(relation: &OutrankingRelation, flows: &FlowResult, opts: DotOptions) -> String {
    let n = relation.len();
    let covering = Dag::from_edges(n, &relation.edges).expect("edges in range");
    let depth = covering.depths().expect("covering graph is acyclic");
    let keep: Vec<bool> = (0..n).map(|v| opts.top.is_none_or(|t| depth[v] < t)).collect();

    let mut s = String::from("digraph outranking {\n  rankdir=TB;\n  node [shape=box];\n");
    for v in (0..n).filter(|&v| keep[v]) {
        let phi = flows.phi_net[v];
        let phi = if opts.full_precision {
            format!("{phi}")
        } else {
            format!("{phi:.4}")
        };
        let _ = writeln!(
            s,
            "  \"{}\" [label=\"{}\\nphi = {}\"];",
            escape(&relation.alternatives[v]),
            escape(&relation.alternatives[v]),
            phi
        );
    }
    for &(a, b) in &relation.edges {
        if keep[a] && keep[b] {
            let _ = writeln!(
                s,
                "  \"{}\" -> \"{}\";",
                escape(&relation.alternatives[a]),
                escape(&relation.alternatives[b])
            );
        }
    }
    for (a, b) in relation.indifferent_pairs() {
        if keep[a] && keep[b] {
            let _ = writeln!(
                s,
                "  \"{}\" -> \"{}\" [dir=none, style=dashed];",
                escape(&relation.alternatives[a]),
                escape(&relation.alternatives[b])
            );
        }
    }
    s.push_str("}\n");
    s
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}
