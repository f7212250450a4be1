//! Pairwise preference indices, leaving/entering/net flows and the
//! net-flow total order.

use std::cmp::Ordering;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::{PerformanceMatrix, SquareMatrix};
use crate::preference::PreferenceFunction;

const WEIGHT_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    #[default]
    Maximize,
    Minimize,
}

impl std::str::FromStr for Direction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "max" | "maximize" => Ok(Direction::Maximize),
            "min" | "minimize" => Ok(Direction::Minimize),
            _ => Err(Error::invalid(format!("unknown direction `{s}`"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CriterionSpec {
    pub id: String,
    pub direction: Direction,
    pub weight: f64,
    pub preference: PreferenceFunction,
}

impl CriterionSpec {
    pub fn new(id: impl Into<String>, weight: f64, preference: PreferenceFunction) -> Self {
        CriterionSpec {
            id: id.into(),
            direction: Direction::Maximize,
            weight,
            preference,
        }
    }

    pub fn minimize(mut self) -> Self {
        self.direction = Direction::Minimize;
        self
    }
}

/// Rescales weights in place so they sum to one.
///
/// Returns a warning message when the input sum was off by more than 1e-9.
pub fn normalize_weights(criteria: &mut [CriterionSpec]) -> Result<Option<String>> {
    if let Some(c) = criteria.iter().find(|c| !(c.weight.is_finite() && c.weight >= 0.0)) {
        return Err(Error::Config(format!(
            "weight for `{}` must be a nonnegative number, got {}",
            c.id, c.weight
        )));
    }
    let total: f64 = criteria.iter().map(|c| c.weight).sum();
    if total <= 0.0 {
        return Err(Error::Config("weights sum to zero".into()));
    }
    if (total - 1.0).abs() <= WEIGHT_TOLERANCE {
        return Ok(None);
    }
    for c in criteria.iter_mut() {
        c.weight /= total;
    }
    Ok(Some(format!("weights summed to {total}; rescaled to 1")))
}

/// Direction-adjusted pairwise differences for one criterion:
/// entry `(i, j)` is how much better `i` is than `j`.
pub fn difference_matrix(perf: &PerformanceMatrix, criterion: &str, direction: Direction) -> Result<SquareMatrix> {
    let k = perf.criterion_index(criterion)?;
    Ok(difference_matrix_at(perf, k, direction))
}

fn difference_matrix_at(perf: &PerformanceMatrix, k: usize, direction: Direction) -> SquareMatrix {
    let n = perf.n_alternatives();
    let mut d = SquareMatrix::zeros(n);
    for i in 0..n {
        for j in 0..n {
            if i != j {
                d.set(i, j, signed_difference(perf.value(i, k), perf.value(j, k), direction));
            }
        }
    }
    d
}

#[inline]
fn signed_difference(a: f64, b: f64, direction: Direction) -> f64 {
    match direction {
        Direction::Maximize => a - b,
        Direction::Minimize => b - a,
    }
}

/// Weighted aggregated preference `p_ij = sum_k w_k H_k(d_ij^k)`.
///
/// Rows are evaluated in parallel; each entry sums criteria in the order
/// given, so the result does not depend on the thread schedule.
pub fn preference_index_matrix(perf: &PerformanceMatrix, criteria: &[CriterionSpec]) -> Result<SquareMatrix> {
    let columns = resolve_columns(perf, criteria)?;
    let n = perf.n_alternatives();
    let rows: Vec<Vec<f64>> = (0..n)
        .into_par_iter()
        .map(|i| preference_row(perf, criteria, &columns, i))
        .collect();
    SquareMatrix::from_rows(rows)
}

/// Single-threaded twin of [`preference_index_matrix`].
pub fn preference_index_matrix_sequential(
    perf: &PerformanceMatrix,
    criteria: &[CriterionSpec],
) -> Result<SquareMatrix> {
    let columns = resolve_columns(perf, criteria)?;
    let rows = (0..perf.n_alternatives())
        .map(|i| preference_row(perf, criteria, &columns, i))
        .collect();
    SquareMatrix::from_rows(rows)
}

fn resolve_columns(perf: &PerformanceMatrix, criteria: &[CriterionSpec]) -> Result<Vec<usize>> {
    if criteria.is_empty() {
        return Err(Error::Config("no criteria given".into()));
    }
    let total: f64 = criteria.iter().map(|c| c.weight).sum();
    if criteria.iter().any(|c| c.weight.is_nan() || c.weight < 0.0) || (total - 1.0).abs() > WEIGHT_TOLERANCE {
        return Err(Error::Config(format!(
            "weights must be nonnegative and sum to 1 (got {total})"
        )));
    }
    criteria
        .iter()
        .map(|c| {
            c.preference.thresholds.validate()?;
            perf.criterion_index(&c.id)
        })
        .collect()
}

fn preference_row(perf: &PerformanceMatrix, criteria: &[CriterionSpec], columns: &[usize], i: usize) -> Vec<f64> {
    let n = perf.n_alternatives();
    let mut row = vec![0.0; n];
    for (j, cell) in row.iter_mut().enumerate() {
        if i == j {
            continue;
        }
        let mut acc = 0.0;
        for (c, &k) in criteria.iter().zip(columns) {
            let d = signed_difference(perf.value(i, k), perf.value(j, k), c.direction);
            acc += c.weight * c.preference.degree_unchecked(d);
        }
        // Rounding in the weighted sum may land a hair outside [0, 1].
        *cell = acc.clamp(0.0, 1.0);
    }
    row
}

/// Leaving, entering and net flow for every alternative, in input order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FlowResult {
    pub alternatives: Vec<String>,
    pub phi_plus: Vec<f64>,
    pub phi_minus: Vec<f64>,
    pub phi_net: Vec<f64>,
}

impl FlowResult {
    /// Builds a result from leaving/entering flows; the net flow is derived.
    pub fn from_parts(alternatives: Vec<String>, phi_plus: Vec<f64>, phi_minus: Vec<f64>) -> Result<Self> {
        let n = alternatives.len();
        if phi_plus.len() != n || phi_minus.len() != n {
            return Err(Error::invalid("flow vectors must match the alternative count"));
        }
        if phi_plus.iter().chain(&phi_minus).any(|v| !v.is_finite()) {
            return Err(Error::invalid("non-finite flow"));
        }
        let phi_net = phi_plus.iter().zip(&phi_minus).map(|(p, m)| p - m).collect();
        Ok(FlowResult {
            alternatives,
            phi_plus,
            phi_minus,
            phi_net,
        })
    }

    pub fn len(&self) -> usize {
        self.alternatives.len()
    }

    pub fn is_empty(&self) -> bool {
        self.alternatives.is_empty()
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.alternatives.iter().position(|a| a == id)
    }
}

/// PROMETHEE flows from an n×n preference-index table, `n >= 2`.
pub fn flows(alternatives: &[String], pref: &SquareMatrix) -> Result<FlowResult> {
    let n = pref.size();
    if n < 2 {
        return Err(Error::invalid(format!("flows need at least 2 alternatives, got {n}")));
    }
    if alternatives.len() != n {
        return Err(Error::invalid(format!(
            "{} alternative ids for a {n}x{n} table",
            alternatives.len()
        )));
    }
    for i in 0..n {
        if pref[(i, i)] != 0.0 {
            return Err(Error::invalid(format!("nonzero diagonal at {i}")));
        }
        if let Some(v) = pref.row(i).iter().find(|v| !(0.0..=1.0).contains(*v)) {
            return Err(Error::invalid(format!("preference index {v} outside [0, 1]")));
        }
    }
    let denom = (n - 1) as f64;
    let mut plus = Vec::with_capacity(n);
    let mut minus = Vec::with_capacity(n);
    for i in 0..n {
        let mut out = 0.0;
        let mut inc = 0.0;
        for j in 0..n {
            out += pref[(i, j)];
            inc += pref[(j, i)];
        }
        plus.push(out / denom);
        minus.push(inc / denom);
    }
    FlowResult::from_parts(alternatives.to_vec(), plus, minus)
}

/// Preference indices and flows in one call.
pub fn evaluate(perf: &PerformanceMatrix, criteria: &[CriterionSpec]) -> Result<(SquareMatrix, FlowResult)> {
    let pref = preference_index_matrix(perf, criteria)?;
    let result = flows(perf.alternatives(), &pref)?;
    Ok((pref, result))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RankedAlternative {
    pub id: String,
    pub phi: f64,
    /// 1-based position; tied alternatives share the rank of the first of them.
    pub rank: usize,
    pub tied: bool,
}

/// Total order by net flow, descending. Exact ties are ordered by id and
/// flagged.
pub fn promethee_ii_ranking(flows: &FlowResult) -> Vec<RankedAlternative> {
    let mut order: Vec<usize> = (0..flows.len()).collect();
    order.sort_by(|&a, &b| {
        flows.phi_net[b]
            .partial_cmp(&flows.phi_net[a])
            .unwrap_or(Ordering::Equal)
            .then_with(|| flows.alternatives[a].cmp(&flows.alternatives[b]))
    });
    let mut ranked: Vec<RankedAlternative> = Vec::with_capacity(order.len());
    for (pos, &i) in order.iter().enumerate() {
        let phi = flows.phi_net[i];
        let rank = match ranked.last() {
            Some(prev) if prev.phi == phi => prev.rank,
            _ => pos + 1,
        };
        ranked.push(RankedAlternative {
            id: flows.alternatives[i].clone(),
            phi,
            rank,
            tied: false,
        });
    }
    for pos in 0..ranked.len() {
        let tied = (pos > 0 && ranked[pos - 1].phi == ranked[pos].phi)
            || (pos + 1 < ranked.len() && ranked[pos + 1].phi == ranked[pos].phi);
        ranked[pos].tied = tied;
    }
    ranked
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::preference::{PreferenceKind, Thresholds};

    fn ids(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    fn single(values: &[f64]) -> PerformanceMatrix {
        let alts: Vec<String> = (0..values.len()).map(|i| format!("a{i}")).collect();
        PerformanceMatrix::new(alts, ids(&["c"]), values.iter().map(|&v| vec![v]).collect()).unwrap()
    }

    #[test]
    fn differences_follow_direction() {
        let m = single(&[3.0, 1.0]);
        let max = difference_matrix(&m, "c", Direction::Maximize).unwrap();
        assert_eq!(max.to_rows(), vec![vec![0.0, 2.0], vec![-2.0, 0.0]]);
        let min = difference_matrix(&m, "c", Direction::Minimize).unwrap();
        assert_eq!(min.to_rows(), vec![vec![0.0, -2.0], vec![2.0, 0.0]]);
        let flat = difference_matrix(&single(&[5.0, 5.0, 5.0]), "c", Direction::Maximize).unwrap();
        assert!(flat.to_rows().iter().flatten().all(|&v| v == 0.0));
        assert!(matches!(
            difference_matrix(&m, "nope", Direction::Maximize),
            Err(Error::NotFound { .. })
        ));
    }

    #[test]
    fn preference_index_examples() {
        let usual = PreferenceFunction::usual();
        let twins = PerformanceMatrix::new(ids(&["a", "b"]), ids(&["c"]), vec![vec![2.0], vec![2.0]]).unwrap();
        let p = preference_index_matrix(&twins, &[CriterionSpec::new("c", 1.0, usual)]).unwrap();
        assert_eq!(p.to_rows(), vec![vec![0.0, 0.0], vec![0.0, 0.0]]);

        let p = preference_index_matrix(&single(&[3.0, 1.0]), &[CriterionSpec::new("c", 1.0, usual)]).unwrap();
        assert_eq!((p[(0, 1)], p[(1, 0)]), (1.0, 0.0));

        let m = PerformanceMatrix::new(ids(&["a", "b"]), ids(&["x", "y"]), vec![vec![2.0, 0.0], vec![1.0, 5.0]])
            .unwrap();
        let crit = [CriterionSpec::new("x", 0.5, usual), CriterionSpec::new("y", 0.5, usual)];
        let p = preference_index_matrix(&m, &crit).unwrap();
        assert_eq!((p[(0, 1)], p[(1, 0)]), (0.5, 0.5));
    }

    #[test]
    fn preference_index_errors() {
        let usual = PreferenceFunction::usual();
        let m = single(&[1.0, 2.0]);
        assert!(matches!(
            preference_index_matrix(&m, &[CriterionSpec::new("c", 0.7, usual)]),
            Err(Error::Config(_))
        ));
        assert!(matches!(
            preference_index_matrix(&m, &[CriterionSpec::new("z", 1.0, usual)]),
            Err(Error::NotFound { .. })
        ));
    }

    #[test]
    fn minimize_flips_preference() {
        let v = PreferenceFunction::new(PreferenceKind::VShape, Thresholds::linear(0.0, 4.0).unwrap()).unwrap();
        let m = single(&[3.0, 1.0]);
        let p = preference_index_matrix(&m, &[CriterionSpec::new("c", 1.0, v).minimize()]).unwrap();
        assert_eq!((p[(0, 1)], p[(1, 0)]), (0.0, 0.5));
    }

    #[test]
    fn parallel_matches_sequential_bitwise() {
        let rows: Vec<Vec<f64>> = (0..40)
            .map(|i| vec![(i as f64 * 0.37).sin(), (i as f64 * 1.3).cos(), (i * i % 17) as f64 / 3.0])
            .collect();
        let alts = (0..40).map(|i| format!("p{i}")).collect();
        let m = PerformanceMatrix::new(alts, ids(&["x", "y", "z"]), rows).unwrap();
        let g = PreferenceFunction::new(PreferenceKind::Gaussian, Thresholds::new(0.0, 0.0, 0.3).unwrap()).unwrap();
        let l = PreferenceFunction::new(PreferenceKind::VShapeIndifference, Thresholds::linear(0.1, 0.9).unwrap())
            .unwrap();
        let crit = [
            CriterionSpec::new("x", 0.2, g),
            CriterionSpec::new("y", 0.3, l),
            CriterionSpec::new("z", 0.5, l).minimize(),
        ];
        let a = preference_index_matrix(&m, &crit).unwrap();
        let b = preference_index_matrix_sequential(&m, &crit).unwrap();
        for (x, y) in a.to_rows().iter().flatten().zip(b.to_rows().iter().flatten()) {
            assert_eq!(x.to_bits(), y.to_bits());
        }
    }

    #[test]
    fn flow_examples() {
        let pref = SquareMatrix::from_rows(vec![vec![0.0, 1.0], vec![0.0, 0.0]]).unwrap();
        let f = flows(&ids(&["a", "b"]), &pref).unwrap();
        assert_eq!(f.phi_plus, vec![1.0, 0.0]);
        assert_eq!(f.phi_minus, vec![0.0, 1.0]);
        assert_eq!(f.phi_net, vec![1.0, -1.0]);

        let f = flows(&ids(&["a", "b", "c"]), &SquareMatrix::zeros(3)).unwrap();
        assert!(f.phi_net.iter().chain(&f.phi_plus).all(|&v| v == 0.0));
    }

    #[test]
    fn flows_need_two_alternatives() {
        assert!(matches!(flows(&ids(&["a"]), &SquareMatrix::zeros(1)), Err(Error::InvalidInput(_))));
        let bad = SquareMatrix::from_rows(vec![vec![0.0, 1.5], vec![0.0, 0.0]]).unwrap();
        assert!(flows(&ids(&["a", "b"]), &bad).is_err());
    }

    #[test]
    fn normalization_warns_and_rescales() {
        let usual = PreferenceFunction::usual();
        let mut crit = vec![CriterionSpec::new("x", 0.48, usual), CriterionSpec::new("y", 0.48, usual)];
        let warning = normalize_weights(&mut crit).unwrap();
        assert!(warning.is_some());
        assert!((crit[0].weight - 0.5).abs() < 1e-15);
        assert!(normalize_weights(&mut crit).unwrap().is_none());
        crit[0].weight = -1.0;
        assert!(normalize_weights(&mut crit).is_err());
    }

    #[test]
    fn ranking_orders_and_flags_ties() {
        let f = FlowResult::from_parts(ids(&["a", "b"]), vec![1.0, 0.0], vec![0.0, 1.0]).unwrap();
        let r = promethee_ii_ranking(&f);
        assert_eq!(r.iter().map(|x| x.id.as_str()).collect::<Vec<_>>(), ["a", "b"]);
        assert!(!r[0].tied && !r[1].tied);

        let f = FlowResult::from_parts(ids(&["b", "a", "c"]), vec![0.5, 0.5, 0.0], vec![0.2, 0.2, 0.6]).unwrap();
        let r = promethee_ii_ranking(&f);
        assert_eq!(r.iter().map(|x| x.id.as_str()).collect::<Vec<_>>(), ["a", "b", "c"]);
        assert!(r[0].tied && r[1].tied && !r[2].tied);
        assert_eq!((r[0].rank, r[1].rank, r[2].rank), (1, 1, 3));
    }
}
