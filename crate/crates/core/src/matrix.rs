use std::collections::HashSet;
use std::ops::Index;

use serde::Serialize;

use crate::error::{Error, Result};

/// Alternatives × criteria evaluation table.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PerformanceMatrix {
    alternatives: Vec<String>,
    criteria: Vec<String>,
    /// Row-major, `alternatives.len() * criteria.len()` entries.
    values: Vec<f64>,
}

impl PerformanceMatrix {
    pub fn new(alternatives: Vec<String>, criteria: Vec<String>, rows: Vec<Vec<f64>>) -> Result<Self> {
        ensure_unique("alternative", &alternatives)?;
        ensure_unique("criterion", &criteria)?;
        if rows.len() != alternatives.len() {
            return Err(Error::invalid(format!(
                "{} rows for {} alternatives",
                rows.len(),
                alternatives.len()
            )));
        }
        let m = criteria.len();
        let mut values = Vec::with_capacity(rows.len() * m);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != m {
                return Err(Error::invalid(format!(
                    "row `{}` has {} values, expected {m}",
                    alternatives[i],
                    row.len()
                )));
            }
            if let Some(k) = row.iter().position(|v| !v.is_finite()) {
                return Err(Error::invalid(format!(
                    "non-finite value for `{}` on `{}`",
                    alternatives[i], criteria[k]
                )));
            }
            values.extend(row);
        }
        Ok(PerformanceMatrix {
            alternatives,
            criteria,
            values,
        })
    }

    pub fn alternatives(&self) -> &[String] {
        &self.alternatives
    }

    pub fn criteria(&self) -> &[String] {
        &self.criteria
    }

    pub fn n_alternatives(&self) -> usize {
        self.alternatives.len()
    }

    pub fn n_criteria(&self) -> usize {
        self.criteria.len()
    }

    pub fn value(&self, i: usize, k: usize) -> f64 {
        self.values[i * self.criteria.len() + k]
    }

    pub fn criterion_index(&self, id: &str) -> Result<usize> {
        self.criteria
            .iter()
            .position(|c| c == id)
            .ok_or_else(|| Error::NotFound {
                kind: "criterion",
                id: id.to_string(),
            })
    }

    pub fn column(&self, k: usize) -> Vec<f64> {
        (0..self.n_alternatives()).map(|i| self.value(i, k)).collect()
    }

    pub fn row(&self, i: usize) -> &[f64] {
        let m = self.criteria.len();
        &self.values[i * m..(i + 1) * m]
    }
}

fn ensure_unique(kind: &str, ids: &[String]) -> Result<()> {
    let mut seen = HashSet::with_capacity(ids.len());
    for id in ids {
        if !seen.insert(id.as_str()) {
            return Err(Error::invalid(format!("duplicate {kind} id `{id}`")));
        }
    }
    Ok(())
}

/// Dense n×n table of reals, row-major.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SquareMatrix {
    n: usize,
    data: Vec<f64>,
}

impl SquareMatrix {
    pub fn zeros(n: usize) -> Self {
        SquareMatrix {
            n,
            data: vec![0.0; n * n],
        }
    }

    pub fn from_rows(rows: Vec<Vec<f64>>) -> Result<Self> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(Error::invalid("table is not square"));
            }
            data.extend(row);
        }
        Ok(SquareMatrix { n, data })
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.n + j] = v;
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn to_rows(&self) -> Vec<Vec<f64>> {
        self.data.chunks(self.n.max(1)).map(<[f64]>::to_vec).collect()
    }
}

impl Index<(usize, usize)> for SquareMatrix {
    type Output = f64;

    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.data[i * self.n + j]
    }
}
