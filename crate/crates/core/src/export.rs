//! Deterministic JSON and table rendering.

use std::fmt::Write as _;
use std::str::FromStr;

use serde::Serialize;
use serde_json::Value;

use crate::error::{Error, Result};
use crate::pipeline::RankResponse;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum FloatFormat {
    /// Six significant digits.
    #[default]
    Sig6,
    /// Shortest decimal that round-trips the f64.
    Full,
}

impl FromStr for FloatFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "6" | "sig6" | "export" => Ok(FloatFormat::Sig6),
            "full" => Ok(FloatFormat::Full),
            _ => Err(Error::invalid(format!("unknown precision `{s}` (expected sig6 or full)"))),
        }
    }
}

pub fn round_sig(v: f64, digits: usize) -> f64 {
    if v == 0.0 || !v.is_finite() {
        return v;
    }
    // `{:e}` rounds to nearest with exactly `digits` significant digits.
    format!("{:.*e}", digits.saturating_sub(1), v).parse().unwrap_or(v)
}

fn round_value(v: &mut Value) {
    match v {
        Value::Number(n) if !(n.is_i64() || n.is_u64()) => {
            if let Some(r) = n.as_f64().map(|f| round_sig(f, 6)).and_then(serde_json::Number::from_f64) {
                *n = r;
            }
        }
        Value::Array(items) => items.iter_mut().for_each(round_value),
        Value::Object(map) => map.values_mut().for_each(round_value),
        _ => {}
    }
}

/// Pretty JSON with sorted keys and a trailing newline.
pub fn to_json<T: Serialize>(value: &T, format: FloatFormat) -> Result<String> {
    let mut v = serde_json::to_value(value).map_err(|e| Error::invalid(e.to_string()))?;
    if format == FloatFormat::Sig6 {
        round_value(&mut v);
    }
    let mut s = serde_json::to_string_pretty(&v).map_err(|e| Error::invalid(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

/// Flow table in the layout of published results: one player per line,
/// net/leaving/entering flows with 4 decimals, best first.
pub fn flows_table(resp: &RankResponse) -> String {
    let width = resp.total_order.iter().map(|r| r.id.chars().count()).max().unwrap_or(7).max(7);
    let mut s = String::new();
    let _ = writeln!(s, "{:<width$}  {:>7}  {:>7}  {:>7}", "Players", "Phi", "Phi+", "Phi-");
    for r in &resp.total_order {
        let f = resp.flows.iter().find(|f| f.id == r.id).expect("ranked player has flows");
        let _ = writeln!(
            s,
            "{:<width$}  {:>7.4}  {:>7.4}  {:>7.4}{}",
            r.id,
            f.phi,
            f.phi_plus,
            f.phi_minus,
            if r.tied { "  (tie)" } else { "" }
        );
    }
    s
}

/// Threshold table with 3 decimals.
pub fn thresholds_table(rows: &[crate::pipeline::CriterionThresholds]) -> String {
    let mut s = String::from("criterion         q         p\n");
    for r in rows {
        let _ = writeln!(s, "{:<8}  {:>8.3}  {:>8.3}", r.criterion, r.q, r.p);
    }
    s
}
