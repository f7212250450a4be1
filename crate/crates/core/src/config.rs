//! Flat `key = value` configuration file.
//!
//! ```text
//! # defaults for `outrank rank`
//! profile = PG
//! scenario = 2            # 1 = equal weights, 2 = correlation boosted
//! alpha = 25
//! beta = 75
//! function_kind = v_shape_indifference
//! residual = normalized   # or literal (0.04 per non-boosted criterion)
//! basis = per_game        # or totals
//! weight.EPts = 0.4       # any weight.* key switches to explicit weights
//! direction.DRM = max
//! ```

use std::collections::BTreeMap;
use std::path::Path;

use crate::basketball::{Criterion, ResidualRule, Scenario, StatBasis};
use crate::error::{Error, Result};
use crate::flows::Direction;
use crate::pipeline::RankRequest;
use crate::preference::PreferenceKind;

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Config {
    pub profile: Option<String>,
    pub scenario: Option<Scenario>,
    pub alpha: Option<f64>,
    pub beta: Option<f64>,
    pub function_kind: Option<PreferenceKind>,
    pub residual: Option<ResidualRule>,
    pub basis: Option<StatBasis>,
    pub weights: BTreeMap<String, f64>,
    pub directions: BTreeMap<String, Direction>,
}

impl Config {
    pub fn parse(text: &str) -> Result<Self> {
        let mut cfg = Config::default();
        for (no, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |msg: String| Error::Config(format!("line {}: {msg}", no + 1));
            let (key, value) = line
                .split_once('=')
                .map(|(k, v)| (k.trim(), v.trim()))
                .ok_or_else(|| err(format!("expected `key = value`, got `{line}`")))?;
            let num = || value.parse::<f64>().map_err(|_| err(format!("`{value}` is not a number")));
            let wrap = |e: Error| err(e.to_string());
            match key {
                "profile" => cfg.profile = Some(value.to_string()),
                "scenario" => cfg.scenario = Some(value.parse().map_err(wrap)?),
                "alpha" => cfg.alpha = Some(num()?),
                "beta" => cfg.beta = Some(num()?),
                "function_kind" => cfg.function_kind = Some(value.parse().map_err(wrap)?),
                "residual" => cfg.residual = Some(value.parse().map_err(wrap)?),
                "basis" => cfg.basis = Some(value.parse().map_err(wrap)?),
                _ => {
                    if let Some(c) = key.strip_prefix("weight.") {
                        let c: Criterion = c.parse().map_err(wrap)?;
                        cfg.weights.insert(c.id().to_string(), num()?);
                    } else if let Some(c) = key.strip_prefix("direction.") {
                        let c: Criterion = c.parse().map_err(wrap)?;
                        cfg.directions.insert(c.id().to_string(), value.parse().map_err(wrap)?);
                    } else {
                        return Err(err(format!("unknown key `{key}`")));
                    }
                }
            }
        }
        Ok(cfg)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let text = std::fs::read_to_string(path.as_ref())
            .map_err(|e| Error::Io(format!("{}: {e}", path.as_ref().display())))?;
        Self::parse(&text)
    }

    /// Writes configured values into `req`; unset keys leave it untouched.
    pub fn apply(&self, req: &mut RankRequest) {
        if let Some(p) = &self.profile {
            req.profile = p.clone();
        }
        if let Some(s) = self.scenario {
            req.scenario = s;
        }
        if let Some(a) = self.alpha {
            req.alpha = a;
        }
        if let Some(b) = self.beta {
            req.beta = b;
        }
        if let Some(k) = self.function_kind {
            req.function_kind = k;
        }
        if let Some(r) = self.residual {
            req.residual = r;
        }
        if let Some(b) = self.basis {
            req.basis = b;
        }
        if !self.weights.is_empty() {
            req.weights = Some(self.weights.clone());
        }
        req.directions.extend(self.directions.clone());
    }
}
