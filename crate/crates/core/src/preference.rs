//! Generalized criteria: the six classical shapes that turn a pairwise
//! difference into a preference degree in `[0, 1]`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Indifference (`q`), preference (`p`) and Gaussian inflection (`sigma`)
/// thresholds for one criterion.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Thresholds {
    pub q: f64,
    pub p: f64,
    pub sigma: f64,
}

impl Thresholds {
    pub fn new(q: f64, p: f64, sigma: f64) -> Result<Self> {
        let t = Thresholds { q, p, sigma };
        t.validate()?;
        Ok(t)
    }

    /// Thresholds for the ramp-style functions; `sigma` is set to 1 and ignored.
    pub fn linear(q: f64, p: f64) -> Result<Self> {
        Self::new(q, p, 1.0)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.q.is_finite() && self.p.is_finite() && self.sigma.is_finite()) {
            return Err(Error::invalid(format!("non-finite thresholds {self:?}")));
        }
        if self.q < 0.0 || self.p < 0.0 {
            return Err(Error::invalid(format!(
                "thresholds must be nonnegative (q = {}, p = {})",
                self.q, self.p
            )));
        }
        if self.q > self.p {
            return Err(Error::invalid(format!(
                "indifference threshold q = {} exceeds preference threshold p = {}",
                self.q, self.p
            )));
        }
        if self.sigma <= 0.0 {
            return Err(Error::invalid(format!(
                "sigma must be positive, got {}",
                self.sigma
            )));
        }
        Ok(())
    }
}

impl Default for Thresholds {
    fn default() -> Self {
        Thresholds {
            q: 0.0,
            p: 0.0,
            sigma: 1.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PreferenceKind {
    /// Type I: any strictly positive difference is full preference.
    Usual,
    /// Type II: step at `q`.
    UShape,
    /// Type III: linear ramp on `(0, p]`.
    VShape,
    /// Type IV: 0 up to `q`, 1/2 up to `p`, 1 beyond.
    Level,
    /// Type V: 0 up to `q`, linear on `(q, p]`, 1 beyond.
    VShapeIndifference,
    /// Type VI: `1 - exp(-d^2 / (2 sigma^2))`.
    Gaussian,
}

impl PreferenceKind {
    pub const ALL: [PreferenceKind; 6] = [
        PreferenceKind::Usual,
        PreferenceKind::UShape,
        PreferenceKind::VShape,
        PreferenceKind::Level,
        PreferenceKind::VShapeIndifference,
        PreferenceKind::Gaussian,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            PreferenceKind::Usual => "usual",
            PreferenceKind::UShape => "u_shape",
            PreferenceKind::VShape => "v_shape",
            PreferenceKind::Level => "level",
            PreferenceKind::VShapeIndifference => "v_shape_indifference",
            PreferenceKind::Gaussian => "gaussian",
        }
    }
}

impl fmt::Display for PreferenceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for PreferenceKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let norm = s.trim().to_ascii_lowercase().replace('-', "_");
        let kind = match norm.as_str() {
            "usual" | "i" | "1" => PreferenceKind::Usual,
            "u_shape" | "ushape" | "ii" | "2" => PreferenceKind::UShape,
            "v_shape" | "vshape" | "iii" | "3" => PreferenceKind::VShape,
            "level" | "iv" | "4" => PreferenceKind::Level,
            "v_shape_indifference" | "linear" | "v" | "5" => PreferenceKind::VShapeIndifference,
            "gaussian" | "vi" | "6" => PreferenceKind::Gaussian,
            _ => return Err(Error::invalid(format!("unknown preference function `{s}`"))),
        };
        Ok(kind)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PreferenceFunction {
    pub kind: PreferenceKind,
    pub thresholds: Thresholds,
}

impl PreferenceFunction {
    pub fn new(kind: PreferenceKind, thresholds: Thresholds) -> Result<Self> {
        thresholds.validate()?;
        Ok(PreferenceFunction { kind, thresholds })
    }

    pub fn usual() -> Self {
        PreferenceFunction {
            kind: PreferenceKind::Usual,
            thresholds: Thresholds::default(),
        }
    }

    /// Preference degree for a (direction-adjusted) difference `d`.
    ///
    /// Nonpositive differences always map to 0; the reverse preference lives
    /// in the transposed pair. When `q == p` the ramp shapes collapse to a
    /// step at `q`.
    pub fn degree(&self, d: f64) -> Result<f64> {
        if !d.is_finite() {
            return Err(Error::invalid(format!("non-finite difference {d}")));
        }
        Ok(self.degree_unchecked(d))
    }

    #[inline]
    pub(crate) fn degree_unchecked(&self, d: f64) -> f64 {
        if d <= 0.0 {
            return 0.0;
        }
        let Thresholds { q, p, sigma } = self.thresholds;
        match self.kind {
            PreferenceKind::Usual => 1.0,
            PreferenceKind::UShape => {
                if d <= q {
                    0.0
                } else {
                    1.0
                }
            }
            PreferenceKind::VShape => {
                if d <= p {
                    d / p
                } else {
                    1.0
                }
            }
            PreferenceKind::Level => {
                if d <= q {
                    0.0
                } else if d <= p {
                    0.5
                } else {
                    1.0
                }
            }
            PreferenceKind::VShapeIndifference => {
                if d <= q {
                    0.0
                } else if d <= p {
                    (d - q) / (p - q)
                } else {
                    1.0
                }
            }
            PreferenceKind::Gaussian => 1.0 - (-(d * d) / (2.0 * sigma * sigma)).exp(),
        }
    }
}

/// Free-function form of [`PreferenceFunction::degree`].
pub fn preference_degree(spec: &PreferenceFunction, d: f64) -> Result<f64> {
    spec.degree(d)
}
