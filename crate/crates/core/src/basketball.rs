//! Box-score efficiency indices, eligibility, positional grouping and the
//! two weighting scenarios.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Minimum games and minimum average minutes per game to be ranked.
pub const MIN_GAMES: u32 = 10;
pub const MIN_AVG_MINUTES: f64 = 10.0;
/// Regulation game length used by the minutes-weighted plus/minus.
pub const GAME_MINUTES: f64 = 40.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Position {
    #[serde(rename = "PG")]
    PointGuard,
    #[serde(rename = "SG")]
    ShootingGuard,
    #[serde(rename = "F")]
    Forward,
    #[serde(rename = "PF")]
    PowerForward,
    #[serde(rename = "C")]
    Center,
}

impl Position {
    pub const ALL: [Position; 5] = [
        Position::PointGuard,
        Position::ShootingGuard,
        Position::Forward,
        Position::PowerForward,
        Position::Center,
    ];

    pub fn code(self) -> &'static str {
        match self {
            Position::PointGuard => "PG",
            Position::ShootingGuard => "SG",
            Position::Forward => "F",
            Position::PowerForward => "PF",
            Position::Center => "C",
        }
    }
}

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

impl FromStr for Position {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "PG" => Ok(Position::PointGuard),
            "SG" => Ok(Position::ShootingGuard),
            "F" | "SF" => Ok(Position::Forward),
            "PF" => Ok(Position::PowerForward),
            "C" => Ok(Position::Center),
            _ => Err(Error::invalid(format!("unknown position `{s}`"))),
        }
    }
}

/// Season statistics for one player. Counting stats are totals over
/// `games` games.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[allow(non_snake_case)]
pub struct BoxScoreLine {
    pub player_id: String,
    pub position: Position,
    pub games: u32,
    pub Min: f64,
    pub Pts: f64,
    pub P2: f64,
    pub P2A: f64,
    pub P3: f64,
    pub P3A: f64,
    pub FT: f64,
    pub FTA: f64,
    pub FG: f64,
    pub FGA: f64,
    pub ORB: f64,
    pub DRB: f64,
    pub AST: f64,
    pub STL: f64,
    pub BLK: f64,
    pub BLKR: f64,
    pub TOV: f64,
    pub PF: f64,
    pub PFR: f64,
    pub PM: f64,
}

impl BoxScoreLine {
    /// Zeroed line, handy for building fixtures.
    pub fn empty(player_id: impl Into<String>, position: Position) -> Self {
        BoxScoreLine {
            player_id: player_id.into(),
            position,
            games: 0,
            Min: 0.0,
            Pts: 0.0,
            P2: 0.0,
            P2A: 0.0,
            P3: 0.0,
            P3A: 0.0,
            FT: 0.0,
            FTA: 0.0,
            FG: 0.0,
            FGA: 0.0,
            ORB: 0.0,
            DRB: 0.0,
            AST: 0.0,
            STL: 0.0,
            BLK: 0.0,
            BLKR: 0.0,
            TOV: 0.0,
            PF: 0.0,
            PFR: 0.0,
            PM: 0.0,
        }
    }

    /// Named nonnegative stats, in CSV column order.
    pub fn nonnegative_fields(&self) -> [(&'static str, f64); 19] {
        [
            ("Min", self.Min),
            ("Pts", self.Pts),
            ("P2", self.P2),
            ("P2A", self.P2A),
            ("P3", self.P3),
            ("P3A", self.P3A),
            ("FT", self.FT),
            ("FTA", self.FTA),
            ("FG", self.FG),
            ("FGA", self.FGA),
            ("ORB", self.ORB),
            ("DRB", self.DRB),
            ("AST", self.AST),
            ("STL", self.STL),
            ("BLK", self.BLK),
            ("BLKR", self.BLKR),
            ("TOV", self.TOV),
            ("PF", self.PF),
            ("PFR", self.PFR),
        ]
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in self.nonnegative_fields() {
            if !(v.is_finite() && v >= 0.0) {
                return Err(Error::invalid(format!("{name} must be a nonnegative number, got {v}")));
            }
        }
        if !self.PM.is_finite() {
            return Err(Error::invalid("PM must be finite"));
        }
        for (made, att, m, a) in [
            ("P2", "P2A", self.P2, self.P2A),
            ("P3", "P3A", self.P3, self.P3A),
            ("FT", "FTA", self.FT, self.FTA),
            ("FG", "FGA", self.FG, self.FGA),
        ] {
            if m > a {
                return Err(Error::invalid(format!("{made} <= {att} violated ({m} > {a})")));
            }
        }
        if (self.FG - (self.P2 + self.P3)).abs() > 1e-9 {
            return Err(Error::invalid(format!(
                "FG = P2 + P3 violated ({} != {} + {})",
                self.FG, self.P2, self.P3
            )));
        }
        if (self.FGA - (self.P2A + self.P3A)).abs() > 1e-9 {
            return Err(Error::invalid(format!(
                "FGA = P2A + P3A violated ({} != {} + {})",
                self.FGA, self.P2A, self.P3A
            )));
        }
        Ok(())
    }

    pub fn average_minutes(&self) -> Option<f64> {
        (self.games > 0).then(|| self.Min / f64::from(self.games))
    }
}

/// The six ranking criteria, plus PMW which only drives weight selection.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[allow(non_snake_case)]
pub struct CriterionVector {
    pub PtsM: f64,
    pub DRM: f64,
    pub ORM: f64,
    pub EPts: f64,
    pub ASTM: f64,
    #[serde(rename = "PCS%")]
    pub PCSpct: f64,
    pub PMW: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Criterion {
    PtsM,
    DRM,
    ORM,
    EPts,
    ASTM,
    #[serde(rename = "PCS%")]
    PCSpct,
    PMW,
}

impl Criterion {
    /// Criteria used for ranking, in table order.
    pub const RANKING: [Criterion; 6] = [
        Criterion::PtsM,
        Criterion::DRM,
        Criterion::ORM,
        Criterion::EPts,
        Criterion::ASTM,
        Criterion::PCSpct,
    ];

    pub const ALL: [Criterion; 7] = [
        Criterion::PtsM,
        Criterion::DRM,
        Criterion::ORM,
        Criterion::PMW,
        Criterion::EPts,
        Criterion::ASTM,
        Criterion::PCSpct,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Criterion::PtsM => "PtsM",
            Criterion::DRM => "DRM",
            Criterion::ORM => "ORM",
            Criterion::EPts => "EPts",
            Criterion::ASTM => "ASTM",
            Criterion::PCSpct => "PCS%",
            Criterion::PMW => "PMW",
        }
    }

    pub fn description(self) -> &'static str {
        match self {
            Criterion::PtsM => "points per minute played",
            Criterion::DRM => "defensive rating per minute: (DRB + STL + BLK - PF) / Min",
            Criterion::ORM => "offensive rating per minute: scoring, rebounds, assists and drawn fouls net of misses, turnovers and blocks received",
            Criterion::EPts => "points scored per 100 points attempted (2 * P2A + 3 * P3A + FTA)",
            Criterion::ASTM => "assists plus steals per turnover, per minute",
            Criterion::PCSpct => "percentage of completed possessions that succeeded",
            Criterion::PMW => "plus/minus weighted by the share of a 40-minute game played",
        }
    }
}

impl fmt::Display for Criterion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Criterion {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let c = match s.trim() {
            "PtsM" | "PtsE" => Criterion::PtsM,
            "DRM" => Criterion::DRM,
            "ORM" => Criterion::ORM,
            "EPts" => Criterion::EPts,
            "ASTM" | "ATSM" => Criterion::ASTM,
            "PCS%" | "PCSpct" | "PCS" => Criterion::PCSpct,
            "PMW" => Criterion::PMW,
            _ => {
                return Err(Error::NotFound {
                    kind: "criterion",
                    id: s.to_string(),
                })
            }
        };
        Ok(c)
    }
}

impl CriterionVector {
    pub fn get(&self, c: Criterion) -> f64 {
        match c {
            Criterion::PtsM => self.PtsM,
            Criterion::DRM => self.DRM,
            Criterion::ORM => self.ORM,
            Criterion::EPts => self.EPts,
            Criterion::ASTM => self.ASTM,
            Criterion::PCSpct => self.PCSpct,
            Criterion::PMW => self.PMW,
        }
    }

    /// Re-expresses indices computed from season totals on a per-game
    /// basis. Only ASTM and PMW depend on the scale of the inputs.
    pub fn per_game(mut self, games: u32) -> Self {
        let g = f64::from(games.max(1));
        self.ASTM *= g;
        self.PMW /= g * g;
        self
    }
}

/// Efficiency indices from the stats exactly as given.
///
/// EPts and PCS% are 0 when their denominators are 0; ASTM divides by
/// `max(TOV, 1)`.
pub fn compute_indices(line: &BoxScoreLine) -> Result<CriterionVector> {
    let min = line.Min;
    if !(min.is_finite() && min > 0.0) {
        return Err(Error::invalid(format!(
            "`{}`: minutes must be positive to compute indices, got {min}",
            line.player_id
        )));
    }
    let pts_m = line.Pts / min;
    let drm = (line.DRB + line.STL + line.BLK - line.PF) / min;
    let gains = 2.0 * line.P2 + 3.0 * line.P3 + line.FT + line.ORB + line.AST + line.PFR;
    let losses = (line.FGA - line.FG) + (line.FTA - line.FT) + line.TOV + line.BLKR;
    let orm = (gains - losses) / min;
    let attempted = 2.0 * line.P2A + 3.0 * line.P3A + line.FTA;
    let epts = if attempted > 0.0 { 100.0 * line.Pts / attempted } else { 0.0 };
    let astm = (line.AST + line.STL) / (line.TOV.max(1.0) * min);
    let completed = line.FGA + line.PFR + line.AST + line.TOV;
    let pcs = if completed > 0.0 {
        100.0 * (line.FG + line.PFR + line.AST) / completed
    } else {
        0.0
    };
    Ok(CriterionVector {
        PtsM: pts_m,
        DRM: drm,
        ORM: orm,
        EPts: epts,
        ASTM: astm,
        PCSpct: pcs,
        PMW: line.PM * min / GAME_MINUTES,
    })
}

/// How season totals are turned into indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StatBasis {
    /// Indices as if computed from per-game averages.
    #[default]
    PerGame,
    /// Indices straight from season totals.
    Totals,
}

impl FromStr for StatBasis {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().replace('-', "_").as_str() {
            "per_game" | "pergame" | "average" => Ok(StatBasis::PerGame),
            "totals" | "total" => Ok(StatBasis::Totals),
            _ => Err(Error::invalid(format!("unknown stat basis `{s}`"))),
        }
    }
}

pub fn indices_with_basis(line: &BoxScoreLine, basis: StatBasis) -> Result<CriterionVector> {
    let v = compute_indices(line)?;
    Ok(match basis {
        StatBasis::Totals => v,
        StatBasis::PerGame => v.per_game(line.games),
    })
}

pub fn is_eligible(line: &BoxScoreLine) -> bool {
    line.games >= MIN_GAMES && line.average_minutes().is_some_and(|avg| avg >= MIN_AVG_MINUTES)
}

/// Players with at least 10 games and at least 10 minutes per game, in
/// input order.
pub fn eligibility_filter(lines: &[BoxScoreLine]) -> Vec<BoxScoreLine> {
    lines.iter().filter(|l| is_eligible(l)).cloned().collect()
}

/// Partitions by position; every position is present, possibly empty.
pub fn group_by_position(lines: &[BoxScoreLine]) -> BTreeMap<Position, Vec<BoxScoreLine>> {
    let mut groups: BTreeMap<Position, Vec<BoxScoreLine>> =
        Position::ALL.iter().map(|&p| (p, Vec::new())).collect();
    for l in lines {
        groups.entry(l.position).or_default().push(l.clone());
    }
    groups
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Scenario {
    EqualWeights,
    CorrelationBoosted,
}

impl FromStr for Scenario {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().replace('-', "_").as_str() {
            "1" | "equal" | "equal_weights" => Ok(Scenario::EqualWeights),
            "2" | "boosted" | "correlation" | "correlation_boosted" => Ok(Scenario::CorrelationBoosted),
            _ => Err(Error::invalid(format!("unknown scenario `{s}`"))),
        }
    }
}

/// What the non-boosted criteria get in the boosted scenario.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ResidualRule {
    /// 0.2 split over the four remaining criteria (0.05 each), summing to 1.
    #[default]
    Normalized,
    /// 0.2 / 5 = 0.04 each, summing to 0.96 before normalization.
    Literal,
}

impl FromStr for ResidualRule {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "normalized" | "0.05" => Ok(ResidualRule::Normalized),
            "literal" | "0.04" => Ok(ResidualRule::Literal),
            _ => Err(Error::invalid(format!("unknown residual rule `{s}`"))),
        }
    }
}

pub const BOOSTED_WEIGHT: f64 = 0.4;

/// Criteria boosted in the correlation-driven scenario, or `None` when the
/// position has no boosted pair.
pub fn boosted_criteria(position: Position) -> Option<[Criterion; 2]> {
    match position {
        Position::PointGuard | Position::ShootingGuard => Some([Criterion::EPts, Criterion::ASTM]),
        Position::PowerForward | Position::Center => Some([Criterion::DRM, Criterion::ASTM]),
        Position::Forward => None,
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioWeights {
    pub weights: BTreeMap<Criterion, f64>,
    pub warning: Option<String>,
}

pub fn scenario_weights(position: Position, scenario: Scenario) -> ScenarioWeights {
    scenario_weights_with(position, scenario, ResidualRule::Normalized)
}

pub fn scenario_weights_with(position: Position, scenario: Scenario, residual: ResidualRule) -> ScenarioWeights {
    let equal = || ScenarioWeights {
        weights: Criterion::RANKING.iter().map(|&c| (c, 1.0 / 6.0)).collect(),
        warning: None,
    };
    match (scenario, boosted_criteria(position)) {
        (Scenario::EqualWeights, _) => equal(),
        (Scenario::CorrelationBoosted, None) => ScenarioWeights {
            warning: Some(format!(
                "no boosted criteria defined for position {position}; using equal weights"
            )),
            ..equal()
        },
        (Scenario::CorrelationBoosted, Some(boosted)) => {
            let rest = match residual {
                ResidualRule::Normalized => 0.2 / 4.0,
                ResidualRule::Literal => 0.2 / 5.0,
            };
            let weights = Criterion::RANKING
                .iter()
                .map(|&c| (c, if boosted.contains(&c) { BOOSTED_WEIGHT } else { rest }))
                .collect();
            ScenarioWeights { weights, warning: None }
        }
    }
}
