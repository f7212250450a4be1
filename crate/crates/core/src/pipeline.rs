//! End-to-end ranking: eligibility, positional profile, indices, tuned
//! thresholds, scenario weights, flows, and both orders.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::basketball::{
    eligibility_filter, indices_with_basis, scenario_weights_with, BoxScoreLine, Criterion, CriterionVector,
    Position, ResidualRule, Scenario, StatBasis,
};
use crate::error::{request, Error, Result};
use crate::flows::{
    evaluate, normalize_weights, promethee_ii_ranking, CriterionSpec, Direction, FlowResult, RankedAlternative,
};
use crate::matrix::PerformanceMatrix;
use crate::outranking::{outranking, OutrankingRelation};
use crate::preference::{PreferenceFunction, PreferenceKind, Thresholds};
use crate::stats::{anova_oneway, correlation_matrix, AnovaResult, CorrelationMatrix};
use crate::tuning::{tune_thresholds, TuningConfig};

pub const SCHEMA_VERSION: u32 = 1;

/// Error codes carried by [`Error::Request`].
pub mod codes {
    pub const INVALID_QUANTILES: &str = "invalid_quantiles";
    pub const UNKNOWN_PROFILE: &str = "unknown_profile";
    pub const INVALID_WEIGHTS: &str = "invalid_weights";
    pub const UNKNOWN_CRITERION: &str = "unknown_criterion";
    pub const INSUFFICIENT_PLAYERS: &str = "insufficient_players";
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Profile {
    All,
    Position(Position),
}

impl Profile {
    pub fn position(self) -> Option<Position> {
        match self {
            Profile::All => None,
            Profile::Position(p) => Some(p),
        }
    }

    pub fn includes(self, line: &BoxScoreLine) -> bool {
        self.position().is_none_or(|p| p == line.position)
    }
}

impl fmt::Display for Profile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Profile::All => f.write_str("all"),
            Profile::Position(p) => f.write_str(p.code()),
        }
    }
}

impl FromStr for Profile {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s.trim().eq_ignore_ascii_case("all") {
            return Ok(Profile::All);
        }
        s.parse()
            .map(Profile::Position)
            .map_err(|_| request(codes::UNKNOWN_PROFILE, format!("unknown profile `{s}` (expected PG, SG, F, PF, C or all)")))
    }
}

fn default_profile() -> String {
    "all".into()
}

fn default_alpha() -> f64 {
    25.0
}

fn default_beta() -> f64 {
    75.0
}

fn default_kind() -> PreferenceKind {
    PreferenceKind::VShapeIndifference
}

fn default_scenario() -> Scenario {
    Scenario::EqualWeights
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RankRequest {
    #[serde(default = "default_profile")]
    pub profile: String,
    #[serde(default = "default_scenario")]
    pub scenario: Scenario,
    /// Explicit weights by criterion id; overrides `scenario` when present.
    /// Criteria left out get weight 0.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weights: Option<BTreeMap<String, f64>>,
    #[serde(default = "default_alpha")]
    pub alpha: f64,
    #[serde(default = "default_beta")]
    pub beta: f64,
    #[serde(default = "default_kind")]
    pub function_kind: PreferenceKind,
    #[serde(default)]
    pub residual: ResidualRule,
    #[serde(default)]
    pub basis: StatBasis,
    /// Per-criterion direction overrides; all criteria are maximized otherwise.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub directions: BTreeMap<String, Direction>,
}

impl Default for RankRequest {
    fn default() -> Self {
        RankRequest {
            profile: default_profile(),
            scenario: default_scenario(),
            weights: None,
            alpha: default_alpha(),
            beta: default_beta(),
            function_kind: default_kind(),
            residual: ResidualRule::default(),
            basis: StatBasis::default(),
            directions: BTreeMap::new(),
        }
    }
}

impl RankRequest {
    pub fn for_profile(profile: impl Into<String>, scenario: Scenario) -> Self {
        RankRequest {
            profile: profile.into(),
            scenario,
            ..RankRequest::default()
        }
    }

    pub fn tuning(&self) -> Result<TuningConfig> {
        TuningConfig::new(self.alpha, self.beta).map_err(|e| {
            request(
                codes::INVALID_QUANTILES,
                match e {
                    Error::InvalidInput(m) => m,
                    other => other.to_string(),
                },
            )
        })
    }

    pub fn parsed_profile(&self) -> Result<Profile> {
        self.profile.parse()
    }

    /// Checks everything that does not need the dataset.
    pub fn validate(&self) -> Result<()> {
        self.parsed_profile()?;
        self.tuning()?;
        if let Some(w) = &self.weights {
            for (k, &v) in w {
                k.parse::<Criterion>()
                    .ok()
                    .filter(|c| Criterion::RANKING.contains(c))
                    .ok_or_else(|| request(codes::UNKNOWN_CRITERION, format!("unknown ranking criterion `{k}`")))?;
                if !(v.is_finite() && v >= 0.0) {
                    return Err(request(codes::INVALID_WEIGHTS, format!("weight for `{k}` must be nonnegative, got {v}")));
                }
            }
            if w.values().sum::<f64>() <= 0.0 {
                return Err(request(codes::INVALID_WEIGHTS, "explicit weights sum to zero"));
            }
        }
        for k in self.directions.keys() {
            k.parse::<Criterion>()
                .map_err(|_| request(codes::UNKNOWN_CRITERION, format!("unknown criterion `{k}`")))?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CriterionThresholds {
    pub criterion: String,
    pub q: f64,
    pub p: f64,
    pub sigma: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlayerFlow {
    pub id: String,
    pub phi_plus: f64,
    pub phi_minus: f64,
    pub phi: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PartialOrder {
    /// Covering edges `[winner, loser]`.
    pub edges: Vec<[String; 2]>,
    pub indifferent: Vec<[String; 2]>,
    pub incomparable_count: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RankResponse {
    pub schema_version: u32,
    pub profile: String,
    pub scenario: String,
    pub alpha: f64,
    pub beta: f64,
    pub function_kind: PreferenceKind,
    pub players: usize,
    pub weights: Vec<CriterionWeight>,
    pub thresholds: Vec<CriterionThresholds>,
    pub flows: Vec<PlayerFlow>,
    pub total_order: Vec<RankedAlternative>,
    pub partial_order: PartialOrder,
    pub warnings: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CriterionWeight {
    pub criterion: String,
    pub weight: f64,
}

/// Everything computed for one ranking, before flattening to the wire form.
#[derive(Debug, Clone)]
pub struct Ranking {
    pub players: Vec<BoxScoreLine>,
    pub indices: Vec<CriterionVector>,
    pub performance: PerformanceMatrix,
    pub criteria: Vec<CriterionSpec>,
    pub flows: FlowResult,
    pub total_order: Vec<RankedAlternative>,
    pub relation: OutrankingRelation,
    pub warnings: Vec<String>,
}

/// Eligible players of a profile, in dataset order.
pub fn profile_players(dataset: &[BoxScoreLine], profile: Profile) -> Vec<BoxScoreLine> {
    eligibility_filter(dataset)
        .into_iter()
        .filter(|l| profile.includes(l))
        .collect()
}

pub fn indices_matrix(players: &[BoxScoreLine], basis: StatBasis) -> Result<(Vec<CriterionVector>, PerformanceMatrix)> {
    let indices = players
        .iter()
        .map(|l| indices_with_basis(l, basis))
        .collect::<Result<Vec<_>>>()?;
    let perf = PerformanceMatrix::new(
        players.iter().map(|l| l.player_id.clone()).collect(),
        Criterion::RANKING.iter().map(|c| c.id().to_string()).collect(),
        indices
            .iter()
            .map(|v| Criterion::RANKING.iter().map(|&c| v.get(c)).collect())
            .collect(),
    )?;
    Ok((indices, perf))
}

/// Tuned thresholds for each ranking criterion over a profile.
pub fn tune_profile(
    dataset: &[BoxScoreLine],
    profile: Profile,
    config: TuningConfig,
    basis: StatBasis,
) -> Result<Vec<CriterionThresholds>> {
    let players = profile_players(dataset, profile);
    ensure_enough(&players, profile)?;
    let (_, perf) = indices_matrix(&players, basis)?;
    Criterion::RANKING
        .iter()
        .enumerate()
        .map(|(k, c)| {
            let t = tune_thresholds(&perf.column(k), config)?;
            Ok(CriterionThresholds {
                criterion: c.id().to_string(),
                q: t.q,
                p: t.p,
                sigma: t.sigma,
            })
        })
        .collect()
}

fn ensure_enough(players: &[BoxScoreLine], profile: Profile) -> Result<()> {
    if players.len() < 2 {
        return Err(request(
            codes::INSUFFICIENT_PLAYERS,
            format!(
                "profile {profile} has {} eligible player(s); at least 2 are needed",
                players.len()
            ),
        ));
    }
    Ok(())
}

fn resolve_weights(req: &RankRequest, profile: Profile, warnings: &mut Vec<String>) -> BTreeMap<Criterion, f64> {
    if let Some(explicit) = &req.weights {
        return Criterion::RANKING
            .iter()
            .map(|&c| {
                let w = explicit
                    .iter()
                    .find(|(k, _)| k.parse::<Criterion>().ok() == Some(c))
                    .map_or(0.0, |(_, &v)| v);
                (c, w)
            })
            .collect();
    }
    let sw = match profile.position() {
        Some(p) => scenario_weights_with(p, req.scenario, req.residual),
        None => {
            let mut sw = scenario_weights_with(Position::Forward, Scenario::EqualWeights, req.residual);
            if req.scenario == Scenario::CorrelationBoosted {
                sw.warning = Some("boosted weights are position-specific; using equal weights for profile all".into());
            }
            sw
        }
    };
    warnings.extend(sw.warning);
    sw.weights
}

/// Runs the full ranking for one request.
pub fn rank(dataset: &[BoxScoreLine], req: &RankRequest) -> Result<Ranking> {
    req.validate()?;
    let profile = req.parsed_profile()?;
    let tuning = req.tuning()?;
    let players = profile_players(dataset, profile);
    ensure_enough(&players, profile)?;
    let (indices, perf) = indices_matrix(&players, req.basis)?;

    let mut warnings = Vec::new();
    let weights = resolve_weights(req, profile, &mut warnings);
    let mut criteria = Vec::with_capacity(Criterion::RANKING.len());
    for (k, &c) in Criterion::RANKING.iter().enumerate() {
        let thresholds = tune_thresholds(&perf.column(k), tuning)?;
        let direction = req
            .directions
            .iter()
            .find(|(id, _)| id.parse::<Criterion>().ok() == Some(c))
            .map_or(Direction::Maximize, |(_, &d)| d);
        criteria.push(CriterionSpec {
            id: c.id().to_string(),
            direction,
            weight: weights[&c],
            preference: PreferenceFunction::new(req.function_kind, thresholds)?,
        });
    }
    warnings.extend(normalize_weights(&mut criteria)?);

    let (_, flows) = evaluate(&perf, &criteria)?;
    let total_order = promethee_ii_ranking(&flows);
    let relation = outranking(&flows);
    Ok(Ranking {
        players,
        indices,
        performance: perf,
        criteria,
        flows,
        total_order,
        relation,
        warnings,
    })
}

/// [`rank`] flattened to the response schema shared by the CLI and the
/// HTTP service.
pub fn run_rank(dataset: &[BoxScoreLine], req: &RankRequest) -> Result<RankResponse> {
    let r = rank(dataset, req)?;
    let profile = req.parsed_profile()?;
    let scenario = if req.weights.is_some() {
        "explicit".to_string()
    } else {
        match req.scenario {
            Scenario::EqualWeights => "equal_weights".into(),
            Scenario::CorrelationBoosted => "correlation_boosted".into(),
        }
    };
    let ids = &r.flows.alternatives;
    let pair = |(a, b): (usize, usize)| [ids[a].clone(), ids[b].clone()];
    Ok(RankResponse {
        schema_version: SCHEMA_VERSION,
        profile: profile.to_string(),
        scenario,
        alpha: req.alpha,
        beta: req.beta,
        function_kind: req.function_kind,
        players: r.players.len(),
        weights: r
            .criteria
            .iter()
            .map(|c| CriterionWeight {
                criterion: c.id.clone(),
                weight: c.weight,
            })
            .collect(),
        thresholds: r
            .criteria
            .iter()
            .map(|c| {
                let Thresholds { q, p, sigma } = c.preference.thresholds;
                CriterionThresholds {
                    criterion: c.id.clone(),
                    q,
                    p,
                    sigma,
                }
            })
            .collect(),
        flows: (0..r.flows.len())
            .map(|i| PlayerFlow {
                id: ids[i].clone(),
                phi_plus: r.flows.phi_plus[i],
                phi_minus: r.flows.phi_minus[i],
                phi: r.flows.phi_net[i],
            })
            .collect(),
        total_order: r.total_order.clone(),
        partial_order: PartialOrder {
            edges: r.relation.edges.iter().copied().map(pair).collect(),
            indifferent: r.relation.indifferent_pairs().into_iter().map(pair).collect(),
            incomparable_count: r.relation.incomparable_pairs().len(),
        },
        warnings: r.warnings,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PlayerIndices {
    pub player_id: String,
    pub position: Position,
    pub games: u32,
    pub eligible: bool,
    pub indices: Option<CriterionVector>,
}

/// Indices for every player in the dataset; `None` when minutes are zero.
pub fn player_indices(dataset: &[BoxScoreLine], basis: StatBasis) -> Vec<PlayerIndices> {
    dataset
        .iter()
        .map(|l| PlayerIndices {
            player_id: l.player_id.clone(),
            position: l.position,
            games: l.games,
            eligible: crate::basketball::is_eligible(l),
            indices: indices_with_basis(l, basis).ok(),
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AnovaRow {
    pub criterion: String,
    pub total_mean: f64,
    /// Group means keyed by position code; positions without players are absent.
    pub means: BTreeMap<String, f64>,
    pub f_stat: f64,
    pub p_value: f64,
    pub df_between: usize,
    pub df_within: usize,
}

/// One-way ANOVA of each criterion across positions, eligible players only.
pub fn anova_by_position(dataset: &[BoxScoreLine], basis: StatBasis) -> Result<Vec<AnovaRow>> {
    let players = profile_players(dataset, Profile::All);
    let (indices, _) = indices_matrix(&players, basis)?;
    Criterion::ALL
        .iter()
        .map(|&c| {
            let mut groups: Vec<(Position, Vec<f64>)> = Vec::new();
            for p in Position::ALL {
                let g: Vec<f64> = players
                    .iter()
                    .zip(&indices)
                    .filter(|(l, _)| l.position == p)
                    .map(|(_, v)| v.get(c))
                    .collect();
                if !g.is_empty() {
                    groups.push((p, g));
                }
            }
            let values: Vec<Vec<f64>> = groups.iter().map(|(_, g)| g.clone()).collect();
            let AnovaResult {
                f_stat,
                df_between,
                df_within,
                p_value,
                group_means,
                grand_mean,
            } = anova_oneway(&values)?;
            Ok(AnovaRow {
                criterion: c.id().to_string(),
                total_mean: grand_mean,
                means: groups
                    .iter()
                    .zip(group_means)
                    .map(|((p, _), m)| (p.code().to_string(), m))
                    .collect(),
                f_stat,
                p_value,
                df_between,
                df_within,
            })
        })
        .collect()
}

/// Correlation matrix of all seven indices (PMW included) for each position
/// with at least 3 eligible players.
pub fn correlations_by_position(
    dataset: &[BoxScoreLine],
    basis: StatBasis,
) -> Result<BTreeMap<String, CorrelationMatrix>> {
    let mut out = BTreeMap::new();
    for p in Position::ALL {
        let players = profile_players(dataset, Profile::Position(p));
        if players.len() < 3 {
            continue;
        }
        let (indices, _) = indices_matrix(&players, basis)?;
        let columns: Vec<Vec<f64>> = Criterion::ALL
            .iter()
            .map(|&c| indices.iter().map(|v| v.get(c)).collect())
            .collect();
        let labels = Criterion::ALL.iter().map(|c| c.id().to_string()).collect();
        out.insert(p.code().to_string(), correlation_matrix(labels, &columns)?);
    }
    Ok(out)
}
