//! `outrank` command line.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::Write;
use std::net::SocketAddr;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::basketball::{BoxScoreLine, ResidualRule, Scenario, StatBasis};
use crate::config::Config;
use crate::dataset::read_boxscore_csv;
use crate::error::{Error, Result};
use crate::export::{flows_table, thresholds_table, to_json, FloatFormat};
use crate::outranking::{to_dot, DotOptions};
use crate::pipeline::{
    anova_by_position, correlations_by_position, player_indices, rank, run_rank, tune_profile, RankRequest,
};
use crate::preference::PreferenceKind;

#[derive(Debug, Parser)]
#[command(name = "outrank", version, about = "PROMETHEE ranking of basketball players from box scores")]
pub struct Cli {
    /// Flat key = value defaults; command-line flags take precedence.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Efficiency indices for every player.
    Indices {
        csv: PathBuf,
        #[arg(long)]
        basis: Option<StatBasis>,
        #[arg(long, default_value = "sig6")]
        precision: FloatFormat,
    },
    /// Quantile-tuned thresholds per criterion.
    Tune {
        csv: PathBuf,
        #[command(flatten)]
        opts: RankOpts,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[arg(long, default_value = "sig6")]
        precision: FloatFormat,
    },
    /// PROMETHEE flows with the total and partial orders.
    Rank {
        csv: PathBuf,
        #[command(flatten)]
        opts: RankOpts,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[arg(long, default_value = "sig6")]
        precision: FloatFormat,
    },
    /// Outranking graph (covering edges) in Graphviz DOT.
    Graph {
        csv: PathBuf,
        #[command(flatten)]
        opts: RankOpts,
        /// Output path; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Keep only the first N layers of the graph.
        #[arg(long)]
        top: Option<usize>,
    },
    /// Positional ANOVA or per-position correlation matrices.
    Stats {
        csv: PathBuf,
        test: StatsTest,
        #[arg(long)]
        basis: Option<StatBasis>,
        #[arg(long, default_value = "sig6")]
        precision: FloatFormat,
    },
    /// HTTP API for the explorer front end.
    Serve {
        csv: PathBuf,
        #[arg(long, default_value = "127.0.0.1:8080")]
        bind: SocketAddr,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Table,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum StatsTest {
    Anova,
    Corr,
}

#[derive(Debug, Clone, Default, Args)]
pub struct RankOpts {
    /// PG, SG, F, PF, C or all.
    #[arg(long)]
    pub profile: Option<String>,
    /// 1 (equal weights) or 2 (correlation boosted).
    #[arg(long)]
    pub scenario: Option<Scenario>,
    /// Explicit weights, e.g. `EPts=0.4,ASTM=0.4,PtsM=0.05`.
    #[arg(long)]
    pub weights: Option<String>,
    #[arg(long)]
    pub alpha: Option<f64>,
    #[arg(long)]
    pub beta: Option<f64>,
    /// Preference function: usual, u_shape, v_shape, level, v_shape_indifference, gaussian.
    #[arg(long)]
    pub kind: Option<PreferenceKind>,
    /// Non-boosted weight in scenario 2: normalized (0.05) or literal (0.04).
    #[arg(long)]
    pub residual: Option<ResidualRule>,
    #[arg(long)]
    pub basis: Option<StatBasis>,
}

impl RankOpts {
    fn request(&self, config: &Config) -> Result<RankRequest> {
        let mut req = RankRequest::default();
        config.apply(&mut req);
        if let Some(p) = &self.profile {
            req.profile = p.clone();
        }
        if let Some(s) = self.scenario {
            req.scenario = s;
        }
        if let Some(w) = &self.weights {
            req.weights = Some(parse_weights(w)?);
        }
        if let Some(a) = self.alpha {
            req.alpha = a;
        }
        if let Some(b) = self.beta {
            req.beta = b;
        }
        if let Some(k) = self.kind {
            req.function_kind = k;
        }
        if let Some(r) = self.residual {
            req.residual = r;
        }
        if let Some(b) = self.basis {
            req.basis = b;
        }
        Ok(req)
    }
}

pub fn parse_weights(spec: &str) -> Result<BTreeMap<String, f64>> {
    spec.split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|kv| {
            let (k, v) = kv
                .split_once('=')
                .ok_or_else(|| Error::invalid(format!("weight `{kv}` is not of the form name=value")))?;
            let v: f64 = v
                .trim()
                .parse()
                .map_err(|_| Error::invalid(format!("weight `{kv}` has a non-numeric value")))?;
            Ok((k.trim().to_string(), v))
        })
        .collect()
}

fn load(csv: &PathBuf) -> Result<Vec<BoxScoreLine>> {
    read_boxscore_csv(csv)
}

/// Parses `args` (including the program name) and runs the command,
/// writing results to `out`.
pub fn run<I, T>(args: I, out: &mut dyn Write) -> Result<()>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = Cli::try_parse_from(args).map_err(|e| Error::invalid(e.to_string()))?;
    execute(cli, out)
}

pub fn execute(cli: Cli, out: &mut dyn Write) -> Result<()> {
    let config = match &cli.config {
        Some(path) => Config::load(path)?,
        None => Config::default(),
    };
    let default_basis = config.basis.unwrap_or_default();
    match cli.command {
        Command::Indices { csv, basis, precision } => {
            let data = load(&csv)?;
            let rows = player_indices(&data, basis.unwrap_or(default_basis));
            out.write_all(to_json(&rows, precision)?.as_bytes())?;
        }
        Command::Tune {
            csv,
            opts,
            format,
            precision,
        } => {
            let data = load(&csv)?;
            let req = opts.request(&config)?;
            req.validate()?;
            let rows = tune_profile(&data, req.parsed_profile()?, req.tuning()?, req.basis)?;
            let text = match format {
                Format::Json => to_json(&rows, precision)?,
                Format::Table => thresholds_table(&rows),
            };
            out.write_all(text.as_bytes())?;
        }
        Command::Rank {
            csv,
            opts,
            format,
            precision,
        } => {
            let data = load(&csv)?;
            let req = opts.request(&config)?;
            let resp = run_rank(&data, &req)?;
            let text = match format {
                Format::Json => to_json(&resp, precision)?,
                Format::Table => flows_table(&resp),
            };
            out.write_all(text.as_bytes())?;
        }
        Command::Graph { csv, opts, out: path, top } => {
            let data = load(&csv)?;
            let req = opts.request(&config)?;
            let ranking = rank(&data, &req)?;
            let dot = to_dot(
                &ranking.relation,
                &ranking.flows,
                DotOptions {
                    top,
                    full_precision: false,
                },
            );
            match path {
                Some(p) => std::fs::write(&p, dot).map_err(|e| Error::Io(format!("{}: {e}", p.display())))?,
                None => out.write_all(dot.as_bytes())?,
            }
        }
        Command::Stats {
            csv,
            test,
            basis,
            precision,
        } => {
            let data = load(&csv)?;
            let basis = basis.unwrap_or(default_basis);
            let text = match test {
                StatsTest::Anova => to_json(&anova_by_position(&data, basis)?, precision)?,
                StatsTest::Corr => to_json(&correlations_by_position(&data, basis)?, precision)?,
            };
            out.write_all(text.as_bytes())?;
        }
        Command::Serve { csv, bind } => {
            let data = load(&csv)?;
            if data.is_empty() {
                return Err(Error::invalid("dataset has no players"));
            }
            let rt = tokio::runtime::Runtime::new()?;
            writeln!(out, "listening on http://{bind}")?;
            out.flush()?;
            rt.block_on(crate::service::serve(data, bind))?;
        }
    }
    Ok(())
}
