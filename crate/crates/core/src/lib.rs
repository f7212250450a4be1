//! PROMETHEE I/II outranking with quantile-tuned preference thresholds.
//!
//! The engine ([`preference`], [`flows`], [`tuning`], [`outranking`]) is
//! generic over any performance matrix. [`basketball`], [`stats`] and
//! [`pipeline`] apply it to ranking players from season box scores, and
//! [`service`] exposes the pipeline over HTTP.
//!
//! ```
//! use outrank::flows::{evaluate, promethee_ii_ranking, CriterionSpec};
//! use outrank::matrix::PerformanceMatrix;
//! use outrank::preference::{PreferenceFunction, PreferenceKind, Thresholds};
//!
//! let perf = PerformanceMatrix::new(
//!     vec!["a".into(), "b".into(), "c".into()],
//!     vec!["speed".into(), "cost".into()],
//!     vec![vec![3.0, 10.0], vec![2.0, 5.0], vec![1.0, 8.0]],
//! )
//! .unwrap();
//! let ramp = PreferenceFunction::new(PreferenceKind::VShapeIndifference, Thresholds::linear(0.5, 2.0).unwrap()).unwrap();
//! let criteria = [
//!     CriterionSpec::new("speed", 0.5, ramp),
//!     CriterionSpec::new("cost", 0.5, ramp).minimize(),
//! ];
//! let (_, flows) = evaluate(&perf, &criteria).unwrap();
//! let order = promethee_ii_ranking(&flows);
//! assert_eq!(order[0].id, "b");
//! ```

pub mod basketball;
pub mod cli;
pub mod config;
pub mod dataset;
pub mod error;
pub mod export;
pub mod flows;
pub mod matrix;
pub mod outranking;
pub mod pipeline;
pub mod preference;
pub mod service;
pub mod stats;
pub mod tuning;

pub use error::{Error, Result};
