//! Evidential influence estimation and seed selection for Twitter-like
//! social graphs.
//!
//! The pipeline ingests follow/tweet/action files into a directed
//! [`graph::SocialGraph`], weights every link by its follow, mention and
//! retweet activity ([`weights`]), fuses those signals into a per-link
//! influence value with belief functions ([`bba`], [`influence`]) and
//! selects seed sets maximizing the evidential spread with a lazy greedy
//! optimizer ([`select`]). Baseline diffusion models with Monte Carlo
//! spread estimation ([`diffusion`], [`credit`]) and a synthetic
//! benchmark with planted influencers ([`synthetic`], [`eval`]) support
//! comparison experiments.

pub mod activity;
pub mod bba;
pub mod credit;
pub mod diffusion;
pub mod eval;
pub mod graph;
pub mod influence;
pub mod select;
pub mod synthetic;
pub mod weights;

pub use activity::{load_activity_log, ActivityLog, IngestError};
pub use bba::{Bba, BbaError};
pub use graph::{GraphError, NodeId, SocialGraph};
pub use influence::{
    estimate_influence, EstimateError, EstimatorParams, InfluenceField, Level, PipelineOptions,
};
pub use select::{celf_select, naive_greedy, GainMode, SeedResult, SelectError};
