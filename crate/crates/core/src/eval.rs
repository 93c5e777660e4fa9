//! Evaluation protocol: hit-ratio accuracy against planted influencers,
//! accumulated per-seed criteria curves and two-hop affected-node
//! counts.

use std::collections::HashSet;

use thiserror::Error;

use crate::graph::{NodeId, SocialGraph};
use crate::influence::InfluenceField;
use crate::synthetic::PlantedTruth;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EvalError {
    #[error("k = {k} exceeds the {have} predicted seeds")]
    KTooLarge { k: usize, have: usize },
    #[error("unknown node id {0}")]
    UnknownNode(u32),
}

/// Fraction of the top-k predicted seeds that are planted influencers.
pub fn hit_ratio(predicted: &[NodeId], truth: &PlantedTruth, k: usize) -> Result<f64, EvalError> {
    if predicted.len() < k {
        return Err(EvalError::KTooLarge {
            k,
            have: predicted.len(),
        });
    }
    let hits = predicted[..k]
        .iter()
        .filter(|&&v| truth.is_influencer(v))
        .count();
    Ok(hits as f64 / k as f64)
}

/// Cumulative per-rank sums of the four comparison criteria for a seed
/// ordering: follower count, tweet count, times mentioned and times
/// retweeted.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CriteriaCurve {
    pub follow: Vec<u64>,
    pub tweet: Vec<u64>,
    pub mention: Vec<u64>,
    pub retweet: Vec<u64>,
}

impl CriteriaCurve {
    pub fn len(&self) -> usize {
        self.follow.len()
    }

    pub fn is_empty(&self) -> bool {
        self.follow.is_empty()
    }
}

/// Accumulates the four criteria over the seed list, in rank order.
pub fn criteria_curves(g: &SocialGraph, seeds: &[NodeId]) -> Result<CriteriaCurve, EvalError> {
    let mut curve = CriteriaCurve::default();
    let (mut f, mut t, mut m, mut r) = (0u64, 0u64, 0u64, 0u64);
    for &v in seeds {
        if v.index() >= g.node_count() {
            return Err(EvalError::UnknownNode(v.0));
        }
        f += g.follower_count(v) as u64;
        t += g.stats(v).tweet_count as u64;
        m += g.times_mentioned(v);
        r += g.times_retweeted(v);
        curve.follow.push(f);
        curve.tweet.push(t);
        curve.mention.push(m);
        curve.retweet.push(r);
    }
    Ok(curve)
}

/// For each seed-list prefix, the number of distinct nodes reachable
/// within two hops over edges carrying positive influence. Seeds in the
/// prefix do not count themselves.
pub fn affected_nodes(field: &InfluenceField, seeds: &[NodeId]) -> Vec<usize> {
    let n = field.node_count();
    let mut counts = Vec::with_capacity(seeds.len());
    for prefix_len in 1..=seeds.len() {
        let prefix = &seeds[..prefix_len];
        let members: HashSet<NodeId> = prefix.iter().copied().collect();
        let mut reached = vec![false; n];
        for &s in prefix {
            for &(y, v) in field.out_links(s) {
                if v <= 0.0 {
                    continue;
                }
                reached[y as usize] = true;
                for &(z, w) in field.out_links(NodeId(y)) {
                    if w > 0.0 {
                        reached[z as usize] = true;
                    }
                }
            }
        }
        let count = reached
            .iter()
            .enumerate()
            .filter(|&(i, &r)| r && !members.contains(&NodeId(i as u32)))
            .count();
        counts.push(count);
    }
    counts
}
