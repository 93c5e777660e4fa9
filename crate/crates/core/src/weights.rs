//! Per-edge weight vectors (follow, mention, retweet) and per-node
//! aggregates.
//!
//! Two link-weight estimators are provided. The whole-network variant
//! normalizes each component by a global maximum (|S_max|, |M_max|,
//! |T_max| respectively), which keeps a user with two followers from
//! scoring a perfect follow weight just because their one out-link
//! saturates a tiny denominator. The per-source variant keeps the
//! original local denominators (|S_u|, |M_u|, |T_u|) and is retained as
//! a comparison baseline.
//!
//! The whole-network follow numerator keeps the `+1` of the local
//! formula verbatim, so `w_f` may exceed 1 by up to 1/|S_max| on the
//! node realizing the maximum; downstream min-max rescaling absorbs
//! this, so no clamping is applied.

use crate::graph::{NodeId, SocialGraph};

/// One weight per relation kind, attached to an edge or a node.
#[derive(Debug, Default, Clone, Copy, PartialEq)]
pub struct WeightVector {
    pub follow: f64,
    pub mention: f64,
    pub retweet: f64,
}

impl WeightVector {
    pub fn new(follow: f64, mention: f64, retweet: f64) -> Self {
        Self {
            follow,
            mention,
            retweet,
        }
    }

    pub fn component(&self, c: WeightComponent) -> f64 {
        match c {
            WeightComponent::Follow => self.follow,
            WeightComponent::Mention => self.mention,
            WeightComponent::Retweet => self.retweet,
        }
    }
}

/// The three relation kinds a weight vector covers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WeightComponent {
    Follow,
    Mention,
    Retweet,
}

impl WeightComponent {
    pub const ALL: [WeightComponent; 3] = [
        WeightComponent::Follow,
        WeightComponent::Mention,
        WeightComponent::Retweet,
    ];
}

impl std::fmt::Display for WeightComponent {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            WeightComponent::Follow => "follow",
            WeightComponent::Mention => "mention",
            WeightComponent::Retweet => "retweet",
        };
        f.write_str(s)
    }
}

/// How node weights aggregate their out-link weights.
#[derive(Debug, Default, Clone, Copy, PartialEq, Eq)]
pub enum Aggregation {
    #[default]
    Sum,
    Mean,
}

/// Weight vectors parallel to [`SocialGraph::edges`].
#[derive(Debug, Clone, PartialEq)]
pub struct EdgeWeights {
    values: Vec<WeightVector>,
}

impl EdgeWeights {
    /// Wraps externally supplied per-edge vectors; `values` must be
    /// parallel to the graph's edge list.
    pub fn from_vec(values: Vec<WeightVector>) -> Self {
        Self { values }
    }

    pub fn values(&self) -> &[WeightVector] {
        &self.values
    }

    pub fn get(&self, edge_idx: usize) -> WeightVector {
        self.values[edge_idx]
    }
}

/// Whole-network link weights.
///
/// Per edge (u, v): `w_f = (|S_u ∩ P_v| + 1) / |S_max|`,
/// `w_m = |M_v(u)| / |M_max|`, `w_r = |R_u(v)| / |T_max|`, where the
/// maxima range over all nodes.
///
/// A component whose global maximum is zero (a graph with no mentions at
/// all, say) is forced to zero on every edge and reported in the second
/// return value so callers can warn instead of failing mid-pipeline.
pub fn link_weights_global(g: &SocialGraph) -> (EdgeWeights, Vec<WeightComponent>) {
    let s_max = g
        .nodes()
        .map(|v| g.follow_successors(v).len())
        .max()
        .unwrap_or(0) as f64;
    let m_max = g
        .nodes()
        .map(|v| g.stats(v).mention_made_count)
        .max()
        .unwrap_or(0) as f64;
    let t_max = g
        .nodes()
        .map(|v| g.stats(v).tweet_count)
        .max()
        .unwrap_or(0) as f64;

    let mut degenerate = Vec::new();
    if s_max == 0.0 {
        degenerate.push(WeightComponent::Follow);
    }
    if m_max == 0.0 {
        degenerate.push(WeightComponent::Mention);
    }
    if t_max == 0.0 {
        degenerate.push(WeightComponent::Retweet);
    }

    let values = g
        .edges()
        .iter()
        .map(|e| {
            let a = &e.activity;
            WeightVector {
                follow: if s_max > 0.0 {
                    (a.common_followers as f64 + 1.0) / s_max
                } else {
                    0.0
                },
                mention: if m_max > 0.0 {
                    a.mentions_of_src_by_dst as f64 / m_max
                } else {
                    0.0
                },
                retweet: if t_max > 0.0 {
                    a.retweets_of_src_by_dst as f64 / t_max
                } else {
                    0.0
                },
            }
        })
        .collect();
    (EdgeWeights { values }, degenerate)
}

/// Per-source link weights (comparison baseline).
///
/// Per edge (u, v): `w_f = (|S_u ∩ P_v| + 1) / |S_u|`,
/// `w_m = |M_u(v)| / |M_u|`, `w_r = |R_u(v)| / |T_u|`. A component with
/// a zero denominator yields zero.
pub fn link_weights_local(g: &SocialGraph) -> EdgeWeights {
    let values = g
        .edges()
        .iter()
        .map(|e| {
            let a = &e.activity;
            let s_u = g.follow_successors(e.src).len() as f64;
            let m_u = g.stats(e.src).mention_made_count as f64;
            let t_u = g.stats(e.src).tweet_count as f64;
            WeightVector {
                follow: if s_u > 0.0 {
                    (a.common_followers as f64 + 1.0) / s_u
                } else {
                    0.0
                },
                mention: if m_u > 0.0 {
                    g.mentions_made(e.src, e.dst) as f64 / m_u
                } else {
                    0.0
                },
                retweet: if t_u > 0.0 {
                    a.retweets_of_src_by_dst as f64 / t_u
                } else {
                    0.0
                },
            }
        })
        .collect();
    EdgeWeights { values }
}

/// Node weights: each node aggregates its out-link weights per
/// component.
pub fn node_weights(
    g: &SocialGraph,
    weights: &EdgeWeights,
    aggregation: Aggregation,
) -> Vec<WeightVector> {
    let mut acc = vec![WeightVector::default(); g.node_count()];
    let mut counts = vec![0usize; g.node_count()];
    for (idx, e) in g.edges().iter().enumerate() {
        let w = weights.get(idx);
        let a = &mut acc[e.src.index()];
        a.follow += w.follow;
        a.mention += w.mention;
        a.retweet += w.retweet;
        counts[e.src.index()] += 1;
    }
    if aggregation == Aggregation::Mean {
        for (a, &c) in acc.iter_mut().zip(&counts) {
            if c > 0 {
                let c = c as f64;
                a.follow /= c;
                a.mention /= c;
                a.retweet /= c;
            }
        }
    }
    acc
}

/// Convenience: the weight vector of a specific node from a precomputed
/// node-weight table.
pub fn node_weight(table: &[WeightVector], v: NodeId) -> WeightVector {
    table[v.index()]
}
