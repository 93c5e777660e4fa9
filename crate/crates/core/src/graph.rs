//! Directed social graph model built from an activity log.
//!
//! Nodes are users; one directed edge exists per ordered pair with any
//! follow, mention or retweet activity. Edge direction follows the data:
//! a follow edge points follower → followee, while mention and retweet
//! records on `(actor, target)` update the edge `(target, actor)` — the
//! counters they feed are "tweets of the source retweeted/mentioning-it
//! by the destination".
//!
//! User names are interned to dense integer ids in sorted name order, so
//! the same log produces the identical graph regardless of record order.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};

use thiserror::Error;

use crate::activity::{ActionKind, ActivityLog};

/// Dense node identifier, unique within one graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NodeId(pub u32);

impl NodeId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl std::fmt::Display for NodeId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.0.fmt(f)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("unknown node id {0}")]
    UnknownNode(u32),
}

/// Per-node activity counters.
#[derive(Debug, Default, Clone, Copy, PartialEq, Eq)]
pub struct NodeStats {
    /// |T_u|: number of distinct tweets published by the user.
    pub tweet_count: u32,
    /// |M_u|: number of distinct tweets in which the user mentions
    /// someone else.
    pub mention_made_count: u32,
}

/// Activity counters attached to a directed edge (src, dst).
#[derive(Debug, Default, Clone, Copy, PartialEq, Eq)]
pub struct EdgeActivity {
    /// True when src follows dst.
    pub follows: bool,
    /// |S_src ∩ P_dst| over the follow relation: users src follows that
    /// themselves follow dst.
    pub common_followers: u32,
    /// |M_dst(src)|: distinct tweets of dst in which src was mentioned.
    pub mentions_of_src_by_dst: u32,
    /// |R_src(dst)|: distinct tweets of src that dst retweeted.
    pub retweets_of_src_by_dst: u32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub src: NodeId,
    pub dst: NodeId,
    pub activity: EdgeActivity,
}

/// Immutable directed social graph.
#[derive(Debug, Clone, PartialEq)]
pub struct SocialGraph {
    names: Vec<String>,
    stats: Vec<NodeStats>,
    /// Sorted by (src, dst); unique per ordered pair.
    edges: Vec<Edge>,
    /// Outgoing edge indices per node, ascending dst.
    out_edges: Vec<Vec<u32>>,
    /// Incoming edge indices per node, ascending src.
    in_edges: Vec<Vec<u32>>,
    /// S_u: follow successors per node, sorted.
    follow_out: Vec<Vec<u32>>,
    /// P_v: follow predecessors per node, sorted.
    follow_in: Vec<Vec<u32>>,
    /// Node ids ordered by name, for name lookup.
    by_name: Vec<u32>,
}

impl SocialGraph {
    /// Builds the graph from a loaded activity log.
    ///
    /// Every user referenced anywhere in the log becomes a node, even
    /// when it only appears as a mention target; downstream weights for
    /// inactive users simply come out as zero.
    pub fn build(log: &ActivityLog) -> SocialGraph {
        let mut names: BTreeSet<&str> = BTreeSet::new();
        for r in &log.follows {
            names.insert(&r.follower);
            names.insert(&r.followee);
        }
        for r in &log.tweets {
            names.insert(&r.user);
        }
        for r in &log.actions {
            names.insert(&r.actor);
            names.insert(&r.target);
        }
        let names: Vec<String> = names.into_iter().map(str::to_string).collect();
        let id_of: HashMap<&str, u32> = names
            .iter()
            .enumerate()
            .map(|(i, n)| (n.as_str(), i as u32))
            .collect();
        let n = names.len();

        let mut stats = vec![NodeStats::default(); n];
        for r in &log.tweets {
            stats[id_of[r.user.as_str()] as usize].tweet_count += 1;
        }
        // |M_u| counts distinct tweets, not mention records: one tweet
        // mentioning three users is still one element of M_u.
        // Self-mentions do not qualify a tweet.
        let mut mention_tweets: HashSet<(u32, &str)> = HashSet::new();
        for r in &log.actions {
            if r.kind == ActionKind::Mention && r.actor != r.target {
                let actor = id_of[r.actor.as_str()];
                if mention_tweets.insert((actor, &r.tweet_id)) {
                    stats[actor as usize].mention_made_count += 1;
                }
            }
        }

        // Self-interactions are dropped at ingestion already; filtering
        // here keeps the no-self-loop invariant for logs built in code.
        let mut activity: BTreeMap<(u32, u32), EdgeActivity> = BTreeMap::new();
        for r in &log.follows {
            let src = id_of[r.follower.as_str()];
            let dst = id_of[r.followee.as_str()];
            if src != dst {
                activity.entry((src, dst)).or_default().follows = true;
            }
        }
        for r in &log.actions {
            let actor = id_of[r.actor.as_str()];
            let target = id_of[r.target.as_str()];
            if actor == target {
                continue;
            }
            let entry = activity.entry((target, actor)).or_default();
            match r.kind {
                ActionKind::Retweet => entry.retweets_of_src_by_dst += 1,
                ActionKind::Mention => entry.mentions_of_src_by_dst += 1,
            }
        }

        let mut follow_out = vec![Vec::new(); n];
        let mut follow_in = vec![Vec::new(); n];
        for (&(src, dst), act) in &activity {
            if act.follows {
                follow_out[src as usize].push(dst);
                follow_in[dst as usize].push(src);
            }
        }
        // BTreeMap iteration already yields ascending targets/sources.

        let edges: Vec<Edge> = activity
            .into_iter()
            .map(|((src, dst), mut act)| {
                act.common_followers =
                    sorted_intersection_len(&follow_out[src as usize], &follow_in[dst as usize]);
                Edge {
                    src: NodeId(src),
                    dst: NodeId(dst),
                    activity: act,
                }
            })
            .collect();

        Self::assemble(names, stats, edges, follow_out, follow_in)
    }

    /// Builds a graph whose edges are all follow relations, given
    /// directly as id pairs. Used by the synthetic generator and tests.
    ///
    /// Self-loops and duplicate pairs are dropped; ids must be < `n`.
    pub fn from_follow_edges(n: usize, pairs: &[(u32, u32)]) -> SocialGraph {
        let names: Vec<String> = (0..n).map(|i| i.to_string()).collect();
        let stats = vec![NodeStats::default(); n];
        let unique: BTreeSet<(u32, u32)> = pairs
            .iter()
            .copied()
            .filter(|&(s, d)| s != d && (s as usize) < n && (d as usize) < n)
            .collect();
        let mut follow_out = vec![Vec::new(); n];
        let mut follow_in = vec![Vec::new(); n];
        for &(src, dst) in &unique {
            follow_out[src as usize].push(dst);
            follow_in[dst as usize].push(src);
        }
        let edges: Vec<Edge> = unique
            .into_iter()
            .map(|(src, dst)| Edge {
                src: NodeId(src),
                dst: NodeId(dst),
                activity: EdgeActivity {
                    follows: true,
                    common_followers: sorted_intersection_len(
                        &follow_out[src as usize],
                        &follow_in[dst as usize],
                    ),
                    ..EdgeActivity::default()
                },
            })
            .collect();
        Self::assemble(names, stats, edges, follow_out, follow_in)
    }

    fn assemble(
        names: Vec<String>,
        stats: Vec<NodeStats>,
        edges: Vec<Edge>,
        follow_out: Vec<Vec<u32>>,
        follow_in: Vec<Vec<u32>>,
    ) -> SocialGraph {
        let n = names.len();
        let mut out_edges = vec![Vec::new(); n];
        let mut in_edges = vec![Vec::new(); n];
        for (idx, e) in edges.iter().enumerate() {
            out_edges[e.src.index()].push(idx as u32);
            in_edges[e.dst.index()].push(idx as u32);
        }
        // `edges` is sorted by (src, dst), so out lists are already in
        // ascending dst order and in lists in ascending src order.
        let mut by_name: Vec<u32> = (0..n as u32).collect();
        by_name.sort_by(|&a, &b| names[a as usize].cmp(&names[b as usize]));
        SocialGraph {
            names,
            stats,
            edges,
            out_edges,
            in_edges,
            follow_out,
            follow_in,
            by_name,
        }
    }

    pub fn node_count(&self) -> usize {
        self.names.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn nodes(&self) -> impl Iterator<Item = NodeId> + '_ {
        (0..self.names.len() as u32).map(NodeId)
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn name(&self, v: NodeId) -> &str {
        &self.names[v.index()]
    }

    pub fn node_id(&self, name: &str) -> Option<NodeId> {
        self.by_name
            .binary_search_by(|&i| self.names[i as usize].as_str().cmp(name))
            .ok()
            .map(|pos| NodeId(self.by_name[pos]))
    }

    pub fn stats(&self, v: NodeId) -> &NodeStats {
        &self.stats[v.index()]
    }

    fn check(&self, v: NodeId) -> Result<(), GraphError> {
        if v.index() < self.names.len() {
            Ok(())
        } else {
            Err(GraphError::UnknownNode(v.0))
        }
    }

    /// Distinct out-neighbors over the full edge set.
    pub fn successors(&self, v: NodeId) -> Result<Vec<NodeId>, GraphError> {
        self.check(v)?;
        Ok(self.out_edges[v.index()]
            .iter()
            .map(|&e| self.edges[e as usize].dst)
            .collect())
    }

    /// Distinct in-neighbors over the full edge set.
    pub fn predecessors(&self, v: NodeId) -> Result<Vec<NodeId>, GraphError> {
        self.check(v)?;
        Ok(self.in_edges[v.index()]
            .iter()
            .map(|&e| self.edges[e as usize].src)
            .collect())
    }

    pub fn out_degree(&self, v: NodeId) -> Result<usize, GraphError> {
        self.check(v)?;
        Ok(self.out_edges[v.index()].len())
    }

    pub fn in_degree(&self, v: NodeId) -> Result<usize, GraphError> {
        self.check(v)?;
        Ok(self.in_edges[v.index()].len())
    }

    /// Overall degree D_v = in-degree + out-degree.
    pub fn overall_degree(&self, v: NodeId) -> Result<usize, GraphError> {
        Ok(self.in_degree(v)? + self.out_degree(v)?)
    }

    /// Outgoing edge indices of `v` (ascending destination).
    pub fn out_edge_indices(&self, v: NodeId) -> &[u32] {
        &self.out_edges[v.index()]
    }

    /// Incoming edge indices of `v` (ascending source).
    pub fn in_edge_indices(&self, v: NodeId) -> &[u32] {
        &self.in_edges[v.index()]
    }

    /// S_u: follow successors, sorted by id.
    pub fn follow_successors(&self, v: NodeId) -> &[u32] {
        &self.follow_out[v.index()]
    }

    /// P_v: follow predecessors, sorted by id.
    pub fn follow_predecessors(&self, v: NodeId) -> &[u32] {
        &self.follow_in[v.index()]
    }

    /// Number of users following `v`.
    pub fn follower_count(&self, v: NodeId) -> usize {
        self.follow_in[v.index()].len()
    }

    /// The edge (u, v) if any activity connects the ordered pair.
    pub fn edge_between(&self, u: NodeId, v: NodeId) -> Option<&Edge> {
        let list = &self.out_edges[u.index()];
        list.binary_search_by(|&e| self.edges[e as usize].dst.cmp(&v))
            .ok()
            .map(|pos| &self.edges[list[pos] as usize])
    }

    /// |M_u(v)|: distinct tweets of `u` in which `v` was mentioned.
    ///
    /// Stored on the reverse edge (v, u), where `u` is the destination
    /// doing the mentioning.
    pub fn mentions_made(&self, u: NodeId, v: NodeId) -> u32 {
        self.edge_between(v, u)
            .map(|e| e.activity.mentions_of_src_by_dst)
            .unwrap_or(0)
    }

    /// Total times `v` was mentioned by anyone.
    pub fn times_mentioned(&self, v: NodeId) -> u64 {
        self.out_edges[v.index()]
            .iter()
            .map(|&e| self.edges[e as usize].activity.mentions_of_src_by_dst as u64)
            .sum()
    }

    /// Total times `v`'s tweets were retweeted by anyone.
    pub fn times_retweeted(&self, v: NodeId) -> u64 {
        self.out_edges[v.index()]
            .iter()
            .map(|&e| self.edges[e as usize].activity.retweets_of_src_by_dst as u64)
            .sum()
    }
}

fn sorted_intersection_len(a: &[u32], b: &[u32]) -> u32 {
    let (mut i, mut j, mut count) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                count += 1;
                i += 1;
                j += 1;
            }
        }
    }
    count
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::activity::{ActionRecord, FollowRecord, TweetRecord};

    fn follow(a: &str, b: &str) -> FollowRecord {
        FollowRecord {
            follower: a.into(),
            followee: b.into(),
        }
    }

    fn action(kind: ActionKind, actor: &str, target: &str, tweet: &str) -> ActionRecord {
        ActionRecord {
            kind,
            actor: actor.into(),
            target: target.into(),
            tweet_id: tweet.into(),
        }
    }

    #[test]
    fn single_follow_edge() {
        let log = ActivityLog {
            follows: vec![follow("a", "b")],
            ..ActivityLog::default()
        };
        let g = SocialGraph::build(&log);
        assert_eq!(g.node_count(), 2);
        assert_eq!(g.edge_count(), 1);
        let e = &g.edges()[0];
        assert_eq!(g.name(e.src), "a");
        assert_eq!(g.name(e.dst), "b");
        assert!(e.activity.follows);
        assert_eq!(e.activity.common_followers, 0);
    }

    #[test]
    fn retweets_update_reverse_edge_and_counts() {
        // v retweets u twice, u has four tweets.
        let log = ActivityLog {
            tweets: (0..4)
                .map(|i| TweetRecord {
                    user: "u".into(),
                    tweet_id: format!("t{i}"),
                })
                .collect(),
            actions: vec![
                action(ActionKind::Retweet, "v", "u", "t0"),
                action(ActionKind::Retweet, "v", "u", "t1"),
            ],
            ..ActivityLog::default()
        };
        let g = SocialGraph::build(&log);
        let u = g.node_id("u").unwrap();
        let v = g.node_id("v").unwrap();
        let e = g.edge_between(u, v).expect("edge (u, v)");
        assert_eq!(e.activity.retweets_of_src_by_dst, 2);
        assert_eq!(g.stats(u).tweet_count, 4);
        assert_eq!(g.times_retweeted(u), 2);
    }

    #[test]
    fn mention_direction_and_lookup() {
        // b's tweet mentions a: edge (a, b) carries the count, and
        // mentions_made(b, a) recovers |M_b(a)| from the reverse side.
        let log = ActivityLog {
            actions: vec![action(ActionKind::Mention, "b", "a", "t1")],
            ..ActivityLog::default()
        };
        let g = SocialGraph::build(&log);
        let a = g.node_id("a").unwrap();
        let b = g.node_id("b").unwrap();
        let e = g.edge_between(a, b).expect("edge (a, b)");
        assert_eq!(e.activity.mentions_of_src_by_dst, 1);
        assert_eq!(g.mentions_made(b, a), 1);
        assert_eq!(g.mentions_made(a, b), 0);
        assert_eq!(g.times_mentioned(a), 1);
    }

    #[test]
    fn degree_queries_on_network_example() {
        // u1 → u2, u1 → u3, u4 → u1.
        let log = ActivityLog {
            follows: vec![follow("u1", "u2"), follow("u1", "u3"), follow("u4", "u1")],
            ..ActivityLog::default()
        };
        let g = SocialGraph::build(&log);
        let u1 = g.node_id("u1").unwrap();
        let succ = g.successors(u1).unwrap();
        let names: Vec<&str> = succ.iter().map(|&v| g.name(v)).collect();
        assert_eq!(names, vec!["u2", "u3"]);
        let pred = g.predecessors(u1).unwrap();
        assert_eq!(g.name(pred[0]), "u4");
        assert_eq!(g.overall_degree(u1).unwrap(), 3);
    }

    #[test]
    fn isolated_node_and_chain_degrees() {
        let log = ActivityLog {
            follows: vec![follow("a", "b"), follow("b", "c")],
            tweets: vec![TweetRecord {
                user: "loner".into(),
                tweet_id: "t".into(),
            }],
            ..ActivityLog::default()
        };
        let g = SocialGraph::build(&log);
        let loner = g.node_id("loner").unwrap();
        assert!(g.successors(loner).unwrap().is_empty());
        assert!(g.predecessors(loner).unwrap().is_empty());
        assert_eq!(g.overall_degree(loner).unwrap(), 0);
        let b = g.node_id("b").unwrap();
        assert_eq!(g.overall_degree(b).unwrap(), 2);
    }

    #[test]
    fn unknown_node_is_an_error() {
        let g = SocialGraph::build(&ActivityLog::default());
        assert_eq!(
            g.successors(NodeId(0)).unwrap_err(),
            GraphError::UnknownNode(0)
        );
    }

    #[test]
    fn common_followers_counts_follow_paths() {
        // u follows x and y; x and y follow v; u follows v directly too.
        let log = ActivityLog {
            follows: vec![
                follow("u", "x"),
                follow("u", "y"),
                follow("u", "v"),
                follow("x", "v"),
                follow("y", "v"),
            ],
            ..ActivityLog::default()
        };
        let g = SocialGraph::build(&log);
        let u = g.node_id("u").unwrap();
        let v = g.node_id("v").unwrap();
        let e = g.edge_between(u, v).unwrap();
        assert_eq!(e.activity.common_followers, 2);
    }

    #[test]
    fn build_is_order_independent() {
        let mut log = ActivityLog {
            follows: vec![follow("b", "c"), follow("a", "b"), follow("c", "a")],
            tweets: vec![
                TweetRecord {
                    user: "c".into(),
                    tweet_id: "t2".into(),
                },
                TweetRecord {
                    user: "a".into(),
                    tweet_id: "t1".into(),
                },
            ],
            actions: vec![
                action(ActionKind::Retweet, "b", "a", "t1"),
                action(ActionKind::Mention, "a", "c", "t9"),
            ],
            ..ActivityLog::default()
        };
        let g1 = SocialGraph::build(&log);
        log.follows.reverse();
        log.tweets.reverse();
        log.actions.reverse();
        let g2 = SocialGraph::build(&log);
        assert_eq!(g1, g2);
    }

    #[test]
    fn edge_count_matches_distinct_active_pairs() {
        // Follow a→b plus mention by b of a land on distinct pairs:
        // (a,b) twice (merged) and nothing else.
        let log = ActivityLog {
            follows: vec![follow("a", "b")],
            actions: vec![action(ActionKind::Mention, "b", "a", "t1")],
            ..ActivityLog::default()
        };
        let g = SocialGraph::build(&log);
        assert_eq!(g.edge_count(), 1);
        let e = &g.edges()[0];
        assert!(e.activity.follows);
        assert_eq!(e.activity.mentions_of_src_by_dst, 1);
    }

    #[test]
    fn retweet_totals_bounded_by_log_records() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        let mut actions = Vec::new();
        let mut per_user = std::collections::HashMap::new();
        for i in 0..60 {
            let target = rng.random_range(0..6u32);
            let actor = rng.random_range(0..6u32);
            if actor == target {
                continue;
            }
            actions.push(action(
                ActionKind::Retweet,
                &format!("u{actor}"),
                &format!("u{target}"),
                &format!("t{i}"),
            ));
            *per_user.entry(format!("u{target}")).or_insert(0u64) += 1;
        }
        let g = SocialGraph::build(&ActivityLog {
            actions,
            ..ActivityLog::default()
        });
        for v in g.nodes() {
            let total: u64 = g
                .edges()
                .iter()
                .filter(|e| e.src == v)
                .map(|e| e.activity.retweets_of_src_by_dst as u64)
                .sum();
            let records = per_user.get(g.name(v)).copied().unwrap_or(0);
            assert!(total <= records, "{}: {total} > {records}", g.name(v));
        }
    }

    #[test]
    fn from_follow_edges_matches_log_build() {
        let log = ActivityLog {
            follows: vec![follow("0", "1"), follow("1", "2"), follow("0", "2")],
            ..ActivityLog::default()
        };
        let from_log = SocialGraph::build(&log);
        let direct = SocialGraph::from_follow_edges(3, &[(0, 1), (1, 2), (0, 2), (2, 2)]);
        assert_eq!(from_log, direct);
    }
}
