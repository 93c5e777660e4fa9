//! Credit-distribution comparison model, in the single-action form: the
//! credit a node earns for influencing a neighbor is a fixed per-edge
//! quantity, either the evidential link influence or a direct count of
//! observed retweet propagations.
//!
//! The aggregate credit a seed set earns from one node is
//! `Γ(S, v) = 1` for members and otherwise
//! `Σ_{y∈D_IN(v)} Inf(S, y) · Γ(y, v)` with `Inf(S, y)` the one-level
//! set influence over the credit table. Selection maximizes
//! `Σ_v Γ(S, v)` with the lazy-greedy driver, re-evaluating popped
//! candidates by exact recomputation.

use crate::graph::{NodeId, SocialGraph};
use crate::influence::InfluenceField;
use crate::select::{lazy_greedy, SeedResult, SelectError};

/// Per-edge influence credits with the adjacency needed to aggregate
/// them. Credits are non-negative but unbounded (counts are legal).
#[derive(Debug, Clone, PartialEq)]
pub struct CreditTable {
    n: usize,
    /// (dst, credit) per source, ascending dst.
    out: Vec<Vec<(u32, f64)>>,
    /// (src, credit) per destination, ascending src.
    inbound: Vec<Vec<(u32, f64)>>,
}

impl CreditTable {
    /// Single-action reduction of the evidential field: the credit on
    /// every edge is its link influence.
    pub fn from_influence_field(field: &InfluenceField) -> Self {
        let mut table = Self::empty(field.node_count());
        for (&(src, dst), &v) in field.edges().iter().zip(field.values()) {
            table.push_edge(src.0, dst.0, v);
        }
        table
    }

    /// Direct-credit scan of observed propagations: each retweet of u by
    /// v adds one credit to (u, v).
    pub fn from_graph(g: &SocialGraph) -> Self {
        let mut table = Self::empty(g.node_count());
        for e in g.edges() {
            let credit = e.activity.retweets_of_src_by_dst as f64;
            if credit > 0.0 {
                table.push_edge(e.src.0, e.dst.0, credit);
            }
        }
        table
    }

    fn empty(n: usize) -> Self {
        Self {
            n,
            out: vec![Vec::new(); n],
            inbound: vec![Vec::new(); n],
        }
    }

    fn push_edge(&mut self, src: u32, dst: u32, credit: f64) {
        debug_assert!(credit >= 0.0);
        self.out[src as usize].push((dst, credit));
        self.inbound[dst as usize].push((src, credit));
        // Insertion happens in ascending (src, dst) order from both
        // constructors, so the lists stay sorted.
    }

    pub fn node_count(&self) -> usize {
        self.n
    }

    /// Γ(u, v); absent pairs carry 0.
    pub fn credit(&self, u: NodeId, v: NodeId) -> f64 {
        let list = &self.out[u.index()];
        match list.binary_search_by_key(&v.0, |&(d, _)| d) {
            Ok(pos) => list[pos].1,
            Err(_) => 0.0,
        }
    }

    /// One-level set influence over the credit table: 1 for members,
    /// otherwise the summed in-credit from S.
    fn set_credit_l1(&self, seeds: &[NodeId], y: NodeId) -> f64 {
        if seeds.contains(&y) {
            return 1.0;
        }
        seeds.iter().map(|&u| self.credit(u, y)).sum()
    }

    /// Γ(S, v): total credit S earns for influencing v.
    pub fn set_credit(&self, seeds: &[NodeId], v: NodeId) -> f64 {
        if seeds.contains(&v) {
            return 1.0;
        }
        self.inbound[v.index()]
            .iter()
            .map(|&(y, credit_yv)| self.set_credit_l1(seeds, NodeId(y)) * credit_yv)
            .sum()
    }

    /// σ_CD(S) = Σ_v Γ(S, v).
    pub fn total_credit(&self, seeds: &[NodeId]) -> f64 {
        (0..self.n as u32)
            .map(|v| self.set_credit(seeds, NodeId(v)))
            .sum()
    }
}

/// Seed selection maximizing total credit with the lazy-greedy driver.
/// Gains are exact recomputations of `σ_CD(S ∪ {x}) − σ_CD(S)`; ties
/// break by ascending node id, so an empty credit table yields the
/// first k node ids.
pub fn cd_select(table: &CreditTable, k: usize) -> Result<SeedResult, SelectError> {
    let mut base_len = usize::MAX;
    let mut base = 0.0;
    lazy_greedy(table.node_count(), k, |x, view| {
        if view.len() != base_len {
            base = table.total_credit(view.list);
            base_len = view.len();
        }
        let mut with_x = view.list.to_vec();
        with_x.push(x);
        table.total_credit(&with_x) - base
    })
}
