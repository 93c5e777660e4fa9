//! Baseline diffusion models: independent cascade (uniform, trivalency,
//! weighted cascade), linear threshold, and Monte Carlo spread
//! estimation with lazy-greedy seed selection on top.
//!
//! All randomness flows from a single master seed. Each Monte Carlo run
//! draws from its own ChaCha stream keyed by the run index, so runs are
//! reproducible, order-independent and embarrassingly parallel; the
//! reduction sums integer activation counts and is therefore exact.

use std::collections::VecDeque;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::graph::{NodeId, SocialGraph};
use crate::select::{lazy_greedy, SeedResult, SelectError};

/// Trivalency probabilities: each edge draws one of these uniformly.
pub const TRIVALENCY_CHOICES: [f64; 3] = [0.1, 0.01, 0.001];

/// How independent-cascade edge probabilities are assigned.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum EdgeProbScheme {
    /// Every edge succeeds with the same probability.
    Uniform(f64),
    /// Each edge draws i.i.d. from [`TRIVALENCY_CHOICES`] under the
    /// recorded seed.
    Trivalency { seed: u64 },
    /// p(u, v) = 1 / D_u with D_u the overall degree of the source.
    WeightedCascade,
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum DiffusionError {
    #[error("edge probability {0} is outside [0, 1]")]
    InvalidProbability(f64),
}

/// Materializes per-edge activation probabilities, parallel to
/// [`SocialGraph::edges`].
pub fn assign_edge_probs(
    g: &SocialGraph,
    scheme: EdgeProbScheme,
) -> Result<Vec<f64>, DiffusionError> {
    match scheme {
        EdgeProbScheme::Uniform(p) => {
            if !(0.0..=1.0).contains(&p) || p.is_nan() {
                return Err(DiffusionError::InvalidProbability(p));
            }
            Ok(vec![p; g.edge_count()])
        }
        EdgeProbScheme::Trivalency { seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            Ok((0..g.edge_count())
                .map(|_| TRIVALENCY_CHOICES[rng.random_range(0..TRIVALENCY_CHOICES.len())])
                .collect())
        }
        EdgeProbScheme::WeightedCascade => Ok(g
            .edges()
            .iter()
            .map(|e| {
                // The source of an edge has out-degree >= 1, so D_u > 0.
                let d = g.overall_degree(e.src).expect("edge endpoint exists");
                1.0 / d as f64
            })
            .collect()),
    }
}

/// One stochastic independent-cascade run. Each newly activated node
/// gets one chance per inactive out-neighbor, succeeding with the
/// edge's probability. Returns the activated nodes in ascending id
/// order.
pub fn run_icm<R: Rng>(
    g: &SocialGraph,
    probs: &[f64],
    seeds: &[NodeId],
    rng: &mut R,
) -> Vec<NodeId> {
    let mut active = vec![false; g.node_count()];
    let mut queue = VecDeque::new();
    for &s in seeds {
        if !active[s.index()] {
            active[s.index()] = true;
            queue.push_back(s);
        }
    }
    while let Some(u) = queue.pop_front() {
        for &e in g.out_edge_indices(u) {
            let v = g.edges()[e as usize].dst;
            if !active[v.index()] && rng.random::<f64>() < probs[e as usize] {
                active[v.index()] = true;
                queue.push_back(v);
            }
        }
    }
    collect_active(&active)
}

/// One linear-threshold run with thresholds drawn uniformly from [0, 1]
/// per node. A node activates once the edge weights from its active
/// in-neighbors total at least its threshold; activation iterates to a
/// fixpoint.
///
/// Thresholds are drawn lazily, on the first activation check of each
/// node; untouched nodes never consume randomness, which leaves the
/// joint distribution unchanged.
pub fn run_ltm<R: Rng>(
    g: &SocialGraph,
    edge_weights: &[f64],
    seeds: &[NodeId],
    rng: &mut R,
) -> Vec<NodeId> {
    let mut thresholds = vec![f64::NAN; g.node_count()];
    ltm_fixpoint(g, edge_weights, seeds, |v| {
        if thresholds[v].is_nan() {
            thresholds[v] = rng.random::<f64>();
        }
        thresholds[v]
    })
}

/// Linear-threshold run against externally fixed thresholds.
pub fn run_ltm_with_thresholds(
    g: &SocialGraph,
    edge_weights: &[f64],
    seeds: &[NodeId],
    thresholds: &[f64],
) -> Vec<NodeId> {
    ltm_fixpoint(g, edge_weights, seeds, |v| thresholds[v])
}

fn ltm_fixpoint<F>(
    g: &SocialGraph,
    edge_weights: &[f64],
    seeds: &[NodeId],
    mut threshold: F,
) -> Vec<NodeId>
where
    F: FnMut(usize) -> f64,
{
    let mut active = vec![false; g.node_count()];
    let mut weight_in = vec![0.0f64; g.node_count()];
    let mut queue = VecDeque::new();
    for &s in seeds {
        if !active[s.index()] {
            active[s.index()] = true;
            queue.push_back(s);
        }
    }
    while let Some(u) = queue.pop_front() {
        for &e in g.out_edge_indices(u) {
            let v = g.edges()[e as usize].dst;
            if active[v.index()] {
                continue;
            }
            weight_in[v.index()] += edge_weights[e as usize];
            if weight_in[v.index()] >= threshold(v.index()) {
                active[v.index()] = true;
                queue.push_back(v);
            }
        }
    }
    collect_active(&active)
}

fn collect_active(active: &[bool]) -> Vec<NodeId> {
    active
        .iter()
        .enumerate()
        .filter_map(|(i, &a)| a.then_some(NodeId(i as u32)))
        .collect()
}

/// A runnable diffusion process: edge probabilities for the independent
/// cascade or edge weights for the linear threshold model.
#[derive(Debug, Clone, PartialEq)]
pub enum CascadeModel {
    Icm { probs: Vec<f64> },
    Ltm { weights: Vec<f64> },
}

impl CascadeModel {
    pub fn icm(g: &SocialGraph, scheme: EdgeProbScheme) -> Result<Self, DiffusionError> {
        Ok(CascadeModel::Icm {
            probs: assign_edge_probs(g, scheme)?,
        })
    }

    /// Linear threshold with one uniform weight on every edge.
    pub fn ltm_uniform(g: &SocialGraph, weight: f64) -> Self {
        CascadeModel::Ltm {
            weights: vec![weight; g.edge_count()],
        }
    }

    pub fn run<R: Rng>(&self, g: &SocialGraph, seeds: &[NodeId], rng: &mut R) -> Vec<NodeId> {
        match self {
            CascadeModel::Icm { probs } => run_icm(g, probs, seeds, rng),
            CascadeModel::Ltm { weights } => run_ltm(g, weights, seeds, rng),
        }
    }
}

/// Monte Carlo estimate of the expected activation count: the mean of
/// `runs` independent cascades, each on its own run-indexed rng stream.
pub fn mc_spread(
    g: &SocialGraph,
    model: &CascadeModel,
    seeds: &[NodeId],
    runs: usize,
    master_seed: u64,
) -> f64 {
    assert!(runs >= 1, "at least one run required");
    let total: u64 = (0..runs as u64)
        .into_par_iter()
        .map(|run| {
            let mut rng = ChaCha8Rng::seed_from_u64(master_seed);
            rng.set_stream(run + 1);
            model.run(g, seeds, &mut rng).len() as u64
        })
        .sum();
    total as f64 / runs as f64
}

/// Lazy-greedy seed selection under Monte Carlo spread estimates.
///
/// Deterministic given the master seed: every spread estimate reuses the
/// same run-indexed streams. Estimates are noisy, so unlike the
/// evidential closed forms the result is only an approximation of the
/// plain greedy choice.
pub fn mc_greedy_select(
    g: &SocialGraph,
    model: &CascadeModel,
    k: usize,
    runs: usize,
    master_seed: u64,
) -> Result<SeedResult, SelectError> {
    let mut base_len = usize::MAX;
    let mut base_spread = 0.0;
    lazy_greedy(g.node_count(), k, |x, view| {
        if view.len() != base_len {
            base_spread = if view.list.is_empty() {
                0.0
            } else {
                mc_spread(g, model, view.list, runs, master_seed)
            };
            base_len = view.len();
        }
        let mut with_x = view.list.to_vec();
        with_x.push(x);
        mc_spread(g, model, &with_x, runs, master_seed) - base_spread
    })
}
