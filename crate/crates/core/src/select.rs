//! Seed-set selection: lazy greedy (CELF) maximization of the
//! evidential spread, plus a naive greedy and an exhaustive optimizer
//! used as oracles.
//!
//! Marginal gains default to the closed forms
//! `MG_S(x) = 1 + Σ_{v∈V∖S} Inf(x, v)` (one level) and its two-hop
//! analogue. These credit a flat 1 for the candidate itself, so they
//! differ from the exact spread difference `σ(S∪{x}) − σ(S)` whenever x
//! already receives influence from S; [`GainMode::ExactRecompute`]
//! selects by the exact difference instead, so the divergence can be
//! studied rather than guessed at.
//!
//! Ties always break toward the smaller node id, which makes every
//! optimizer here deterministic and lets the CELF and naive paths be
//! compared seed by seed.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::time::{Duration, Instant};

use thiserror::Error;

use crate::graph::NodeId;
use crate::influence::{InfluenceField, Level};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SelectError {
    #[error("node {0} is already a seed")]
    AlreadySeed(u32),
    #[error("k = {k} exceeds the {max} selectable nodes")]
    KTooLarge { k: usize, max: usize },
    #[error("{combinations} candidate subsets exceed the enumeration limit {limit}")]
    TooLargeToEnumerate { combinations: u128, limit: u128 },
}

/// How the optimizer scores a candidate against the current seed set.
#[derive(Debug, Default, Clone, Copy, PartialEq, Eq)]
pub enum GainMode {
    /// The closed-form marginal gains.
    #[default]
    ClosedForm,
    /// Exact spread difference `σ_Bel(S ∪ {x}) − σ_Bel(S)`.
    ExactRecompute,
}

/// Ordered seed list with the gain recorded at each selection and the
/// running total of those gains.
#[derive(Debug, Clone, PartialEq)]
pub struct SeedResult {
    pub seeds: Vec<NodeId>,
    pub marginal_gains: Vec<f64>,
    /// Prefix sums of `marginal_gains`; under
    /// [`GainMode::ExactRecompute`] this telescopes to
    /// `σ_Bel(seeds[..=i])`.
    pub sigma_curve: Vec<f64>,
    pub elapsed: Duration,
}

/// Current seed set from the optimizer's point of view: ordered list
/// plus a membership mask for O(1) lookups.
pub(crate) struct SeedView<'a> {
    pub list: &'a [NodeId],
    pub mask: &'a [bool],
}

impl SeedView<'_> {
    #[inline]
    pub fn contains(&self, v: NodeId) -> bool {
        self.mask[v.index()]
    }

    pub fn len(&self) -> usize {
        self.list.len()
    }
}

/// One-level closed-form marginal gain
/// `MG_S(x) = 1 + Σ_{v∈V∖S} Inf(x, v)`.
pub fn marginal_gain_l1(
    field: &InfluenceField,
    seeds: &[NodeId],
    x: NodeId,
) -> Result<f64, SelectError> {
    if seeds.contains(&x) {
        return Err(SelectError::AlreadySeed(x.0));
    }
    let mut gain = 1.0;
    for &(d, v) in field.out_links(x) {
        if !seeds.contains(&NodeId(d)) {
            gain += v;
        }
    }
    Ok(gain)
}

/// Two-level closed-form marginal gain
/// `MG_S(x) = 1 + Σ_{v∈V∖S} Σ_{y∈D_IN(v)∪{v}} Inf(x, y) · Inf(y, v)`.
pub fn marginal_gain_l2(
    field: &InfluenceField,
    seeds: &[NodeId],
    x: NodeId,
) -> Result<f64, SelectError> {
    if seeds.contains(&x) {
        return Err(SelectError::AlreadySeed(x.0));
    }
    let n = field.node_count();
    let mut from_x = vec![0.0; n];
    for &(d, v) in field.out_links(x) {
        from_x[d as usize] = v;
    }
    let mut gain = 1.0;
    for v in 0..n as u32 {
        let v = NodeId(v);
        if seeds.contains(&v) {
            continue;
        }
        // The y = v term reduces to Inf(x, v).
        let mut c = from_x[v.index()];
        for &(y, inf_yv) in field.in_links(v) {
            c += from_x[y as usize] * inf_yv;
        }
        gain += c;
    }
    Ok(gain)
}

struct HeapEntry {
    gain: f64,
    node: u32,
    /// Seed-set size at evaluation time; an entry is fresh while the
    /// seed set has not grown since.
    round: usize,
}

impl PartialEq for HeapEntry {
    fn eq(&self, other: &Self) -> bool {
        self.gain == other.gain && self.node == other.node
    }
}

impl Eq for HeapEntry {}

impl PartialOrd for HeapEntry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for HeapEntry {
    fn cmp(&self, other: &Self) -> Ordering {
        // Max gain first; among equal gains the smaller node id wins.
        self.gain
            .total_cmp(&other.gain)
            .then_with(|| other.node.cmp(&self.node))
    }
}

/// Lazy greedy driver: keeps stale gains in a max-heap and re-evaluates
/// only the entry at the top. A popped entry is selected exactly when it
/// was (re)evaluated against the current seed set, so the gain recorded
/// for each seed is its true score at selection time.
///
/// Matches the plain greedy selection whenever gains are non-increasing
/// in the seed set, which holds for both closed-form and exact gains.
pub(crate) fn lazy_greedy<F>(n: usize, k: usize, mut gain: F) -> Result<SeedResult, SelectError>
where
    F: FnMut(NodeId, &SeedView) -> f64,
{
    if k > n {
        return Err(SelectError::KTooLarge { k, max: n });
    }
    let start = Instant::now();
    let mut mask = vec![false; n];
    let mut seeds: Vec<NodeId> = Vec::with_capacity(k);
    let mut gains = Vec::with_capacity(k);
    let mut curve = Vec::with_capacity(k);

    let mut heap = BinaryHeap::with_capacity(n);
    for node in 0..n as u32 {
        let view = SeedView {
            list: &seeds,
            mask: &mask,
        };
        let g = gain(NodeId(node), &view);
        heap.push(HeapEntry {
            gain: g,
            node,
            round: 0,
        });
    }

    while seeds.len() < k {
        let top = heap.pop().expect("unselected entries remain");
        if top.round == seeds.len() {
            mask[top.node as usize] = true;
            seeds.push(NodeId(top.node));
            curve.push(curve.last().copied().unwrap_or(0.0) + top.gain);
            gains.push(top.gain);
        } else {
            let view = SeedView {
                list: &seeds,
                mask: &mask,
            };
            let g = gain(NodeId(top.node), &view);
            heap.push(HeapEntry {
                gain: g,
                node: top.node,
                round: seeds.len(),
            });
        }
    }

    Ok(SeedResult {
        seeds,
        marginal_gains: gains,
        sigma_curve: curve,
        elapsed: start.elapsed(),
    })
}

/// Plain greedy driver: re-scores every candidate each round.
pub(crate) fn plain_greedy<F>(n: usize, k: usize, mut gain: F) -> Result<SeedResult, SelectError>
where
    F: FnMut(NodeId, &SeedView) -> f64,
{
    if k > n {
        return Err(SelectError::KTooLarge { k, max: n });
    }
    let start = Instant::now();
    let mut mask = vec![false; n];
    let mut seeds: Vec<NodeId> = Vec::with_capacity(k);
    let mut gains = Vec::with_capacity(k);
    let mut curve = Vec::with_capacity(k);

    for _ in 0..k {
        let mut best: Option<(f64, u32)> = None;
        for node in 0..n as u32 {
            if mask[node as usize] {
                continue;
            }
            let view = SeedView {
                list: &seeds,
                mask: &mask,
            };
            let g = gain(NodeId(node), &view);
            let better = match best {
                None => true,
                Some((bg, bn)) => g > bg || (g == bg && node < bn),
            };
            if better {
                best = Some((g, node));
            }
        }
        let (g, node) = best.expect("k <= n leaves a candidate");
        mask[node as usize] = true;
        seeds.push(NodeId(node));
        curve.push(curve.last().copied().unwrap_or(0.0) + g);
        gains.push(g);
    }

    Ok(SeedResult {
        seeds,
        marginal_gains: gains,
        sigma_curve: curve,
        elapsed: start.elapsed(),
    })
}

/// Builds the gain closure shared by [`celf_select_with`] and
/// [`naive_greedy_with`].
fn evidential_gain<'a>(
    field: &'a InfluenceField,
    level: Level,
    mode: GainMode,
) -> impl FnMut(NodeId, &SeedView) -> f64 + 'a {
    // Total two-hop credit over all of V, per candidate:
    // Σ_y Inf(x, y) · (1 + W_out(y)); subtracting each seed's
    // contribution afterwards avoids the full double sum per call.
    let two_hop_total: Vec<f64> = match (level, mode) {
        (Level::Two, GainMode::ClosedForm) => (0..field.node_count() as u32)
            .map(|x| {
                field
                    .out_links(NodeId(x))
                    .iter()
                    .map(|&(y, v)| v * (1.0 + field.out_influence_sum(NodeId(y))))
                    .sum()
            })
            .collect(),
        _ => Vec::new(),
    };

    let mut base_len = usize::MAX;
    let mut base_sigma = 0.0;

    move |x: NodeId, view: &SeedView| -> f64 {
        match mode {
            GainMode::ClosedForm => match level {
                Level::One => {
                    let mut gain = 1.0 + field.out_influence_sum(x);
                    for &(d, v) in field.out_links(x) {
                        if view.contains(NodeId(d)) {
                            gain -= v;
                        }
                    }
                    gain
                }
                Level::Two => {
                    let mut gain = 1.0 + two_hop_total[x.index()];
                    for &s in view.list {
                        let mut c = field.influence(x, s);
                        for &(y, inf_ys) in field.in_links(s) {
                            c += field.influence(x, NodeId(y)) * inf_ys;
                        }
                        gain -= c;
                    }
                    gain
                }
            },
            GainMode::ExactRecompute => {
                if view.len() != base_len {
                    base_sigma = field.sigma_bel(view.list, level);
                    base_len = view.len();
                }
                let mut with_x = view.list.to_vec();
                with_x.push(x);
                field.sigma_bel(&with_x, level) - base_sigma
            }
        }
    }
}

/// CELF seed selection with the default closed-form gains.
pub fn celf_select(
    field: &InfluenceField,
    k: usize,
    level: Level,
) -> Result<SeedResult, SelectError> {
    celf_select_with(field, k, level, GainMode::default())
}

/// CELF seed selection with an explicit gain mode.
pub fn celf_select_with(
    field: &InfluenceField,
    k: usize,
    level: Level,
    mode: GainMode,
) -> Result<SeedResult, SelectError> {
    lazy_greedy(field.node_count(), k, evidential_gain(field, level, mode))
}

/// Naive greedy oracle: O(k · |V|) gain evaluations, same tie rule.
pub fn naive_greedy(
    field: &InfluenceField,
    k: usize,
    level: Level,
) -> Result<SeedResult, SelectError> {
    naive_greedy_with(field, k, level, GainMode::default())
}

/// Naive greedy with an explicit gain mode.
pub fn naive_greedy_with(
    field: &InfluenceField,
    k: usize,
    level: Level,
    mode: GainMode,
) -> Result<SeedResult, SelectError> {
    plain_greedy(field.node_count(), k, evidential_gain(field, level, mode))
}

/// Enumeration guard for [`exhaustive_opt`].
pub const ENUMERATION_LIMIT: u128 = 1_000_000;

/// Global optimum of `σ_Bel` by subset enumeration. Ties resolve to the
/// lexicographically smallest seed set.
pub fn exhaustive_opt(
    field: &InfluenceField,
    k: usize,
    level: Level,
) -> Result<(Vec<NodeId>, f64), SelectError> {
    let n = field.node_count();
    if k > n {
        return Err(SelectError::KTooLarge { k, max: n });
    }
    let combinations = binomial(n as u128, k as u128);
    if combinations > ENUMERATION_LIMIT {
        return Err(SelectError::TooLargeToEnumerate {
            combinations,
            limit: ENUMERATION_LIMIT,
        });
    }

    let mut best: Option<(f64, Vec<NodeId>)> = None;
    let mut indices: Vec<usize> = (0..k).collect();
    loop {
        let subset: Vec<NodeId> = indices.iter().map(|&i| NodeId(i as u32)).collect();
        let sigma = field.sigma_bel(&subset, level);
        // Strict improvement keeps the first (lexicographically
        // smallest) maximizer.
        if best.as_ref().is_none_or(|(b, _)| sigma > *b) {
            best = Some((sigma, subset));
        }
        if !advance(&mut indices, n) {
            break;
        }
    }
    let (sigma, seeds) = best.expect("at least the empty or first subset evaluated");
    Ok((seeds, sigma))
}

fn binomial(n: u128, k: u128) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.saturating_mul(n - i) / (i + 1);
    }
    acc
}

/// Advances a k-combination index vector in lexicographic order.
fn advance(indices: &mut [usize], n: usize) -> bool {
    let k = indices.len();
    if k == 0 {
        return false;
    }
    let mut i = k;
    while i > 0 {
        i -= 1;
        if indices[i] < n - k + i {
            indices[i] += 1;
            for j in i + 1..k {
                indices[j] = indices[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn field(n: usize, edges: &[(u32, u32, f64)]) -> InfluenceField {
        InfluenceField::new(n, edges.to_vec()).unwrap()
    }

    fn ids(xs: &[u32]) -> Vec<NodeId> {
        xs.iter().copied().map(NodeId).collect()
    }

    fn random_field(rng: &mut ChaCha8Rng, n: u32, p: f64) -> InfluenceField {
        let mut edges = Vec::new();
        for s in 0..n {
            for d in 0..n {
                if s != d && rng.random::<f64>() < p {
                    edges.push((s, d, rng.random::<f64>()));
                }
            }
        }
        InfluenceField::new(n as usize, edges).unwrap()
    }

    #[test]
    fn isolated_candidate_gains_one() {
        let f = field(3, &[(1, 2, 0.5)]);
        assert_eq!(marginal_gain_l1(&f, &[], NodeId(0)).unwrap(), 1.0);
        assert_eq!(marginal_gain_l2(&f, &[], NodeId(0)).unwrap(), 1.0);
    }

    #[test]
    fn single_out_edge_gain() {
        let f = field(3, &[(0, 1, 0.4)]);
        assert_abs_diff_eq!(marginal_gain_l1(&f, &[], NodeId(0)).unwrap(), 1.4);
        // Once the target joins the seed set its term drops out.
        assert_abs_diff_eq!(
            marginal_gain_l1(&f, &ids(&[1]), NodeId(0)).unwrap(),
            1.0
        );
    }

    #[test]
    fn already_seeded_candidate_is_rejected() {
        let f = field(2, &[(0, 1, 0.4)]);
        assert_eq!(
            marginal_gain_l1(&f, &ids(&[0]), NodeId(0)),
            Err(SelectError::AlreadySeed(0))
        );
        assert_eq!(
            marginal_gain_l2(&f, &ids(&[0]), NodeId(0)),
            Err(SelectError::AlreadySeed(0))
        );
    }

    #[test]
    fn two_level_gain_on_path() {
        // x → a → v with 0.5 and 0.4: the a-term contributes
        // Inf(x, a) · 1 and the v-term the 0.5 · 0.4 product.
        let f = field(3, &[(0, 1, 0.5), (1, 2, 0.4)]);
        assert_abs_diff_eq!(
            marginal_gain_l2(&f, &[], NodeId(0)).unwrap(),
            1.7,
            epsilon = 1e-12
        );
        // Seeding a removes its whole inner sum.
        assert_abs_diff_eq!(
            marginal_gain_l2(&f, &ids(&[1]), NodeId(0)).unwrap(),
            1.2,
            epsilon = 1e-12
        );
    }

    #[test]
    fn celf_first_seed_maximizes_initial_gain() {
        let f = field(4, &[(0, 1, 0.2), (2, 1, 0.9), (2, 3, 0.3)]);
        let result = celf_select(&f, 1, Level::One).unwrap();
        assert_eq!(result.seeds, ids(&[2]));
        assert_abs_diff_eq!(result.marginal_gains[0], 2.2, epsilon = 1e-12);
    }

    #[test]
    fn celf_selects_all_nodes_when_k_is_n() {
        let f = field(3, &[(0, 1, 0.5), (1, 2, 0.3)]);
        let result = celf_select(&f, 3, Level::One).unwrap();
        let mut sorted = result.seeds.clone();
        sorted.sort();
        assert_eq!(sorted, ids(&[0, 1, 2]));
        // Under exact gains the curve telescopes to σ_Bel(V) = |V|.
        let exact = celf_select_with(&f, 3, Level::One, GainMode::ExactRecompute).unwrap();
        assert_abs_diff_eq!(
            *exact.sigma_curve.last().unwrap(),
            3.0,
            epsilon = 1e-9
        );
    }

    #[test]
    fn k_too_large_is_rejected() {
        let f = field(3, &[(0, 1, 0.5)]);
        assert_eq!(
            celf_select(&f, 4, Level::One).unwrap_err(),
            SelectError::KTooLarge { k: 4, max: 3 }
        );
        assert_eq!(
            naive_greedy(&f, 4, Level::One).unwrap_err(),
            SelectError::KTooLarge { k: 4, max: 3 }
        );
    }

    #[test]
    fn celf_matches_naive_greedy_on_random_fields() {
        let mut rng = ChaCha8Rng::seed_from_u64(2024);
        for trial in 0..20 {
            let n = rng.random_range(2..=20);
            let f = random_field(&mut rng, n, 0.25);
            let k = rng.random_range(1..=(n as usize).min(4));
            for level in [Level::One, Level::Two] {
                for mode in [GainMode::ClosedForm, GainMode::ExactRecompute] {
                    let celf = celf_select_with(&f, k, level, mode).unwrap();
                    let naive = naive_greedy_with(&f, k, level, mode).unwrap();
                    assert_eq!(celf.seeds, naive.seeds, "trial {trial}");
                    for (a, b) in celf.marginal_gains.iter().zip(&naive.marginal_gains) {
                        assert_abs_diff_eq!(a, b, epsilon = 1e-9);
                    }
                }
            }
        }
    }

    #[test]
    fn optimized_gains_match_public_closed_forms() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let f = random_field(&mut rng, 15, 0.3);
        let result = celf_select(&f, 4, Level::Two).unwrap();
        for (i, (&seed, &gain)) in result
            .seeds
            .iter()
            .zip(&result.marginal_gains)
            .enumerate()
        {
            let prefix = &result.seeds[..i];
            let expect = marginal_gain_l2(&f, prefix, seed).unwrap();
            assert_abs_diff_eq!(gain, expect, epsilon = 1e-9);
        }
    }

    #[test]
    fn sigma_curve_is_prefix_sum_of_gains() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let f = random_field(&mut rng, 12, 0.3);
        let result = celf_select(&f, 5, Level::One).unwrap();
        let mut acc = 0.0;
        for (g, c) in result.marginal_gains.iter().zip(&result.sigma_curve) {
            acc += g;
            assert_abs_diff_eq!(acc, *c, epsilon = 1e-9);
        }
        assert!(result
            .sigma_curve
            .windows(2)
            .all(|w| w[1] >= w[0] - 1e-12));
    }

    #[test]
    fn exhaustive_opt_small_cases() {
        let f = field(3, &[(0, 1, 0.5), (1, 2, 0.3)]);
        let (all, sigma) = exhaustive_opt(&f, 3, Level::One).unwrap();
        assert_eq!(all, ids(&[0, 1, 2]));
        assert_abs_diff_eq!(sigma, 3.0, epsilon = 1e-12);
        // k = 1: greedy is optimal.
        let (best, _) = exhaustive_opt(&f, 1, Level::One).unwrap();
        let greedy = naive_greedy(&f, 1, Level::One).unwrap();
        assert_eq!(best, greedy.seeds);
    }

    #[test]
    fn exhaustive_guard_trips() {
        let f = random_field(&mut ChaCha8Rng::seed_from_u64(1), 60, 0.05);
        assert!(matches!(
            exhaustive_opt(&f, 8, Level::One),
            Err(SelectError::TooLargeToEnumerate { .. })
        ));
    }

    #[test]
    fn closed_form_overcredits_by_exactly_the_incoming_influence() {
        // The closed form books a flat 1 for the candidate, while the
        // exact difference books 1 minus what the seeds already exert
        // on it; the gap is exactly that incoming influence.
        let f = field(4, &[(0, 2, 0.6), (1, 2, 0.7), (2, 3, 0.4)]);
        let seeds = ids(&[0, 1]);
        let x = NodeId(2);
        let closed = marginal_gain_l1(&f, &seeds, x).unwrap();
        let exact = {
            let mut with_x = seeds.clone();
            with_x.push(x);
            f.sigma_bel(&with_x, Level::One) - f.sigma_bel(&seeds, Level::One)
        };
        let incoming = f.set_influence_l1(&seeds, x);
        assert_abs_diff_eq!(incoming, 1.3, epsilon = 1e-12);
        assert_abs_diff_eq!(closed - exact, incoming, epsilon = 1e-12);
    }

    #[test]
    fn greedy_ratio_on_enumerable_instance() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        let f = random_field(&mut rng, 8, 0.35);
        let (_, opt) = exhaustive_opt(&f, 2, Level::One).unwrap();
        let greedy = naive_greedy(&f, 2, Level::One).unwrap();
        let achieved = f.sigma_bel(&greedy.seeds, Level::One);
        assert!(achieved >= (1.0 - 1.0 / std::f64::consts::E) * opt);
    }
}
