//! Pareto-frontier enumeration over a compiled network: top-down and
//! bottom-up label propagation, bidirectional search with a coupling layer,
//! dominance-based label filtering, and witness recovery.

use crate::network::{ArcId, Network, NodeId};
use crate::vector::{nd_in_place, nd_with_kept, weakly_dominates, ObjectiveVector, VectorError};
use std::time::Instant;
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    TopDown,
    BottomUp,
}

/// Node-level dominance for label filtering, expressed on canonical state
/// keys so it can run against a network without the originating model.
///
/// `dominates(layer, key_v, key_u)` must mean: the nondominated completions
/// reachable from `v` weakly dominate those reachable from `u` (for the
/// top-down direction; prefix networks for bottom-up). The relation must be
/// transitive.
pub trait NodeComparator {
    fn dominates(&self, layer: usize, key_v: &[u8], key_u: &[u8]) -> bool;

    /// Optional total-order rank consistent with `dominates`:
    /// `rank(v) < rank(u)` must imply `dominates(v, u)`. Enables a
    /// linear-sweep filter instead of the quadratic pairwise scan.
    fn rank(&self, _layer: usize, _key: &[u8]) -> Option<i64> {
        None
    }

    /// Which label directions the comparator's premise covers. Completion
    /// dominance licenses filtering of top-down labels only.
    fn licenses(&self, direction: Direction) -> bool {
        matches!(direction, Direction::TopDown)
    }
}

#[derive(Debug, Clone)]
pub struct SearchLimits {
    /// Cap on simultaneously held labels across all nodes.
    pub max_live_labels: u64,
    /// Approximate cap on label memory, in bytes.
    pub max_bytes: Option<u64>,
    pub deadline: Option<Instant>,
}

impl Default for SearchLimits {
    fn default() -> Self {
        SearchLimits {
            max_live_labels: 100_000_000,
            max_bytes: None,
            deadline: None,
        }
    }
}

#[derive(Debug, Error)]
pub enum SearchError {
    #[error("live label budget of {budget} exceeded")]
    LabelBudget { budget: u64 },
    #[error("label memory budget of {budget} bytes exceeded")]
    MemoryBudget { budget: u64 },
    #[error("search deadline exceeded")]
    Deadline,
    #[error(transparent)]
    Vector(#[from] VectorError),
    #[error("target vector is not a frontier point")]
    TargetNotInFrontier,
    #[error("meeting layer {meet} out of range for {layers} layers")]
    BadMeetLayer { meet: usize, layers: usize },
}

/// Per-node nondominated label sets for one propagation direction.
#[derive(Debug, Clone)]
pub struct LabelSets {
    pub direction: Direction,
    per_node: Vec<Vec<ObjectiveVector>>,
}

impl LabelSets {
    pub fn new(direction: Direction, slots: usize) -> Self {
        LabelSets {
            direction,
            per_node: vec![Vec::new(); slots],
        }
    }

    pub fn get(&self, node: NodeId) -> &[ObjectiveVector] {
        &self.per_node[node.0 as usize]
    }

    fn slot_mut(&mut self, node: NodeId) -> &mut Vec<ObjectiveVector> {
        &mut self.per_node[node.0 as usize]
    }

    pub fn layer_total(&self, net: &Network, layer: usize) -> u64 {
        net.layer_nodes(layer)
            .map(|u| self.per_node[u.0 as usize].len() as u64)
            .sum()
    }
}

#[derive(Debug, Clone, Default)]
pub struct SearchOutcome {
    /// Canonical-sense frontier, lexicographically ascending, including the
    /// network's root offset.
    pub frontier: Vec<ObjectiveVector>,
    pub labels_created: u64,
    pub filter_removed: u64,
}

#[derive(Debug, Clone, Default)]
pub struct BidirectionalOutcome {
    pub frontier: Vec<ObjectiveVector>,
    pub labels_td: u64,
    pub labels_bu: u64,
    /// Pairwise sums formed while coupling the meeting layer.
    pub labels_coupled: u64,
    /// Meeting layer, 0-based.
    pub meet_layer: usize,
    pub filter_removed: u64,
}

struct Budget<'a> {
    limits: &'a SearchLimits,
    live: u64,
    bytes_per_label: u64,
}

impl<'a> Budget<'a> {
    fn new(limits: &'a SearchLimits, k: usize) -> Self {
        Budget {
            limits,
            live: 0,
            bytes_per_label: (k as u64) * 8 + 48,
        }
    }

    fn check(&self) -> Result<(), SearchError> {
        if self.live > self.limits.max_live_labels {
            return Err(SearchError::LabelBudget {
                budget: self.limits.max_live_labels,
            });
        }
        if let Some(max_bytes) = self.limits.max_bytes {
            if self.live.saturating_mul(self.bytes_per_label) > max_bytes {
                return Err(SearchError::MemoryBudget { budget: max_bytes });
            }
        }
        if let Some(deadline) = self.limits.deadline {
            if Instant::now() >= deadline {
                return Err(SearchError::Deadline);
            }
        }
        Ok(())
    }
}

/// Extends labels across one stage and re-applies the nondominated filter on
/// every node of the receiving layer. `TopDown` extends from `layer` to
/// `layer + 1`, `BottomUp` from `layer` to `layer - 1`.
fn extend_layer(
    net: &Network,
    sets: &mut LabelSets,
    layer: usize,
    created: &mut u64,
    budget: &mut Budget<'_>,
) -> Result<(), SearchError> {
    let forward = sets.direction == Direction::TopDown;
    for u in net.layer_nodes(layer) {
        let src = std::mem::take(sets.slot_mut(u));
        if !src.is_empty() {
            let arcs: Box<dyn Iterator<Item = ArcId>> = if forward {
                Box::new(net.out_arcs(u))
            } else {
                Box::new(net.in_arcs(u))
            };
            for a in arcs {
                let arc = net.arc(a);
                let other = if forward { arc.term } else { arc.root };
                for z in &src {
                    let extended = z.checked_add(&arc.weight)?;
                    sets.slot_mut(other).push(extended);
                    *created += 1;
                    budget.live += 1;
                }
            }
        }
        *sets.slot_mut(u) = src;
    }
    let receiving = if forward { layer + 1 } else { layer - 1 };
    for v in net.layer_nodes(receiving) {
        let set = sets.slot_mut(v);
        let before = set.len();
        nd_in_place(set);
        budget.live -= (before - set.len()) as u64;
    }
    budget.check()
}

/// Removes, for every ordered pair of same-layer nodes `(u, v)` where the
/// comparator says `v` dominates `u`, each label of `u` that is dominated by
/// or equal to some label of `v`. Returns the number of labels removed.
pub fn filter_labels(
    net: &Network,
    layer_nodes: &[NodeId],
    sets: &mut LabelSets,
    cmp: &dyn NodeComparator,
) -> u64 {
    let layer = match layer_nodes.first() {
        Some(&u) => net.node(u).layer,
        None => return 0,
    };
    let keyed: Vec<NodeId> = layer_nodes
        .iter()
        .copied()
        .filter(|&u| net.node(u).state_key.is_some())
        .collect();
    if keyed.len() < 2 {
        return 0;
    }
    let key = |u: NodeId| net.node(u).state_key.as_deref().unwrap();

    let ranks: Option<Vec<i64>> = keyed
        .iter()
        .map(|&u| cmp.rank(layer, key(u)))
        .collect();

    let mut removed = 0u64;
    if let Some(ranks) = ranks {
        // Total-preorder fast path: sweep in rank order with a running pool
        // of all labels owned by strictly better-ranked nodes.
        let mut order: Vec<usize> = (0..keyed.len()).collect();
        order.sort_unstable_by_key(|&i| (ranks[i], keyed[i].0));
        let mut pool: Vec<ObjectiveVector> = Vec::new();
        let mut i = 0;
        while i < order.len() {
            let mut j = i;
            while j < order.len() && ranks[order[j]] == ranks[order[i]] {
                j += 1;
            }
            let group = &order[i..j];
            for &gi in group {
                let set = sets.slot_mut(keyed[gi]);
                let before = set.len();
                set.retain(|l| !pool.iter().any(|p| weakly_dominates(p, l)));
                removed += (before - set.len()) as u64;
            }
            if group.len() > 1 {
                removed += filter_group_pairwise(net, layer, &keyed, group, sets, cmp);
            }
            for &gi in group {
                pool.extend_from_slice(sets.get(keyed[gi]));
            }
            nd_in_place(&mut pool);
            i = j;
        }
    } else {
        let all: Vec<usize> = (0..keyed.len()).collect();
        removed += filter_group_pairwise(net, layer, &keyed, &all, sets, cmp);
    }
    removed
}

/// Quadratic fallback: for each node, pool the current labels of all its
/// dominators and drop covered labels. Correct for any transitive
/// comparator, regardless of processing order.
fn filter_group_pairwise(
    net: &Network,
    layer: usize,
    keyed: &[NodeId],
    group: &[usize],
    sets: &mut LabelSets,
    cmp: &dyn NodeComparator,
) -> u64 {
    let key = |u: NodeId| net.node(u).state_key.as_deref().unwrap();
    let mut removed = 0u64;
    for &ui in group {
        let u = keyed[ui];
        let mut pool: Vec<ObjectiveVector> = Vec::new();
        for &vi in group {
            let v = keyed[vi];
            if v != u && cmp.dominates(layer, key(v), key(u)) {
                pool.extend_from_slice(sets.get(v));
            }
        }
        if pool.is_empty() {
            continue;
        }
        nd_in_place(&mut pool);
        let set = sets.slot_mut(u);
        let before = set.len();
        set.retain(|l| !pool.iter().any(|p| weakly_dominates(p, l)));
        removed += (before - set.len()) as u64;
    }
    removed
}

fn apply_filter(
    net: &Network,
    sets: &mut LabelSets,
    layer: usize,
    cmp: Option<&dyn NodeComparator>,
    budget: &mut Budget<'_>,
    removed: &mut u64,
) {
    if let Some(cmp) = cmp {
        if cmp.licenses(sets.direction) {
            let nodes: Vec<NodeId> = net.layer_nodes(layer).collect();
            let r = filter_labels(net, &nodes, sets, cmp);
            *removed += r;
            budget.live -= r;
        }
    }
}

/// Layer-by-layer top-down labeling. The terminal's final label set is the
/// network's Pareto frontier (root offset included).
pub fn propagate_topdown(
    net: &Network,
    cmp: Option<&dyn NodeComparator>,
    limits: &SearchLimits,
) -> Result<SearchOutcome, SearchError> {
    run_topdown(net, cmp, limits).map(|(_, outcome)| outcome)
}

/// [`propagate_topdown`] returning the full per-node label sets as well.
pub fn run_topdown(
    net: &Network,
    cmp: Option<&dyn NodeComparator>,
    limits: &SearchLimits,
) -> Result<(LabelSets, SearchOutcome), SearchError> {
    let mut sets = LabelSets::new(Direction::TopDown, net.node_slots());
    let mut budget = Budget::new(limits, net.k());
    let mut created = 0u64;
    let mut removed = 0u64;
    sets.slot_mut(net.root()).push(net.root_offset.clone());
    created += 1;
    budget.live += 1;
    for layer in 0..net.num_stages() {
        extend_layer(net, &mut sets, layer, &mut created, &mut budget)?;
        apply_filter(net, &mut sets, layer + 1, cmp, &mut budget, &mut removed);
    }
    let outcome = SearchOutcome {
        frontier: sets.get(net.terminal()).to_vec(),
        labels_created: created,
        filter_removed: removed,
    };
    Ok((sets, outcome))
}

/// Mirror of [`propagate_topdown`] running from the terminal towards the
/// root; the root's final set (shifted by the offset) is the frontier.
pub fn propagate_bottomup(
    net: &Network,
    cmp: Option<&dyn NodeComparator>,
    limits: &SearchLimits,
) -> Result<SearchOutcome, SearchError> {
    run_bottomup(net, cmp, limits).map(|(_, outcome)| outcome)
}

/// [`propagate_bottomup`] returning the full per-node label sets as well.
pub fn run_bottomup(
    net: &Network,
    cmp: Option<&dyn NodeComparator>,
    limits: &SearchLimits,
) -> Result<(LabelSets, SearchOutcome), SearchError> {
    let mut sets = LabelSets::new(Direction::BottomUp, net.node_slots());
    let mut budget = Budget::new(limits, net.k());
    let mut created = 0u64;
    let mut removed = 0u64;
    sets.slot_mut(net.terminal())
        .push(ObjectiveVector::zeros(net.k()));
    created += 1;
    budget.live += 1;
    for layer in (1..net.num_layers()).rev() {
        extend_layer(net, &mut sets, layer, &mut created, &mut budget)?;
        apply_filter(net, &mut sets, layer - 1, cmp, &mut budget, &mut removed);
    }
    let mut frontier = Vec::with_capacity(sets.get(net.root()).len());
    for z in sets.get(net.root()) {
        frontier.push(z.checked_add(&net.root_offset)?);
    }
    let outcome = SearchOutcome {
        frontier,
        labels_created: created,
        filter_removed: removed,
    };
    Ok((sets, outcome))
}

/// Nondominated set of all pairwise sums of two label sets.
pub fn couple_sets(
    z1: &[ObjectiveVector],
    z2: &[ObjectiveVector],
) -> Result<Vec<ObjectiveVector>, SearchError> {
    let mut sums = Vec::with_capacity(z1.len() * z2.len());
    for a in z1 {
        for b in z2 {
            sums.push(a.checked_add(b)?);
        }
    }
    nd_in_place(&mut sums);
    Ok(sums)
}

/// Bidirectional search: extends whichever front currently holds fewer
/// labels (ties extend top-down) until the fronts meet, then couples the
/// meeting layer. `meet_override` (0-based) forces the meeting layer.
pub fn solve_bidirectional(
    net: &Network,
    cmp: Option<&dyn NodeComparator>,
    meet_override: Option<usize>,
    limits: &SearchLimits,
) -> Result<BidirectionalOutcome, SearchError> {
    let n = net.num_stages();
    if let Some(m) = meet_override {
        if m >= net.num_layers() {
            return Err(SearchError::BadMeetLayer {
                meet: m,
                layers: net.num_layers(),
            });
        }
    }
    let mut td = LabelSets::new(Direction::TopDown, net.node_slots());
    let mut bu = LabelSets::new(Direction::BottomUp, net.node_slots());
    let mut budget = Budget::new(limits, net.k());
    let mut labels_td = 0u64;
    let mut labels_bu = 0u64;
    let mut removed = 0u64;
    td.slot_mut(net.root()).push(net.root_offset.clone());
    labels_td += 1;
    budget.live += 1;
    bu.slot_mut(net.terminal())
        .push(ObjectiveVector::zeros(net.k()));
    labels_bu += 1;
    budget.live += 1;

    let mut j1 = 0usize; // highest layer with materialized top-down labels
    let mut j2 = n; // lowest layer with materialized bottom-up labels

    macro_rules! extend_td {
        () => {{
            extend_layer(net, &mut td, j1, &mut labels_td, &mut budget)?;
            j1 += 1;
            apply_filter(net, &mut td, j1, cmp, &mut budget, &mut removed);
        }};
    }
    macro_rules! extend_bu {
        () => {{
            extend_layer(net, &mut bu, j2, &mut labels_bu, &mut budget)?;
            j2 -= 1;
            apply_filter(net, &mut bu, j2, cmp, &mut budget, &mut removed);
        }};
    }

    let meet = if let Some(m) = meet_override {
        while j1 < m {
            extend_td!();
        }
        while j2 > m {
            extend_bu!();
        }
        m
    } else if n == 1 {
        extend_td!();
        1
    } else {
        // Materialize both starting fronts, then grow the cheaper side.
        extend_td!();
        extend_bu!();
        while j1 < j2 {
            let td_total = td.layer_total(net, j1);
            let bu_total = bu.layer_total(net, j2);
            if td_total <= bu_total {
                extend_td!();
            } else {
                extend_bu!();
            }
        }
        j1
    };

    let mut frontier = Vec::new();
    let mut labels_coupled = 0u64;
    for u in net.layer_nodes(meet) {
        let (z1, z2) = (td.get(u), bu.get(u));
        labels_coupled += (z1.len() * z2.len()) as u64;
        frontier.extend(couple_sets(z1, z2)?);
    }
    nd_in_place(&mut frontier);
    Ok(BidirectionalOutcome {
        frontier,
        labels_td,
        labels_bu,
        labels_coupled,
        meet_layer: meet,
        filter_removed: removed,
    })
}

/// A finished top-down pass that kept per-label predecessor records, enough
/// to walk any frontier point back to a root-terminal arc path.
#[derive(Debug)]
pub struct RecordedTopDown {
    sets: Vec<Vec<ObjectiveVector>>,
    preds: Vec<Vec<Option<(ArcId, u32)>>>,
    pub frontier: Vec<ObjectiveVector>,
}

/// Unfiltered top-down pass with predecessor records. Recovery runs without
/// label filtering so every frontier point is guaranteed to surface at the
/// terminal.
pub fn propagate_topdown_recorded(
    net: &Network,
    limits: &SearchLimits,
) -> Result<RecordedTopDown, SearchError> {
    let slots = net.node_slots();
    let mut sets: Vec<Vec<ObjectiveVector>> = vec![Vec::new(); slots];
    let mut preds: Vec<Vec<Option<(ArcId, u32)>>> = vec![Vec::new(); slots];
    let mut budget = Budget::new(limits, net.k());
    let root = net.root();
    sets[root.0 as usize].push(net.root_offset.clone());
    preds[root.0 as usize].push(None);
    budget.live += 1;
    for layer in 0..net.num_stages() {
        for u in net.layer_nodes(layer) {
            let src = std::mem::take(&mut sets[u.0 as usize]);
            for a in net.out_arcs(u) {
                let arc = net.arc(a);
                let dst = arc.term.0 as usize;
                for (zi, z) in src.iter().enumerate() {
                    sets[dst].push(z.checked_add(&arc.weight)?);
                    preds[dst].push(Some((a, zi as u32)));
                    budget.live += 1;
                }
            }
            sets[u.0 as usize] = src;
        }
        for v in net.layer_nodes(layer + 1) {
            let idx = v.0 as usize;
            let (kept_values, kept_indices) = nd_with_kept(&sets[idx]);
            budget.live -= (sets[idx].len() - kept_values.len()) as u64;
            preds[idx] = kept_indices.iter().map(|&i| preds[idx][i]).collect();
            sets[idx] = kept_values;
        }
        budget.check()?;
    }
    let frontier = sets[net.terminal().0 as usize].clone();
    Ok(RecordedTopDown {
        sets,
        preds,
        frontier,
    })
}

/// Walks one frontier point back through the predecessor records and returns
/// the per-stage decisions of a path realizing it (`None` entries belong to
/// synthetic arcs).
pub fn recover_solution(
    net: &Network,
    run: &RecordedTopDown,
    target: &ObjectiveVector,
) -> Result<Vec<Option<i64>>, SearchError> {
    let terminal = net.terminal();
    let idx = run.sets[terminal.0 as usize]
        .binary_search(target)
        .map_err(|_| SearchError::TargetNotInFrontier)?;
    let mut decisions: Vec<Option<i64>> = vec![None; net.num_stages()];
    let mut cursor = (terminal, idx as u32);
    while let Some((arc_id, parent)) = run.preds[cursor.0 .0 as usize][cursor.1 as usize] {
        let arc = net.arc(arc_id);
        decisions[net.node(arc.root).layer] = arc.decision;
        cursor = (arc.root, parent);
    }
    Ok(decisions)
}
