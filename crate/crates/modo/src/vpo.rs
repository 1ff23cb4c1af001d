//! Validity-preserving operations: transformations that shrink a network
//! without changing its Pareto frontier.
//!
//! Shifting moves weight across a node without touching any root-terminal
//! path weight; merging collapses nodes with pairwise-matching outgoing
//! arcs; pruning drops parallel arcs whose weight is covered inside the
//! bundle; windowed arc removal deletes arcs that are redundant within an
//! isolating subnetwork.

use crate::network::{ArcId, Network, NodeId};
use crate::vector::{dominates, nd_filter, nd_in_place, ObjectiveVector, VectorError};
use std::collections::HashMap;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum VpoError {
    #[error("weight shift is only defined on interior nodes")]
    ShiftAtEndpoint,
    #[error("nodes live in different layers")]
    DifferentLayers,
    #[error("a node cannot merge with itself")]
    IdenticalNodes,
    #[error(transparent)]
    Vector(#[from] VectorError),
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ReductionStats {
    pub nodes_removed: u64,
    pub arcs_removed: u64,
    pub shifts_applied: u64,
    pub merges_applied: u64,
}

impl ReductionStats {
    pub fn absorb(&mut self, other: ReductionStats) {
        self.nodes_removed += other.nodes_removed;
        self.arcs_removed += other.arcs_removed;
        self.shifts_applied += other.shifts_applied;
        self.merges_applied += other.merges_applied;
    }
}

/// What a merge must match on. Weight-only matching is the full reduction;
/// decision-strict matching additionally preserves the decision semantics of
/// every surviving path, which witness recovery relies on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MergePolicy {
    ByWeight,
    ByWeightAndDecision,
}

/// Subtracts `c` from every outgoing arc weight of `u` and adds `c` to every
/// incoming one. The multiset of root-terminal path weights is unchanged.
pub fn weight_shift(net: &mut Network, u: NodeId, c: &ObjectiveVector) -> Result<(), VpoError> {
    let layer = net.node(u).layer;
    if layer == 0 || layer == net.num_layers() - 1 {
        return Err(VpoError::ShiftAtEndpoint);
    }
    let out: Vec<ArcId> = net.out_arcs(u).collect();
    let inc: Vec<ArcId> = net.in_arcs(u).collect();
    for a in out {
        let w = net.arc(a).weight.checked_sub(c)?;
        *net.arc_weight_mut(a) = w;
    }
    for a in inc {
        let w = net.arc(a).weight.checked_add(c)?;
        *net.arc_weight_mut(a) = w;
    }
    Ok(())
}

type MergeSignature = Vec<(u32, Option<i64>, ObjectiveVector)>;

fn merge_signature(net: &Network, u: NodeId, policy: MergePolicy) -> MergeSignature {
    let mut sig: MergeSignature = net
        .out_arcs(u)
        .map(|a| {
            let arc = net.arc(a);
            let decision = match policy {
                MergePolicy::ByWeight => None,
                MergePolicy::ByWeightAndDecision => arc.decision,
            };
            (arc.term.0, decision, arc.weight.clone())
        })
        .collect();
    sig.sort_unstable();
    sig
}

/// Whether `u1` and `u2` satisfy the merge condition: a one-to-one mapping
/// between their outgoing arcs matching on (terminal, weight).
pub fn mergeable(net: &Network, u1: NodeId, u2: NodeId) -> bool {
    merge_signature(net, u1, MergePolicy::ByWeight)
        == merge_signature(net, u2, MergePolicy::ByWeight)
}

fn perform_merge(net: &mut Network, keep: NodeId, drop: NodeId) {
    let out: Vec<ArcId> = net.out_arcs(drop).collect();
    for a in out {
        net.delete_arc(a);
    }
    let inc: Vec<ArcId> = net.in_arcs(drop).collect();
    for a in inc {
        net.redirect_arc_terminal(a, keep);
    }
    net.delete_node(drop);
}

/// Merges `u2` into `u1` when their outgoing arc multisets match pairwise on
/// (terminal, weight): `u2`'s outgoing arcs are deleted, its incoming arcs
/// are redirected to `u1`, and `u2` disappears. Returns whether the merge
/// happened; the network is untouched otherwise.
pub fn node_merge(net: &mut Network, u1: NodeId, u2: NodeId) -> Result<bool, VpoError> {
    if u1 == u2 {
        return Err(VpoError::IdenticalNodes);
    }
    if net.node(u1).layer != net.node(u2).layer {
        return Err(VpoError::DifferentLayers);
    }
    if !mergeable(net, u1, u2) {
        return Ok(false);
    }
    perform_merge(net, u1, u2);
    Ok(true)
}

/// One reduction pass: walks layers from the penultimate one upwards; at
/// each node shifts by the componentwise minimum of its outgoing weights,
/// then merges every mergeable pair in the layer (ascending index, first
/// match wins). A second invocation is a no-op.
pub fn reduce_sweep(net: &mut Network) -> Result<ReductionStats, VpoError> {
    reduce_sweep_with(net, MergePolicy::ByWeight)
}

pub fn reduce_sweep_with(
    net: &mut Network,
    policy: MergePolicy,
) -> Result<ReductionStats, VpoError> {
    let mut stats = ReductionStats::default();
    let last = net.num_layers() - 1;
    if last < 2 {
        return Ok(stats);
    }
    for layer in (1..last).rev() {
        let nodes: Vec<NodeId> = net.layer_nodes(layer).collect();
        for &u in &nodes {
            let mut cmin: Option<ObjectiveVector> = None;
            for a in net.out_arcs(u) {
                match &mut cmin {
                    None => cmin = Some(net.arc(a).weight.clone()),
                    Some(m) => m.min_assign(&net.arc(a).weight),
                }
            }
            if let Some(c) = cmin {
                if !c.is_zero() {
                    weight_shift(net, u, &c)?;
                    stats.shifts_applied += 1;
                }
            }
        }
        let mut groups: HashMap<MergeSignature, NodeId> = HashMap::new();
        for &u in &nodes {
            let sig = merge_signature(net, u, policy);
            match groups.entry(sig) {
                std::collections::hash_map::Entry::Vacant(e) => {
                    e.insert(u);
                }
                std::collections::hash_map::Entry::Occupied(e) => {
                    let keep = *e.get();
                    let arcs_before = net.live_arc_count();
                    perform_merge(net, keep, u);
                    stats.merges_applied += 1;
                    stats.nodes_removed += 1;
                    stats.arcs_removed += (arcs_before - net.live_arc_count()) as u64;
                }
            }
        }
        net.prune_layer(layer);
    }
    Ok(stats)
}

/// Removes, inside every parallel-arc bundle, the arcs whose weight is
/// dominated by or equal to another arc's weight (one survivor per group of
/// equals). Returns the number of arcs removed.
pub fn prune_parallel_arcs(net: &mut Network) -> usize {
    let mut removed = 0usize;
    let node_ids: Vec<NodeId> = net.live_node_ids().collect();
    for u in node_ids {
        let mut by_term: Vec<(NodeId, ArcId)> =
            net.out_arcs(u).map(|a| (net.arc(a).term, a)).collect();
        by_term.sort_unstable();
        let mut i = 0;
        while i < by_term.len() {
            let mut j = i;
            while j < by_term.len() && by_term[j].0 == by_term[i].0 {
                j += 1;
            }
            if j - i > 1 {
                let bundle: Vec<ArcId> = by_term[i..j].iter().map(|&(_, a)| a).collect();
                for (bi, &a) in bundle.iter().enumerate() {
                    let wa = &net.arc(a).weight;
                    let covered = bundle.iter().enumerate().any(|(bj, &b)| {
                        if bi == bj {
                            return false;
                        }
                        let wb = &net.arc(b).weight;
                        dominates(wb, wa) || (wb == wa && bj < bi)
                    });
                    if covered {
                        net.delete_arc(a);
                        removed += 1;
                    }
                }
            }
            i = j;
        }
    }
    removed
}

/// Whether `(u, v)` is an isolating pair: every arc from outside the
/// subnetwork of u-v paths that enters it enters at `u`, and every arc that
/// leaves it leaves from `v`. Computed by breadth-first reachability. When
/// no u-v path exists the conditions hold vacuously.
pub fn is_isolating(net: &Network, u: NodeId, v: NodeId) -> bool {
    let (lu, lv) = (net.node(u).layer, net.node(v).layer);
    assert!(lu < lv, "is_isolating requires layer(u) < layer(v)");
    let window = window_nodes(net, u, v);
    for &w in &window {
        if w != u {
            for a in net.in_arcs(w) {
                if !window.contains(&net.arc(a).root) {
                    return false;
                }
            }
        }
        if w != v {
            for a in net.out_arcs(w) {
                if !window.contains(&net.arc(a).term) {
                    return false;
                }
            }
        }
    }
    true
}

/// Nodes lying on some u-v path: forward-reachable from `u` and
/// backward-reachable from `v`, within the layer band.
fn window_nodes(net: &Network, u: NodeId, v: NodeId) -> Vec<NodeId> {
    let (lu, lv) = (net.node(u).layer, net.node(v).layer);
    let mut fwd = vec![false; net.node_slots()];
    fwd[u.0 as usize] = true;
    let mut queue = vec![u];
    while let Some(w) = queue.pop() {
        if net.node(w).layer >= lv {
            continue;
        }
        for a in net.out_arcs(w) {
            let t = net.arc(a).term;
            if net.node(t).layer <= lv && !fwd[t.0 as usize] {
                fwd[t.0 as usize] = true;
                queue.push(t);
            }
        }
    }
    if !fwd[v.0 as usize] {
        return Vec::new();
    }
    let mut bwd = vec![false; net.node_slots()];
    bwd[v.0 as usize] = true;
    queue.push(v);
    while let Some(w) = queue.pop() {
        if net.node(w).layer <= lu {
            continue;
        }
        for a in net.in_arcs(w) {
            let r = net.arc(a).root;
            if net.node(r).layer >= lu && !bwd[r.0 as usize] {
                bwd[r.0 as usize] = true;
                queue.push(r);
            }
        }
    }
    let mut out: Vec<NodeId> = (0..net.node_slots() as u32)
        .map(NodeId)
        .filter(|id| fwd[id.0 as usize] && bwd[id.0 as usize])
        .collect();
    out.sort_unstable();
    out
}

/// Subnetworks holding more than this many u-v paths are skipped by
/// [`local_arc_removal`].
pub const WINDOW_PATH_CAP: usize = 4096;

/// Scans isolating pairs spanning at most `delta` layers; inside each
/// window, removes every arc whose removal leaves the window's frontier
/// unchanged, re-testing after each removal. Stranded nodes are
/// cascade-deleted. Returns the number of arcs removed (cascades included).
pub fn local_arc_removal(net: &mut Network, delta: usize) -> usize {
    assert!(delta >= 1, "delta must be at least 1");
    let arcs_before = net.live_arc_count();
    let last = net.num_layers() - 1;
    for span in 1..=delta.min(last) {
        for lu in 0..=(last - span) {
            let layer_nodes: Vec<NodeId> = net.layer_nodes(lu).collect();
            for u in layer_nodes {
                if !net.is_node_alive(u) {
                    continue;
                }
                for v in descendants_at_span(net, u, span) {
                    if !net.is_node_alive(u) || !net.is_node_alive(v) {
                        continue;
                    }
                    if !is_isolating(net, u, v) {
                        continue;
                    }
                    shrink_window(net, u, v);
                }
            }
        }
    }
    for layer in 0..net.num_layers() {
        net.prune_layer(layer);
    }
    arcs_before - net.live_arc_count()
}

fn descendants_at_span(net: &Network, u: NodeId, span: usize) -> Vec<NodeId> {
    let mut frontier = vec![u];
    for _ in 0..span {
        let mut next: Vec<NodeId> = frontier
            .iter()
            .flat_map(|&w| net.out_arcs(w).map(|a| net.arc(a).term))
            .collect();
        next.sort_unstable();
        next.dedup();
        frontier = next;
    }
    frontier
}

fn shrink_window(net: &mut Network, u: NodeId, v: NodeId) {
    let paths = match net.paths_between(u, v, WINDOW_PATH_CAP) {
        Ok(p) => p,
        Err(_) => return,
    };
    if paths.len() <= 1 {
        return;
    }
    // Snapshot the interior before any deletion; removals can cut nodes out
    // of the window while leaving them stranded in the network.
    let interior: Vec<NodeId> = window_nodes(net, u, v)
        .into_iter()
        .filter(|&w| w != u && w != v)
        .collect();
    let mut alive: Vec<bool> = vec![true; paths.len()];
    let mut current_pf = nd_filter(
        &paths
            .iter()
            .map(|(_, w)| w.clone())
            .collect::<Vec<_>>(),
    );
    let mut window_arcs: Vec<ArcId> = paths.iter().flat_map(|(arcs, _)| arcs.clone()).collect();
    window_arcs.sort_unstable();
    window_arcs.dedup();
    for a in window_arcs {
        if !net.is_arc_alive(a) {
            continue;
        }
        let mut remaining: Vec<ObjectiveVector> = Vec::new();
        for (pi, (arcs, w)) in paths.iter().enumerate() {
            if alive[pi] && !arcs.contains(&a) {
                remaining.push(w.clone());
            }
        }
        if remaining.is_empty() {
            continue;
        }
        nd_in_place(&mut remaining);
        if remaining == current_pf {
            net.delete_arc(a);
            for (pi, (arcs, _)) in paths.iter().enumerate() {
                if arcs.contains(&a) {
                    alive[pi] = false;
                }
            }
            current_pf = remaining;
        }
    }
    // Interior cascade: isolation confines stranding to the window.
    loop {
        let mut changed = false;
        for &w in &interior {
            if net.is_node_alive(w) && (net.out_degree(w) == 0 || net.in_degree(w) == 0) {
                net.delete_node(w);
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
}
