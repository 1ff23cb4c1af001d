//! The layered weighted multi-digraph that encodes a problem's solutions as
//! root-terminal paths.
//!
//! Layers are indexed `0..=n` internally (text artifacts print them
//! 1-based). Arcs only connect consecutive layers, so the graph is acyclic by
//! construction. Deletions are O(1) tombstones; dense ids are recycled only
//! through [`Network::compact`].

use crate::vector::{ObjectiveVector, VectorError};
use smallvec::SmallVec;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NodeId(pub u32);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ArcId(pub u32);

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n{}", self.0)
    }
}

impl fmt::Display for ArcId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "a{}", self.0)
    }
}

#[derive(Debug, Error)]
pub enum NetworkError {
    #[error("path is not contiguous at position {position}")]
    NonContiguousPath { position: usize },
    #[error("path references a deleted arc")]
    DeadArc,
    #[error(transparent)]
    Vector(#[from] VectorError),
    #[error("more than {cap} paths in the enumerated region")]
    TooManyPaths { cap: usize },
}

#[derive(Debug, Clone)]
pub struct Node {
    pub layer: usize,
    pub state_key: Option<Box<[u8]>>,
    pub(crate) out: Vec<ArcId>,
    pub(crate) inc: Vec<ArcId>,
    pub(crate) alive: bool,
}

#[derive(Debug, Clone)]
pub struct Arc {
    pub root: NodeId,
    pub term: NodeId,
    pub weight: ObjectiveVector,
    /// The variable-value assignment this arc encodes; `None` for synthetic
    /// arcs such as a tour's closing leg.
    pub decision: Option<i64>,
    pub(crate) alive: bool,
}

/// Violations reported by [`Network::validate`]. Diagnostics are data, not
/// errors: an invalid network is representable so that tests can build one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// Layer 0 or the last layer does not hold exactly one node.
    EndpointLayerCardinality { layer: usize, count: usize },
    EmptyLayer { layer: usize },
    /// A non-terminal node without outgoing arcs or a non-root node without
    /// incoming arcs.
    OrphanNode { node: NodeId },
    /// An arc that does not go from layer `j` to layer `j + 1`.
    CrossLayerArc { arc: ArcId },
    DuplicateStateKey { layer: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::EndpointLayerCardinality { layer, count } => {
                write!(f, "layer {} holds {} nodes, expected exactly 1", layer + 1, count)
            }
            Violation::EmptyLayer { layer } => write!(f, "layer {} is empty", layer + 1),
            Violation::OrphanNode { node } => write!(f, "node {node} is disconnected"),
            Violation::CrossLayerArc { arc } => write!(f, "arc {arc} skips a layer"),
            Violation::DuplicateStateKey { layer } => {
                write!(f, "layer {} holds two nodes with the same state key", layer + 1)
            }
        }
    }
}

#[derive(Debug, Clone)]
pub struct Network {
    k: usize,
    layers: Vec<Vec<NodeId>>,
    nodes: Vec<Node>,
    arcs: Vec<Arc>,
    /// Added to the root's label during top-down search so reported path
    /// weights equal true objective values.
    pub root_offset: ObjectiveVector,
    live_nodes: usize,
    live_arcs: usize,
}

impl Network {
    pub fn new(k: usize, num_layers: usize) -> Self {
        Network {
            k,
            layers: vec![Vec::new(); num_layers],
            nodes: Vec::new(),
            arcs: Vec::new(),
            root_offset: ObjectiveVector::zeros(k),
            live_nodes: 0,
            live_arcs: 0,
        }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn num_layers(&self) -> usize {
        self.layers.len()
    }

    /// Number of decision stages (`layers - 1`).
    pub fn num_stages(&self) -> usize {
        self.layers.len() - 1
    }

    pub fn live_node_count(&self) -> usize {
        self.live_nodes
    }

    pub fn live_arc_count(&self) -> usize {
        self.live_arcs
    }

    pub fn node_slots(&self) -> usize {
        self.nodes.len()
    }

    pub fn add_node(&mut self, layer: usize, state_key: Option<Box<[u8]>>) -> NodeId {
        assert!(layer < self.layers.len(), "layer out of range");
        let id = NodeId(self.nodes.len() as u32);
        self.nodes.push(Node {
            layer,
            state_key,
            out: Vec::new(),
            inc: Vec::new(),
            alive: true,
        });
        self.layers[layer].push(id);
        self.live_nodes += 1;
        id
    }

    /// Adds an arc. Cross-layer arcs are representable (and later reported by
    /// [`Network::validate`]); parallel arcs are allowed.
    pub fn add_arc(
        &mut self,
        root: NodeId,
        term: NodeId,
        weight: ObjectiveVector,
        decision: Option<i64>,
    ) -> ArcId {
        assert_eq!(weight.len(), self.k, "arc weight dimension mismatch");
        let id = ArcId(self.arcs.len() as u32);
        self.arcs.push(Arc {
            root,
            term,
            weight,
            decision,
            alive: true,
        });
        self.nodes[root.0 as usize].out.push(id);
        self.nodes[term.0 as usize].inc.push(id);
        self.live_arcs += 1;
        id
    }

    pub fn node(&self, id: NodeId) -> &Node {
        &self.nodes[id.0 as usize]
    }

    pub fn arc(&self, id: ArcId) -> &Arc {
        &self.arcs[id.0 as usize]
    }

    pub fn is_node_alive(&self, id: NodeId) -> bool {
        self.nodes[id.0 as usize].alive
    }

    pub fn is_arc_alive(&self, id: ArcId) -> bool {
        self.arcs[id.0 as usize].alive
    }

    pub fn root(&self) -> NodeId {
        self.layer_nodes(0).next().expect("network has no root")
    }

    pub fn terminal(&self) -> NodeId {
        self.layer_nodes(self.layers.len() - 1)
            .next()
            .expect("network has no terminal")
    }

    /// Live nodes of one layer, in insertion order.
    pub fn layer_nodes(&self, layer: usize) -> impl Iterator<Item = NodeId> + '_ {
        self.layers[layer]
            .iter()
            .copied()
            .filter(move |id| self.nodes[id.0 as usize].alive)
    }

    pub fn layer_sizes(&self) -> Vec<usize> {
        (0..self.layers.len())
            .map(|j| self.layer_nodes(j).count())
            .collect()
    }

    pub fn out_arcs(&self, node: NodeId) -> impl Iterator<Item = ArcId> + '_ {
        self.nodes[node.0 as usize]
            .out
            .iter()
            .copied()
            .filter(move |a| self.arcs[a.0 as usize].alive)
    }

    pub fn in_arcs(&self, node: NodeId) -> impl Iterator<Item = ArcId> + '_ {
        self.nodes[node.0 as usize]
            .inc
            .iter()
            .copied()
            .filter(move |a| self.arcs[a.0 as usize].alive)
    }

    pub fn out_degree(&self, node: NodeId) -> usize {
        self.out_arcs(node).count()
    }

    pub fn in_degree(&self, node: NodeId) -> usize {
        self.in_arcs(node).count()
    }

    pub fn live_arc_ids(&self) -> impl Iterator<Item = ArcId> + '_ {
        (0..self.arcs.len() as u32)
            .map(ArcId)
            .filter(move |a| self.arcs[a.0 as usize].alive)
    }

    pub fn live_node_ids(&self) -> impl Iterator<Item = NodeId> + '_ {
        (0..self.nodes.len() as u32)
            .map(NodeId)
            .filter(move |n| self.nodes[n.0 as usize].alive)
    }

    pub fn delete_arc(&mut self, id: ArcId) {
        let arc = &mut self.arcs[id.0 as usize];
        if !arc.alive {
            return;
        }
        arc.alive = false;
        let (root, term) = (arc.root, arc.term);
        self.nodes[root.0 as usize].out.retain(|&a| a != id);
        self.nodes[term.0 as usize].inc.retain(|&a| a != id);
        self.live_arcs -= 1;
    }

    /// Deletes a node together with all arcs touching it. The layer list keeps
    /// a tombstone until [`Network::prune_layer`] or [`Network::compact`].
    pub fn delete_node(&mut self, id: NodeId) {
        if !self.nodes[id.0 as usize].alive {
            return;
        }
        let touching: Vec<ArcId> = self
            .out_arcs(id)
            .chain(self.in_arcs(id))
            .collect();
        for a in touching {
            self.delete_arc(a);
        }
        self.nodes[id.0 as usize].alive = false;
        self.live_nodes -= 1;
    }

    pub fn prune_layer(&mut self, layer: usize) {
        let nodes = &self.nodes;
        self.layers[layer].retain(|id| nodes[id.0 as usize].alive);
    }

    /// Redirects arc `id` to terminate at `new_term`.
    pub(crate) fn redirect_arc_terminal(&mut self, id: ArcId, new_term: NodeId) {
        let old_term = self.arcs[id.0 as usize].term;
        self.nodes[old_term.0 as usize].inc.retain(|&a| a != id);
        self.arcs[id.0 as usize].term = new_term;
        self.nodes[new_term.0 as usize].inc.push(id);
    }

    pub(crate) fn arc_weight_mut(&mut self, id: ArcId) -> &mut ObjectiveVector {
        &mut self.arcs[id.0 as usize].weight
    }

    /// Deletes stranded nodes (non-terminal without outgoing arcs, or
    /// non-root without incoming arcs) until none remain, restoring the
    /// connectedness invariant after arc removals. Returns the number of
    /// nodes and arcs deleted.
    pub fn repair_strands(&mut self) -> (usize, usize) {
        let last = self.layers.len() - 1;
        let (mut nodes_removed, mut arcs_removed) = (0usize, 0usize);
        loop {
            let stranded: Vec<NodeId> = self
                .live_node_ids()
                .filter(|&id| {
                    let layer = self.nodes[id.0 as usize].layer;
                    (layer != last && self.out_degree(id) == 0)
                        || (layer != 0 && self.in_degree(id) == 0)
                })
                .collect();
            if stranded.is_empty() {
                break;
            }
            for id in stranded {
                let before = self.live_arcs;
                self.delete_node(id);
                arcs_removed += before - self.live_arcs;
                nodes_removed += 1;
            }
        }
        for layer in 0..self.layers.len() {
            self.prune_layer(layer);
        }
        (nodes_removed, arcs_removed)
    }

    /// Componentwise sum of the arc weights along `path`, which must be a
    /// contiguous arc sequence.
    pub fn path_weight(&self, path: &[ArcId]) -> Result<ObjectiveVector, NetworkError> {
        let mut total = ObjectiveVector::zeros(self.k);
        let mut prev_term: Option<NodeId> = None;
        for (position, &a) in path.iter().enumerate() {
            let arc = &self.arcs[a.0 as usize];
            if !arc.alive {
                return Err(NetworkError::DeadArc);
            }
            if let Some(expected) = prev_term {
                if arc.root != expected {
                    return Err(NetworkError::NonContiguousPath { position });
                }
            }
            prev_term = Some(arc.term);
            total = total.checked_add(&arc.weight)?;
        }
        Ok(total)
    }

    /// Reports all invariant violations; an empty list means the network is
    /// well-formed.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let last = self.layers.len().saturating_sub(1);
        for (j, _) in self.layers.iter().enumerate() {
            let count = self.layer_nodes(j).count();
            if count == 0 {
                out.push(Violation::EmptyLayer { layer: j });
            }
            if (j == 0 || j == last) && count != 1 {
                out.push(Violation::EndpointLayerCardinality { layer: j, count });
            }
            let mut keys: Vec<&[u8]> = self
                .layer_nodes(j)
                .filter_map(|id| self.node(id).state_key.as_deref())
                .collect();
            keys.sort_unstable();
            if keys.windows(2).any(|w| w[0] == w[1]) {
                out.push(Violation::DuplicateStateKey { layer: j });
            }
        }
        for id in self.live_node_ids() {
            let node = &self.nodes[id.0 as usize];
            if (node.layer != last && self.out_degree(id) == 0)
                || (node.layer != 0 && self.in_degree(id) == 0)
            {
                out.push(Violation::OrphanNode { node: id });
            }
        }
        for a in self.live_arc_ids() {
            let arc = &self.arcs[a.0 as usize];
            let from = self.nodes[arc.root.0 as usize].layer;
            let to = self.nodes[arc.term.0 as usize].layer;
            if to != from + 1 {
                out.push(Violation::CrossLayerArc { arc: a });
            }
        }
        out
    }

    /// Exact root-terminal path count via layer-by-layer accumulation.
    pub fn count_paths(&self) -> u128 {
        let mut counts: Vec<u128> = vec![0; self.nodes.len()];
        counts[self.root().0 as usize] = 1;
        for j in 0..self.layers.len() - 1 {
            for u in self.layer_nodes(j) {
                let c = counts[u.0 as usize];
                if c == 0 {
                    continue;
                }
                for a in self.out_arcs(u) {
                    let term = self.arcs[a.0 as usize].term;
                    counts[term.0 as usize] += c;
                }
            }
        }
        counts[self.terminal().0 as usize]
    }

    /// Enumerates every path from `from` to `to` as (arc sequence, weight).
    /// Fails once more than `cap` paths exist.
    pub fn paths_between(
        &self,
        from: NodeId,
        to: NodeId,
        cap: usize,
    ) -> Result<Vec<(SmallVec<[ArcId; 8]>, ObjectiveVector)>, NetworkError> {
        let mut out = Vec::new();
        let mut stack: Vec<(NodeId, SmallVec<[ArcId; 8]>, ObjectiveVector)> =
            vec![(from, SmallVec::new(), ObjectiveVector::zeros(self.k))];
        let to_layer = self.node(to).layer;
        while let Some((u, path, weight)) = stack.pop() {
            if u == to {
                if out.len() == cap {
                    return Err(NetworkError::TooManyPaths { cap });
                }
                out.push((path, weight));
                continue;
            }
            if self.node(u).layer >= to_layer {
                continue;
            }
            for a in self.out_arcs(u) {
                let arc = &self.arcs[a.0 as usize];
                let mut next_path = path.clone();
                next_path.push(a);
                let next_weight = weight.checked_add(&arc.weight)?;
                stack.push((arc.term, next_path, next_weight));
            }
        }
        Ok(out)
    }

    /// Weights of all root-terminal paths (without the root offset).
    pub fn all_path_weights(&self, cap: usize) -> Result<Vec<ObjectiveVector>, NetworkError> {
        Ok(self
            .paths_between(self.root(), self.terminal(), cap)?
            .into_iter()
            .map(|(_, w)| w)
            .collect())
    }

    /// Drops tombstones and renumbers nodes and arcs densely, preserving the
    /// relative order inside each layer.
    pub fn compact(&mut self) {
        let mut node_map: Vec<Option<NodeId>> = vec![None; self.nodes.len()];
        let mut new_nodes: Vec<Node> = Vec::with_capacity(self.live_nodes);
        let mut new_layers: Vec<Vec<NodeId>> = vec![Vec::new(); self.layers.len()];
        for (j, layer) in self.layers.iter().enumerate() {
            for &id in layer {
                let node = &self.nodes[id.0 as usize];
                if !node.alive {
                    continue;
                }
                let new_id = NodeId(new_nodes.len() as u32);
                node_map[id.0 as usize] = Some(new_id);
                new_layers[j].push(new_id);
                new_nodes.push(Node {
                    layer: node.layer,
                    state_key: node.state_key.clone(),
                    out: Vec::new(),
                    inc: Vec::new(),
                    alive: true,
                });
            }
        }
        let mut new_arcs: Vec<Arc> = Vec::with_capacity(self.live_arcs);
        for arc in self.arcs.iter().filter(|a| a.alive) {
            let root = node_map[arc.root.0 as usize].expect("live arc on dead node");
            let term = node_map[arc.term.0 as usize].expect("live arc on dead node");
            let id = ArcId(new_arcs.len() as u32);
            new_arcs.push(Arc {
                root,
                term,
                weight: arc.weight.clone(),
                decision: arc.decision,
                alive: true,
            });
            new_nodes[root.0 as usize].out.push(id);
            new_nodes[term.0 as usize].inc.push(id);
        }
        self.nodes = new_nodes;
        self.arcs = new_arcs;
        self.layers = new_layers;
        self.live_nodes = self.nodes.len();
        self.live_arcs = self.arcs.len();
    }

    /// Canonical text form: one `N` line per node, one `A` line per arc,
    /// both sorted, byte-stable across runs. Layers print 1-based.
    pub fn canonical_dump(&self) -> String {
        let mut ordinal: Vec<Option<usize>> = vec![None; self.nodes.len()];
        let mut lines = String::new();
        let mut next = 0usize;
        for (j, _) in self.layers.iter().enumerate() {
            for (idx, id) in self.layer_nodes(j).enumerate() {
                ordinal[id.0 as usize] = Some(next);
                next += 1;
                let key = match &self.node(id).state_key {
                    Some(k) => hex(k),
                    None => "-".to_string(),
                };
                lines.push_str(&format!("N {} {} {}\n", j + 1, idx, key));
            }
        }
        let mut arc_lines: Vec<String> = self
            .live_arc_ids()
            .map(|a| {
                let arc = self.arc(a);
                let root = ordinal[arc.root.0 as usize].expect("live arc on dead node");
                let term = ordinal[arc.term.0 as usize].expect("live arc on dead node");
                let decision = match arc.decision {
                    Some(d) => d.to_string(),
                    None => "-".to_string(),
                };
                let weights: Vec<String> =
                    arc.weight.iter().map(|w| w.to_string()).collect();
                format!("A {} {} {} {}\n", root, term, decision, weights.join(" "))
            })
            .collect();
        arc_lines.sort_unstable();
        for l in arc_lines {
            lines.push_str(&l);
        }
        lines
    }
}

fn hex(bytes: &[u8]) -> String {
    let mut s = String::with_capacity(bytes.len() * 2);
    for b in bytes {
        s.push_str(&format!("{b:02x}"));
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(values: &[i64]) -> ObjectiveVector {
        ObjectiveVector::new(values.iter().copied())
    }

    /// Root -> {a, b} -> terminal diamond with distinct weights.
    fn diamond() -> (Network, Vec<NodeId>, Vec<ArcId>) {
        let mut n = Network::new(2, 3);
        let r = n.add_node(0, None);
        let a = n.add_node(1, None);
        let b = n.add_node(1, None);
        let t = n.add_node(2, None);
        let arcs = vec![
            n.add_arc(r, a, v(&[1, 0]), Some(0)),
            n.add_arc(r, b, v(&[0, 1]), Some(1)),
            n.add_arc(a, t, v(&[2, 2]), Some(0)),
            n.add_arc(b, t, v(&[3, 3]), Some(1)),
        ];
        (n, vec![r, a, b, t], arcs)
    }

    #[test]
    fn path_weight_sums_componentwise() {
        let (n, _, arcs) = diamond();
        assert_eq!(n.path_weight(&[arcs[0], arcs[2]]).unwrap(), v(&[3, 2]));
        assert_eq!(n.path_weight(&[arcs[1], arcs[3]]).unwrap(), v(&[3, 4]));
    }

    #[test]
    fn path_weight_of_zero_arcs_is_zero() {
        let mut n = Network::new(3, 2);
        let r = n.add_node(0, None);
        let t = n.add_node(1, None);
        let a = n.add_arc(r, t, v(&[0, 0, 0]), Some(0));
        assert_eq!(n.path_weight(&[a]).unwrap(), v(&[0, 0, 0]));
    }

    #[test]
    fn path_weight_rejects_non_contiguous() {
        let (n, _, arcs) = diamond();
        match n.path_weight(&[arcs[0], arcs[3]]) {
            Err(NetworkError::NonContiguousPath { position: 1 }) => {}
            other => panic!("expected contiguity error, got {other:?}"),
        }
    }

    #[test]
    fn path_weight_overflow_is_an_error() {
        let mut n = Network::new(1, 3);
        let r = n.add_node(0, None);
        let m = n.add_node(1, None);
        let t = n.add_node(2, None);
        let a1 = n.add_arc(r, m, v(&[i64::MAX]), Some(0));
        let a2 = n.add_arc(m, t, v(&[1]), Some(0));
        assert!(matches!(
            n.path_weight(&[a1, a2]),
            Err(NetworkError::Vector(VectorError::Overflow))
        ));
    }

    #[test]
    fn random_path_weight_matches_manual_sum() {
        let mut rng = crate::rng::SplitMix64::new(9);
        let mut n = Network::new(3, 6);
        let mut prev = vec![n.add_node(0, None)];
        for layer in 1..6 {
            let width = if layer == 5 { 1 } else { 2 };
            let mut cur = Vec::new();
            for _ in 0..width {
                cur.push(n.add_node(layer, None));
            }
            for &p in &prev {
                for &c in &cur {
                    let w = v(&[
                        rng.uniform(-9, 9),
                        rng.uniform(-9, 9),
                        rng.uniform(-9, 9),
                    ]);
                    n.add_arc(p, c, w, Some(0));
                }
            }
            prev = cur;
        }
        let mut path = Vec::new();
        let mut u = n.root();
        let mut manual = v(&[0, 0, 0]);
        while u != n.terminal() {
            let choices: Vec<ArcId> = n.out_arcs(u).collect();
            let a = choices[rng.next_below(choices.len() as u64) as usize];
            manual = manual.checked_add(&n.arc(a).weight).unwrap();
            u = n.arc(a).term;
            path.push(a);
        }
        assert_eq!(path.len(), 5);
        assert_eq!(n.path_weight(&path).unwrap(), manual);
    }

    #[test]
    fn validate_flags_cross_layer_arc() {
        let mut n = Network::new(2, 3);
        let r = n.add_node(0, None);
        let m = n.add_node(1, None);
        let t = n.add_node(2, None);
        n.add_arc(r, m, v(&[0, 0]), Some(0));
        n.add_arc(m, t, v(&[0, 0]), Some(0));
        let skip = n.add_arc(r, t, v(&[0, 0]), Some(1));
        let violations = n.validate();
        assert_eq!(violations, vec![Violation::CrossLayerArc { arc: skip }]);
    }

    #[test]
    fn validate_flags_orphans_and_duplicates() {
        let mut n = Network::new(2, 3);
        let r = n.add_node(0, Some(b"r".to_vec().into()));
        let a = n.add_node(1, Some(b"s".to_vec().into()));
        let b = n.add_node(1, Some(b"s".to_vec().into()));
        let t = n.add_node(2, Some(b"t".to_vec().into()));
        n.add_arc(r, a, v(&[0, 0]), Some(0));
        n.add_arc(a, t, v(&[0, 0]), Some(0));
        let violations = n.validate();
        assert!(violations.contains(&Violation::OrphanNode { node: b }));
        assert!(violations.contains(&Violation::DuplicateStateKey { layer: 1 }));
    }

    #[test]
    fn repair_strands_cascades() {
        let mut n = Network::new(2, 4);
        let r = n.add_node(0, None);
        let a = n.add_node(1, None);
        let b = n.add_node(1, None);
        let c = n.add_node(2, None);
        let d = n.add_node(2, None);
        let t = n.add_node(3, None);
        n.add_arc(r, a, v(&[0, 0]), Some(0));
        n.add_arc(r, b, v(&[0, 0]), Some(1));
        n.add_arc(a, c, v(&[0, 0]), Some(0));
        let bd = n.add_arc(b, d, v(&[0, 0]), Some(0));
        n.add_arc(c, t, v(&[0, 0]), Some(0));
        let dt = n.add_arc(d, t, v(&[0, 0]), Some(0));
        // Cutting d -> t strands d, which strands b -> d, which strands b.
        n.delete_arc(dt);
        let (nodes_removed, arcs_removed) = n.repair_strands();
        assert_eq!(nodes_removed, 2);
        assert_eq!(arcs_removed, 2);
        assert!(!n.is_node_alive(d));
        assert!(!n.is_node_alive(b));
        assert!(!n.is_arc_alive(bd));
        assert!(n.validate().is_empty());
    }

    #[test]
    fn count_paths_on_diamond() {
        let (n, _, _) = diamond();
        assert_eq!(n.count_paths(), 2);
    }

    #[test]
    fn compact_preserves_structure_and_dump() {
        let (mut n, ids, _) = diamond();
        let before = n.canonical_dump();
        n.delete_node(ids[2]);
        n.prune_layer(1);
        let before_del = n.canonical_dump();
        n.compact();
        assert_eq!(n.live_node_count(), 3);
        assert_eq!(n.node_slots(), 3);
        assert_eq!(n.canonical_dump(), before_del);
        assert_ne!(before, before_del);
        assert_eq!(n.count_paths(), 1);
    }

    #[test]
    fn canonical_dump_is_stable() {
        let (n, _, _) = diamond();
        assert_eq!(n.canonical_dump(), n.canonical_dump());
        let expected = "N 1 0 -\nN 2 0 -\nN 2 1 -\nN 3 0 -\n\
                        A 0 1 0 1 0\nA 0 2 1 0 1\nA 1 3 0 2 2\nA 2 3 1 3 3\n";
        assert_eq!(n.canonical_dump(), expected);
    }
}
