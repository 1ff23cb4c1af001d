//! Generic recursive-formulation interface and the compiler that turns a
//! formulation into a layered network.
//!
//! Compilation is breadth-first layer expansion with exact state
//! deduplication: two states meet at the same node if and only if their
//! canonical byte encodings are equal, so a hash collision can never merge
//! distinct states.

use crate::network::{Network, NodeId};
use crate::search::NodeComparator;
use crate::vector::ObjectiveVector;
use smallvec::SmallVec;
use std::collections::HashMap;
use std::time::Instant;
use thiserror::Error;

/// A recursive formulation: states, per-stage feasible values, transitions,
/// and vector rewards. Stages are indexed `0..n`; the stage-`n - 1`
/// transition must map every reachable (state, value) pair to one common
/// terminal state.
pub trait DpModel {
    type State: Clone;

    /// Number of decision stages `n` (the network gets `n + 1` layers).
    fn num_stages(&self) -> usize;

    fn num_objectives(&self) -> usize;

    fn initial_state(&self) -> Self::State;

    /// Value assignments applicable in `state` at `stage`, in a fixed
    /// deterministic order. May be empty for dead-end states.
    fn feasible_values(&self, stage: usize, state: &Self::State) -> SmallVec<[i64; 2]>;

    fn transition(&self, stage: usize, state: &Self::State, value: i64) -> Self::State;

    fn reward(&self, stage: usize, state: &Self::State, value: i64) -> ObjectiveVector;

    /// Canonical byte encoding of a state. Equal states must encode equally;
    /// the encoding itself is the deduplication key.
    fn state_key(&self, state: &Self::State) -> Vec<u8>;

    /// Added to the root label so reported path weights equal true objective
    /// values (used by formulations whose rewards telescope against a
    /// nonzero baseline).
    fn root_offset(&self) -> ObjectiveVector {
        ObjectiveVector::zeros(self.num_objectives())
    }

    /// Completion-dominance comparator enabling label filtering, when the
    /// formulation admits one.
    fn comparator(&self) -> Option<&dyn NodeComparator> {
        None
    }

    /// Whether arcs of `stage` carry a decision. Synthetic stages (such as a
    /// tour's closing leg) return false and get `None` decisions.
    fn records_decision(&self, _stage: usize) -> bool {
        true
    }
}

#[derive(Debug, Clone)]
pub struct CompileLimits {
    /// Hard cap on materialized nodes; exceeding it is a resource error.
    pub max_nodes: usize,
    pub deadline: Option<Instant>,
}

impl Default for CompileLimits {
    fn default() -> Self {
        CompileLimits {
            max_nodes: 50_000_000,
            deadline: None,
        }
    }
}

#[derive(Debug, Error)]
pub enum CompileError {
    #[error("node budget of {budget} exceeded during layer expansion")]
    NodeBudget { budget: usize },
    #[error("compile deadline exceeded")]
    Deadline,
    #[error("model has no feasible solution")]
    Infeasible,
    #[error("malformed model: {0}")]
    BadModel(String),
}

/// Compiles a recursive formulation into a valid network: layer `j + 1`
/// holds one node per distinct state reachable at stage `j`, one arc per
/// (node, feasible value), arc weights from the rewards, and the single
/// terminal in the last layer. Dead-end states (empty feasible set before
/// the final stage) are eliminated by a backward sweep.
pub fn compile<M: DpModel>(model: &M, limits: &CompileLimits) -> Result<Network, CompileError> {
    let n = model.num_stages();
    let k = model.num_objectives();
    if n == 0 {
        return Err(CompileError::BadModel("a model needs at least one stage".into()));
    }
    if k < 2 {
        return Err(CompileError::BadModel(format!(
            "at least two objectives required, got {k}"
        )));
    }
    let offset = model.root_offset();
    if offset.len() != k {
        return Err(CompileError::BadModel(
            "root offset dimension differs from the objective count".into(),
        ));
    }

    let mut net = Network::new(k, n + 1);
    let mut states: Vec<M::State> = Vec::new();

    let initial = model.initial_state();
    let root_key = model.state_key(&initial);
    let root = net.add_node(0, Some(root_key.into_boxed_slice()));
    debug_assert_eq!(root, NodeId(0));
    states.push(initial);

    for stage in 0..n {
        if let Some(deadline) = limits.deadline {
            if Instant::now() >= deadline {
                return Err(CompileError::Deadline);
            }
        }
        let frontier: Vec<NodeId> = net.layer_nodes(stage).collect();
        let mut seen: HashMap<Vec<u8>, NodeId> = HashMap::new();
        for u in frontier {
            let state = states[u.0 as usize].clone();
            for value in model.feasible_values(stage, &state) {
                let next_state = model.transition(stage, &state, value);
                let key = model.state_key(&next_state);
                let term = match seen.get(&key) {
                    Some(&id) => id,
                    None => {
                        if net.live_node_count() >= limits.max_nodes {
                            return Err(CompileError::NodeBudget {
                                budget: limits.max_nodes,
                            });
                        }
                        let id = net.add_node(stage + 1, Some(key.clone().into_boxed_slice()));
                        seen.insert(key, id);
                        states.push(next_state.clone());
                        id
                    }
                };
                let reward = model.reward(stage, &state, value);
                if reward.len() != k {
                    return Err(CompileError::BadModel(
                        "reward dimension differs from the objective count".into(),
                    ));
                }
                let decision = model.records_decision(stage).then_some(value);
                net.add_arc(u, term, reward, decision);
            }
        }
        if net.layer_nodes(stage + 1).next().is_none() {
            return Err(CompileError::Infeasible);
        }
    }

    if net.layer_nodes(n).count() != 1 {
        return Err(CompileError::BadModel(
            "final-stage transitions must reach a single terminal state".into(),
        ));
    }

    // Dead-end elimination: a state whose feasible set was empty before the
    // final stage has no outgoing arcs; drop it and cascade backwards.
    for layer in (1..n).rev() {
        let dead: Vec<NodeId> = net
            .layer_nodes(layer)
            .filter(|&u| net.out_degree(u) == 0)
            .collect();
        for u in dead {
            net.delete_node(u);
        }
        net.prune_layer(layer);
    }
    if net.out_degree(net.root()) == 0 {
        return Err(CompileError::Infeasible);
    }

    net.root_offset = offset;
    Ok(net)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// One stage, one value, zero reward: the smallest possible model.
    struct Trivial;

    impl DpModel for Trivial {
        type State = u8;
        fn num_stages(&self) -> usize {
            1
        }
        fn num_objectives(&self) -> usize {
            2
        }
        fn initial_state(&self) -> u8 {
            0
        }
        fn feasible_values(&self, _: usize, _: &u8) -> SmallVec<[i64; 2]> {
            smallvec::smallvec![0]
        }
        fn transition(&self, _: usize, _: &u8, _: i64) -> u8 {
            1
        }
        fn reward(&self, _: usize, _: &u8, _: i64) -> ObjectiveVector {
            ObjectiveVector::zeros(2)
        }
        fn state_key(&self, s: &u8) -> Vec<u8> {
            vec![*s]
        }
    }

    /// Three-stage chain over u8 sums where the state reached by value 1 at
    /// stage 0 has no feasible continuation at stage 1.
    struct DeadEnd;

    impl DpModel for DeadEnd {
        type State = u8;
        fn num_stages(&self) -> usize {
            3
        }
        fn num_objectives(&self) -> usize {
            2
        }
        fn initial_state(&self) -> u8 {
            0
        }
        fn feasible_values(&self, stage: usize, state: &u8) -> SmallVec<[i64; 2]> {
            if stage == 1 && *state == 1 {
                SmallVec::new()
            } else if stage == 0 {
                smallvec::smallvec![0, 1]
            } else {
                smallvec::smallvec![0]
            }
        }
        fn transition(&self, stage: usize, state: &u8, value: i64) -> u8 {
            if stage + 1 == self.num_stages() {
                id_terminal()
            } else {
                state + value as u8
            }
        }
        fn reward(&self, _: usize, _: &u8, value: i64) -> ObjectiveVector {
            ObjectiveVector::new([value, value])
        }
        fn state_key(&self, s: &u8) -> Vec<u8> {
            vec![*s]
        }
    }

    fn id_terminal() -> u8 {
        9
    }

    #[test]
    fn trivial_model_compiles_to_two_nodes_one_arc() {
        let net = compile(&Trivial, &CompileLimits::default()).unwrap();
        assert_eq!(net.layer_sizes(), vec![1, 1]);
        assert_eq!(net.live_arc_count(), 1);
        assert_eq!(net.count_paths(), 1);
        assert!(net.validate().is_empty());
        let weights = net.all_path_weights(10).unwrap();
        assert_eq!(weights, vec![ObjectiveVector::zeros(2)]);
    }

    #[test]
    fn dead_end_states_are_swept_away() {
        let net = compile(&DeadEnd, &CompileLimits::default()).unwrap();
        // The value-1 branch at stage 0 reaches state 1, which dead-ends at
        // stage 1 and must disappear together with its incoming arc.
        assert_eq!(net.layer_sizes(), vec![1, 1, 1, 1]);
        assert_eq!(net.count_paths(), 1);
        assert!(net.validate().is_empty());
    }

    #[test]
    fn node_budget_is_enforced() {
        let limits = CompileLimits {
            max_nodes: 2,
            deadline: None,
        };
        match compile(&DeadEnd, &limits) {
            Err(CompileError::NodeBudget { budget: 2 }) => {}
            other => panic!("expected budget error, got {other:?}"),
        }
    }

    #[test]
    fn compile_is_deterministic() {
        let a = compile(&DeadEnd, &CompileLimits::default()).unwrap();
        let b = compile(&DeadEnd, &CompileLimits::default()).unwrap();
        assert_eq!(a.canonical_dump(), b.canonical_dump());
    }
}
