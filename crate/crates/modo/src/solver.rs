//! The end-to-end pipeline: compile an instance, shrink the network with the
//! enabled reductions, enumerate the frontier with the chosen algorithm, map
//! it back to the original sense, and optionally recover witnesses.

use crate::problems::{Instance, ProblemError};
use crate::recursion::{CompileError, CompileLimits};
use crate::search::{
    propagate_bottomup, propagate_topdown, propagate_topdown_recorded, recover_solution,
    solve_bidirectional, SearchError, SearchLimits,
};
use crate::vector::ObjectiveVector;
use crate::vpo::{
    local_arc_removal, prune_parallel_arcs, reduce_sweep_with, MergePolicy, ReductionStats,
    VpoError,
};
use std::time::Instant;
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Algorithm {
    TopDown,
    BottomUp,
    Coupled,
}

impl Algorithm {
    pub const ALL: [Algorithm; 3] = [Algorithm::TopDown, Algorithm::BottomUp, Algorithm::Coupled];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::TopDown => "td",
            Algorithm::BottomUp => "bu",
            Algorithm::Coupled => "coup",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "td" => Some(Algorithm::TopDown),
            "bu" => Some(Algorithm::BottomUp),
            "coup" => Some(Algorithm::Coupled),
            _ => None,
        }
    }
}

#[derive(Debug, Clone)]
pub struct SolveConfig {
    pub algorithm: Algorithm,
    /// Apply the class's label-filtering comparator when it has one.
    pub use_filter: bool,
    pub reduce: bool,
    pub prune: bool,
    pub arc_removal: bool,
    pub arc_removal_delta: usize,
    /// Forced meeting layer for the bidirectional algorithm, 0-based.
    pub meet_layer: Option<usize>,
    /// Recover one witness decision vector per frontier point. Node merging
    /// then also matches decisions, keeping every surviving path's decision
    /// sequence meaningful.
    pub recover: bool,
    pub compile_limits: CompileLimits,
    pub search_limits: SearchLimits,
}

impl Default for SolveConfig {
    fn default() -> Self {
        SolveConfig {
            algorithm: Algorithm::Coupled,
            use_filter: false,
            reduce: true,
            prune: true,
            arc_removal: true,
            arc_removal_delta: 2,
            meet_layer: None,
            recover: false,
            compile_limits: CompileLimits::default(),
            search_limits: SearchLimits::default(),
        }
    }
}

#[derive(Debug, Error)]
pub enum SolveError {
    #[error(transparent)]
    Compile(#[from] CompileError),
    #[error(transparent)]
    Search(#[from] SearchError),
    #[error(transparent)]
    Vpo(#[from] VpoError),
    #[error(transparent)]
    Problem(#[from] ProblemError),
}

/// How a resource-limited run ended, for benchmark status reporting.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ResourceKind {
    Time,
    Memory,
}

impl SolveError {
    pub fn resource_kind(&self) -> Option<ResourceKind> {
        match self {
            SolveError::Compile(CompileError::Deadline)
            | SolveError::Search(SearchError::Deadline) => Some(ResourceKind::Time),
            SolveError::Compile(CompileError::NodeBudget { .. })
            | SolveError::Search(SearchError::LabelBudget { .. })
            | SolveError::Search(SearchError::MemoryBudget { .. }) => Some(ResourceKind::Memory),
            _ => None,
        }
    }
}

#[derive(Debug, Clone)]
pub struct SolveReport {
    /// Frontier in the instance's original sense, lexicographically
    /// ascending.
    pub frontier: Vec<ObjectiveVector>,
    pub labels_td: u64,
    pub labels_bu: u64,
    pub labels_coupled: u64,
    /// Meeting layer (0-based) when the bidirectional algorithm ran.
    pub meet_layer: Option<usize>,
    pub filter_removed: u64,
    pub reduction: ReductionStats,
    /// Network size after the reduction pipeline.
    pub nodes: usize,
    pub arcs: usize,
    pub time_ms: u128,
    /// One decision vector per frontier point, aligned with `frontier`.
    pub witnesses: Option<Vec<Vec<i64>>>,
}

pub fn solve(inst: &Instance, config: &SolveConfig) -> Result<SolveReport, SolveError> {
    inst.validate()?;
    let started = Instant::now();
    let mut net = inst.compile(&config.compile_limits)?;

    let mut reduction = ReductionStats::default();
    if config.reduce {
        let policy = if config.recover {
            MergePolicy::ByWeightAndDecision
        } else {
            MergePolicy::ByWeight
        };
        reduction.absorb(reduce_sweep_with(&mut net, policy)?);
    }
    if config.prune {
        reduction.arcs_removed += prune_parallel_arcs(&mut net) as u64;
    }
    if config.arc_removal {
        let nodes_before = net.live_node_count();
        reduction.arcs_removed += local_arc_removal(&mut net, config.arc_removal_delta) as u64;
        reduction.nodes_removed += (nodes_before - net.live_node_count()) as u64;
    }
    net.compact();

    let comparator = if config.use_filter {
        inst.comparator()
    } else {
        None
    };
    let cmp = comparator.as_deref();

    let (canonical, labels_td, labels_bu, labels_coupled, meet_layer, filter_removed) =
        match config.algorithm {
            Algorithm::TopDown => {
                let run = propagate_topdown(&net, cmp, &config.search_limits)?;
                (run.frontier, run.labels_created, 0, 0, None, run.filter_removed)
            }
            Algorithm::BottomUp => {
                let run = propagate_bottomup(&net, cmp, &config.search_limits)?;
                (run.frontier, 0, run.labels_created, 0, None, run.filter_removed)
            }
            Algorithm::Coupled => {
                let run =
                    solve_bidirectional(&net, cmp, config.meet_layer, &config.search_limits)?;
                (
                    run.frontier,
                    run.labels_td,
                    run.labels_bu,
                    run.labels_coupled,
                    Some(run.meet_layer),
                    run.filter_removed,
                )
            }
        };

    let frontier = inst.frontier_to_original_sense(&canonical);

    let witnesses = if config.recover {
        let recorded = propagate_topdown_recorded(&net, &config.search_limits)?;
        let mut all = Vec::with_capacity(frontier.len());
        for point in &frontier {
            let target = inst.point_to_canonical(point);
            let decisions = recover_solution(&net, &recorded, &target)?;
            all.push(inst.decisions_to_solution(&decisions)?);
        }
        Some(all)
    } else {
        None
    };

    Ok(SolveReport {
        frontier,
        labels_td,
        labels_bu,
        labels_coupled,
        meet_layer,
        filter_removed,
        reduction,
        nodes: net.live_node_count(),
        arcs: net.live_arc_count(),
        time_ms: started.elapsed().as_millis(),
        witnesses,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::brute_force_frontier;
    use crate::problems::{gen, GenParams, ProblemClass};

    #[test]
    fn all_algorithms_match_the_oracle_on_a_small_knapsack() {
        let inst = gen::generate(ProblemClass::Knapsack, 10, 3, 5, &GenParams::default()).unwrap();
        let expected = brute_force_frontier(&inst).unwrap();
        for algorithm in Algorithm::ALL {
            for use_filter in [false, true] {
                let config = SolveConfig {
                    algorithm,
                    use_filter,
                    ..SolveConfig::default()
                };
                let report = solve(&inst, &config).unwrap();
                assert_eq!(
                    report.frontier, expected,
                    "{} filter={use_filter}",
                    algorithm.name()
                );
            }
        }
    }

    #[test]
    fn witnesses_evaluate_back_to_their_points() {
        for (class, n) in [
            (ProblemClass::Knapsack, 9),
            (ProblemClass::SetCover, 10),
            (ProblemClass::SetPack, 10),
            (ProblemClass::Tsp, 6),
            (ProblemClass::Mccavp, 9),
        ] {
            let params = GenParams {
                m_bound: 30,
                delta: 0.5,
            };
            let inst = gen::generate(class, n, 3, 23, &params).unwrap();
            let config = SolveConfig {
                recover: true,
                ..SolveConfig::default()
            };
            let report = solve(&inst, &config).unwrap();
            let witnesses = report.witnesses.as_ref().unwrap();
            assert_eq!(witnesses.len(), report.frontier.len());
            for (point, x) in report.frontier.iter().zip(witnesses) {
                let (feasible, f) = inst.evaluate(x).unwrap();
                assert!(feasible, "{class}: witness infeasible");
                assert_eq!(&f, point, "{class}: witness image mismatch");
            }
        }
    }
}
