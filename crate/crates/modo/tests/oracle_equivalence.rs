//! Cross-checks the whole pipeline against the brute-force oracle on small
//! random instances of every class, and verifies that each reduction leaves
//! the frontier untouched. The heavier sweep lives in the CLI crate's
//! acceptance suite; this is the fast inner loop.

use modo::oracle::brute_force_frontier;
use modo::problems::{gen, GenParams, Instance, ProblemClass};
use modo::recursion::CompileLimits;
use modo::solver::{solve, Algorithm, SolveConfig};
use modo::vector::{nd_filter, ObjectiveVector};
use modo::vpo::{local_arc_removal, prune_parallel_arcs, reduce_sweep};
use modo::Network;

fn small_instance(class: ProblemClass, index: u64) -> Instance {
    let (n, k) = match class {
        ProblemClass::Tsp => (5 + (index % 3) as usize, 2 + (index % 2) as usize),
        _ => (8 + (index % 4) as usize, 2 + (index % 3) as usize),
    };
    let params = GenParams {
        m_bound: 40,
        delta: 0.4,
    };
    gen::generate(class, n, k, 1000 + index, &params).unwrap()
}

fn network_frontier(inst: &Instance, net: &Network) -> Vec<ObjectiveVector> {
    let raw = net.all_path_weights(100_000).unwrap();
    let with_offset: Vec<ObjectiveVector> = raw
        .iter()
        .map(|w| w.checked_add(&net.root_offset).unwrap())
        .collect();
    inst.frontier_to_original_sense(&nd_filter(&with_offset))
}

#[test]
fn every_class_matches_the_oracle_across_configurations() {
    for class in ProblemClass::ALL {
        for index in 0..6 {
            let inst = small_instance(class, index);
            let expected = brute_force_frontier(&inst).unwrap();
            for algorithm in Algorithm::ALL {
                for use_filter in [false, true] {
                    for reductions in [true, false] {
                        let config = SolveConfig {
                            algorithm,
                            use_filter,
                            reduce: reductions,
                            prune: reductions,
                            arc_removal: reductions,
                            ..SolveConfig::default()
                        };
                        let report = solve(&inst, &config).unwrap();
                        assert_eq!(
                            report.frontier,
                            expected,
                            "{class} #{index} {} filter={use_filter} reductions={reductions}",
                            algorithm.name()
                        );
                    }
                }
            }
        }
    }
}

#[test]
fn each_reduction_preserves_the_frontier_and_shrinks() {
    for class in ProblemClass::ALL {
        for index in 0..4 {
            let inst = small_instance(class, 50 + index);
            let baseline = inst.compile(&CompileLimits::default()).unwrap();
            let frontier_before = network_frontier(&inst, &baseline);

            for op in ["reduce", "prune", "arcrm"] {
                let mut net = baseline.clone();
                let (nodes_before, arcs_before) = (net.live_node_count(), net.live_arc_count());
                match op {
                    "reduce" => {
                        reduce_sweep(&mut net).unwrap();
                    }
                    "prune" => {
                        prune_parallel_arcs(&mut net);
                    }
                    _ => {
                        local_arc_removal(&mut net, 2);
                    }
                }
                assert!(net.live_node_count() <= nodes_before, "{class} #{index} {op}");
                assert!(net.live_arc_count() <= arcs_before, "{class} #{index} {op}");
                assert!(net.validate().is_empty(), "{class} #{index} {op}");
                assert_eq!(
                    network_frontier(&inst, &net),
                    frontier_before,
                    "{class} #{index} {op}"
                );
            }
        }
    }
}

#[test]
fn no_mergeable_pair_survives_a_sweep() {
    for index in 0..4 {
        let inst = small_instance(ProblemClass::Knapsack, 80 + index);
        let mut net = inst.compile(&CompileLimits::default()).unwrap();
        reduce_sweep(&mut net).unwrap();
        for layer in 1..net.num_layers() - 1 {
            let nodes: Vec<_> = net.layer_nodes(layer).collect();
            for (i, &a) in nodes.iter().enumerate() {
                for &b in &nodes[i + 1..] {
                    assert!(!modo::vpo::mergeable(&net, a, b), "layer {layer}");
                }
            }
        }
    }
}

/// The capacity comparator's premise, checked by enumeration: whenever one
/// node used less weight, the completions reachable from it weakly dominate
/// the other's.
#[test]
fn knapsack_comparator_premise_holds_by_enumeration() {
    for index in 0..4 {
        let inst = small_instance(ProblemClass::Knapsack, 120 + index);
        let net = inst.compile(&CompileLimits::default()).unwrap();
        let terminal = net.terminal();
        for layer in 1..net.num_layers() - 1 {
            let nodes: Vec<_> = net.layer_nodes(layer).collect();
            let completions: Vec<Vec<ObjectiveVector>> = nodes
                .iter()
                .map(|&u| {
                    let paths = net.paths_between(u, terminal, 100_000).unwrap();
                    nd_filter(&paths.into_iter().map(|(_, w)| w).collect::<Vec<_>>())
                })
                .collect();
            let state = |u: modo::NodeId| -> i64 {
                i64::from_le_bytes(
                    net.node(u).state_key.as_deref().unwrap().try_into().unwrap(),
                )
            };
            for (i, &u) in nodes.iter().enumerate() {
                for (j, &w) in nodes.iter().enumerate() {
                    if i == j || state(w) > state(u) {
                        continue;
                    }
                    // w used less weight: ND of the union must be w's set.
                    let mut union = completions[i].clone();
                    union.extend_from_slice(&completions[j]);
                    assert_eq!(
                        nd_filter(&union),
                        completions[j],
                        "layer {layer}: {} should cover {}",
                        state(w),
                        state(u)
                    );
                }
            }
        }
    }
}

#[test]
fn knapsack_filtering_never_changes_the_frontier() {
    for index in 0..8 {
        let inst = small_instance(ProblemClass::Knapsack, 200 + index);
        let expected = brute_force_frontier(&inst).unwrap();
        for algorithm in Algorithm::ALL {
            let config = SolveConfig {
                algorithm,
                use_filter: true,
                ..SolveConfig::default()
            };
            let report = solve(&inst, &config).unwrap();
            assert_eq!(report.frontier, expected, "#{index} {}", algorithm.name());
        }
    }
}

#[test]
fn taking_everything_when_it_fits() {
    // Capacity above the total weight: the frontier is the full profit sum.
    let inst = Instance {
        n: 4,
        k: 2,
        payload: modo::problems::Payload::Knapsack(modo::problems::KnapsackData {
            weights: vec![2, 3, 4, 5],
            profits: vec![vec![1, 2, 3, 4], vec![4, 3, 2, 1]],
            capacity: 14,
        }),
    };
    let report = solve(&inst, &SolveConfig::default()).unwrap();
    assert_eq!(report.frontier, vec![ObjectiveVector::new([10, 10])]);
    assert_eq!(brute_force_frontier(&inst).unwrap(), report.frontier);
}
