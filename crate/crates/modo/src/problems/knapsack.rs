//! 0-1 knapsack: scalar used-weight state, profit-vector rewards, and the
//! classical capacity dominance comparator for label filtering.

use super::KnapsackData;
use crate::recursion::DpModel;
use crate::search::{Direction, NodeComparator};
use crate::vector::ObjectiveVector;
use smallvec::{smallvec, SmallVec};

pub struct KnapsackDp<'a> {
    data: &'a KnapsackData,
    k: usize,
    n: usize,
}

impl<'a> KnapsackDp<'a> {
    pub fn new(data: &'a KnapsackData, k: usize) -> Self {
        KnapsackDp {
            data,
            k,
            n: data.weights.len(),
        }
    }
}

impl DpModel for KnapsackDp<'_> {
    type State = i64;

    fn num_stages(&self) -> usize {
        self.n
    }

    fn num_objectives(&self) -> usize {
        self.k
    }

    fn initial_state(&self) -> i64 {
        0
    }

    fn feasible_values(&self, stage: usize, state: &i64) -> SmallVec<[i64; 2]> {
        if state + self.data.weights[stage] <= self.data.capacity {
            smallvec![0, 1]
        } else {
            smallvec![0]
        }
    }

    fn transition(&self, stage: usize, state: &i64, value: i64) -> i64 {
        if stage + 1 == self.n {
            // Final transitions collapse onto one terminal state.
            self.data.capacity
        } else {
            state + value * self.data.weights[stage]
        }
    }

    fn reward(&self, stage: usize, _state: &i64, value: i64) -> ObjectiveVector {
        ObjectiveVector::new(self.data.profits.iter().map(|p| value * p[stage]))
    }

    fn state_key(&self, state: &i64) -> Vec<u8> {
        state.to_le_bytes().to_vec()
    }

    fn comparator(&self) -> Option<&dyn NodeComparator> {
        Some(&KnapsackComparator)
    }
}

/// A node with less used weight has at least the completions of one with
/// more: any item set that still fits there also fits with the extra room
/// and earns the same profits. That covers top-down filtering only; prefix
/// profit sets are not ordered by remaining capacity, so bottom-up labels
/// stay unfiltered.
pub struct KnapsackComparator;

impl NodeComparator for KnapsackComparator {
    fn dominates(&self, _layer: usize, key_v: &[u8], key_u: &[u8]) -> bool {
        decode(key_v) <= decode(key_u)
    }

    fn rank(&self, _layer: usize, key: &[u8]) -> Option<i64> {
        Some(decode(key))
    }

    fn licenses(&self, direction: Direction) -> bool {
        direction == Direction::TopDown
    }
}

fn decode(key: &[u8]) -> i64 {
    i64::from_le_bytes(key.try_into().expect("knapsack states are 8-byte keys"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::recursion::{compile, CompileLimits};

    fn small() -> KnapsackData {
        KnapsackData {
            weights: vec![3, 5, 4, 2, 6, 1],
            profits: vec![vec![4, 7, 1, 3, 9, 2], vec![2, 2, 8, 5, 1, 6]],
            capacity: 10,
        }
    }

    #[test]
    fn equal_states_share_a_key() {
        let data = small();
        let dp = KnapsackDp::new(&data, 2);
        assert_eq!(dp.state_key(&7), dp.state_key(&7));
        assert_ne!(dp.state_key(&7), dp.state_key(&8));
    }

    #[test]
    fn path_count_equals_feasible_vector_count() {
        let data = small();
        let n = data.weights.len();
        let net = compile(&KnapsackDp::new(&data, 2), &CompileLimits::default()).unwrap();
        let mut feasible = 0u128;
        for mask in 0u32..1 << n {
            let used: i64 = (0..n)
                .filter(|&i| mask >> i & 1 == 1)
                .map(|i| data.weights[i])
                .sum();
            if used <= data.capacity {
                feasible += 1;
            }
        }
        assert_eq!(net.count_paths(), feasible);
        assert!(net.validate().is_empty());
    }

    #[test]
    fn layers_never_exceed_distinct_reachable_states() {
        let data = small();
        let net = compile(&KnapsackDp::new(&data, 2), &CompileLimits::default()).unwrap();
        let n = data.weights.len();
        for (j, size) in net.layer_sizes().iter().enumerate().take(n) {
            let mut states = std::collections::BTreeSet::new();
            for mask in 0u32..1 << j {
                let used: i64 = (0..j)
                    .filter(|&i| mask >> i & 1 == 1)
                    .map(|i| data.weights[i])
                    .sum();
                if used <= data.capacity {
                    states.insert(used);
                }
            }
            assert!(*size <= states.len().max(1), "layer {j}");
        }
    }
}
