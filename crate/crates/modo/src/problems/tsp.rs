//! Traveling salesperson: (unvisited set, last city) states with negated
//! distance rewards, plus a synthetic closing stage returning to city 1.

use super::TspData;
use crate::recursion::DpModel;
use crate::vector::ObjectiveVector;
use smallvec::SmallVec;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TspState {
    /// Bitmask of cities (0-based) still to visit; city 0 is the start.
    pub unvisited: u64,
    pub last: u8,
}

pub struct TspDp<'a> {
    data: &'a TspData,
    n: usize,
    k: usize,
}

impl<'a> TspDp<'a> {
    pub fn new(data: &'a TspData, n: usize, k: usize) -> Self {
        TspDp { data, n, k }
    }

    fn closing_stage(&self) -> usize {
        self.n - 1
    }
}

impl DpModel for TspDp<'_> {
    type State = TspState;

    fn num_stages(&self) -> usize {
        self.n
    }

    fn num_objectives(&self) -> usize {
        self.k
    }

    fn initial_state(&self) -> TspState {
        TspState {
            unvisited: ((1u64 << self.n) - 1) & !1,
            last: 0,
        }
    }

    /// Values are 1-based city numbers; the closing stage has one synthetic
    /// value standing for the return to city 1.
    fn feasible_values(&self, stage: usize, state: &TspState) -> SmallVec<[i64; 2]> {
        if stage == self.closing_stage() {
            let mut one = SmallVec::new();
            one.push(1);
            one
        } else {
            (0..self.n as u32)
                .filter(|&c| state.unvisited >> c & 1 == 1)
                .map(|c| (c + 1) as i64)
                .collect()
        }
    }

    fn transition(&self, stage: usize, state: &TspState, value: i64) -> TspState {
        if stage == self.closing_stage() {
            TspState {
                unvisited: 0,
                last: 0,
            }
        } else {
            let city = (value - 1) as u8;
            TspState {
                unvisited: state.unvisited & !(1 << city),
                last: city,
            }
        }
    }

    fn reward(&self, stage: usize, state: &TspState, value: i64) -> ObjectiveVector {
        let to = if stage == self.closing_stage() {
            0
        } else {
            (value - 1) as usize
        };
        let from = state.last as usize;
        ObjectiveVector::new(self.data.dist.iter().map(|m| -m[from][to]))
    }

    fn state_key(&self, state: &TspState) -> Vec<u8> {
        let mut key = state.unvisited.to_le_bytes().to_vec();
        key.push(state.last);
        key
    }

    fn records_decision(&self, stage: usize) -> bool {
        stage != self.closing_stage()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::recursion::{compile, CompileLimits};

    fn square() -> TspData {
        TspData {
            dist: vec![
                vec![
                    vec![0, 2, 9, 10],
                    vec![2, 0, 6, 4],
                    vec![9, 6, 0, 8],
                    vec![10, 4, 8, 0],
                ],
                vec![
                    vec![0, 1, 5, 3],
                    vec![1, 0, 7, 2],
                    vec![5, 7, 0, 4],
                    vec![3, 2, 4, 0],
                ],
            ],
        }
    }

    #[test]
    fn set_states_canonicalize_as_bitmasks() {
        let data = square();
        let dp = TspDp::new(&data, 4, 2);
        let a = TspState {
            unvisited: 1 << 2 | 1 << 3,
            last: 1,
        };
        let b = TspState {
            unvisited: 1 << 3 | 1 << 2,
            last: 1,
        };
        assert_eq!(dp.state_key(&a), dp.state_key(&b));
    }

    #[test]
    fn four_city_network_has_six_directed_tours() {
        let data = square();
        let net = compile(&TspDp::new(&data, 4, 2), &CompileLimits::default()).unwrap();
        assert_eq!(net.count_paths(), 6);
        assert!(net.validate().is_empty());
        // Closing arcs carry no decision.
        let terminal = net.terminal();
        for a in net.in_arcs(terminal) {
            assert!(net.arc(a).decision.is_none());
        }
    }
}
