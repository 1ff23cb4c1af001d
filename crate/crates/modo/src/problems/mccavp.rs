//! Cardinality-constrained absolute value minimization.
//!
//! States track the running linear partials and the count of ones. Rewards
//! are the negated change of each `|a.x - b|` term, so they telescope: any
//! path's weight plus the root offset `-|b|` equals the negated objective of
//! its decision vector.

use super::MccavpData;
use crate::recursion::DpModel;
use crate::vector::ObjectiveVector;
use smallvec::{smallvec, SmallVec};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MccavpState {
    /// Running value of each `a^k . x`; empty for the terminal sentinel.
    pub partials: SmallVec<[i64; 4]>,
    /// Number of variables set to one so far; -1 for the terminal sentinel.
    pub ones: i64,
}

pub struct MccavpDp<'a> {
    data: &'a MccavpData,
    n: usize,
    k: usize,
}

impl<'a> MccavpDp<'a> {
    pub fn new(data: &'a MccavpData, n: usize, k: usize) -> Self {
        MccavpDp { data, n, k }
    }
}

impl DpModel for MccavpDp<'_> {
    type State = MccavpState;

    fn num_stages(&self) -> usize {
        self.n
    }

    fn num_objectives(&self) -> usize {
        self.k
    }

    fn initial_state(&self) -> MccavpState {
        MccavpState {
            partials: smallvec![0; self.k],
            ones: 0,
        }
    }

    fn feasible_values(&self, _stage: usize, state: &MccavpState) -> SmallVec<[i64; 2]> {
        if state.ones + 1 <= self.data.cardinality {
            smallvec![0, 1]
        } else {
            smallvec![0]
        }
    }

    fn transition(&self, stage: usize, state: &MccavpState, value: i64) -> MccavpState {
        if stage + 1 == self.n {
            return MccavpState {
                partials: SmallVec::new(),
                ones: -1,
            };
        }
        MccavpState {
            partials: state
                .partials
                .iter()
                .enumerate()
                .map(|(k, &theta)| theta + self.data.rows[k][stage] * value)
                .collect(),
            ones: state.ones + value,
        }
    }

    fn reward(&self, stage: usize, state: &MccavpState, value: i64) -> ObjectiveVector {
        ObjectiveVector::new((0..self.k).map(|k| {
            let theta = state.partials[k];
            let b = self.data.targets[k];
            let stepped = theta + self.data.rows[k][stage] * value;
            -((stepped - b).abs() - (theta - b).abs())
        }))
    }

    fn state_key(&self, state: &MccavpState) -> Vec<u8> {
        let mut key = Vec::with_capacity(8 * (state.partials.len() + 1));
        for p in &state.partials {
            key.extend_from_slice(&p.to_le_bytes());
        }
        key.extend_from_slice(&state.ones.to_le_bytes());
        key
    }

    /// `-|b|` per objective: with zero-initialized partials the telescoped
    /// path weight then equals the negated true objective.
    fn root_offset(&self) -> ObjectiveVector {
        ObjectiveVector::new(self.data.targets.iter().map(|b| -b.abs()))
    }
}
