//! Set packing and set covering over a shared binary constraint matrix.
//!
//! Both track per-constraint status in a bitmask. Packing marks a constraint
//! once it is tight or all of its variables have been decided; covering
//! tracks the constraints still uncovered and forces a variable to one when
//! it is the last chance to cover some constraint.

use super::CoverPackData;
use crate::recursion::DpModel;
use crate::vector::ObjectiveVector;
use smallvec::{smallvec, SmallVec};

/// Per-column and per-row structure shared by both formulations.
struct Matrix {
    /// Rows containing each column.
    rows_with: Vec<Vec<usize>>,
    /// Bitmask of the rows containing each column.
    row_mask: Vec<u64>,
    /// Highest column of each row.
    last_var: Vec<usize>,
    m: usize,
}

impl Matrix {
    fn new(data: &CoverPackData, n: usize) -> Self {
        let m = data.rows.len();
        let mut rows_with = vec![Vec::new(); n];
        let mut row_mask = vec![0u64; n];
        let mut last_var = vec![0usize; m];
        for (i, row) in data.rows.iter().enumerate() {
            for &j in row {
                rows_with[j].push(i);
                row_mask[j] |= 1 << i;
            }
            last_var[i] = *row.last().expect("rows are non-empty");
        }
        Matrix {
            rows_with,
            row_mask,
            last_var,
            m,
        }
    }
}

pub struct SetPackDp<'a> {
    data: &'a CoverPackData,
    matrix: Matrix,
    n: usize,
    k: usize,
}

impl<'a> SetPackDp<'a> {
    pub fn new(data: &'a CoverPackData, n: usize, k: usize) -> Self {
        SetPackDp {
            matrix: Matrix::new(data, n),
            data,
            n,
            k,
        }
    }
}

impl DpModel for SetPackDp<'_> {
    /// Bit i set: constraint i holds with equality or all of its variables
    /// are already decided.
    type State = u64;

    fn num_stages(&self) -> usize {
        self.n
    }

    fn num_objectives(&self) -> usize {
        self.k
    }

    fn initial_state(&self) -> u64 {
        0
    }

    fn feasible_values(&self, stage: usize, state: &u64) -> SmallVec<[i64; 2]> {
        if state & self.matrix.row_mask[stage] == 0 {
            smallvec![0, 1]
        } else {
            smallvec![0]
        }
    }

    fn transition(&self, stage: usize, state: &u64, value: i64) -> u64 {
        let mut next = *state;
        for &i in &self.matrix.rows_with[stage] {
            if self.matrix.last_var[i] == stage || value == 1 {
                next |= 1 << i;
            }
        }
        next
    }

    fn reward(&self, stage: usize, _state: &u64, value: i64) -> ObjectiveVector {
        ObjectiveVector::new(self.data.costs.iter().map(|c| value * c[stage]))
    }

    fn state_key(&self, state: &u64) -> Vec<u8> {
        state.to_le_bytes().to_vec()
    }
}

pub struct SetCoverDp<'a> {
    data: &'a CoverPackData,
    matrix: Matrix,
    n: usize,
    k: usize,
}

impl<'a> SetCoverDp<'a> {
    pub fn new(data: &'a CoverPackData, n: usize, k: usize) -> Self {
        SetCoverDp {
            matrix: Matrix::new(data, n),
            data,
            n,
            k,
        }
    }
}

impl DpModel for SetCoverDp<'_> {
    /// Bit i set: constraint i is not yet covered.
    type State = u64;

    fn num_stages(&self) -> usize {
        self.n
    }

    fn num_objectives(&self) -> usize {
        self.k
    }

    fn initial_state(&self) -> u64 {
        if self.matrix.m == 64 {
            u64::MAX
        } else {
            (1u64 << self.matrix.m) - 1
        }
    }

    fn feasible_values(&self, stage: usize, state: &u64) -> SmallVec<[i64; 2]> {
        let forced = self
            .matrix
            .rows_with[stage]
            .iter()
            .any(|&i| state >> i & 1 == 1 && self.matrix.last_var[i] == stage);
        if forced {
            smallvec![1]
        } else {
            smallvec![0, 1]
        }
    }

    fn transition(&self, stage: usize, state: &u64, value: i64) -> u64 {
        if value == 1 {
            state & !self.matrix.row_mask[stage]
        } else {
            *state
        }
    }

    /// Costs are negated: the canonical orientation maximizes.
    fn reward(&self, stage: usize, _state: &u64, value: i64) -> ObjectiveVector {
        ObjectiveVector::new(self.data.costs.iter().map(|c| -(value * c[stage])))
    }

    fn state_key(&self, state: &u64) -> Vec<u8> {
        state.to_le_bytes().to_vec()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::recursion::{compile, CompileLimits};

    fn tiny() -> CoverPackData {
        CoverPackData {
            rows: vec![vec![0, 1], vec![1, 2, 3], vec![2, 4]],
            costs: vec![vec![3, 1, 4, 1, 5], vec![2, 7, 1, 8, 2]],
        }
    }

    #[test]
    fn packing_paths_equal_feasible_vectors() {
        let data = tiny();
        let net = compile(&SetPackDp::new(&data, 5, 2), &CompileLimits::default()).unwrap();
        let mut feasible = 0u128;
        for mask in 0u32..1 << 5 {
            let ok = data.rows.iter().all(|row| {
                row.iter().map(|&j| (mask >> j & 1) as i64).sum::<i64>() <= 1
            });
            if ok {
                feasible += 1;
            }
        }
        assert_eq!(net.count_paths(), feasible);
        assert!(net.validate().is_empty());
    }

    #[test]
    fn covering_paths_equal_feasible_vectors() {
        let data = tiny();
        let net = compile(&SetCoverDp::new(&data, 5, 2), &CompileLimits::default()).unwrap();
        let mut feasible = 0u128;
        for mask in 0u32..1 << 5 {
            let ok = data.rows.iter().all(|row| {
                row.iter().map(|&j| (mask >> j & 1) as i64).sum::<i64>() >= 1
            });
            if ok {
                feasible += 1;
            }
        }
        assert_eq!(net.count_paths(), feasible);
        assert!(net.validate().is_empty());
    }
}
