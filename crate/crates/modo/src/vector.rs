//! Objective vectors, the dominance relation, and nondominated-set filtering.
//!
//! All solver layers work in a canonical *maximize* orientation; minimization
//! problems are negated when their models are built and re-negated when
//! results are reported. Components are signed 64-bit integers and every
//! arithmetic operation is overflow-checked.

use smallvec::SmallVec;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum VectorError {
    #[error("objective vector arithmetic overflowed")]
    Overflow,
    #[error("objective dimension mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },
}

/// A point in objective space: one value per objective.
///
/// Inline storage covers the common case of up to four objectives without
/// allocating; larger dimensions spill to the heap.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ObjectiveVector {
    values: SmallVec<[i64; 4]>,
}

impl ObjectiveVector {
    pub fn new(values: impl IntoIterator<Item = i64>) -> Self {
        ObjectiveVector {
            values: values.into_iter().collect(),
        }
    }

    pub fn zeros(k: usize) -> Self {
        ObjectiveVector {
            values: std::iter::repeat(0).take(k).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn as_slice(&self) -> &[i64] {
        &self.values
    }

    pub fn iter(&self) -> std::slice::Iter<'_, i64> {
        self.values.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|&v| v == 0)
    }

    /// Componentwise checked sum.
    pub fn checked_add(&self, other: &Self) -> Result<Self, VectorError> {
        if self.len() != other.len() {
            return Err(VectorError::LengthMismatch {
                left: self.len(),
                right: other.len(),
            });
        }
        let mut values = SmallVec::with_capacity(self.len());
        for (a, b) in self.values.iter().zip(other.values.iter()) {
            values.push(a.checked_add(*b).ok_or(VectorError::Overflow)?);
        }
        Ok(ObjectiveVector { values })
    }

    /// Componentwise checked difference.
    pub fn checked_sub(&self, other: &Self) -> Result<Self, VectorError> {
        if self.len() != other.len() {
            return Err(VectorError::LengthMismatch {
                left: self.len(),
                right: other.len(),
            });
        }
        let mut values = SmallVec::with_capacity(self.len());
        for (a, b) in self.values.iter().zip(other.values.iter()) {
            values.push(a.checked_sub(*b).ok_or(VectorError::Overflow)?);
        }
        Ok(ObjectiveVector { values })
    }

    /// Componentwise checked negation.
    pub fn checked_neg(&self) -> Result<Self, VectorError> {
        let mut values = SmallVec::with_capacity(self.len());
        for a in self.values.iter() {
            values.push(a.checked_neg().ok_or(VectorError::Overflow)?);
        }
        Ok(ObjectiveVector { values })
    }

    /// Componentwise minimum with `other`, in place.
    pub fn min_assign(&mut self, other: &Self) {
        debug_assert_eq!(self.len(), other.len());
        for (a, b) in self.values.iter_mut().zip(other.values.iter()) {
            *a = (*a).min(*b);
        }
    }
}

impl From<Vec<i64>> for ObjectiveVector {
    fn from(values: Vec<i64>) -> Self {
        ObjectiveVector::new(values)
    }
}

impl<const N: usize> From<[i64; N]> for ObjectiveVector {
    fn from(values: [i64; N]) -> Self {
        ObjectiveVector::new(values)
    }
}

impl std::ops::Index<usize> for ObjectiveVector {
    type Output = i64;
    fn index(&self, i: usize) -> &i64 {
        &self.values[i]
    }
}

/// Strict Pareto dominance: `y` dominates `y2` iff `y >= y2` componentwise
/// and `y > y2` in at least one component. Equal vectors never dominate.
///
/// Panics when the vectors have different lengths; dimensions are fixed per
/// problem and a mismatch is a caller bug.
pub fn dominates(y: &ObjectiveVector, y2: &ObjectiveVector) -> bool {
    assert_eq!(
        y.len(),
        y2.len(),
        "dominance requires equal objective dimensions"
    );
    let mut strict = false;
    for (a, b) in y.iter().zip(y2.iter()) {
        if a < b {
            return false;
        }
        if a > b {
            strict = true;
        }
    }
    strict
}

/// Weak dominance: `y >= y2` componentwise (includes equality).
pub fn weakly_dominates(y: &ObjectiveVector, y2: &ObjectiveVector) -> bool {
    debug_assert_eq!(y.len(), y2.len());
    y.iter().zip(y2.iter()).all(|(a, b)| a >= b)
}

/// The skyline operator: keeps exactly the vectors not dominated by any other
/// vector of the set. Duplicates collapse to a single representative. The
/// result is sorted lexicographically ascending, which is the canonical form
/// used for set comparison and file output.
pub fn nd_filter(input: &[ObjectiveVector]) -> Vec<ObjectiveVector> {
    let mut owned = input.to_vec();
    nd_in_place(&mut owned);
    owned
}

/// In-place variant of [`nd_filter`].
///
/// Sorts descending lexicographically; a dominating vector then always
/// precedes anything it dominates, so a single forward sweep against the
/// kept prefix suffices for any K.
pub fn nd_in_place(set: &mut Vec<ObjectiveVector>) {
    if set.len() <= 1 {
        return;
    }
    set.sort_unstable_by(|a, b| b.cmp(a));
    if set[0].len() == 2 {
        // K = 2: after the sort only the running maximum of the second
        // coordinate must be beaten.
        let mut best_second = i64::MIN;
        let mut prev: Option<ObjectiveVector> = None;
        set.retain(|v| {
            if let Some(p) = &prev {
                if p == v {
                    return false;
                }
            }
            prev = Some(v.clone());
            if v[1] > best_second {
                best_second = v[1];
                true
            } else {
                false
            }
        });
    } else {
        let mut kept: Vec<ObjectiveVector> = Vec::new();
        for v in set.iter() {
            if !kept.iter().any(|k| weakly_dominates(k, v)) {
                kept.push(v.clone());
            }
        }
        *set = kept;
    }
    set.reverse();
}

/// Like [`nd_in_place`] but reports, for each survivor, its index in the
/// original input. Used by the label pass that keeps predecessor records.
pub fn nd_with_kept(input: &[ObjectiveVector]) -> (Vec<ObjectiveVector>, Vec<usize>) {
    let mut order: Vec<usize> = (0..input.len()).collect();
    order.sort_unstable_by(|&a, &b| input[b].cmp(&input[a]));
    let mut kept: Vec<usize> = Vec::new();
    for &i in &order {
        if !kept.iter().any(|&k| weakly_dominates(&input[k], &input[i])) {
            kept.push(i);
        }
    }
    kept.reverse();
    let values = kept.iter().map(|&i| input[i].clone()).collect();
    (values, kept)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn v(values: &[i64]) -> ObjectiveVector {
        ObjectiveVector::new(values.iter().copied())
    }

    /// The 14 root-terminal path weights of the running three-objective
    /// set-packing example.
    fn fourteen_path_weights() -> Vec<ObjectiveVector> {
        [
            [8, 13, 17],
            [6, 10, 11],
            [7, 15, 8],
            [6, 7, 19],
            [4, 4, 13],
            [5, 9, 10],
            [3, 6, 11],
            [1, 3, 5],
            [2, 8, 2],
            [7, 14, 13],
            [6, 13, 6],
            [5, 11, 7],
            [6, 16, 4],
            [10, 21, 8],
        ]
        .iter()
        .map(|w| v(w))
        .collect()
    }

    /// Quadratic all-pairs reference filter, the independent check for
    /// `nd_filter`.
    fn nd_reference(input: &[ObjectiveVector]) -> Vec<ObjectiveVector> {
        let mut out: Vec<ObjectiveVector> = Vec::new();
        for (i, y) in input.iter().enumerate() {
            let dominated = input.iter().any(|other| dominates(other, y));
            let duplicate_earlier = input[..i].iter().any(|other| other == y);
            if !dominated && !duplicate_earlier {
                out.push(y.clone());
            }
        }
        out.sort_unstable();
        out
    }

    #[test]
    fn dominates_examples() {
        assert!(dominates(&v(&[10, 21, 8]), &v(&[6, 16, 4])));
        assert!(!dominates(&v(&[8, 13, 17]), &v(&[6, 7, 19])));
        assert!(!dominates(&v(&[6, 7, 19]), &v(&[8, 13, 17])));
        // Equality never dominates.
        assert!(!dominates(&v(&[3, 3]), &v(&[3, 3])));
    }

    #[test]
    #[should_panic(expected = "equal objective dimensions")]
    fn dominates_rejects_length_mismatch() {
        dominates(&v(&[1, 2]), &v(&[1, 2, 3]));
    }

    #[test]
    fn nd_filter_on_the_fourteen_path_weights() {
        let got = nd_filter(&fourteen_path_weights());
        let want = vec![
            v(&[6, 7, 19]),
            v(&[7, 14, 13]),
            v(&[8, 13, 17]),
            v(&[10, 21, 8]),
        ];
        assert_eq!(got, want);
    }

    #[test]
    fn nd_filter_empty() {
        assert!(nd_filter(&[]).is_empty());
    }

    #[test]
    fn nd_filter_collapses_duplicates() {
        let got = nd_filter(&[v(&[3, 3]), v(&[3, 3]), v(&[1, 1])]);
        assert_eq!(got, vec![v(&[3, 3])]);
    }

    #[test]
    fn nd_filter_matches_reference_on_random_sets() {
        let mut rng = crate::rng::SplitMix64::new(0xC0FFEE);
        let mut set = Vec::new();
        for _ in 0..200 {
            set.push(v(&[
                rng.uniform(0, 50),
                rng.uniform(0, 50),
                rng.uniform(0, 50),
            ]));
        }
        assert_eq!(nd_filter(&set), nd_reference(&set));
    }

    #[test]
    fn nd_filter_matches_reference_across_dimensions() {
        for k in 2..=7usize {
            let mut rng = crate::rng::SplitMix64::new(1000 + k as u64);
            let size = if k <= 3 { 10_000 } else { 2_000 };
            let set: Vec<ObjectiveVector> = (0..size)
                .map(|_| ObjectiveVector::new((0..k).map(|_| rng.uniform(0, 30))))
                .collect();
            assert_eq!(nd_filter(&set), nd_reference(&set), "K = {k}");
        }
    }

    #[test]
    fn nd_with_kept_reports_original_indices() {
        let input = vec![v(&[1, 1]), v(&[5, 5]), v(&[2, 7]), v(&[5, 5])];
        let (values, kept) = nd_with_kept(&input);
        assert_eq!(values, vec![v(&[2, 7]), v(&[5, 5])]);
        for (val, &idx) in values.iter().zip(kept.iter()) {
            assert_eq!(&input[idx], val);
        }
    }

    #[test]
    fn checked_add_overflow_is_an_error() {
        let big = v(&[i64::MAX, 0]);
        assert_eq!(big.checked_add(&v(&[1, 0])), Err(VectorError::Overflow));
        assert_eq!(
            v(&[i64::MIN, 0]).checked_neg(),
            Err(VectorError::Overflow)
        );
    }

    proptest! {
        #[test]
        fn dominance_is_irreflexive(xs in proptest::collection::vec(-100i64..100, 3)) {
            let y = ObjectiveVector::new(xs);
            prop_assert!(!dominates(&y, &y));
        }

        #[test]
        fn dominance_is_asymmetric(
            a in proptest::collection::vec(-100i64..100, 3),
            b in proptest::collection::vec(-100i64..100, 3),
        ) {
            let (a, b) = (ObjectiveVector::new(a), ObjectiveVector::new(b));
            prop_assert!(!(dominates(&a, &b) && dominates(&b, &a)));
        }

        #[test]
        fn dominance_is_transitive(
            a in proptest::collection::vec(-20i64..20, 3),
            b in proptest::collection::vec(-20i64..20, 3),
            c in proptest::collection::vec(-20i64..20, 3),
        ) {
            let (a, b, c) = (
                ObjectiveVector::new(a),
                ObjectiveVector::new(b),
                ObjectiveVector::new(c),
            );
            if dominates(&a, &b) && dominates(&b, &c) {
                prop_assert!(dominates(&a, &c));
            }
        }

        #[test]
        fn nd_filter_is_idempotent_and_an_antichain(
            raw in proptest::collection::vec(proptest::collection::vec(-30i64..30, 3), 0..60),
        ) {
            let set: Vec<ObjectiveVector> = raw.into_iter().map(ObjectiveVector::new).collect();
            let once = nd_filter(&set);
            prop_assert_eq!(&nd_filter(&once), &once);
            for (i, a) in once.iter().enumerate() {
                for (j, b) in once.iter().enumerate() {
                    if i != j {
                        prop_assert!(!dominates(a, b));
                        prop_assert!(a != b);
                    }
                }
            }
        }
    }
}
