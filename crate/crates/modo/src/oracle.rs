//! Brute-force Pareto frontiers by exhaustive enumeration.
//!
//! The oracle shares only the evaluation kernel and the skyline filter with
//! the solver; it never touches the compiler, the network, or the search,
//! which is what makes it a meaningful check on all of them. No pruning on
//! purpose.

use crate::problems::{Instance, ProblemClass, ProblemError, Sense};
use crate::vector::{nd_in_place, ObjectiveVector};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum OracleError {
    #[error("instance too large to enumerate: {0}")]
    TooLarge(String),
    #[error(transparent)]
    Problem(#[from] ProblemError),
}

/// Enumeration bounds: binary classes up to 24 variables, tours up to 10
/// cities.
pub const MAX_BINARY_VARS: usize = 24;
pub const MAX_TOUR_CITIES: usize = 10;

/// Enumerates every decision vector (or tour), keeps the feasible ones, and
/// returns the nondominated image set in the instance's original sense,
/// sorted lexicographically ascending.
pub fn brute_force_frontier(inst: &Instance) -> Result<Vec<ObjectiveVector>, OracleError> {
    inst.validate()?;
    let mut canonical: Vec<ObjectiveVector> = Vec::new();
    match inst.class() {
        ProblemClass::Tsp => {
            if inst.n > MAX_TOUR_CITIES {
                return Err(OracleError::TooLarge(format!(
                    "{} cities exceeds the {MAX_TOUR_CITIES}-city tour bound",
                    inst.n
                )));
            }
            let mut tour: Vec<i64> = (1..=inst.n as i64).collect();
            loop {
                let (feasible, f) = inst.evaluate(&tour)?;
                if feasible {
                    canonical.push(to_canonical(inst.sense(), f));
                }
                if !next_permutation(&mut tour[1..]) {
                    break;
                }
            }
        }
        _ => {
            if inst.n > MAX_BINARY_VARS {
                return Err(OracleError::TooLarge(format!(
                    "{} variables exceeds the {MAX_BINARY_VARS}-variable bound",
                    inst.n
                )));
            }
            let mut x = vec![0i64; inst.n];
            for mask in 0u64..1 << inst.n {
                for (i, xi) in x.iter_mut().enumerate() {
                    *xi = (mask >> i & 1) as i64;
                }
                let (feasible, f) = inst.evaluate(&x)?;
                if feasible {
                    canonical.push(to_canonical(inst.sense(), f));
                }
            }
        }
    }
    nd_in_place(&mut canonical);
    Ok(inst.frontier_to_original_sense(&canonical))
}

fn to_canonical(sense: Sense, f: ObjectiveVector) -> ObjectiveVector {
    match sense {
        Sense::Max => f,
        Sense::Min => f.checked_neg().expect("validated magnitudes"),
    }
}

/// Advances `items` to its next lexicographic permutation; false when the
/// sequence was the last one.
fn next_permutation(items: &mut [i64]) -> bool {
    if items.len() < 2 {
        return false;
    }
    let mut i = items.len() - 1;
    while i > 0 && items[i - 1] >= items[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = items.len() - 1;
    while items[j] <= items[i - 1] {
        j -= 1;
    }
    items.swap(i - 1, j);
    items[i..].reverse();
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::problems::{gen, CoverPackData, KnapsackData, Payload, TspData};

    fn v(values: &[i64]) -> ObjectiveVector {
        ObjectiveVector::new(values.iter().copied())
    }

    #[test]
    fn running_setpack_example_has_the_four_known_points() {
        let inst = Instance {
            n: 7,
            k: 3,
            payload: Payload::SetPack(CoverPackData {
                rows: vec![
                    vec![0, 1, 2],
                    vec![1, 2, 3],
                    vec![3, 4],
                    vec![3, 5],
                    vec![4, 6],
                    vec![5, 6],
                ],
                costs: vec![
                    vec![4, 5, 3, 4, 2, 1, 2],
                    vec![8, 7, 1, 5, 3, 3, 8],
                    vec![2, 6, 8, 4, 6, 5, 2],
                ],
            }),
        };
        let frontier = brute_force_frontier(&inst).unwrap();
        assert_eq!(
            frontier,
            vec![
                v(&[6, 7, 19]),
                v(&[7, 14, 13]),
                v(&[8, 13, 17]),
                v(&[10, 21, 8])
            ]
        );
    }

    #[test]
    fn knapsack_that_fits_nothing_reports_the_zero_vector() {
        let inst = Instance {
            n: 1,
            k: 2,
            payload: Payload::Knapsack(KnapsackData {
                weights: vec![5],
                profits: vec![vec![9], vec![9]],
                capacity: 4,
            }),
        };
        assert_eq!(brute_force_frontier(&inst).unwrap(), vec![v(&[0, 0])]);
    }

    #[test]
    fn four_city_tsp_matches_explicit_tour_enumeration() {
        let inst = gen::generate(ProblemClass::Tsp, 4, 3, 21, &gen::GenParams::default()).unwrap();
        let dist = match &inst.payload {
            Payload::Tsp(TspData { dist }) => dist.clone(),
            _ => unreachable!(),
        };
        // The three undirected tours on four cities, spelled out.
        let tours: [[usize; 4]; 3] = [[0, 1, 2, 3], [0, 1, 3, 2], [0, 2, 1, 3]];
        let mut images = Vec::new();
        for tour in tours {
            let f: Vec<i64> = dist
                .iter()
                .map(|m| {
                    (0..4)
                        .map(|i| m[tour[i]][tour[(i + 1) % 4]])
                        .sum::<i64>()
                })
                .collect();
            images.push(ObjectiveVector::new(f.iter().map(|&d| -d)));
        }
        nd_in_place(&mut images);
        let mut expected: Vec<ObjectiveVector> = images
            .iter()
            .map(|y| y.checked_neg().unwrap())
            .collect();
        expected.sort_unstable();
        assert_eq!(brute_force_frontier(&inst).unwrap(), expected);
    }

    #[test]
    fn sense_round_trip_is_the_identity() {
        let inst =
            gen::generate(ProblemClass::Mccavp, 8, 3, 17, &gen::GenParams::default()).unwrap();
        let frontier = brute_force_frontier(&inst).unwrap();
        let negated: Vec<ObjectiveVector> =
            frontier.iter().map(|y| y.checked_neg().unwrap()).collect();
        let back = inst.frontier_to_original_sense(&crate::vector::nd_filter(&negated));
        assert_eq!(back, frontier);
    }

    #[test]
    fn oracle_rejects_oversized_instances() {
        let inst =
            gen::generate(ProblemClass::Knapsack, 25, 2, 1, &gen::GenParams::default()).unwrap();
        assert!(matches!(
            brute_force_frontier(&inst),
            Err(OracleError::TooLarge(_))
        ));
    }
}
