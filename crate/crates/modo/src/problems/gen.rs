//! Seeded random instance generators.
//!
//! Every draw goes through one SplitMix64 stream in a fixed order, so a
//! `(class, n, K, seed, params)` tuple always produces the same instance,
//! byte for byte.
//!
//! Conventions beyond the published recipes: constraint costs are uniform on
//! [1, 1000]; Euclidean distances round to the nearest integer; desk-scale
//! covering/packing instances (n < 10) shrink to `min(10, n)` entries per
//! row and at least one row.

use super::{
    CoverPackData, Instance, KnapsackData, MccavpData, Payload, ProblemClass, ProblemError,
    TspData,
};
use crate::rng::SplitMix64;

#[derive(Debug, Clone)]
pub struct GenParams {
    /// Coefficient magnitude bound for mccavp (`a` entries are uniform on
    /// `[-m_bound, m_bound]`).
    pub m_bound: i64,
    /// Cardinality fraction for mccavp (`C = floor(n * delta)`).
    pub delta: f64,
}

impl Default for GenParams {
    fn default() -> Self {
        GenParams {
            m_bound: 100,
            delta: 0.3,
        }
    }
}

pub fn generate(
    class: ProblemClass,
    n: usize,
    k: usize,
    seed: u64,
    params: &GenParams,
) -> Result<Instance, ProblemError> {
    if n == 0 {
        return Err(ProblemError::Invalid("n must be positive".into()));
    }
    if k < 2 {
        return Err(ProblemError::Invalid("K must be at least 2".into()));
    }
    let mut rng = SplitMix64::new(seed);
    let payload = match class {
        ProblemClass::Knapsack => {
            let weights: Vec<i64> = (0..n).map(|_| rng.uniform(1, 1000)).collect();
            let profits: Vec<Vec<i64>> = (0..k)
                .map(|_| (0..n).map(|_| rng.uniform(1, 1000)).collect())
                .collect();
            let capacity = knapsack_capacity(&weights);
            Payload::Knapsack(KnapsackData {
                weights,
                profits,
                capacity,
            })
        }
        ProblemClass::SetCover | ProblemClass::SetPack => {
            let data = gen_cover_pack(&mut rng, n, k)?;
            if class == ProblemClass::SetCover {
                Payload::SetCover(data)
            } else {
                Payload::SetPack(data)
            }
        }
        ProblemClass::Tsp => {
            if n < 2 {
                return Err(ProblemError::Invalid("a tour needs at least 2 cities".into()));
            }
            if n > 62 {
                return Err(ProblemError::Invalid("at most 62 cities".into()));
            }
            let mut dist = Vec::with_capacity(k);
            for _ in 0..k {
                let coords: Vec<(i64, i64)> = (0..n)
                    .map(|_| (rng.uniform(0, 1000), rng.uniform(0, 1000)))
                    .collect();
                let mut matrix = vec![vec![0i64; n]; n];
                for i in 0..n {
                    for j in 0..n {
                        if i != j {
                            let dx = (coords[i].0 - coords[j].0) as f64;
                            let dy = (coords[i].1 - coords[j].1) as f64;
                            matrix[i][j] = dx.hypot(dy).round() as i64;
                        }
                    }
                }
                dist.push(matrix);
            }
            Payload::Tsp(TspData { dist })
        }
        ProblemClass::Mccavp => {
            if params.m_bound < 1 {
                return Err(ProblemError::Invalid("M must be at least 1".into()));
            }
            if !(params.delta > 0.0 && params.delta <= 1.0) {
                return Err(ProblemError::Invalid("delta must be in (0, 1]".into()));
            }
            let rows: Vec<Vec<i64>> = (0..k)
                .map(|_| {
                    (0..n)
                        .map(|_| rng.uniform(-params.m_bound, params.m_bound))
                        .collect()
                })
                .collect();
            let targets: Vec<i64> = rows
                .iter()
                .map(|row| row.iter().sum::<i64>().div_euclid(2))
                .collect();
            let cardinality = (n as f64 * params.delta).floor() as i64;
            Payload::Mccavp(MccavpData {
                rows,
                targets,
                cardinality,
            })
        }
    };
    let instance = Instance { n, k, payload };
    instance.validate()?;
    Ok(instance)
}

/// `W = ceil(0.5 * sum of weights)`.
pub fn knapsack_capacity(weights: &[i64]) -> i64 {
    let total: i64 = weights.iter().sum();
    (total + 1) / 2
}

fn gen_cover_pack(rng: &mut SplitMix64, n: usize, k: usize) -> Result<CoverPackData, ProblemError> {
    let per_row = n.min(10);
    let m = (n / 5).max(1);
    if m > 64 {
        return Err(ProblemError::Invalid(
            "at most 64 constraints are supported (n <= 320)".into(),
        ));
    }
    let rows: Vec<Vec<usize>> = (0..m)
        .map(|_| {
            rng.distinct_sorted(n as u64, per_row)
                .into_iter()
                .map(|c| c as usize)
                .collect()
        })
        .collect();
    let costs: Vec<Vec<i64>> = (0..k)
        .map(|_| (0..n).map(|_| rng.uniform(1, 1000)).collect())
        .collect();
    Ok(CoverPackData { rows, costs })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn capacity_is_half_the_weight_sum_rounded_up() {
        assert_eq!(knapsack_capacity(&[2, 4, 6, 8]), 10);
        assert_eq!(knapsack_capacity(&[1, 2]), 2);
        assert_eq!(knapsack_capacity(&[5]), 3);
    }

    #[test]
    fn setcover_at_n_100_has_20_rows_of_10() {
        let inst = generate(ProblemClass::SetCover, 100, 4, 1, &GenParams::default()).unwrap();
        match &inst.payload {
            Payload::SetCover(d) => {
                assert_eq!(d.rows.len(), 20);
                assert!(d.rows.iter().all(|r| r.len() == 10));
                assert!(d.costs.iter().flatten().all(|&c| (1..=1000).contains(&c)));
            }
            _ => unreachable!(),
        }
    }

    #[test]
    fn generation_is_deterministic() {
        for class in ProblemClass::ALL {
            let n = if class == ProblemClass::Tsp { 6 } else { 12 };
            let a = generate(class, n, 3, 99, &GenParams::default()).unwrap();
            let b = generate(class, n, 3, 99, &GenParams::default()).unwrap();
            assert_eq!(a, b, "{class}");
            let c = generate(class, n, 3, 100, &GenParams::default()).unwrap();
            assert_ne!(a, c, "{class}");
        }
    }

    #[test]
    fn mccavp_targets_follow_the_half_sum_rule() {
        let params = GenParams {
            m_bound: 50,
            delta: 0.5,
        };
        let inst = generate(ProblemClass::Mccavp, 10, 3, 7, &params).unwrap();
        match &inst.payload {
            Payload::Mccavp(d) => {
                for (row, &b) in d.rows.iter().zip(&d.targets) {
                    assert_eq!(b, row.iter().sum::<i64>().div_euclid(2));
                }
                assert_eq!(d.cardinality, 5);
            }
            _ => unreachable!(),
        }
    }

    #[test]
    fn tsp_matrices_are_symmetric_with_zero_diagonal() {
        let inst = generate(ProblemClass::Tsp, 8, 3, 3, &GenParams::default()).unwrap();
        assert!(inst.validate().is_ok());
    }
}
