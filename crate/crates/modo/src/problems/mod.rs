//! The built-in problem classes: instance data, direct objective evaluation,
//! recursive formulations feeding the compiler, and seeded generators.
//!
//! Minimization classes are negated when their models are built so the whole
//! solver stack works in one canonical maximize orientation; reported
//! frontiers are re-negated into the original sense.

pub mod cover;
pub mod gen;
pub mod knapsack;
pub mod mccavp;
pub mod tsp;

use crate::network::Network;
use crate::recursion::{compile, CompileError, CompileLimits};
use crate::search::NodeComparator;
use crate::vector::ObjectiveVector;
use thiserror::Error;

pub use gen::{generate, GenParams};

/// Magnitude cap on instance data; keeps all state and reward arithmetic
/// comfortably inside i64.
pub const MAX_MAGNITUDE: i64 = 1_000_000_000;

#[derive(Debug, Error)]
pub enum ProblemError {
    #[error("invalid instance: {0}")]
    Invalid(String),
    #[error("invalid solution vector: {0}")]
    BadSolution(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ProblemClass {
    Knapsack,
    SetCover,
    SetPack,
    Tsp,
    Mccavp,
}

impl ProblemClass {
    pub const ALL: [ProblemClass; 5] = [
        ProblemClass::Knapsack,
        ProblemClass::SetCover,
        ProblemClass::SetPack,
        ProblemClass::Tsp,
        ProblemClass::Mccavp,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ProblemClass::Knapsack => "knapsack",
            ProblemClass::SetCover => "setcover",
            ProblemClass::SetPack => "setpack",
            ProblemClass::Tsp => "tsp",
            ProblemClass::Mccavp => "mccavp",
        }
    }

    pub fn parse(s: &str) -> Result<Self, ProblemError> {
        match s {
            "knapsack" => Ok(ProblemClass::Knapsack),
            "setcover" => Ok(ProblemClass::SetCover),
            "setpack" => Ok(ProblemClass::SetPack),
            "tsp" => Ok(ProblemClass::Tsp),
            "mccavp" => Ok(ProblemClass::Mccavp),
            other => Err(ProblemError::Invalid(format!("unknown class '{other}'"))),
        }
    }

    pub fn sense(self) -> Sense {
        match self {
            ProblemClass::Knapsack | ProblemClass::SetPack => Sense::Max,
            ProblemClass::SetCover | ProblemClass::Tsp | ProblemClass::Mccavp => Sense::Min,
        }
    }
}

impl std::fmt::Display for ProblemClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sense {
    Min,
    Max,
}

impl Sense {
    pub fn name(self) -> &'static str {
        match self {
            Sense::Min => "min",
            Sense::Max => "max",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KnapsackData {
    pub weights: Vec<i64>,
    /// K rows of n profits.
    pub profits: Vec<Vec<i64>>,
    pub capacity: i64,
}

/// Shared payload of set covering and set packing: a binary constraint
/// matrix stored as per-row column lists, plus K cost rows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverPackData {
    /// 0-based column indices per constraint, each sorted ascending.
    pub rows: Vec<Vec<usize>>,
    pub costs: Vec<Vec<i64>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TspData {
    /// K symmetric distance matrices with zero diagonals.
    pub dist: Vec<Vec<Vec<i64>>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MccavpData {
    /// K coefficient rows of length n.
    pub rows: Vec<Vec<i64>>,
    /// K targets.
    pub targets: Vec<i64>,
    pub cardinality: i64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Payload {
    Knapsack(KnapsackData),
    SetCover(CoverPackData),
    SetPack(CoverPackData),
    Tsp(TspData),
    Mccavp(MccavpData),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    pub n: usize,
    pub k: usize,
    pub payload: Payload,
}

impl Instance {
    pub fn class(&self) -> ProblemClass {
        match &self.payload {
            Payload::Knapsack(_) => ProblemClass::Knapsack,
            Payload::SetCover(_) => ProblemClass::SetCover,
            Payload::SetPack(_) => ProblemClass::SetPack,
            Payload::Tsp(_) => ProblemClass::Tsp,
            Payload::Mccavp(_) => ProblemClass::Mccavp,
        }
    }

    pub fn sense(&self) -> Sense {
        self.class().sense()
    }

    pub fn validate(&self) -> Result<(), ProblemError> {
        if self.k < 2 {
            return Err(ProblemError::Invalid(format!(
                "need at least 2 objectives, got {}",
                self.k
            )));
        }
        if self.n == 0 {
            return Err(ProblemError::Invalid("need at least one variable".into()));
        }
        let check_magnitude = |v: i64| -> Result<(), ProblemError> {
            if v.abs() > MAX_MAGNITUDE {
                Err(ProblemError::Invalid(format!("value {v} out of range")))
            } else {
                Ok(())
            }
        };
        match &self.payload {
            Payload::Knapsack(d) => {
                if d.weights.len() != self.n {
                    return Err(ProblemError::Invalid("weight count != n".into()));
                }
                if d.profits.len() != self.k || d.profits.iter().any(|p| p.len() != self.n) {
                    return Err(ProblemError::Invalid("profit matrix is not K x n".into()));
                }
                if d.weights.iter().any(|&w| w < 1) {
                    return Err(ProblemError::Invalid("item weights must be >= 1".into()));
                }
                if d.profits.iter().flatten().any(|&p| p < 1) {
                    return Err(ProblemError::Invalid("profits must be >= 1".into()));
                }
                if d.capacity < 0 {
                    return Err(ProblemError::Invalid("capacity must be >= 0".into()));
                }
                check_magnitude(d.capacity)?;
                for v in d.weights.iter().chain(d.profits.iter().flatten()) {
                    check_magnitude(*v)?;
                }
            }
            Payload::SetCover(d) | Payload::SetPack(d) => {
                if d.rows.is_empty() {
                    return Err(ProblemError::Invalid("need at least one constraint".into()));
                }
                if d.rows.len() > 64 {
                    return Err(ProblemError::Invalid(
                        "at most 64 constraints are supported".into(),
                    ));
                }
                for row in &d.rows {
                    if row.is_empty() {
                        return Err(ProblemError::Invalid("empty constraint row".into()));
                    }
                    if row.iter().any(|&j| j >= self.n) {
                        return Err(ProblemError::Invalid("column index out of range".into()));
                    }
                    if row.windows(2).any(|w| w[0] >= w[1]) {
                        return Err(ProblemError::Invalid(
                            "row columns must be sorted and distinct".into(),
                        ));
                    }
                }
                if d.costs.len() != self.k || d.costs.iter().any(|c| c.len() != self.n) {
                    return Err(ProblemError::Invalid("cost matrix is not K x n".into()));
                }
                for v in d.costs.iter().flatten() {
                    check_magnitude(*v)?;
                }
            }
            Payload::Tsp(d) => {
                if self.n < 2 {
                    return Err(ProblemError::Invalid("a tour needs at least 2 cities".into()));
                }
                if self.n > 62 {
                    return Err(ProblemError::Invalid(
                        "at most 62 cities are supported".into(),
                    ));
                }
                if d.dist.len() != self.k {
                    return Err(ProblemError::Invalid("need K distance matrices".into()));
                }
                for m in &d.dist {
                    if m.len() != self.n || m.iter().any(|r| r.len() != self.n) {
                        return Err(ProblemError::Invalid("distance matrix is not n x n".into()));
                    }
                    for i in 0..self.n {
                        if m[i][i] != 0 {
                            return Err(ProblemError::Invalid("nonzero diagonal".into()));
                        }
                        for j in 0..self.n {
                            if m[i][j] != m[j][i] {
                                return Err(ProblemError::Invalid(
                                    "distance matrix is not symmetric".into(),
                                ));
                            }
                            check_magnitude(m[i][j])?;
                        }
                    }
                }
            }
            Payload::Mccavp(d) => {
                if d.rows.len() != self.k || d.rows.iter().any(|r| r.len() != self.n) {
                    return Err(ProblemError::Invalid("coefficients are not K x n".into()));
                }
                if d.targets.len() != self.k {
                    return Err(ProblemError::Invalid("need K targets".into()));
                }
                if d.cardinality < 0 {
                    return Err(ProblemError::Invalid("cardinality must be >= 0".into()));
                }
                for v in d.rows.iter().flatten().chain(d.targets.iter()) {
                    check_magnitude(*v)?;
                }
            }
        }
        Ok(())
    }

    /// Compiles the instance's recursive formulation into a network.
    pub fn compile(&self, limits: &CompileLimits) -> Result<Network, CompileError> {
        match &self.payload {
            Payload::Knapsack(d) => compile(&knapsack::KnapsackDp::new(d, self.k), limits),
            Payload::SetCover(d) => compile(&cover::SetCoverDp::new(d, self.n, self.k), limits),
            Payload::SetPack(d) => compile(&cover::SetPackDp::new(d, self.n, self.k), limits),
            Payload::Tsp(d) => compile(&tsp::TspDp::new(d, self.n, self.k), limits),
            Payload::Mccavp(d) => compile(&mccavp::MccavpDp::new(d, self.n, self.k), limits),
        }
    }

    /// The class's label-filtering comparator, when one exists.
    pub fn comparator(&self) -> Option<Box<dyn NodeComparator>> {
        match &self.payload {
            Payload::Knapsack(_) => Some(Box::new(knapsack::KnapsackComparator)),
            _ => None,
        }
    }

    /// Feasibility and the objective vector of `x`, computed directly from
    /// the instance data in the original sense. This is the evaluation kernel
    /// the brute-force oracle builds on; it never touches the network path.
    pub fn evaluate(&self, x: &[i64]) -> Result<(bool, ObjectiveVector), ProblemError> {
        if x.len() != self.n {
            return Err(ProblemError::BadSolution(format!(
                "expected {} entries, got {}",
                self.n,
                x.len()
            )));
        }
        match &self.payload {
            Payload::Knapsack(d) => {
                require_binary(x)?;
                let used: i64 = x.iter().zip(&d.weights).map(|(&xi, &w)| xi * w).sum();
                let f = linear_image(&d.profits, x);
                Ok((used <= d.capacity, f))
            }
            Payload::SetCover(d) => {
                require_binary(x)?;
                let feasible = d
                    .rows
                    .iter()
                    .all(|row| row.iter().map(|&j| x[j]).sum::<i64>() >= 1);
                Ok((feasible, linear_image(&d.costs, x)))
            }
            Payload::SetPack(d) => {
                require_binary(x)?;
                let feasible = d
                    .rows
                    .iter()
                    .all(|row| row.iter().map(|&j| x[j]).sum::<i64>() <= 1);
                Ok((feasible, linear_image(&d.costs, x)))
            }
            Payload::Tsp(d) => {
                let mut seen = vec![false; self.n];
                for &c in x {
                    if c < 1 || c as usize > self.n || seen[c as usize - 1] {
                        return Err(ProblemError::BadSolution(
                            "tour is not a permutation of 1..n".into(),
                        ));
                    }
                    seen[c as usize - 1] = true;
                }
                if x[0] != 1 {
                    return Err(ProblemError::BadSolution("tour must start at city 1".into()));
                }
                let mut f = Vec::with_capacity(self.k);
                for m in &d.dist {
                    let mut total = 0i64;
                    for w in x.windows(2) {
                        total += m[w[0] as usize - 1][w[1] as usize - 1];
                    }
                    total += m[x[self.n - 1] as usize - 1][x[0] as usize - 1];
                    f.push(total);
                }
                Ok((true, ObjectiveVector::new(f)))
            }
            Payload::Mccavp(d) => {
                require_binary(x)?;
                let feasible = x.iter().sum::<i64>() <= d.cardinality;
                let f = d
                    .rows
                    .iter()
                    .zip(&d.targets)
                    .map(|(row, &b)| {
                        let dot: i64 = row.iter().zip(x).map(|(&a, &xi)| a * xi).sum();
                        (dot - b).abs()
                    })
                    .collect::<Vec<_>>();
                Ok((feasible, ObjectiveVector::new(f)))
            }
        }
    }

    /// Assembles a recovered per-stage decision list into the class's native
    /// solution-vector convention (tours get the fixed starting city
    /// prepended and the synthetic closing leg dropped).
    pub fn decisions_to_solution(
        &self,
        decisions: &[Option<i64>],
    ) -> Result<Vec<i64>, ProblemError> {
        match self.class() {
            ProblemClass::Tsp => {
                let mut x = Vec::with_capacity(self.n);
                x.push(1);
                x.extend(decisions.iter().flatten().copied());
                if x.len() != self.n {
                    return Err(ProblemError::BadSolution(
                        "recovered tour has the wrong length".into(),
                    ));
                }
                Ok(x)
            }
            _ => {
                let x: Vec<i64> = decisions.iter().flatten().copied().collect();
                if x.len() != self.n {
                    return Err(ProblemError::BadSolution(
                        "recovered vector has the wrong length".into(),
                    ));
                }
                Ok(x)
            }
        }
    }

    /// Maps a canonical-max frontier into the instance's original sense,
    /// sorted ascending.
    pub fn frontier_to_original_sense(
        &self,
        canonical: &[ObjectiveVector],
    ) -> Vec<ObjectiveVector> {
        match self.sense() {
            Sense::Max => canonical.to_vec(),
            Sense::Min => {
                let mut out: Vec<ObjectiveVector> = canonical
                    .iter()
                    .map(|y| y.checked_neg().expect("validated magnitudes"))
                    .collect();
                out.sort_unstable();
                out
            }
        }
    }

    /// Inverse of [`Instance::frontier_to_original_sense`] for a single point.
    pub fn point_to_canonical(&self, point: &ObjectiveVector) -> ObjectiveVector {
        match self.sense() {
            Sense::Max => point.clone(),
            Sense::Min => point.checked_neg().expect("validated magnitudes"),
        }
    }
}

fn require_binary(x: &[i64]) -> Result<(), ProblemError> {
    if x.iter().any(|&v| v != 0 && v != 1) {
        return Err(ProblemError::BadSolution("entries must be 0 or 1".into()));
    }
    Ok(())
}

fn linear_image(rows: &[Vec<i64>], x: &[i64]) -> ObjectiveVector {
    ObjectiveVector::new(
        rows.iter()
            .map(|row| row.iter().zip(x).map(|(&c, &xi)| c * xi).sum::<i64>()),
    )
}
