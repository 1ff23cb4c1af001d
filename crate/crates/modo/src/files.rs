//! Text file formats: instances, frontiers, and witness lists. Writers are
//! byte-stable; two runs over the same data produce identical files.

use crate::problems::{
    CoverPackData, Instance, KnapsackData, MccavpData, Payload, ProblemClass, TspData,
};
use crate::vector::ObjectiveVector;
use std::path::Path;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum FileError {
    #[error("malformed file: {0}")]
    Malformed(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

fn bad(msg: impl Into<String>) -> FileError {
    FileError::Malformed(msg.into())
}

/// `K <k> <count>` then one point per line, space-separated integers,
/// lexicographically ascending, in the problem's original sense.
pub fn frontier_to_string(k: usize, points: &[ObjectiveVector]) -> String {
    let mut out = format!("K {} {}\n", k, points.len());
    for p in points {
        let row: Vec<String> = p.iter().map(|v| v.to_string()).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

pub fn parse_frontier(text: &str) -> Result<(usize, Vec<ObjectiveVector>), FileError> {
    let mut lines = text.lines();
    let header = lines.next().ok_or_else(|| bad("empty frontier file"))?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    if fields.len() != 3 || fields[0] != "K" {
        return Err(bad("frontier header must be 'K <k> <count>'"));
    }
    let k: usize = fields[1].parse().map_err(|_| bad("bad K"))?;
    let count: usize = fields[2].parse().map_err(|_| bad("bad count"))?;
    let mut points = Vec::with_capacity(count);
    for line in lines {
        let values = parse_ints(line)?;
        if values.len() != k {
            return Err(bad(format!("expected {k} components, got {}", values.len())));
        }
        points.push(ObjectiveVector::new(values));
    }
    if points.len() != count {
        return Err(bad(format!(
            "header promises {count} points, file holds {}",
            points.len()
        )));
    }
    Ok((k, points))
}

pub fn write_frontier(path: &Path, k: usize, points: &[ObjectiveVector]) -> Result<(), FileError> {
    std::fs::write(path, frontier_to_string(k, points))?;
    Ok(())
}

/// One witness decision vector per line, aligned with the frontier file.
pub fn witnesses_to_string(witnesses: &[Vec<i64>]) -> String {
    let mut out = String::new();
    for w in witnesses {
        let row: Vec<String> = w.iter().map(|v| v.to_string()).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

pub fn parse_witnesses(text: &str) -> Result<Vec<Vec<i64>>, FileError> {
    text.lines().map(parse_ints).collect()
}

pub fn instance_to_string(inst: &Instance) -> String {
    let mut out = format!(
        "MODO {} n={} K={} sense={}\n",
        inst.class().name(),
        inst.n,
        inst.k,
        inst.sense().name()
    );
    match &inst.payload {
        Payload::Knapsack(d) => {
            out.push_str(&format!("W {}\n", d.capacity));
            out.push_str(&format!("w {}\n", join(&d.weights)));
            for p in &d.profits {
                out.push_str(&format!("p {}\n", join(p)));
            }
        }
        Payload::SetCover(d) | Payload::SetPack(d) => {
            out.push_str(&format!("m {}\n", d.rows.len()));
            for row in &d.rows {
                let cols: Vec<String> = row.iter().map(|&j| (j + 1).to_string()).collect();
                out.push_str(&cols.join(" "));
                out.push('\n');
            }
            for c in &d.costs {
                out.push_str(&format!("c {}\n", join(c)));
            }
        }
        Payload::Tsp(d) => {
            for matrix in &d.dist {
                for row in matrix {
                    out.push_str(&join(row));
                    out.push('\n');
                }
            }
        }
        Payload::Mccavp(d) => {
            out.push_str(&format!("C {}\n", d.cardinality));
            for a in &d.rows {
                out.push_str(&format!("a {}\n", join(a)));
            }
            out.push_str(&format!("b {}\n", join(&d.targets)));
        }
    }
    out
}

pub fn parse_instance(text: &str) -> Result<Instance, FileError> {
    let mut lines = text.lines();
    let header = lines.next().ok_or_else(|| bad("empty instance file"))?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    if fields.len() != 5 || fields[0] != "MODO" {
        return Err(bad("header must be 'MODO <class> n=<n> K=<k> sense=<s>'"));
    }
    let class = ProblemClass::parse(fields[1]).map_err(|e| bad(e.to_string()))?;
    let n: usize = field_value(fields[2], "n")?.parse().map_err(|_| bad("bad n"))?;
    let k: usize = field_value(fields[3], "K")?.parse().map_err(|_| bad("bad K"))?;
    // Sense is implied by the class; reject files that contradict it.
    let sense = header
        .split("sense=")
        .nth(1)
        .ok_or_else(|| bad("missing sense"))?;
    if sense != class.sense().name() {
        return Err(bad(format!(
            "class {} is a {} problem, file says {sense}",
            class,
            class.sense().name()
        )));
    }

    let payload = match class {
        ProblemClass::Knapsack => {
            let capacity = tagged_ints(lines.next(), "W", 1)?[0];
            let weights = tagged_ints(lines.next(), "w", n)?;
            let mut profits = Vec::with_capacity(k);
            for _ in 0..k {
                profits.push(tagged_ints(lines.next(), "p", n)?);
            }
            Payload::Knapsack(KnapsackData {
                weights,
                profits,
                capacity,
            })
        }
        ProblemClass::SetCover | ProblemClass::SetPack => {
            let m = tagged_ints(lines.next(), "m", 1)?[0] as usize;
            let mut rows = Vec::with_capacity(m);
            for _ in 0..m {
                let cols = parse_ints(lines.next().ok_or_else(|| bad("missing row"))?)?;
                let mut row = Vec::with_capacity(cols.len());
                for c in cols {
                    if c < 1 || c as usize > n {
                        return Err(bad(format!("column {c} out of 1..={n}")));
                    }
                    row.push(c as usize - 1);
                }
                rows.push(row);
            }
            let mut costs = Vec::with_capacity(k);
            for _ in 0..k {
                costs.push(tagged_ints(lines.next(), "c", n)?);
            }
            let data = CoverPackData { rows, costs };
            if class == ProblemClass::SetCover {
                Payload::SetCover(data)
            } else {
                Payload::SetPack(data)
            }
        }
        ProblemClass::Tsp => {
            let mut dist = Vec::with_capacity(k);
            for _ in 0..k {
                let mut matrix = Vec::with_capacity(n);
                for _ in 0..n {
                    let row = parse_ints(lines.next().ok_or_else(|| bad("missing distance row"))?)?;
                    if row.len() != n {
                        return Err(bad("distance row of the wrong length"));
                    }
                    matrix.push(row);
                }
                dist.push(matrix);
            }
            Payload::Tsp(TspData { dist })
        }
        ProblemClass::Mccavp => {
            let cardinality = tagged_ints(lines.next(), "C", 1)?[0];
            let mut rows = Vec::with_capacity(k);
            for _ in 0..k {
                rows.push(tagged_ints(lines.next(), "a", n)?);
            }
            let targets = tagged_ints(lines.next(), "b", k)?;
            Payload::Mccavp(MccavpData {
                rows,
                targets,
                cardinality,
            })
        }
    };
    if lines.next().is_some() {
        return Err(bad("trailing content after the payload"));
    }
    let inst = Instance { n, k, payload };
    inst.validate().map_err(|e| bad(e.to_string()))?;
    Ok(inst)
}

pub fn read_instance(path: &Path) -> Result<Instance, FileError> {
    parse_instance(&std::fs::read_to_string(path)?)
}

pub fn write_instance(path: &Path, inst: &Instance) -> Result<(), FileError> {
    std::fs::write(path, instance_to_string(inst))?;
    Ok(())
}

fn join(values: &[i64]) -> String {
    values
        .iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

fn parse_ints(line: &str) -> Result<Vec<i64>, FileError> {
    line.split_whitespace()
        .map(|t| t.parse().map_err(|_| bad(format!("bad integer '{t}'"))))
        .collect()
}

fn tagged_ints(line: Option<&str>, tag: &str, expect: usize) -> Result<Vec<i64>, FileError> {
    let line = line.ok_or_else(|| bad(format!("missing '{tag}' line")))?;
    let mut parts = line.split_whitespace();
    if parts.next() != Some(tag) {
        return Err(bad(format!("expected line tagged '{tag}', got '{line}'")));
    }
    let values: Vec<i64> = parts
        .map(|t| t.parse().map_err(|_| bad(format!("bad integer '{t}'"))))
        .collect::<Result<_, _>>()?;
    if values.len() != expect {
        return Err(bad(format!(
            "'{tag}' line holds {} values, expected {expect}",
            values.len()
        )));
    }
    Ok(values)
}

fn field_value<'a>(field: &'a str, name: &str) -> Result<&'a str, FileError> {
    field
        .strip_prefix(name)
        .and_then(|rest| rest.strip_prefix('='))
        .ok_or_else(|| bad(format!("expected {name}=<value>, got '{field}'")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::problems::{gen, GenParams};

    #[test]
    fn instances_round_trip_for_every_class() {
        for class in ProblemClass::ALL {
            let n = if class == ProblemClass::Tsp { 5 } else { 11 };
            let inst = gen::generate(class, n, 3, 42, &GenParams::default()).unwrap();
            let text = instance_to_string(&inst);
            let parsed = parse_instance(&text).unwrap();
            assert_eq!(parsed, inst, "{class}");
            assert_eq!(instance_to_string(&parsed), text, "{class}");
        }
    }

    #[test]
    fn frontier_round_trips() {
        let points = vec![
            ObjectiveVector::new([1, 2, 3]),
            ObjectiveVector::new([4, -5, 6]),
        ];
        let text = frontier_to_string(3, &points);
        assert_eq!(text, "K 3 2\n1 2 3\n4 -5 6\n");
        let (k, parsed) = parse_frontier(&text).unwrap();
        assert_eq!(k, 3);
        assert_eq!(parsed, points);
    }

    #[test]
    fn malformed_files_are_rejected() {
        assert!(parse_frontier("K 3\n").is_err());
        assert!(parse_instance("MODO knapsack n=2 K=2 sense=min\n").is_err());
        assert!(parse_instance("nonsense").is_err());
    }

    #[test]
    fn witnesses_round_trip() {
        let w = vec![vec![0, 1, 0], vec![1, 0, 1]];
        let text = witnesses_to_string(&w);
        assert_eq!(parse_witnesses(&text).unwrap(), w);
    }
}
