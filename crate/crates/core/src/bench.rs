//! Timing and node counts for several engines over one instance sample.

use crate::engine::{Algorithm, Engine};
use crate::error::Error;
use crate::pool::Pool;
use crate::report::TargetRange;
use crate::Value;
use std::time::{Duration, Instant};

#[derive(Debug, Clone, PartialEq)]
pub struct BenchRow {
    pub algorithm: Algorithm,
    /// Table size for hashed engines.
    pub hash_bits: Option<u32>,
    pub instances: usize,
    pub repetitions: usize,
    /// Fastest and median wall time of a full pass over the sample.
    pub min: Duration,
    pub median: Duration,
    /// Nodes over the whole sample, from one pass.
    pub nodes_total: u64,
    pub nodes_min: u64,
    pub nodes_max: u64,
    /// Problems solved over the sample.
    pub solved: u64,
}

impl BenchRow {
    pub fn per_instance(&self) -> Duration {
        self.min / self.instances.max(1) as u32
    }
}

/// One row per algorithm, or per hash size for hashed algorithms.
pub fn run_bench(
    instances: &[Pool<Value>],
    range: TargetRange,
    algorithms: &[Algorithm],
    hash_bits: &[u32],
    repetitions: usize,
) -> Result<Vec<BenchRow>, Error> {
    if repetitions == 0 {
        return Err(Error::Domain {
            what: "repetitions",
            value: 0,
        });
    }
    let mut rows = Vec::new();
    for &algorithm in algorithms {
        let sizes: Vec<Option<u32>> = if algorithm.uses_hash() {
            hash_bits.iter().map(|&b| Some(b)).collect()
        } else {
            vec![None]
        };
        for bits in sizes {
            let mut engine = Engine::new(algorithm);
            if let Some(b) = bits {
                engine = engine.hash_bits(b);
            }
            let mut times = Vec::with_capacity(repetitions);
            let (mut nodes_total, mut nodes_min, mut nodes_max, mut solved) = (0, u64::MAX, 0, 0);
            for rep in 0..repetitions {
                let start = Instant::now();
                for p in instances {
                    let report = engine.solve(p, range)?;
                    if rep == 0 {
                        nodes_total += report.nodes_visited;
                        nodes_min = nodes_min.min(report.nodes_visited);
                        nodes_max = nodes_max.max(report.nodes_visited);
                        solved += report.solved_count() as u64;
                    }
                }
                times.push(start.elapsed());
            }
            times.sort();
            rows.push(BenchRow {
                algorithm,
                hash_bits: bits,
                instances: instances.len(),
                repetitions,
                min: times[0],
                median: times[times.len() / 2],
                nodes_total,
                nodes_min: if instances.is_empty() { 0 } else { nodes_min },
                nodes_max,
                solved,
            });
        }
    }
    Ok(rows)
}
