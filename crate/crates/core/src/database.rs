//! The game database: fewest operations for every (instance, target) pair
//! of the standard draws of one size.
//!
//! File layout, all integers little-endian:
//!
//! ```text
//! "CDWN"  u8 version  u8 n  u16 lo  u16 hi  u32 record_count
//! record_count * ( n tile bytes, sorted | hi-lo+1 min-ops bytes, 255 = unsolved )
//! ```

use crate::engine::{Algorithm, Engine};
use crate::enumeration::standard_instances;
use crate::error::Error;
use crate::parallel::map_chunks;
use crate::pool::Pool;
use crate::report::{TargetRange, UNSOLVED};
use crate::Value;
use std::io::{Read, Write};
use std::path::Path;

pub const MAGIC: &[u8; 4] = b"CDWN";
pub const FORMAT_VERSION: u8 = 1;
const HEADER_LEN: usize = 14;

/// One instance and its fewest-operations row.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Record {
    pub instance: Pool<Value>,
    /// One entry per target of the database range, [`UNSOLVED`] if unreachable.
    pub min_ops: Vec<u8>,
}

impl Record {
    pub fn solved_count(&self) -> usize {
        self.min_ops.iter().filter(|&&o| o != UNSOLVED).count()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GameDatabase {
    pub n: u8,
    pub range: TargetRange,
    /// Records in canonical instance order.
    pub records: Vec<Record>,
}

impl GameDatabase {
    pub fn problem_count(&self) -> u64 {
        self.records.len() as u64 * self.range.len() as u64
    }

    pub fn solved_count(&self) -> u64 {
        self.records.iter().map(|r| r.solved_count() as u64).sum()
    }

    pub fn record(&self, instance: &Pool<Value>) -> Option<&Record> {
        self.records
            .binary_search_by(|r| r.instance.cmp(instance))
            .ok()
            .map(|i| &self.records[i])
    }

    pub fn to_bytes(&self) -> Vec<u8> {
        let width = self.n as usize + self.range.len();
        let mut out = Vec::with_capacity(HEADER_LEN + width * self.records.len());
        out.extend_from_slice(MAGIC);
        out.push(FORMAT_VERSION);
        out.push(self.n);
        out.extend_from_slice(&(self.range.lo as u16).to_le_bytes());
        out.extend_from_slice(&(self.range.hi as u16).to_le_bytes());
        out.extend_from_slice(&(self.records.len() as u32).to_le_bytes());
        for r in &self.records {
            out.extend(r.instance.as_slice().iter().map(|&v| v as u8));
            out.extend_from_slice(&r.min_ops);
        }
        out
    }

    /// Parses a database image; `path` only labels errors.
    pub fn from_bytes(bytes: &[u8], path: &Path) -> Result<Self, Error> {
        let corrupt = |reason: String| Error::Corrupt {
            path: path.to_path_buf(),
            reason,
        };
        if bytes.len() < HEADER_LEN {
            return Err(corrupt(format!(
                "file is {} bytes, shorter than the header",
                bytes.len()
            )));
        }
        if &bytes[..4] != MAGIC {
            return Err(corrupt(format!("bad magic {:?}", &bytes[..4])));
        }
        if bytes[4] != FORMAT_VERSION {
            return Err(corrupt(format!("unsupported version {}", bytes[4])));
        }
        let n = bytes[5];
        let lo = u16::from_le_bytes([bytes[6], bytes[7]]) as u64;
        let hi = u16::from_le_bytes([bytes[8], bytes[9]]) as u64;
        let count = u32::from_le_bytes([bytes[10], bytes[11], bytes[12], bytes[13]]) as usize;
        let range = TargetRange::new(lo, hi).map_err(|e| corrupt(format!("header: {e}")))?;
        if !(1..=10).contains(&n) {
            return Err(corrupt(format!("header: draw size {n}")));
        }
        let width = n as usize + range.len();
        let expected = HEADER_LEN + width * count;
        if bytes.len() != expected {
            return Err(corrupt(format!(
                "header (n={n}, range {range}, {count} records) expects {expected} bytes, file has {}",
                bytes.len()
            )));
        }
        let mut records = Vec::with_capacity(count);
        for (i, chunk) in bytes[HEADER_LEN..].chunks_exact(width).enumerate() {
            let (tiles, ops) = chunk.split_at(n as usize);
            let tiles: Vec<u64> = tiles.iter().map(|&b| b as u64).collect();
            if tiles.windows(2).any(|w| w[0] > w[1]) {
                return Err(corrupt(format!("record {i}: tiles not sorted")));
            }
            let instance =
                Pool::from_u64s(&tiles).map_err(|e| corrupt(format!("record {i}: {e}")))?;
            records.push(Record {
                instance,
                min_ops: ops.to_vec(),
            });
        }
        if records.windows(2).any(|w| w[0].instance >= w[1].instance) {
            return Err(corrupt("records are not in canonical order".into()));
        }
        Ok(GameDatabase { n, range, records })
    }

    pub fn write(&self, path: &Path) -> Result<(), Error> {
        let io = |source| Error::Io {
            path: path.to_path_buf(),
            source,
        };
        let mut file = std::fs::File::create(path).map_err(io)?;
        file.write_all(&self.to_bytes()).map_err(io)?;
        file.sync_all().map_err(io)
    }

    pub fn read(path: &Path) -> Result<Self, Error> {
        let io = |source| Error::Io {
            path: path.to_path_buf(),
            source,
        };
        let mut bytes = Vec::new();
        std::fs::File::open(path)
            .map_err(io)?
            .read_to_end(&mut bytes)
            .map_err(io)?;
        GameDatabase::from_bytes(&bytes, path)
    }
}

/// Solves every standard draw of `n` tiles. The result does not depend on
/// `workers`. Only exhaustive engines are accepted.
pub fn build_database(
    n: usize,
    range: TargetRange,
    workers: usize,
    engine: Engine,
) -> Result<GameDatabase, Error> {
    build_from_instances(n, standard_instances(n)?, range, workers, engine)
}

/// Same as [`build_database`] for an explicit instance list of size `n`.
/// Instances are sorted into canonical order first.
pub fn build_from_instances(
    n: usize,
    mut instances: Vec<Pool<Value>>,
    range: TargetRange,
    workers: usize,
    engine: Engine,
) -> Result<GameDatabase, Error> {
    if workers == 0 {
        return Err(Error::Domain {
            what: "worker count",
            value: 0,
        });
    }
    if !engine.algorithm.is_exhaustive() {
        return Err(Error::Domain {
            what: "non-exhaustive engine",
            value: engine.algorithm as u64,
        });
    }
    if range.hi > u16::MAX as u64 {
        return Err(Error::Domain {
            what: "range end",
            value: range.hi,
        });
    }
    instances.sort();
    instances.dedup();
    for (index, p) in instances.iter().enumerate() {
        if p.len() != n || p.max() > u8::MAX as u64 {
            return Err(Error::Worker {
                index,
                reason: format!("{p} is not a draw of {n} byte-sized tiles"),
            });
        }
    }
    let engine = engine.recording(false);
    let indexed: Vec<(usize, &Pool<Value>)> = instances.iter().enumerate().collect();
    let rows = map_chunks(&indexed, workers, |&(index, p)| {
        engine
            .solve(p, range)
            .map(|r| r.min_ops)
            .map_err(|e| Error::Worker {
                index,
                reason: e.to_string(),
            })
    });
    let mut records = Vec::with_capacity(rows.len());
    for (instance, row) in instances.into_iter().zip(rows) {
        records.push(Record {
            instance,
            min_ops: row?,
        });
    }
    Ok(GameDatabase {
        n: n as u8,
        range,
        records,
    })
}

/// Default engine for database builds.
pub fn default_engine() -> Engine {
    Engine::new(Algorithm::DfsHash)
}
