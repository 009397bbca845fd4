//! Instance generators and closed-form counts.

use crate::error::Error;
use crate::pool::Pool;
use crate::Value;
use rand::seq::index;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Tile values of the standard game, each with its multiplicity.
pub const STANDARD_TILES: [(u64, usize); 14] = [
    (1, 2),
    (2, 2),
    (3, 2),
    (4, 2),
    (5, 2),
    (6, 2),
    (7, 2),
    (8, 2),
    (9, 2),
    (10, 2),
    (25, 1),
    (50, 1),
    (75, 1),
    (100, 1),
];

pub const LARGE_TILES: [u64; 4] = [25, 50, 75, 100];

pub fn is_large(v: u64) -> bool {
    LARGE_TILES.contains(&v)
}

/// Every legal draw of `n` tiles, each sorted ascending, in lexicographic
/// order. This order is the record order of the game database.
pub fn standard_instances(n: usize) -> Result<Vec<Pool<Value>>, Error> {
    if !(1..=10).contains(&n) {
        return Err(Error::Domain {
            what: "draw size",
            value: n as u64,
        });
    }
    let mut out = Vec::with_capacity(standard_instance_count(n)? as usize);
    let mut current = Vec::with_capacity(n);
    draw(0, n, &mut current, &mut out);
    Ok(out)
}

fn draw(tile: usize, n: usize, current: &mut Vec<u64>, out: &mut Vec<Pool<Value>>) {
    if current.len() == n {
        out.push(Pool::new(current.iter().copied()).expect("draws are valid pools"));
        return;
    }
    for t in tile..STANDARD_TILES.len() {
        let (value, mult) = STANDARD_TILES[t];
        for copies in (1..=mult.min(n - current.len())).rev() {
            current.extend(std::iter::repeat_n(value, copies));
            // the next tile value must be strictly larger
            draw(t + 1, n, current, out);
            current.truncate(current.len() - copies);
        }
    }
}

/// `sum_{i=0}^{floor(n/2)} C(10, i) * C(14 - i, n - 2i)`: `i` small values
/// drawn twice, the rest once. Terms with an impossible binomial vanish.
pub fn standard_instance_count(n: usize) -> Result<u64, Error> {
    if !(1..=20).contains(&n) {
        return Err(Error::Domain {
            what: "draw size",
            value: n as u64,
        });
    }
    let n = n as u64;
    Ok((0..=n / 2)
        .map(|i| binomial(10, i) * binomial(14 - i, n - 2 * i))
        .sum())
}

/// Multisets of size `k` over `1..=maxval`: `C(maxval + k - 1, k)`.
pub fn extended_instance_count(k: u64, maxval: u64) -> Result<u128, Error> {
    if k == 0 {
        return Err(Error::Domain {
            what: "set size",
            value: k,
        });
    }
    if maxval == 0 {
        return Err(Error::Domain {
            what: "largest value",
            value: maxval,
        });
    }
    Ok(binomial128(maxval + k - 1, k))
}

/// `count` distinct standard draws of `n` tiles, uniformly chosen and
/// reproducible for a given seed, in canonical order.
pub fn standard_instances_sample(
    n: usize,
    count: usize,
    seed: u64,
) -> Result<Vec<Pool<Value>>, Error> {
    let all = standard_instances(n)?;
    if count > all.len() {
        return Err(Error::SampleTooLarge {
            requested: count as u64,
            available: all.len() as u128,
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut picks = index::sample(&mut rng, all.len(), count).into_vec();
    picks.sort_unstable();
    Ok(picks.into_iter().map(|i| all[i].clone()).collect())
}

/// `count` distinct sets drawn uniformly from the multisets of size `k`
/// over `1..=maxval`, reproducible for a given seed. Sets come back in
/// lexicographic order.
pub fn extended_instances_sample(
    k: usize,
    maxval: u64,
    count: usize,
    seed: u64,
) -> Result<Vec<Pool<Value>>, Error> {
    if !(1..=10).contains(&k) {
        return Err(Error::Domain {
            what: "set size",
            value: k as u64,
        });
    }
    let space = extended_instance_count(k as u64, maxval)?;
    if count as u128 > space {
        return Err(Error::SampleTooLarge {
            requested: count as u64,
            available: space,
        });
    }
    let space = usize::try_from(space).map_err(|_| Error::Domain {
        what: "sample space",
        value: u64::MAX,
    })?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut ranks = index::sample(&mut rng, space, count).into_vec();
    ranks.sort_unstable();
    ranks
        .into_iter()
        .map(|r| Pool::new(unrank_multiset(r as u128, k, maxval)))
        .collect()
}

/// The `rank`-th non-decreasing sequence of length `k` over `1..=maxval`
/// in lexicographic order.
pub fn unrank_multiset(mut rank: u128, k: usize, maxval: u64) -> Vec<u64> {
    let mut out = Vec::with_capacity(k);
    let mut low = 1;
    for remaining in (1..=k as u64).rev() {
        let mut v = low;
        loop {
            // sequences of the remaining length starting with exactly v
            let block = binomial128(maxval - v + remaining - 1, remaining - 1);
            if rank < block {
                break;
            }
            rank -= block;
            v += 1;
        }
        out.push(v);
        low = v;
    }
    out
}

pub fn binomial(n: u64, k: u64) -> u64 {
    binomial128(n, k) as u64
}

pub fn binomial128(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

/// Operation-count formulas for each algorithm family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Complexity {
    /// Depth-first, four results per pair at every level.
    DfsMax,
    /// Depth-first, three results per pair.
    DfsMin,
    /// Breadth-first over subsets, four results per pair of values.
    BfsMax,
    /// Breadth-first, three results per pair of values.
    BfsMin,
    /// Alternating backward chaining, every trial division succeeding.
    BackwardMax,
    /// Alternating backward chaining, one division succeeding per step.
    BackwardMin,
}

fn factorial(n: u64) -> u128 {
    (1..=n as u128).product()
}

/// `prod_{i=1}^{p-1} (2i - 1)`
fn odd_product(p: u64) -> u128 {
    (1..p as u128).map(|i| 2 * i - 1).product()
}

/// Exact value of the chosen formula for `n` numbers.
pub fn complexity_bounds(which: Complexity, n: u64) -> Result<u128, Error> {
    if !(1..=12).contains(&n) {
        return Err(Error::Domain {
            what: "pool size",
            value: n,
        });
    }
    let value = match which {
        Complexity::DfsMax => (factorial(n) * factorial(n - 1)) << (n - 1),
        Complexity::DfsMin => {
            let num = factorial(n) * factorial(n - 1) * 3u128.pow(n as u32 - 1);
            num >> (n - 1)
        }
        Complexity::BfsMax | Complexity::BfsMin => {
            let base: u128 = if which == Complexity::BfsMax { 4 } else { 3 };
            (1..=n)
                .map(|p| binomial128(n, p) * base.pow(p as u32 - 1) * odd_product(p))
                .sum()
        }
        Complexity::BackwardMax => (1..=n as u128 / 2)
            .map(|i| (4 * i + 1) * (2 * i - 1))
            .product(),
        Complexity::BackwardMin => (1..=n as u128 / 2).map(|i| (4 * i + 1) * (2 * i - 1)).sum(),
    };
    Ok(value)
}
