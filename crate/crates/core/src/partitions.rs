//! Integer partitions, their statistics, and length-constrained enumeration.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, RwLock};

use num_bigint::BigUint;
use num_traits::One;
use thiserror::Error;

use crate::arith::factorial;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PartitionError {
    #[error("partition parts must be positive")]
    ZeroPart,
    #[error("partition parts must be weakly decreasing: {0} is followed by {1}")]
    NotDecreasing(u32, u32),
    #[error("cannot parse partition `{0}`")]
    Syntax(String),
}

/// A weakly decreasing sequence of positive integers. The empty sequence is
/// the unique partition of zero.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<u32>,
    weight: u32,
}

/// `m_i(λ)` for each part value `i` that occurs.
pub type MultiplicityMap = BTreeMap<u32, u32>;

impl Partition {
    pub fn new(parts: Vec<u32>) -> Result<Self, PartitionError> {
        if parts.contains(&0) {
            return Err(PartitionError::ZeroPart);
        }
        if let Some(w) = parts.windows(2).find(|w| w[0] < w[1]) {
            return Err(PartitionError::NotDecreasing(w[0], w[1]));
        }
        Ok(Self::from_sorted(parts))
    }

    fn from_sorted(parts: Vec<u32>) -> Self {
        let weight = parts.iter().sum();
        Partition { parts, weight }
    }

    pub fn empty() -> Self {
        Partition {
            parts: Vec::new(),
            weight: 0,
        }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    /// `|λ|`
    pub fn weight(&self) -> u32 {
        self.weight
    }

    /// `l(λ)`
    pub fn length(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn multiplicities(&self) -> MultiplicityMap {
        multiplicities(self)
    }

    /// Rebuilds the partition whose multiplicities are `map`.
    pub fn from_multiplicities(map: &MultiplicityMap) -> Result<Self, PartitionError> {
        if map.contains_key(&0) {
            return Err(PartitionError::ZeroPart);
        }
        let parts = map
            .iter()
            .rev()
            .flat_map(|(&part, &count)| std::iter::repeat_n(part, count as usize))
            .collect();
        Ok(Self::from_sorted(parts))
    }
}

pub fn multiplicities(lambda: &Partition) -> MultiplicityMap {
    let mut map = MultiplicityMap::new();
    for &p in &lambda.parts {
        *map.entry(p).or_insert(0) += 1;
    }
    map
}

/// `z_λ = Π_i i^{m_i} m_i!`, the centralizer order of a permutation of cycle
/// type λ.
pub fn z_value(lambda: &Partition) -> BigUint {
    multiplicities(lambda)
        .into_iter()
        .fold(BigUint::one(), |acc, (i, m)| {
            acc * BigUint::from(i).pow(m) * factorial(m)
        })
}

/// Renders as `3+1+1`, or `ε` for the empty partition.
impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return f.write_str("\u{3b5}");
        }
        for (k, p) in self.parts.iter().enumerate() {
            if k > 0 {
                f.write_str("+")?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

impl FromStr for Partition {
    type Err = PartitionError;

    /// Parts must already be weakly decreasing; `3+1+2` is rejected rather
    /// than sorted.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s == "\u{3b5}" || s == "e" || s.is_empty() {
            return Ok(Partition::empty());
        }
        let parts = s
            .split('+')
            .map(|t| {
                t.trim()
                    .parse::<u32>()
                    .map_err(|_| PartitionError::Syntax(s.to_string()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Partition::new(parts)
    }
}

/// Every partition of `n` with length in `[min_len, max_len]` (no upper bound
/// when `max_len` is `None`), in decreasing lexicographic order.
pub fn enumerate_partitions(n: u32, min_len: usize, max_len: Option<usize>) -> Vec<Partition> {
    let max_len = max_len.unwrap_or(n as usize).min(n as usize);
    let mut out = Vec::new();
    if n == 0 {
        if min_len == 0 {
            out.push(Partition::empty());
        }
        return out;
    }
    if min_len > max_len {
        return out;
    }
    let mut current = Vec::with_capacity(max_len);
    fill(n, n, min_len, max_len, &mut current, &mut out);
    out
}

fn fill(
    remaining: u32,
    largest: u32,
    min_len: usize,
    max_len: usize,
    current: &mut Vec<u32>,
    out: &mut Vec<Partition>,
) {
    if remaining == 0 {
        if current.len() >= min_len {
            out.push(Partition::from_sorted(current.clone()));
        }
        return;
    }
    let slots = max_len - current.len();
    if slots == 0 {
        return;
    }
    // Remaining weight split into all ones gives the most parts possible.
    if current.len() + (remaining as usize) < min_len {
        return;
    }
    for part in (1..=largest.min(remaining)).rev() {
        // The rest must fit in the remaining slots with parts no larger than `part`.
        if (part as u64) * (slots as u64) < remaining as u64 {
            break;
        }
        current.push(part);
        fill(remaining - part, part, min_len, max_len, current, out);
        current.pop();
    }
}

type CacheKey = (u32, usize, Option<usize>);

/// Memoized [`enumerate_partitions`]. Concurrent fills of the same key are
/// idempotent: the first inserted list wins and later ones are discarded.
#[derive(Debug, Default)]
pub struct PartitionCache {
    lists: RwLock<HashMap<CacheKey, Arc<Vec<Partition>>>>,
}

impl PartitionCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, n: u32, min_len: usize, max_len: Option<usize>) -> Arc<Vec<Partition>> {
        let key = (n, min_len, max_len);
        if let Some(hit) = self.lists.read().expect("partition cache poisoned").get(&key) {
            return Arc::clone(hit);
        }
        let fresh = Arc::new(enumerate_partitions(n, min_len, max_len));
        let mut lists = self.lists.write().expect("partition cache poisoned");
        Arc::clone(lists.entry(key).or_insert(fresh))
    }

    pub fn len(&self) -> usize {
        self.lists.read().expect("partition cache poisoned").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}
