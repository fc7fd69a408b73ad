//! Exact-integer algebra on partitions of `[n] = {1, …, n}`.
//!
//! A [`Partition`] keeps its blocks in the order they were given (for solver
//! output this is the order of the instance's size slots) together with the
//! cached block sums. The potential `d = Σ (S(A_i) − s)²` and the exchange
//! move `χ_{a,b}` are the two tools every search in this crate is built from.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result, MAX_N};

/// `n(n+1)/2` for an already range-checked `n`.
#[inline]
pub fn triangular(n: u64) -> i64 {
    (n as i64) * (n as i64 + 1) / 2
}

fn check_n(n: u64) -> Result<()> {
    if n == 0 {
        return Err(Error::InputRange("n must be at least 1".into()));
    }
    if n > MAX_N {
        return Err(Error::InputRange(format!("n = {n} exceeds 2^31")));
    }
    Ok(())
}

/// The common block sum `s = n(n+1) / 2k`, or `None` when it is not an integer.
pub fn magic_sum(n: u64, k: u64) -> Result<Option<i64>> {
    check_n(n)?;
    if k == 0 {
        return Err(Error::InputRange("k must be at least 1".into()));
    }
    let total = triangular(n);
    let k = i64::try_from(k).map_err(|_| Error::InputRange(format!("k = {k} too large")))?;
    Ok((total % k == 0).then(|| total / k))
}

/// Problem statement: split `[n]` into `k` blocks with the given sizes.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Instance {
    n: u32,
    sizes: Vec<u32>,
}

impl Instance {
    /// Validates an instance whose sizes are already non-decreasing.
    pub fn new(n: u64, k: usize, sizes: Vec<u32>) -> Result<Self> {
        check_n(n)?;
        if k == 0 {
            return Err(Error::InvalidInstance("k must be at least 1".into()));
        }
        if sizes.len() != k {
            return Err(Error::InvalidInstance(format!(
                "expected {k} sizes, got {}",
                sizes.len()
            )));
        }
        if sizes.contains(&0) {
            return Err(Error::InvalidInstance("part sizes must be positive".into()));
        }
        if sizes.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::InvalidInstance(format!(
                "sizes {sizes:?} are not non-decreasing"
            )));
        }
        let total: u64 = sizes.iter().map(|&p| u64::from(p)).sum();
        if total != n {
            return Err(Error::InvalidInstance(format!(
                "sizes sum to {total}, expected n = {n}"
            )));
        }
        Ok(Instance { n: n as u32, sizes })
    }

    /// Like [`Instance::new`] but sorts the sizes first.
    pub fn normalized(n: u64, k: usize, mut sizes: Vec<u32>) -> Result<Self> {
        sizes.sort_unstable();
        Self::new(n, k, sizes)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn k(&self) -> usize {
        self.sizes.len()
    }

    pub fn sizes(&self) -> &[u32] {
        &self.sizes
    }

    /// `P_j = p_1 + … + p_j` for `j = 1..=k`.
    pub fn prefix_sizes(&self) -> Vec<u64> {
        self.sizes
            .iter()
            .scan(0u64, |acc, &p| {
                *acc += u64::from(p);
                Some(*acc)
            })
            .collect()
    }

    pub fn magic_sum(&self) -> Option<i64> {
        magic_sum(u64::from(self.n), self.k() as u64).expect("validated instance")
    }

    /// Sort key used for ordering reports: `(n, k, sizes)`.
    pub fn sort_key(&self) -> (u32, usize, &[u32]) {
        (self.n, self.k(), &self.sizes)
    }
}

impl fmt::Display for Instance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n={} k={} sizes=(", self.n, self.k())?;
        for (i, p) in self.sizes.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str(")")
    }
}

/// Position of a block sum relative to the target `s`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BlockClass {
    Low,
    Exact,
    High,
}

pub fn classify(block_sum: i64, s: i64) -> BlockClass {
    match block_sum.cmp(&s) {
        Ordering::Less => BlockClass::Low,
        Ordering::Equal => BlockClass::Exact,
        Ordering::Greater => BlockClass::High,
    }
}

/// Smallest gap `y − x` between a label `y` in a high block and a smaller
/// label `x` in a low block.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Width {
    Finite(u32),
    Infinite,
}

impl Width {
    pub fn is_finite(self) -> bool {
        matches!(self, Width::Finite(_))
    }
}

impl fmt::Display for Width {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Width::Finite(w) => write!(f, "{w}"),
            Width::Infinite => f.write_str("inf"),
        }
    }
}

/// A partition of `[n]` into labelled blocks with cached block sums.
///
/// Values are never mutated through the public API; [`Partition::swap`]
/// returns a new partition.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Partition {
    n: u32,
    blocks: Vec<Vec<u32>>,
    #[serde(skip)]
    sums: Vec<i64>,
    #[serde(skip)]
    owner: Vec<u32>,
}

impl Partition {
    /// Builds a partition from explicit blocks. Each block is sorted; the
    /// block order is kept.
    pub fn from_blocks(n: u64, blocks: Vec<Vec<u32>>) -> Result<Self> {
        check_n(n)?;
        if blocks.is_empty() {
            return Err(Error::InvalidPartition("no blocks".into()));
        }
        let n32 = n as u32;
        let mut owner = vec![u32::MAX; n as usize + 1];
        let mut blocks = blocks;
        let mut sums = Vec::with_capacity(blocks.len());
        let mut placed = 0u64;
        for (i, block) in blocks.iter_mut().enumerate() {
            if block.is_empty() {
                return Err(Error::InvalidPartition(format!("block {i} is empty")));
            }
            if !block.is_sorted() {
                block.sort_unstable();
            }
            for &x in block.iter() {
                let slot = owner
                    .get_mut(x as usize)
                    .filter(|_| x != 0)
                    .ok_or_else(|| {
                        Error::InvalidPartition(format!("label {x} is outside [1, {n}]"))
                    })?;
                if *slot != u32::MAX {
                    return Err(Error::InvalidPartition(format!("label {x} appears twice")));
                }
                *slot = i as u32;
            }
            placed += block.len() as u64;
            // Bounded by n(n+1)/2 < 2^62, so the wrapping add never wraps.
            sums.push(
                block
                    .iter()
                    .fold(0i64, |acc, &x| acc.wrapping_add(i64::from(x))),
            );
        }
        if placed != n {
            let missing = (1..=n32)
                .find(|&x| owner[x as usize] == u32::MAX)
                .unwrap_or(0);
            return Err(Error::InvalidPartition(format!(
                "label {missing} is missing"
            )));
        }
        Ok(Partition {
            n: n32,
            blocks,
            sums,
            owner,
        })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn k(&self) -> usize {
        self.blocks.len()
    }

    pub fn blocks(&self) -> &[Vec<u32>] {
        &self.blocks
    }

    pub fn sums(&self) -> &[i64] {
        &self.sums
    }

    pub fn sizes(&self) -> Vec<u32> {
        self.blocks.iter().map(|b| b.len() as u32).collect()
    }

    /// Index of the block containing `label`.
    pub fn block_of(&self, label: u32) -> Option<usize> {
        if label == 0 || label > self.n {
            return None;
        }
        Some(self.owner[label as usize] as usize)
    }

    /// True when the block sizes are a rearrangement of `sizes`.
    pub fn implements(&self, sizes: &[u32]) -> bool {
        let mut mine = self.sizes();
        let mut theirs = sizes.to_vec();
        mine.sort_unstable();
        theirs.sort_unstable();
        mine == theirs
    }

    /// Blocks reordered by their least element, for order-insensitive comparison.
    pub fn canonical(&self) -> Partition {
        let mut blocks = self.blocks.clone();
        blocks.sort_by_key(|b| b[0]);
        Partition::from_blocks(u64::from(self.n), blocks).expect("reordering keeps validity")
    }

    pub fn is_equitable(&self, s: i64) -> bool {
        self.sums.iter().all(|&x| x == s)
    }

    /// `Σ_i (S(A_i) − s)²`.
    pub fn deviation(&self, s: i64) -> i128 {
        self.sums
            .iter()
            .map(|&x| {
                let e = i128::from(x) - i128::from(s);
                e * e
            })
            .sum()
    }

    fn check_swap(&self, a: u32, b: u32) -> Result<(usize, usize)> {
        if a >= b {
            return Err(Error::Precondition(format!(
                "swap needs a < b, got ({a}, {b})"
            )));
        }
        let (Some(i), Some(j)) = (self.block_of(a), self.block_of(b)) else {
            return Err(Error::Precondition(format!(
                "swap labels ({a}, {b}) must lie in [1, {}]",
                self.n
            )));
        };
        if i == j {
            return Err(Error::Precondition(format!(
                "{a} and {b} are both in block {i}"
            )));
        }
        Ok((i, j))
    }

    /// `χ_{a,b}`: exchange `a` and `b` between their blocks.
    pub fn swap(&self, a: u32, b: u32) -> Result<Partition> {
        self.check_swap(a, b)?;
        let mut next = self.clone();
        next.swap_unchecked(a, b);
        Ok(next)
    }

    /// Change in [`deviation`](Self::deviation) caused by `χ_{a,b}`:
    /// `2t(t − u)` with `t = b − a` and `u = S(block of b) − S(block of a)`.
    /// Independent of the target sum.
    pub fn swap_delta(&self, a: u32, b: u32) -> Result<i128> {
        let (i, j) = self.check_swap(a, b)?;
        Ok(self.delta_between(a, b, i, j))
    }

    #[inline]
    pub(crate) fn delta_between(&self, a: u32, b: u32, i: usize, j: usize) -> i128 {
        let t = i128::from(b - a);
        let u = i128::from(self.sums[j]) - i128::from(self.sums[i]);
        2 * t * (t - u)
    }

    /// In-place `χ_{a,b}`; the caller guarantees `a < b` in distinct blocks.
    pub(crate) fn swap_unchecked(&mut self, a: u32, b: u32) {
        let i = self.owner[a as usize] as usize;
        let j = self.owner[b as usize] as usize;
        debug_assert!(a < b && i != j);
        replace_sorted(&mut self.blocks[i], a, b);
        replace_sorted(&mut self.blocks[j], b, a);
        let t = i64::from(b - a);
        self.sums[i] += t;
        self.sums[j] -= t;
        self.owner[a as usize] = j as u32;
        self.owner[b as usize] = i as u32;
    }

    /// Block index per label; entry 0 is unused.
    pub(crate) fn owner_table(&self) -> &[u32] {
        &self.owner
    }

    pub(crate) fn owner_index(&self, label: u32) -> usize {
        self.owner[label as usize] as usize
    }

    /// Minimum `y − x` over `y` in a high block, `x < y` in a low block.
    pub fn width(&self, s: i64) -> Width {
        let classes: Vec<BlockClass> = self.sums.iter().map(|&x| classify(x, s)).collect();
        let mut last_low = None;
        let mut best: Option<u32> = None;
        for label in 1..=self.n {
            match classes[self.owner[label as usize] as usize] {
                BlockClass::Low => last_low = Some(label),
                BlockClass::High => {
                    if let Some(x) = last_low {
                        let gap = label - x;
                        best = Some(best.map_or(gap, |b| b.min(gap)));
                    }
                }
                BlockClass::Exact => {}
            }
        }
        best.map_or(Width::Infinite, Width::Finite)
    }

    /// Equivalence in the sense of equal block-sum multisets. Block sizes are
    /// not compared.
    pub fn equivalent(&self, other: &Partition) -> Result<bool> {
        if self.n != other.n || self.k() != other.k() {
            return Err(Error::Precondition(format!(
                "cannot compare a partition of [{}] into {} blocks with one of [{}] into {}",
                self.n,
                self.k(),
                other.n,
                other.k()
            )));
        }
        let mut a = self.sums.clone();
        let mut b = other.sums.clone();
        a.sort_unstable();
        b.sort_unstable();
        Ok(a == b)
    }
}

fn replace_sorted(block: &mut Vec<u32>, old: u32, new: u32) {
    let at = block
        .binary_search(&old)
        .expect("label is in its owner block");
    block.remove(at);
    let to = block.binary_search(&new).unwrap_err();
    block.insert(to, new);
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, block) in self.blocks.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            f.write_str("{")?;
            for (j, x) in block.iter().enumerate() {
                if j > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{x}")?;
            }
            f.write_str("}")?;
        }
        Ok(())
    }
}
