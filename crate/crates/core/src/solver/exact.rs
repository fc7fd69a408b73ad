//! Complete backtracking search for an equitable partition.
//!
//! Labels are placed from `n` down to `1`. After every placement each block's
//! remaining deficit must be reachable with its remaining capacity from the
//! labels still unplaced (`1..=m`): at least `1 + … + r` and at most
//! `m + (m−1) + … + (m−r+1)`. Blocks of equal size are interchangeable, so a
//! block may only receive its first label once the preceding block of the same
//! size is open; equal-size blocks therefore end up ordered by decreasing
//! largest element.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::partition::{Instance, Partition};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExactOutcome {
    Found(Partition),
    /// The whole search space was explored without success.
    Exhausted,
    BudgetExhausted,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactSearch {
    pub outcome: ExactOutcome,
    pub nodes: u64,
}

/// Result kind without the partition, for reports.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum OracleResult {
    Found,
    NotFound,
    Budget,
}

impl ExactOutcome {
    pub fn kind(&self) -> OracleResult {
        match self {
            ExactOutcome::Found(_) => OracleResult::Found,
            ExactOutcome::Exhausted => OracleResult::NotFound,
            ExactOutcome::BudgetExhausted => OracleResult::Budget,
        }
    }
}

struct Search<'a> {
    sizes: &'a [u32],
    capacity: Vec<u32>,
    deficit: Vec<i64>,
    assigned: Vec<u32>,
    nodes: u64,
    budget: u64,
    out_of_budget: bool,
}

#[inline]
fn min_completion(r: i64) -> i64 {
    r * (r + 1) / 2
}

#[inline]
fn max_completion(r: i64, m: i64) -> i64 {
    r * m - r * (r - 1) / 2
}

impl Search<'_> {
    /// All blocks can still be completed from the labels `1..=m`.
    fn completable(&self, m: i64) -> bool {
        self.capacity.iter().zip(&self.deficit).all(|(&r, &d)| {
            let r = i64::from(r);
            if r == 0 {
                d == 0
            } else {
                min_completion(r) <= d && d <= max_completion(r, m)
            }
        })
    }

    fn place(&mut self, label: u32) -> bool {
        if label == 0 {
            return true;
        }
        let k = self.sizes.len();
        for b in 0..k {
            if self.capacity[b] == 0 || self.deficit[b] < i64::from(label) {
                continue;
            }
            let opening = self.capacity[b] == self.sizes[b];
            if opening
                && b > 0
                && self.sizes[b - 1] == self.sizes[b]
                && self.capacity[b - 1] == self.sizes[b - 1]
            {
                continue;
            }
            self.nodes += 1;
            if self.nodes > self.budget {
                self.out_of_budget = true;
                return false;
            }
            self.capacity[b] -= 1;
            self.deficit[b] -= i64::from(label);
            self.assigned[label as usize] = b as u32;
            if self.completable(i64::from(label) - 1) && self.place(label - 1) {
                return true;
            }
            self.capacity[b] += 1;
            self.deficit[b] += i64::from(label);
            if self.out_of_budget {
                return false;
            }
        }
        false
    }
}

/// Exhaustive search for an equitable partition implementing `inst.sizes()`,
/// with block `i` of the result having size `sizes[i]`.
///
/// Recursion depth is `n`.
pub fn solve_exact(inst: &Instance, budget: u64) -> Result<ExactSearch> {
    let s = inst
        .magic_sum()
        .ok_or_else(|| Error::Precondition(format!("{inst}: k does not divide n(n+1)/2")))?;
    let n = inst.n();
    let k = inst.k();
    let mut search = Search {
        sizes: inst.sizes(),
        capacity: inst.sizes().to_vec(),
        deficit: vec![s; k],
        assigned: vec![0; n as usize + 1],
        nodes: 0,
        budget,
        out_of_budget: false,
    };
    let outcome = if !search.completable(i64::from(n)) {
        ExactOutcome::Exhausted
    } else if search.place(n) {
        let mut blocks = vec![Vec::new(); k];
        for label in 1..=n {
            blocks[search.assigned[label as usize] as usize].push(label);
        }
        let p = Partition::from_blocks(u64::from(n), blocks)?;
        debug_assert!(p.is_equitable(s));
        ExactOutcome::Found(p)
    } else if search.out_of_budget {
        ExactOutcome::BudgetExhausted
    } else {
        ExactOutcome::Exhausted
    };
    Ok(ExactSearch {
        outcome,
        nodes: search.nodes,
    })
}
