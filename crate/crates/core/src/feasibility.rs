//! Deciding whether an equitable partition with prescribed block sizes exists.
//!
//! The decision pipeline is: divisibility of `n(n+1)/2` by `k`, the special
//! rule for a block of size one, then the prefix condition
//!
//! ```text
//! (n) + (n-1) + … + (n - P_j + 1)  >=  j·s      for every j = 1..k
//! ```
//!
//! where `P_j` is the j-th prefix sum of the sorted sizes. The condition is
//! necessary for every `k` and known to be sufficient for `k <= 4` when the
//! smallest block has at least two elements; beyond that it is only
//! conjectured, and the verdict says so.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::partition::Instance;

/// Sum of the `p` largest elements of `[n]`: `p·n − p(p−1)/2`.
pub fn prefix_top_sum(n: u64, p: u64) -> Result<i64> {
    if p > n {
        return Err(Error::Precondition(format!(
            "prefix length {p} exceeds n = {n}"
        )));
    }
    if n > crate::error::MAX_N {
        return Err(Error::InputRange(format!("n = {n} exceeds 2^31")));
    }
    let (n, p) = (n as i64, p as i64);
    Ok(p * n - p * (p - 1) / 2)
}

/// First prefix index at which the necessary condition fails.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ConditionFailure {
    /// 1-based prefix index.
    pub j: usize,
    /// Sum of the `P_j` largest labels.
    pub top_sum: i64,
    /// `j · s`.
    pub required: i64,
}

/// Smallest `j` violating the prefix condition, or `None` when it holds.
pub fn first_condition_failure(inst: &Instance) -> Result<Option<ConditionFailure>> {
    let s = inst
        .magic_sum()
        .ok_or_else(|| Error::Precondition(format!("{inst}: k does not divide n(n+1)/2")))?;
    let n = u64::from(inst.n());
    let k = inst.k();
    let mut failure = None;
    for (idx, prefix) in inst.prefix_sizes().into_iter().enumerate() {
        let j = idx + 1;
        let top_sum = prefix_top_sum(n, prefix)?;
        let required = j as i64 * s;
        if j == k {
            // P_k = n, so both sides are n(n+1)/2.
            assert_eq!(top_sum, required, "total-sum identity broken for {inst}");
        }
        if top_sum < required && failure.is_none() {
            failure = Some(ConditionFailure {
                j,
                top_sum,
                required,
            });
        }
    }
    Ok(failure)
}

pub fn necessary_condition(inst: &Instance) -> Result<bool> {
    Ok(first_condition_failure(inst)?.is_none())
}

/// Why an instance with a singleton block cannot be equitable.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SizeOneReason {
    /// The singleton must be `{n}`, which needs `s = n`.
    MagicSumNotN,
    /// With `s = n` every other block must be a pair.
    OtherBlocksNotPairs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum VerdictStatus {
    InfeasibleDivisibility,
    InfeasibleCondition(ConditionFailure),
    InfeasibleSizeOne { reason: SizeOneReason },
    FeasibleProven,
    ConditionHoldsConjectured,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub status: VerdictStatus,
    pub magic_sum: Option<i64>,
}

impl Verdict {
    pub fn is_infeasible(&self) -> bool {
        matches!(
            self.status,
            VerdictStatus::InfeasibleDivisibility
                | VerdictStatus::InfeasibleCondition(_)
                | VerdictStatus::InfeasibleSizeOne { .. }
        )
    }

    /// Proven feasible or conjectured feasible.
    pub fn predicts_feasible(&self) -> bool {
        !self.is_infeasible()
    }

    /// Stable snake_case name of the status.
    pub fn label(&self) -> &'static str {
        match self.status {
            VerdictStatus::InfeasibleDivisibility => "infeasible_divisibility",
            VerdictStatus::InfeasibleCondition(_) => "infeasible_condition",
            VerdictStatus::InfeasibleSizeOne { .. } => "infeasible_size_one",
            VerdictStatus::FeasibleProven => "feasible_proven",
            VerdictStatus::ConditionHoldsConjectured => "condition_holds_conjectured",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.status {
            VerdictStatus::InfeasibleDivisibility => {
                f.write_str("infeasible: k does not divide n(n+1)/2")
            }
            VerdictStatus::InfeasibleCondition(c) => write!(
                f,
                "infeasible: condition fails at j={} ({} < {})",
                c.j, c.top_sum, c.required
            ),
            VerdictStatus::InfeasibleSizeOne {
                reason: SizeOneReason::MagicSumNotN,
            } => write!(
                f,
                "infeasible: a block of size 1 must be {{n}} but s={} differs from n",
                self.magic_sum.unwrap_or_default()
            ),
            VerdictStatus::InfeasibleSizeOne {
                reason: SizeOneReason::OtherBlocksNotPairs,
            } => {
                f.write_str("infeasible: with a block of size 1 every other block must have size 2")
            }
            VerdictStatus::FeasibleProven => write!(
                f,
                "feasible (proven), s={}",
                self.magic_sum.unwrap_or_default()
            ),
            VerdictStatus::ConditionHoldsConjectured => write!(
                f,
                "condition holds, feasibility conjectured for k>=5, s={}",
                self.magic_sum.unwrap_or_default()
            ),
        }
    }
}

/// True for size sequences of the form `(1, 2, 2, …, 2)`.
fn is_singleton_then_pairs(sizes: &[u32]) -> bool {
    sizes.first() == Some(&1) && sizes[1..].iter().all(|&p| p == 2)
}

pub fn feasibility(inst: &Instance) -> Verdict {
    let Some(s) = inst.magic_sum() else {
        return Verdict {
            status: VerdictStatus::InfeasibleDivisibility,
            magic_sum: None,
        };
    };
    let verdict = |status| Verdict {
        status,
        magic_sum: Some(s),
    };
    if inst.sizes()[0] == 1 {
        return if s != i64::from(inst.n()) {
            verdict(VerdictStatus::InfeasibleSizeOne {
                reason: SizeOneReason::MagicSumNotN,
            })
        } else if !is_singleton_then_pairs(inst.sizes()) {
            verdict(VerdictStatus::InfeasibleSizeOne {
                reason: SizeOneReason::OtherBlocksNotPairs,
            })
        } else {
            verdict(VerdictStatus::FeasibleProven)
        };
    }
    match first_condition_failure(inst).expect("magic sum present") {
        Some(failure) => verdict(VerdictStatus::InfeasibleCondition(failure)),
        None if inst.k() <= 4 => verdict(VerdictStatus::FeasibleProven),
        None => verdict(VerdictStatus::ConditionHoldsConjectured),
    }
}
