//! Producing equitable partitions.
//!
//! [`solve`] routes an instance through the cheapest method that is known to
//! work: the feasibility verdict first, then the closed-form constructions,
//! then local search, and finally the exact search for small `n`.

mod construct;
mod exact;
mod local;

use std::time::{Duration, Instant};

use serde::Serialize;

use crate::feasibility::{feasibility, Verdict};
use crate::partition::{Instance, Partition};

pub use construct::{greedy_init, solve_k2, solve_p1_eq_1};
pub use exact::{solve_exact, ExactOutcome, ExactSearch, OracleResult};
pub use local::{local_search, local_search_with, LocalSearch, SearchEvent, SearchParams};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SolveStatus {
    Solved,
    ProvenInfeasible,
    BudgetExhausted,
}

impl SolveStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            SolveStatus::Solved => "solved",
            SolveStatus::ProvenInfeasible => "proven_infeasible",
            SolveStatus::BudgetExhausted => "budget_exhausted",
        }
    }
}

/// Which route settled the instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Verdict,
    SingleBlock,
    SizeOneRule,
    TwoBlockConstruction,
    LocalSearch,
    ExactSearch,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct SolveStats {
    pub nodes_expanded: u64,
    pub swaps_applied: u64,
    pub restarts: u64,
    #[serde(skip)]
    pub elapsed: Duration,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveResult {
    pub status: SolveStatus,
    pub partition: Option<Partition>,
    pub verdict: Verdict,
    pub method: Option<Method>,
    pub stats: SolveStats,
}

/// Full pipeline. Deterministic for a fixed `(inst, params)`; every `Solved`
/// result implements `inst.sizes()` slot by slot and is equitable.
pub fn solve(inst: &Instance, params: &SearchParams) -> SolveResult {
    let started = Instant::now();
    let verdict = feasibility(inst);
    let mut stats = SolveStats::default();
    let finish = |status, partition, method, mut stats: SolveStats| {
        stats.elapsed = started.elapsed();
        SolveResult {
            status,
            partition,
            verdict,
            method,
            stats,
        }
    };

    if verdict.is_infeasible() {
        return finish(
            SolveStatus::ProvenInfeasible,
            None,
            Some(Method::Verdict),
            stats,
        );
    }
    let s = verdict.magic_sum.expect("feasible verdicts carry s");
    let n = inst.n();

    if inst.k() == 1 {
        let p = Partition::from_blocks(u64::from(n), vec![(1..=n).collect()])
            .expect("[n] is a partition of itself");
        return finish(
            SolveStatus::Solved,
            Some(p),
            Some(Method::SingleBlock),
            stats,
        );
    }
    if inst.sizes()[0] == 1 {
        let p = solve_p1_eq_1(inst).expect("verdict checked the singleton shape");
        return finish(
            SolveStatus::Solved,
            Some(p),
            Some(Method::SizeOneRule),
            stats,
        );
    }
    if inst.k() == 2 {
        let p = solve_k2(inst).expect("verdict checked the prefix condition");
        return finish(
            SolveStatus::Solved,
            Some(p),
            Some(Method::TwoBlockConstruction),
            stats,
        );
    }

    let start = greedy_init(inst, params.seed).expect("s is integral");
    let searched = local_search(&start, s, params);
    stats.swaps_applied = searched.swaps;
    stats.restarts = searched.restarts;
    if searched.best.is_equitable(s) {
        return finish(
            SolveStatus::Solved,
            Some(searched.best),
            Some(Method::LocalSearch),
            stats,
        );
    }
    if n > params.exact_cutoff_n {
        return finish(SolveStatus::BudgetExhausted, None, None, stats);
    }
    let exact = solve_exact(inst, params.exact_node_budget).expect("s is integral");
    stats.nodes_expanded = exact.nodes;
    match exact.outcome {
        ExactOutcome::Found(p) => finish(
            SolveStatus::Solved,
            Some(p),
            Some(Method::ExactSearch),
            stats,
        ),
        ExactOutcome::Exhausted => finish(
            SolveStatus::ProvenInfeasible,
            None,
            Some(Method::ExactSearch),
            stats,
        ),
        ExactOutcome::BudgetExhausted => finish(SolveStatus::BudgetExhausted, None, None, stats),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::feasibility::VerdictStatus;

    fn inst(n: u64, sizes: &[u32]) -> Instance {
        Instance::new(n, sizes.len(), sizes.to_vec()).unwrap()
    }

    #[test]
    fn solve_examples() {
        let params = SearchParams::default();
        let r = solve(&inst(8, &[2, 2, 2, 2]), &params);
        assert_eq!(r.status, SolveStatus::Solved);
        assert!(r.partition.as_ref().unwrap().is_equitable(9));

        let r = solve(&inst(12, &[2, 2, 8]), &params);
        assert_eq!(r.status, SolveStatus::ProvenInfeasible);
        assert!(matches!(r.verdict.status, VerdictStatus::InfeasibleCondition(c) if c.j == 1));

        let r = solve(&inst(7, &[1, 2, 2, 2]), &params);
        assert_eq!(r.method, Some(Method::SizeOneRule));
        assert_eq!(
            r.partition.unwrap().blocks(),
            &[vec![7], vec![1, 6], vec![2, 5], vec![3, 4]]
        );
    }

    #[test]
    fn routes() {
        let params = SearchParams::default();
        assert_eq!(
            solve(&inst(5, &[5]), &params).method,
            Some(Method::SingleBlock)
        );
        assert_eq!(
            solve(&inst(7, &[3, 4]), &params).method,
            Some(Method::TwoBlockConstruction)
        );
        assert_eq!(
            solve(&inst(6, &[1, 1, 2, 2]), &params).status,
            SolveStatus::ProvenInfeasible
        );
    }

    #[test]
    fn large_instance_without_fallback_is_inconclusive_or_solved() {
        let params = SearchParams {
            max_restarts: 0,
            max_plateau_steps: Some(0),
            exact_cutoff_n: 0,
            ..SearchParams::default()
        };
        let r = solve(&inst(24, &[6, 6, 6, 6]), &params);
        match r.status {
            SolveStatus::Solved => assert_eq!(r.method, Some(Method::LocalSearch)),
            SolveStatus::BudgetExhausted => assert!(r.partition.is_none()),
            SolveStatus::ProvenInfeasible => panic!("feasible instance reported infeasible"),
        }
        assert_eq!(r.stats.nodes_expanded, 0);
    }

    #[test]
    fn deterministic_for_fixed_seed() {
        let i = inst(15, &[3, 3, 4, 5]);
        let params = SearchParams {
            seed: 11,
            ..SearchParams::default()
        };
        let a = solve(&i, &params);
        let b = solve(&i, &params);
        assert_eq!(a.status, SolveStatus::Solved);
        assert_eq!(a.partition, b.partition);
        assert_eq!(a.stats.swaps_applied, b.stats.swaps_applied);
    }
}
