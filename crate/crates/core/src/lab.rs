//! Exhaustive comparison of the feasibility verdict against the exact search.
//!
//! A sweep enumerates every instance in a bounded space, asks
//! [`feasibility`] for a prediction and [`solve_exact`] for the truth, and
//! records whether they agree. Rows are computed independently (optionally on
//! several threads) and sorted by `(n, k, sizes)` afterwards, so a report
//! depends only on its configuration.

use rayon::prelude::*;
use serde::Serialize;

use crate::feasibility::feasibility;
use crate::graphs::{labeling_from_partition, verify_closed_magic_cycle, verify_distance_magic};
use crate::partition::{triangular, Instance};
use crate::solver::{solve, solve_exact, Method, OracleResult, SearchParams, SolveStatus};

/// Non-decreasing sequences of `k` integers `>= min_part` summing to `n`, in
/// lexicographic order.
pub fn enumerate_size_sequences(n: u32, k: usize, min_part: u32) -> Vec<Vec<u32>> {
    fn extend(
        remaining: u32,
        slots: usize,
        lower: u32,
        prefix: &mut Vec<u32>,
        out: &mut Vec<Vec<u32>>,
    ) {
        if slots == 0 {
            if remaining == 0 {
                out.push(prefix.clone());
            }
            return;
        }
        // The rest of the sequence is at least `value` in every slot.
        let mut value = lower;
        while u64::from(value) * slots as u64 <= u64::from(remaining) {
            prefix.push(value);
            extend(remaining - value, slots - 1, value, prefix, out);
            prefix.pop();
            value += 1;
        }
    }
    let mut out = Vec::new();
    if k == 0 {
        return out;
    }
    extend(n, k, min_part.max(1), &mut Vec::with_capacity(k), &mut out);
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SweepConfig {
    pub n_max: u32,
    pub k_set: Vec<usize>,
    pub min_part: u32,
    pub budget: u64,
    /// Thread count; does not influence the report.
    #[serde(skip)]
    pub workers: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SymmetricConfig {
    pub max_total: u32,
    pub budget: u64,
    #[serde(skip)]
    pub workers: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ReportConfig {
    Sweep(SweepConfig),
    Symmetric(SymmetricConfig),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SweepRow {
    pub n: u32,
    pub k: usize,
    pub sizes: Vec<u32>,
    pub magic_sum: Option<i64>,
    /// Verdict label from the feasibility pipeline.
    pub verdict: &'static str,
    /// What the criterion under test predicts.
    pub predicted: bool,
    pub oracle: OracleResult,
    /// Prediction matches a resolved oracle result.
    pub agree: bool,
    pub nodes: u64,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct SweepTotals {
    pub rows: usize,
    pub predicted_feasible: usize,
    pub found: usize,
    pub not_found: usize,
    pub budget: usize,
    pub mismatches: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SweepReport {
    pub config: ReportConfig,
    pub rows: Vec<SweepRow>,
    pub mismatches: Vec<SweepRow>,
    /// Resolved disagreements with `k >= 5`: instances where the prefix
    /// condition holds but no equitable partition exists, or vice versa.
    pub counterexample_candidates: Vec<SweepRow>,
    pub totals: SweepTotals,
}

impl SweepReport {
    fn assemble(config: ReportConfig, mut rows: Vec<SweepRow>) -> Self {
        rows.sort_by(|a, b| (a.n, a.k, &a.sizes).cmp(&(b.n, b.k, &b.sizes)));
        let mismatches: Vec<SweepRow> = rows.iter().filter(|r| !r.agree).cloned().collect();
        let counterexample_candidates = mismatches
            .iter()
            .filter(|r| r.k >= 5 && r.oracle != OracleResult::Budget)
            .cloned()
            .collect();
        let count = |f: &dyn Fn(&SweepRow) -> bool| rows.iter().filter(|r| f(r)).count();
        let totals = SweepTotals {
            rows: rows.len(),
            predicted_feasible: count(&|r| r.predicted),
            found: count(&|r| r.oracle == OracleResult::Found),
            not_found: count(&|r| r.oracle == OracleResult::NotFound),
            budget: count(&|r| r.oracle == OracleResult::Budget),
            mismatches: mismatches.len(),
        };
        SweepReport {
            config,
            rows,
            mismatches,
            counterexample_candidates,
            totals,
        }
    }

    pub fn is_clean(&self) -> bool {
        self.mismatches.is_empty()
    }
}

fn on_workers<T: Send>(workers: usize, job: impl FnOnce() -> T + Send) -> T {
    match rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
    {
        Ok(pool) => pool.install(job),
        Err(_) => job(),
    }
}

fn oracle_row(inst: &Instance, predicted: bool, budget: u64) -> SweepRow {
    let verdict = feasibility(inst);
    let (oracle, nodes) = match inst.magic_sum() {
        None => (OracleResult::NotFound, 0),
        Some(_) => {
            let search = solve_exact(inst, budget).expect("s is integral");
            (search.outcome.kind(), search.nodes)
        }
    };
    let agree = match oracle {
        OracleResult::Found => predicted,
        OracleResult::NotFound => !predicted,
        OracleResult::Budget => false,
    };
    SweepRow {
        n: inst.n(),
        k: inst.k(),
        sizes: inst.sizes().to_vec(),
        magic_sum: inst.magic_sum(),
        verdict: verdict.label(),
        predicted,
        oracle,
        agree,
        nodes,
    }
}

/// Instances of a sweep: every `n <= n_max`, `k` in the set with integral
/// `s`, and every size sequence with parts `>= min_part`.
pub fn sweep_instances(config: &SweepConfig) -> Vec<Instance> {
    let mut out = Vec::new();
    for n in 1..=config.n_max {
        for &k in &config.k_set {
            if k == 0 || triangular(u64::from(n)) % k as i64 != 0 {
                continue;
            }
            for sizes in enumerate_size_sequences(n, k, config.min_part) {
                out.push(
                    Instance::new(u64::from(n), k, sizes).expect("enumerated sizes are valid"),
                );
            }
        }
    }
    out
}

/// Prefix condition (with the singleton rule for `p_1 = 1`) against the exact
/// search.
pub fn sweep(config: &SweepConfig) -> SweepReport {
    let instances = sweep_instances(config);
    let rows = on_workers(config.workers, || {
        instances
            .par_iter()
            .map(|inst| oracle_row(inst, feasibility(inst).predicts_feasible(), config.budget))
            .collect()
    });
    SweepReport::assemble(ReportConfig::Sweep(config.clone()), rows)
}

/// Existence predicted for `p` equal parts of size `m`: `m` even, or `m` and
/// `p` both odd.
pub fn symmetric_criterion(m: u32, p: u32) -> bool {
    m.is_multiple_of(2) || (m % 2 == 1 && p % 2 == 1)
}

/// `H_{m,p}` for all `m >= 1`, `p >= 2` with `m·p <= max_total`, oracle
/// against [`symmetric_criterion`]. Rows with non-integral `s` count as "no
/// labelling" without a search.
pub fn check_symmetric(config: &SymmetricConfig) -> SweepReport {
    let mut cases = Vec::new();
    for p in 2..=config.max_total {
        for m in 1..=config.max_total / p {
            let inst = Instance::new(u64::from(m * p), p as usize, vec![m; p as usize])
                .expect("equal parts form a valid instance");
            cases.push((inst, symmetric_criterion(m, p)));
        }
    }
    let rows = on_workers(config.workers, || {
        cases
            .par_iter()
            .map(|(inst, predicted)| oracle_row(inst, *predicted, config.budget))
            .collect()
    });
    SweepReport::assemble(ReportConfig::Symmetric(config.clone()), rows)
}

/// Outcome of running the full solver on one predicted-feasible instance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SurveyRow {
    pub n: u32,
    pub k: usize,
    pub sizes: Vec<u32>,
    pub status: SolveStatus,
    pub method: Option<Method>,
    /// Open neighbourhood constant of the multipartite labelling.
    pub graph_constant: Option<i64>,
    /// Closed neighbourhood constant of the cycle blow-up (`k >= 3`).
    pub cycle_constant: Option<i64>,
    /// Solved, implements the sizes, and both graph checks passed with the
    /// expected constants.
    pub verified: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SurveyReport {
    pub rows: Vec<SurveyRow>,
    pub solved: usize,
    pub by_local_search: usize,
    pub by_exact_fallback: usize,
    pub by_construction: usize,
    pub failures: Vec<SurveyRow>,
}

fn survey_row(inst: &Instance, params: &SearchParams) -> SurveyRow {
    let result = solve(inst, params);
    let s = inst.magic_sum();
    let mut row = SurveyRow {
        n: inst.n(),
        k: inst.k(),
        sizes: inst.sizes().to_vec(),
        status: result.status,
        method: result.method,
        graph_constant: None,
        cycle_constant: None,
        verified: false,
    };
    let (Some(p), Some(s)) = (result.partition.as_ref(), s) else {
        return row;
    };
    let total = triangular(u64::from(inst.n()));
    let open = verify_distance_magic(&labeling_from_partition(p)).ok();
    row.graph_constant = open.and_then(|c| c.constant);
    let mut ok = p.sizes() == inst.sizes()
        && p.is_equitable(s)
        && open.is_some_and(|c| c.is_magic)
        && row.graph_constant == Some(total - s);
    if inst.k() >= 3 {
        let closed = verify_closed_magic_cycle(p).ok();
        row.cycle_constant = closed.and_then(|c| c.constant);
        let expected = if inst.k() == 3 { total } else { 3 * s };
        ok &= closed.is_some_and(|c| c.is_magic) && row.cycle_constant == Some(expected);
    }
    row.verified = ok;
    row
}

/// Runs [`solve`] on every instance of the sweep space that the verdict
/// predicts feasible and checks the resulting labellings.
pub fn solve_survey(config: &SweepConfig, params: &SearchParams) -> SurveyReport {
    let instances: Vec<Instance> = sweep_instances(config)
        .into_iter()
        .filter(|i| feasibility(i).predicts_feasible())
        .collect();
    let rows: Vec<SurveyRow> = on_workers(config.workers, || {
        instances
            .par_iter()
            .map(|i| survey_row(i, params))
            .collect()
    });
    let count = |m: &[Method]| {
        rows.iter()
            .filter(|r| r.status == SolveStatus::Solved && r.method.is_some_and(|x| m.contains(&x)))
            .count()
    };
    SurveyReport {
        solved: rows
            .iter()
            .filter(|r| r.status == SolveStatus::Solved)
            .count(),
        by_local_search: count(&[Method::LocalSearch]),
        by_exact_fallback: count(&[Method::ExactSearch]),
        by_construction: count(&[
            Method::SingleBlock,
            Method::SizeOneRule,
            Method::TwoBlockConstruction,
        ]),
        failures: rows.iter().filter(|r| !r.verified).cloned().collect(),
        rows,
    }
}
