use anyhow::{bail, Context, Result};
use distmagic::feasibility::ConditionFailure;
use distmagic::graphs::MagicCheck;
use distmagic::lab::{
    check_symmetric, sweep as run_sweep, SweepConfig, SweepReport, SymmetricConfig,
};
use distmagic::partition::triangular;
use distmagic::solver::{Method, OracleResult, SolveStats};
use distmagic::{
    feasibility, labeling_from_partition, solve as run_solve, verify_closed_magic_cycle,
    verify_distance_magic, Instance, Partition, SearchParams, SolveStatus, VerdictStatus,
};
use serde::{Deserialize, Serialize};

use crate::render;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[repr(u8)]
pub enum Exit {
    Ok = 0,
    Negative = 1,
    Usage = 2,
    Inconclusive = 3,
}

/// A rendered report in both formats plus the exit status.
pub struct Outcome {
    pub json: String,
    pub text: String,
    pub exit: Exit,
}

impl Outcome {
    fn new<T: Serialize>(report: &T, text: String, exit: Exit) -> Self {
        Outcome {
            json: serde_json::to_string_pretty(report).expect("reports serialize"),
            text,
            exit,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct CheckReport {
    pub n: u32,
    pub k: usize,
    pub sizes: Vec<u32>,
    pub status: &'static str,
    pub magic_sum: Option<i64>,
    pub message: String,
    pub condition: Option<ConditionFailure>,
}

pub fn check(inst: &Instance) -> Outcome {
    let verdict = feasibility(inst);
    let condition = match verdict.status {
        VerdictStatus::InfeasibleCondition(c) => Some(c),
        _ => None,
    };
    let report = CheckReport {
        n: inst.n(),
        k: inst.k(),
        sizes: inst.sizes().to_vec(),
        status: verdict.label(),
        magic_sum: verdict.magic_sum,
        message: verdict.to_string(),
        condition,
    };
    let exit = match verdict.status {
        VerdictStatus::FeasibleProven => Exit::Ok,
        VerdictStatus::ConditionHoldsConjectured => Exit::Inconclusive,
        _ => Exit::Negative,
    };
    Outcome::new(&report, render::check(&report), exit)
}

#[derive(Debug, Serialize)]
pub struct SolveReport {
    pub n: u32,
    pub k: usize,
    pub sizes: Vec<u32>,
    pub status: SolveStatus,
    pub magic_sum: Option<i64>,
    pub verdict: &'static str,
    pub method: Option<Method>,
    /// Ascending blocks, block `i` of size `sizes[i]`.
    pub blocks: Option<Vec<Vec<u32>>>,
    pub graph_constant: Option<i64>,
    pub stats: SolveStats,
}

fn solve_report(inst: &Instance, params: &SearchParams) -> (SolveReport, Option<Partition>) {
    let result = run_solve(inst, params);
    let graph_constant = result.partition.as_ref().map(|p| {
        let check =
            verify_distance_magic(&labeling_from_partition(p)).expect("solver output is valid");
        assert!(
            check.is_magic,
            "solver returned a non-equitable partition for {inst}"
        );
        check.constant.expect("magic checks carry the constant")
    });
    let report = SolveReport {
        n: inst.n(),
        k: inst.k(),
        sizes: inst.sizes().to_vec(),
        status: result.status,
        magic_sum: result.verdict.magic_sum,
        verdict: result.verdict.label(),
        method: result.method,
        blocks: result.partition.as_ref().map(|p| p.blocks().to_vec()),
        graph_constant,
        stats: result.stats,
    };
    (report, result.partition)
}

fn solve_exit(status: SolveStatus) -> Exit {
    match status {
        SolveStatus::Solved => Exit::Ok,
        SolveStatus::ProvenInfeasible => Exit::Negative,
        SolveStatus::BudgetExhausted => Exit::Inconclusive,
    }
}

pub fn solve(inst: &Instance, params: &SearchParams) -> Outcome {
    let (report, _) = solve_report(inst, params);
    Outcome::new(&report, render::solve(&report), solve_exit(report.status))
}

#[derive(Debug, Serialize)]
pub struct PartLabels {
    pub size: u32,
    pub labels: Vec<u32>,
    /// Sum of the labels every vertex of this part sees.
    pub neighbourhood_sum: i64,
}

#[derive(Debug, Serialize)]
pub struct LabelReport {
    #[serde(flatten)]
    pub solve: SolveReport,
    pub parts: Option<Vec<PartLabels>>,
}

pub fn label(inst: &Instance, params: &SearchParams) -> Outcome {
    let (solve, partition) = solve_report(inst, params);
    let parts = partition.map(|p| {
        let total = triangular(u64::from(p.n()));
        let g = labeling_from_partition(&p);
        g.parts()
            .into_iter()
            .zip(p.sums())
            .map(|(labels, &sum)| PartLabels {
                size: labels.len() as u32,
                labels,
                neighbourhood_sum: total - sum,
            })
            .collect()
    });
    let exit = solve_exit(solve.status);
    let report = LabelReport { solve, parts };
    Outcome::new(&report, render::label(&report), exit)
}

/// `verify` accepts a bare array of blocks or any object with a `blocks`
/// field (such as a `solve` report) and an optional `n`.
#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum PartitionInput {
    Blocks(Vec<Vec<u32>>),
    Report {
        n: Option<u64>,
        blocks: Option<Vec<Vec<u32>>>,
        status: Option<String>,
    },
}

pub fn parse_partition(input: &str) -> Result<Partition> {
    let parsed: PartitionInput =
        serde_json::from_str(input).context("input is not a JSON partition")?;
    let (n, blocks) = match parsed {
        PartitionInput::Blocks(blocks) => (None, blocks),
        PartitionInput::Report { n, blocks, status } => match blocks {
            Some(blocks) => (n, blocks),
            None => match status {
                Some(status) => bail!("the report carries no partition (status {status})"),
                None => bail!("missing field `blocks`"),
            },
        },
    };
    let n = n.unwrap_or_else(|| blocks.iter().map(|b| b.len() as u64).sum());
    Ok(Partition::from_blocks(n, blocks)?)
}

#[derive(Debug, Serialize)]
pub struct VerifyReport {
    pub n: u32,
    pub k: usize,
    pub sizes: Vec<u32>,
    pub blocks: Vec<Vec<u32>>,
    pub neighbourhood: &'static str,
    #[serde(flatten)]
    pub check: MagicCheck,
}

pub fn verify(input: &str, closed: bool) -> Result<Outcome> {
    let p = parse_partition(input)?;
    let check = if closed {
        verify_closed_magic_cycle(&p)?
    } else {
        verify_distance_magic(&labeling_from_partition(&p))?
    };
    let report = VerifyReport {
        n: p.n(),
        k: p.k(),
        sizes: p.sizes(),
        blocks: p.blocks().to_vec(),
        neighbourhood: if closed { "closed" } else { "open" },
        check,
    };
    let exit = if check.is_magic {
        Exit::Ok
    } else {
        Exit::Negative
    };
    Ok(Outcome::new(&report, render::verify(&report), exit))
}

/// Budget rows never agree, so a resolved disagreement is checked first.
fn sweep_exit(report: &SweepReport) -> Exit {
    if report
        .mismatches
        .iter()
        .any(|r| r.oracle != OracleResult::Budget)
    {
        Exit::Negative
    } else if report.totals.budget > 0 {
        Exit::Inconclusive
    } else {
        Exit::Ok
    }
}

pub fn sweep(config: &SweepConfig) -> Outcome {
    let report = run_sweep(config);
    Outcome::new(&report, render::sweep(&report), sweep_exit(&report))
}

pub fn symmetric(config: &SymmetricConfig) -> Outcome {
    let report = check_symmetric(config);
    Outcome::new(&report, render::sweep(&report), sweep_exit(&report))
}
