//! Text rendering. Every report prints one `key: value` line per JSON field,
//! under the same key, so both formats carry the same facts.

use std::fmt::{Display, Write};

use distmagic::lab::{ReportConfig, SweepReport, SweepRow};

use crate::commands::{CheckReport, LabelReport, SolveReport, VerifyReport};

struct Lines(String);

impl Lines {
    fn new() -> Self {
        Lines(String::new())
    }

    fn field(&mut self, key: &str, value: impl Display) -> &mut Self {
        writeln!(self.0, "{key}: {value}").expect("writing to a String");
        self
    }
}

fn list(values: &[u32]) -> String {
    values
        .iter()
        .map(u32::to_string)
        .collect::<Vec<_>>()
        .join(",")
}

fn blocks(blocks: &[Vec<u32>]) -> String {
    blocks
        .iter()
        .map(|b| format!("{{{}}}", list(b)))
        .collect::<Vec<_>>()
        .join(" ")
}

fn opt<T: Display>(value: Option<T>) -> String {
    value.map_or_else(|| "none".to_string(), |v| v.to_string())
}

fn snake<T: serde::Serialize>(value: &T) -> String {
    match serde_json::to_value(value).expect("enums serialize") {
        serde_json::Value::String(s) => s,
        serde_json::Value::Null => "none".into(),
        other => other.to_string(),
    }
}

pub fn check(r: &CheckReport) -> String {
    let mut out = Lines::new();
    out.field("n", r.n)
        .field("k", r.k)
        .field("sizes", list(&r.sizes))
        .field("status", r.status)
        .field("magic_sum", opt(r.magic_sum))
        .field("message", &r.message)
        .field(
            "condition",
            opt(r
                .condition
                .map(|c| format!("j={} top_sum={} required={}", c.j, c.top_sum, c.required))),
        );
    out.0
}

fn solve_fields(out: &mut Lines, r: &SolveReport) {
    out.field("n", r.n)
        .field("k", r.k)
        .field("sizes", list(&r.sizes))
        .field("status", r.status.as_str())
        .field("magic_sum", opt(r.magic_sum))
        .field("verdict", r.verdict)
        .field("method", snake(&r.method))
        .field("blocks", opt(r.blocks.as_deref().map(blocks)))
        .field("graph_constant", opt(r.graph_constant))
        .field(
            "stats",
            format!(
                "nodes_expanded={} swaps_applied={} restarts={}",
                r.stats.nodes_expanded, r.stats.swaps_applied, r.stats.restarts
            ),
        );
}

pub fn solve(r: &SolveReport) -> String {
    let mut out = Lines::new();
    solve_fields(&mut out, r);
    out.0
}

pub fn label(r: &LabelReport) -> String {
    let mut out = Lines::new();
    solve_fields(&mut out, &r.solve);
    match &r.parts {
        None => {
            out.field("parts", "none");
        }
        Some(parts) => {
            out.field("parts", parts.len());
            for (i, part) in parts.iter().enumerate() {
                writeln!(
                    out.0,
                    "  part {i}: size={} labels={} neighbourhood_sum={}",
                    part.size,
                    list(&part.labels),
                    part.neighbourhood_sum
                )
                .expect("writing to a String");
            }
        }
    }
    out.0
}

pub fn verify(r: &VerifyReport) -> String {
    let mut out = Lines::new();
    out.field("n", r.n)
        .field("k", r.k)
        .field("sizes", list(&r.sizes))
        .field("blocks", blocks(&r.blocks))
        .field("neighbourhood", r.neighbourhood)
        .field("is_magic", r.check.is_magic)
        .field("constant", opt(r.check.constant))
        .field(
            "witness",
            opt(r
                .check
                .witness
                .map(|w| format!("u={} v={} sum_u={} sum_v={}", w.u, w.v, w.sum_u, w.sum_v))),
        )
        .field("degenerate", r.check.degenerate);
    out.0
}

fn row(r: &SweepRow) -> String {
    format!(
        "n={} k={} sizes={} magic_sum={} verdict={} predicted={} oracle={} agree={} nodes={}",
        r.n,
        r.k,
        list(&r.sizes),
        opt(r.magic_sum),
        r.verdict,
        r.predicted,
        snake(&r.oracle),
        r.agree,
        r.nodes
    )
}

fn rows(out: &mut Lines, key: &str, rows: &[SweepRow]) {
    out.field(key, rows.len());
    for r in rows {
        writeln!(out.0, "  {}", row(r)).expect("writing to a String");
    }
}

pub fn sweep(r: &SweepReport) -> String {
    let mut out = Lines::new();
    let config = match &r.config {
        ReportConfig::Sweep(c) => format!(
            "kind=sweep n_max={} k_set={} min_part={} budget={}",
            c.n_max,
            c.k_set
                .iter()
                .map(usize::to_string)
                .collect::<Vec<_>>()
                .join(","),
            c.min_part,
            c.budget
        ),
        ReportConfig::Symmetric(c) => {
            format!(
                "kind=symmetric max_total={} budget={}",
                c.max_total, c.budget
            )
        }
    };
    out.field("config", config);
    rows(&mut out, "rows", &r.rows);
    rows(&mut out, "mismatches", &r.mismatches);
    rows(
        &mut out,
        "counterexample_candidates",
        &r.counterexample_candidates,
    );
    let t = &r.totals;
    out.field(
        "totals",
        format!(
            "rows={} predicted_feasible={} found={} not_found={} budget={} mismatches={}",
            t.rows, t.predicted_feasible, t.found, t.not_found, t.budget, t.mismatches
        ),
    );
    out.0
}
