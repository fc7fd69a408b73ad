//! Potential descent over exchange moves.
//!
//! Each step applies the exchange `χ_{a,b}` with the most negative change in
//! `d`, ties broken by the smallest `(a, b)`. Adjacent pairs `(a, a+1)` are
//! scanned first; when a low block holds `a` and a high block holds `a+1` the
//! move is always improving. On a plateau the search walks through
//! equivalent partitions (zero-change exchanges, which swap two block sums)
//! preferring moves that shrink the width, then restarts from a freshly
//! seeded greedy assignment.

use serde::Serialize;

use crate::partition::{Instance, Partition, Width};
use crate::solver::construct::greedy_init;

/// Budgets and seed for the heuristic part of [`solve`](crate::solver::solve).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SearchParams {
    pub seed: u64,
    pub max_restarts: u64,
    /// `None` means `2n`.
    pub max_plateau_steps: Option<u64>,
    pub exact_node_budget: u64,
    pub exact_cutoff_n: u32,
}

impl Default for SearchParams {
    fn default() -> Self {
        SearchParams {
            seed: 0,
            max_restarts: 64,
            max_plateau_steps: None,
            exact_node_budget: 100_000_000,
            exact_cutoff_n: 24,
        }
    }
}

impl SearchParams {
    pub fn plateau_steps(&self, n: u32) -> u64 {
        self.max_plateau_steps.unwrap_or(2 * u64::from(n))
    }
}

/// Moves reported to an observer of [`local_search_with`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchEvent {
    /// A strictly improving exchange; `deviation` is the value after it.
    Improve {
        a: u32,
        b: u32,
        delta: i128,
        deviation: i128,
    },
    /// A zero-change exchange taken on a plateau.
    Plateau { a: u32, b: u32, width: Width },
    /// A new descent started from a greedy assignment with this seed.
    Restart { seed: u64, deviation: i128 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalSearch {
    pub best: Partition,
    pub swaps: u64,
    pub restarts: u64,
}

/// Most negative exchange, ties by smallest `(a, b)`.
fn best_improving(p: &Partition) -> Option<(u32, u32, i128)> {
    let n = p.n();
    let mut best: Option<(u32, u32, i128)> = None;
    let mut consider = |a: u32, b: u32, delta: i128| {
        if delta < 0 {
            let better = match best {
                None => true,
                Some((ba, bb, bd)) => delta < bd || (delta == bd && (a, b) < (ba, bb)),
            };
            if better {
                best = Some((a, b, delta));
            }
        }
    };
    for a in 1..n {
        let (i, j) = (p.owner_index(a), p.owner_index(a + 1));
        if i != j {
            consider(a, a + 1, p.delta_between(a, a + 1, i, j));
        }
    }
    for a in 1..n {
        let i = p.owner_index(a);
        for b in a + 2..=n {
            let j = p.owner_index(b);
            if i != j {
                consider(a, b, p.delta_between(a, b, i, j));
            }
        }
    }
    best
}

/// Zero-change exchange with the smallest resulting width, ties by `(a, b)`.
/// `forbid` excludes the move that would undo the previous plateau step.
fn best_plateau(
    p: &mut Partition,
    s: i64,
    forbid: Option<(u32, u32)>,
) -> Option<(u32, u32, Width)> {
    let n = p.n();
    let mut best: Option<(Width, u32, u32)> = None;
    for a in 1..n {
        for b in a + 1..=n {
            let (i, j) = (p.owner_index(a), p.owner_index(b));
            if i == j || Some((a, b)) == forbid || p.delta_between(a, b, i, j) != 0 {
                continue;
            }
            p.swap_unchecked(a, b);
            let w = p.width(s);
            // Undo: a now sits in j and b in i, so exchanging again restores.
            p.swap_unchecked(a, b);
            if best.is_none_or(|cur| (w, a, b) < cur) {
                best = Some((w, a, b));
            }
        }
    }
    best.map(|(w, a, b)| (a, b, w))
}

fn descend(
    mut p: Partition,
    s: i64,
    plateau_cap: u64,
    swaps: &mut u64,
    observer: &mut impl FnMut(&SearchEvent),
) -> Partition {
    let mut plateau_used = 0;
    let mut last_plateau = None;
    loop {
        let d = p.deviation(s);
        if d == 0 {
            return p;
        }
        if let Some((a, b, delta)) = best_improving(&p) {
            p.swap_unchecked(a, b);
            *swaps += 1;
            observer(&SearchEvent::Improve {
                a,
                b,
                delta,
                deviation: d + delta,
            });
            last_plateau = None;
            continue;
        }
        if plateau_used >= plateau_cap {
            return p;
        }
        let Some((a, b, width)) = best_plateau(&mut p, s, last_plateau) else {
            return p;
        };
        p.swap_unchecked(a, b);
        *swaps += 1;
        plateau_used += 1;
        last_plateau = Some((a, b));
        observer(&SearchEvent::Plateau { a, b, width });
    }
}

/// Local search without an observer.
pub fn local_search(p: &Partition, s: i64, params: &SearchParams) -> LocalSearch {
    local_search_with(p, s, params, |_| {})
}

/// Descent from `p`, then up to `max_restarts` descents from greedy
/// assignments seeded `seed+1, seed+2, …`. Returns the partition with the
/// smallest deviation seen (ties by smaller width), stopping early at zero.
pub fn local_search_with(
    p: &Partition,
    s: i64,
    params: &SearchParams,
    mut observer: impl FnMut(&SearchEvent),
) -> LocalSearch {
    let plateau_cap = params.plateau_steps(p.n());
    let mut swaps = 0;
    let mut restarts = 0;
    let score = |q: &Partition| (q.deviation(s), q.width(s));

    let mut best = descend(p.clone(), s, plateau_cap, &mut swaps, &mut observer);
    let mut best_score = score(&best);
    if best_score.0 > 0 && params.max_restarts > 0 {
        let inst = Instance::normalized(u64::from(p.n()), p.k(), p.sizes())
            .expect("a partition defines a valid instance");
        let mut seed = params.seed;
        while restarts < params.max_restarts && best_score.0 > 0 {
            seed = seed.wrapping_add(1);
            if seed == 0 {
                seed = 1;
            }
            let Ok(start) = greedy_init(&inst, seed) else {
                break;
            };
            restarts += 1;
            observer(&SearchEvent::Restart {
                seed,
                deviation: start.deviation(s),
            });
            let candidate = descend(start, s, plateau_cap, &mut swaps, &mut observer);
            let cand_score = score(&candidate);
            if cand_score < best_score {
                best = candidate;
                best_score = cand_score;
            }
        }
    }
    LocalSearch {
        best,
        swaps,
        restarts,
    }
}
