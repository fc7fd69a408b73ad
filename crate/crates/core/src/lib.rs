//! Equitable partitions of `[n]` and distance magic labelings of complete
//! multipartite graphs.
//!
//! A complete multipartite graph `K_{p_1,…,p_k}` on `n = p_1 + … + p_k`
//! vertices has a distance magic labeling exactly when `[n]` can be split
//! into blocks of sizes `p_1, …, p_k` that all have the same sum
//! `s = n(n+1)/2k`. This crate decides, constructs and verifies such
//! partitions:
//!
//! - [`partition`]: block sums, the potential `d`, exchange moves, width.
//! - [`feasibility`]: divisibility, the prefix condition and the singleton rule.
//! - [`solver`]: exact search, closed-form constructions and local search.
//! - [`graphs`]: labelings and the open/closed magic checks.
//! - [`lab`]: exhaustive sweeps comparing the condition with the exact search.
//!
//! ```
//! use distmagic::{solve, Instance, SearchParams, SolveStatus};
//!
//! let inst = Instance::new(8, 4, vec![2, 2, 2, 2]).unwrap();
//! let result = solve(&inst, &SearchParams::default());
//! assert_eq!(result.status, SolveStatus::Solved);
//! assert!(result.partition.unwrap().sums().iter().all(|&x| x == 9));
//! ```

pub mod error;
pub mod feasibility;
pub mod graphs;
pub mod lab;
pub mod partition;
pub mod rng;
pub mod solver;

pub use error::{Error, Result};
pub use feasibility::{feasibility, necessary_condition, prefix_top_sum, Verdict, VerdictStatus};
pub use graphs::{
    labeling_from_partition, verify_closed_magic_cycle, verify_distance_magic, LabeledMultipartite,
    MagicCheck,
};
pub use partition::{classify, magic_sum, BlockClass, Instance, Partition, Width};
pub use solver::{solve, SearchParams, SolveResult, SolveStatus};

// The guide's code listings run as doctests.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/partitions.md")]
    mod partitions {}
    #[doc = include_str!("../../../book/src/feasibility.md")]
    mod feasibility {}
    #[doc = include_str!("../../../book/src/solving.md")]
    mod solving {}
    #[doc = include_str!("../../../book/src/graphs.md")]
    mod graphs {}
    #[doc = include_str!("../../../book/src/lab.md")]
    mod lab {}
}
