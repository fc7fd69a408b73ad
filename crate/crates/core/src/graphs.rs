//! Labelled complete multipartite graphs and clique blow-ups of cycles.
//!
//! Graphs are kept implicit: a vertex is identified with its label and the
//! only stored structure is the part each label belongs to. Adjacency follows
//! from the part structure, so a check costs `O(n)` through the complement
//! formula. An explicit neighbour walk is run as an independent cross-check
//! when `n <= EXPLICIT_CHECK_MAX_N`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::partition::{triangular, Partition};

/// Largest order for which neighbour sums are also computed edge by edge.
pub const EXPLICIT_CHECK_MAX_N: u32 = 200;

/// `K_{p_1,…,p_k}` with labels `1..=n`; part `i` holds the labels of block `i`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LabeledMultipartite {
    sizes: Vec<u32>,
    #[serde(skip)]
    part_of: Vec<u32>,
}

impl LabeledMultipartite {
    /// Builds a labelling from an explicit label→part map (`part_of[0]` is
    /// ignored).
    pub fn new(sizes: Vec<u32>, part_of: Vec<u32>) -> Result<Self> {
        if part_of.len() < 2 {
            return Err(Error::InvalidPartition("labelling has no vertices".into()));
        }
        let mut counts = vec![0u32; sizes.len()];
        for (label, &part) in part_of.iter().enumerate().skip(1) {
            let slot = counts.get_mut(part as usize).ok_or_else(|| {
                Error::InvalidPartition(format!("label {label} maps to missing part {part}"))
            })?;
            *slot += 1;
        }
        if counts != sizes {
            return Err(Error::InvalidPartition(format!(
                "part sizes {counts:?} do not match {sizes:?}"
            )));
        }
        Ok(LabeledMultipartite { sizes, part_of })
    }

    pub fn n(&self) -> u32 {
        (self.part_of.len() - 1) as u32
    }

    pub fn sizes(&self) -> &[u32] {
        &self.sizes
    }

    pub fn part_of(&self, label: u32) -> Option<usize> {
        (label >= 1 && (label as usize) < self.part_of.len())
            .then(|| self.part_of[label as usize] as usize)
    }

    /// Label sets of the parts, in part order.
    pub fn parts(&self) -> Vec<Vec<u32>> {
        let mut parts = vec![Vec::new(); self.sizes.len()];
        for label in 1..=self.n() {
            parts[self.part_of[label as usize] as usize].push(label);
        }
        parts
    }

    fn part_sums(&self) -> Vec<i64> {
        // Four interleaved accumulators keep consecutive labels from waiting
        // on each other's store. Totals stay below 2^62, so nothing wraps.
        let k = self.sizes.len();
        let mut lanes = vec![0i64; 4 * k];
        let labels = &self.part_of[1..];
        let mut chunks = labels.chunks_exact(4);
        let mut label = 1i64;
        for chunk in &mut chunks {
            for (lane, &part) in chunk.iter().enumerate() {
                let slot = &mut lanes[lane * k + part as usize];
                *slot = slot.wrapping_add(label + lane as i64);
            }
            label += 4;
        }
        for (offset, &part) in chunks.remainder().iter().enumerate() {
            lanes[part as usize] += label + offset as i64;
        }
        (0..k)
            .map(|i| (0..4).map(|lane| lanes[lane * k + i]).sum())
            .collect()
    }
}

pub fn labeling_from_partition(p: &Partition) -> LabeledMultipartite {
    let mut part_of = p.owner_table().to_vec();
    part_of[0] = 0;
    LabeledMultipartite {
        sizes: p.sizes(),
        part_of,
    }
}

/// Two vertices whose neighbourhood sums differ.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub u: u32,
    pub v: u32,
    pub sum_u: i64,
    pub sum_v: i64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct MagicCheck {
    pub is_magic: bool,
    pub constant: Option<i64>,
    pub witness: Option<Witness>,
    /// Set for the 3-cycle blow-up, where every closed neighbourhood is the
    /// whole vertex set and the condition holds for any labelling.
    pub degenerate: bool,
}

impl MagicCheck {
    /// Summarises vertex sums that depend only on the vertex's block:
    /// vertex `v` has sum `block_sums[block(v)]`. Every block is non-empty
    /// and `n >= 1`.
    fn from_block_sums(
        n: u32,
        block_sums: &[i64],
        block: impl Fn(u32) -> usize,
        degenerate: bool,
    ) -> Self {
        let reference = block_sums[block(1)];
        if block_sums.iter().all(|&x| x == reference) {
            return MagicCheck {
                is_magic: true,
                constant: Some(reference),
                witness: None,
                degenerate,
            };
        }
        let v = (2..=n)
            .find(|&v| block_sums[block(v)] != reference)
            .expect("some block sum differs");
        MagicCheck {
            is_magic: false,
            constant: None,
            witness: Some(Witness {
                u: 1,
                v,
                sum_u: reference,
                sum_v: block_sums[block(v)],
            }),
            degenerate,
        }
    }
}

fn cross_check(route: &str, n: u32, formula: impl Fn(u32) -> i64, explicit: &[i64]) -> Result<()> {
    match (1..=n).find(|&v| formula(v) != explicit[v as usize]) {
        None => Ok(()),
        Some(v) => Err(Error::CrossCheck(format!(
            "{route}: vertex {v} has sum {} by formula but {} by explicit walk",
            formula(v),
            explicit[v as usize]
        ))),
    }
}

/// Open-neighbourhood check: every vertex must see the same label sum.
///
/// In `K_{p_1,…,p_k}` a vertex sees everything outside its own part, so its
/// sum is `n(n+1)/2 − S(own part)`.
pub fn verify_distance_magic(g: &LabeledMultipartite) -> Result<MagicCheck> {
    let n = g.n();
    let total = triangular(u64::from(n));
    let vertex_sums: Vec<i64> = g.part_sums().iter().map(|&x| total - x).collect();
    let part = |x: u32| g.part_of[x as usize] as usize;
    let formula = |x: u32| vertex_sums[part(x)];

    if n <= EXPLICIT_CHECK_MAX_N {
        let mut explicit = vec![0i64; n as usize + 1];
        for x in 1..=n {
            let own = g.part_of[x as usize];
            explicit[x as usize] = (1..=n)
                .filter(|&y| g.part_of[y as usize] != own)
                .map(i64::from)
                .sum();
        }
        cross_check("multipartite", n, formula, &explicit)?;
    }
    Ok(MagicCheck::from_block_sums(n, &vertex_sums, part, false))
}

/// Closed-neighbourhood check on the cycle `C_k` with vertex `i` replaced by a
/// clique on block `i`'s labels and consecutive cliques fully joined.
pub fn verify_closed_magic_cycle(p: &Partition) -> Result<MagicCheck> {
    let k = p.k();
    if k < 3 {
        return Err(Error::Precondition(format!(
            "the cycle blow-up needs at least 3 blocks, got {k}"
        )));
    }
    let n = p.n();
    let sums = p.sums();
    let closed = |i: usize| -> i64 {
        if k == 3 {
            sums.iter().sum()
        } else {
            sums[(i + k - 1) % k] + sums[i] + sums[(i + 1) % k]
        }
    };
    let block_closed: Vec<i64> = (0..k).map(closed).collect();
    let block = |x: u32| p.owner_index(x);
    let formula = |x: u32| block_closed[block(x)];

    if n <= EXPLICIT_CHECK_MAX_N {
        let adjacent = |i: usize, j: usize| {
            let gap = i.abs_diff(j);
            gap == 1 || gap == k - 1
        };
        let mut explicit = vec![0i64; n as usize + 1];
        for x in 1..=n {
            let bx = p.block_of(x).expect("label in range");
            let open: i64 = (1..=n)
                .filter(|&y| {
                    let by = p.block_of(y).expect("label in range");
                    y != x && (by == bx || adjacent(bx, by))
                })
                .map(i64::from)
                .sum();
            explicit[x as usize] = open + i64::from(x);
        }
        cross_check("cycle blow-up", n, formula, &explicit)?;
    }
    Ok(MagicCheck::from_block_sums(n, &block_closed, block, k == 3))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn part(n: u64, blocks: &[&[u32]]) -> Partition {
        Partition::from_blocks(n, blocks.iter().map(|b| b.to_vec()).collect()).unwrap()
    }

    #[test]
    fn labeling_round_trip() {
        let p = part(8, &[&[1, 8], &[2, 7], &[3, 6], &[4, 5]]);
        let g = labeling_from_partition(&p);
        assert_eq!(g.sizes(), &[2, 2, 2, 2]);
        assert_eq!(g.parts(), p.blocks());
        assert_eq!(g.part_of(7), Some(1));
        let q = part(3, &[&[3], &[1, 2]]);
        assert_eq!(labeling_from_partition(&q).sizes(), &[1, 2]);
    }

    #[test]
    fn multipartite_examples() {
        let g = labeling_from_partition(&part(8, &[&[1, 8], &[2, 7], &[3, 6], &[4, 5]]));
        let c = verify_distance_magic(&g).unwrap();
        assert!(c.is_magic);
        assert_eq!(c.constant, Some(27));

        let g = labeling_from_partition(&part(4, &[&[1, 2], &[3, 4]]));
        let c = verify_distance_magic(&g).unwrap();
        assert!(!c.is_magic);
        let w = c.witness.unwrap();
        assert_eq!((w.sum_u, w.sum_v), (7, 3));

        let g = labeling_from_partition(&part(3, &[&[3], &[1, 2]]));
        let c = verify_distance_magic(&g).unwrap();
        assert_eq!(c.constant, Some(3));
    }

    #[test]
    fn explicit_labelling_validation() {
        assert!(LabeledMultipartite::new(vec![1, 1], vec![0, 0, 1]).is_ok());
        assert!(LabeledMultipartite::new(vec![2, 1], vec![0, 0, 1]).is_err());
        assert!(LabeledMultipartite::new(vec![1, 1], vec![0, 0, 2]).is_err());
    }

    #[test]
    fn closed_cycle_examples() {
        let c = verify_closed_magic_cycle(&part(8, &[&[1, 8], &[2, 7], &[3, 6], &[4, 5]])).unwrap();
        assert!(c.is_magic);
        assert_eq!(c.constant, Some(27));
        assert!(!c.degenerate);

        let c = verify_closed_magic_cycle(&part(9, &[&[6, 9], &[2, 5, 8], &[1, 3, 4, 7]])).unwrap();
        assert!(c.is_magic && c.degenerate);
        assert_eq!(c.constant, Some(45));

        let c = verify_closed_magic_cycle(&part(8, &[&[1, 2], &[3, 4], &[5, 6], &[7, 8]])).unwrap();
        assert!(!c.is_magic);

        assert!(verify_closed_magic_cycle(&part(4, &[&[1, 4], &[2, 3]])).is_err());
    }
}
