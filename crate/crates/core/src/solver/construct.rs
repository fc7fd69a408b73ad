//! Closed-form constructions and the greedy starting point for local search.

use crate::error::{Error, Result};
use crate::feasibility::first_condition_failure;
use crate::partition::{Instance, Partition};
use crate::rng::XorShift64Star;

fn require_magic_sum(inst: &Instance) -> Result<i64> {
    inst.magic_sum()
        .ok_or_else(|| Error::Precondition(format!("{inst}: k does not divide n(n+1)/2")))
}

/// Two blocks. Starts from `A = {1, …, p_1}` and slides its elements upwards,
/// top position first, each as far as the deficit and the room above allow.
/// This is the end point of a chain of `χ_{a,a+1}` exchanges from
/// `{1, …, p_1}` towards `{n−p_1+1, …, n}`, taken in closed form. `O(n)`
/// overall, dominated by writing out the complement.
pub fn solve_k2(inst: &Instance) -> Result<Partition> {
    if inst.k() != 2 {
        return Err(Error::Precondition(format!("{inst}: two blocks required")));
    }
    let s = require_magic_sum(inst)?;
    let p1 = inst.sizes()[0];
    if p1 < 2 {
        return Err(Error::Precondition(format!(
            "{inst}: smallest block must have size >= 2"
        )));
    }
    if let Some(f) = first_condition_failure(inst)? {
        return Err(Error::Precondition(format!(
            "{inst}: prefix condition fails at j={} ({} < {})",
            f.j, f.top_sum, f.required
        )));
    }
    let n = inst.n();
    let deficit = s - i64::from(p1) * (i64::from(p1) + 1) / 2;
    if deficit < 0 {
        return Err(Error::Precondition(format!(
            "{inst}: {{1..p_1}} already exceeds s={s}"
        )));
    }
    // Every slid element gains `n − p_1`, so `full` of them reach the top and
    // the next one takes the remainder. The j = 1 condition keeps `full <= p_1`.
    let room = i64::from(n - p1);
    let full = (deficit / room) as u32;
    let rem = (deficit % room) as u32;
    let mut small = Vec::with_capacity(p1 as usize);
    if full < p1 {
        small.extend(1..p1 - full);
        small.push(p1 - full + rem);
    }
    small.extend(n - full + 1..=n);

    let mut rest = Vec::with_capacity((n - p1) as usize);
    let mut from = 1;
    for &x in &small {
        rest.extend(from..x);
        from = x + 1;
    }
    rest.extend(from..=n);
    Partition::from_blocks(u64::from(n), vec![small, rest])
}

/// A singleton block: `{n}` followed by the pairs `{i, n−i}`.
pub fn solve_p1_eq_1(inst: &Instance) -> Result<Partition> {
    let n = inst.n();
    let sizes = inst.sizes();
    let shape_ok = sizes[0] == 1 && sizes[1..].iter().all(|&p| p == 2);
    if !shape_ok || n.is_multiple_of(2) || inst.k() as u64 != u64::from(n).div_ceil(2) {
        return Err(Error::Precondition(format!(
            "{inst}: expected sizes (1,2,...,2) with k = (n+1)/2"
        )));
    }
    let mut blocks = Vec::with_capacity(inst.k());
    blocks.push(vec![n]);
    blocks.extend((1..=(n - 1) / 2).map(|i| vec![i, n - i]));
    Partition::from_blocks(u64::from(n), blocks)
}

/// Deficit-greedy assignment of labels `n, n−1, …, 1`: each label goes to the
/// block with the largest remaining deficit among blocks that still have room
/// (lowest index on ties). With a non-zero seed the first `⌈k/2⌉` labels go to
/// uniformly random open blocks and later ties are broken at random.
pub fn greedy_init(inst: &Instance, seed: u64) -> Result<Partition> {
    let s = require_magic_sum(inst)?;
    let k = inst.k();
    let mut capacity = inst.sizes().to_vec();
    let mut sums = vec![0i64; k];
    let mut blocks: Vec<Vec<u32>> = capacity
        .iter()
        .map(|&c| Vec::with_capacity(c as usize))
        .collect();
    let mut rng = (seed != 0).then(|| XorShift64Star::new(seed));
    let random_prefix = k.div_ceil(2);
    let mut ties = Vec::with_capacity(k);

    for (placed, label) in (1..=inst.n()).rev().enumerate() {
        let open = (0..k).filter(|&b| capacity[b] > 0);
        let target = match rng.as_mut() {
            Some(rng) if placed < random_prefix => {
                ties.clear();
                ties.extend(open);
                ties[rng.below(ties.len())]
            }
            _ => {
                let best = open
                    .clone()
                    .map(|b| s - sums[b])
                    .max()
                    .expect("some block has room");
                ties.clear();
                ties.extend(open.filter(|&b| s - sums[b] == best));
                match rng.as_mut() {
                    Some(rng) if ties.len() > 1 => ties[rng.below(ties.len())],
                    _ => ties[0],
                }
            }
        };
        capacity[target] -= 1;
        sums[target] += i64::from(label);
        blocks[target].push(label);
    }
    Partition::from_blocks(u64::from(inst.n()), blocks)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn inst(n: u64, sizes: &[u32]) -> Instance {
        Instance::new(n, sizes.len(), sizes.to_vec()).unwrap()
    }

    #[test]
    fn k2_examples() {
        let p = solve_k2(&inst(7, &[3, 4])).unwrap();
        assert_eq!(p.blocks(), &[vec![1, 6, 7], vec![2, 3, 4, 5]]);
        let p = solve_k2(&inst(4, &[2, 2])).unwrap();
        assert_eq!(p.blocks(), &[vec![1, 4], vec![2, 3]]);
        assert!(matches!(
            solve_k2(&inst(8, &[2, 6])),
            Err(Error::Precondition(_))
        ));
        assert!(solve_k2(&inst(3, &[1, 2])).is_err());
        assert!(solve_k2(&inst(5, &[2, 3])).is_err()); // 15 is odd
        assert!(solve_k2(&inst(8, &[2, 2, 4])).is_err());
    }

    #[test]
    fn k2_succeeds_exactly_when_condition_holds() {
        for n in 4..60u64 {
            if (n * (n + 1) / 2) % 2 != 0 {
                continue;
            }
            for p1 in 2..=(n / 2) as u32 {
                let i = inst(n, &[p1, n as u32 - p1]);
                match solve_k2(&i) {
                    Ok(p) => {
                        let s = i.magic_sum().unwrap();
                        assert!(p.is_equitable(s), "{i}");
                        assert_eq!(p.sizes(), vec![p1, n as u32 - p1]);
                    }
                    Err(_) => {
                        assert!(!crate::feasibility::necessary_condition(&i).unwrap(), "{i}")
                    }
                }
            }
        }
    }

    #[test]
    fn p1_eq_1_examples() {
        let p = solve_p1_eq_1(&inst(7, &[1, 2, 2, 2])).unwrap();
        assert_eq!(p.blocks(), &[vec![7], vec![1, 6], vec![2, 5], vec![3, 4]]);
        let p = solve_p1_eq_1(&inst(5, &[1, 2, 2])).unwrap();
        assert_eq!(p.blocks(), &[vec![5], vec![1, 4], vec![2, 3]]);
        let p = solve_p1_eq_1(&inst(3, &[1, 2])).unwrap();
        assert_eq!(p.blocks(), &[vec![3], vec![1, 2]]);
        assert!(solve_p1_eq_1(&inst(9, &[1, 2, 6])).is_err());
        assert!(solve_p1_eq_1(&inst(4, &[2, 2])).is_err());
    }

    #[test]
    fn greedy_examples() {
        let p = greedy_init(&inst(8, &[2, 2, 2, 2]), 0).unwrap();
        assert_eq!(
            p.blocks(),
            &[vec![1, 8], vec![2, 7], vec![3, 6], vec![4, 5]]
        );
        let p = greedy_init(&inst(4, &[2, 2]), 0).unwrap();
        assert_eq!(p.blocks(), &[vec![1, 4], vec![2, 3]]);
    }

    #[test]
    fn greedy_respects_sizes_for_any_seed() {
        let i = inst(15, &[2, 3, 4, 6]);
        for seed in 0..50 {
            let p = greedy_init(&i, seed).unwrap();
            assert_eq!(p.sizes(), i.sizes());
            assert_eq!(greedy_init(&i, seed).unwrap(), p);
        }
    }
}
