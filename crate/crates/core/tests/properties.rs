use distmagic::graphs::{
    labeling_from_partition, verify_closed_magic_cycle, verify_distance_magic, LabeledMultipartite,
};
use distmagic::lab::enumerate_size_sequences;
use distmagic::partition::triangular;
use distmagic::solver::{solve, SearchParams, SolveStatus};
use distmagic::{classify, BlockClass, Instance, Partition, Width};
use proptest::prelude::*;

/// A random partition of `[n]`: a permutation cut into `k` non-empty pieces.
fn arb_partition(max_n: u32) -> impl Strategy<Value = Partition> {
    (2..=max_n)
        .prop_flat_map(|n| (Just(n), 2..=n.min(8) as usize))
        .prop_flat_map(|(n, k)| {
            let perm = Just((1..=n).collect::<Vec<u32>>()).prop_shuffle();
            let cuts = proptest::sample::subsequence((1..n as usize).collect::<Vec<_>>(), k - 1);
            (Just(n), perm, cuts)
        })
        .prop_map(|(n, perm, cuts)| {
            let mut blocks = Vec::new();
            let mut start = 0;
            for c in cuts.into_iter().chain(std::iter::once(n as usize)) {
                blocks.push(perm[start..c].to_vec());
                start = c;
            }
            Partition::from_blocks(u64::from(n), blocks).unwrap()
        })
}

/// A partition together with two labels from distinct blocks, `a < b`.
fn arb_swap(max_n: u32) -> impl Strategy<Value = (Partition, u32, u32)> {
    arb_partition(max_n)
        .prop_flat_map(|p| {
            let n = p.n();
            (Just(p), 1..=n, 1..=n)
        })
        .prop_filter_map("labels in one block", |(p, x, y)| {
            let (a, b) = (x.min(y), x.max(y));
            (a != b && p.block_of(a) != p.block_of(b)).then_some((p, a, b))
        })
}

fn brute_width(p: &Partition, s: i64) -> Width {
    let class = |x: u32| classify(p.sums()[p.block_of(x).unwrap()], s);
    let mut best = None;
    for x in 1..=p.n() {
        for y in x + 1..=p.n() {
            if class(x) == BlockClass::Low && class(y) == BlockClass::High {
                best = Some(best.map_or(y - x, |b: u32| b.min(y - x)));
            }
        }
    }
    best.map_or(Width::Infinite, Width::Finite)
}

proptest! {
    #[test]
    fn swap_delta_matches_recomputed_deviation((p, a, b) in arb_swap(50), s in 0i64..1500) {
        let q = p.swap(a, b).unwrap();
        prop_assert_eq!(q.deviation(s) - p.deviation(s), p.swap_delta(a, b).unwrap());
    }

    #[test]
    fn swap_keeps_sizes_and_total((p, a, b) in arb_swap(40)) {
        let q = p.swap(a, b).unwrap();
        prop_assert_eq!(q.sizes(), p.sizes());
        prop_assert_eq!(q.sums().iter().sum::<i64>(), triangular(u64::from(p.n())));
        let i = p.block_of(a).unwrap();
        let j = p.block_of(b).unwrap();
        prop_assert_eq!(q.sums()[i], p.sums()[i] + i64::from(b - a));
        prop_assert_eq!(q.sums()[j], p.sums()[j] - i64::from(b - a));
        prop_assert_eq!(q.swap(a, b).unwrap(), p);
    }

    #[test]
    fn delta_sign_trichotomy((p, a, b) in arb_swap(40)) {
        let t = i64::from(b - a);
        let u = p.sums()[p.block_of(b).unwrap()] - p.sums()[p.block_of(a).unwrap()];
        let delta = p.swap_delta(a, b).unwrap();
        prop_assert_eq!(delta.signum(), i128::from((t - u).signum()));
    }

    #[test]
    fn width_matches_pair_enumeration(p in arb_partition(30), s in 0i64..300) {
        prop_assert_eq!(p.width(s), brute_width(&p, s));
    }

    #[test]
    fn neighbour_sum_routes_agree(p in arb_partition(60)) {
        // Both routes run inside the check; an internal disagreement is an Err.
        let g = labeling_from_partition(&p);
        let check = verify_distance_magic(&g).unwrap();
        let total = triangular(u64::from(p.n()));
        let equal_sums = p.sums().windows(2).all(|w| w[0] == w[1]);
        prop_assert_eq!(check.is_magic, equal_sums);
        if check.is_magic {
            prop_assert_eq!(check.constant, Some(total - p.sums()[0]));
        } else {
            let w = check.witness.unwrap();
            prop_assert_ne!(w.sum_u, w.sum_v);
        }
        if p.k() >= 3 {
            verify_closed_magic_cycle(&p).unwrap();
        }
        prop_assert_eq!(g.parts(), p.blocks().to_vec());
    }

    #[test]
    fn size_sequences_match_filtered_product(n in 1u32..14, k in 1usize..5, min_part in 1u32..4) {
        fn product(k: usize, lo: u32, hi: u32) -> Vec<Vec<u32>> {
            if k == 0 {
                return vec![vec![]];
            }
            let mut out = Vec::new();
            for tail in product(k - 1, lo, hi) {
                for v in lo..=hi {
                    let mut seq = vec![v];
                    seq.extend(&tail);
                    out.push(seq);
                }
            }
            out
        }
        let mut brute: Vec<Vec<u32>> = product(k, min_part, n.max(min_part))
            .into_iter()
            .filter(|q| q.windows(2).all(|w| w[0] <= w[1]) && q.iter().sum::<u32>() == n)
            .collect();
        brute.sort();
        prop_assert_eq!(enumerate_size_sequences(n, k, min_part), brute);
    }
}

#[test]
fn equitable_means_exact_blocks_and_infinite_width() {
    let p =
        Partition::from_blocks(8, vec![vec![1, 8], vec![2, 7], vec![3, 6], vec![4, 5]]).unwrap();
    assert_eq!(p.deviation(9), 0);
    assert!(p
        .sums()
        .iter()
        .all(|&x| classify(x, 9) == BlockClass::Exact));
    assert_eq!(p.width(9), Width::Infinite);
    // The converse fails: infinite width with positive deviation.
    let q = Partition::from_blocks(4, vec![vec![1, 2, 3], vec![4]]).unwrap();
    assert!(q.deviation(5) > 0);
    assert_eq!(q.width(5), Width::Infinite);
}

#[test]
fn solved_partitions_are_closed_magic_on_the_cycle() {
    for (n, sizes) in [
        (8u64, vec![2u32, 2, 2, 2]),
        (9, vec![2, 3, 4]),
        (15, vec![3, 3, 4, 5]),
        (14, vec![2, 2, 2, 4, 4]),
    ] {
        let k = sizes.len();
        let inst = Instance::new(n, k, sizes).unwrap();
        let s = inst.magic_sum().unwrap();
        let r = solve(&inst, &SearchParams::default());
        assert_eq!(r.status, SolveStatus::Solved, "{inst}");
        let p = r.partition.unwrap();
        let closed = verify_closed_magic_cycle(&p).unwrap();
        assert!(closed.is_magic);
        let expected = if k == 3 { triangular(n) } else { 3 * s };
        assert_eq!(closed.constant, Some(expected));
        let g = LabeledMultipartite::new(p.sizes(), {
            let mut m = vec![0; n as usize + 1];
            for x in 1..=n as u32 {
                m[x as usize] = p.block_of(x).unwrap() as u32;
            }
            m
        })
        .unwrap();
        assert_eq!(
            verify_distance_magic(&g).unwrap().constant,
            Some(triangular(n) - s)
        );
    }
}

#[test]
fn solve_is_deterministic_per_seed() {
    let inst = Instance::new(16, 4, vec![3, 3, 4, 6]).unwrap();
    for seed in [0, 1, 99] {
        let params = SearchParams {
            seed,
            ..SearchParams::default()
        };
        let a = solve(&inst, &params);
        let b = solve(&inst, &params);
        assert_eq!(a.partition, b.partition);
        assert_eq!(a.method, b.method);
    }
}

#[test]
fn two_block_construction_covers_every_admissible_size() {
    for n in 4..=120u32 {
        let t = triangular(u64::from(n));
        if t % 2 != 0 {
            continue;
        }
        for p1 in 2..=n / 2 {
            let inst = Instance::new(u64::from(n), 2, vec![p1, n - p1]).unwrap();
            if !distmagic::necessary_condition(&inst).unwrap() {
                assert!(distmagic::solver::solve_k2(&inst).is_err());
                continue;
            }
            let p = distmagic::solver::solve_k2(&inst).unwrap();
            assert_eq!(p.sizes(), vec![p1, n - p1], "{inst}");
            assert!(p.is_equitable(t / 2), "{inst}: {p}");
        }
    }
}
