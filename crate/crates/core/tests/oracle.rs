//! The backtracking search against a naive enumeration of every assignment of
//! labels to blocks. The naive side has no pruning and no symmetry breaking.

use distmagic::lab::enumerate_size_sequences;
use distmagic::partition::triangular;
use distmagic::solver::{solve_exact, ExactOutcome};
use distmagic::Instance;

/// Tries every assignment of `1..=n` to blocks with the given capacities and
/// reports whether one has all block sums equal to `s`.
fn naive_exists(sizes: &[u32], s: i64) -> bool {
    fn go(label: u32, n: u32, cap: &mut [u32], sums: &mut [i64], s: i64) -> bool {
        if label > n {
            return sums.iter().all(|&x| x == s);
        }
        for b in 0..cap.len() {
            if cap[b] == 0 {
                continue;
            }
            cap[b] -= 1;
            sums[b] += i64::from(label);
            let hit = go(label + 1, n, cap, sums, s);
            cap[b] += 1;
            sums[b] -= i64::from(label);
            if hit {
                return true;
            }
        }
        false
    }
    let n: u32 = sizes.iter().sum();
    let mut cap = sizes.to_vec();
    let mut sums = vec![0; sizes.len()];
    go(1, n, &mut cap, &mut sums, s)
}

#[test]
fn exact_search_agrees_with_naive_enumeration() {
    let mut checked = 0;
    for n in 1..=12u32 {
        let t = triangular(u64::from(n));
        let k_max = if n <= 9 { n as usize } else { 4 };
        for k in 1..=k_max {
            if t % k as i64 != 0 {
                continue;
            }
            let s = t / k as i64;
            for sizes in enumerate_size_sequences(n, k, 1) {
                let inst = Instance::new(u64::from(n), k, sizes.clone()).unwrap();
                let search = solve_exact(&inst, u64::MAX).unwrap();
                let expected = naive_exists(&sizes, s);
                match &search.outcome {
                    ExactOutcome::Found(p) => {
                        assert!(expected, "{inst}: search found {p} but naive did not");
                        assert_eq!(p.sizes(), sizes);
                        assert!(p.is_equitable(s));
                    }
                    ExactOutcome::Exhausted => {
                        assert!(!expected, "{inst}: search missed a partition")
                    }
                    ExactOutcome::BudgetExhausted => unreachable!(),
                }
                checked += 1;
            }
        }
    }
    assert!(checked > 50, "only {checked} instances checked");
}

#[test]
fn naive_oracle_sanity() {
    assert!(naive_exists(&[2, 2], 5));
    assert!(!naive_exists(&[2, 2, 8], 26));
    assert!(naive_exists(&[3, 3, 3], 15));
    assert!(!naive_exists(&[3, 3], 10)); // 21 is odd; any s fails
}
