//! The ballot filter: a contiguous scan of the updated flags that yields a
//! sorted, duplicate-free frontier.

use super::lists::{ActiveLists, Separators};
use crate::graph::VertexId;

/// Splits `[0, n)` into `workers` contiguous near-equal ranges. Every worker
/// receives `ceil(n / workers)` vertices except possibly trailing workers,
/// which may receive fewer (or none when `workers > n`). The concatenation of
/// ranges in worker order always covers `[0, n)` ascending, which is what
/// makes the filter output sorted and worker-count independent.
pub fn worker_ranges(n: u32, workers: usize) -> impl Iterator<Item = core::ops::Range<u32>> {
    assert!(workers >= 1, "need at least one worker");
    let chunk = u64::from(n).div_ceil(workers as u64);
    (0..workers as u64).map(move |w| {
        let start = (w * chunk).min(u64::from(n)) as u32;
        let end = ((w + 1) * chunk).min(u64::from(n)) as u32;
        start..end
    })
}

/// Scans the per-vertex updated flags in `workers` disjoint contiguous
/// ranges and emits the set vertices in ascending order, classified by
/// degree. The output equals `{v : flags[v]}` exactly, sorted and free of
/// duplicates, for any worker count.
pub fn ballot_filter(
    flags: &[bool],
    degree_of: impl Fn(VertexId) -> usize,
    workers: usize,
    seps: Separators,
) -> ActiveLists {
    let n = flags.len() as u32;
    let mut lists = ActiveLists::new();
    for range in worker_ranges(n, workers) {
        // Each worker's range scan is ascending; ranges concatenate in
        // worker order, so the whole list stays sorted.
        for v in range {
            if flags[v as usize] {
                lists.push(v, degree_of(v), seps);
            }
        }
    }
    lists
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec::Vec;

    fn flags_from(set: &[u32], n: usize) -> Vec<bool> {
        let mut f = alloc::vec![false; n];
        for &v in set {
            f[v as usize] = true;
        }
        f
    }

    #[test]
    fn two_worker_scan_produces_sorted_list() {
        // Ten vertices; the first worker sees pattern 0100, the second
        // 011110. Scanning ranges in worker order yields {b, f, g, h, i}
        // sorted, i.e. ids [1, 5, 6, 7, 8].
        let flags = flags_from(&[1, 5, 6, 7, 8], 10);
        let lists = ballot_filter(&flags, |_| 1, 2, Separators::default());
        assert_eq!(lists.small, vec![1, 5, 6, 7, 8]);
        assert!(lists.medium.is_empty() && lists.large.is_empty());
    }

    #[test]
    fn all_false_gives_empty_lists() {
        let flags = alloc::vec![false; 100];
        let lists = ballot_filter(&flags, |_| 1, 4, Separators::default());
        assert!(lists.is_empty());
    }

    #[test]
    fn matches_sequential_scan_on_random_flags() {
        use rand_core::{RngCore, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(99);
        let n = 10_000;
        let flags: Vec<bool> = (0..n).map(|_| rng.next_u32() % 7 == 0).collect();
        let deg = |v: VertexId| (v as usize * 37) % 200;

        let expected: Vec<u32> = (0..n as u32).filter(|&v| flags[v as usize]).collect();
        let lists = ballot_filter(&flags, deg, 8, Separators::default());
        let mut merged: Vec<(u32, usize)> = lists
            .iter_all()
            .map(|v| (v, deg(v)))
            .collect();
        merged.sort_unstable();
        let expected_pairs: Vec<(u32, usize)> = expected.iter().map(|&v| (v, deg(v))).collect();
        assert_eq!(merged, expected_pairs);
        // Per-class lists are individually sorted and duplicate-free.
        for class in [&lists.small, &lists.medium, &lists.large] {
            assert!(class.windows(2).all(|w| w[0] < w[1]));
        }
    }

    #[test]
    fn worker_count_independence() {
        use rand_core::{RngCore, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        let n = 1009; // prime, to exercise ragged ranges
        let flags: Vec<bool> = (0..n).map(|_| rng.next_u32() % 3 == 0).collect();
        let deg = |v: VertexId| (v as usize) % 300;
        let baseline = ballot_filter(&flags, deg, 1, Separators::default());
        for workers in [2, 8, 17, 1200] {
            let lists = ballot_filter(&flags, deg, workers, Separators::default());
            assert_eq!(lists, baseline, "workers={workers}");
        }
    }

    #[test]
    fn ranges_cover_and_are_disjoint() {
        for (n, workers) in [(10u32, 4usize), (10, 17), (0, 3), (1000, 7)] {
            let mut covered = 0u64;
            let mut prev_end = 0u32;
            for r in worker_ranges(n, workers) {
                assert!(r.start == prev_end || r.is_empty());
                prev_end = r.end.max(prev_end);
                covered += u64::from(r.end - r.start);
            }
            assert_eq!(covered, u64::from(n));
            assert_eq!(prev_end, n);
        }
    }
}
