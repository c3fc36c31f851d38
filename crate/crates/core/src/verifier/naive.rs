use std::collections::HashSet;
use std::hash::Hash;

use super::automaton::Coverage;

/// Complete check: every distinct factor, every occurrence.
///
/// Factors are visited by increasing length and then by start position, so
/// the first uncovered factor met is the shortest one with the leftmost
/// first occurrence.
pub(crate) fn coverage<T: Eq + Hash>(word: &[T], sorted_gamma: &[usize]) -> Coverage {
    let n = word.len();
    // marks[i] = number of candidate positions < i
    let mut marks = vec![0usize; n + 1];
    for &g in sorted_gamma {
        marks[g + 1] += 1;
    }
    for i in 1..=n {
        marks[i] += marks[i - 1];
    }
    let crosses = |s: usize, e: usize| marks[e] > marks[s];

    let mut distinct = 0u64;
    let mut uncovered = 0u64;
    let mut witness = None;
    let mut seen: HashSet<&[T]> = HashSet::new();
    for len in 1..=n {
        seen.clear();
        for start in 0..=n - len {
            let f = &word[start..start + len];
            if !seen.insert(f) {
                continue;
            }
            distinct += 1;
            // `start` is the first occurrence, earlier ones do not exist
            let covered = (start..=n - len).any(|j| crosses(j, j + len) && &word[j..j + len] == f);
            if !covered {
                uncovered += 1;
                witness.get_or_insert((len, start));
            }
        }
    }
    Coverage {
        distinct,
        uncovered,
        witness,
    }
}
