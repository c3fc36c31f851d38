use std::hash::Hash;

use serde::Serialize;

use super::automaton::SuffixAutomaton;
use super::compress;
use crate::error::VerifyError;

pub const DEFAULT_SEARCH_CAP: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MinimalAttractor {
    pub size: usize,
    /// The lexicographically first attractor of that size.
    pub positions: Vec<usize>,
}

/// Exhaustive search for a smallest attractor.
///
/// Sizes are tried upward from the number of distinct letters (every
/// attractor must touch each letter). Within one size, position sets are
/// visited in lexicographic order, skipping branches that can no longer
/// touch every letter.
pub fn minimal_attractor<T>(word: &[T], cap: usize) -> Result<MinimalAttractor, VerifyError>
where
    T: Eq + Hash + Copy + Ord,
{
    if word.len() > cap {
        return Err(VerifyError::CapExceeded {
            length: word.len(),
            cap,
        });
    }
    if word.is_empty() {
        return Ok(MinimalAttractor {
            size: 0,
            positions: Vec::new(),
        });
    }
    let (dense, sigma) = compress(word);
    let sam = SuffixAutomaton::with_word(sigma, &dense);
    // last[c] = last index holding letter c
    let mut last = vec![0usize; sigma];
    for (i, &c) in dense.iter().enumerate() {
        last[c as usize] = i;
    }

    let mut search = Search {
        word: &dense,
        last: &last,
        sam: &sam,
        chosen: Vec::new(),
        touched: vec![0u32; sigma],
        missing: sigma,
    };
    for size in sigma..=word.len() {
        if search.descend(0, size) {
            return Ok(MinimalAttractor {
                size,
                positions: search.chosen,
            });
        }
    }
    unreachable!("the full position set is always an attractor")
}

struct Search<'a> {
    word: &'a [u32],
    last: &'a [usize],
    sam: &'a SuffixAutomaton,
    chosen: Vec<usize>,
    touched: Vec<u32>,
    missing: usize,
}

impl Search<'_> {
    fn descend(&mut self, from: usize, size: usize) -> bool {
        let left = size - self.chosen.len();
        if left == 0 {
            return self.missing == 0 && self.sam.coverage(&self.chosen).uncovered == 0;
        }
        if self.missing > left {
            return false;
        }
        let n = self.word.len();
        for p in from..=n - left {
            // an untouched letter whose last occurrence is behind p is lost
            if (0..self.touched.len()).any(|c| self.touched[c] == 0 && self.last[c] < p) {
                return false;
            }
            let c = self.word[p] as usize;
            self.chosen.push(p);
            self.touched[c] += 1;
            if self.touched[c] == 1 {
                self.missing -= 1;
            }
            if self.descend(p + 1, size) {
                return true;
            }
            self.touched[c] -= 1;
            if self.touched[c] == 0 {
                self.missing += 1;
            }
            self.chosen.pop();
        }
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verifier::is_attractor;

    #[test]
    fn small_examples() {
        let w: Vec<char> = "ananas".chars().collect();
        let m = minimal_attractor(&w, DEFAULT_SEARCH_CAP).unwrap();
        assert_eq!(m.size, 3);
        assert!(is_attractor(&w, &m.positions).unwrap().holds);

        let m = minimal_attractor(&['0'], DEFAULT_SEARCH_CAP).unwrap();
        assert_eq!(
            m,
            MinimalAttractor {
                size: 1,
                positions: vec![0]
            }
        );

        let u2: Vec<char> = "00100102".chars().collect();
        let m = minimal_attractor(&u2, DEFAULT_SEARCH_CAP).unwrap();
        assert_eq!(m.size, 3);
        assert!(is_attractor(&u2, &[0, 2, 7]).unwrap().holds);
    }

    #[test]
    fn cap_is_enforced() {
        let w = vec![0u8; 65];
        assert!(matches!(
            minimal_attractor(&w, DEFAULT_SEARCH_CAP),
            Err(VerifyError::CapExceeded {
                length: 65,
                cap: 64
            })
        ));
    }

    /// Oracle: try every subset by size, naive verification.
    fn brute_minimum(w: &[u8]) -> usize {
        let n = w.len();
        (0u32..1 << n)
            .filter(|mask| {
                let g: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
                crate::verifier::is_attractor_with(w, &g, crate::verifier::VerifyStrategy::Naive)
                    .unwrap()
                    .holds
            })
            .map(|m| m.count_ones() as usize)
            .min()
            .unwrap()
    }

    #[test]
    fn matches_brute_force_on_binary_words() {
        for n in 1..=10usize {
            for bits in 0u32..1 << n {
                let w: Vec<u8> = (0..n).map(|i| (bits >> i & 1) as u8).collect();
                let m = minimal_attractor(&w, DEFAULT_SEARCH_CAP).unwrap();
                if n <= 8 {
                    assert_eq!(m.size, brute_minimum(&w), "{w:?}");
                }
                assert!(is_attractor(&w, &m.positions).unwrap().holds);
            }
        }
    }
}
