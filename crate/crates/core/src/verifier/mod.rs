//! Independent check of the string-attractor property.
//!
//! A set `Γ` of positions is an attractor of `w` when every distinct
//! non-empty factor of `w` has at least one occurrence `w[i..j)` with
//! `i <= γ < j` for some `γ ∈ Γ`. Nothing in here knows where a candidate
//! set came from.

mod automaton;
mod naive;
mod search;

use std::collections::BTreeMap;
use std::hash::Hash;

use serde::Serialize;

use crate::error::VerifyError;
use crate::word::is_power_of;

pub use search::{minimal_attractor, MinimalAttractor, DEFAULT_SEARCH_CAP};

use automaton::{Coverage, SuffixAutomaton};

/// Longest word accepted by the naive strategy.
pub const NAIVE_CAP: usize = 4096;

/// Half-open interval `[start, end)` of one occurrence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct OccurrenceInterval {
    pub start: usize,
    pub end: usize,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct VerifyStats {
    pub distinct_factors: u64,
    pub checked_factors: u64,
    pub uncovered_factors: u64,
}

/// An uncovered factor with every one of its occurrences.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness<T> {
    pub factor: Vec<T>,
    pub occurrences: Vec<OccurrenceInterval>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdict<T> {
    pub holds: bool,
    /// The shortest uncovered factor; among equal lengths, the one whose
    /// first occurrence starts leftmost.
    pub witness: Option<Witness<T>>,
    pub stats: VerifyStats,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum VerifyStrategy {
    /// Hash set of factors, all occurrences scanned. Quadratic memory.
    Naive,
    /// Suffix automaton with one pass over its suffix-link tree.
    #[default]
    SuffixAutomaton,
}

/// All occurrences of `factor` in `word`, left to right.
pub fn occurrences<T: PartialEq>(word: &[T], factor: &[T]) -> Vec<OccurrenceInterval> {
    if factor.is_empty() || factor.len() > word.len() {
        return Vec::new();
    }
    word.windows(factor.len())
        .enumerate()
        .filter(|(_, w)| *w == factor)
        .map(|(start, _)| OccurrenceInterval {
            start,
            end: start + factor.len(),
        })
        .collect()
}

fn sorted_positions(len: usize, gamma: &[usize]) -> Result<Vec<usize>, VerifyError> {
    let mut g = gamma.to_vec();
    g.sort_unstable();
    g.dedup();
    if let Some(&p) = g.iter().find(|&&p| p >= len) {
        return Err(VerifyError::PositionOutOfRange {
            position: p,
            length: len,
        });
    }
    Ok(g)
}

/// Dense relabelling `0..σ` that keeps the letter order.
fn compress<T: Ord + Copy>(word: &[T]) -> (Vec<u32>, usize) {
    let ranks: BTreeMap<T, u32> = word.iter().map(|&c| (c, 0)).collect();
    let ranks: BTreeMap<T, u32> = ranks
        .into_keys()
        .enumerate()
        .map(|(i, c)| (c, i as u32))
        .collect();
    (word.iter().map(|c| ranks[c]).collect(), ranks.len())
}

fn verdict_from<T: Clone + PartialEq>(word: &[T], cov: Coverage) -> Verdict<T> {
    let witness = cov.witness.map(|(len, start)| {
        let factor = word[start..start + len].to_vec();
        Witness {
            occurrences: occurrences(word, &factor),
            factor,
        }
    });
    Verdict {
        holds: cov.uncovered == 0,
        witness,
        stats: VerifyStats {
            distinct_factors: cov.distinct,
            checked_factors: cov.distinct,
            uncovered_factors: cov.uncovered,
        },
    }
}

/// Checks `gamma` against `word` with the default strategy.
pub fn is_attractor<T>(word: &[T], gamma: &[usize]) -> Result<Verdict<T>, VerifyError>
where
    T: Eq + Hash + Copy + Ord,
{
    is_attractor_with(word, gamma, VerifyStrategy::default())
}

pub fn is_attractor_with<T>(
    word: &[T],
    gamma: &[usize],
    strategy: VerifyStrategy,
) -> Result<Verdict<T>, VerifyError>
where
    T: Eq + Hash + Copy + Ord,
{
    let g = sorted_positions(word.len(), gamma)?;
    let cov = match strategy {
        VerifyStrategy::Naive => {
            if word.len() > NAIVE_CAP {
                return Err(VerifyError::CapExceeded {
                    length: word.len(),
                    cap: NAIVE_CAP,
                });
            }
            naive::coverage(word, &g)
        }
        VerifyStrategy::SuffixAutomaton => {
            let (dense, sigma) = compress(word);
            SuffixAutomaton::with_word(sigma, &dense).coverage(&g)
        }
    };
    Ok(verdict_from(word, cov))
}

/// Incremental checker over a growing word on letters `0..alphabet_size`.
///
/// Appending a letter is amortised constant time and a check is linear in
/// the current length, so sweeping every prefix of a long word costs one
/// check per prefix rather than one rebuild per prefix.
#[derive(Debug, Clone)]
pub struct AttractorIndex {
    word: Vec<u32>,
    sam: SuffixAutomaton,
}

impl AttractorIndex {
    pub fn new(alphabet_size: usize) -> Self {
        AttractorIndex {
            word: Vec::new(),
            sam: SuffixAutomaton::new(alphabet_size),
        }
    }

    pub fn from_word(alphabet_size: usize, word: &[u32]) -> Self {
        AttractorIndex {
            word: word.to_vec(),
            sam: SuffixAutomaton::with_word(alphabet_size, word),
        }
    }

    /// Panics if `letter >= alphabet_size`.
    pub fn push(&mut self, letter: u32) {
        self.sam.push(letter);
        self.word.push(letter);
    }

    pub fn word(&self) -> &[u32] {
        &self.word
    }

    pub fn len(&self) -> usize {
        self.sam.word_len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn check(&self, gamma: &[usize]) -> Result<Verdict<u32>, VerifyError> {
        let g = sorted_positions(self.len(), gamma)?;
        Ok(verdict_from(&self.word, self.sam.coverage(&g)))
    }

    /// Same as [`check`](Self::check) without building the witness.
    pub fn holds(&self, gamma: &[usize]) -> Result<bool, VerifyError> {
        let g = sorted_positions(self.len(), gamma)?;
        Ok(self.sam.coverage(&g).uncovered == 0)
    }
}

/// If `gamma` attracts `z` and `x` is a power of `z` with `|x| >= |z|`,
/// checks that `gamma ∪ {|z| − 1}` attracts `x`.
///
/// Fails with a precondition error when the premises do not hold, so a
/// `false` verdict always means the conclusion itself failed.
pub fn power_transfer_check<T>(x: &[T], z: &[T], gamma: &[usize]) -> Result<Verdict<T>, VerifyError>
where
    T: Eq + Hash + Copy + Ord,
{
    if z.is_empty() {
        return Err(VerifyError::EmptyPeriod);
    }
    if x.len() < z.len() {
        return Err(VerifyError::Precondition(format!(
            "|x| = {} is shorter than |z| = {}",
            x.len(),
            z.len()
        )));
    }
    if !is_power_of(x, z).map_err(|e| VerifyError::Precondition(e.to_string()))? {
        return Err(VerifyError::Precondition(
            "x is not a power of z".to_string(),
        ));
    }
    let base = is_attractor(z, gamma)?;
    if !base.holds {
        return Err(VerifyError::Precondition(
            "gamma is not an attractor of z".to_string(),
        ));
    }
    let mut extended = gamma.to_vec();
    extended.push(z.len() - 1);
    is_attractor(x, &extended)
}
