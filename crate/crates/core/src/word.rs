//! Finite words over small integer alphabets and their text encoding.
//!
//! Letters are plain integers. Text rendering only happens at the I/O
//! boundary: alphabets of at most ten letters print one decimal digit per
//! letter with no separator, larger alphabets print comma-separated
//! integers.

use std::fmt;
use std::ops::Deref;
use std::sync::Arc;

use crate::error::{ParryError, Result};

pub type Letter = u32;

/// A finite word together with the size of the alphabet it is drawn from.
///
/// The letters live behind an `Arc` so that cached prefixes can be handed
/// out without copying.
#[derive(Clone, PartialEq, Eq)]
pub struct Word {
    letters: Arc<[Letter]>,
    alphabet_size: usize,
}

impl Word {
    pub fn new(letters: impl Into<Arc<[Letter]>>, alphabet_size: usize) -> Result<Self> {
        let letters = letters.into();
        if let Some(&bad) = letters.iter().find(|&&l| l as usize >= alphabet_size) {
            return Err(ParryError::LetterOutOfRange {
                letter: bad,
                alphabet_size,
            });
        }
        Ok(Word {
            letters,
            alphabet_size,
        })
    }

    pub(crate) fn from_arc_unchecked(letters: Arc<[Letter]>, alphabet_size: usize) -> Self {
        Word {
            letters,
            alphabet_size,
        }
    }

    /// Parses the text format, inferring the alphabet as `max letter + 1`.
    pub fn parse(text: &str) -> Result<Self> {
        let letters = parse_letters(text)?;
        let alphabet_size = letters.iter().max().map_or(1, |&m| m as usize + 1);
        Word::new(letters, alphabet_size)
    }

    pub fn alphabet_size(&self) -> usize {
        self.alphabet_size
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn arc(&self) -> &Arc<[Letter]> {
        &self.letters
    }

    /// The length-`len` prefix (the whole word if it is shorter).
    pub fn prefix(&self, len: usize) -> Word {
        let len = len.min(self.letters.len());
        if len == self.letters.len() {
            return self.clone();
        }
        Word::from_arc_unchecked(self.letters[..len].into(), self.alphabet_size)
    }

    pub fn distinct_letters(&self) -> usize {
        distinct_letter_count(&self.letters)
    }

    pub fn to_text(&self) -> String {
        render_letters(&self.letters, self.alphabet_size)
    }
}

impl Deref for Word {
    type Target = [Letter];

    fn deref(&self) -> &[Letter] {
        &self.letters
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.len() <= 64 {
            write!(f, "Word({})", self.to_text())
        } else {
            write!(
                f,
                "Word({}… len={})",
                render_letters(&self.letters[..64], self.alphabet_size),
                self.letters.len()
            )
        }
    }
}

/// Renders letters in the word text format for the given alphabet size.
pub fn render_letters(letters: &[Letter], alphabet_size: usize) -> String {
    if alphabet_size <= 10 {
        letters
            .iter()
            .map(|&l| char::from_digit(l, 10).expect("letter below 10"))
            .collect()
    } else {
        letters
            .iter()
            .map(|l| l.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }
}

/// Parses the word text format. A single trailing newline is accepted.
pub fn parse_letters(text: &str) -> Result<Vec<Letter>> {
    let body = text
        .strip_suffix("\r\n")
        .or_else(|| text.strip_suffix('\n'))
        .unwrap_or(text);
    if body.contains(',') {
        body.split(',')
            .map(|tok| {
                tok.trim()
                    .parse::<Letter>()
                    .map_err(|_| ParryError::InvalidDigits(format!("bad letter {tok:?}")))
            })
            .collect()
    } else {
        body.chars()
            .map(|c| {
                c.to_digit(10)
                    .ok_or_else(|| ParryError::InvalidDigits(format!("bad letter {c:?}")))
            })
            .collect()
    }
}

pub fn distinct_letter_count<T: Ord + Copy>(letters: &[T]) -> usize {
    let mut seen: Vec<T> = letters.to_vec();
    seen.sort_unstable();
    seen.dedup();
    seen.len()
}

/// True iff `x` is a power of `z`, i.e. `x = z^k z'` with `z'` a prefix of
/// `z`. Equivalently `x` is the length-`|x|` prefix of `z^ω`.
pub fn is_power_of<T: PartialEq>(x: &[T], z: &[T]) -> Result<bool> {
    if z.is_empty() {
        return Err(ParryError::PreconditionUnmet(
            "power base must be non-empty".into(),
        ));
    }
    Ok(x.iter().enumerate().all(|(i, a)| *a == z[i % z.len()]))
}
