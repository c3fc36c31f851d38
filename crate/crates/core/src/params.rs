//! Numeration parameters and the associated substitution.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{ParryError, Result};
use crate::numeration::{lex_compare, DigitStream};
use crate::word::Letter;

/// Parameters of a Parry number, given through its Rényi expansion of unity.
///
/// * `Simple`: finite expansion `t₁⋯t_m` with `m ≥ 2`.
/// * `NonSimpleBinary`: expansion `p q^ω` with `p > q ≥ 1`, the binary
///   non-simple family for which attractors of `φⁿ(0)` are known.
/// * `NonSimple`: any other eventually periodic expansion
///   `t₁⋯t_m (t_{m+1}⋯t_{m+r})^ω`. These are generated but carry no
///   attractor construction.
///
/// Construct through [`ParryParameters::simple`],
/// [`ParryParameters::non_simple_binary`] or
/// [`ParryParameters::non_simple`], or call [`ParryParameters::validate`]
/// on a hand-built value.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ParryParameters {
    Simple {
        t: Vec<u32>,
    },
    NonSimpleBinary {
        p: u32,
        q: u32,
    },
    NonSimple {
        preperiod: Vec<u32>,
        period: Vec<u32>,
    },
}

impl ParryParameters {
    pub fn simple(t: impl Into<Vec<u32>>) -> Result<Self> {
        let params = ParryParameters::Simple { t: t.into() };
        params.validate()?;
        Ok(params)
    }

    pub fn non_simple_binary(p: u32, q: u32) -> Result<Self> {
        let params = ParryParameters::NonSimpleBinary { p, q };
        params.validate()?;
        Ok(params)
    }

    /// Eventually periodic expansion; `p q^ω` is normalized to
    /// [`ParryParameters::NonSimpleBinary`].
    pub fn non_simple(preperiod: Vec<u32>, period: Vec<u32>) -> Result<Self> {
        let params = if preperiod.len() == 1 && period.len() == 1 {
            ParryParameters::NonSimpleBinary {
                p: preperiod[0],
                q: period[0],
            }
        } else {
            ParryParameters::NonSimple { preperiod, period }
        };
        params.validate()?;
        Ok(params)
    }

    /// Checks every defining condition and reports the first violation.
    pub fn validate(&self) -> Result<()> {
        match self {
            ParryParameters::Simple { t } => validate_simple(t),
            ParryParameters::NonSimpleBinary { p, q } => {
                if *q < 1 {
                    return Err(ParryError::InvalidParameters(format!(
                        "q = {q} must be at least 1 (q = 0 gives a simple Parry number)"
                    )));
                }
                if p <= q {
                    return Err(ParryError::InvalidParameters(format!(
                        "p = {p} must exceed q = {q}"
                    )));
                }
                Ok(())
            }
            ParryParameters::NonSimple { preperiod, period } => {
                validate_non_simple(preperiod, period)
            }
        }
    }

    pub fn is_simple(&self) -> bool {
        matches!(self, ParryParameters::Simple { .. })
    }

    pub fn alphabet_size(&self) -> usize {
        match self {
            ParryParameters::Simple { t } => t.len(),
            ParryParameters::NonSimpleBinary { .. } => 2,
            ParryParameters::NonSimple { preperiod, period } => preperiod.len() + period.len(),
        }
    }

    /// The simple coefficients `t₁..t_m`, if simple.
    pub fn simple_coefficients(&self) -> Option<&[u32]> {
        match self {
            ParryParameters::Simple { t } => Some(t),
            _ => None,
        }
    }

    /// `d_β(1)` as an eventually periodic stream (empty period = `0^ω`).
    pub fn renyi_stream(&self) -> DigitStream {
        match self {
            ParryParameters::Simple { t } => DigitStream::finite(t.clone()),
            ParryParameters::NonSimpleBinary { p, q } => DigitStream::new(vec![*p], vec![*q]),
            ParryParameters::NonSimple { preperiod, period } => {
                DigitStream::new(preperiod.clone(), period.clone())
            }
        }
    }

    /// `t_i` with 1-based `i`, following the periodic tail when non-simple.
    pub fn t(&self, i: usize) -> u32 {
        assert!(i >= 1, "coefficients are 1-indexed");
        self.renyi_stream().digit(i - 1)
    }

    /// The image `φ(a) = 0^{t_{a+1}} succ(a)` as (number of zeros, trailing letter).
    pub fn image_shape(&self, letter: Letter) -> Result<(u32, Option<Letter>)> {
        let size = self.alphabet_size();
        if letter as usize >= size {
            return Err(ParryError::LetterOutOfRange {
                letter,
                alphabet_size: size,
            });
        }
        let zeros = self.t(letter as usize + 1);
        let last = size as Letter - 1;
        let tail = if letter < last {
            Some(letter + 1)
        } else {
            match self {
                ParryParameters::Simple { .. } => None,
                ParryParameters::NonSimpleBinary { .. } => Some(1),
                ParryParameters::NonSimple { preperiod, .. } => Some(preperiod.len() as Letter),
            }
        };
        Ok((zeros, tail))
    }

    /// `φ(letter)` as a letter vector.
    pub fn morphism_image(&self, letter: Letter) -> Result<Vec<Letter>> {
        let (zeros, tail) = self.image_shape(letter)?;
        let mut out = vec![0; zeros as usize];
        out.extend(tail);
        Ok(out)
    }
}

impl fmt::Display for ParryParameters {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[u32]| {
            v.iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(",")
        };
        match self {
            ParryParameters::Simple { t } => write!(f, "t={}", join(t)),
            ParryParameters::NonSimpleBinary { p, q } => write!(f, "nsp={p},{q}"),
            ParryParameters::NonSimple { preperiod, period } => {
                write!(f, "renyi={}({})", join(preperiod), join(period))
            }
        }
    }
}

fn validate_simple(t: &[u32]) -> Result<()> {
    let m = t.len();
    if m < 2 {
        return Err(ParryError::InvalidParameters(format!(
            "simple parameters need m >= 2 coefficients, got {m}"
        )));
    }
    if t[0] < 1 {
        return Err(ParryError::InvalidParameters(
            "t_1 must be at least 1".into(),
        ));
    }
    if t[m - 1] < 1 {
        return Err(ParryError::InvalidParameters(format!(
            "t_{m} must be at least 1"
        )));
    }
    let whole = DigitStream::finite(t.to_vec());
    for i in 2..=m {
        let shifted = DigitStream::finite(t[i - 1..].to_vec());
        if lex_compare(&shifted, &whole) != Ordering::Less {
            return Err(ParryError::InvalidParameters(format!(
                "lexicographic condition fails at i = {i}: {shifted} is not below {whole}"
            )));
        }
    }
    Ok(())
}

fn validate_non_simple(preperiod: &[u32], period: &[u32]) -> Result<()> {
    if preperiod.is_empty() {
        return Err(ParryError::InvalidParameters(
            "a Rényi expansion of unity is never purely periodic".into(),
        ));
    }
    if period.is_empty() || period.iter().all(|&d| d == 0) {
        return Err(ParryError::InvalidParameters(
            "period must contain a non-zero digit (otherwise the number is simple)".into(),
        ));
    }
    if preperiod[0] < 1 {
        return Err(ParryError::InvalidParameters(
            "t_1 must be at least 1".into(),
        ));
    }
    let r = period.len();
    if (1..r).any(|d| r.is_multiple_of(d) && (0..r).all(|i| period[i] == period[i % d])) {
        return Err(ParryError::InvalidParameters(
            "period is not primitive (r is not minimal)".into(),
        ));
    }
    if preperiod.last() == period.last() {
        return Err(ParryError::InvalidParameters(
            "preperiod and period end with the same digit (m is not minimal)".into(),
        ));
    }
    let whole = DigitStream::new(preperiod.to_vec(), period.to_vec());
    for shift in 1..preperiod.len() + r {
        let shifted = whole.shift(shift);
        if lex_compare(&shifted, &whole) != Ordering::Less {
            return Err(ParryError::InvalidParameters(format!(
                "lexicographic condition fails at j = {}: {shifted} is not below {whole}",
                shift + 1
            )));
        }
    }
    Ok(())
}
