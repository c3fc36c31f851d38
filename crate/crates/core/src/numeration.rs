//! β-numeration: Rényi expansions of unity, Parry admissibility, the
//! correspondence between prefix lengths and β-integer expansions, and the
//! numeric side (β itself, gap lengths Δ_k, values of β-integers).
//!
//! Everything combinatorial here is exact integer arithmetic. β is only
//! ever approximated numerically and is used for display and sanity checks.

use std::cmp::Ordering;
use std::fmt;

use serde::Serialize;

use crate::engine::PrefixEngine;
use crate::error::{ParryError, Result};
use crate::params::ParryParameters;

/// An eventually periodic digit stream `preperiod · period^ω`. An empty
/// period stands for the zero tail `0^ω`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DigitStream {
    preperiod: Vec<u32>,
    period: Vec<u32>,
}

impl DigitStream {
    pub fn new(preperiod: Vec<u32>, period: Vec<u32>) -> Self {
        DigitStream { preperiod, period }
    }

    /// A finite word padded with `0^ω`.
    pub fn finite(digits: Vec<u32>) -> Self {
        DigitStream::new(digits, Vec::new())
    }

    pub fn preperiod(&self) -> &[u32] {
        &self.preperiod
    }

    pub fn period(&self) -> &[u32] {
        &self.period
    }

    pub fn is_finite(&self) -> bool {
        self.period.is_empty()
    }

    /// The digit at 0-based index `i`.
    pub fn digit(&self, i: usize) -> u32 {
        if i < self.preperiod.len() {
            self.preperiod[i]
        } else if self.period.is_empty() {
            0
        } else {
            self.period[(i - self.preperiod.len()) % self.period.len()]
        }
    }

    /// Drops the first `s` digits.
    pub fn shift(&self, s: usize) -> DigitStream {
        if s <= self.preperiod.len() {
            return DigitStream::new(self.preperiod[s..].to_vec(), self.period.clone());
        }
        if self.period.is_empty() {
            return DigitStream::finite(Vec::new());
        }
        let r = self.period.len();
        let rot = (s - self.preperiod.len()) % r;
        let mut period = self.period[rot..].to_vec();
        period.extend_from_slice(&self.period[..rot]);
        DigitStream::new(Vec::new(), period)
    }

    /// `Σ_{i≥1} d_i x^{-i}` using the closed geometric form for the tail.
    pub fn value_at(&self, x: f64) -> f64 {
        let mut acc = 0.0;
        let mut scale = 1.0;
        for &d in &self.preperiod {
            scale /= x;
            acc += d as f64 * scale;
        }
        if !self.period.is_empty() {
            let mut block = 0.0;
            let mut inner = 1.0;
            for &d in &self.period {
                inner /= x;
                block += d as f64 * inner;
            }
            acc += scale * block / (1.0 - inner);
        }
        acc
    }
}

impl fmt::Display for DigitStream {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let wide = self.preperiod.iter().chain(&self.period).any(|&d| d >= 10);
        let sep = if wide { "," } else { "" };
        let join = |v: &[u32]| {
            v.iter()
                .map(|d| d.to_string())
                .collect::<Vec<_>>()
                .join(sep)
        };
        f.write_str(&join(&self.preperiod))?;
        if self.period.is_empty() {
            if wide && !self.preperiod.is_empty() {
                f.write_str(",")?;
            }
            f.write_str("0^w")
        } else {
            write!(f, "({})^w", join(&self.period))
        }
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Three-way lexicographic comparison of eventually periodic streams.
///
/// Beyond the longer preperiod both streams are periodic, so the pair of
/// streams repeats with period `lcm(r_a, r_b)`; the scan covers the longer
/// preperiod plus two such periods.
pub fn lex_compare(a: &DigitStream, b: &DigitStream) -> Ordering {
    let ra = a.period.len().max(1);
    let rb = b.period.len().max(1);
    let lcm = ra / gcd(ra, rb) * rb;
    let window = a.preperiod.len().max(b.preperiod.len()) + 2 * lcm;
    (0..window)
        .map(|i| a.digit(i).cmp(&b.digit(i)))
        .find(|o| o.is_ne())
        .unwrap_or(Ordering::Equal)
}

/// A Rényi expansion of unity `d_β(1)`: finite when the period is empty.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RenyiExpansion {
    stream: DigitStream,
}

impl RenyiExpansion {
    /// Validates Parry's lexicographic condition (and, for finite
    /// expansions, at least two digits with a non-zero last digit).
    pub fn new(preperiod: Vec<u32>, period: Vec<u32>) -> Result<Self> {
        let params = if period.is_empty() {
            ParryParameters::simple(preperiod)?
        } else {
            ParryParameters::non_simple(preperiod, period)?
        };
        Ok(RenyiExpansion::from_params(&params))
    }

    pub fn from_params(params: &ParryParameters) -> Self {
        RenyiExpansion {
            stream: params.renyi_stream(),
        }
    }

    pub fn stream(&self) -> &DigitStream {
        &self.stream
    }

    pub fn is_simple(&self) -> bool {
        self.stream.is_finite()
    }

    /// `d*_β(1)`: the expansion itself when infinite, otherwise
    /// `(t₁ ⋯ t_{m-1}(t_m − 1))^ω`.
    pub fn d_star(&self) -> DigitStream {
        if !self.stream.is_finite() {
            return self.stream.clone();
        }
        let mut period = self.stream.preperiod.clone();
        *period.last_mut().expect("validated expansion is non-empty") -= 1;
        DigitStream::new(Vec::new(), period)
    }
}

/// Most-significant-first digits `x_{k-1} ⋯ x₀` of a β-integer.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(into = "String")]
pub struct DigitString {
    digits: Vec<u32>,
}

impl DigitString {
    /// Rejects empty strings and leading zeros (except the string `0`).
    pub fn new(digits: Vec<u32>) -> Result<Self> {
        if digits.is_empty() {
            return Err(ParryError::InvalidDigits("empty digit string".into()));
        }
        if digits.len() > 1 && digits[0] == 0 {
            return Err(ParryError::InvalidDigits(format!(
                "leading zero in {}",
                render_digits(&digits)
            )));
        }
        Ok(DigitString { digits })
    }

    pub fn zero() -> Self {
        DigitString { digits: vec![0] }
    }

    /// Decimal digits, or comma-separated integers.
    pub fn parse(text: &str) -> Result<Self> {
        let text = text.trim();
        let digits = if text.contains(',') {
            text.split(',')
                .map(|t| t.trim().parse::<u32>())
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|e| ParryError::InvalidDigits(format!("{text:?}: {e}")))?
        } else {
            text.chars()
                .map(|c| {
                    c.to_digit(10)
                        .ok_or_else(|| ParryError::InvalidDigits(format!("bad digit {c:?}")))
                })
                .collect::<Result<Vec<_>>>()?
        };
        DigitString::new(digits)
    }

    pub fn digits(&self) -> &[u32] {
        &self.digits
    }

    /// Digit `x_i` (weight `U_i` / `β^i`).
    pub fn coefficient(&self, i: usize) -> u32 {
        self.digits[self.digits.len() - 1 - i]
    }
}

fn render_digits(digits: &[u32]) -> String {
    let sep = if digits.iter().any(|&d| d >= 10) {
        ","
    } else {
        ""
    };
    digits
        .iter()
        .map(|d| d.to_string())
        .collect::<Vec<_>>()
        .join(sep)
}

impl fmt::Display for DigitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_digits(&self.digits))
    }
}

impl From<DigitString> for String {
    fn from(d: DigitString) -> String {
        d.to_string()
    }
}

/// The first suffix `x_i ⋯ x₀ 0^ω` that is not strictly below `d*_β(1)`,
/// as an index into the most-significant-first digit list.
fn first_inadmissible(digits: &[u32], expansion: &RenyiExpansion) -> Option<usize> {
    let d_star = expansion.d_star();
    (0..digits.len()).find(|&j| {
        lex_compare(&DigitStream::finite(digits[j..].to_vec()), &d_star) != Ordering::Less
    })
}

/// Parry's criterion: the representation is the greedy β-expansion iff every
/// suffix is lexicographically below `d*_β(1)`.
pub fn parry_admissible(digits: &DigitString, expansion: &RenyiExpansion) -> bool {
    first_inadmissible(&digits.digits, expansion).is_none()
}

/// Greedy decomposition `n = Σ x_i U_i`, largest `U_i` first.
pub fn position_to_expansion(engine: &PrefixEngine, n: u64) -> DigitString {
    if n == 0 {
        return DigitString::zero();
    }
    let top = engine.level_of_length(n);
    let mut rest = n;
    let digits = (0..=top)
        .rev()
        .map(|i| {
            let weight = engine.len_u(i as isize);
            let x = rest / weight;
            rest -= x * weight;
            x as u32
        })
        .collect();
    debug_assert_eq!(rest, 0);
    DigitString { digits }
}

/// `Σ x_i U_i` for admissible digits.
pub fn expansion_to_position(engine: &PrefixEngine, digits: &DigitString) -> Result<u64> {
    let expansion = RenyiExpansion::from_params(engine.params());
    if let Some(j) = first_inadmissible(&digits.digits, &expansion) {
        return Err(ParryError::Inadmissible {
            digits: digits.to_string(),
            suffix: DigitStream::finite(digits.digits[j..].to_vec()).to_string(),
            d_star: expansion.d_star().to_string(),
        });
    }
    let k = digits.digits.len();
    (0..k).try_fold(0u64, |acc, i| {
        let weight = engine.len_u(i as isize);
        (digits.coefficient(i) as u64)
            .checked_mul(weight)
            .and_then(|v| acc.checked_add(v))
            .ok_or_else(|| ParryError::InvalidDigits(format!("{digits} overflows u64")))
    })
}

/// Numerical approximation of β.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BetaValue {
    pub approx: f64,
    /// Integer coefficients of the defining polynomial, highest degree first.
    pub polynomial: Vec<i64>,
    /// `|1 − Σ t_i β^{-i}|` at `approx`.
    pub residual: f64,
}

impl BetaValue {
    pub fn polynomial_at(&self, x: f64) -> f64 {
        self.polynomial
            .iter()
            .fold(0.0, |acc, &c| acc * x + c as f64)
    }

    /// `Σ x_i β^i`.
    pub fn integer_value(&self, digits: &DigitString) -> f64 {
        digits
            .digits
            .iter()
            .fold(0.0, |acc, &d| acc * self.approx + d as f64)
    }
}

pub const BETA_TOLERANCE: f64 = 1e-12;

fn defining_polynomial(stream: &DigitStream) -> Vec<i64> {
    // x^L − Σ_{i≤L} t_i x^{L−i}, L = number of explicit digits
    let poly_for = |digits: &[u32]| {
        let mut p = vec![1i64];
        p.extend(digits.iter().map(|&d| -(d as i64)));
        p
    };
    let head = poly_for(&stream.preperiod);
    if stream.is_finite() {
        return head;
    }
    let mut all = stream.preperiod.clone();
    all.extend_from_slice(&stream.period);
    let mut full = poly_for(&all);
    // subtract the preperiod polynomial, aligned on the constant term
    let offset = full.len() - head.len();
    for (i, c) in head.into_iter().enumerate() {
        full[offset + i] -= c;
    }
    while full.len() > 1 && full[0] == 0 {
        full.remove(0);
    }
    full
}

/// The root β > 1 of `1 = Σ t_i β^{-i}`, by bisection.
///
/// `x ↦ Σ t_i x^{-i}` is strictly decreasing on `(1, ∞)` because all
/// digits are non-negative, so bisection on `[1, 1 + Σ digits]` converges.
pub fn beta_root(params: &ParryParameters) -> BetaValue {
    let stream = params.renyi_stream();
    let upper = 1.0
        + stream
            .preperiod
            .iter()
            .chain(&stream.period)
            .map(|&d| d as f64)
            .sum::<f64>();
    let (mut lo, mut hi) = (1.0f64, upper);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if stream.value_at(mid) > 1.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let approx = 0.5 * (lo + hi);
    BetaValue {
        approx,
        polynomial: defining_polynomial(&stream),
        residual: (1.0 - stream.value_at(approx)).abs(),
    }
}

/// `Δ_k = Σ_{i≥1} t_{i+k} β^{-i}` for letters `k` of the alphabet.
pub fn delta(params: &ParryParameters, k: usize) -> Result<f64> {
    let beta = beta_root(params);
    delta_with(params, &beta, k)
}

pub fn delta_with(params: &ParryParameters, beta: &BetaValue, k: usize) -> Result<f64> {
    let size = params.alphabet_size();
    if k >= size {
        return Err(ParryError::LetterOutOfRange {
            letter: k as u32,
            alphabet_size: size,
        });
    }
    Ok(params.renyi_stream().shift(k).value_at(beta.approx))
}

/// All gap lengths `Δ_0 .. Δ_{A-1}`.
pub fn deltas(params: &ParryParameters) -> Vec<f64> {
    let beta = beta_root(params);
    (0..params.alphabet_size())
        .map(|k| delta_with(params, &beta, k).expect("k in range"))
        .collect()
}

/// `b_n`, the n-th non-negative β-integer.
pub fn beta_integer_value(engine: &PrefixEngine, n: u64) -> f64 {
    let beta = beta_root(engine.params());
    beta.integer_value(&position_to_expansion(engine, n))
}
