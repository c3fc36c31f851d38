//! Prefix generation for Parry fixed points and the length bookkeeping the
//! attractor constructions are phrased in.
//!
//! Every image is produced by the level recurrence
//! `φ^{n+1}(a) = (φⁿ(0))^{t_{a+1}} φⁿ(succ a)`, which for simple parameters
//! unfolds to `u_n = u_{n-1}^{t₁} u_{n-2}^{t₂} ⋯ u_{n-m}^{t_m}` (with the
//! trailing letter `n` while `n ≤ m − 1`). Levels are cached; nothing is
//! ever rewritten letter by letter.

use std::sync::{Arc, RwLock};

use crate::error::{ParryError, Result};
use crate::params::ParryParameters;
use crate::word::{Letter, Word};

/// Default cap on the number of letters in any materialized word.
pub const DEFAULT_MAX_WORD: usize = 10_000_000;

/// Which distinguished prefix of the fixed point to build.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpecialPrefix {
    /// `z_n = u_n u_{n-m}^{t₁-t_m} u_{n-m-1}^{t₂} ⋯ u_{n-2m+1}^{t_m}`
    Z,
    /// `s_n = u_n u_{n-m}^{t₁-t_m+1} u_{n-m-1}^{t₂} ⋯ u_{n-2m+1}^{t_m}`
    S,
    /// `p_n = u_n u_{n-m}^{t₁-1} u_{n-m-1}^{t₂} ⋯ u_{n-2m+1}^{t_m}`
    P,
}

/// Named lengths used by the attractor theorems.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LengthKind {
    U,
    Z,
    S,
    P,
    Q,
}

#[derive(Default)]
struct Cache {
    /// `|φⁿ(a)|` per level and letter, saturating at `u64::MAX`.
    lengths: Vec<Vec<u64>>,
    /// Materialized `φⁿ(a)` per level and letter.
    images: Vec<Vec<Arc<[Letter]>>>,
}

/// Generates prefixes `u_n = φⁿ(0)` of the fixed point and caches them.
///
/// Growth takes a write lock; cached levels are immutable and shared, so an
/// engine can be read from several threads at once.
pub struct PrefixEngine {
    params: ParryParameters,
    shapes: Vec<(u32, Option<Letter>)>,
    max_len: usize,
    cache: RwLock<Cache>,
}

impl std::fmt::Debug for PrefixEngine {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("PrefixEngine")
            .field("params", &self.params)
            .field("max_len", &self.max_len)
            .finish()
    }
}

impl PrefixEngine {
    pub fn new(params: ParryParameters) -> Result<Self> {
        params.validate()?;
        let shapes = (0..params.alphabet_size() as Letter)
            .map(|a| params.image_shape(a))
            .collect::<Result<Vec<_>>>()?;
        Ok(PrefixEngine {
            params,
            shapes,
            max_len: DEFAULT_MAX_WORD,
            cache: RwLock::new(Cache::default()),
        })
    }

    /// Overrides the cap on materialized word length.
    pub fn with_max_len(mut self, max_len: usize) -> Self {
        self.max_len = max_len;
        self
    }

    pub fn params(&self) -> &ParryParameters {
        &self.params
    }

    pub fn max_len(&self) -> usize {
        self.max_len
    }

    pub fn alphabet_size(&self) -> usize {
        self.shapes.len()
    }

    fn simple_t(&self, op: &'static str) -> Result<&[u32]> {
        self.params
            .simple_coefficients()
            .ok_or(ParryError::NotSimple(op))
    }

    fn ensure_lengths(&self, level: usize) {
        if self.cache.read().unwrap().lengths.len() > level {
            return;
        }
        let mut cache = self.cache.write().unwrap();
        if cache.lengths.is_empty() {
            cache.lengths.push(vec![1; self.shapes.len()]);
        }
        while cache.lengths.len() <= level {
            let prev = cache.lengths.last().unwrap();
            let next = self
                .shapes
                .iter()
                .map(|&(zeros, tail)| {
                    let head = (zeros as u64).saturating_mul(prev[0]);
                    head.saturating_add(tail.map_or(0, |b| prev[b as usize]))
                })
                .collect();
            cache.lengths.push(next);
        }
    }

    /// `|φⁿ(letter)|`, saturating at `u64::MAX`.
    pub fn image_len(&self, level: usize, letter: Letter) -> u64 {
        self.ensure_lengths(level);
        self.cache.read().unwrap().lengths[level][letter as usize]
    }

    /// `U_n = |u_n|`, with `U_n = 0` for negative `n`.
    pub fn len_u(&self, n: isize) -> u64 {
        if n < 0 {
            0
        } else {
            self.image_len(n as usize, 0)
        }
    }

    /// `U_n` as a `usize`, for indices known to lie inside a materialized word.
    pub(crate) fn u(&self, n: isize) -> usize {
        self.len_u(n) as usize
    }

    /// Largest `n` with `U_n ≤ len` (`len ≥ 1`).
    pub fn level_of_length(&self, len: u64) -> usize {
        let mut n = 0;
        while self.len_u(n as isize + 1) <= len {
            n += 1;
        }
        n
    }

    fn check_cap(&self, requested: u64) -> Result<()> {
        if requested > self.max_len as u64 {
            return Err(ParryError::CapExceeded {
                requested,
                cap: self.max_len,
            });
        }
        Ok(())
    }

    fn ensure_images(&self, level: usize) -> Result<()> {
        if self.cache.read().unwrap().images.len() > level {
            return Ok(());
        }
        for a in 0..self.shapes.len() {
            self.check_cap(self.image_len(level, a as Letter))?;
        }
        let mut cache = self.cache.write().unwrap();
        if cache.images.is_empty() {
            let base = (0..self.shapes.len() as Letter)
                .map(|a| Arc::from(vec![a]))
                .collect();
            cache.images.push(base);
        }
        while cache.images.len() <= level {
            let prev = cache.images.last().unwrap();
            let next = self
                .shapes
                .iter()
                .map(|&(zeros, tail)| {
                    let tail_len = tail.map_or(0, |b| prev[b as usize].len());
                    let mut out = Vec::with_capacity(zeros as usize * prev[0].len() + tail_len);
                    for _ in 0..zeros {
                        out.extend_from_slice(&prev[0]);
                    }
                    if let Some(b) = tail {
                        out.extend_from_slice(&prev[b as usize]);
                    }
                    Arc::from(out)
                })
                .collect();
            cache.images.push(next);
        }
        Ok(())
    }

    /// `φⁿ(letter)`.
    pub fn image_power(&self, level: usize, letter: Letter) -> Result<Word> {
        if letter as usize >= self.shapes.len() {
            return Err(ParryError::LetterOutOfRange {
                letter,
                alphabet_size: self.shapes.len(),
            });
        }
        self.ensure_images(level)?;
        let arc = self.cache.read().unwrap().images[level][letter as usize].clone();
        Ok(Word::from_arc_unchecked(arc, self.shapes.len()))
    }

    /// `u_n = φⁿ(0)`.
    pub fn prefix_u(&self, n: usize) -> Result<Word> {
        self.image_power(n, 0)
    }

    /// `φ(letter)`.
    pub fn morphism_image(&self, letter: Letter) -> Result<Word> {
        self.image_power(1, letter)
    }

    /// The length-`len` prefix of the fixed point.
    pub fn prefix_of_length(&self, len: usize) -> Result<Word> {
        self.check_cap(len as u64)?;
        let mut n = 0;
        while self.len_u(n) < len as u64 {
            n += 1;
        }
        if self.len_u(n) <= self.max_len as u64 {
            return Ok(self.prefix_u(n as usize)?.prefix(len));
        }
        // u_n itself is over the cap: expand only the part we need.
        let mut out = Vec::with_capacity(len);
        self.write_truncated(n as usize, 0, len, &mut out)?;
        Ok(Word::from_arc_unchecked(out.into(), self.shapes.len()))
    }

    fn write_truncated(
        &self,
        level: usize,
        letter: Letter,
        limit: usize,
        out: &mut Vec<Letter>,
    ) -> Result<()> {
        if out.len() >= limit {
            return Ok(());
        }
        let remaining = (limit - out.len()) as u64;
        if self.image_len(level, letter) <= remaining.min(self.max_len as u64) {
            let w = self.image_power(level, letter)?;
            out.extend_from_slice(&w);
            return Ok(());
        }
        let (zeros, tail) = self.shapes[letter as usize];
        for _ in 0..zeros {
            self.write_truncated(level - 1, 0, limit, out)?;
        }
        if let Some(b) = tail {
            self.write_truncated(level - 1, b, limit, out)?;
        }
        Ok(())
    }

    /// `k = min{ j ∈ 1..m-1 : t_{m-j} ≠ 0 }`.
    pub fn k_index(&self) -> Result<usize> {
        k_index(&self.params)
    }

    /// Exponents and levels `(level, exponent)` of the tail that follows
    /// `u_n` in the requested special prefix. Negative levels are kept and
    /// contribute the empty word.
    fn special_tail(&self, which: SpecialPrefix, n: usize) -> Result<Vec<(isize, u32)>> {
        let t = self.simple_t("special_prefix")?;
        let m = t.len();
        if n < m {
            return Err(ParryError::LevelTooSmall { level: n, min: m });
        }
        let (t1, tm) = (t[0], t[m - 1]);
        let head = match which {
            SpecialPrefix::Z => t1 - tm,
            SpecialPrefix::S => t1 - tm + 1,
            SpecialPrefix::P => t1 - 1,
        };
        let n = n as isize;
        let m_i = m as isize;
        Ok((0..m)
            .map(|j| {
                let exp = if j == 0 { head } else { t[j] };
                (n - m_i - j as isize, exp)
            })
            .collect())
    }

    /// Length of a special prefix, computed from the defining product.
    pub fn special_len(&self, which: SpecialPrefix, n: usize) -> Result<u64> {
        let tail = self.special_tail(which, n)?;
        Ok(tail.iter().fold(self.len_u(n as isize), |acc, &(lvl, e)| {
            acc + e as u64 * self.len_u(lvl)
        }))
    }

    /// Builds `z_n`, `s_n` or `p_n` and checks that it is a prefix of the
    /// fixed point.
    pub fn special_prefix(&self, which: SpecialPrefix, n: usize) -> Result<Word> {
        let tail = self.special_tail(which, n)?;
        self.check_cap(self.special_len(which, n)?)?;
        let mut out: Vec<Letter> = self.prefix_u(n)?.to_vec();
        for (lvl, e) in tail {
            if lvl < 0 {
                continue;
            }
            let piece = self.prefix_u(lvl as usize)?;
            for _ in 0..e {
                out.extend_from_slice(&piece);
            }
        }
        let reference = self.prefix_of_length(out.len())?;
        if reference.letters() != out.as_slice() {
            return Err(ParryError::Internal(format!(
                "{which:?}_{n} is not a prefix of the fixed point"
            )));
        }
        Ok(reference)
    }

    /// `P_n`: `U_n` for `n ≤ m-1`, else `U_n + U_{n-m+1} - U_{n-m} - 1`.
    pub fn p_len(&self, n: usize) -> Result<u64> {
        let m = self.simple_t("length")?.len() as isize;
        let n = n as isize;
        if n < m {
            Ok(self.len_u(n))
        } else {
            Ok(self.len_u(n) + self.len_u(n - m + 1) - self.len_u(n - m) - 1)
        }
    }

    /// `Q_n`: length of the longest prefix of the fixed point that is a power
    /// of `u_n`, found by scanning inside `u_{n+2}`.
    pub fn q_len(&self, n: usize) -> Result<u64> {
        self.simple_t("length")?;
        let base = self.prefix_u(n)?;
        let haystack = self.prefix_u(n + 2)?;
        let period = base.len();
        match (period..haystack.len()).find(|&i| haystack[i] != base[i % period]) {
            Some(i) => Ok(i as u64),
            None => Err(ParryError::ScanLimit {
                level: n,
                limit: n + 2,
            }),
        }
    }

    /// Dispatches on [`LengthKind`].
    pub fn length(&self, kind: LengthKind, n: usize) -> Result<u64> {
        match kind {
            LengthKind::U => Ok(self.len_u(n as isize)),
            LengthKind::Z => self.special_len(SpecialPrefix::Z, n),
            LengthKind::S => self.special_len(SpecialPrefix::S, n),
            LengthKind::P => self.p_len(n),
            LengthKind::Q => self.q_len(n),
        }
    }
}

/// `k = min{ j ∈ 1..m-1 : t_{m-j} ≠ 0 }` for simple parameters.
pub fn k_index(params: &ParryParameters) -> Result<usize> {
    let t = params
        .simple_coefficients()
        .ok_or(ParryError::NotSimple("k_index"))?;
    let m = t.len();
    (1..m)
        .find(|&j| t[m - j - 1] != 0)
        .ok_or_else(|| ParryError::Internal("t_1 = 0 in validated parameters".into()))
}
