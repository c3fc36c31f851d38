//! Closed-form attractors of prefixes of Parry fixed points.
//!
//! All position sets are built from the level lengths `U_j`; the central
//! object is `Γ_n`, the last (at most `m`) values `U_j − 1` up to `j = n`.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::engine::{PrefixEngine, SpecialPrefix};
use crate::error::{ParryError, Result};
use crate::numeration::{lex_compare, DigitStream};
use crate::params::ParryParameters;
use crate::word::Letter;

/// Which construction produced a set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum TheoremId {
    /// `Γ_n` taken straight from the table.
    GammaTable,
    /// `Γ_{n-1} ∪ {U_n − 1}`; valid but one larger than minimal.
    PriorCorollary,
    Affine,
    Restricted,
    Binary,
    GeneralCat1,
    GeneralCat2,
    /// The window `(Z_n, S_n]` when `t₁ = t_m`.
    GeneralZS,
    NonSimpleBinary,
    /// The one-letter prefix `φ⁰(0)` of a non-simple sequence.
    SingleLetter,
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AttractorSet {
    pub positions: Vec<usize>,
    pub word_length: usize,
    pub source: TheoremId,
}

impl AttractorSet {
    fn new(
        positions: impl IntoIterator<Item = usize>,
        word_length: usize,
        source: TheoremId,
    ) -> Self {
        let set: BTreeSet<usize> = positions.into_iter().collect();
        debug_assert!(set.iter().all(|&p| p < word_length));
        AttractorSet {
            positions: set.into_iter().collect(),
            word_length,
            source,
        }
    }

    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }

    /// Comma-separated ascending positions.
    pub fn to_text(&self) -> String {
        self.positions
            .iter()
            .map(|p| p.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }
}

/// The two shapes a prefix `u_n x` with `|x| ≤ Z_n − U_n` can take.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Category {
    /// `u_{n-m+k} u_{n-m}^{t_m} x` is a prefix of `u_{n-m+k+1}`.
    Cat1,
    /// `u_{n-m+k} u_{n-m}^{t_m} x` has `u_{n-m+k+1}` as a prefix.
    Cat2,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConditionNote {
    pub flag: &'static str,
    pub holds: bool,
    pub reason: String,
}

/// Which hypotheses of the special-case constructions hold.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConditionsReport {
    pub affine_ok: bool,
    pub restricted_ok: bool,
    pub binary: bool,
    pub t1_gt_tm: bool,
    pub t1_eq_tm: bool,
    pub notes: Vec<ConditionNote>,
}

fn simple_t(params: &ParryParameters, op: &'static str) -> Result<Vec<u32>> {
    params
        .simple_coefficients()
        .map(<[u32]>::to_vec)
        .ok_or(ParryError::NotSimple(op))
}

/// `Γ_n`: `{U_0−1, …, U_n−1}` for `n ≤ m−1`, `{U_{n−m+1}−1, …, U_n−1}`
/// for `n ≥ m`, and empty for `n = −1`.
pub fn gamma(engine: &PrefixEngine, n: isize) -> Result<Vec<usize>> {
    let m = simple_t(engine.params(), "gamma")?.len() as isize;
    let low = (n - m + 1).max(0);
    Ok((low..=n).map(|j| engine.u(j) - 1).collect())
}

fn render(d: &[u32]) -> String {
    d.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

/// Non-empty words that are both a proper prefix and a proper suffix.
fn has_border(w: &[u32]) -> bool {
    (1..w.len()).any(|l| w[..l] == w[w.len() - l..])
}

/// `w = v^k` for some `k ≥ 2`.
fn is_proper_power(w: &[u32]) -> bool {
    let n = w.len();
    (1..n).any(|p| n.is_multiple_of(p) && (p..n).all(|i| w[i] == w[i - p]))
}

pub fn conditions(params: &ParryParameters) -> Result<ConditionsReport> {
    let t = simple_t(params, "conditions")?;
    let m = t.len();
    let (t1, tm) = (t[0], t[m - 1]);
    let mut notes = Vec::new();

    let head = &t[..m - 1];
    let border_ok = !has_border(head) || is_proper_power(head);
    let affine_ok = tm == 1 && border_ok;
    let reason = if tm != 1 {
        format!("t_m = {tm} is not 1")
    } else if !border_ok {
        format!("{} has a border but is not a proper power", render(head))
    } else if has_border(head) {
        format!("t_m = 1 and {} is a proper power", render(head))
    } else {
        format!("t_m = 1 and {} has no border", render(head))
    };
    notes.push(ConditionNote {
        flag: "affine_ok",
        holds: affine_ok,
        reason,
    });

    let full = DigitStream::finite(t.clone());
    let lex_fail = (2..=m.saturating_sub(2)).find(|&i| {
        // t_i ⋯ t_{m-2} (t_{m-1} + 1) 0^ω
        let mut d = t[i - 1..m - 2].to_vec();
        d.push(t[m - 2] + 1);
        lex_compare(&DigitStream::finite(d), &full) != Ordering::Less
    });
    let t_prev = if m >= 2 { t[m - 2] } else { 0 };
    let dominant = t1 > t_prev.max(tm);
    let restricted_ok = lex_fail.is_none() && dominant;
    let reason = match lex_fail {
        Some(i) => format!("shifted lexicographic condition fails at i = {i}"),
        None if !dominant => format!(
            "t_1 = {t1} is not above max(t_(m-1), t_m) = {}",
            t_prev.max(tm)
        ),
        None => format!("t_1 = {t1} dominates and the shifted lexicographic condition holds"),
    };
    notes.push(ConditionNote {
        flag: "restricted_ok",
        holds: restricted_ok,
        reason,
    });

    notes.push(ConditionNote {
        flag: "binary",
        holds: m == 2,
        reason: format!("m = {m}"),
    });
    notes.push(ConditionNote {
        flag: if t1 > tm { "t1_gt_tm" } else { "t1_eq_tm" },
        holds: true,
        reason: format!("t_1 = {t1}, t_m = {tm}"),
    });

    Ok(ConditionsReport {
        affine_ok,
        restricted_ok,
        binary: m == 2,
        t1_gt_tm: t1 > tm,
        t1_eq_tm: t1 == tm,
        notes,
    })
}

/// Decides the category of `u_n x` for `n ≥ m` and `|x| ≤ Z_n − U_n`.
pub fn classify_category(engine: &PrefixEngine, n: usize, x: &[Letter]) -> Result<Category> {
    let t = simple_t(engine.params(), "classify_category")?;
    let m = t.len();
    if n < m {
        return Err(ParryError::LevelTooSmall { level: n, min: m });
    }
    let un = engine.len_u(n as isize);
    let zn = engine.special_len(SpecialPrefix::Z, n)?;
    if x.len() as u64 > zn - un {
        return Err(ParryError::PreconditionUnmet(format!(
            "|x| = {} exceeds Z_{n} - U_{n} = {}",
            x.len(),
            zn - un
        )));
    }
    let prefix = engine.prefix_of_length(un as usize + x.len())?;
    if &prefix[un as usize..] != x {
        return Err(ParryError::PreconditionUnmet(format!(
            "u_{n} x is not a prefix of the fixed point"
        )));
    }

    let k = engine.k_index()?;
    let base = n - m;
    let mut w: Vec<Letter> = engine.prefix_u(base + k)?.to_vec();
    let low = engine.prefix_u(base)?;
    for _ in 0..t[m - 1] {
        w.extend_from_slice(&low);
    }
    w.extend_from_slice(x);
    let j = base + k + 1;
    let next = engine.prefix_u(j)?;
    if next.starts_with(&w) {
        return Ok(Category::Cat1);
    }
    // Below level m the word u_j ends with the fresh letter j, outside the
    // product u_{j-1}^{t_1} ⋯ that the second shape is about.
    let core = if j < m {
        &next[..next.len() - 1]
    } else {
        &next[..]
    };
    if w.starts_with(core) {
        return Ok(Category::Cat2);
    }
    Err(ParryError::Internal(format!(
        "u_{n}: x falls in neither category"
    )))
}

fn check_length(engine: &PrefixEngine, len: usize) -> Result<()> {
    if len == 0 {
        return Err(ParryError::InvalidParameters(
            "prefix length must be at least 1".into(),
        ));
    }
    if len > engine.max_len() {
        return Err(ParryError::CapExceeded {
            requested: len as u64,
            cap: engine.max_len(),
        });
    }
    Ok(())
}

/// Set difference/union helper on `Γ_{n-1}`.
fn adjust(base: Vec<usize>, add: usize, remove: usize) -> Vec<usize> {
    base.into_iter()
        .filter(|&p| p != remove)
        .chain(std::iter::once(add))
        .collect()
}

/// The minimal attractor of the length-`len` prefix, for any simple
/// parameters.
pub fn attractor_general(engine: &PrefixEngine, len: usize) -> Result<AttractorSet> {
    let t = simple_t(engine.params(), "attractor_general")?;
    check_length(engine, len)?;
    let m = t.len();
    let (t1, tm) = (t[0], t[m - 1]);
    let n = engine.level_of_length(len as u64);
    let ni = n as isize;
    let table = |lvl: isize| -> Result<AttractorSet> {
        Ok(AttractorSet::new(
            gamma(engine, lvl)?,
            len,
            TheoremId::GammaTable,
        ))
    };
    if n < m {
        return table(ni);
    }
    let un = engine.u(ni);
    if len == un {
        return table(ni - 1);
    }
    let mi = m as isize;
    let zn = engine.special_len(SpecialPrefix::Z, n)? as usize;
    if len <= zn {
        let prefix = engine.prefix_of_length(len)?;
        let x = &prefix[un..];
        let k = engine.k_index()? as isize;
        let low = engine.u(ni - mi);
        let prev = gamma(engine, ni - 1)?;
        return Ok(match classify_category(engine, n, x)? {
            Category::Cat1 => AttractorSet::new(
                adjust(
                    prev,
                    un - engine.u(ni - mi + k) - (tm as usize - 1) * low - 1,
                    low - 1,
                ),
                len,
                TheoremId::GeneralCat1,
            ),
            Category::Cat2 => AttractorSet::new(
                adjust(prev, un - tm as usize * low - 1, engine.u(ni - mi + k) - 1),
                len,
                TheoremId::GeneralCat2,
            ),
        });
    }
    if t1 > tm {
        return table(ni);
    }
    let sn = engine.special_len(SpecialPrefix::S, n)? as usize;
    if len <= sn {
        let low = engine.u(ni - mi);
        return Ok(AttractorSet::new(
            adjust(
                gamma(engine, ni - 1)?,
                un - (tm as usize - 1) * low - 1,
                low - 1,
            ),
            len,
            TheoremId::GeneralZS,
        ));
    }
    table(ni)
}

/// Shared rule of the restricted, binary and affine constructions: `Γ_{n-1}`
/// on `[U_n, bound(n)]`, `Γ_n` after it.
fn threshold_rule(
    engine: &PrefixEngine,
    len: usize,
    source: TheoremId,
    bound: impl Fn(usize) -> Result<u64>,
) -> Result<AttractorSet> {
    check_length(engine, len)?;
    let m = simple_t(engine.params(), "attractor")?.len();
    let n = engine.level_of_length(len as u64);
    let level = if n >= m && len as u64 <= bound(n)? {
        n as isize - 1
    } else {
        n as isize
    };
    Ok(AttractorSet::new(gamma(engine, level)?, len, source))
}

/// Attractor under the hypotheses of [`ConditionsReport::restricted_ok`];
/// always a subset of `{U_j − 1}`.
pub fn attractor_restricted(engine: &PrefixEngine, len: usize) -> Result<AttractorSet> {
    let report = conditions(engine.params())?;
    if !report.restricted_ok {
        let why = &report.notes[1].reason;
        return Err(ParryError::PreconditionUnmet(format!(
            "restricted construction does not apply: {why}"
        )));
    }
    threshold_rule(engine, len, TheoremId::Restricted, |n| {
        engine.special_len(SpecialPrefix::Z, n)
    })
}

/// Attractor for binary simple sequences (`m = 2`).
pub fn attractor_binary(engine: &PrefixEngine, len: usize) -> Result<AttractorSet> {
    let m = simple_t(engine.params(), "attractor_binary")?.len();
    if m != 2 {
        return Err(ParryError::PreconditionUnmet(format!(
            "binary construction needs m = 2, got m = {m}"
        )));
    }
    threshold_rule(engine, len, TheoremId::Binary, |n| {
        engine.special_len(SpecialPrefix::Z, n)
    })
}

/// Attractor for parameters with affine factor complexity.
pub fn attractor_affine(engine: &PrefixEngine, len: usize) -> Result<AttractorSet> {
    let report = conditions(engine.params())?;
    if !report.affine_ok {
        let why = &report.notes[0].reason;
        return Err(ParryError::PreconditionUnmet(format!(
            "affine construction does not apply: {why}"
        )));
    }
    threshold_rule(engine, len, TheoremId::Affine, |n| engine.p_len(n))
}

/// `Γ_{n-1} ∪ {U_n − 1}` on `[U_n, U_{n+1})`: an attractor for every simple
/// sequence, of size up to `m + 1`. Kept as a cross-check, not minimal.
pub fn attractor_prior(engine: &PrefixEngine, len: usize) -> Result<AttractorSet> {
    let m = simple_t(engine.params(), "attractor_prior")?.len();
    check_length(engine, len)?;
    let n = engine.level_of_length(len as u64);
    let ni = n as isize;
    let positions = if n < m {
        gamma(engine, ni)?
    } else {
        let mut g = gamma(engine, ni - 1)?;
        g.push(engine.u(ni) - 1);
        g
    };
    Ok(AttractorSet::new(positions, len, TheoremId::PriorCorollary))
}

/// Attractor of `φⁿ(0)` for `d_β(1) = p q^ω`: the two positions
/// `Σ_{j<n} |φʲ(0)| − 1` and `|φⁿ(0)| − Σ_{1≤j<n} |φʲ(1)| − 1`.
pub fn attractor_nonsimple(engine: &PrefixEngine, n: usize) -> Result<AttractorSet> {
    if !matches!(engine.params(), ParryParameters::NonSimpleBinary { .. }) {
        return Err(ParryError::NotNonSimpleBinary("attractor_nonsimple"));
    }
    let len = engine.image_len(n, 0);
    if len > engine.max_len() as u64 {
        return Err(ParryError::CapExceeded {
            requested: len,
            cap: engine.max_len(),
        });
    }
    let len = len as usize;
    if n == 0 {
        return Ok(AttractorSet::new([0], 1, TheoremId::SingleLetter));
    }
    let zeros: u64 = (0..n).map(|j| engine.image_len(j, 0)).sum();
    let ones: u64 = (1..n).map(|j| engine.image_len(j, 1)).sum();
    Ok(AttractorSet::new(
        [zeros as usize - 1, len - ones as usize - 1],
        len,
        TheoremId::NonSimpleBinary,
    ))
}
