//! Length expressions such as `40`, `U6+9` or `Z5-1`.
//!
//! A term is either a decimal integer or one of the letters `U Z S P Q`
//! followed by a level. Terms are joined with `+` and `-`; the result must be
//! positive.

use parry_attractors::{LengthKind, PrefixEngine};

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Term {
    Literal(u64),
    Named(LengthKind, usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LengthExpr {
    terms: Vec<(i8, Term)>,
    text: String,
}

impl LengthExpr {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let bad = |why: &str| CliError::Input(format!("length {text:?}: {why}"));
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(bad("empty expression"));
        }
        let mut terms = Vec::new();
        let mut sign = 1i8;
        let mut rest = compact.as_str();
        loop {
            let (kind, body) = match rest.chars().next() {
                Some('U') => (Some(LengthKind::U), &rest[1..]),
                Some('Z') => (Some(LengthKind::Z), &rest[1..]),
                Some('S') => (Some(LengthKind::S), &rest[1..]),
                Some('P') => (Some(LengthKind::P), &rest[1..]),
                Some('Q') => (Some(LengthKind::Q), &rest[1..]),
                _ => (None, rest),
            };
            let digits = body.len() - body.trim_start_matches(|c: char| c.is_ascii_digit()).len();
            if digits == 0 {
                return Err(bad("expected a number"));
            }
            let value: u64 = body[..digits]
                .parse()
                .map_err(|_| bad("number too large"))?;
            let term = match kind {
                Some(k) => Term::Named(k, value as usize),
                None => Term::Literal(value),
            };
            terms.push((sign, term));
            rest = &body[digits..];
            match rest.chars().next() {
                None => break,
                Some('+') => sign = 1,
                Some('-') => sign = -1,
                Some(c) => return Err(bad(&format!("unexpected {c:?}"))),
            }
            rest = &rest[1..];
        }
        Ok(LengthExpr {
            terms,
            text: text.to_string(),
        })
    }

    pub fn evaluate(&self, engine: &PrefixEngine) -> Result<usize, CliError> {
        let mut total: i128 = 0;
        for &(sign, term) in &self.terms {
            let v = match term {
                Term::Literal(v) => v,
                Term::Named(kind, n) => engine.length(kind, n)?,
            };
            total += sign as i128 * v as i128;
        }
        if total < 1 {
            return Err(CliError::Input(format!(
                "length {:?} evaluates to {total}, expected at least 1",
                self.text
            )));
        }
        usize::try_from(total)
            .map_err(|_| CliError::Input(format!("length {:?} overflows", self.text)))
    }
}
