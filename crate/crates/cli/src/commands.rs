use std::collections::BTreeSet;
use std::io::{Read, Write};
use std::path::Path;

use parry_attractors::attractors::{
    attractor_affine, attractor_binary, attractor_general, attractor_nonsimple, attractor_prior,
    attractor_restricted, AttractorSet,
};
use parry_attractors::numeration::deltas;
use parry_attractors::verifier::{minimal_attractor, DEFAULT_SEARCH_CAP};
use parry_attractors::word::render_letters;
use parry_attractors::{
    beta_root, expansion_to_position, is_attractor, parry_admissible, position_to_expansion,
    AttractorIndex, DigitString, ParryError, ParryParameters, PrefixEngine, RenyiExpansion,
    VerifyError,
};
use rayon::prelude::*;

use crate::error::CliError;
use crate::length::LengthExpr;
use crate::output::{
    render_polynomial, AttractorRecord, BetaRecord, FabreRecord, SweepRow, VerdictRecord,
    WordRecord,
};
use crate::{Context, FabreQuery, Format, LengthArgs, ParamArgs, Theorem};

type Outcome = Result<u8, CliError>;

fn emit(out: &mut dyn Write, line: &str) -> Result<(), CliError> {
    writeln!(out, "{line}").map_err(|source| CliError::Io {
        path: "stdout".into(),
        source,
    })
}

fn json<T: serde::Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("records serialize")
}

fn resolve_length(engine: &PrefixEngine, length: &LengthArgs) -> Result<usize, CliError> {
    match (&length.len, length.level) {
        (Some(expr), None) => LengthExpr::parse(expr)?.evaluate(engine),
        (None, Some(n)) => Ok(engine.len_u(n as isize) as usize),
        _ => Err(CliError::Input(
            "give exactly one of --len and --level".into(),
        )),
    }
}

pub fn gen(ctx: &Context, params: &ParamArgs, length: &LengthArgs, out: &mut dyn Write) -> Outcome {
    let engine = ctx.engine(params.params()?)?;
    let len = resolve_length(&engine, length)?;
    let word = engine.prefix_of_length(len)?;
    let text = word.to_text();
    match ctx.format.unwrap_or(Format::Plain) {
        Format::Json => emit(
            out,
            &json(&WordRecord {
                length: len,
                word: text,
            }),
        )?,
        Format::Tsv => emit(out, &format!("{len}\t{text}"))?,
        Format::Plain => emit(out, &text)?,
    }
    Ok(0)
}

/// The level `n` with `|φⁿ(0)| = len`, if there is one.
fn exact_level(engine: &PrefixEngine, len: usize) -> Result<usize, CliError> {
    let n = engine.level_of_length(len as u64);
    if engine.len_u(n as isize) as usize == len {
        Ok(n)
    } else {
        Err(ParryError::PreconditionUnmet(format!(
            "length {len} is not |φⁿ(0)| for any n; the non-simple construction covers only those prefixes"
        ))
        .into())
    }
}

fn construct(
    engine: &PrefixEngine,
    length: &LengthArgs,
    len: usize,
    theorem: Theorem,
) -> Result<AttractorSet, CliError> {
    let simple = engine.params().is_simple();
    let set = match theorem {
        Theorem::Auto if !simple => {
            let n = match length.level {
                Some(n) => n,
                None => exact_level(engine, len)?,
            };
            attractor_nonsimple(engine, n)?
        }
        Theorem::Auto | Theorem::General => attractor_general(engine, len)?,
        Theorem::Restricted => attractor_restricted(engine, len)?,
        Theorem::Binary => attractor_binary(engine, len)?,
        Theorem::Affine => attractor_affine(engine, len)?,
        Theorem::Prior => attractor_prior(engine, len)?,
    };
    Ok(set)
}

pub fn attractor(
    ctx: &Context,
    params: &ParamArgs,
    length: &LengthArgs,
    theorem: Theorem,
    verify: bool,
    out: &mut dyn Write,
) -> Outcome {
    let engine = ctx.engine(params.params()?)?;
    let len = resolve_length(&engine, length)?;
    let set = construct(&engine, length, len, theorem)?;
    let verdict = if verify {
        let word = engine.prefix_of_length(len)?;
        let alphabet = word.alphabet_size();
        let v = is_attractor(word.letters(), &set.positions)?;
        Some(VerdictRecord::new(&v, |f| render_letters(f, alphabet)))
    } else {
        None
    };
    let failed = verdict.as_ref().is_some_and(|v| !v.holds);
    let record = AttractorRecord {
        length: len,
        positions: set.positions.clone(),
        theorem: set.source.to_string(),
        verified: verdict.as_ref().map(|v| v.holds),
        verdict,
    };
    match ctx.format.unwrap_or(Format::Json) {
        Format::Json => emit(out, &json(&record))?,
        Format::Tsv => {
            let verified = record.verified.map_or("-".to_string(), |v| v.to_string());
            emit(
                out,
                &format!("{}\t{}\t{}\t{verified}", len, set.to_text(), record.theorem),
            )?
        }
        Format::Plain => emit(out, &set.to_text())?,
    }
    if failed {
        return Err(CliError::SelfCheck(format!(
            "{} set for length {len} is not an attractor",
            record.theorem
        )));
    }
    Ok(0)
}

fn read_word(path: &Path) -> Result<String, CliError> {
    let io_err = |source| CliError::Io {
        path: path.display().to_string(),
        source,
    };
    let mut text = String::new();
    if path.as_os_str() == "-" {
        std::io::stdin().read_to_string(&mut text).map_err(io_err)?;
    } else {
        text = std::fs::read_to_string(path).map_err(io_err)?;
    }
    Ok(text.trim_end_matches(['\n', '\r']).to_string())
}

fn parse_positions(text: &str) -> Result<Vec<usize>, CliError> {
    let text = text.trim();
    if text.is_empty() {
        return Ok(Vec::new());
    }
    text.split(',')
        .map(|p| {
            p.trim()
                .parse::<usize>()
                .map_err(|_| CliError::Input(format!("bad position {p:?} in --gamma")))
        })
        .collect()
}

/// Words with a comma are integer letters; anything else is one letter per
/// character.
pub fn verify(ctx: &Context, path: &Path, gamma: &str, out: &mut dyn Write) -> Outcome {
    let text = read_word(path)?;
    let gamma = parse_positions(gamma)?;
    let record = if text.contains(',') {
        let letters: Vec<u64> = text
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<u64>()
                    .map_err(|_| CliError::Input(format!("bad letter {t:?} in word")))
            })
            .collect::<Result<_, _>>()?;
        if letters.len() > ctx.max_word {
            return Err(cap_error(letters.len(), ctx.max_word));
        }
        let v = is_attractor(&letters, &gamma)?;
        VerdictRecord::new(&v, |f| {
            f.iter()
                .map(|l| l.to_string())
                .collect::<Vec<_>>()
                .join(",")
        })
    } else {
        let letters: Vec<char> = text.chars().collect();
        if letters.len() > ctx.max_word {
            return Err(cap_error(letters.len(), ctx.max_word));
        }
        let v = is_attractor(&letters, &gamma)?;
        VerdictRecord::new(&v, |f| f.iter().collect())
    };
    match ctx.format.unwrap_or(Format::Json) {
        Format::Json => emit(out, &json(&record))?,
        Format::Tsv | Format::Plain => emit(out, &record.to_plain())?,
    }
    Ok(if record.holds { 0 } else { 1 })
}

fn cap_error(length: usize, cap: usize) -> CliError {
    CliError::Verify(VerifyError::CapExceeded { length, cap })
}

/// Every valid simple parameter set with `2 ≤ m ≤ m_max` and digits up to
/// `t_max`, ordered by `m` and then lexicographically.
fn parameter_space(t_max: u32, m_max: usize) -> Vec<Vec<u32>> {
    let mut all = Vec::new();
    for m in 2..=m_max {
        let mut t = vec![0u32; m];
        loop {
            if ParryParameters::simple(t.clone()).is_ok() {
                all.push(t.clone());
            }
            // odometer with the last digit fastest
            let Some(i) = (0..m).rev().find(|&i| t[i] < t_max) else {
                break;
            };
            t[i] += 1;
            t[i + 1..].iter_mut().for_each(|d| *d = 0);
        }
    }
    all
}

fn sweep_one(
    t: &[u32],
    levels: usize,
    minimality_len: Option<usize>,
    max_word: usize,
) -> Result<Vec<SweepRow>, CliError> {
    let params = ParryParameters::simple(t.to_vec())?;
    let engine = PrefixEngine::new(params)?.with_max_len(max_word);
    let top = engine.len_u(levels as isize) as usize;
    let word = engine.prefix_of_length(top)?;
    let name = t
        .iter()
        .map(|d| d.to_string())
        .collect::<Vec<_>>()
        .join(",");
    let mut index = AttractorIndex::new(engine.alphabet_size());
    let mut seen = BTreeSet::new();
    let mut rows = Vec::with_capacity(top);
    for (i, &letter) in word.letters().iter().enumerate() {
        let len = i + 1;
        index.push(letter);
        seen.insert(letter);
        let (theorem, size, verified) = match attractor_general(&engine, len) {
            Ok(set) => (
                set.source.to_string(),
                set.len(),
                index.holds(&set.positions)?,
            ),
            Err(e) => (format!("error: {e}"), 0, false),
        };
        let minimal_size = match minimality_len {
            Some(k) if len <= k => Some(minimal_attractor(&word[..len], DEFAULT_SEARCH_CAP)?.size),
            _ => None,
        };
        let letters = seen.len();
        let ok = verified && size == letters && minimal_size.is_none_or(|s| s == letters);
        rows.push(SweepRow {
            params: name.clone(),
            length: len,
            theorem,
            size,
            verified,
            minimal_size,
            status: if ok { "PASS" } else { "FAIL" },
        });
    }
    Ok(rows)
}

pub fn sweep(
    ctx: &Context,
    t_max: u32,
    m_max: usize,
    levels: usize,
    minimality_len: Option<usize>,
    out: &mut dyn Write,
) -> Outcome {
    if t_max == 0 || m_max == 0 || levels == 0 {
        return Err(CliError::Input(
            "--t-max, --m-max and --levels must be positive".into(),
        ));
    }
    if let Some(k) = minimality_len {
        if k > DEFAULT_SEARCH_CAP {
            return Err(cap_error(k, DEFAULT_SEARCH_CAP));
        }
    }
    let space = parameter_space(t_max, m_max);
    if space.is_empty() {
        ctx.note("warning: the parameter space is empty (simple parameters need m >= 2)");
        return Ok(0);
    }
    let results: Vec<Result<Vec<SweepRow>, CliError>> = space
        .par_iter()
        .map(|t| sweep_one(t, levels, minimality_len, ctx.max_word))
        .collect();
    let format = ctx.format.unwrap_or(Format::Tsv);
    let with_minimal = minimality_len.is_some();
    let mut rows = Vec::new();
    for r in results {
        rows.extend(r?);
    }
    match format {
        Format::Json => emit(out, &json(&rows))?,
        Format::Tsv | Format::Plain => {
            let mut header = vec!["params", "length", "theorem", "size", "verified"];
            if with_minimal {
                header.push("minimal_size");
            }
            header.push("status");
            emit(out, &header.join("\t"))?;
            for row in &rows {
                emit(out, &row.to_tsv(with_minimal))?;
            }
        }
    }
    let failures = rows.iter().filter(|r| r.status == "FAIL").count();
    ctx.note(&format!(
        "sweep: {} parameter sets, {} rows, {failures} failures",
        space.len(),
        rows.len()
    ));
    if failures > 0 {
        return Err(CliError::SelfCheck(format!("{failures} sweep rows failed")));
    }
    Ok(0)
}

pub fn fabre(
    ctx: &Context,
    params: &ParamArgs,
    query: &FabreQuery,
    out: &mut dyn Write,
) -> Outcome {
    let engine = ctx.engine(params.params()?)?;
    let expansion = RenyiExpansion::from_params(engine.params());
    let record = match (query.pos, &query.digits) {
        (Some(n), None) => {
            let digits = position_to_expansion(&engine, n);
            FabreRecord {
                position: Some(n),
                admissible: parry_admissible(&digits, &expansion),
                digits: digits.to_string(),
            }
        }
        (None, Some(text)) => {
            let digits = DigitString::parse(text)?;
            let admissible = parry_admissible(&digits, &expansion);
            let position = if admissible {
                Some(expansion_to_position(&engine, &digits)?)
            } else {
                None
            };
            FabreRecord {
                position,
                digits: digits.to_string(),
                admissible,
            }
        }
        _ => {
            return Err(CliError::Input(
                "give exactly one of --pos and --digits".into(),
            ))
        }
    };
    match ctx.format.unwrap_or(Format::Json) {
        Format::Json => emit(out, &json(&record))?,
        Format::Tsv => {
            let pos = record.position.map_or("-".to_string(), |p| p.to_string());
            emit(
                out,
                &format!("{pos}\t{}\t{}", record.digits, record.admissible),
            )?
        }
        Format::Plain => {
            let line = match (query.pos, record.position) {
                (Some(_), _) => record.digits.clone(),
                (None, Some(p)) => p.to_string(),
                (None, None) => "inadmissible".to_string(),
            };
            emit(out, &line)?
        }
    }
    Ok(0)
}

pub fn beta(ctx: &Context, params: &ParamArgs, out: &mut dyn Write) -> Outcome {
    let params = params.params()?;
    let value = beta_root(&params);
    let record = BetaRecord {
        beta: value.approx,
        polynomial: render_polynomial(&value.polynomial),
        deltas: deltas(&params),
        d_star: RenyiExpansion::from_params(&params).d_star().to_string(),
    };
    match ctx.format.unwrap_or(Format::Json) {
        Format::Json => emit(out, &json(&record))?,
        Format::Tsv => {
            let ds: Vec<String> = record.deltas.iter().map(|d| d.to_string()).collect();
            emit(
                out,
                &format!(
                    "{}\t{}\t{}\t{}",
                    record.beta,
                    record.polynomial,
                    ds.join(","),
                    record.d_star
                ),
            )?
        }
        Format::Plain => emit(out, &record.beta.to_string())?,
    }
    Ok(0)
}
