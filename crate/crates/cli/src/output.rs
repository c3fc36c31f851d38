use parry_attractors::verifier::{Verdict, VerifyStats};
use serde::Serialize;

#[derive(Debug, Serialize)]
pub struct WordRecord {
    pub length: usize,
    pub word: String,
}

#[derive(Debug, Serialize)]
pub struct AttractorRecord {
    pub length: usize,
    pub positions: Vec<usize>,
    pub theorem: String,
    /// `None` when the set was not checked.
    pub verified: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verdict: Option<VerdictRecord>,
}

#[derive(Debug, Serialize)]
pub struct WitnessRecord {
    pub factor: String,
    /// Half-open `[start, end)` pairs.
    pub occurrences: Vec<[usize; 2]>,
}

#[derive(Debug, Serialize)]
pub struct VerdictRecord {
    pub holds: bool,
    pub witness: Option<WitnessRecord>,
    pub stats: VerifyStats,
}

impl VerdictRecord {
    pub fn new<T>(verdict: &Verdict<T>, render: impl Fn(&[T]) -> String) -> Self {
        VerdictRecord {
            holds: verdict.holds,
            witness: verdict.witness.as_ref().map(|w| WitnessRecord {
                factor: render(&w.factor),
                occurrences: w.occurrences.iter().map(|o| [o.start, o.end]).collect(),
            }),
            stats: verdict.stats,
        }
    }

    /// One line: `holds`, or the witness and where it occurs.
    pub fn to_plain(&self) -> String {
        match &self.witness {
            None => "holds".to_string(),
            Some(w) => {
                let occ: Vec<String> = w
                    .occurrences
                    .iter()
                    .map(|[i, j]| format!("[{i},{j})"))
                    .collect();
                format!("fails: {} at {}", w.factor, occ.join(" "))
            }
        }
    }
}

#[derive(Debug, Serialize)]
pub struct FabreRecord {
    pub position: Option<u64>,
    pub digits: String,
    pub admissible: bool,
}

#[derive(Debug, Serialize)]
pub struct BetaRecord {
    pub beta: f64,
    pub polynomial: String,
    pub deltas: Vec<f64>,
    pub d_star: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepRow {
    pub params: String,
    pub length: usize,
    pub theorem: String,
    pub size: usize,
    pub verified: bool,
    pub minimal_size: Option<usize>,
    pub status: &'static str,
}

impl SweepRow {
    pub fn to_tsv(&self, with_minimal: bool) -> String {
        let mut cols = vec![
            self.params.clone(),
            self.length.to_string(),
            self.theorem.clone(),
            self.size.to_string(),
            self.verified.to_string(),
        ];
        if with_minimal {
            cols.push(self.minimal_size.map_or("-".to_string(), |s| s.to_string()));
        }
        cols.push(self.status.to_string());
        cols.join("\t")
    }
}

/// `x^2 - 4x + 2` from highest-degree-first coefficients.
pub fn render_polynomial(coeffs: &[i64]) -> String {
    let degree = coeffs.len().saturating_sub(1);
    let mut out = String::new();
    for (i, &c) in coeffs.iter().enumerate() {
        if c == 0 {
            continue;
        }
        let power = degree - i;
        let sign = if c < 0 { "-" } else { "+" };
        if out.is_empty() {
            if c < 0 {
                out.push('-');
            }
        } else {
            out.push_str(&format!(" {sign} "));
        }
        let a = c.unsigned_abs();
        if a != 1 || power == 0 {
            out.push_str(&a.to_string());
        }
        match power {
            0 => {}
            1 => out.push('x'),
            _ => out.push_str(&format!("x^{power}")),
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}
