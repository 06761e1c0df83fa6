//! Text and JSON file formats.
//!
//! * sign matrices: one row per line over `+ - 0`, newline terminated;
//! * arrangements: one line `a b c orient` per line, rationals as `p/q`,
//!   `orient` one of `+ -`; or a JSON array of
//!   `{"a": "p/q", "b": "p/q", "c": "p/q", "orient": "+"}`;
//! * covector sets: a header `n=<int>` then one sign vector per line;
//! * rational matrices: one row per line, entries separated by whitespace.
//!
//! Blank lines and lines starting with `#` are skipped everywhere except in
//! sign matrices, where every line is a row.

use std::collections::BTreeSet;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use signrank_core::geometry::{Arrangement, Line, Orientation};
use signrank_core::{Rational, RationalMatrix, SignMatrix, SignVector};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Core(#[from] signrank_core::Error),
}

fn syntax(line: usize, message: impl Into<String>) -> FormatError {
    FormatError::Syntax {
        line,
        message: message.into(),
    }
}

/// Content lines with their 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

pub fn parse_rational(token: &str) -> Option<Rational> {
    Rational::from_str(token).ok()
}

/// Canonical form: lowest terms, positive denominator, `p` for integers.
pub fn format_rational(r: &Rational) -> String {
    r.to_string()
}

pub fn parse_sign_matrix(text: &str) -> Result<SignMatrix, FormatError> {
    Ok(text.parse()?)
}

pub fn write_sign_matrix(s: &SignMatrix) -> String {
    s.to_text()
}

fn orientation_of(token: &str) -> Option<Orientation> {
    match token {
        "+" => Some(Orientation::Positive),
        "-" => Some(Orientation::Negative),
        _ => None,
    }
}

fn orientation_char(o: Orientation) -> &'static str {
    match o {
        Orientation::Positive => "+",
        Orientation::Negative => "-",
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LineRecord {
    pub a: String,
    pub b: String,
    pub c: String,
    pub orient: String,
}

/// Parses either format; JSON is recognized by a leading `[`.
pub fn parse_arrangement(text: &str) -> Result<Arrangement, FormatError> {
    if text.trim_start().starts_with('[') {
        let records: Vec<LineRecord> = serde_json::from_str(text)?;
        let lines = records
            .iter()
            .enumerate()
            .map(|(i, r)| line_from_fields(i + 1, [&r.a, &r.b, &r.c, &r.orient]))
            .collect::<Result<Vec<_>, _>>()?;
        return Ok(Arrangement::new(lines)?);
    }
    let mut lines = Vec::new();
    for (n, l) in content_lines(text) {
        let fields: Vec<&str> = l.split_whitespace().collect();
        let [a, b, c, o] = fields[..] else {
            return Err(syntax(n, format!("expected `a b c orient`, found {} fields", fields.len())));
        };
        lines.push(line_from_fields(n, [a, b, c, o])?);
    }
    Ok(Arrangement::new(lines)?)
}

fn line_from_fields(n: usize, f: [&str; 4]) -> Result<(Line, Orientation), FormatError> {
    let coeff = |t: &str| parse_rational(t).ok_or_else(|| syntax(n, format!("bad rational `{t}`")));
    let orient = orientation_of(f[3]).ok_or_else(|| syntax(n, format!("bad orientation `{}`", f[3])))?;
    Ok((Line::new(coeff(f[0])?, coeff(f[1])?, coeff(f[2])?), orient))
}

pub fn arrangement_records(arr: &Arrangement) -> Vec<LineRecord> {
    arr.iter()
        .map(|(l, o)| LineRecord {
            a: format_rational(&l.a),
            b: format_rational(&l.b),
            c: format_rational(&l.c),
            orient: orientation_char(o).to_string(),
        })
        .collect()
}

pub fn write_arrangement(arr: &Arrangement) -> String {
    arrangement_records(arr)
        .iter()
        .map(|r| format!("{} {} {} {}\n", r.a, r.b, r.c, r.orient))
        .collect()
}

pub fn write_arrangement_json(arr: &Arrangement) -> String {
    serde_json::to_string_pretty(&arrangement_records(arr)).expect("plain strings")
}

/// Parses a covector file; the header fixes the vector length.
pub fn parse_covectors(text: &str) -> Result<(usize, BTreeSet<SignVector>), FormatError> {
    let mut lines = content_lines(text);
    let (hn, header) = lines.next().ok_or_else(|| syntax(1, "missing `n=<int>` header"))?;
    let n: usize = header
        .strip_prefix("n=")
        .and_then(|v| v.trim().parse().ok())
        .ok_or_else(|| syntax(hn, format!("expected `n=<int>`, found `{header}`")))?;
    let mut out = BTreeSet::new();
    for (ln, l) in lines {
        let v: SignVector = l.parse().map_err(|e| syntax(ln, format!("{e}")))?;
        if v.len() != n {
            return Err(syntax(ln, format!("expected {n} signs, found {}", v.len())));
        }
        out.insert(v);
    }
    Ok((n, out))
}

pub fn write_covectors<'a>(n: usize, cov: impl IntoIterator<Item = &'a SignVector>) -> String {
    let mut out = format!("n={n}\n");
    for v in cov {
        out.push_str(&v.to_string());
        out.push('\n');
    }
    out
}

pub fn parse_rational_matrix(text: &str) -> Result<RationalMatrix, FormatError> {
    let mut rows = Vec::new();
    let mut width = None;
    for (n, l) in content_lines(text) {
        let row = l
            .split_whitespace()
            .map(|t| parse_rational(t).ok_or_else(|| syntax(n, format!("bad rational `{t}`"))))
            .collect::<Result<Vec<_>, _>>()?;
        match width {
            None => width = Some(row.len()),
            Some(w) if w != row.len() => {
                return Err(syntax(n, format!("expected {w} entries, found {}", row.len())))
            }
            _ => {}
        }
        rows.push(row);
    }
    Ok(RationalMatrix::from_rows(rows)?)
}

pub fn write_rational_matrix(a: &RationalMatrix) -> String {
    (0..a.rows())
        .map(|i| {
            let row: Vec<String> = a.row(i).iter().map(format_rational).collect();
            row.join(" ") + "\n"
        })
        .collect()
}
