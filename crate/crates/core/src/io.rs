//! Text formats.
//!
//! Matrix files (`.mgt`):
//!
//! ```text
//! # optional comment lines
//! q t n
//! <t lines of n space-separated integers>
//! families: 1,2,3,4; 5,6,7,8
//! ```
//!
//! The `families:` line is optional and lists 1-based row indices. Vector
//! files hold one line of space-separated rationals (`p/q` or integers).

use std::fmt::Write as _;
use std::path::Path;

use crate::alphabet::Alphabet;
use crate::error::{Error, Result};
use crate::matrix::QaryMatrix;
use crate::rational::Rational;

/// A parsed matrix file: the matrix plus its comment lines (without `#`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatrixFile {
    pub matrix: QaryMatrix,
    pub comments: Vec<String>,
}

impl MatrixFile {
    pub fn new(matrix: QaryMatrix) -> Self {
        MatrixFile {
            matrix,
            comments: Vec::new(),
        }
    }

    /// Block weights and `u` recorded by `construct concat`.
    pub fn concat_annotation(&self) -> Result<Option<(Vec<u64>, u64)>> {
        let mut coeffs = None;
        let mut u = None;
        for c in &self.comments {
            let c = c.trim();
            if let Some(rest) = c.strip_prefix("coeffs:") {
                coeffs = Some(
                    rest.split(',')
                        .map(|s| {
                            s.trim().parse::<u64>().map_err(|_| {
                                Error::InvalidParameter(format!("bad coefficient `{}`", s.trim()))
                            })
                        })
                        .collect::<Result<Vec<_>>>()?,
                );
            } else if let Some(rest) = c.strip_prefix("u:") {
                u = Some(rest.trim().parse::<u64>().map_err(|_| {
                    Error::InvalidParameter(format!("bad u `{}`", rest.trim()))
                })?);
            }
        }
        match (coeffs, u) {
            (Some(c), Some(u)) => Ok(Some((c, u))),
            (None, None) => Ok(None),
            _ => Err(Error::InvalidParameter(
                "concatenation annotations need both `coeffs:` and `u:`".into(),
            )),
        }
    }
}

fn parse_err(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

pub fn parse_matrix_str(text: &str) -> Result<MatrixFile> {
    let mut comments = Vec::new();
    let mut header: Option<(u32, usize, usize)> = None;
    let mut entries: Vec<u32> = Vec::new();
    let mut rows_read = 0usize;
    let mut families: Option<(usize, Vec<Vec<usize>>)> = None;

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if let Some(c) = line.strip_prefix('#') {
            comments.push(c.trim().to_string());
            continue;
        }
        if line.is_empty() {
            continue;
        }
        if families.is_some() {
            return Err(parse_err(line_no, 1, "content after the families line"));
        }
        let Some((q, t, n)) = header else {
            let toks: Vec<&str> = line.split_whitespace().collect();
            if toks.len() != 3 {
                return Err(parse_err(line_no, 1, "header must be `q t n`"));
            }
            let num = |k: usize| {
                toks[k]
                    .parse::<u64>()
                    .map_err(|_| parse_err(line_no, k + 1, format!("`{}` is not an integer", toks[k])))
            };
            let q = num(0)?;
            if !(2..=u32::MAX as u64).contains(&q) {
                return Err(parse_err(line_no, 1, "q must be at least 2"));
            }
            header = Some((q as u32, num(1)? as usize, num(2)? as usize));
            continue;
        };
        if let Some(rest) = line.strip_prefix("families:") {
            if rows_read < t {
                return Err(parse_err(line_no, 1, "families line before all rows"));
            }
            let mut fams = Vec::new();
            for group in rest.split(';') {
                let group = group.trim();
                if group.is_empty() {
                    continue;
                }
                let mut fam = Vec::new();
                for tok in group.split(',') {
                    let tok = tok.trim();
                    let r: usize = tok
                        .parse()
                        .map_err(|_| parse_err(line_no, 1, format!("bad row index `{tok}`")))?;
                    if r == 0 || r > t {
                        return Err(parse_err(line_no, 1, format!("row index {r} out of 1..={t}")));
                    }
                    fam.push(r - 1);
                }
                fams.push(fam);
            }
            families = Some((line_no, fams));
            continue;
        }
        if rows_read == t {
            return Err(parse_err(line_no, 1, format!("more than {t} rows")));
        }
        let toks: Vec<&str> = line.split_whitespace().collect();
        if toks.len() != n {
            return Err(parse_err(
                line_no,
                1,
                format!("expected {n} entries, found {}", toks.len()),
            ));
        }
        for (col, tok) in toks.iter().enumerate() {
            let e: u64 = tok
                .parse()
                .map_err(|_| parse_err(line_no, col + 1, format!("`{tok}` is not a nonnegative integer")))?;
            if e >= q as u64 {
                return Err(parse_err(
                    line_no,
                    col + 1,
                    format!("entry {e} at row {}, column {} is not below q = {q}", rows_read + 1, col + 1),
                ));
            }
            entries.push(e as u32);
        }
        rows_read += 1;
    }

    let (q, t, n) = header.ok_or_else(|| parse_err(1, 1, "missing `q t n` header"))?;
    if rows_read != t {
        return Err(parse_err(
            text.lines().count().max(1),
            1,
            format!("expected {t} rows, found {rows_read}"),
        ));
    }
    let mut matrix = QaryMatrix::new(q, t, n, entries)?;
    if let Some((line_no, fams)) = families {
        matrix = matrix.with_families(fams).map_err(|e| match e {
            Error::InvalidFamilies(msg) => parse_err(line_no, 1, msg),
            other => other,
        })?;
    }
    Ok(MatrixFile { matrix, comments })
}

pub fn parse_matrix(path: impl AsRef<Path>) -> Result<MatrixFile> {
    parse_matrix_str(&std::fs::read_to_string(path)?)
}

/// Canonical form: comments, header, rows, families.
pub fn write_matrix(file: &MatrixFile) -> String {
    let m = &file.matrix;
    let mut out = String::new();
    for c in &file.comments {
        let _ = writeln!(out, "# {c}");
    }
    let _ = writeln!(out, "{} {} {}", m.q(), m.t(), m.n());
    for row in m.rows() {
        let line: Vec<String> = row.iter().map(u32::to_string).collect();
        let _ = writeln!(out, "{}", line.join(" "));
    }
    if let Some(fams) = m.families() {
        if !fams.is_empty() {
            let groups: Vec<String> = fams
                .iter()
                .map(|f| f.iter().map(|r| (r + 1).to_string()).collect::<Vec<_>>().join(","))
                .collect();
            let _ = writeln!(out, "families: {}", groups.join("; "));
        }
    }
    out
}

pub fn parse_vector_str(text: &str) -> Result<Vec<Rational>> {
    let mut data = None;
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if data.is_some() {
            return Err(parse_err(idx + 1, 1, "vector files hold a single line"));
        }
        let values = line
            .split_whitespace()
            .enumerate()
            .map(|(col, tok)| {
                tok.parse::<Rational>()
                    .map_err(|e| parse_err(idx + 1, col + 1, e.to_string()))
            })
            .collect::<Result<Vec<_>>>()?;
        data = Some(values);
    }
    Ok(data.unwrap_or_default())
}

pub fn parse_vector(path: impl AsRef<Path>) -> Result<Vec<Rational>> {
    parse_vector_str(&std::fs::read_to_string(path)?)
}

pub fn write_vector(values: &[Rational]) -> String {
    let parts: Vec<String> = values.iter().map(Rational::to_string).collect();
    format!("{}\n", parts.join(" "))
}

pub fn parse_levels(s: &str) -> Result<Alphabet> {
    s.parse()
}
