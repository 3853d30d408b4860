//! Plain-text matrix files.
//!
//! ```text
//! # comment lines start with '#'
//! 2 3
//! 5 -1 0
//! 0  1 0
//! ```
//!
//! The first non-comment line is the `rows cols` header, followed by one line
//! per row. Blank lines are ignored. Values are written with 17 significant
//! digits so that a write/read cycle reproduces every entry exactly.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use thiserror::Error;

use crate::linalg::{Matrix, Vector};

#[derive(Debug, Error)]
pub enum ParseError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("missing header line \"rows cols\"")]
    MissingHeader,
    #[error("expected {expected} rows, found {found}")]
    RowCount { expected: usize, found: usize },
    #[error("expected a vector, found a {rows}x{cols} matrix")]
    NotAVector { rows: usize, cols: usize },
}

fn syntax(line: usize, message: impl Into<String>) -> ParseError {
    ParseError::Syntax {
        line,
        message: message.into(),
    }
}

pub fn parse_matrix(text: &str) -> Result<Matrix, ParseError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (hline, header) = lines.next().ok_or(ParseError::MissingHeader)?;
    let dims: Vec<&str> = header.split_whitespace().collect();
    let [rows, cols] = dims.as_slice() else {
        return Err(syntax(
            hline,
            format!("header needs 2 fields, found {}", dims.len()),
        ));
    };
    let parse_dim = |s: &str| -> Result<usize, ParseError> {
        match s.parse::<usize>() {
            Ok(0) | Err(_) => Err(syntax(hline, format!("invalid dimension {s:?}"))),
            Ok(d) => Ok(d),
        }
    };
    let (rows, cols) = (parse_dim(rows)?, parse_dim(cols)?);

    let mut entries = Vec::with_capacity(rows * cols);
    let mut found = 0;
    for (line, body) in lines {
        found += 1;
        if found > rows {
            continue;
        }
        let before = entries.len();
        for token in body.split_whitespace() {
            let value: f64 = token
                .parse()
                .map_err(|_| syntax(line, format!("invalid number {token:?}")))?;
            if !value.is_finite() {
                return Err(syntax(line, format!("non-finite value {token:?}")));
            }
            entries.push(value);
        }
        let width = entries.len() - before;
        if width != cols {
            return Err(syntax(
                line,
                format!("expected {cols} values, found {width}"),
            ));
        }
    }
    if found != rows {
        return Err(ParseError::RowCount {
            expected: rows,
            found,
        });
    }
    Ok(Matrix::from_row_slice(rows, cols, &entries).expect("shape and finiteness checked"))
}

/// Reads a vector stored as an `n x 1` or `1 x n` matrix.
pub fn parse_vector(text: &str) -> Result<Vector, ParseError> {
    let m = parse_matrix(text)?;
    match m.shape() {
        (_, 1) | (1, _) => Ok(Vector::from_vec(m.row_major())),
        (rows, cols) => Err(ParseError::NotAVector { rows, cols }),
    }
}

pub fn read_matrix(path: impl AsRef<Path>) -> Result<Matrix, ParseError> {
    parse_matrix(&read(path.as_ref())?)
}

pub fn read_vector(path: impl AsRef<Path>) -> Result<Vector, ParseError> {
    parse_vector(&read(path.as_ref())?)
}

fn read(path: &Path) -> Result<String, ParseError> {
    fs::read_to_string(path).map_err(|source| ParseError::Io {
        path: path.display().to_string(),
        source,
    })
}

pub fn format_matrix(m: &Matrix) -> String {
    let mut out = format!("{} {}\n", m.rows(), m.cols());
    for i in 0..m.rows() {
        let row: Vec<String> = m.row(i).iter().map(|x| format!("{x:.16e}")).collect();
        let _ = writeln!(out, "{}", row.join(" "));
    }
    out
}

/// Column vector as an `n x 1` file.
pub fn format_vector(v: &Vector) -> String {
    let mut out = format!("{} 1\n", v.len());
    for x in v.iter() {
        let _ = writeln!(out, "{x:.16e}");
    }
    out
}

pub fn write_matrix(path: impl AsRef<Path>, m: &Matrix) -> std::io::Result<()> {
    fs::write(path, format_matrix(m))
}
