//! BSM1 text format for sensing matrices.
//!
//! ```text
//! BSM1 PM1 7 8
//! # mtilde=3 i=3 primpoly=0xb parity=even
//! # orbit 0 1
//! # orbit 1 7
//! -+-+-+-+
//! ...
//! ```
//!
//! After the header come optional `#` comment lines, then exactly `rows`
//! lines of `cols` characters from `+`, `-`, `0`. Entries are unnormalized.

use std::io::{BufRead, Write};

use crate::error::{Error, Result};
use crate::matrices::{MatrixKind, SensingMatrix};

const MAGIC: &str = "BSM1";

pub fn write_bsm<W: Write>(matrix: &SensingMatrix, mut out: W) -> std::io::Result<()> {
    writeln!(
        out,
        "{MAGIC} {} {} {}",
        matrix.kind(),
        matrix.rows(),
        matrix.cols()
    )?;
    for c in matrix.comments() {
        writeln!(out, "# {c}")?;
    }
    if let Some(orbits) = matrix.orbits() {
        for o in orbits {
            writeln!(out, "# orbit {} {}", o.representative(), o.size())?;
        }
    }
    let mut line = String::with_capacity(matrix.cols() + 1);
    for r in 0..matrix.rows() {
        line.clear();
        for c in 0..matrix.cols() {
            line.push(match matrix.entry(r, c) {
                1 => '+',
                -1 => '-',
                _ => '0',
            });
        }
        line.push('\n');
        out.write_all(line.as_bytes())?;
    }
    Ok(())
}

pub fn to_bsm_string(matrix: &SensingMatrix) -> String {
    let mut buf = Vec::new();
    write_bsm(matrix, &mut buf).expect("writing to memory");
    String::from_utf8(buf).expect("ascii output")
}

fn format_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Format {
        line,
        msg: msg.into(),
    }
}

fn parse_usize(tok: Option<&str>, line: usize, what: &str) -> Result<usize> {
    tok.ok_or_else(|| format_err(line, format!("missing {what}")))?
        .parse()
        .map_err(|_| format_err(line, format!("bad {what}")))
}

/// Parses a BSM1 stream. Errors carry the 1-based line number.
pub fn read_bsm<R: BufRead>(input: R) -> Result<SensingMatrix> {
    let mut lines = input.lines().enumerate().map(|(i, l)| (i + 1, l));
    let io = |line: usize, e: std::io::Error| format_err(line, e.to_string());

    let (_, header) = lines.next().ok_or_else(|| format_err(1, "empty input"))?;
    let header = header.map_err(|e| io(1, e))?;
    let mut tok = header.split_whitespace();
    if tok.next() != Some(MAGIC) {
        return Err(format_err(1, "expected BSM1 header"));
    }
    let kind: MatrixKind = tok
        .next()
        .ok_or_else(|| format_err(1, "missing kind"))?
        .parse()
        .map_err(|_| format_err(1, "kind must be PM1, BIN or TERN"))?;
    let rows = parse_usize(tok.next(), 1, "row count")?;
    let cols = parse_usize(tok.next(), 1, "column count")?;
    if tok.next().is_some() {
        return Err(format_err(1, "trailing tokens in header"));
    }
    if rows == 0 || cols == 0 {
        return Err(format_err(1, "empty matrix"));
    }

    let mut comments = Vec::new();
    let mut orbit_records = Vec::new();
    let mut columns = vec![vec![0i8; rows]; cols];
    let mut row = 0;
    let mut last_line = 1;
    for (n, text) in lines {
        let text = text.map_err(|e| io(n, e))?;
        last_line = n;
        if let Some(c) = text.strip_prefix('#') {
            let c = c.strip_prefix(' ').unwrap_or(c);
            let mut t = c.split_whitespace();
            if t.next() == Some("orbit") {
                let rep = parse_usize(t.next(), n, "orbit representative")?;
                let mu = parse_usize(t.next(), n, "orbit size")?;
                orbit_records.push((rep, mu));
            } else {
                comments.push(c.to_string());
            }
            continue;
        }
        if row == rows {
            return Err(format_err(n, "more data rows than declared"));
        }
        let bytes = text.as_bytes();
        if bytes.len() != cols {
            return Err(format_err(
                n,
                format!("expected {cols} entries, found {}", bytes.len()),
            ));
        }
        for (c, &b) in bytes.iter().enumerate() {
            columns[c][row] = match b {
                b'+' => 1,
                b'-' => -1,
                b'0' => 0,
                other => {
                    return Err(format_err(
                        n,
                        format!("invalid character {:?} in column {}", other as char, c + 1),
                    ))
                }
            };
        }
        row += 1;
    }
    if row != rows {
        return Err(format_err(
            last_line + 1,
            format!("expected {rows} data rows, found {row}"),
        ));
    }

    let mut matrix = SensingMatrix::from_columns(kind, rows, &columns)
        .map_err(|e| format_err(last_line, e.to_string()))?;
    for c in comments {
        matrix.push_comment(c);
    }
    if !orbit_records.is_empty() {
        matrix
            .set_orbits_from_records(&orbit_records)
            .map_err(|e| format_err(last_line, e.to_string()))?;
    }
    Ok(matrix)
}

pub fn from_bsm_str(s: &str) -> Result<SensingMatrix> {
    read_bsm(s.as_bytes())
}
