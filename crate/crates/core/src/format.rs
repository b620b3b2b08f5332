//! Text formats for stabilizer codes and generator matrices.
//!
//! Stabilizer files: UTF-8, `#` starts a comment, each remaining non-blank
//! line is a generator, either a Pauli string over `{I,X,Y,Z}` (optionally
//! prefixed `+`) or a binary line `a1…an|b1…bn`. One file uses one style.
//!
//! Generator files: one row per line over `{0,1}`, `#` comments allowed.

use crate::error::{Error, Result};
use crate::gf2::{BitMatrix, BitVector};
use crate::lincode::GeneratorMatrix;
use crate::stabilizer::{PauliVector, StabilizerCode};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum LineStyle {
    Pauli,
    Binary,
}

/// Non-comment content of each line with its 1-based line number and the
/// column offset of the first retained character.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, usize, &str)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let body = raw.split('#').next().unwrap_or("");
        let trimmed = body.trim();
        if trimmed.is_empty() {
            return None;
        }
        let offset = body.len() - body.trim_start().len();
        Some((i + 1, offset, trimmed))
    })
}

fn parse_err(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

fn parse_bits(s: &str, line: usize, col0: usize) -> Result<BitVector> {
    let mut bits = Vec::with_capacity(s.len());
    for (i, ch) in s.chars().enumerate() {
        match ch {
            '0' => bits.push(false),
            '1' => bits.push(true),
            c if c.is_whitespace() => {}
            c => {
                return Err(parse_err(
                    line,
                    col0 + i + 1,
                    format!("expected 0 or 1, found {c:?}"),
                ))
            }
        }
    }
    Ok(BitVector::from_bools(&bits))
}

pub fn parse_stabilizer(text: &str) -> Result<StabilizerCode> {
    let mut style = None;
    let mut rows = Vec::new();
    let mut n = None;
    for (line, offset, content) in content_lines(text) {
        let this_style = if content.contains('|') {
            LineStyle::Binary
        } else {
            LineStyle::Pauli
        };
        match style {
            None => style = Some(this_style),
            Some(s) if s != this_style => {
                return Err(parse_err(
                    line,
                    offset + 1,
                    "mixed Pauli and binary generator lines",
                ))
            }
            _ => {}
        }
        let row = match this_style {
            LineStyle::Pauli => {
                let (body, shift) = match content.strip_prefix('+') {
                    Some(rest) => (rest.trim_start(), content.len() - rest.trim_start().len()),
                    None => (content, 0),
                };
                PauliVector::parse(body).map_err(|e| match e {
                    Error::Parse {
                        column, message, ..
                    } => parse_err(line, offset + shift + column, message),
                    other => other,
                })?
            }
            LineStyle::Binary => {
                let (a, b) = content.split_once('|').expect("checked above");
                if b.contains('|') {
                    return Err(parse_err(line, offset + 1, "more than one '|' separator"));
                }
                let x = parse_bits(a, line, offset)?;
                let z = parse_bits(b, line, offset + a.len() + 1)?;
                if x.len() != z.len() {
                    return Err(parse_err(
                        line,
                        offset + 1,
                        format!("X half has {} bits but Z half has {}", x.len(), z.len()),
                    ));
                }
                PauliVector::from_parts(x, z)?
            }
        };
        match n {
            None => n = Some(row.n()),
            Some(n) if n != row.n() => {
                return Err(parse_err(
                    line,
                    offset + 1,
                    format!("generator on {} qubits, expected {n}", row.n()),
                ))
            }
            _ => {}
        }
        rows.push(row);
    }
    let Some(n) = n else {
        return Err(parse_err(1, 1, "no generators found"));
    };
    StabilizerCode::new(n, rows)
}

/// Writes Pauli-string lines preceded by `# `-prefixed header lines.
pub fn write_stabilizer(code: &StabilizerCode, header: &[String]) -> String {
    let mut out = String::new();
    for h in header {
        out.push_str("# ");
        out.push_str(h);
        out.push('\n');
    }
    for row in code.rows() {
        out.push_str(&row.to_string());
        out.push('\n');
    }
    out
}

pub fn parse_generator_matrix(text: &str) -> Result<GeneratorMatrix> {
    let mut rows = Vec::new();
    let mut width = None;
    for (line, offset, content) in content_lines(text) {
        let row = parse_bits(content, line, offset)?;
        match width {
            None => width = Some(row.len()),
            Some(w) if w != row.len() => {
                return Err(parse_err(
                    line,
                    offset + 1,
                    format!("row has {} bits, expected {w}", row.len()),
                ))
            }
            _ => {}
        }
        rows.push(row);
    }
    let Some(width) = width else {
        return Err(parse_err(1, 1, "no generator rows found"));
    };
    GeneratorMatrix::new(BitMatrix::from_rows(rows, width)?)
}

pub fn write_generator_matrix(g: &GeneratorMatrix, header: &[String]) -> String {
    let mut out = String::new();
    for h in header {
        out.push_str("# ");
        out.push_str(h);
        out.push('\n');
    }
    for row in g.matrix().rows() {
        out.push_str(&row.to_string());
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pauli_and_binary_styles_agree() {
        let a = parse_stabilizer("# comment\n+XZ\nZX  # trailing\n\n").unwrap();
        let b = parse_stabilizer("10|01\n01|10\n").unwrap();
        assert_eq!(a, b);
        assert_eq!(a.n(), 2);
    }

    #[test]
    fn rejects_mixed_styles() {
        let err = parse_stabilizer("XZ\n10|01\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
    }

    #[test]
    fn rejects_ragged_and_empty() {
        assert!(matches!(
            parse_stabilizer("XZ\nXZZ\n"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(
            parse_stabilizer("# nothing\n\n"),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(parse_stabilizer(""), Err(Error::Parse { .. })));
        assert!(matches!(
            parse_stabilizer("10|0\n"),
            Err(Error::Parse { .. })
        ));
    }

    #[test]
    fn bad_symbol_position() {
        match parse_stabilizer("XX\n  XQ\n") {
            Err(Error::Parse { line, column, .. }) => assert_eq!((line, column), (2, 4)),
            other => panic!("{other:?}"),
        }
        match parse_stabilizer("+XQ\n") {
            Err(Error::Parse { line, column, .. }) => assert_eq!((line, column), (1, 3)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn stabilizer_round_trip() {
        let code = crate::corpus::eight_three();
        let text = write_stabilizer(&code, &["header".into()]);
        assert!(text.starts_with("# header\n"));
        assert_eq!(parse_stabilizer(&text).unwrap(), code);
    }

    #[test]
    fn generator_files() {
        let g = parse_generator_matrix("# (5,2)\n10110\n01011\n").unwrap();
        assert_eq!((g.k(), g.n()), (2, 5));
        assert_eq!(
            parse_generator_matrix(&write_generator_matrix(&g, &[])).unwrap(),
            g
        );
        assert!(parse_generator_matrix("101\n10\n").is_err());
        assert!(parse_generator_matrix("1021\n").is_err());
        assert!(parse_generator_matrix("").is_err());
        assert!(matches!(
            parse_generator_matrix("110\n110\n"),
            Err(Error::RankDeficient { rank: 1, rows: 2 })
        ));
    }
}
