//! Plain-text structure files and line-delimited machine reports.
//!
//! A magma record is a header `magma <n> [neutral=<i>]` followed by `n` rows
//! of `n` space-separated 0-based indices. A ring record is
//! `ring <n> [one=<i>] zero=<i>`, an `add:` line with `n` rows and a `mul:`
//! line with `n` rows. Anything after `#` on a line is ignored. A file may
//! hold any number of records.
//!
//! Elements of the `zorn_gf2` fixture are encoded as
//! `a*128 + u*16 + v*2 + d` for the vector matrix `((a, u), (v, d))`, with
//! the three bits of `u` and `v` read as a binary number.

use std::fmt::Write as _;

use serde::Serialize;
use thiserror::Error;

use crate::magma::{CayleyTable, PropertyReport, Side, Witness};
use crate::ring::FinRing;
use crate::search::{Certificate, Structure};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    /// 1-based; one past the last line for unexpected end of input.
    pub line: usize,
    pub column: usize,
    pub message: String,
}

struct Token<'a> {
    text: &'a str,
    line: usize,
    column: usize,
}

type Line<'a> = (usize, Vec<Token<'a>>);

struct Lexer<'l, 'a> {
    lines: &'l [Line<'a>],
    pos: usize,
    end_line: usize,
}

/// Splits `text` into non-empty comment-free lines of tokens, plus the line
/// number just past the end.
fn tokenize(text: &str) -> (Vec<Line<'_>>, usize) {
    {
        let mut lines = Vec::new();
        let mut end_line = 1;
        for (i, raw) in text.lines().enumerate() {
            end_line = i + 2;
            let content = raw.split('#').next().unwrap_or("");
            let mut tokens = Vec::new();
            let mut start = None;
            for (c, ch) in content
                .char_indices()
                .chain(std::iter::once((content.len(), ' ')))
            {
                match (ch.is_whitespace(), start) {
                    (false, None) => start = Some(c),
                    (true, Some(s)) => {
                        tokens.push(Token {
                            text: &content[s..c],
                            line: i + 1,
                            column: content[..s].chars().count() + 1,
                        });
                        start = None;
                    }
                    _ => {}
                }
            }
            if !tokens.is_empty() {
                lines.push((i + 1, tokens));
            }
        }
        (lines, end_line)
    }
}

impl<'l, 'a> Lexer<'l, 'a> {
    fn at_end(&self) -> bool {
        self.pos >= self.lines.len()
    }

    fn next_line(&mut self, what: &str) -> Result<&'l [Token<'a>], ParseError> {
        match self.lines.get(self.pos) {
            Some((_, tokens)) => {
                self.pos += 1;
                Ok(tokens)
            }
            None => Err(ParseError {
                line: self.end_line,
                column: 1,
                message: format!("unexpected end of input, expected {what}"),
            }),
        }
    }
}

fn error(token: &Token, message: impl Into<String>) -> ParseError {
    ParseError {
        line: token.line,
        column: token.column,
        message: message.into(),
    }
}

fn number(token: &Token) -> Result<usize, ParseError> {
    token.text.parse().map_err(|_| {
        error(
            token,
            format!("expected a non-negative integer, found `{}`", token.text),
        )
    })
}

fn read_rows(lex: &mut Lexer<'_, '_>, n: usize) -> Result<CayleyTable, ParseError> {
    let mut cells = Vec::with_capacity(n * n);
    let mut first = None;
    for r in 0..n {
        let row = lex.next_line(&format!("row {r} of {n}"))?;
        first.get_or_insert(row[0].line);
        if row.len() != n {
            let at = row.get(n).unwrap_or(&row[row.len() - 1]);
            return Err(error(
                at,
                format!("row has {} entries, expected {n}", row.len()),
            ));
        }
        for token in row {
            let v = number(token)?;
            if v >= n {
                return Err(error(
                    token,
                    format!("entry {v} out of range for order {n}"),
                ));
            }
            cells.push(v as u16);
        }
    }
    CayleyTable::from_cells(n, cells).map_err(|e| ParseError {
        line: first.unwrap_or(lex.end_line),
        column: 1,
        message: e.to_string(),
    })
}

/// Parses `key=<i>` attributes after the order in a header.
fn attributes<'t>(
    header: &'t [Token<'t>],
    allowed: &[&str],
) -> Result<Vec<(&'t str, usize, &'t Token<'t>)>, ParseError> {
    header[2..]
        .iter()
        .map(|token| {
            let (key, value) = token.text.split_once('=').ok_or_else(|| {
                error(token, format!("expected key=value, found `{}`", token.text))
            })?;
            if !allowed.contains(&key) {
                return Err(error(token, format!("unknown attribute `{key}`")));
            }
            let value = value
                .parse()
                .map_err(|_| error(token, format!("attribute `{key}` needs an integer value")))?;
            Ok((key, value, token))
        })
        .collect()
}

fn expect_neutral(
    found: Option<usize>,
    declared: Option<&(&str, usize, &Token)>,
    what: &str,
) -> Result<(), ParseError> {
    if let Some(&(key, value, token)) = declared {
        if found != Some(value) {
            let actual = found.map_or("none".to_string(), |e| e.to_string());
            return Err(error(
                token,
                format!("{key}={value} but the {what} neutral element is {actual}"),
            ));
        }
    }
    Ok(())
}

fn read_record(lex: &mut Lexer<'_, '_>) -> Result<Structure, ParseError> {
    let header = lex.next_line("a header")?;
    let kind = &header[0];
    let order = header
        .get(1)
        .ok_or_else(|| error(kind, "header needs an order"))
        .and_then(number)?;
    if order == 0 || order > u16::MAX as usize {
        return Err(error(
            &header[1],
            format!("order {order} outside 1..=65535"),
        ));
    }
    match kind.text {
        "magma" => {
            let attrs = attributes(header, &["neutral"])?;
            let table = read_rows(lex, order)?;
            expect_neutral(
                table.neutral().map(|e| e.index()),
                attrs.iter().find(|a| a.0 == "neutral"),
                "table's",
            )?;
            Ok(Structure::Magma(table))
        }
        "ring" => {
            let attrs = attributes(header, &["one", "zero"])?;
            let zero = attrs
                .iter()
                .find(|a| a.0 == "zero")
                .ok_or_else(|| error(kind, "ring header needs zero=<i>"))?;
            let mut block = |name: &str| -> Result<CayleyTable, ParseError> {
                let line = lex.next_line(&format!("`{name}:`"))?;
                if line.len() != 1 || line[0].text != format!("{name}:") {
                    return Err(error(&line[0], format!("expected `{name}:`")));
                }
                read_rows(lex, order)
            };
            let add = block("add")?;
            let mul = block("mul")?;
            expect_neutral(add.neutral().map(|e| e.index()), Some(zero), "additive")?;
            expect_neutral(
                mul.neutral().map(|e| e.index()),
                attrs.iter().find(|a| a.0 == "one"),
                "multiplicative",
            )?;
            let ring = FinRing::new(add, mul).map_err(|e| error(kind, e.to_string()))?;
            Ok(Structure::Ring(ring))
        }
        other => Err(error(
            kind,
            format!("expected `magma` or `ring`, found `{other}`"),
        )),
    }
}

/// Reads every record in `text`.
pub fn read_structures(text: &str) -> Result<Vec<Structure>, ParseError> {
    let (lines, end_line) = tokenize(text);
    let mut lex = Lexer {
        lines: &lines,
        pos: 0,
        end_line,
    };
    let mut out = Vec::new();
    while !lex.at_end() {
        out.push(read_record(&mut lex)?);
    }
    Ok(out)
}

/// Reads a file holding exactly one record.
pub fn read_structure(text: &str) -> Result<Structure, ParseError> {
    let (lines, end_line) = tokenize(text);
    let mut lex = Lexer {
        lines: &lines,
        pos: 0,
        end_line,
    };
    let s = read_record(&mut lex)?;
    if let Some((line, tokens)) = lex.lines.get(lex.pos) {
        return Err(ParseError {
            line: *line,
            column: tokens[0].column,
            message: "trailing content after the record".into(),
        });
    }
    Ok(s)
}

fn write_rows(out: &mut String, t: &CayleyTable) {
    for x in 0..t.order() {
        let row: Vec<String> = t.row(x).iter().map(|c| c.to_string()).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
}

pub fn write_magma(t: &CayleyTable) -> String {
    let mut out = format!("magma {}", t.order());
    if let Some(e) = t.neutral() {
        let _ = write!(out, " neutral={e}");
    }
    out.push('\n');
    write_rows(&mut out, t);
    out
}

pub fn write_ring(r: &FinRing) -> String {
    let mut out = format!("ring {}", r.order());
    if let Some(one) = r.one() {
        let _ = write!(out, " one={one}");
    }
    let _ = writeln!(out, " zero={}", r.zero());
    out.push_str("add:\n");
    write_rows(&mut out, r.add_table());
    out.push_str("mul:\n");
    write_rows(&mut out, r.mul_table());
    out
}

pub fn write_structure(s: &Structure) -> String {
    match s {
        Structure::Magma(t) => write_magma(t),
        Structure::Ring(r) => write_ring(r),
    }
}

/// A certificate record: comment lines with the structure constants and the
/// evidence, then the structure itself.
pub fn write_certificate(cert: &Certificate) -> String {
    let mut out = String::new();
    if let Some(constants) = &cert.constants {
        let _ = writeln!(out, "# constants: {constants}");
    }
    if let Some(evidence) = &cert.evidence {
        let _ = writeln!(out, "# evidence: {evidence}");
    }
    out.push_str(&write_structure(&cert.structure));
    out
}

/// One machine-mode line. Field names are fixed; absent values are `null`.
#[derive(Serialize)]
struct Record<'a> {
    property: &'a str,
    holds: bool,
    witness: Option<Vec<u16>>,
    lhs: Option<u16>,
    rhs: Option<u16>,
    side: Option<&'a str>,
    cause: Option<&'a str>,
}

/// Encodes a report as a single JSON line (no trailing newline).
///
/// Nested reports are flattened to their root cause, named in `cause`. A
/// bijectivity witness is `[at, first, second]` with the translation side in
/// `side`.
pub fn machine_record(report: &PropertyReport) -> String {
    let root = report.root_cause();
    let mut record = Record {
        property: report.property.tag(),
        holds: report.holds,
        witness: None,
        lhs: None,
        rhs: None,
        side: None,
        cause: (!std::ptr::eq(root, report)).then(|| root.property.tag()),
    };
    let raw = |args: &[crate::Element]| args.iter().map(|a| a.index() as u16).collect();
    match &root.witness {
        Some(Witness::Unequal { args, lhs, rhs }) => {
            record.witness = Some(raw(args));
            record.lhs = Some(lhs.index() as u16);
            record.rhs = Some(rhs.index() as u16);
        }
        Some(Witness::NotBijective {
            side,
            at,
            first,
            second,
        }) => {
            record.witness = Some(raw(&[*at, *first, *second]));
            record.side = Some(match side {
                Side::Right => "R",
                Side::Left => "L",
            });
        }
        Some(Witness::Missing { args }) => record.witness = Some(raw(args)),
        Some(Witness::Nested(_)) | None => {}
    }
    serde_json::to_string(&record).expect("records serialize")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::magma::{check_flexible, is_loop, Property};
    use crate::ring::zorn_gf2;

    #[test]
    fn magma_round_trip() {
        let t = fixtures::dihedral_group(3);
        let text = write_magma(&t);
        assert!(text.starts_with("magma 6 neutral=0\n"));
        let back = read_structure(&text).unwrap();
        assert_eq!(back, Structure::Magma(t));
        assert_eq!(write_structure(&back), text);
    }

    #[test]
    fn ring_round_trip_and_multi_record() {
        let z6 = crate::ring::residue_ring(6);
        let zorn = zorn_gf2();
        let text = write_ring(&z6) + "# next\n" + &write_ring(&zorn);
        let back = read_structures(&text).unwrap();
        assert_eq!(back, vec![Structure::Ring(z6), Structure::Ring(zorn)]);
        assert!(text.starts_with("ring 6 one=1 zero=0\nadd:\n"));
    }

    #[test]
    fn comments_and_blank_lines() {
        let text = "# klein\n\nmagma 2   # trailing\n0 1\n\n1 0 # row\n";
        let Structure::Magma(t) = read_structure(text).unwrap() else {
            panic!()
        };
        assert_eq!(t.neutral().map(|e| e.index()), Some(0));
    }

    #[test]
    fn truncated_file_names_line() {
        let err = read_structure("magma 3\n0 1 2\n1 2 0\n").unwrap_err();
        assert_eq!(err.line, 4);
        assert!(err.message.contains("end of input"));
    }

    #[test]
    fn bad_entries_have_positions() {
        let err = read_structure("magma 2\n0 1\n1 x\n").unwrap_err();
        assert_eq!((err.line, err.column), (3, 3));
        let err = read_structure("magma 2\n0 1\n1 2\n").unwrap_err();
        assert_eq!((err.line, err.column), (3, 3));
        let err = read_structure("magma 2\n0 1\n1 0 0\n").unwrap_err();
        assert_eq!((err.line, err.column), (3, 5));
        let err = read_structure("magma 2 neutral=1\n0 1\n1 0\n").unwrap_err();
        assert_eq!((err.line, err.column), (1, 9));
        let err = read_structure("ring 2 zero=0\nadd:\n0 1\n1 0\nmult:\n").unwrap_err();
        assert_eq!(err.line, 5);
        let err = read_structure("group 2\n").unwrap_err();
        assert_eq!((err.line, err.column), (1, 1));
    }

    #[test]
    fn machine_records() {
        let holds = machine_record(&PropertyReport::holding(Property::RightBol));
        assert_eq!(
            holds,
            r#"{"property":"right-bol","holds":true,"witness":null,"lhs":null,"rhs":null,"side":null,"cause":null}"#
        );
        // x*y = x + 2y mod 3: x*(y*x) = 2x + 2y and (x*y)*x = 2y.
        let t = CayleyTable::from_fn(3, |x, y| (x + 2 * y) % 3).unwrap();
        assert_eq!(
            machine_record(&check_flexible(&t)),
            r#"{"property":"flexible","holds":false,"witness":[1,0],"lhs":2,"rhs":0,"side":null,"cause":null}"#
        );
        let loop_line = machine_record(&is_loop(&t));
        let v: serde_json::Value = serde_json::from_str(&loop_line).unwrap();
        assert_eq!(v["holds"], false);
        assert_eq!(v["witness"], serde_json::json!([]));
    }
}
