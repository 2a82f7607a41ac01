//! Plain-text serialization of operation tables.
//!
//! The format is line oriented and human-editable:
//!
//! ```text
//! # anything after a hash is a comment
//! ring Z4 order 4
//! add
//! 0 1 2 3
//! 1 2 3 0
//! 2 3 0 1
//! 3 0 1 2
//! mul
//! 0 0 0 0
//! 0 1 2 3
//! 0 2 0 2
//! 0 3 2 1
//! zero 0
//! one 1
//! ```
//!
//! Parsing ends with the full table validator, so a file describing a
//! non-ring is rejected with the violated law and a witness rather than
//! silently accepted.

use crate::ring::{Elem, FiniteRing, RingError};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum TableIoError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error(transparent)]
    Ring(#[from] RingError),
}

fn syntax(line: usize, message: impl Into<String>) -> TableIoError {
    TableIoError::Syntax {
        line,
        message: message.into(),
    }
}

/// Parse a table file into a validated ring.
pub fn parse_table_file(src: &str) -> Result<FiniteRing, TableIoError> {
    // Strip comments, keep (original line number, content) for non-blank lines.
    let lines: Vec<(usize, &str)> = src
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty())
        .collect();
    let mut pos = 0;
    let next = |pos: &mut usize| -> Option<(usize, &str)> {
        let out = lines.get(*pos).copied();
        *pos += 1;
        out
    };

    let (hline, header) = next(&mut pos).ok_or_else(|| syntax(1, "empty file"))?;
    let toks: Vec<&str> = header.split_whitespace().collect();
    if toks.len() < 4 || toks[0] != "ring" || toks[toks.len() - 2] != "order" {
        return Err(syntax(hline, "expected `ring <name> order <n>`"));
    }
    let name = toks[1..toks.len() - 2].join(" ");
    let order: usize = toks[toks.len() - 1]
        .parse()
        .map_err(|_| syntax(hline, format!("bad order `{}`", toks[toks.len() - 1])))?;
    if order == 0 {
        return Err(syntax(hline, "order must be at least 1"));
    }

    let read_table = |pos: &mut usize, keyword: &str| -> Result<Vec<Elem>, TableIoError> {
        let (kline, kw) =
            next(pos).ok_or_else(|| syntax(lines.len(), format!("missing `{keyword}` block")))?;
        if kw != keyword {
            return Err(syntax(kline, format!("expected `{keyword}`, found `{kw}`")));
        }
        let mut table = Vec::with_capacity(order * order);
        for _ in 0..order {
            let (rline, row) = next(pos)
                .ok_or_else(|| syntax(lines.len(), format!("`{keyword}` table truncated")))?;
            let mut count = 0;
            for tok in row.split_whitespace() {
                let v: usize = tok
                    .parse()
                    .map_err(|_| syntax(rline, format!("bad entry `{tok}`")))?;
                if v >= order {
                    return Err(syntax(rline, format!("entry {v} out of range for order {order}")));
                }
                table.push(v as Elem);
                count += 1;
            }
            if count != order {
                return Err(syntax(
                    rline,
                    format!("expected {order} entries in row, found {count}"),
                ));
            }
        }
        Ok(table)
    };

    let add = read_table(&mut pos, "add")?;
    let mul = read_table(&mut pos, "mul")?;

    let read_elem = |pos: &mut usize, keyword: &str| -> Result<Elem, TableIoError> {
        let (l, line) =
            next(pos).ok_or_else(|| syntax(lines.len(), format!("missing `{keyword}` line")))?;
        let toks: Vec<&str> = line.split_whitespace().collect();
        if toks.len() != 2 || toks[0] != keyword {
            return Err(syntax(l, format!("expected `{keyword} <index>`")));
        }
        let v: usize = toks[1]
            .parse()
            .map_err(|_| syntax(l, format!("bad index `{}`", toks[1])))?;
        if v >= order {
            return Err(syntax(l, format!("index {v} out of range for order {order}")));
        }
        Ok(v as Elem)
    };

    let zero = read_elem(&mut pos, "zero")?;
    let one = read_elem(&mut pos, "one")?;
    if let Some((l, extra)) = next(&mut pos) {
        return Err(syntax(l, format!("unexpected trailing content `{extra}`")));
    }

    Ok(FiniteRing::from_tables(name, add, mul, zero, one, None)?)
}

/// Render a ring back into the table file format. `parse_table_file` on
/// the output reproduces the same tables, designated elements and name
/// (element display names are not part of the format).
pub fn print_table_file(ring: &FiniteRing) -> String {
    let n = ring.order();
    let mut out = String::new();
    out.push_str(&format!("ring {} order {n}\n", ring.name()));
    out.push_str("add\n");
    for a in 0..n {
        let row: Vec<String> = (0..n)
            .map(|b| ring.add(a as Elem, b as Elem).to_string())
            .collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out.push_str("mul\n");
    for a in 0..n {
        let row: Vec<String> = (0..n)
            .map(|b| ring.mul(a as Elem, b as Elem).to_string())
            .collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out.push_str(&format!("zero {}\n", ring.zero()));
    out.push_str(&format!("one {}\n", ring.one()));
    out
}
