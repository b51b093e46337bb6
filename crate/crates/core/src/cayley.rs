//! Plain-text Cayley tables.
//!
//! Line 1 holds the order `n`; the next `n` lines hold the rows of the
//! multiplication table as whitespace-separated `0..n` indices. Blank lines
//! and everything after a `#` are ignored.

use thiserror::Error;

use crate::group::{GroupError, GroupTable, Validation};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CayleyError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("table order {order} exceeds the cap of {cap}")]
    TooLarge { order: u64, cap: usize },
    #[error(transparent)]
    Group(#[from] GroupError),
}

fn parse_err(line: usize, message: impl Into<String>) -> CayleyError {
    CayleyError::Parse {
        line,
        message: message.into(),
    }
}

/// Parses the rows of a table without checking the group axioms.
pub fn parse_cayley_rows(text: &str, cap: usize) -> Result<Vec<Vec<usize>>, CayleyError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, line)| (i + 1, line.split('#').next().unwrap_or("").trim()))
        .filter(|(_, line)| !line.is_empty());
    let (first, header) = lines.next().ok_or_else(|| parse_err(1, "missing table order"))?;
    let n: u64 = header
        .parse()
        .map_err(|_| parse_err(first, format!("expected the table order, found `{header}`")))?;
    if n == 0 {
        return Err(parse_err(first, "table order must be at least 1"));
    }
    if n > cap as u64 {
        return Err(CayleyError::TooLarge { order: n, cap });
    }
    let n = n as usize;
    let mut rows = Vec::with_capacity(n);
    for (line, content) in lines {
        if rows.len() == n {
            return Err(parse_err(line, "more rows than the declared order"));
        }
        let mut row = Vec::with_capacity(n);
        for token in content.split_whitespace() {
            let value: usize = token
                .parse()
                .map_err(|_| parse_err(line, format!("`{token}` is not an element index")))?;
            if value >= n {
                return Err(parse_err(line, format!("index {value} out of range for order {n}")));
            }
            if row.len() == n {
                return Err(parse_err(line, format!("row has more than {n} entries")));
            }
            row.push(value);
        }
        if row.len() != n {
            return Err(parse_err(line, format!("row has {} entries, expected {n}", row.len())));
        }
        rows.push(row);
    }
    if rows.len() != n {
        return Err(parse_err(
            text.lines().count().max(1),
            format!("found {} rows, expected {n}", rows.len()),
        ));
    }
    Ok(rows)
}

/// Parses and validates a Cayley table.
pub fn read_cayley_table(
    text: &str,
    label: impl Into<String>,
    cap: usize,
    validation: Validation,
) -> Result<GroupTable, CayleyError> {
    let rows = parse_cayley_rows(text, cap)?;
    Ok(GroupTable::from_multiplication_table_with(&rows, label, validation)?)
}

/// Renders `g` in the format read by [`read_cayley_table`].
pub fn write_cayley_table(g: &GroupTable) -> String {
    let width = g.order().saturating_sub(1).to_string().len();
    let mut out = format!("# {}\n{}\n", g.label().replace(['\n', '\r'], " "), g.order());
    for row in g.rows() {
        let cells: Vec<String> = row.iter().map(|v| format!("{v:>width$}")).collect();
        out.push_str(&cells.join(" "));
        out.push('\n');
    }
    out
}
