//! Birack matrix files: a line holding `n`, then `n` rows of `2n` 1-indexed labels
//! forming the block `[B₁ | B₂]`.

use crate::birack::{BirackTables, FiniteBirack};
use crate::error::Error;

/// Parses a matrix file into unverified tables.
pub fn parse_matrix(text: &str) -> Result<BirackTables, Error> {
    let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'));
    let header = lines.next().ok_or_else(|| Error::BadMatrix("empty matrix file".into()))?;
    let n: usize = header
        .parse()
        .map_err(|_| Error::BadMatrix(format!("first line must be the order n, found {:?}", header)))?;
    let rows = lines
        .map(|l| {
            l.split_whitespace()
                .filter(|t| *t != "|")
                .map(|t| t.parse::<usize>().map_err(|_| Error::BadMatrix(format!("bad entry {:?}", t))))
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    BirackTables::from_block(n, &rows)
}

pub fn format_tables(tables: &BirackTables) -> String {
    let mut out = format!("{}\n", tables.n());
    for row in tables.to_block() {
        let cells: Vec<String> = row.iter().map(|e| e.to_string()).collect();
        out.push_str(&cells.join(" "));
        out.push('\n');
    }
    out
}

pub fn format_matrix(b: &FiniteBirack) -> String {
    format_tables(b.tables())
}
