//! Plain text square format: the order on the first line, then one row of
//! space-separated symbols per line. Blank lines and trailing whitespace are
//! tolerated.

use thiserror::Error;

use crate::{LatinError, LatinSquare};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseLsError {
    #[error("line {line}: expected an integer, found {found:?}")]
    Syntax { line: usize, found: String },
    #[error("expected {expected} rows, found {found}")]
    RowCount { expected: usize, found: usize },
    #[error(transparent)]
    Latin(#[from] LatinError),
}

/// Parses the text format and validates the Latin property.
pub fn parse_ls(text: &str) -> Result<LatinSquare, ParseLsError> {
    let mut lines = text
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty());
    let (line_no, header) = lines.next().ok_or(ParseLsError::RowCount {
        expected: 1,
        found: 0,
    })?;
    let n: usize = header
        .trim()
        .parse()
        .map_err(|_| ParseLsError::Syntax {
            line: line_no + 1,
            found: header.trim().to_string(),
        })?;
    let mut rows = Vec::with_capacity(n);
    for (line_no, line) in lines.by_ref().take(n) {
        let row = line
            .split_whitespace()
            .map(|tok| {
                tok.parse::<u16>().map_err(|_| ParseLsError::Syntax {
                    line: line_no + 1,
                    found: tok.to_string(),
                })
            })
            .collect::<Result<Vec<u16>, _>>()?;
        rows.push(row);
    }
    if rows.len() != n {
        return Err(ParseLsError::RowCount {
            expected: n,
            found: rows.len(),
        });
    }
    Ok(LatinSquare::from_rows(&rows)?)
}
