use crate::{DensityError, MAX_PATTERN_CELLS};
use std::fmt;

/// A k-by-l order pattern: entries are exactly the numbers 1..=k*l, stored
/// row-major. Entry ranks say which submatrix cell holds the smallest value,
/// the second smallest, and so on.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Pattern {
    k: usize,
    l: usize,
    entries: Vec<u8>,
}

impl Pattern {
    /// Builds a pattern from row-major entries, checking they are a
    /// permutation of 1..=k*l.
    pub fn new(k: usize, l: usize, entries: Vec<u8>) -> Result<Pattern, DensityError> {
        let cells = check_shape(k, l)?;
        if entries.len() != cells {
            return Err(DensityError::BadShape {
                want: format!("{cells} entries for a {k}x{l} pattern"),
                got: format!("{} entries", entries.len()),
            });
        }
        let mut seen = [false; MAX_PATTERN_CELLS];
        for (pos, &e) in entries.iter().enumerate() {
            if e == 0 || e as usize > cells {
                return Err(DensityError::EntryOutOfRange {
                    row: pos / l,
                    col: pos % l,
                    value: e,
                    cells,
                });
            }
            if seen[e as usize - 1] {
                return Err(DensityError::DuplicateEntry { value: e as f64 });
            }
            seen[e as usize - 1] = true;
        }
        Ok(Pattern { k, l, entries })
    }

    /// Builds a pattern from rows of entries.
    pub fn from_rows(rows: &[Vec<u8>]) -> Result<Pattern, DensityError> {
        let k = rows.len();
        let l = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != l) {
            return Err(DensityError::BadShape {
                want: format!("rows of equal length {l}"),
                got: "a ragged table".into(),
            });
        }
        Pattern::new(k, l, rows.concat())
    }

    /// Parses "1,2;3,4" style text: rows separated by semicolons, entries by
    /// commas.
    pub fn parse(text: &str) -> Result<Pattern, DensityError> {
        let mut rows = Vec::new();
        for row_text in text.split(';') {
            let row: Result<Vec<u8>, _> = row_text
                .split(',')
                .map(|t| t.trim().parse::<u8>())
                .collect();
            match row {
                Ok(r) => rows.push(r),
                Err(_) => {
                    return Err(DensityError::BadShape {
                        want: "comma-separated entries like \"1,2;3,4\"".into(),
                        got: format!("{row_text:?}"),
                    })
                }
            }
        }
        Pattern::from_rows(&rows)
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn l(&self) -> usize {
        self.l
    }

    /// Row-major entries, each in 1..=k*l.
    pub fn entries(&self) -> &[u8] {
        &self.entries
    }

    pub fn entry(&self, row: usize, col: usize) -> u8 {
        self.entries[row * self.l + col]
    }

    /// Flattened cell positions ordered by entry rank: the first element is
    /// the cell holding entry 1, the last the cell holding entry k*l.
    pub fn positions_by_rank(&self) -> Vec<usize> {
        let mut pos = vec![0usize; self.entries.len()];
        for (p, &e) in self.entries.iter().enumerate() {
            pos[e as usize - 1] = p;
        }
        pos
    }

    /// The transposed pattern: entry (i, j) moves to (j, i).
    pub fn transpose(&self) -> Pattern {
        let mut entries = vec![0u8; self.entries.len()];
        for i in 0..self.k {
            for j in 0..self.l {
                entries[j * self.k + i] = self.entries[i * self.l + j];
            }
        }
        Pattern { k: self.l, l: self.k, entries }
    }

    /// Position of this pattern in the lexicographic enumeration of all
    /// k-by-l patterns (the order `enumerate_patterns` uses).
    pub fn index(&self) -> usize {
        lehmer_rank(&self.entries)
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.k {
            if i > 0 {
                write!(f, ";")?;
            }
            for j in 0..self.l {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{}", self.entry(i, j))?;
            }
        }
        Ok(())
    }
}

fn check_shape(k: usize, l: usize) -> Result<usize, DensityError> {
    if k == 0 || l == 0 {
        return Err(DensityError::BadShape {
            want: "a pattern with at least one row and one column".into(),
            got: format!("{k}x{l}"),
        });
    }
    let cells = k * l;
    if cells > MAX_PATTERN_CELLS {
        return Err(DensityError::TooLarge { k, l, cells, limit: MAX_PATTERN_CELLS });
    }
    Ok(cells)
}

/// Replaces a table of distinct reals by their ranks: the smallest value
/// becomes 1, the next 2, and so on. Fails on a repeated value.
pub fn canonicalize(k: usize, l: usize, values: &[f64]) -> Result<Pattern, DensityError> {
    let cells = check_shape(k, l)?;
    if values.len() != cells {
        return Err(DensityError::BadShape {
            want: format!("{cells} values for a {k}x{l} table"),
            got: format!("{} values", values.len()),
        });
    }
    let mut entries = vec![0u8; cells];
    for (p, &v) in values.iter().enumerate() {
        let mut rank = 1u8;
        for (q, &w) in values.iter().enumerate() {
            if w == v && q != p {
                return Err(DensityError::DuplicateEntry { value: v });
            }
            if w < v {
                rank += 1;
            }
        }
        entries[p] = rank;
    }
    Ok(Pattern { k, l, entries })
}

/// All k-by-l patterns in lexicographic order of their flattened entries.
pub fn enumerate_patterns(k: usize, l: usize) -> Result<Vec<Pattern>, DensityError> {
    let cells = check_shape(k, l)?;
    let mut entries: Vec<u8> = (1..=cells as u8).collect();
    let mut out = Vec::with_capacity(crate::factorial(cells) as usize);
    loop {
        out.push(Pattern { k, l, entries: entries.clone() });
        if !next_permutation(&mut entries) {
            return Ok(out);
        }
    }
}

fn next_permutation(seq: &mut [u8]) -> bool {
    let n = seq.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && seq[i - 1] >= seq[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while seq[j] <= seq[i - 1] {
        j -= 1;
    }
    seq.swap(i - 1, j);
    seq[i..].reverse();
    true
}

/// Lexicographic rank of a permutation of 1..=m among all m! permutations.
pub(crate) fn lehmer_rank(entries: &[u8]) -> usize {
    let m = entries.len();
    let mut rank = 0usize;
    for i in 0..m {
        let smaller_later = entries[i + 1..].iter().filter(|&&e| e < entries[i]).count();
        rank = rank * (m - i) + smaller_later;
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonicalize_ranks_a_real_table() {
        let p = canonicalize(2, 2, &[5.0, 6.0, 4.0, 8.0]).unwrap();
        assert_eq!(p.entries(), &[2, 3, 1, 4]);
    }

    #[test]
    fn canonicalize_rejects_duplicates() {
        let err = canonicalize(2, 2, &[1.0, 3.0, 3.0, 2.0]).unwrap_err();
        assert_eq!(err, DensityError::DuplicateEntry { value: 3.0 });
    }

    #[test]
    fn canonicalize_is_idempotent_on_patterns() {
        for p in enumerate_patterns(2, 3).unwrap() {
            let vals: Vec<f64> = p.entries().iter().map(|&e| e as f64).collect();
            let again = canonicalize(2, 3, &vals).unwrap();
            assert_eq!(again, p);
        }
    }

    #[test]
    fn enumeration_is_lexicographic_and_complete() {
        let all = enumerate_patterns(2, 2).unwrap();
        assert_eq!(all.len(), 24);
        assert_eq!(all[0].entries(), &[1, 2, 3, 4]);
        assert_eq!(all[23].entries(), &[4, 3, 2, 1]);
        for w in all.windows(2) {
            assert!(w[0].entries() < w[1].entries());
        }
        let r32 = enumerate_patterns(3, 2).unwrap();
        assert_eq!(r32.len(), 720);
    }

    #[test]
    fn index_inverts_enumeration() {
        for (i, p) in enumerate_patterns(2, 2).unwrap().into_iter().enumerate() {
            assert_eq!(p.index(), i);
        }
        for (i, p) in enumerate_patterns(3, 2).unwrap().into_iter().enumerate() {
            assert_eq!(p.index(), i);
        }
    }

    #[test]
    fn new_rejects_bad_entry_sets() {
        assert!(matches!(
            Pattern::new(2, 2, vec![1, 2, 2, 4]),
            Err(DensityError::DuplicateEntry { .. })
        ));
        assert!(matches!(
            Pattern::new(2, 2, vec![1, 2, 3, 5]),
            Err(DensityError::EntryOutOfRange { .. })
        ));
        assert!(matches!(
            Pattern::new(4, 4, (1..=16).collect()),
            Err(DensityError::TooLarge { .. })
        ));
    }

    #[test]
    fn parse_and_display_round_trip() {
        let p = Pattern::parse("2,1;3,4").unwrap();
        assert_eq!(p.entries(), &[2, 1, 3, 4]);
        assert_eq!(p.to_string(), "2,1;3,4");
        assert_eq!(Pattern::parse(&p.to_string()).unwrap(), p);
        assert!(Pattern::parse("1,2;x").is_err());
    }

    #[test]
    fn positions_by_rank_orders_cells() {
        let p = Pattern::parse("2,3;1,4").unwrap();
        assert_eq!(p.positions_by_rank(), vec![2, 0, 1, 3]);
    }

    #[test]
    fn transpose_moves_entries() {
        let p = Pattern::parse("1,2,3;4,5,6").unwrap();
        let t = p.transpose();
        assert_eq!(t.k(), 3);
        assert_eq!(t.l(), 2);
        assert_eq!(t.entries(), &[1, 4, 2, 5, 3, 6]);
        assert_eq!(t.transpose(), p);
    }
}
