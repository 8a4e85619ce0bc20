//! Deterministic Latin square families and symmetry transforms.
//!
//! The defining formulas below work with 0-based coordinates and symbols
//! `0..n-1`; the constructors shift symbols to `1..=n` at the end.

use crate::{LatinError, LatinSquare};

/// The cyclic square `L(r, c) = (r + c) mod n`.
pub fn gen_cyclic(n: usize) -> LatinSquare {
    assert!(n >= 1, "order must be positive");
    LatinSquare::from_fn(n, |r, c| ((r + c) % n) as u16 + 1).expect("cyclic square is Latin")
}

/// The parity-alternating square of even order:
/// `H(r, c) = (r + c) mod n` when `r + c` is even, `(-r - c) mod n` when odd.
///
/// # Errors
/// `OddOrder` when `n` is odd.
pub fn gen_parity_h(n: usize) -> Result<LatinSquare, LatinError> {
    if !n.is_multiple_of(2) {
        return Err(LatinError::OddOrder { n });
    }
    LatinSquare::from_fn(n, |r, c| {
        let s = r + c;
        let v = if s % 2 == 0 { s % n } else { (2 * n - s % n) % n };
        v as u16 + 1
    })
}

/// Row-block offsets for the two three-block squares built by
/// [`gen_swap_pair`]. Entry `(a, b)` is the symbol residue class used on
/// block `(I_a, I_b)`.
const J_OFFSETS: [[usize; 3]; 3] = [[0, 1, 2], [1, 2, 0], [2, 0, 1]];
const K_OFFSETS: [[usize; 3]; 3] = [[0, 2, 1], [1, 0, 2], [2, 1, 0]];

fn three_block_square(n: usize, offsets: &[[usize; 3]; 3]) -> LatinSquare {
    let m = n / 3;
    LatinSquare::from_fn(n, |r, c| {
        let (a, b) = (r / m, c / m);
        let v = (3 * ((r % m) + (c % m)) + offsets[a][b]) % n;
        v as u16 + 1
    })
    .expect("three-block square is Latin")
}

/// The pair of order-`n` squares that agree block-wise up to the assignment
/// of symbol residue classes: both split rows, columns and symbols into
/// thirds, place `3(r* + c*) + off mod n` on block `(I_a, I_b)`, and differ
/// only in which block gets which offset.
///
/// # Errors
/// `NotDivisibleBy3` when `3 ∤ n`.
pub fn gen_swap_pair(n: usize) -> Result<(LatinSquare, LatinSquare), LatinError> {
    if !n.is_multiple_of(3) || n == 0 {
        return Err(LatinError::NotDivisibleBy3 { n });
    }
    Ok((
        three_block_square(n, &J_OFFSETS),
        three_block_square(n, &K_OFFSETS),
    ))
}

/// The very local square of order `n = k²`: with 1-based block coordinates
/// `i, j ∈ [k]` and in-block coordinates `x, y ∈ [k]`,
/// `C((i-1)k + x, (j-1)k + y) = i + j + (x + y - 2)k mod n`.
pub fn gen_very_local(k: usize) -> LatinSquare {
    assert!(k >= 1, "block size must be positive");
    let n = k * k;
    LatinSquare::from_fn(n, |r, c| {
        let (i, x) = (r / k + 1, r % k + 1);
        let (j, y) = (c / k + 1, c % k + 1);
        let v = (i + j + (x + y - 2) * k) % n;
        v as u16 + 1
    })
    .expect("very local square is Latin")
}

/// Enumerates every Latin square of order `n` by backtracking, in
/// lexicographic cell order.
///
/// # Panics
/// Panics if `n > 5`; the counts grow too fast beyond that.
pub fn enumerate_all(n: usize) -> Vec<LatinSquare> {
    assert!(n <= 5, "enumeration is only supported up to order 5");
    let mut out = Vec::new();
    let mut cells = vec![0u16; n * n];
    let mut row_used = vec![vec![false; n + 1]; n];
    let mut col_used = vec![vec![false; n + 1]; n];
    fn fill(
        pos: usize,
        n: usize,
        cells: &mut Vec<u16>,
        row_used: &mut [Vec<bool>],
        col_used: &mut [Vec<bool>],
        out: &mut Vec<LatinSquare>,
    ) {
        if pos == n * n {
            out.push(LatinSquare::from_parts_unchecked(n, cells.clone()));
            return;
        }
        let (r, c) = (pos / n, pos % n);
        for v in 1..=n as u16 {
            if !row_used[r][v as usize] && !col_used[c][v as usize] {
                row_used[r][v as usize] = true;
                col_used[c][v as usize] = true;
                cells[pos] = v;
                fill(pos + 1, n, cells, row_used, col_used, out);
                row_used[r][v as usize] = false;
                col_used[c][v as usize] = false;
            }
        }
    }
    fill(0, n, &mut cells, &mut row_used, &mut col_used, &mut out);
    out
}

/// The transpose `Lᵀ(r, c) = L(c, r)`.
pub fn transpose(l: &LatinSquare) -> LatinSquare {
    let n = l.n();
    let mut cells = vec![0u16; n * n];
    for r in 0..n {
        for c in 0..n {
            cells[r * n + c] = l.value(c, r);
        }
    }
    LatinSquare::from_parts_unchecked(n, cells)
}

/// Swaps the column and symbol roles: `L'(r, v) = c` where `L(r, c) = v`.
/// Each row of the result is the inverse of the corresponding row
/// permutation.
pub fn column_value_swap(l: &LatinSquare) -> LatinSquare {
    let n = l.n();
    let mut cells = vec![0u16; n * n];
    for r in 0..n {
        for c in 0..n {
            let v = l.value(r, c) as usize;
            cells[r * n + (v - 1)] = c as u16 + 1;
        }
    }
    LatinSquare::from_parts_unchecked(n, cells)
}
