use crate::pattern::lehmer_rank;
use crate::{
    binomial, factorial, DensityError, DensityReport, Estimator, Pattern, EXACT_BUDGET,
};
use latin_core::{seed::split_seed, LatinSquare};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

/// Samples handled per seeded chunk. Chunking makes parallel Monte Carlo
/// runs independent of the thread count: every chunk derives its generator
/// from the chunk index alone and the integer tallies add up in any order.
const CHUNK: u64 = 65_536;

/// Number of (row subset, column subset) pairs the density denominator
/// counts: C(n, k) * C(n, l).
pub fn subsets_denominator(n: usize, k: usize, l: usize) -> u128 {
    binomial(n, k) * binomial(n, l)
}

fn check_fit(square: &LatinSquare, k: usize, l: usize) -> Result<(), DensityError> {
    if k > square.n() || l > square.n() {
        return Err(DensityError::PatternTooLarge { k, l, n: square.n() });
    }
    Ok(())
}

fn check_exact_budget(n: usize, k: usize, l: usize) -> Result<(), DensityError> {
    let cells = (k * l) as u128;
    let log = (usize::BITS - (k * l - 1).leading_zeros()).max(1) as u128;
    let cost = subsets_denominator(n, k, l) * cells * log;
    if cost > EXACT_BUDGET {
        return Err(DensityError::BudgetExceeded { cost, limit: EXACT_BUDGET });
    }
    Ok(())
}

/// Calls `body` with each k-subset of 0..n in increasing order.
fn for_each_combination(n: usize, k: usize, mut body: impl FnMut(&[usize])) {
    debug_assert!(k >= 1 && k <= n);
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        body(&idx);
        let mut m = k;
        loop {
            if m == 0 {
                return;
            }
            m -= 1;
            if idx[m] != m + n - k {
                idx[m] += 1;
                for j in m + 1..k {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
    }
}

fn combination_list(n: usize, k: usize) -> Vec<usize> {
    let mut flat = Vec::new();
    for_each_combination(n, k, |c| flat.extend_from_slice(c));
    flat
}

/// Exact density of `pattern` in `square`: the fraction of increasing
/// row/column subset pairs whose submatrix orders like the pattern. Counts
/// every subset pair, so the cost guard rejects calls that would take more
/// than about `EXACT_BUDGET` operations.
pub fn density_exact(
    pattern: &Pattern,
    square: &LatinSquare,
) -> Result<DensityReport, DensityError> {
    let (k, l) = (pattern.k(), pattern.l());
    check_fit(square, k, l)?;
    check_exact_budget(square.n(), k, l)?;
    let n = square.n();

    // Cells listed by entry rank; a submatrix matches exactly when its
    // values increase strictly along this list.
    let rank_cells: Vec<(usize, usize)> = pattern
        .positions_by_rank()
        .into_iter()
        .map(|p| (p / l, p % l))
        .collect();

    let cols = combination_list(n, l);
    let mut matches: u128 = 0;
    for_each_combination(n, k, |rows| {
        for cs in cols.chunks_exact(l) {
            let mut prev = 0u16;
            let mut ok = true;
            for &(s, t) in &rank_cells {
                let v = square.value(rows[s], cs[t]);
                if v <= prev {
                    ok = false;
                    break;
                }
                prev = v;
            }
            matches += ok as u128;
        }
    });

    let value = matches as f64 / subsets_denominator(n, k, l) as f64;
    Ok(DensityReport::exact(pattern.clone(), value))
}

/// Exact match counts for every k-by-l pattern at once, indexed like
/// `enumerate_patterns(k, l)`. One sweep over all subset pairs classifies
/// each submatrix; dividing by `subsets_denominator` gives the densities.
/// Submatrices with repeated values count toward no pattern, so the counts
/// sum to at most the denominator.
pub fn count_all_patterns(
    square: &LatinSquare,
    k: usize,
    l: usize,
) -> Result<Vec<u64>, DensityError> {
    crate::check_sweep_cells(k, l)?;
    check_fit(square, k, l)?;
    check_exact_budget(square.n(), k, l)?;
    let n = square.n();
    let cells = k * l;
    let mut counts = vec![0u64; factorial(cells) as usize];
    let cols = combination_list(n, l);
    let mut values = vec![0u16; cells];
    for_each_combination(n, k, |rows| {
        for cs in cols.chunks_exact(l) {
            for (s, &r) in rows.iter().enumerate() {
                for (t, &c) in cs.iter().enumerate() {
                    values[s * l + t] = square.value(r, c);
                }
            }
            if let Some(idx) = classify(&values) {
                counts[idx] += 1;
            }
        }
    });
    Ok(counts)
}

/// Ranks the values of one submatrix and returns its pattern index, or None
/// when a value repeats (such submatrices match no pattern).
fn classify(values: &[u16]) -> Option<usize> {
    let m = values.len();
    let mut entries = [0u8; crate::MAX_PATTERN_CELLS];
    for i in 0..m {
        let mut rank = 1u8;
        for j in 0..m {
            if j != i && values[j] == values[i] {
                return None;
            }
            if values[j] < values[i] {
                rank += 1;
            }
        }
        entries[i] = rank;
    }
    Some(lehmer_rank(&entries[..m]))
}

/// Draws `k` distinct sorted indices from 0..n into `buf`.
fn draw_sorted_distinct(rng: &mut ChaCha8Rng, n: usize, buf: &mut [usize]) {
    loop {
        for slot in buf.iter_mut() {
            *slot = rng.random_range(0..n);
        }
        buf.sort_unstable();
        if buf.windows(2).all(|w| w[0] != w[1]) {
            return;
        }
    }
}

fn mc_chunks(samples: u64) -> Vec<(u64, u64)> {
    (0..samples.div_ceil(CHUNK))
        .map(|c| (c, CHUNK.min(samples - c * CHUNK)))
        .collect()
}

/// Monte Carlo density estimate: `samples` uniform subset pairs, counted in
/// seed-per-chunk blocks so the result is identical for any thread count.
pub fn density_mc(
    pattern: &Pattern,
    square: &LatinSquare,
    samples: u64,
    seed: u64,
) -> Result<DensityReport, DensityError> {
    let (k, l) = (pattern.k(), pattern.l());
    check_fit(square, k, l)?;
    assert!(samples >= 1, "need at least one sample");
    let rank_cells: Vec<(usize, usize)> = pattern
        .positions_by_rank()
        .into_iter()
        .map(|p| (p / l, p % l))
        .collect();
    let n = square.n();

    let hits: u64 = mc_chunks(samples)
        .into_par_iter()
        .map(|(chunk, count)| {
            let mut rng = ChaCha8Rng::seed_from_u64(split_seed(seed, chunk));
            let mut rows = vec![0usize; k];
            let mut cols = vec![0usize; l];
            let mut hits = 0u64;
            for _ in 0..count {
                draw_sorted_distinct(&mut rng, n, &mut rows);
                draw_sorted_distinct(&mut rng, n, &mut cols);
                let mut prev = 0u16;
                let mut ok = true;
                for &(s, t) in &rank_cells {
                    let v = square.value(rows[s], cols[t]);
                    if v <= prev {
                        ok = false;
                        break;
                    }
                    prev = v;
                }
                hits += ok as u64;
            }
            hits
        })
        .sum();

    Ok(DensityReport::monte_carlo(
        pattern.clone(),
        hits as f64 / samples as f64,
        samples,
    ))
}

/// Monte Carlo match counts for every k-by-l pattern from one shared stream
/// of subset samples. Indexing follows `enumerate_patterns(k, l)`; divide by
/// `samples` for the estimates.
pub fn sample_pattern_counts_square(
    square: &LatinSquare,
    k: usize,
    l: usize,
    samples: u64,
    seed: u64,
) -> Result<Vec<u64>, DensityError> {
    crate::check_sweep_cells(k, l)?;
    check_fit(square, k, l)?;
    assert!(samples >= 1, "need at least one sample");
    let n = square.n();
    let cells = k * l;
    let buckets = factorial(cells) as usize;

    let counts = mc_chunks(samples)
        .into_par_iter()
        .map(|(chunk, count)| {
            let mut rng = ChaCha8Rng::seed_from_u64(split_seed(seed, chunk));
            let mut rows = vec![0usize; k];
            let mut cols = vec![0usize; l];
            let mut values = vec![0u16; cells];
            let mut counts = vec![0u64; buckets];
            for _ in 0..count {
                draw_sorted_distinct(&mut rng, n, &mut rows);
                draw_sorted_distinct(&mut rng, n, &mut cols);
                for (s, &r) in rows.iter().enumerate() {
                    for (t, &c) in cols.iter().enumerate() {
                        values[s * l + t] = square.value(r, c);
                    }
                }
                if let Some(idx) = classify(&values) {
                    counts[idx] += 1;
                }
            }
            counts
        })
        .reduce(
            || vec![0u64; buckets],
            |mut a, b| {
                for (x, y) in a.iter_mut().zip(b) {
                    *x += y;
                }
                a
            },
        );
    Ok(counts)
}

/// Density reports for every k-by-l pattern of a square, exactly or by
/// Monte Carlo according to `how`.
pub fn density_vector_square(
    square: &LatinSquare,
    k: usize,
    l: usize,
    how: Estimator,
) -> Result<Vec<DensityReport>, DensityError> {
    crate::check_sweep_cells(k, l)?;
    let patterns = crate::enumerate_patterns(k, l)?;
    match how {
        Estimator::Exact => {
            let counts = count_all_patterns(square, k, l)?;
            let denom = subsets_denominator(square.n(), k, l) as f64;
            Ok(patterns
                .into_iter()
                .zip(counts)
                .map(|(p, c)| DensityReport::exact(p, c as f64 / denom))
                .collect())
        }
        Estimator::MonteCarlo { samples, seed } => {
            let counts = sample_pattern_counts_square(square, k, l, samples, seed)?;
            Ok(patterns
                .into_iter()
                .zip(counts)
                .map(|(p, c)| DensityReport::monte_carlo(p, c as f64 / samples as f64, samples))
                .collect())
        }
    }
}
