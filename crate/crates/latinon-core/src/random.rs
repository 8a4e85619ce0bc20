//! Randomized valid step Latinons for experiments and property tests.

use latin_core::{gen_random_uniform, seed::split_seed};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::{validate_latinon, IntervalPartition, SemiLatinon, StepLatinon, Tensor3};

/// A randomized valid step Latinon with `m` row cells, `m` column cells, and
/// `d` value cells. Starts from a random mixture of Latin-square
/// representations of order m+1 (plus a Lebesgue smoothing component), then
/// merges one adjacent row pair and one adjacent column pair, and merges or
/// splits value cells until `d` remain. Every step preserves the marginal
/// conditions, so the result always validates. Deterministic in `seed`.
pub fn random_latinon(m: usize, d: usize, seed: u64) -> StepLatinon {
    assert!(m >= 1 && d >= 1);
    let base = m + 1;
    let mut rng = ChaCha8Rng::seed_from_u64(split_seed(seed, 0));

    let squares: Vec<_> = (1..=4u64)
        .map(|t| gen_random_uniform(base, split_seed(seed, t), (4 * base * base * base) as u64))
        .collect();
    let mut weights: Vec<f64> = (0..=squares.len()).map(|_| rng.random_range(0.05..1.0)).collect();
    let total: f64 = weights.iter().sum();
    for w in &mut weights {
        *w /= total;
    }

    let cell = 1.0 / base as f64;
    let mut alpha = vec![vec![vec![0.0f64; base]; base]; base];
    for (r, row) in alpha.iter_mut().enumerate() {
        for (c, dist) in row.iter_mut().enumerate() {
            for (t, sq) in squares.iter().enumerate() {
                dist[sq.value(r, c) as usize - 1] += weights[t];
            }
            for mass in dist.iter_mut() {
                *mass += weights[squares.len()] * cell;
            }
        }
    }
    let mut row_lengths = vec![cell; base];
    let mut col_lengths = vec![cell; base];
    let mut value_lengths = vec![cell; base];

    while row_lengths.len() > m {
        let u = rng.random_range(0..row_lengths.len() - 1);
        let (lu, lv) = (row_lengths[u], row_lengths[u + 1]);
        let merged_len = lu + lv;
        let (head, tail) = alpha.split_at_mut(u + 1);
        for (kept, dropped) in head[u].iter_mut().zip(&tail[0]) {
            for (a, &b) in kept.iter_mut().zip(dropped) {
                *a = (lu * *a + lv * b) / merged_len;
            }
        }
        alpha.remove(u + 1);
        row_lengths[u] = merged_len;
        row_lengths.remove(u + 1);
    }
    while col_lengths.len() > m {
        let u = rng.random_range(0..col_lengths.len() - 1);
        let (lu, lv) = (col_lengths[u], col_lengths[u + 1]);
        let merged_len = lu + lv;
        for row in alpha.iter_mut() {
            let (head, tail) = row.split_at_mut(u + 1);
            for (a, &b) in head[u].iter_mut().zip(&tail[0]) {
                *a = (lu * *a + lv * b) / merged_len;
            }
            row.remove(u + 1);
        }
        col_lengths[u] = merged_len;
        col_lengths.remove(u + 1);
    }
    while value_lengths.len() > d {
        let u = rng.random_range(0..value_lengths.len() - 1);
        for row in alpha.iter_mut() {
            for dist in row.iter_mut() {
                let moved = dist.remove(u + 1);
                dist[u] += moved;
            }
        }
        value_lengths[u] += value_lengths[u + 1];
        value_lengths.remove(u + 1);
    }
    while value_lengths.len() < d {
        let u = rng.random_range(0..value_lengths.len());
        let t = rng.random_range(0.25..0.75);
        for row in alpha.iter_mut() {
            for dist in row.iter_mut() {
                let mass = dist[u];
                dist[u] = t * mass;
                dist.insert(u + 1, (1.0 - t) * mass);
            }
        }
        let len = value_lengths[u];
        value_lengths[u] = t * len;
        value_lengths.insert(u + 1, (1.0 - t) * len);
    }

    let mut tensor = Tensor3::zeros(m, m, d).expect("random instances stay small");
    for (i, row) in alpha.iter().enumerate() {
        for (j, dist) in row.iter().enumerate() {
            for (k, &mass) in dist.iter().enumerate() {
                tensor.set(i, j, k, mass);
            }
        }
    }
    let semi = SemiLatinon::new(
        IntervalPartition::from_lengths(&row_lengths).expect("merged lengths sum to 1"),
        IntervalPartition::from_lengths(&col_lengths).expect("merged lengths sum to 1"),
        IntervalPartition::from_lengths(&value_lengths).expect("merged lengths sum to 1"),
        tensor,
    )
    .expect("mixtures of representations are semilatinons");
    validate_latinon(semi).expect("mixtures of representations keep their marginals")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shapes_match_the_request() {
        for m in 1..=4usize {
            for d in 1..=4usize {
                let w = random_latinon(m, d, 7);
                assert_eq!(w.rows().cells(), m);
                assert_eq!(w.cols().cells(), m);
                assert_eq!(w.values().cells(), d);
            }
        }
    }

    #[test]
    fn instances_are_deterministic_in_the_seed() {
        assert_eq!(random_latinon(3, 4, 11), random_latinon(3, 4, 11));
        assert_ne!(random_latinon(3, 4, 11), random_latinon(3, 4, 12));
    }

    #[test]
    fn many_seeds_validate() {
        for seed in 0..25u64 {
            let m = 1 + (seed as usize) % 4;
            let d = 1 + (seed as usize) % 3;
            random_latinon(m, d, seed);
        }
    }

    #[test]
    fn partitions_come_out_uneven() {
        let w = random_latinon(3, 5, 2);
        let lengths = w.rows().lengths();
        assert!(lengths.iter().any(|&l| (l - lengths[0]).abs() > 1e-9));
    }
}
