//! Cross-checks of the density computations against independent recounts
//! and the structural identities densities must satisfy.

use density::{
    count_all_patterns, density_exact, enumerate_patterns, step_density_exact,
    subsets_denominator, Pattern,
};
use latin_core::{enumerate_all, gen_cyclic, gen_random_uniform, transpose, LatinSquare};
use latinon_core::represent;

/// Recounts a 2x2 pattern with bare nested loops, independent of the
/// combination machinery in the crate.
fn brute_force_2x2(pattern: &Pattern, square: &LatinSquare) -> f64 {
    let n = square.n();
    let e = pattern.entries();
    let mut hits = 0u64;
    let mut total = 0u64;
    for r1 in 0..n {
        for r2 in r1 + 1..n {
            for c1 in 0..n {
                for c2 in c1 + 1..n {
                    total += 1;
                    let vals = [
                        square.value(r1, c1),
                        square.value(r1, c2),
                        square.value(r2, c1),
                        square.value(r2, c2),
                    ];
                    let ranks: Vec<u8> = vals
                        .iter()
                        .map(|v| vals.iter().filter(|w| *w < v).count() as u8 + 1)
                        .collect();
                    let distinct = (0..4).all(|i| (0..4).all(|j| i == j || vals[i] != vals[j]));
                    hits += (distinct && ranks == e) as u64;
                }
            }
        }
    }
    hits as f64 / total as f64
}

#[test]
fn exact_counts_match_a_brute_force_recount() {
    let squares = [gen_cyclic(6), gen_random_uniform(7, 42, 2000)];
    for square in &squares {
        for pattern in enumerate_patterns(2, 2).unwrap().iter().take(8) {
            let direct = density_exact(pattern, square).unwrap().value;
            let brute = brute_force_2x2(pattern, square);
            assert_eq!(direct, brute, "pattern {pattern}");
        }
    }
}

#[test]
fn transpose_symmetry_over_all_order_four_squares() {
    let patterns = enumerate_patterns(2, 2).unwrap();
    for square in enumerate_all(4) {
        let t = transpose(&square);
        for p in &patterns {
            let d = density_exact(p, &square).unwrap().value;
            let dt = density_exact(&p.transpose(), &t).unwrap().value;
            assert_eq!(d, dt);
        }
    }
}

#[test]
fn pattern_densities_sum_below_one_and_climb_with_order() {
    // Submatrices with repeated symbols match no pattern, so the pattern
    // densities sum below 1; the shortfall fades as the order grows.
    let mut previous = 0.0;
    for n in [8, 16, 32, 64] {
        let counts = count_all_patterns(&gen_cyclic(n), 2, 2).unwrap();
        let total: u64 = counts.iter().sum();
        let sum = total as f64 / subsets_denominator(n, 2, 2) as f64;
        assert!(sum < 1.0, "n = {n}: sum {sum}");
        assert!(sum > previous, "n = {n}: sum {sum} after {previous}");
        previous = sum;
    }
    assert!(previous > 0.9);
}

#[test]
fn representation_error_bound_holds_across_small_orders() {
    // |t(A, represent(L)) - t(A, L)| <= 2(k+l)^2/n, checked exhaustively
    // over the squares of orders up to 5 and over generated and uniformly
    // sampled squares of orders 6 through 8.
    let patterns = enumerate_patterns(2, 2).unwrap();
    let mut squares: Vec<LatinSquare> = Vec::new();
    for n in 2..=5 {
        squares.extend(enumerate_all(n));
    }
    for n in 6..=8 {
        squares.push(gen_cyclic(n));
        for seed in 0..3 {
            squares.push(gen_random_uniform(n, seed, (n * n * n) as u64));
        }
    }
    let mut worst = 0.0f64;
    for square in &squares {
        let n = square.n() as f64;
        let w = represent(square).unwrap();
        let bound = 2.0 * 16.0 / n;
        for p in &patterns {
            let sq = density_exact(p, square).unwrap().value;
            let st = step_density_exact(p, &w).unwrap().value;
            let gap = (sq - st).abs();
            assert!(gap <= bound, "pattern {p}, n = {n}: gap {gap} > {bound}");
            worst = worst.max(gap / bound);
        }
    }
    // The bound should not be tight to the point of numerical luck.
    assert!(worst < 1.0);
}

// Swapping columns with values inverts every row permutation of a Latin
// square, and inversions are preserved under permutation inverse, so row
// patterns cannot tell a square from its swap.  Column patterns can: for the
// three-block squares the decreasing column pair in the swapped square counts
// 9*sum_i (C(m-i,2)+C(i,2)) within-block pairs plus c*m^3 cross-block pairs,
// with c = 5 for J' and c = 4 for K' (m = n/3).  The gap (tj - tk) is
// therefore m^3 / (n*C(n,2)) = 2n/(27(n-1)), limiting to 2/27.
#[test]
fn decreasing_pair_closed_forms_at_several_orders() {
    use latin_core::{column_value_swap, gen_swap_pair};
    let row = Pattern::parse("2,1").unwrap();
    let col = Pattern::parse("2;1").unwrap();
    for n in [6usize, 15, 30, 60] {
        let m = n / 3;
        let (j, k) = gen_swap_pair(n).unwrap();
        let js = column_value_swap(&j);
        let ks = column_value_swap(&k);

        assert_eq!(
            density_exact(&row, &js).unwrap().value,
            density_exact(&row, &j).unwrap().value,
            "row pattern not swap-invariant at n = {n}"
        );

        let tj = density_exact(&col, &js).unwrap().value;
        let tk = density_exact(&col, &ks).unwrap().value;
        let tri: u128 = (0..m as u64)
            .map(|i| {
                let down = (m as u64 - i) * (m as u64 - i).saturating_sub(1) / 2;
                let up = i * i.saturating_sub(1) / 2;
                (down + up) as u128
            })
            .sum();
        let m3 = (m * m * m) as u128;
        let denom = (n * n * (n - 1) / 2) as f64;
        let expect_j = (9 * tri + 5 * m3) as f64 / denom;
        let expect_k = (9 * tri + 4 * m3) as f64 / denom;
        assert!((tj - expect_j).abs() < 1e-12, "J' at n = {n}");
        assert!((tk - expect_k).abs() < 1e-12, "K' at n = {n}");

        let gap = 2.0 * n as f64 / (27.0 * (n as f64 - 1.0));
        assert!(((tj - tk) - gap).abs() < 1e-12, "gap at n = {n}");
    }
}
