use crate::cutnorm::{exact_masses, local_masses};
use crate::{CutNormResult, EXACT_SIDE_LIMIT};

/// Cut norm of the disagreement between the natural order on M equal blocks
/// and the order after permuting blocks by `pi`.
///
/// The comparison function is 1 exactly when the first argument precedes the
/// second, so block pair (i, j) with i ≠ j contributes mass
/// ([i<j] − [pi(i)<pi(j)]) / M². Each block is carried onto its image by a
/// translation, which preserves relative order inside the block, so the two
/// diagonal half-cell triangles cancel exactly and diagonal cells contribute
/// zero.
pub fn order_displacement(pi: &[usize]) -> CutNormResult {
    let m = pi.len();
    assert!(m >= 1, "a block permutation needs at least one block");
    let mut seen = vec![false; m];
    for &p in pi {
        assert!(p < m && !seen[p], "not a permutation of 0..{m}");
        seen[p] = true;
    }
    let scale = 1.0 / (m * m) as f64;
    let mut w = vec![0.0f64; m * m];
    for i in 0..m {
        for j in 0..m {
            if i != j {
                let before = (i < j) as i32 - (pi[i] < pi[j]) as i32;
                w[i * m + j] = before as f64 * scale;
            }
        }
    }
    if m <= EXACT_SIDE_LIMIT {
        let (value, rows, cols) = exact_masses(&w, m, m).expect("side within exact limit");
        CutNormResult::plain(value, rows, cols, true)
    } else {
        let (value, rows, cols) = local_masses(&w, m, m, 0);
        CutNormResult::plain(value, rows, cols, false)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_force(pi: &[usize]) -> f64 {
        let m = pi.len();
        let scale = 1.0 / (m * m) as f64;
        let mut best = 0.0f64;
        for rows_mask in 0..1u32 << m {
            for cols_mask in 0..1u32 << m {
                let mut total = 0.0;
                for i in 0..m {
                    if rows_mask & (1 << i) == 0 {
                        continue;
                    }
                    for j in 0..m {
                        if i != j && cols_mask & (1 << j) != 0 {
                            total +=
                                ((i < j) as i32 - (pi[i] < pi[j]) as i32) as f64 * scale;
                        }
                    }
                }
                best = best.max(total.abs());
            }
        }
        best
    }

    #[test]
    fn identity_has_zero_displacement() {
        let r = order_displacement(&[0, 1, 2, 3]);
        assert_eq!(r.value, 0.0);
        assert!(r.exact);
    }

    #[test]
    fn two_block_swap_matches_brute_force() {
        let pi = [1usize, 0];
        let r = order_displacement(&pi);
        assert_eq!(r.value, brute_force(&pi));
        assert_eq!(r.value, 0.25);
    }

    #[test]
    fn reversal_of_eight_blocks_matches_brute_force() {
        let pi: Vec<usize> = (0..8).rev().collect();
        let r = order_displacement(&pi);
        assert_eq!(r.value, brute_force(&pi));
    }

    #[test]
    fn random_permutations_match_brute_force() {
        use rand::seq::SliceRandom;
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(21);
        for _ in 0..5 {
            let mut pi: Vec<usize> = (0..7).collect();
            pi.shuffle(&mut rng);
            let r = order_displacement(&pi);
            assert!((r.value - brute_force(&pi)).abs() < 1e-15, "pi = {pi:?}");
        }
    }

    #[test]
    #[should_panic(expected = "not a permutation")]
    fn repeated_images_are_rejected() {
        order_displacement(&[0, 0, 1]);
    }
}
