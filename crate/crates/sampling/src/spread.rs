//! Exact ε-spread testing for value multisets.
//!
//! A multiset S is ε-spread when every interval I ⊆ [0,1] holds within ε·|S|
//! of its fair share: |I∩S| = (λ(I)±ε)|S|. Both sides of the discrepancy are
//! monotone between sample points, so the supremum over all intervals is
//! attained either on a closed interval with both endpoints at sample values
//! (too many points) or on an open interval between sample values or domain
//! edges (too few points). Scanning those finitely many candidates with a
//! running prefix maximum gives the exact deviation in O(N log N).

/// Outcome of a spread check. `deviation` is the exact supremum over
/// intervals I of ||I∩S|/|S| − λ(I)|, attained on `worst_interval`, which is
/// closed when `over_dense` (too many points inside) and open otherwise.
/// The multiset is ε-spread exactly when deviation ≤ ε.
#[derive(Clone, Debug)]
pub struct SpreadReport {
    pub spread: bool,
    pub epsilon: f64,
    pub deviation: f64,
    pub worst_interval: (f64, f64),
    pub over_dense: bool,
}

/// Checks whether the multiset is ε-spread and reports the extremal interval.
pub fn spread_check(samples: &[f64], epsilon: f64) -> SpreadReport {
    assert!(epsilon >= 0.0, "the spread tolerance is nonnegative");
    assert!(
        samples.iter().all(|v| (0.0..=1.0).contains(v)),
        "samples live in [0,1]"
    );
    if samples.is_empty() {
        return SpreadReport {
            spread: true,
            epsilon,
            deviation: 0.0,
            worst_interval: (0.0, 0.0),
            over_dense: false,
        };
    }

    let mut sorted = samples.to_vec();
    sorted.sort_by(f64::total_cmp);
    let n = sorted.len() as f64;

    // Unique values with the counts strictly below and up to each value.
    let mut vals = Vec::new();
    let mut below = Vec::new();
    let mut through = Vec::new();
    let mut i = 0;
    while i < sorted.len() {
        let mut j = i;
        while j < sorted.len() && sorted[j] == sorted[i] {
            j += 1;
        }
        vals.push(sorted[i]);
        below.push(i as f64 / n);
        through.push(j as f64 / n);
        i = j;
    }
    let m = vals.len();

    // Over-dense: closed [v_a, v_b] with a ≤ b has margin
    // (through_b − v_b) + (v_a − below_a); the two terms split by endpoint.
    let mut best_up = f64::NEG_INFINITY;
    let mut up_interval = (0.0, 0.0);
    let mut lead = f64::NEG_INFINITY;
    let mut lead_at = 0;
    for b in 0..m {
        let left = vals[b] - below[b];
        if left > lead {
            lead = left;
            lead_at = b;
        }
        let margin = lead + (through[b] - vals[b]);
        if margin > best_up {
            best_up = margin;
            up_interval = (vals[lead_at], vals[b]);
        }
    }

    // Under-dense: open (v_a, v_b) with a < b has margin
    // (v_b − below_b) + (through_a − v_a), with the domain edges as
    // sentinel endpoints carrying zero terms.
    let mut best_down = f64::NEG_INFINITY;
    let mut down_interval = (0.0, 0.0);
    let edge = |idx: usize| {
        if idx == 0 {
            0.0
        } else if idx == m + 1 {
            1.0
        } else {
            vals[idx - 1]
        }
    };
    lead = 0.0;
    lead_at = 0;
    for b in 1..=m + 1 {
        let right = if b == m + 1 { 0.0 } else { vals[b - 1] - below[b - 1] };
        let margin = lead + right;
        if margin > best_down {
            best_down = margin;
            down_interval = (edge(lead_at), edge(b));
        }
        if b <= m {
            let left = through[b - 1] - vals[b - 1];
            if left > lead {
                lead = left;
                lead_at = b;
            }
        }
    }

    let over_dense = best_up >= best_down;
    let deviation = if over_dense { best_up } else { best_down };
    SpreadReport {
        spread: deviation <= epsilon,
        epsilon,
        deviation,
        worst_interval: if over_dense { up_interval } else { down_interval },
        over_dense,
    }
}
