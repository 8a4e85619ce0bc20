//! Point-evaluation subsampling of step bigraphons.

use latinon_core::{IntervalPartition, LatinonError, StepBigraphon};

/// The step bigraphon on k equal cells per side whose (i, j) value is `u`
/// evaluated at the point (s[i], t[j]).
pub fn subsample_bigraphon(
    u: &StepBigraphon,
    s: &[f64],
    t: &[f64],
) -> Result<StepBigraphon, LatinonError> {
    assert_eq!(s.len(), t.len(), "point sequences must share a length");
    assert!(!s.is_empty(), "subsampling needs at least one point per side");
    assert!(
        s.iter().chain(t).all(|v| (0.0..=1.0).contains(v)),
        "sample points live in [0,1]"
    );
    let k = s.len();
    let mut values = Vec::with_capacity(k * k);
    for &x in s {
        let i = u.rows().cell_of(x);
        for &y in t {
            values.push(u.value(i, u.cols().cell_of(y)));
        }
    }
    StepBigraphon::new(IntervalPartition::equal(k), IntervalPartition::equal(k), values)
}
