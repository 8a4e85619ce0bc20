use crate::cutnorm::{exact_masses, local_masses};
use crate::{CutError, EXACT_SIDE_LIMIT};
use latinon_core::StepBigraphon;

/// Output of the tuple regularity decomposition: a partition of the atoms
/// (as a class id per atom, refining the prepartition), the steppings of
/// every input over that partition, and the cut-norm errors actually
/// achieved against the guarantee `target`.
#[derive(Debug, Clone)]
pub struct RegularityResult {
    pub classes: Vec<usize>,
    pub class_count: usize,
    pub steppings: Vec<StepBigraphon>,
    pub errors: Vec<f64>,
    pub target: f64,
}

fn normalize(classes: &[usize]) -> (Vec<usize>, usize) {
    let mut map: Vec<Option<usize>> = Vec::new();
    let mut out = Vec::with_capacity(classes.len());
    let mut next = 0usize;
    for &c in classes {
        if c >= map.len() {
            map.resize(c + 1, None);
        }
        let id = *map[c].get_or_insert_with(|| {
            next += 1;
            next - 1
        });
        out.push(id);
    }
    (out, next)
}

fn square_ground(w: &StepBigraphon, atoms: usize) -> Result<(), CutError> {
    if w.rows().bounds() != w.cols().bounds() {
        return Err(CutError::PartitionMismatch {
            what: "row and column partitions (stepping needs a square ground)".into(),
        });
    }
    if w.rows().cells() != atoms {
        return Err(CutError::PartitionMismatch {
            what: format!("atom count ({} cells vs {atoms} classes)", w.rows().cells()),
        });
    }
    Ok(())
}

/// Averages a square step bigraphon over the blocks of a partition of its
/// cells, given as one class id per cell, and returns the result on the same
/// ground partition. Averaging is weighted by cell lengths, so the block
/// integrals are preserved.
pub fn stepping(w: &StepBigraphon, classes: &[usize]) -> Result<StepBigraphon, CutError> {
    let atoms = classes.len();
    square_ground(w, atoms)?;
    let (cls, count) = normalize(classes);
    let lengths = w.rows().lengths();
    let mut mass = vec![0.0f64; count];
    for i in 0..atoms {
        mass[cls[i]] += lengths[i];
    }
    let mut block = vec![0.0f64; count * count];
    for i in 0..atoms {
        for j in 0..atoms {
            block[cls[i] * count + cls[j]] += lengths[i] * lengths[j] * w.value(i, j);
        }
    }
    for a in 0..count {
        for b in 0..count {
            let denom = mass[a] * mass[b];
            block[a * count + b] = if denom > 0.0 { block[a * count + b] / denom } else { 0.0 };
        }
    }
    let values: Vec<f64> = (0..atoms)
        .flat_map(|i| (0..atoms).map(move |j| (i, j)))
        .map(|(i, j)| block[cls[i] * count + cls[j]])
        .collect();
    Ok(StepBigraphon::new(w.rows().clone(), w.cols().clone(), values)?)
}

/// Cut norm of w minus its stepping, on the mass level so signed inputs
/// never trip the bigraphon range validation.
fn stepped_gap(
    w: &StepBigraphon,
    stepped: &StepBigraphon,
) -> Result<(f64, Vec<usize>, Vec<usize>), CutError> {
    let atoms = w.rows().cells();
    let lengths = w.rows().lengths();
    let mut masses = vec![0.0f64; atoms * atoms];
    for i in 0..atoms {
        for j in 0..atoms {
            masses[i * atoms + j] = (w.value(i, j) - stepped.value(i, j)) * lengths[i] * lengths[j];
        }
    }
    if atoms <= EXACT_SIDE_LIMIT {
        exact_masses(&masses, atoms, atoms)
    } else {
        Ok(local_masses(&masses, atoms, atoms, 0))
    }
}

/// Weak regularity for a tuple of m step bigraphons on one square ground
/// partition: refines the prepartition until every input is within
/// sqrt(2m / log2 r) of its stepping in cut norm, using at most r times the
/// prepartition's class count.
///
/// Each round steps every input over the current partition, finds the worst
/// cut-norm certificate (S, T), and splits every class by membership in S
/// and in T. A split on a certificate of value v raises that input's index
/// by at least v squared, and the indices sum to at most m, so in exact
/// arithmetic the rounds and the class growth stay within the stated budget;
/// the class cap is still enforced against the inexactness of search-mode
/// certificates. Reported errors are the values actually achieved (lower
/// bounds when the atoms are too many for exact mode).
pub fn weak_regularity(
    ws: &[StepBigraphon],
    r: usize,
    prepartition: &[usize],
) -> Result<RegularityResult, CutError> {
    let atoms = prepartition.len();
    for w in ws {
        square_ground(w, atoms)?;
    }
    let m = ws.len();
    let target = if r >= 2 {
        (2.0 * m as f64 / (r as f64).log2()).sqrt()
    } else {
        f64::INFINITY
    };
    let (mut classes, pstar_count) = normalize(prepartition);
    let cap = r.saturating_mul(pstar_count);

    let mut round = 0usize;
    loop {
        let steppings: Vec<StepBigraphon> =
            ws.iter().map(|w| stepping(w, &classes)).collect::<Result<_, _>>()?;
        let mut errors = Vec::with_capacity(m);
        let mut worst: Option<(f64, Vec<usize>, Vec<usize>)> = None;
        for (w, s) in ws.iter().zip(&steppings) {
            let (value, rows, cols) = stepped_gap(w, s)?;
            if worst.as_ref().is_none_or(|(v, ..)| value > *v) {
                worst = Some((value, rows, cols));
            }
            errors.push(value);
        }
        let (_, count) = normalize(&classes);
        let done = RegularityResult {
            classes: classes.clone(),
            class_count: count,
            steppings,
            errors,
            target,
        };
        let Some((value, s_set, t_set)) = worst else {
            return Ok(done);
        };
        if value < target || round >= 64 {
            return Ok(done);
        }
        let mut in_s = vec![false; atoms];
        let mut in_t = vec![false; atoms];
        for &i in &s_set {
            in_s[i] = true;
        }
        for &j in &t_set {
            in_t[j] = true;
        }
        let keyed: Vec<usize> = (0..atoms)
            .map(|i| classes[i] * 4 + 2 * in_s[i] as usize + in_t[i] as usize)
            .collect();
        let (split, split_count) = normalize(&keyed);
        if split_count > cap || split == classes {
            return Ok(done);
        }
        classes = split;
        round += 1;
    }
}
