use crate::CutError;
use latinon_core::StepBigraphon;

/// Largest vertex count the exact assignment sum will take on.
const VERTEX_LIMIT: usize = 8;

/// An oriented graph whose edges carry indices into a tuple of bigraphons.
/// Edges are ordered pairs; self-loops are rejected at construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledDigraph {
    vertices: usize,
    edges: Vec<(usize, usize, usize)>,
}

impl LabeledDigraph {
    /// `edges` holds (tail, head, label) triples with endpoints below
    /// `vertices`.
    pub fn new(vertices: usize, edges: Vec<(usize, usize, usize)>) -> Self {
        for &(u, v, _) in &edges {
            assert!(u < vertices && v < vertices, "edge ({u}, {v}) out of range");
            assert!(u != v, "self-loop at vertex {u}");
        }
        LabeledDigraph { vertices, edges }
    }

    pub fn vertices(&self) -> usize {
        self.vertices
    }

    pub fn edges(&self) -> &[(usize, usize, usize)] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }
}

/// Exact homomorphism density of a labeled oriented graph in a tuple of step
/// bigraphons sharing one ground partition: the sum over all assignments of
/// vertices to cells of the product of cell lengths times the product, over
/// edges, of the bigraphon named by the edge's label evaluated at the
/// endpoint cells.
///
/// For [0,1]-valued tuples that are entrywise within cut-norm distance ε,
/// densities move by at most ε times the edge count, which is what makes
/// this quantity stable under the regularity machinery.
pub fn hom_density_tuple(f: &LabeledDigraph, ws: &[StepBigraphon]) -> Result<f64, CutError> {
    if f.vertices > VERTEX_LIMIT {
        return Err(CutError::TooManyVertices { got: f.vertices, limit: VERTEX_LIMIT });
    }
    for &(_, _, label) in &f.edges {
        if label >= ws.len() {
            return Err(CutError::PartitionMismatch {
                what: format!("edge label {label} against a tuple of length {}", ws.len()),
            });
        }
    }
    let Some(first) = ws.first() else {
        return Ok(1.0);
    };
    let ground = first.rows();
    for w in ws {
        if w.rows() != ground || w.cols() != ground {
            return Err(CutError::PartitionMismatch {
                what: "ground partitions of the bigraphon tuple".into(),
            });
        }
    }
    if f.vertices == 0 {
        return Ok(1.0);
    }

    let cells = ground.cells();
    let lengths: Vec<f64> = ground.lengths();
    let mut assign = vec![0usize; f.vertices];
    let mut total = 0.0f64;
    loop {
        let mut weight: f64 = assign.iter().map(|&c| lengths[c]).product();
        for &(u, v, label) in &f.edges {
            if weight == 0.0 {
                break;
            }
            weight *= ws[label].value(assign[u], assign[v]);
        }
        total += weight;
        let mut pos = 0;
        loop {
            assign[pos] += 1;
            if assign[pos] < cells {
                break;
            }
            assign[pos] = 0;
            pos += 1;
            if pos == f.vertices {
                return Ok(total);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cutnorm::{bigraphon_difference, cutnorm_step, CutMode};
    use latinon_core::IntervalPartition;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn constant(p: f64, cells: usize) -> StepBigraphon {
        let part = IntervalPartition::equal(cells);
        StepBigraphon::new(part.clone(), part, vec![p; cells * cells]).unwrap()
    }

    #[test]
    fn single_edge_on_a_constant_recovers_the_constant() {
        let part = IntervalPartition::from_lengths(&[0.3, 0.7]).unwrap();
        let w = StepBigraphon::new(part.clone(), part, vec![0.37; 4]).unwrap();
        let f = LabeledDigraph::new(2, vec![(0, 1, 0)]);
        let t = hom_density_tuple(&f, &[w]).unwrap();
        assert!((t - 0.37).abs() < 1e-12);
    }

    #[test]
    fn alternating_four_cycle_multiplies_the_constants() {
        let f = LabeledDigraph::new(4, vec![(0, 1, 0), (1, 2, 1), (2, 3, 0), (3, 0, 1)]);
        let t = hom_density_tuple(&f, &[constant(0.5, 3), constant(0.25, 3)]).unwrap();
        assert!((t - (0.5 * 0.25f64).powi(2)).abs() < 1e-12);
    }

    #[test]
    fn edgeless_graphs_and_empty_tuples_have_density_one() {
        let f = LabeledDigraph::new(3, vec![]);
        assert_eq!(hom_density_tuple(&f, &[constant(0.9, 2)]).unwrap(), 1.0);
        assert_eq!(hom_density_tuple(&f, &[]).unwrap(), 1.0);
    }

    #[test]
    fn close_tuples_have_close_densities() {
        // densities drift by at most the edge count times the largest
        // entrywise cut-norm distance
        let part = IntervalPartition::equal(5);
        let f = LabeledDigraph::new(3, vec![(0, 1, 0), (1, 2, 1), (0, 2, 0)]);
        for seed in 0..5u64 {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut random = || -> StepBigraphon {
                let values: Vec<f64> = (0..25).map(|_| rng.random::<f64>()).collect();
                StepBigraphon::new(part.clone(), part.clone(), values).unwrap()
            };
            let us = [random(), random()];
            let ws = [random(), random()];
            let mut eps = 0.0f64;
            for (u, w) in us.iter().zip(&ws) {
                let diff = bigraphon_difference(u, w).unwrap();
                eps = eps.max(cutnorm_step(&diff, CutMode::Exact, 0).unwrap().value);
            }
            let tu = hom_density_tuple(&f, &us).unwrap();
            let tw = hom_density_tuple(&f, &ws).unwrap();
            assert!(
                (tu - tw).abs() <= eps * f.edge_count() as f64 + 1e-12,
                "seed {seed}: |{tu} - {tw}| > {eps} * 3"
            );
        }
    }

    #[test]
    fn oversized_graphs_are_rejected() {
        let f = LabeledDigraph::new(9, vec![]);
        assert_eq!(
            hom_density_tuple(&f, &[constant(0.5, 2)]),
            Err(CutError::TooManyVertices { got: 9, limit: 8 })
        );
    }

    #[test]
    fn mismatched_ground_partitions_are_rejected() {
        let f = LabeledDigraph::new(2, vec![(0, 1, 1)]);
        assert!(matches!(
            hom_density_tuple(&f, &[constant(0.5, 2), constant(0.5, 3)]),
            Err(CutError::PartitionMismatch { .. })
        ));
    }
}
