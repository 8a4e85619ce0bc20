//! Uniform random Latin squares via the ±1-move chain on proper and
//! improper incidence cubes.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::{gen_cyclic, LatinSquare};

/// The incidence cube `a[r][c][v] ∈ {-1, 0, 1}` with all line sums 1.
/// A proper cube encodes a Latin square; an improper cube has exactly one
/// `-1` cell.
struct Cube {
    n: usize,
    a: Vec<i8>,
    improper: Option<(usize, usize, usize)>,
}

impl Cube {
    fn from_square(l: &LatinSquare) -> Self {
        let n = l.n();
        let mut a = vec![0i8; n * n * n];
        for r in 0..n {
            for c in 0..n {
                let v = l.value(r, c) as usize - 1;
                a[(r * n + c) * n + v] = 1;
            }
        }
        Cube { n, a, improper: None }
    }

    fn get(&self, r: usize, c: usize, v: usize) -> i8 {
        self.a[(r * self.n + c) * self.n + v]
    }

    fn add(&mut self, r: usize, c: usize, v: usize, d: i8) {
        self.a[(r * self.n + c) * self.n + v] += d;
    }

    /// The one or two indices along an axis where the line holds a 1.
    fn ones<F: Fn(usize) -> i8>(&self, line: F) -> (usize, usize) {
        let mut first = usize::MAX;
        for t in 0..self.n {
            if line(t) == 1 {
                if first == usize::MAX {
                    first = t;
                } else {
                    return (first, t);
                }
            }
        }
        (first, usize::MAX)
    }

    fn pick(rng: &mut ChaCha8Rng, pair: (usize, usize)) -> usize {
        if pair.1 == usize::MAX || !rng.random::<bool>() {
            pair.0
        } else {
            pair.1
        }
    }

    /// One ±1 flip. From a proper cube the flipped zero cell is chosen
    /// uniformly; from an improper cube the flip starts at the `-1` cell and
    /// the three incident 1-cells are chosen uniformly among the two
    /// candidates on each axis.
    fn flip(&mut self, rng: &mut ChaCha8Rng) {
        let n = self.n;
        let (r, c, v) = match self.improper {
            Some(cell) => cell,
            None => {
                let r = rng.random_range(0..n);
                let c = rng.random_range(0..n);
                let mut v = rng.random_range(0..n - 1);
                let occupied = self.ones(|t| self.get(r, c, t)).0;
                if v >= occupied {
                    v += 1;
                }
                (r, c, v)
            }
        };
        let r2 = Self::pick(rng, self.ones(|t| self.get(t, c, v)));
        let c2 = Self::pick(rng, self.ones(|t| self.get(r, t, v)));
        let v2 = Self::pick(rng, self.ones(|t| self.get(r, c, t)));
        self.add(r, c, v, 1);
        self.add(r, c2, v2, 1);
        self.add(r2, c, v2, 1);
        self.add(r2, c2, v, 1);
        self.add(r, c, v2, -1);
        self.add(r, c2, v, -1);
        self.add(r2, c, v, -1);
        self.add(r2, c2, v2, -1);
        self.improper = (self.get(r2, c2, v2) == -1).then_some((r2, c2, v2));
    }

    /// One move of the square-to-square chain: a single flip, continued
    /// through improper cubes until the cube is proper again. Counting moves
    /// this way keeps the walk symmetric between squares, so its stationary
    /// distribution is uniform.
    fn step(&mut self, rng: &mut ChaCha8Rng) {
        self.flip(rng);
        while self.improper.is_some() {
            self.flip(rng);
        }
    }

    fn into_square(self) -> LatinSquare {
        let n = self.n;
        let mut cells = vec![0u16; n * n];
        for r in 0..n {
            for c in 0..n {
                let v = self.ones(|t| self.get(r, c, t)).0;
                cells[r * n + c] = v as u16 + 1;
            }
        }
        LatinSquare::from_parts_unchecked(n, cells)
    }
}

/// Runs `steps` square-to-square chain moves from the cyclic square of order
/// `n` and returns the resulting square. Deterministic in `(n, seed, steps)`.
pub fn gen_random_uniform(n: usize, seed: u64, steps: u64) -> LatinSquare {
    assert!(n >= 1, "order must be positive");
    let mut cube = Cube::from_square(&gen_cyclic(n));
    if n < 2 {
        return cube.into_square();
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..steps {
        cube.step(&mut rng);
    }
    cube.into_square()
}
