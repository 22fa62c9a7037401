//! Synthetic graphs with known dimensional behaviour.
//!
//! `ErRandom` draws every pair independently from a ChaCha8 stream seeded
//! with `seed` (rand_chacha's `seed_from_u64`), so fixtures are identical on
//! every platform. Disconnected draws are discarded and redrawn from the same
//! stream, up to [`ER_MAX_ATTEMPTS`] draws.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::Graph;

pub const ER_MAX_ATTEMPTS: usize = 100;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GeneratorSpec {
    Path { n: usize },
    Cycle { n: usize },
    Grid { rows: usize, cols: usize },
    /// One hub and `n - 1` leaves.
    Star { n: usize },
    Complete { n: usize },
    ErRandom { n: usize, p: f64, seed: u64 },
}

impl GeneratorSpec {
    pub fn model_name(&self) -> &'static str {
        match self {
            GeneratorSpec::Path { .. } => "path",
            GeneratorSpec::Cycle { .. } => "cycle",
            GeneratorSpec::Grid { .. } => "grid",
            GeneratorSpec::Star { .. } => "star",
            GeneratorSpec::Complete { .. } => "complete",
            GeneratorSpec::ErRandom { .. } => "er_random",
        }
    }

    fn validate(&self) -> Result<()> {
        let positive = |name: &str, v: usize| {
            if v == 0 {
                Err(Error::Argument(format!("{name} must be positive")))
            } else {
                Ok(())
            }
        };
        match *self {
            GeneratorSpec::Path { n } | GeneratorSpec::Star { n } | GeneratorSpec::Complete { n } => {
                positive("n", n)
            }
            GeneratorSpec::Cycle { n } => {
                if n < 3 {
                    Err(Error::Argument("a cycle needs at least 3 nodes".into()))
                } else {
                    Ok(())
                }
            }
            GeneratorSpec::Grid { rows, cols } => {
                positive("rows", rows)?;
                positive("cols", cols)
            }
            GeneratorSpec::ErRandom { n, p, .. } => {
                positive("n", n)?;
                if p > 0.0 && p <= 1.0 {
                    Ok(())
                } else {
                    Err(Error::Argument(format!("edge probability {p} outside (0, 1]")))
                }
            }
        }
    }
}

impl fmt::Display for GeneratorSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            GeneratorSpec::Path { n }
            | GeneratorSpec::Cycle { n }
            | GeneratorSpec::Star { n }
            | GeneratorSpec::Complete { n } => write!(f, "{} n={n}", self.model_name()),
            GeneratorSpec::Grid { rows, cols } => write!(f, "grid {rows}x{cols}"),
            GeneratorSpec::ErRandom { n, p, seed } => write!(f, "er_random n={n} p={p} seed={seed}"),
        }
    }
}

/// Builds the graph described by `spec`, nodes labelled `v0..v{n-1}`.
pub fn generate(spec: &GeneratorSpec) -> Result<Graph> {
    spec.validate()?;
    match *spec {
        GeneratorSpec::Path { n } => Graph::with_default_labels(n, (1..n).map(|i| (i - 1, i))),
        GeneratorSpec::Cycle { n } => Graph::with_default_labels(n, (0..n).map(|i| (i, (i + 1) % n))),
        GeneratorSpec::Grid { rows, cols } => {
            let id = |r: usize, c: usize| r * cols + c;
            let mut edges = Vec::with_capacity(2 * rows * cols);
            for r in 0..rows {
                for c in 0..cols {
                    if c + 1 < cols {
                        edges.push((id(r, c), id(r, c + 1)));
                    }
                    if r + 1 < rows {
                        edges.push((id(r, c), id(r + 1, c)));
                    }
                }
            }
            Graph::with_default_labels(rows * cols, edges)
        }
        GeneratorSpec::Star { n } => Graph::with_default_labels(n, (1..n).map(|i| (0, i))),
        GeneratorSpec::Complete { n } => {
            Graph::with_default_labels(n, (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))))
        }
        GeneratorSpec::ErRandom { n, p, seed } => erdos_renyi(n, p, seed),
    }
}

fn erdos_renyi(n: usize, p: f64, seed: u64) -> Result<Graph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..ER_MAX_ATTEMPTS {
        let mut edges = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                if rng.gen::<f64>() < p {
                    edges.push((i, j));
                }
            }
        }
        let g = Graph::with_default_labels(n, edges)?;
        if g.is_connected() {
            return Ok(g);
        }
    }
    Err(Error::Generation(format!(
        "G({n}, {p}) with seed {seed} was disconnected in {ER_MAX_ATTEMPTS} draws"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn diameter(g: &Graph) -> u32 {
        g.all_pairs_distances().unwrap().diameter()
    }

    #[test]
    fn path_six() {
        let g = generate(&GeneratorSpec::Path { n: 6 }).unwrap();
        assert_eq!((g.node_count(), g.edge_count()), (6, 5));
        assert_eq!(g.label(5), "v5");
    }

    #[test]
    fn grid_four_by_four() {
        let g = generate(&GeneratorSpec::Grid { rows: 4, cols: 4 }).unwrap();
        assert_eq!((g.node_count(), g.edge_count()), (16, 24));
        assert_eq!(diameter(&g), 6);
    }

    #[test]
    fn complete_four() {
        let g = generate(&GeneratorSpec::Complete { n: 4 }).unwrap();
        assert_eq!(g.edge_count(), 6);
        assert_eq!(diameter(&g), 1);
    }

    #[test]
    fn cycle_and_star() {
        let c = generate(&GeneratorSpec::Cycle { n: 7 }).unwrap();
        assert_eq!((c.edge_count(), diameter(&c)), (7, 3));
        let s = generate(&GeneratorSpec::Star { n: 5 }).unwrap();
        assert_eq!((s.edge_count(), diameter(&s)), (4, 2));
    }

    #[test]
    fn diameters_of_paths_and_grids() {
        for n in 1..15 {
            assert_eq!(diameter(&generate(&GeneratorSpec::Path { n }).unwrap()) as usize, n - 1);
        }
        for (rows, cols) in [(1, 1), (1, 5), (3, 4), (6, 2)] {
            let g = generate(&GeneratorSpec::Grid { rows, cols }).unwrap();
            assert_eq!(diameter(&g) as usize, rows + cols - 2);
        }
    }

    #[test]
    fn er_is_reproducible_and_connected() {
        let spec = GeneratorSpec::ErRandom { n: 60, p: 0.1, seed: 42 };
        let a = generate(&spec).unwrap();
        let b = generate(&spec).unwrap();
        assert_eq!(a, b);
        assert!(a.is_connected());
        let other = generate(&GeneratorSpec::ErRandom { n: 60, p: 0.1, seed: 43 }).unwrap();
        assert_ne!(a, other);
        let full = generate(&GeneratorSpec::ErRandom { n: 5, p: 1.0, seed: 0 }).unwrap();
        assert_eq!(full.edge_count(), 10);
    }

    #[test]
    fn er_gives_up_when_too_sparse() {
        let spec = GeneratorSpec::ErRandom { n: 50, p: 0.001, seed: 1 };
        assert!(matches!(generate(&spec), Err(Error::Generation(_))));
    }

    #[test]
    fn invalid_params() {
        for spec in [
            GeneratorSpec::Path { n: 0 },
            GeneratorSpec::Cycle { n: 2 },
            GeneratorSpec::Grid { rows: 0, cols: 3 },
            GeneratorSpec::Star { n: 0 },
            GeneratorSpec::Complete { n: 0 },
            GeneratorSpec::ErRandom { n: 10, p: 0.0, seed: 0 },
            GeneratorSpec::ErRandom { n: 10, p: 1.5, seed: 0 },
        ] {
            assert!(matches!(generate(&spec), Err(Error::Argument(_))), "{spec:?}");
        }
    }
}
