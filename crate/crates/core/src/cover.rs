//! Greedy-coloring box covering.
//!
//! A box of size `l_b` is a node set whose pairwise hop distances are all
//! `< l_b`. Two nodes at distance `>= l_b` can never share a box, so they are
//! joined in the auxiliary graph; any proper coloring of the auxiliary graph
//! is then a valid covering, with one box per color. The covering here is the
//! best greedy coloring over `trials` random node orders.
//!
//! Trial `t` at box size `l_b` shuffles with a ChaCha8 stream seeded from
//! [`trial_seed`]`(seed, l_b, t)`, so trials and box sizes can run on any
//! number of threads and still give bit-identical results.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{DistanceMatrix, Graph};

/// Largest node count accepted by [`brute_force_cover`].
pub const BRUTE_FORCE_LIMIT: usize = 12;

/// Partition of all nodes into boxes for one box size.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoxCovering {
    pub l_b: u32,
    /// Boxes in color order; node ids inside each box are ascending.
    pub boxes: Vec<Vec<usize>>,
    pub box_of: Vec<usize>,
    pub trials_used: usize,
    pub seed: u64,
}

impl BoxCovering {
    /// Groups nodes by color. Colors must be dense `0..k`.
    pub fn from_colors(l_b: u32, colors: &[usize], trials_used: usize, seed: u64) -> Self {
        let k = colors.iter().map(|&c| c + 1).max().unwrap_or(0);
        let mut boxes = vec![Vec::new(); k];
        for (node, &c) in colors.iter().enumerate() {
            boxes[c].push(node);
        }
        BoxCovering {
            l_b,
            boxes,
            box_of: colors.to_vec(),
            trials_used,
            seed,
        }
    }

    pub fn box_count(&self) -> usize {
        self.boxes.len()
    }

    pub fn node_count(&self) -> usize {
        self.box_of.len()
    }

    pub fn box_sizes(&self) -> Vec<usize> {
        self.boxes.iter().map(Vec::len).collect()
    }

    /// Checks the partition and box-diameter invariants against `dist`.
    pub fn validate(&self, dist: &DistanceMatrix) -> Result<()> {
        let n = dist.len();
        if self.box_of.len() != n {
            return Err(Error::Consistency(format!(
                "covering has {} nodes, distance matrix {n}",
                self.box_of.len()
            )));
        }
        let mut seen = vec![false; n];
        for (b, members) in self.boxes.iter().enumerate() {
            if members.is_empty() {
                return Err(Error::Consistency(format!("box {b} is empty")));
            }
            for (i, &u) in members.iter().enumerate() {
                if u >= n || seen[u] || self.box_of[u] != b {
                    return Err(Error::Consistency(format!(
                        "node {u} is not uniquely assigned to box {b}"
                    )));
                }
                seen[u] = true;
                for &v in &members[i + 1..] {
                    if dist.get(u, v) >= self.l_b {
                        return Err(Error::Consistency(format!(
                            "nodes {u} and {v} in box {b} are {} apart, box size {}",
                            dist.get(u, v),
                            self.l_b
                        )));
                    }
                }
            }
        }
        if let Some(u) = seen.iter().position(|s| !s) {
            return Err(Error::Consistency(format!("node {u} is in no box")));
        }
        Ok(())
    }
}

/// Upper end of the box-size range.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LMax {
    /// Diameter + 1, the smallest size that fits the whole graph in one box.
    Auto,
    Fixed(u32),
}

/// Coverings for consecutive box sizes.
#[derive(Debug, Clone, PartialEq)]
pub struct CoveringProfile {
    /// Ordered by strictly increasing `l_b`.
    pub coverings: Vec<BoxCovering>,
    pub n: usize,
    pub diameter: u32,
    pub l_max: u32,
    /// Box sizes where greedy did worse than the previous size and the
    /// previous covering was carried forward.
    pub repaired: Vec<u32>,
}

impl CoveringProfile {
    pub fn box_counts(&self) -> Vec<usize> {
        self.coverings.iter().map(BoxCovering::box_count).collect()
    }

    pub fn box_sizes(&self) -> Vec<u32> {
        self.coverings.iter().map(|c| c.l_b).collect()
    }

    pub fn len(&self) -> usize {
        self.coverings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coverings.is_empty()
    }
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed of the node-order stream for one trial: SplitMix64 chained over
/// `seed`, then `l_b`, then `trial`.
pub fn trial_seed(seed: u64, l_b: u32, trial: usize) -> u64 {
    splitmix64(splitmix64(splitmix64(seed) ^ u64::from(l_b)) ^ trial as u64)
}

/// Node order used by one trial: a ChaCha8 Fisher-Yates shuffle of `0..n`.
pub fn trial_order(n: usize, seed: u64, l_b: u32, trial: usize) -> Vec<usize> {
    let mut rng = ChaCha8Rng::seed_from_u64(trial_seed(seed, l_b, trial));
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(&mut rng);
    order
}

/// Graph joining every pair of nodes at hop distance `>= l_b`.
pub fn auxiliary_graph(dist: &DistanceMatrix, l_b: u32) -> Graph {
    let n = dist.len();
    let edges = (0..n).flat_map(|i| {
        dist.row(i)[i + 1..]
            .iter()
            .enumerate()
            .filter(move |(_, &d)| d >= l_b)
            .map(move |(k, _)| (i, i + 1 + k))
    });
    Graph::with_default_labels(n, edges).expect("ids are in range")
}

fn check_permutation(order: &[usize], n: usize) -> Result<()> {
    if order.len() != n {
        return Err(Error::Argument(format!(
            "order has {} entries for {n} nodes",
            order.len()
        )));
    }
    let mut seen = vec![false; n];
    for &v in order {
        if v >= n || std::mem::replace(&mut seen[v], true) {
            return Err(Error::Argument(format!(
                "order is not a permutation of 0..{n} (bad entry {v})"
            )));
        }
    }
    Ok(())
}

/// Colors nodes in `order`, giving each the smallest color not used by an
/// already-colored neighbour.
pub fn greedy_coloring(graph: &Graph, order: &[usize]) -> Result<Vec<usize>> {
    let n = graph.node_count();
    check_permutation(order, n)?;
    let mut color = vec![usize::MAX; n];
    let mut taken: Vec<bool> = Vec::new();
    for &v in order {
        taken.clear();
        taken.resize(n + 1, false);
        for &u in graph.neighbors(v) {
            if color[u] != usize::MAX {
                taken[color[u]] = true;
            }
        }
        color[v] = taken.iter().position(|t| !t).expect("n+1 slots for at most n neighbours");
    }
    Ok(color)
}

/// Greedy coloring of the auxiliary graph without materializing it.
///
/// A node joins the lowest-indexed box whose members are all within
/// `l_b - 1` hops of it, which is the same smallest-free-color rule as
/// [`greedy_coloring`] on [`auxiliary_graph`].
fn greedy_boxes(dist: &DistanceMatrix, l_b: u32, order: &[usize]) -> Vec<usize> {
    let mut color = vec![usize::MAX; dist.len()];
    let mut boxes: Vec<Vec<usize>> = Vec::new();
    for &v in order {
        let row = dist.row(v);
        let slot = boxes
            .iter()
            .position(|members| members.iter().all(|&u| row[u] < l_b));
        let c = match slot {
            Some(c) => c,
            None => {
                boxes.push(Vec::new());
                boxes.len() - 1
            }
        };
        boxes[c].push(v);
        color[v] = c;
    }
    color
}

fn check_distances(dist: &DistanceMatrix, l_b: u32) -> Result<()> {
    if l_b == 0 {
        return Err(Error::Argument("box size must be at least 1".into()));
    }
    if !dist.is_finite() {
        return Err(Error::Disconnected { components: 2 });
    }
    Ok(())
}

/// Best greedy covering over `trials` random node orders.
///
/// The covering with the fewest boxes wins; ties go to the earliest trial.
pub fn box_cover(dist: &DistanceMatrix, l_b: u32, trials: usize, seed: u64) -> Result<BoxCovering> {
    check_distances(dist, l_b)?;
    if trials == 0 {
        return Err(Error::Argument("trials must be at least 1".into()));
    }
    let n = dist.len();
    let results: Vec<(usize, Vec<usize>)> = (0..trials)
        .into_par_iter()
        .map(|t| {
            let colors = greedy_boxes(dist, l_b, &trial_order(n, seed, l_b, t));
            let k = colors.iter().map(|&c| c + 1).max().unwrap_or(0);
            (k, colors)
        })
        .collect();
    // min_by_key keeps the first minimum, i.e. the earliest trial.
    let (_, colors) = results
        .into_iter()
        .min_by_key(|(k, _)| *k)
        .expect("trials >= 1");
    Ok(BoxCovering::from_colors(l_b, &colors, trials, seed))
}

/// Coverings for every `l_b` in `l_min..=l_max` over precomputed distances.
///
/// A covering valid at `l_b` is valid at `l_b + 1`, so whenever greedy
/// produces more boxes than at the previous size the previous covering is
/// reused and the size is recorded in [`CoveringProfile::repaired`].
pub fn covering_profile_from_distances(
    dist: &DistanceMatrix,
    l_min: u32,
    l_max: LMax,
    trials: usize,
    seed: u64,
) -> Result<CoveringProfile> {
    if l_min == 0 {
        return Err(Error::Argument("l_min must be at least 1".into()));
    }
    if trials == 0 {
        return Err(Error::Argument("trials must be at least 1".into()));
    }
    let diameter = dist.diameter();
    let l_max = match l_max {
        LMax::Auto => diameter + 1,
        LMax::Fixed(l) => l,
    };
    if l_min > l_max {
        return Err(Error::Argument(format!(
            "l_min ({l_min}) exceeds l_max ({l_max})"
        )));
    }
    let raw: Vec<BoxCovering> = (l_min..=l_max)
        .into_par_iter()
        .map(|l_b| box_cover(dist, l_b, trials, seed))
        .collect::<Result<_>>()?;

    let (coverings, repaired) = carry_forward(raw);
    Ok(CoveringProfile {
        coverings,
        n: dist.len(),
        diameter,
        l_max,
        repaired,
    })
}

/// Replaces any covering with more boxes than its predecessor by a copy of
/// the predecessor. Returns the repaired sequence and the affected sizes.
fn carry_forward(raw: Vec<BoxCovering>) -> (Vec<BoxCovering>, Vec<u32>) {
    let mut coverings: Vec<BoxCovering> = Vec::with_capacity(raw.len());
    let mut repaired = Vec::new();
    for cov in raw {
        match coverings.last() {
            Some(prev) if prev.box_count() < cov.box_count() => {
                repaired.push(cov.l_b);
                let carried = BoxCovering {
                    l_b: cov.l_b,
                    ..prev.clone()
                };
                coverings.push(carried);
            }
            _ => coverings.push(cov),
        }
    }
    (coverings, repaired)
}

/// Computes distances for a connected graph and covers it for every box size
/// in `l_min..=l_max`.
pub fn covering_profile(
    graph: &Graph,
    l_min: u32,
    l_max: LMax,
    trials: usize,
    seed: u64,
) -> Result<CoveringProfile> {
    let dist = graph.all_pairs_distances()?;
    covering_profile_from_distances(&dist, l_min, l_max, trials, seed)
}

/// Exact minimum covering by exhaustive search over set partitions.
///
/// Exponential; refuses graphs above [`BRUTE_FORCE_LIMIT`] nodes.
pub fn brute_force_cover(dist: &DistanceMatrix, l_b: u32) -> Result<BoxCovering> {
    check_distances(dist, l_b)?;
    let n = dist.len();
    if n > BRUTE_FORCE_LIMIT {
        return Err(Error::TooLarge {
            nodes: n,
            limit: BRUTE_FORCE_LIMIT,
        });
    }

    struct Search<'a> {
        dist: &'a DistanceMatrix,
        l_b: u32,
        assign: Vec<usize>,
        boxes: Vec<Vec<usize>>,
        best: Vec<usize>,
        best_count: usize,
    }

    impl Search<'_> {
        fn run(&mut self, node: usize) {
            if self.boxes.len() >= self.best_count {
                return;
            }
            if node == self.assign.len() {
                self.best_count = self.boxes.len();
                self.best = self.assign.clone();
                return;
            }
            for b in 0..self.boxes.len() {
                if self.boxes[b].iter().all(|&u| self.dist.get(node, u) < self.l_b) {
                    self.boxes[b].push(node);
                    self.assign[node] = b;
                    self.run(node + 1);
                    self.boxes[b].pop();
                }
            }
            self.boxes.push(vec![node]);
            self.assign[node] = self.boxes.len() - 1;
            self.run(node + 1);
            self.boxes.pop();
        }
    }

    let mut search = Search {
        dist,
        l_b,
        assign: vec![0; n],
        boxes: Vec::new(),
        best: (0..n).collect(),
        best_count: n + 1,
    };
    search.run(0);
    Ok(BoxCovering::from_colors(l_b, &search.best, 1, 0))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(n: usize) -> Graph {
        Graph::with_default_labels(n, (1..n).map(|i| (i - 1, i))).unwrap()
    }

    fn complete(n: usize) -> Graph {
        let edges = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j)));
        Graph::with_default_labels(n, edges).unwrap()
    }

    #[test]
    fn auxiliary_graph_examples() {
        let d = path(3).all_pairs_distances().unwrap();
        let aux = auxiliary_graph(&d, 2);
        assert_eq!(aux.edges().collect::<Vec<_>>(), vec![(0, 2)]);
        assert_eq!(auxiliary_graph(&d, d.diameter() + 1).edge_count(), 0);
        assert_eq!(auxiliary_graph(&d, 1).edge_count(), 3);
    }

    #[test]
    fn greedy_coloring_examples() {
        let edgeless = Graph::with_default_labels(4, []).unwrap();
        assert_eq!(greedy_coloring(&edgeless, &[2, 0, 3, 1]).unwrap(), vec![0; 4]);

        let mut tri = greedy_coloring(&complete(3), &[1, 2, 0]).unwrap();
        tri.sort_unstable();
        assert_eq!(tri, vec![0, 1, 2]);

        assert_eq!(greedy_coloring(&path(3), &[0, 1, 2]).unwrap(), vec![0, 1, 0]);
    }

    #[test]
    fn greedy_coloring_rejects_non_permutation() {
        let g = path(3);
        assert!(matches!(greedy_coloring(&g, &[0, 1]), Err(Error::Argument(_))));
        assert!(matches!(greedy_coloring(&g, &[0, 1, 1]), Err(Error::Argument(_))));
        assert!(matches!(greedy_coloring(&g, &[0, 1, 3]), Err(Error::Argument(_))));
    }

    #[test]
    fn implicit_greedy_matches_auxiliary_coloring() {
        let g = Graph::with_default_labels(
            8,
            [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (1, 5), (2, 6)],
        )
        .unwrap();
        let d = g.all_pairs_distances().unwrap();
        for l_b in 1..=d.diameter() + 1 {
            let aux = auxiliary_graph(&d, l_b);
            for t in 0..5 {
                let order = trial_order(8, 7, l_b, t);
                assert_eq!(
                    greedy_boxes(&d, l_b, &order),
                    greedy_coloring(&aux, &order).unwrap()
                );
            }
        }
    }

    #[test]
    fn box_cover_p6() {
        let d = path(6).all_pairs_distances().unwrap();
        let cov = box_cover(&d, 3, 20, 42).unwrap();
        cov.validate(&d).unwrap();
        assert_eq!(cov.box_count(), 2);
        assert_eq!(cov.trials_used, 20);
    }

    #[test]
    fn box_cover_extremes() {
        let g = Graph::with_default_labels(5, [(0, 1), (1, 2), (2, 0), (2, 3), (3, 4)]).unwrap();
        let d = g.all_pairs_distances().unwrap();
        let singles = box_cover(&d, 1, 3, 1).unwrap();
        assert_eq!(singles.box_count(), 5);
        assert!(singles.boxes.iter().all(|b| b.len() == 1));
        assert_eq!(box_cover(&d, d.diameter() + 1, 3, 1).unwrap().box_count(), 1);
    }

    #[test]
    fn box_cover_argument_errors() {
        let d = path(3).all_pairs_distances().unwrap();
        assert!(matches!(box_cover(&d, 0, 1, 0), Err(Error::Argument(_))));
        assert!(matches!(box_cover(&d, 2, 0, 0), Err(Error::Argument(_))));
    }

    #[test]
    fn profile_p6() {
        let p = covering_profile(&path(6), 1, LMax::Auto, 20, 42).unwrap();
        assert_eq!(p.box_counts(), vec![6, 3, 2, 2, 2, 1]);
        assert_eq!(p.box_sizes(), vec![1, 2, 3, 4, 5, 6]);
        assert_eq!(p.l_max, 6);
    }

    #[test]
    fn profile_degenerate_and_k4() {
        let single = Graph::with_default_labels(1, []).unwrap();
        let p = covering_profile(&single, 1, LMax::Auto, 10, 42).unwrap();
        assert_eq!(p.box_counts(), vec![1]);

        let p = covering_profile(&complete(4), 1, LMax::Auto, 10, 42).unwrap();
        assert_eq!(p.box_counts(), vec![4, 1]);
    }

    #[test]
    fn profile_range_errors() {
        let g = path(4);
        assert!(matches!(
            covering_profile(&g, 3, LMax::Fixed(2), 1, 0),
            Err(Error::Argument(_))
        ));
        assert!(matches!(
            covering_profile(&g, 0, LMax::Auto, 1, 0),
            Err(Error::Argument(_))
        ));
    }

    #[test]
    fn carry_forward_repairs_regressions() {
        let d = path(4).all_pairs_distances().unwrap();
        let two = BoxCovering::from_colors(2, &[0, 0, 1, 1], 1, 0);
        let three = BoxCovering::from_colors(3, &[0, 1, 1, 2], 1, 0);
        let one = BoxCovering::from_colors(4, &[0, 0, 0, 0], 1, 0);
        let (fixed, repaired) = carry_forward(vec![two.clone(), three, one.clone()]);
        assert_eq!(repaired, vec![3]);
        assert_eq!(fixed[1].l_b, 3);
        assert_eq!(fixed[1].boxes, two.boxes);
        assert_eq!(fixed[2], one);
        for c in &fixed {
            c.validate(&d).unwrap();
        }
    }

    #[test]
    fn brute_force_examples() {
        let d = path(6).all_pairs_distances().unwrap();
        assert_eq!(brute_force_cover(&d, 3).unwrap().box_count(), 2);
        let tri = complete(3).all_pairs_distances().unwrap();
        assert_eq!(brute_force_cover(&tri, 1).unwrap().box_count(), 3);
        assert_eq!(brute_force_cover(&tri, 2).unwrap().box_count(), 1);
        let big = path(13).all_pairs_distances().unwrap();
        assert_eq!(
            brute_force_cover(&big, 2),
            Err(Error::TooLarge { nodes: 13, limit: 12 })
        );
    }

    #[test]
    fn trial_seeds_differ() {
        assert_ne!(trial_seed(42, 2, 0), trial_seed(42, 2, 1));
        assert_ne!(trial_seed(42, 2, 0), trial_seed(42, 3, 0));
        assert_ne!(trial_seed(42, 2, 0), trial_seed(43, 2, 0));
    }
}
