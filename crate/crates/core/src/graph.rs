//! Undirected simple graphs and hop-count distances.

use std::collections::VecDeque;

use rayon::prelude::*;

use crate::error::{Error, Result};

/// Sentinel hop count for unreachable nodes. Strictly greater than any
/// diameter a graph addressable in memory can have.
pub const UNREACHABLE: u32 = u32::MAX;

/// Undirected, unweighted, simple graph on dense ids `0..node_count`.
///
/// Neighbour lists are sorted and symmetric, with no self-loops or
/// duplicates. Original labels are kept only for reporting.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    adjacency: Vec<Vec<usize>>,
    labels: Vec<String>,
}

impl Graph {
    /// Builds a normalized graph from an arbitrary edge list.
    ///
    /// Edges are symmetrized, duplicates collapsed and self-loops dropped.
    /// `labels` must hold one entry per node.
    pub fn from_edges<I>(labels: Vec<String>, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let n = labels.len();
        let mut adjacency = vec![Vec::new(); n];
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::Argument(format!(
                    "edge ({u}, {v}) references a node outside 0..{n}"
                )));
            }
            if u == v {
                continue;
            }
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        for nbrs in &mut adjacency {
            nbrs.sort_unstable();
            nbrs.dedup();
        }
        Ok(Graph { adjacency, labels })
    }

    /// Graph with nodes labelled `v0..v{n-1}`.
    pub fn with_default_labels<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        Self::from_edges((0..n).map(|i| format!("v{i}")).collect(), edges)
    }

    pub fn node_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn neighbors(&self, node: usize) -> &[usize] {
        &self.adjacency[node]
    }

    pub fn adjacency(&self) -> &[Vec<usize>] {
        &self.adjacency
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adjacency[u].binary_search(&v).is_ok()
    }

    pub fn label(&self, node: usize) -> &str {
        &self.labels[node]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Each undirected edge once, as `(u, v)` with `u < v`, in id order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(u, nbrs)| nbrs.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
    }

    /// Connected components as sorted id lists, ordered by their smallest id.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.node_count();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        let mut queue = VecDeque::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            queue.push_back(start);
            let mut comp = Vec::new();
            while let Some(u) = queue.pop_front() {
                comp.push(u);
                for &v in &self.adjacency[u] {
                    if !seen[v] {
                        seen[v] = true;
                        queue.push_back(v);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.node_count() > 0 && self.components().len() == 1
    }

    /// Subgraph induced by `nodes` (sorted, distinct), relabelled densely in
    /// the given order. Labels carry over.
    pub fn induced_subgraph(&self, nodes: &[usize]) -> Graph {
        let mut new_id = vec![usize::MAX; self.node_count()];
        for (i, &u) in nodes.iter().enumerate() {
            new_id[u] = i;
        }
        let adjacency = nodes
            .iter()
            .map(|&u| {
                let mut nbrs: Vec<usize> = self.adjacency[u]
                    .iter()
                    .filter(|&&v| new_id[v] != usize::MAX).map(|&v| new_id[v])
                    .collect();
                nbrs.sort_unstable();
                nbrs
            })
            .collect();
        let labels = nodes.iter().map(|&u| self.labels[u].clone()).collect();
        Graph { adjacency, labels }
    }

    /// Induced subgraph on the largest connected component.
    ///
    /// Ties go to the component containing the smallest node id. Relative id
    /// order is preserved, so a connected graph comes back unchanged.
    pub fn largest_connected_component(&self) -> Graph {
        let mut best: Option<Vec<usize>> = None;
        for comp in self.components() {
            if best.as_ref().is_none_or(|b| comp.len() > b.len()) {
                best = Some(comp);
            }
        }
        match best {
            Some(comp) if comp.len() == self.node_count() => self.clone(),
            Some(comp) => self.induced_subgraph(&comp),
            None => self.clone(),
        }
    }

    /// Hop counts from `source`; unreachable nodes carry [`UNREACHABLE`].
    pub fn bfs_distances(&self, source: usize) -> Result<Vec<u32>> {
        let n = self.node_count();
        if source >= n {
            return Err(Error::Argument(format!(
                "source {source} out of range for {n} nodes"
            )));
        }
        let mut dist = vec![UNREACHABLE; n];
        let mut queue = VecDeque::with_capacity(n);
        dist[source] = 0;
        queue.push_back(source);
        while let Some(u) = queue.pop_front() {
            let next = dist[u] + 1;
            for &v in &self.adjacency[u] {
                if dist[v] == UNREACHABLE {
                    dist[v] = next;
                    queue.push_back(v);
                }
            }
        }
        Ok(dist)
    }

    /// All-pairs hop distances by one BFS per node, rows computed in parallel.
    pub fn all_pairs_distances(&self) -> Result<DistanceMatrix> {
        let n = self.node_count();
        if n == 0 {
            return Err(Error::Argument("graph has no nodes".into()));
        }
        let components = self.components().len();
        if components > 1 {
            return Err(Error::Disconnected { components });
        }
        let rows: Vec<Vec<u32>> = (0..n)
            .into_par_iter()
            .map(|s| self.bfs_distances(s).expect("source in range"))
            .collect();
        let mut dist = Vec::with_capacity(n * n);
        for row in rows {
            dist.extend(row);
        }
        Ok(DistanceMatrix::from_raw(n, dist))
    }
}

/// Dense `n × n` matrix of hop counts with its diameter.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceMatrix {
    n: usize,
    dist: Vec<u32>,
    diameter: u32,
}

impl DistanceMatrix {
    /// Wraps a row-major matrix. The diameter is the largest finite entry.
    pub fn from_raw(n: usize, dist: Vec<u32>) -> Self {
        assert_eq!(dist.len(), n * n, "distance matrix must be n*n");
        let diameter = dist
            .iter()
            .copied()
            .filter(|&d| d != UNREACHABLE)
            .max()
            .unwrap_or(0);
        DistanceMatrix { n, dist, diameter }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.dist[i * self.n + j]
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[u32] {
        &self.dist[i * self.n..(i + 1) * self.n]
    }

    pub fn diameter(&self) -> u32 {
        self.diameter
    }

    pub fn is_finite(&self) -> bool {
        !self.dist.contains(&UNREACHABLE)
    }
}
