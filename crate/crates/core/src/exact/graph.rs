use crate::{Error, Result};
use std::collections::BTreeSet;

/// An undirected graph on the indices `0..vertex_count` of a paired
/// [`NumberSet`](super::NumberSet). Edges are unordered pairs `{i, j}` with
/// `i < j`; loops are tracked separately and only representable when the
/// graph was created with `allow_loops`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairGraph {
    vertex_count: usize,
    edges: BTreeSet<(usize, usize)>,
    loops: BTreeSet<usize>,
    allow_loops: bool,
}

impl PairGraph {
    pub fn new(vertex_count: usize, allow_loops: bool) -> Self {
        PairGraph {
            vertex_count,
            edges: BTreeSet::new(),
            loops: BTreeSet::new(),
            allow_loops,
        }
    }

    /// All pairs `{i, j}`, `i < j`, no loops.
    pub fn complete(vertex_count: usize) -> Self {
        let mut g = PairGraph::new(vertex_count, false);
        for i in 0..vertex_count {
            for j in (i + 1)..vertex_count {
                g.edges.insert((i, j));
            }
        }
        g
    }

    /// All pairs plus a loop at every vertex. Pairing this with a set `A`
    /// makes the point set of the derived arrangements the full product
    /// `A x A`.
    pub fn complete_with_loops(vertex_count: usize) -> Self {
        let mut g = PairGraph::complete(vertex_count);
        g.allow_loops = true;
        g.loops = (0..vertex_count).collect();
        g
    }

    /// Inserts the edge `{i, j}`, or the loop at `i` when `i == j`.
    pub fn add_edge(&mut self, i: usize, j: usize) -> Result<()> {
        for v in [i, j] {
            if v >= self.vertex_count {
                return Err(Error::VertexOutOfRange {
                    index: v,
                    count: self.vertex_count,
                });
            }
        }
        if i == j {
            if !self.allow_loops {
                return Err(Error::LoopsForbidden);
            }
            self.loops.insert(i);
        } else {
            self.edges.insert((i.min(j), i.max(j)));
        }
        Ok(())
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn allow_loops(&self) -> bool {
        self.allow_loops
    }

    /// Number of proper (non-loop) edges.
    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn loop_count(&self) -> usize {
        self.loops.len()
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        if i == j {
            self.loops.contains(&i)
        } else {
            self.edges.contains(&(i.min(j), i.max(j)))
        }
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn loops(&self) -> impl Iterator<Item = usize> + '_ {
        self.loops.iter().copied()
    }

    /// Number of vertex triples that are pairwise adjacent. Loops never
    /// participate.
    pub fn count_triangles(&self) -> u64 {
        let mut adj = vec![BTreeSet::new(); self.vertex_count];
        for &(i, j) in &self.edges {
            adj[i].insert(j);
            adj[j].insert(i);
        }
        let mut count = 0u64;
        for &(i, j) in &self.edges {
            // i < j; count common neighbors above j so each triangle is
            // seen once, at its lexicographically least edge.
            count += adj[i]
                .iter()
                .filter(|&&k| k > j && adj[j].contains(&k))
                .count() as u64;
        }
        count
    }
}
