//! Simple undirected graphs on dense integer vertex ids.

use std::fmt;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("graph must have at least one vertex")]
    Empty,
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("loop edge ({0}, {0}) is not allowed")]
    LoopEdge(usize),
}

/// Simple undirected graph on vertices `0..n`, adjacency-testable in O(1).
///
/// No loops, no multi-edges; external vertex names are handled at the I/O
/// layer. Immutable after construction.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    m: usize,
    adj: Vec<Vec<bool>>,
    neighbors: Vec<Vec<usize>>,
}

impl Graph {
    /// Builds a graph from an edge list, deduplicating repeated pairs.
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        if n == 0 {
            return Err(GraphError::Empty);
        }
        let mut adj = vec![vec![false; n]; n];
        let mut m = 0;
        for &(u, v) in edges {
            if u >= n {
                return Err(GraphError::VertexOutOfRange { vertex: u, n });
            }
            if v >= n {
                return Err(GraphError::VertexOutOfRange { vertex: v, n });
            }
            if u == v {
                return Err(GraphError::LoopEdge(u));
            }
            if !adj[u][v] {
                adj[u][v] = true;
                adj[v][u] = true;
                m += 1;
            }
        }
        let neighbors = (0..n)
            .map(|u| (0..n).filter(|&v| adj[u][v]).collect())
            .collect();
        Ok(Graph {
            n,
            m,
            adj,
            neighbors,
        })
    }

    pub fn edgeless(n: usize) -> Result<Self, GraphError> {
        Graph::new(n, &[])
    }

    pub fn complete(n: usize) -> Result<Self, GraphError> {
        let edges: Vec<_> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .collect();
        Graph::new(n, &edges)
    }

    pub fn path(n: usize) -> Result<Self, GraphError> {
        let edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
        Graph::new(n, &edges)
    }

    pub fn cycle(n: usize) -> Result<Self, GraphError> {
        let mut edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
        if n >= 3 {
            edges.push((n - 1, 0));
        }
        Graph::new(n, &edges)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u][v]
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.neighbors[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.neighbors[v].len()
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    /// Edges as ordered pairs `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.m);
        for u in 0..self.n {
            for &v in &self.neighbors[u] {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn complement(&self) -> Graph {
        let edges: Vec<_> = (0..self.n)
            .flat_map(|u| (u + 1..self.n).map(move |v| (u, v)))
            .filter(|&(u, v)| !self.adj[u][v])
            .collect();
        Graph::new(self.n, &edges).expect("complement of a valid graph is valid")
    }

    pub fn is_connected(&self) -> bool {
        let mut seen = vec![false; self.n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(u) = stack.pop() {
            for &v in &self.neighbors[u] {
                if !seen[v] {
                    seen[v] = true;
                    count += 1;
                    stack.push(v);
                }
            }
        }
        count == self.n
    }

    pub fn is_complete(&self) -> bool {
        self.m == self.n * (self.n - 1) / 2
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builds_cycle_with_dedup() {
        let g = Graph::new(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        assert_eq!(g.n(), 4);
        assert_eq!(g.m(), 4);
        let dup = Graph::new(4, &[(0, 1), (0, 1), (1, 0)]).unwrap();
        assert_eq!(dup.m(), 1);
    }

    #[test]
    fn single_vertex_graph() {
        let g = Graph::new(1, &[]).unwrap();
        assert_eq!(g.n(), 1);
        assert_eq!(g.m(), 0);
        assert!(g.is_connected());
    }

    #[test]
    fn rejects_bad_input() {
        assert_eq!(Graph::new(0, &[]), Err(GraphError::Empty));
        assert_eq!(
            Graph::new(3, &[(0, 5)]),
            Err(GraphError::VertexOutOfRange { vertex: 5, n: 3 })
        );
        assert_eq!(Graph::new(3, &[(1, 1)]), Err(GraphError::LoopEdge(1)));
    }

    #[test]
    fn complement_of_matching_is_cycle() {
        // 2K2 on vertices {0,1},{2,3}; complement is the 4-cycle 0-2-1-3-0
        let two_k2 = Graph::new(4, &[(0, 1), (2, 3)]).unwrap();
        let c = two_k2.complement();
        assert_eq!(c.m(), 4);
        assert!(c.has_edge(0, 2) && c.has_edge(0, 3) && c.has_edge(1, 2) && c.has_edge(1, 3));
        assert!(!c.has_edge(0, 1) && !c.has_edge(2, 3));
    }

    #[test]
    fn complement_involution() {
        let g = Graph::new(5, &[(0, 1), (1, 2), (3, 4), (0, 4)]).unwrap();
        assert_eq!(g.complement().complement(), g);
        let k3 = Graph::complete(3).unwrap();
        assert_eq!(k3.complement().m(), 0);
    }
}
