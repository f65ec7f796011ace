//! Simple undirected graphs on up to 64 vertices, adjacency as bitmasks.
//!
//! Vertices are 0-based in the API; the text form (one line with the
//! vertex count, then one "i j" line per edge) is 1-based.

use std::fmt;
use std::str::FromStr;

use crate::error::Error;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    adj: Vec<u64>,
}

impl Graph {
    pub fn new<I>(n: usize, edges: I) -> Result<Self, Error>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        if n > 64 {
            return Err(Error::SizeLimit(format!(
                "graphs support at most 64 vertices, got {n}"
            )));
        }
        let mut adj = vec![0u64; n];
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::InvalidArgument(format!(
                    "edge ({u}, {v}) out of range for {n} vertices"
                )));
            }
            if u == v {
                return Err(Error::InvalidArgument(format!("self-loop at vertex {u}")));
            }
            adj[u] |= 1 << v;
            adj[v] |= 1 << u;
        }
        Ok(Graph { n, adj })
    }

    pub fn empty(n: usize) -> Self {
        Graph::new(n, std::iter::empty()).expect("empty graph is always valid")
    }

    pub fn complete(n: usize) -> Self {
        Graph::new(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))))
            .expect("complete graph on <= 64 vertices is valid")
    }

    pub fn n_vertices(&self) -> usize {
        self.n
    }

    pub fn n_edges(&self) -> usize {
        self.adj.iter().map(|m| m.count_ones() as usize).sum::<usize>() / 2
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u] & (1 << v) != 0
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn neighbors_mask(&self, v: usize) -> u64 {
        self.adj[v]
    }

    /// Edges as (u, v) with u < v, ascending.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n {
            for v in u + 1..self.n {
                if self.has_edge(u, v) {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// Whether the vertices selected by `mask` induce a connected
    /// subgraph. The empty set and singletons count as connected.
    pub fn is_subset_connected(&self, mask: u64) -> bool {
        if mask == 0 {
            return true;
        }
        let start = mask.trailing_zeros() as usize;
        let mut seen = 1u64 << start;
        let mut frontier = seen;
        while frontier != 0 {
            let mut next = 0u64;
            let mut f = frontier;
            while f != 0 {
                let v = f.trailing_zeros() as usize;
                f &= f - 1;
                next |= self.adj[v] & mask;
            }
            frontier = next & !seen;
            seen |= next;
        }
        seen == mask
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.n)?;
        for (u, v) in self.edges() {
            writeln!(f, "{} {}", u + 1, v + 1)?;
        }
        Ok(())
    }
}

impl FromStr for Graph {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let mut lines = s.lines().map(str::trim).filter(|l| !l.is_empty());
        let n: usize = lines
            .next()
            .ok_or_else(|| Error::Parse("missing vertex count line".into()))?
            .parse()
            .map_err(|_| Error::Parse("bad vertex count".into()))?;
        let mut edges = Vec::new();
        for line in lines {
            let mut it = line.split_whitespace();
            let u: usize = it
                .next()
                .ok_or_else(|| Error::Parse(format!("bad edge line {line:?}")))?
                .parse()
                .map_err(|_| Error::Parse(format!("bad edge line {line:?}")))?;
            let v: usize = it
                .next()
                .ok_or_else(|| Error::Parse(format!("bad edge line {line:?}")))?
                .parse()
                .map_err(|_| Error::Parse(format!("bad edge line {line:?}")))?;
            if it.next().is_some() {
                return Err(Error::Parse(format!("bad edge line {line:?}")));
            }
            if u == 0 || v == 0 {
                return Err(Error::Parse("vertices are 1-based in the text form".into()));
            }
            edges.push((u - 1, v - 1));
        }
        Graph::new(n, edges).map_err(|e| Error::Parse(e.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn construction_and_accessors() {
        let g = Graph::new(3, vec![(0, 1), (1, 2)]).unwrap();
        assert_eq!(g.n_vertices(), 3);
        assert_eq!(g.n_edges(), 2);
        assert!(g.has_edge(0, 1) && g.has_edge(1, 0));
        assert!(!g.has_edge(0, 2));
        assert_eq!(g.degree(1), 2);
        assert_eq!(g.edges(), vec![(0, 1), (1, 2)]);
        assert_eq!(Graph::complete(4).n_edges(), 6);
        assert_eq!(Graph::empty(4).n_edges(), 0);
    }

    #[test]
    fn duplicate_edges_collapse() {
        let g = Graph::new(2, vec![(0, 1), (1, 0), (0, 1)]).unwrap();
        assert_eq!(g.n_edges(), 1);
    }

    #[test]
    fn invalid_inputs() {
        assert!(matches!(
            Graph::new(2, vec![(0, 0)]),
            Err(Error::InvalidArgument(_))
        ));
        assert!(matches!(
            Graph::new(2, vec![(0, 2)]),
            Err(Error::InvalidArgument(_))
        ));
        assert!(matches!(Graph::new(65, vec![]), Err(Error::SizeLimit(_))));
    }

    #[test]
    fn subset_connectivity() {
        let path = Graph::new(4, vec![(0, 1), (1, 2), (2, 3)]).unwrap();
        assert!(path.is_subset_connected(0b1111));
        assert!(path.is_subset_connected(0b0110));
        assert!(!path.is_subset_connected(0b1001));
        assert!(path.is_subset_connected(0b0100));
        assert!(path.is_subset_connected(0));
    }

    #[test]
    fn text_round_trip() {
        let g = Graph::new(3, vec![(0, 1), (1, 2)]).unwrap();
        let s = g.to_string();
        assert_eq!(s, "3\n1 2\n2 3\n");
        assert_eq!(s.parse::<Graph>().unwrap(), g);
        let lonely: Graph = "2\n".parse().unwrap();
        assert_eq!(lonely, Graph::empty(2));
        assert!("".parse::<Graph>().is_err());
        assert!("3\n0 1\n".parse::<Graph>().is_err());
        assert!("3\n1 2 3\n".parse::<Graph>().is_err());
        assert!("3\n1\n".parse::<Graph>().is_err());
    }
}
