//! Graphs, vertex partitions and shortest-path distances.
//!
//! Complete multipartite graphs are built from a [`PartitionSpec`] with the
//! parts laid out as consecutive vertex blocks, so block structure stays
//! positionally verifiable downstream. Connectedness is checked when
//! distances are requested, not at construction: edge-deletion experiments
//! legitimately build a graph first and test it afterwards.

use std::fmt;
use std::ops::Range;

use serde::Serialize;

use crate::error::{Error, Result};

/// Ordered part sizes `(n_1, ..., n_k)` of a complete multipartite graph.
///
/// Canonical form is non-increasing; constructors normalize to it. Every part
/// is at least 1 and `k >= 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct PartitionSpec {
    parts: Vec<usize>,
}

impl PartitionSpec {
    /// Normalizes `parts` to non-increasing order. Rejects empty input and
    /// zero parts.
    pub fn new(parts: &[usize]) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::InvalidPartition("no parts given".into()));
        }
        if parts.contains(&0) {
            return Err(Error::InvalidPartition("parts must be positive".into()));
        }
        let mut parts = parts.to_vec();
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(PartitionSpec { parts })
    }

    /// Parses a comma-separated list of part sizes such as `"3,2,2"`.
    pub fn parse(s: &str) -> Result<Self> {
        let parts = s
            .split(',')
            .map(|tok| {
                tok.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad part size {tok:?} in partition {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        PartitionSpec::new(&parts)
    }

    /// Complete split graph on `n` vertices with independence number `n - k`:
    /// one part of size `n - k` plus `k` singleton parts. Requires
    /// `1 <= k <= n - 1`.
    pub fn complete_split(n: usize, k: usize) -> Result<Self> {
        if k < 1 || k + 1 > n {
            return Err(Error::InvalidPartition(format!(
                "complete split requires 1 <= k <= n-1, got n={n} k={k}"
            )));
        }
        let mut parts = vec![1; k + 1];
        parts[0] = n - k;
        PartitionSpec::new(&parts)
    }

    /// Balanced `k`-partite partition of `n` vertices: with `n = kq + r`,
    /// `r` parts of size `q + 1` and `k - r` of size `q`. Requires
    /// `2 <= k <= n`.
    pub fn turan(n: usize, k: usize) -> Result<Self> {
        if k < 2 || k > n {
            return Err(Error::InvalidPartition(format!(
                "balanced partition requires 2 <= k <= n, got n={n} k={k}"
            )));
        }
        let q = n / k;
        let r = n % k;
        let mut parts = vec![q; k];
        for p in parts.iter_mut().take(r) {
            *p = q + 1;
        }
        PartitionSpec::new(&parts)
    }

    /// Part sizes in canonical (non-increasing) order.
    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// Number of parts.
    pub fn k(&self) -> usize {
        self.parts.len()
    }

    /// Total number of vertices.
    pub fn n(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Vertex index range of each part under the consecutive-block labeling.
    pub fn block_ranges(&self) -> Vec<Range<usize>> {
        let mut out = Vec::with_capacity(self.parts.len());
        let mut offset = 0;
        for &p in &self.parts {
            out.push(offset..offset + p);
            offset += p;
        }
        out
    }
}

impl fmt::Display for PartitionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let strs: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "{}", strs.join(","))
    }
}

/// Simple undirected graph: vertex count plus a symmetric irreflexive
/// adjacency relation. Immutable; edits return new graphs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    adj: Vec<bool>, // row-major n*n, symmetric, false diagonal
    partition: Option<PartitionSpec>,
}

impl Graph {
    /// Graph on `n` vertices with no edges.
    pub fn edgeless(n: usize) -> Self {
        Graph {
            n,
            adj: vec![false; n * n],
            partition: None,
        }
    }

    /// Complete multipartite graph: parts become consecutive vertex blocks;
    /// two vertices are adjacent iff they lie in different blocks. A single
    /// part would yield an edgeless (disconnected) graph and is rejected.
    pub fn complete_multipartite(parts: &PartitionSpec) -> Result<Self> {
        if parts.k() < 2 {
            return Err(Error::Disconnected(
                "a complete multipartite graph needs at least two parts to have any edges".into(),
            ));
        }
        let n = parts.n();
        let mut label = vec![0usize; n];
        for (b, range) in parts.block_ranges().into_iter().enumerate() {
            for v in range {
                label[v] = b;
            }
        }
        let mut g = Graph::edgeless(n);
        for u in 0..n {
            for v in 0..n {
                if label[u] != label[v] {
                    g.adj[u * n + v] = true;
                }
            }
        }
        g.partition = Some(parts.clone());
        Ok(g)
    }

    /// Graph from an explicit edge list. Duplicate edges are idempotent;
    /// self-loops and out-of-range endpoints are rejected.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::edgeless(n);
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::PreconditionViolated(format!(
                    "edge ({u},{v}) out of range for {n} vertices"
                )));
            }
            if u == v {
                return Err(Error::PreconditionViolated(format!("self-loop at vertex {u}")));
            }
            g.adj[u * n + v] = true;
            g.adj[v * n + u] = true;
        }
        Ok(g)
    }

    /// Parses edge-list text: one `u v` pair of 0-indexed vertices per line;
    /// blank lines and lines starting with `#` are ignored. The vertex count
    /// is the largest index seen plus one.
    pub fn from_edge_list(text: &str) -> Result<Self> {
        let mut edges = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut it = line.split_whitespace();
            let (u, v) = match (it.next(), it.next(), it.next()) {
                (Some(u), Some(v), None) => (u, v),
                _ => {
                    return Err(Error::Parse(format!(
                        "line {}: expected \"u v\", got {line:?}",
                        lineno + 1
                    )))
                }
            };
            let parse = |tok: &str| {
                tok.parse::<usize>()
                    .map_err(|_| Error::Parse(format!("line {}: bad vertex {tok:?}", lineno + 1)))
            };
            edges.push((parse(u)?, parse(v)?));
        }
        if edges.is_empty() {
            return Err(Error::Parse("edge list contains no edges".into()));
        }
        let n = edges.iter().map(|&(u, v)| u.max(v)).max().unwrap() + 1;
        Graph::from_edges(n, &edges)
    }

    /// Number of vertices.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Whether `{u, v}` is an edge.
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.adj[u * self.n + v]
    }

    /// Number of edges.
    pub fn edge_count(&self) -> usize {
        self.adj.iter().filter(|&&a| a).count() / 2
    }

    /// The partition this graph was built from, when constructed as a
    /// complete multipartite graph. Cleared by edge edits.
    pub fn partition(&self) -> Option<&PartitionSpec> {
        self.partition.as_ref()
    }

    /// Copy of the graph with edge `{u, v}` removed. The result may be
    /// disconnected; callers that need distances must re-verify via [`Graph::apsp`].
    pub fn delete_edge(&self, u: usize, v: usize) -> Result<Self> {
        if u >= self.n || v >= self.n {
            return Err(Error::PreconditionViolated(format!(
                "vertices ({u},{v}) out of range for {} vertices",
                self.n
            )));
        }
        if !self.has_edge(u, v) {
            return Err(Error::NoSuchEdge { u, v });
        }
        let mut g = self.clone();
        g.adj[u * self.n + v] = false;
        g.adj[v * self.n + u] = false;
        g.partition = None;
        Ok(g)
    }

    /// Copy of the graph with edge `{u, v}` added. Rejects self-loops and
    /// existing edges.
    pub fn add_edge(&self, u: usize, v: usize) -> Result<Self> {
        if u >= self.n || v >= self.n || u == v {
            return Err(Error::PreconditionViolated(format!(
                "cannot add edge ({u},{v}) to a {}-vertex graph",
                self.n
            )));
        }
        if self.has_edge(u, v) {
            return Err(Error::PreconditionViolated(format!("edge ({u},{v}) already present")));
        }
        let mut g = self.clone();
        g.adj[u * self.n + v] = true;
        g.adj[v * self.n + u] = true;
        g.partition = None;
        Ok(g)
    }

    /// Whether every vertex is reachable from vertex 0 (true for n <= 1).
    pub fn is_connected(&self) -> bool {
        if self.n <= 1 {
            return true;
        }
        let mut seen = vec![false; self.n];
        let mut stack = vec![0usize];
        seen[0] = true;
        let mut count = 1;
        while let Some(u) = stack.pop() {
            let row = &self.adj[u * self.n..(u + 1) * self.n];
            for (v, &adjacent) in row.iter().enumerate() {
                if adjacent && !seen[v] {
                    seen[v] = true;
                    count += 1;
                    stack.push(v);
                }
            }
        }
        count == self.n
    }

    /// All-pairs shortest-path distances by breadth-first search from every
    /// vertex. Fails on disconnected input.
    pub fn apsp(&self) -> Result<DistanceMatrix> {
        let n = self.n;
        let mut d = vec![0u32; n * n];
        let mut diam = 0u32;
        let mut queue = std::collections::VecDeque::new();
        for s in 0..n {
            let mut dist = vec![u32::MAX; n];
            dist[s] = 0;
            queue.clear();
            queue.push_back(s);
            while let Some(u) = queue.pop_front() {
                for v in 0..n {
                    if self.adj[u * n + v] && dist[v] == u32::MAX {
                        dist[v] = dist[u] + 1;
                        queue.push_back(v);
                    }
                }
            }
            for v in 0..n {
                if dist[v] == u32::MAX {
                    return Err(Error::Disconnected(format!(
                        "no path between vertices {s} and {v}"
                    )));
                }
                d[s * n + v] = dist[v];
                diam = diam.max(dist[v]);
            }
        }
        Ok(DistanceMatrix { n, d, diam })
    }
}

/// Exact unweighted shortest-path distances of a connected graph, along with
/// the diameter. Zero diagonal, symmetric, off-diagonal entries >= 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceMatrix {
    n: usize,
    d: Vec<u32>, // row-major
    diam: u32,
}

impl DistanceMatrix {
    /// Number of vertices.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Distance between `i` and `j`.
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.d[i * self.n + j]
    }

    /// Graph diameter (maximum entry; 0 for a single vertex).
    pub fn diam(&self) -> u32 {
        self.diam
    }
}

/// Random connected graph: a spanning tree plus a few extra edges.
#[cfg(test)]
pub(crate) fn random_connected(seed: u64, n: usize) -> Graph {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for v in 1..n {
        edges.push((v, rng.random_range(0..v)));
    }
    for _ in 0..rng.random_range(0..=n) {
        let u = rng.random_range(0..n);
        let v = rng.random_range(0..n);
        if u != v {
            edges.push((u, v));
        }
    }
    Graph::from_edges(n, &edges).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn partition_canonicalizes_to_non_increasing() {
        let p = PartitionSpec::new(&[2, 3, 1]).unwrap();
        assert_eq!(p.parts(), &[3, 2, 1]);
        assert_eq!(p.k(), 3);
        assert_eq!(p.n(), 6);
        assert_eq!(p.to_string(), "3,2,1");
    }

    #[test]
    fn partition_rejects_bad_input() {
        assert!(PartitionSpec::new(&[]).is_err());
        assert!(PartitionSpec::new(&[2, 0]).is_err());
        assert!(PartitionSpec::parse("2,x").is_err());
        assert!(PartitionSpec::parse("").is_err());
    }

    #[test]
    fn partition_parse_accepts_spaces() {
        let p = PartitionSpec::parse(" 3, 2 ,2").unwrap();
        assert_eq!(p.parts(), &[3, 2, 2]);
    }

    #[test]
    fn complete_split_examples() {
        assert_eq!(PartitionSpec::complete_split(5, 1).unwrap().parts(), &[4, 1]);
        assert_eq!(PartitionSpec::complete_split(4, 3).unwrap().parts(), &[1, 1, 1, 1]);
        assert_eq!(PartitionSpec::complete_split(6, 2).unwrap().parts(), &[4, 1, 1]);
        assert!(PartitionSpec::complete_split(5, 0).is_err());
        assert!(PartitionSpec::complete_split(5, 5).is_err());
    }

    #[test]
    fn turan_examples() {
        assert_eq!(PartitionSpec::turan(5, 2).unwrap().parts(), &[3, 2]);
        assert_eq!(PartitionSpec::turan(6, 3).unwrap().parts(), &[2, 2, 2]);
        assert_eq!(PartitionSpec::turan(10, 3).unwrap().parts(), &[4, 3, 3]);
        assert!(PartitionSpec::turan(3, 4).is_err());
        assert!(PartitionSpec::turan(3, 1).is_err());
    }

    #[test]
    fn complete_multipartite_edge_counts() {
        let k2 = Graph::complete_multipartite(&PartitionSpec::new(&[1, 1]).unwrap()).unwrap();
        assert_eq!(k2.edge_count(), 1);
        let c4 = Graph::complete_multipartite(&PartitionSpec::new(&[2, 2]).unwrap()).unwrap();
        assert_eq!(c4.edge_count(), 4);
        let octahedron =
            Graph::complete_multipartite(&PartitionSpec::new(&[2, 2, 2]).unwrap()).unwrap();
        assert_eq!(octahedron.edge_count(), 12);
    }

    #[test]
    fn single_part_is_rejected_as_disconnected() {
        let err = Graph::complete_multipartite(&PartitionSpec::new(&[5]).unwrap()).unwrap_err();
        assert!(matches!(err, Error::Disconnected(_)));
    }

    #[test]
    fn delete_edge_examples() {
        // K_{2,2} minus an edge is the path P4.
        let c4 = Graph::complete_multipartite(&PartitionSpec::new(&[2, 2]).unwrap()).unwrap();
        let p4 = c4.delete_edge(0, 2).unwrap();
        assert_eq!(p4.edge_count(), 3);
        assert!(p4.is_connected());
        assert!(p4.partition().is_none());

        // K2 minus its edge is disconnected; APSP flags it.
        let k2 = Graph::complete_multipartite(&PartitionSpec::new(&[1, 1]).unwrap()).unwrap();
        let e0 = k2.delete_edge(0, 1).unwrap();
        assert!(!e0.is_connected());
        assert!(matches!(e0.apsp(), Err(Error::Disconnected(_))));

        // Triangle minus an edge is P3.
        let k3 = Graph::complete_multipartite(&PartitionSpec::new(&[1, 1, 1]).unwrap()).unwrap();
        let p3 = k3.delete_edge(0, 1).unwrap();
        assert_eq!(p3.edge_count(), 2);
        assert!(p3.is_connected());
    }

    #[test]
    fn delete_edge_requires_an_edge() {
        let c4 = Graph::complete_multipartite(&PartitionSpec::new(&[2, 2]).unwrap()).unwrap();
        assert!(matches!(c4.delete_edge(0, 1), Err(Error::NoSuchEdge { u: 0, v: 1 })));
        assert!(c4.delete_edge(0, 9).is_err());
    }

    #[test]
    fn apsp_examples() {
        let k3 = Graph::complete_multipartite(&PartitionSpec::new(&[1, 1, 1]).unwrap()).unwrap();
        let d = k3.apsp().unwrap();
        assert_eq!(d.diam(), 1);
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(d.get(i, j), u32::from(i != j));
            }
        }

        let c4 = Graph::complete_multipartite(&PartitionSpec::new(&[2, 2]).unwrap()).unwrap();
        let d = c4.apsp().unwrap();
        assert_eq!(d.diam(), 2);
        assert_eq!(d.get(0, 1), 2); // same part
        assert_eq!(d.get(0, 2), 1); // across parts

        // P4 = K_{2,2} minus an edge: endpoints of the deleted edge sit at distance 3.
        let p4 = c4.delete_edge(0, 2).unwrap();
        let d = p4.apsp().unwrap();
        assert_eq!(d.diam(), 3);
        assert_eq!(d.get(0, 2), 3);
    }

    #[test]
    fn edge_list_parsing() {
        let g = Graph::from_edge_list("# path on four vertices\n0 1\n1 2\n\n2 3\n").unwrap();
        assert_eq!(g.n(), 4);
        assert_eq!(g.edge_count(), 3);
        assert!(Graph::from_edge_list("0 1 2").is_err());
        assert!(Graph::from_edge_list("0 x").is_err());
        assert!(Graph::from_edge_list("# nothing\n").is_err());
        assert!(Graph::from_edge_list("3 3").is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn multipartite_distances_are_one_across_two_within(
            sizes in prop::collection::vec(1usize..=5, 2..=5)
        ) {
            let parts = PartitionSpec::new(&sizes).unwrap();
            let g = Graph::complete_multipartite(&parts).unwrap();
            let d = g.apsp().unwrap();
            let ranges = parts.block_ranges();
            let block_of = |v: usize| ranges.iter().position(|r| r.contains(&v)).unwrap();
            for u in 0..g.n() {
                for v in 0..g.n() {
                    if u == v {
                        prop_assert_eq!(d.get(u, v), 0);
                    } else if block_of(u) == block_of(v) {
                        prop_assert_eq!(d.get(u, v), 2);
                    } else {
                        prop_assert_eq!(d.get(u, v), 1);
                    }
                }
            }
        }

        #[test]
        fn delete_then_readd_restores_adjacency(seed in any::<u64>(), n in 2usize..=12) {
            let g = random_connected(seed, n);
            // first edge in index order
            let (u, v) = (0..n)
                .flat_map(|u| (0..n).map(move |v| (u, v)))
                .find(|&(u, v)| g.has_edge(u, v))
                .unwrap();
            let restored = g.delete_edge(u, v).unwrap().add_edge(u, v).unwrap();
            for a in 0..n {
                for b in 0..n {
                    prop_assert_eq!(g.has_edge(a, b), restored.has_edge(a, b));
                }
            }
        }

        #[test]
        fn triangle_inequality_holds(seed in any::<u64>(), n in 2usize..=12) {
            let d = random_connected(seed, n).apsp().unwrap();
            for u in 0..n {
                for v in 0..n {
                    for w in 0..n {
                        prop_assert!(d.get(u, w) <= d.get(u, v) + d.get(v, w));
                    }
                }
            }
        }
    }
}
