//! Simple undirected graphs and their exact metric structure.

mod canon;
pub mod families;
pub mod graph6;
mod metric;
mod tree_canon;

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

pub use canon::{
    automorphism_mapping, canonical_form, canonical_form_with_limit, canonical_labeling,
    CanonicalForm, DEFAULT_CANON_LIMIT,
};
pub use metric::{is_dvdr, is_dvdr_by_transmission, is_transmission_regular, DistanceProfile};

/// Largest order accepted by dense single-graph operations.
pub const MAX_DENSE_ORDER: usize = 4096;

/// A simple undirected graph on vertices `0..n`.
///
/// Neighbour lists are kept sorted, so two graphs compare equal exactly when
/// they have the same labeled edge set.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
}

/// Edge-list interchange form `{"n": .., "edges": [[u, v], ..]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeList {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
}

impl Graph {
    /// Graph with `n` vertices and no edges.
    pub fn empty(n: usize) -> Self {
        Graph {
            adj: vec![Vec::new(); n],
        }
    }

    /// Build from an edge list; duplicate edges collapse.
    pub fn from_edge_list(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut adj = vec![Vec::new(); n];
        for (i, &(u, v)) in edges.iter().enumerate() {
            if u >= n || v >= n {
                return Err(Error::InvalidGraph(format!(
                    "edge #{i} ({u}, {v}) out of range for n = {n}"
                )));
            }
            if u == v {
                return Err(Error::InvalidGraph(format!("edge #{i} is a self-loop at {u}")));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
        }
        Ok(Graph { adj })
    }

    pub(crate) fn from_adjacency_unchecked(adj: Vec<Vec<usize>>) -> Self {
        Graph { adj }
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn neighbors(&self, u: usize) -> &[usize] {
        &self.adj[u]
    }

    pub fn degree(&self, u: usize) -> usize {
        self.adj[u].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adj.iter().map(Vec::len).collect()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n() && self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    pub fn non_edges(&self) -> Vec<(usize, usize)> {
        let n = self.n();
        let mut out = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if !self.has_edge(u, v) {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn edge_list(&self) -> EdgeList {
        EdgeList {
            n: self.n(),
            edges: self.edges().map(|(u, v)| [u, v]).collect(),
        }
    }

    pub fn from_edge_list_json(list: &EdgeList) -> Result<Self> {
        let edges: Vec<(usize, usize)> = list.edges.iter().map(|e| (e[0], e[1])).collect();
        Graph::from_edge_list(list.n, &edges)
    }

    /// Copy with edge `uv` added (no-op when present).
    pub fn with_edge(&self, u: usize, v: usize) -> Self {
        let mut g = self.clone();
        g.insert_edge(u, v);
        g
    }

    /// Copy with edge `uv` removed (no-op when absent).
    pub fn without_edge(&self, u: usize, v: usize) -> Self {
        let mut g = self.clone();
        g.delete_edge(u, v);
        g
    }

    pub(crate) fn insert_edge(&mut self, u: usize, v: usize) {
        debug_assert!(u != v);
        if let Err(pos) = self.adj[u].binary_search(&v) {
            self.adj[u].insert(pos, v);
        }
        if let Err(pos) = self.adj[v].binary_search(&u) {
            self.adj[v].insert(pos, u);
        }
    }

    pub(crate) fn delete_edge(&mut self, u: usize, v: usize) {
        if let Ok(pos) = self.adj[u].binary_search(&v) {
            self.adj[u].remove(pos);
        }
        if let Ok(pos) = self.adj[v].binary_search(&u) {
            self.adj[v].remove(pos);
        }
    }

    /// Append a new isolated vertex and return its index.
    pub(crate) fn push_vertex(&mut self) -> usize {
        self.adj.push(Vec::new());
        self.adj.len() - 1
    }

    /// Relabel so vertex `u` becomes `perm[u]`.
    pub fn relabel(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.n());
        let mut adj = vec![Vec::new(); self.n()];
        for (u, list) in self.adj.iter().enumerate() {
            let mut mapped: Vec<usize> = list.iter().map(|&v| perm[v]).collect();
            mapped.sort_unstable();
            adj[perm[u]] = mapped;
        }
        Graph { adj }
    }

    /// `true` iff a BFS from vertex 0 reaches every vertex (the empty graph counts as connected).
    pub fn is_connected(&self) -> bool {
        let n = self.n();
        if n == 0 {
            return true;
        }
        self.bfs_distances(0).iter().all(|d| d.is_some())
    }

    /// Hop distances from `src`; `None` for unreachable vertices.
    pub fn bfs_distances(&self, src: usize) -> Vec<Option<u32>> {
        let mut dist = vec![None; self.n()];
        let mut queue = VecDeque::new();
        dist[src] = Some(0);
        queue.push_back(src);
        while let Some(u) = queue.pop_front() {
            let du = dist[u].unwrap();
            for &v in &self.adj[u] {
                if dist[v].is_none() {
                    dist[v] = Some(du + 1);
                    queue.push_back(v);
                }
            }
        }
        dist
    }

    /// Connected with `n − 1` edges.
    pub fn is_tree(&self) -> bool {
        self.n() >= 1 && self.edge_count() + 1 == self.n() && self.is_connected()
    }

    /// Connected with exactly one cycle.
    pub fn is_unicyclic(&self) -> bool {
        self.n() >= 3 && self.edge_count() == self.n() && self.is_connected()
    }

    pub fn is_complete(&self) -> bool {
        let n = self.n();
        self.adj.iter().all(|l| l.len() + 1 == n)
    }

    pub fn is_regular(&self) -> bool {
        match self.adj.first() {
            None => true,
            Some(first) => self.adj.iter().all(|l| l.len() == first.len()),
        }
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Vertices of the unique cycle, in cyclic order, when the graph is unicyclic.
    pub fn unique_cycle(&self) -> Option<Vec<usize>> {
        if !self.is_unicyclic() {
            return None;
        }
        // Strip leaves; what remains is the cycle.
        let n = self.n();
        let mut deg = self.degrees();
        let mut removed = vec![false; n];
        let mut stack: Vec<usize> = (0..n).filter(|&v| deg[v] == 1).collect();
        while let Some(v) = stack.pop() {
            removed[v] = true;
            for &w in &self.adj[v] {
                if !removed[w] {
                    deg[w] -= 1;
                    if deg[w] == 1 {
                        stack.push(w);
                    }
                }
            }
        }
        let start = (0..n).find(|&v| !removed[v])?;
        let mut cycle = vec![start];
        let mut prev = usize::MAX;
        let mut cur = start;
        loop {
            let next = self.adj[cur]
                .iter()
                .copied()
                .find(|&w| !removed[w] && w != prev)?;
            if next == start {
                break;
            }
            cycle.push(next);
            prev = cur;
            cur = next;
        }
        Some(cycle)
    }

    pub(crate) fn require_connected(&self) -> Result<()> {
        if self.n() == 0 {
            return Err(Error::InvalidGraph("graph has no vertices".into()));
        }
        if !self.is_connected() {
            return Err(Error::Disconnected);
        }
        Ok(())
    }
}

impl Serialize for Graph {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.edge_list().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Graph {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let list = EdgeList::deserialize(d)?;
        Graph::from_edge_list_json(&list).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn from_edge_list_builds_path() {
        let g = Graph::from_edge_list(3, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(g.edge_count(), 2);
        assert_eq!(g.degrees(), vec![1, 2, 1]);
        assert!(g.is_connected());
        assert!(g.is_tree());
    }

    #[test]
    fn from_edge_list_dedups_and_rejects_bad_input() {
        let g = Graph::from_edge_list(2, &[(0, 1), (1, 0), (0, 1)]).unwrap();
        assert_eq!(g.edge_count(), 1);
        assert!(matches!(
            Graph::from_edge_list(3, &[(1, 1)]),
            Err(Error::InvalidGraph(_))
        ));
        assert!(matches!(
            Graph::from_edge_list(3, &[(0, 3)]),
            Err(Error::InvalidGraph(_))
        ));
    }

    #[test]
    fn connectivity_cases() {
        assert!(Graph::empty(1).is_connected());
        let two_edges = Graph::from_edge_list(4, &[(0, 1), (2, 3)]).unwrap();
        assert!(!two_edges.is_connected());
        assert_eq!(two_edges.require_connected(), Err(Error::Disconnected));
        assert!(families::path(5).is_connected());
    }

    #[test]
    fn unique_cycle_of_star_plus() {
        let g = families::star_plus(6).unwrap();
        let mut c = g.unique_cycle().unwrap();
        c.sort();
        assert_eq!(c, vec![0, 1, 2]);
        assert!(families::path(4).unique_cycle().is_none());
    }

    #[test]
    fn edge_list_json_round_trip() {
        let g = families::cycle(5).unwrap();
        let text = serde_json::to_string(&g).unwrap();
        assert_eq!(text, r#"{"n":5,"edges":[[0,1],[0,4],[1,2],[2,3],[3,4]]}"#);
        let back: Graph = serde_json::from_str(&text).unwrap();
        assert_eq!(back, g);
        assert!(serde_json::from_str::<Graph>(r#"{"n":2,"edges":[[0,0]]}"#).is_err());
    }

    #[test]
    fn relabel_preserves_edges() {
        let g = families::path(4);
        let h = g.relabel(&[2, 0, 3, 1]);
        assert!(h.has_edge(2, 0) && h.has_edge(0, 3) && h.has_edge(3, 1));
        assert_eq!(h.edge_count(), 3);
    }
}
