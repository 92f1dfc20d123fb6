//! Vertex-weighted simple graphs and the metric primitives used everywhere else:
//! BFS distances, balls, powers, set distances, quotients and separator checks.
//!
//! Distances are hop counts. Unreachable pairs are reported as [`INF`].

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::error::GraphError;

/// Distance sentinel for vertices in different components.
pub const INF: usize = usize::MAX;

/// Undirected simple graph with nonnegative vertex weights.
///
/// Adjacency lists are sorted and symmetric. The graph is immutable once built.
#[derive(Clone, Debug, PartialEq)]
pub struct WeightedGraph {
    adj: Vec<Vec<usize>>,
    weight: Vec<f64>,
    edge_count: usize,
}

impl WeightedGraph {
    /// Graph on `n` vertices with unit weights. Rejects self-loops, duplicate
    /// edges (in either orientation) and out-of-range endpoints.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(GraphError::VertexOutOfRange { vertex: u.max(v), n });
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for (u, list) in adj.iter_mut().enumerate() {
            list.sort_unstable();
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                return Err(GraphError::DuplicateEdge(u.min(w[0]), u.max(w[0])));
            }
        }
        Ok(Self {
            adj,
            weight: vec![1.0; n],
            edge_count: edges.len(),
        })
    }

    /// Builds from adjacency lists that are already known to be simple and
    /// symmetric. Lists are sorted and deduplicated here.
    pub(crate) fn from_adjacency_unchecked(mut adj: Vec<Vec<usize>>, weight: Vec<f64>) -> Self {
        let mut twice = 0;
        for list in adj.iter_mut() {
            list.sort_unstable();
            list.dedup();
            twice += list.len();
        }
        Self {
            adj,
            weight,
            edge_count: twice / 2,
        }
    }

    /// Replaces the weight function.
    pub fn with_weights(mut self, weight: Vec<f64>) -> Result<Self, GraphError> {
        if weight.len() != self.n() {
            return Err(GraphError::WeightCount {
                expected: self.n(),
                found: weight.len(),
            });
        }
        if let Some((v, &w)) = weight.iter().enumerate().find(|(_, w)| !w.is_finite() || **w < 0.0) {
            return Err(GraphError::InvalidWeight { vertex: v, weight: w });
        }
        self.weight = weight;
        Ok(self)
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn weight(&self, v: usize) -> f64 {
        self.weight[v]
    }

    pub fn weights(&self) -> &[f64] {
        &self.weight
    }

    /// Total weight `W`.
    pub fn total_weight(&self) -> f64 {
        self.weight.iter().sum()
    }

    pub fn weight_of<I: IntoIterator<Item = usize>>(&self, vertices: I) -> f64 {
        vertices.into_iter().map(|v| self.weight[v]).sum()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
    }

    /// Induced subgraph on `vertices` (any order, no duplicates). Returns the
    /// subgraph and the local-to-global vertex map, which is `vertices` sorted.
    pub fn induced_subgraph(&self, vertices: &[usize]) -> (WeightedGraph, Vec<usize>) {
        let mut map: Vec<usize> = vertices.to_vec();
        map.sort_unstable();
        let mut local = vec![INF; self.n()];
        for (i, &v) in map.iter().enumerate() {
            local[v] = i;
        }
        let adj = map
            .iter()
            .map(|&v| {
                self.adj[v]
                    .iter()
                    .filter_map(|&u| (local[u] != INF).then_some(local[u]))
                    .collect()
            })
            .collect();
        let weight = map.iter().map(|&v| self.weight[v]).collect();
        (Self::from_adjacency_unchecked(adj, weight), map)
    }

    /// Connected components of the graph with the `removed` vertices deleted.
    /// Each component is sorted; components are ordered by smallest vertex.
    pub fn components_avoiding(&self, removed: &[bool]) -> Vec<Vec<usize>> {
        let mut seen = removed.to_vec();
        let mut out = Vec::new();
        let mut queue = VecDeque::new();
        for s in 0..self.n() {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            queue.push_back(s);
            let mut comp = Vec::new();
            while let Some(u) = queue.pop_front() {
                comp.push(u);
                for &v in &self.adj[u] {
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

    pub fn components(&self) -> Vec<Vec<usize>> {
        self.components_avoiding(&vec![false; self.n()])
    }

    /// Whether `G[set]` is connected. The empty set counts as disconnected.
    pub fn induces_connected(&self, set: &[usize]) -> bool {
        let Some(&start) = set.first() else {
            return false;
        };
        let mut member = vec![false; self.n()];
        for &v in set {
            member[v] = true;
        }
        let dist = bfs_within(self, start, &member);
        set.iter().all(|&v| dist[v] != INF)
    }
}

/// Multi-source BFS. Returns the hop distance to the nearest source, or
/// [`INF`]. An empty source set gives all-[`INF`].
pub fn bfs_distances(g: &WeightedGraph, sources: &[usize]) -> Vec<usize> {
    bfs_bounded(g, sources, INF)
}

/// Multi-source BFS that stops expanding at depth `limit`; vertices farther
/// away are left at [`INF`].
pub fn bfs_bounded(g: &WeightedGraph, sources: &[usize], limit: usize) -> Vec<usize> {
    let mut dist = vec![INF; g.n()];
    let mut queue = VecDeque::new();
    for &s in sources {
        if dist[s] != 0 {
            dist[s] = 0;
            queue.push_back(s);
        }
    }
    while let Some(u) = queue.pop_front() {
        let du = dist[u];
        if du >= limit {
            continue;
        }
        for &v in g.neighbors(u) {
            if dist[v] == INF {
                dist[v] = du + 1;
                queue.push_back(v);
            }
        }
    }
    dist
}

/// BFS from `start` inside the subgraph induced by `member`.
pub(crate) fn bfs_within(g: &WeightedGraph, start: usize, member: &[bool]) -> Vec<usize> {
    let mut dist = vec![INF; g.n()];
    let mut queue = VecDeque::new();
    dist[start] = 0;
    queue.push_back(start);
    while let Some(u) = queue.pop_front() {
        for &v in g.neighbors(u) {
            if member[v] && dist[v] == INF {
                dist[v] = dist[u] + 1;
                queue.push_back(v);
            }
        }
    }
    dist
}

/// `B_G(u, r)` as a sorted vertex list.
pub fn ball(g: &WeightedGraph, u: usize, r: usize) -> Vec<usize> {
    let dist = bfs_bounded(g, &[u], r);
    (0..g.n()).filter(|&v| dist[v] <= r).collect()
}

/// The `r`-th power: same vertices and weights, `uv` an edge iff
/// `1 <= dist(u, v) <= r`.
pub fn power(g: &WeightedGraph, r: usize) -> Result<WeightedGraph, GraphError> {
    if r == 0 {
        return Err(GraphError::ZeroPower);
    }
    if r == 1 {
        return Ok(g.clone());
    }
    let n = g.n();
    let mut adj = vec![Vec::new(); n];
    let mut dist = vec![INF; n];
    let mut touched = Vec::new();
    let mut queue = VecDeque::new();
    for s in 0..n {
        dist[s] = 0;
        touched.push(s);
        queue.push_back(s);
        while let Some(u) = queue.pop_front() {
            if dist[u] == r {
                continue;
            }
            for &v in g.neighbors(u) {
                if dist[v] == INF {
                    dist[v] = dist[u] + 1;
                    touched.push(v);
                    queue.push_back(v);
                }
            }
        }
        for &v in &touched {
            if v != s {
                adj[s].push(v);
            }
            dist[v] = INF;
        }
        touched.clear();
    }
    Ok(WeightedGraph::from_adjacency_unchecked(adj, g.weights().to_vec()))
}

/// Smallest distance between a vertex of `x` and a vertex of `y`.
pub fn set_distance(g: &WeightedGraph, x: &[usize], y: &[usize]) -> Result<usize, GraphError> {
    if x.is_empty() || y.is_empty() {
        return Err(GraphError::EmptySet);
    }
    let dist = bfs_distances(g, x);
    Ok(y.iter().map(|&v| dist[v]).min().unwrap_or(INF))
}

/// A pair `(A, B)` covering `V(G)` with no edge between `A \ B` and `B \ A`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Separation {
    #[serde(rename = "A")]
    pub side_a: Vec<usize>,
    #[serde(rename = "B")]
    pub side_b: Vec<usize>,
}

impl Separation {
    /// Validates the separation invariants, including `w(A), w(B) > 0`.
    pub fn new(g: &WeightedGraph, mut side_a: Vec<usize>, mut side_b: Vec<usize>) -> Result<Self, GraphError> {
        side_a.sort_unstable();
        side_a.dedup();
        side_b.sort_unstable();
        side_b.dedup();
        let n = g.n();
        let mut in_a = vec![false; n];
        let mut in_b = vec![false; n];
        for &v in side_a.iter().chain(side_b.iter()) {
            if v >= n {
                return Err(GraphError::VertexOutOfRange { vertex: v, n });
            }
        }
        side_a.iter().for_each(|&v| in_a[v] = true);
        side_b.iter().for_each(|&v| in_b[v] = true);
        if let Some(v) = (0..n).find(|&v| !in_a[v] && !in_b[v]) {
            return Err(GraphError::InvalidSeparation(format!("vertex {v} in neither side")));
        }
        for (u, v) in g.edges() {
            let a_only = |x: usize| in_a[x] && !in_b[x];
            let b_only = |x: usize| in_b[x] && !in_a[x];
            if (a_only(u) && b_only(v)) || (a_only(v) && b_only(u)) {
                return Err(GraphError::InvalidSeparation(format!("edge {u}-{v} crosses")));
            }
        }
        if g.weight_of(side_a.iter().copied()) <= 0.0 || g.weight_of(side_b.iter().copied()) <= 0.0 {
            return Err(GraphError::InvalidSeparation("a side has zero weight".into()));
        }
        Ok(Self { side_a, side_b })
    }

    /// `A ∩ B`, sorted.
    pub fn separator(&self) -> Vec<usize> {
        let mut out = Vec::new();
        let (mut i, mut j) = (0, 0);
        while i < self.side_a.len() && j < self.side_b.len() {
            match self.side_a[i].cmp(&self.side_b[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    out.push(self.side_a[i]);
                    i += 1;
                    j += 1;
                }
            }
        }
        out
    }

    /// `|A ∩ B| / (w(A) w(B))`.
    pub fn sparsity(&self, g: &WeightedGraph) -> f64 {
        let wa = g.weight_of(self.side_a.iter().copied());
        let wb = g.weight_of(self.side_b.iter().copied());
        self.separator().len() as f64 / (wa * wb)
    }
}

/// A separator together with ball centers claimed to cover it.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SeparatorCertificate {
    #[serde(rename = "S")]
    pub separator: Vec<usize>,
    pub centers: Vec<usize>,
    pub radius: usize,
}

impl SeparatorCertificate {
    pub fn verify(&self, g: &WeightedGraph) -> SeparatorReport {
        verify_separator(g, &self.separator, &self.centers, self.radius)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SeparatorReport {
    /// Every component of `G - S` weighs at most `W/2`.
    pub balanced: bool,
    /// Every vertex of `S` is within the radius of some center.
    pub covered: bool,
    pub heaviest_component: f64,
    pub uncovered: Vec<usize>,
}

impl SeparatorReport {
    pub fn passed(&self) -> bool {
        self.balanced && self.covered
    }
}

pub fn verify_separator(g: &WeightedGraph, separator: &[usize], centers: &[usize], radius: usize) -> SeparatorReport {
    let n = g.n();
    let in_range = |v: &usize| *v < n;
    if !separator.iter().all(in_range) || !centers.iter().all(in_range) {
        return SeparatorReport {
            balanced: false,
            covered: false,
            heaviest_component: f64::INFINITY,
            uncovered: separator.iter().copied().filter(|v| *v >= n).collect(),
        };
    }
    let mut removed = vec![false; n];
    separator.iter().for_each(|&v| removed[v] = true);
    let heaviest = g
        .components_avoiding(&removed)
        .into_iter()
        .map(|c| g.weight_of(c))
        .fold(0.0, f64::max);
    let dist = bfs_bounded(g, centers, radius);
    let uncovered: Vec<usize> = separator.iter().copied().filter(|&s| dist[s] > radius).collect();
    SeparatorReport {
        balanced: heaviest <= g.total_weight() / 2.0,
        covered: uncovered.is_empty(),
        heaviest_component: heaviest,
        uncovered,
    }
}

/// Greedy maximal `r`-scattered subset of `s`, scanned in increasing vertex
/// order. Every vertex of `s` ends up within `r` of a chosen center and the
/// centers are pairwise more than `r` apart.
pub fn greedy_cover(g: &WeightedGraph, s: &[usize], r: usize) -> Vec<usize> {
    let mut order = s.to_vec();
    order.sort_unstable();
    order.dedup();
    let mut covered = vec![false; g.n()];
    let mut centers = Vec::new();
    for v in order {
        if covered[v] {
            continue;
        }
        centers.push(v);
        for u in ball(g, v, r) {
            covered[u] = true;
        }
    }
    centers
}

/// The contracted graph `G/𝒳` with inherited weights and the maps between
/// original vertices and clusters.
#[derive(Clone, Debug)]
pub struct QuotientGraph {
    pub graph: WeightedGraph,
    pub cluster_of: Vec<usize>,
    pub clusters: Vec<Vec<usize>>,
}

impl QuotientGraph {
    /// Union of the clusters with the given quotient ids, sorted.
    pub fn expand(&self, quotient_vertices: &[usize]) -> Vec<usize> {
        let mut out: Vec<usize> = quotient_vertices
            .iter()
            .flat_map(|&x| self.clusters[x].iter().copied())
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }
}

/// Contracts every cluster. The clusters must be disjoint, cover `V(G)` and
/// each induce a connected subgraph.
pub fn quotient(g: &WeightedGraph, clusters: &[Vec<usize>]) -> Result<QuotientGraph, GraphError> {
    let n = g.n();
    let mut cluster_of = vec![INF; n];
    for (i, c) in clusters.iter().enumerate() {
        if c.is_empty() {
            return Err(GraphError::InvalidPartition(format!("cluster {i} is empty")));
        }
        for &v in c {
            if v >= n {
                return Err(GraphError::VertexOutOfRange { vertex: v, n });
            }
            if cluster_of[v] != INF {
                return Err(GraphError::InvalidPartition(format!("vertex {v} in two clusters")));
            }
            cluster_of[v] = i;
        }
    }
    if let Some(v) = cluster_of.iter().position(|&c| c == INF) {
        return Err(GraphError::InvalidPartition(format!("vertex {v} not covered")));
    }
    for (i, c) in clusters.iter().enumerate() {
        if !g.induces_connected(c) {
            return Err(GraphError::InvalidPartition(format!("cluster {i} is disconnected")));
        }
    }
    let k = clusters.len();
    let mut adj = vec![Vec::new(); k];
    for (u, v) in g.edges() {
        let (a, b) = (cluster_of[u], cluster_of[v]);
        if a != b {
            adj[a].push(b);
            adj[b].push(a);
        }
    }
    let weight = clusters.iter().map(|c| g.weight_of(c.iter().copied())).collect();
    let sorted: Vec<Vec<usize>> = clusters
        .iter()
        .map(|c| {
            let mut c = c.clone();
            c.sort_unstable();
            c
        })
        .collect();
    Ok(QuotientGraph {
        graph: WeightedGraph::from_adjacency_unchecked(adj, weight),
        cluster_of,
        clusters: sorted,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(n: usize) -> WeightedGraph {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        WeightedGraph::from_edges(n, &edges).unwrap()
    }

    fn cycle(n: usize) -> WeightedGraph {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        WeightedGraph::from_edges(n, &edges).unwrap()
    }

    fn clique(n: usize) -> WeightedGraph {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                edges.push((u, v));
            }
        }
        WeightedGraph::from_edges(n, &edges).unwrap()
    }

    #[test]
    fn rejects_bad_edges() {
        assert!(matches!(
            WeightedGraph::from_edges(2, &[(0, 0)]),
            Err(GraphError::SelfLoop(0))
        ));
        assert!(matches!(
            WeightedGraph::from_edges(2, &[(0, 1), (1, 0)]),
            Err(GraphError::DuplicateEdge(0, 1))
        ));
        assert!(WeightedGraph::from_edges(2, &[(0, 2)]).is_err());
        assert!(path(3).with_weights(vec![1.0, -1.0, 0.0]).is_err());
    }

    #[test]
    fn bfs_examples() {
        let p5 = path(5);
        assert_eq!(bfs_distances(&p5, &[0]), vec![0, 1, 2, 3, 4]);
        assert_eq!(bfs_distances(&p5, &[0, 4]), vec![0, 1, 2, 1, 0]);
        let two = WeightedGraph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        assert_eq!(bfs_distances(&two, &[0]), vec![0, 1, INF, INF]);
        assert_eq!(bfs_distances(&p5, &[]), vec![INF; 5]);
    }

    #[test]
    fn ball_examples() {
        assert_eq!(ball(&path(5), 2, 1), vec![1, 2, 3]);
        assert_eq!(ball(&cycle(6), 0, 2), vec![0, 1, 2, 4, 5]);
        assert_eq!(ball(&clique(4), 3, 0), vec![3]);
    }

    #[test]
    fn power_examples() {
        let p2 = power(&path(5), 2).unwrap();
        let edges: Vec<_> = p2.edges().collect();
        assert_eq!(edges, vec![(0, 1), (0, 2), (1, 2), (1, 3), (2, 3), (2, 4), (3, 4)]);
        assert_eq!(
            power(&cycle(6), 3).unwrap().edges().collect::<Vec<_>>(),
            clique(6).edges().collect::<Vec<_>>()
        );
        assert_eq!(power(&cycle(7), 1).unwrap(), cycle(7));
        assert!(matches!(power(&cycle(7), 0), Err(GraphError::ZeroPower)));
    }

    #[test]
    fn set_distance_examples() {
        assert_eq!(set_distance(&cycle(12), &[0, 1], &[6, 7]).unwrap(), 5);
        assert_eq!(set_distance(&path(5), &[0], &[0, 3]).unwrap(), 0);
        assert_eq!(set_distance(&path(5), &[0], &[4]).unwrap(), 4);
        assert!(set_distance(&path(5), &[], &[4]).is_err());
    }

    #[test]
    fn verify_separator_examples() {
        let p5 = path(5);
        assert!(verify_separator(&p5, &[2], &[2], 0).passed());
        let r = verify_separator(&clique(4), &[0], &[0], 0);
        assert!(!r.balanced && r.covered);
        let r = verify_separator(&p5, &[1, 3], &[2], 0);
        assert!(r.balanced && !r.covered);
        assert_eq!(r.uncovered, vec![1, 3]);
    }

    #[test]
    fn greedy_cover_examples() {
        let p5 = path(5);
        let c = greedy_cover(&p5, &[0, 1, 2, 3, 4], 2);
        assert_eq!(c, vec![0, 3]);
        assert!(verify_separator(&p5, &[0, 1, 2, 3, 4], &c, 4).covered);
        assert_eq!(greedy_cover(&p5, &[3], 7), vec![3]);
        let c6 = cycle(6);
        let all: Vec<_> = (0..6).collect();
        let c = greedy_cover(&c6, &all, 1);
        assert!((2..=3).contains(&c.len()));
        let d = bfs_distances(&c6, &c);
        assert!(d.iter().all(|&x| x <= 2));
    }

    #[test]
    fn quotient_examples() {
        let q = quotient(&cycle(6), &[vec![0, 1], vec![2, 3], vec![4, 5]]).unwrap();
        assert_eq!(q.graph.edges().collect::<Vec<_>>(), vec![(0, 1), (0, 2), (1, 2)]);
        assert_eq!(q.graph.weights(), &[2.0, 2.0, 2.0]);
        let g = cycle(5);
        let singles: Vec<Vec<usize>> = (0..5).map(|v| vec![v]).collect();
        assert_eq!(quotient(&g, &singles).unwrap().graph, g);
        let q = quotient(&clique(4), &[vec![0, 1], vec![2, 3]]).unwrap();
        assert_eq!(q.graph.edge_count(), 1);
        assert_eq!(q.graph.weights(), &[2.0, 2.0]);
    }

    #[test]
    fn quotient_rejects_bad_partitions() {
        let g = path(4);
        assert!(quotient(&g, &[vec![0, 1], vec![2]]).is_err());
        assert!(quotient(&g, &[vec![0, 1], vec![1, 2, 3]]).is_err());
        assert!(quotient(&g, &[vec![0, 2], vec![1, 3]]).is_err());
    }

    #[test]
    fn separation_validation() {
        let p3 = path(3);
        let s = Separation::new(&p3, vec![0, 1], vec![1, 2]).unwrap();
        assert_eq!(s.separator(), vec![1]);
        assert!((s.sparsity(&p3) - 0.25).abs() < 1e-12);
        assert!(Separation::new(&p3, vec![0], vec![1, 2]).is_err());
        assert!(Separation::new(&p3, vec![0, 1, 2], vec![1]).is_ok());
        assert!(Separation::new(&p3, vec![0, 1], vec![1]).is_err());
        assert!(Separation::new(&p3, vec![0], vec![2]).is_err());
    }
}
