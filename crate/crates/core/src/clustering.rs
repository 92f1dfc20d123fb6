//! Connected partitions: low-diameter clusterings from exponential shifts,
//! the close-pair set Ξ, and star partitions with a sparse quotient.

use std::cmp::Ordering;
use std::collections::{BinaryHeap, VecDeque};

use rand::Rng;
use rand_distr::{Distribution, Exp};

use crate::error::{ClusteringError, GraphError};
use crate::graph::{bfs_within, quotient, QuotientGraph, WeightedGraph, INF};

/// A partition of `V(G)` into sets that each induce a connected subgraph.
#[derive(Clone, Debug, PartialEq)]
pub struct ConnectedPartition {
    clusters: Vec<Vec<usize>>,
    centers: Vec<usize>,
    /// Eccentricity of the center inside `G[X]`.
    radii: Vec<usize>,
    strong_diameter: usize,
}

impl ConnectedPartition {
    /// Builds a partition from explicit clusters, choosing each center as a
    /// minimum-eccentricity vertex of `G[X]` (smallest id on ties).
    pub fn from_clusters(g: &WeightedGraph, clusters: Vec<Vec<usize>>) -> Result<Self, GraphError> {
        let mut clusters: Vec<Vec<usize>> = clusters
            .into_iter()
            .map(|mut c| {
                c.sort_unstable();
                c
            })
            .collect();
        clusters.sort_by_key(|c| c.first().copied());
        check_cover(g, &clusters)?;
        let mut centers = Vec::with_capacity(clusters.len());
        let mut radii = Vec::with_capacity(clusters.len());
        let mut strong_diameter = 0;
        for (i, c) in clusters.iter().enumerate() {
            let stats = cluster_eccentricities(g, c)
                .ok_or_else(|| GraphError::InvalidPartition(format!("cluster {i} is disconnected")))?;
            centers.push(stats.center);
            radii.push(stats.radius);
            strong_diameter = strong_diameter.max(stats.diameter);
        }
        Ok(Self {
            clusters,
            centers,
            radii,
            strong_diameter,
        })
    }

    /// Builds a partition with caller-chosen centers. Used for star
    /// partitions where the center must dominate its cluster.
    pub fn with_centers(g: &WeightedGraph, clusters: Vec<Vec<usize>>, centers: Vec<usize>) -> Result<Self, GraphError> {
        let mut pairs: Vec<(Vec<usize>, usize)> = clusters
            .into_iter()
            .zip(centers)
            .map(|(mut c, z)| {
                c.sort_unstable();
                (c, z)
            })
            .collect();
        pairs.sort_by_key(|(c, _)| c.first().copied());
        let (clusters, centers): (Vec<_>, Vec<_>) = pairs.into_iter().unzip();
        check_cover(g, &clusters)?;
        let mut radii = Vec::with_capacity(clusters.len());
        let mut strong_diameter = 0;
        for (i, (c, &z)) in clusters.iter().zip(&centers).enumerate() {
            if c.binary_search(&z).is_err() {
                return Err(GraphError::InvalidPartition(format!("center {z} outside cluster {i}")));
            }
            let stats = cluster_eccentricities(g, c)
                .ok_or_else(|| GraphError::InvalidPartition(format!("cluster {i} is disconnected")))?;
            let pos = c.binary_search(&z).unwrap();
            radii.push(stats.eccentricity[pos]);
            strong_diameter = strong_diameter.max(stats.diameter);
        }
        Ok(Self {
            clusters,
            centers,
            radii,
            strong_diameter,
        })
    }

    pub fn clusters(&self) -> &[Vec<usize>] {
        &self.clusters
    }

    pub fn len(&self) -> usize {
        self.clusters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.clusters.is_empty()
    }

    pub fn center(&self, cluster: usize) -> usize {
        self.centers[cluster]
    }

    pub fn centers(&self) -> &[usize] {
        &self.centers
    }

    /// `max_{v in X} dist_{G[X]}(center(X), v)`.
    pub fn radius(&self, cluster: usize) -> usize {
        self.radii[cluster]
    }

    /// `max_X diam(G[X])`.
    pub fn strong_diameter(&self) -> usize {
        self.strong_diameter
    }

    pub fn cluster_of(&self, n: usize) -> Vec<usize> {
        let mut out = vec![INF; n];
        for (i, c) in self.clusters.iter().enumerate() {
            for &v in c {
                out[v] = i;
            }
        }
        out
    }

    pub fn quotient(&self, g: &WeightedGraph) -> Result<QuotientGraph, GraphError> {
        quotient(g, &self.clusters)
    }

    /// Independent re-check of every invariant from scratch, plus an optional
    /// strong-diameter bound.
    pub fn validate(&self, g: &WeightedGraph, diameter_bound: Option<usize>) -> Result<(), GraphError> {
        check_cover(g, &self.clusters)?;
        let mut worst = 0;
        for (i, c) in self.clusters.iter().enumerate() {
            let mut member = vec![false; g.n()];
            c.iter().for_each(|&v| member[v] = true);
            let z = self.centers[i];
            if !member[z] {
                return Err(GraphError::InvalidPartition(format!("center {z} outside cluster {i}")));
            }
            for &s in c {
                let d = bfs_within(g, s, &member);
                let ecc = c.iter().map(|&v| d[v]).max().unwrap_or(0);
                if ecc == INF {
                    return Err(GraphError::InvalidPartition(format!("cluster {i} is disconnected")));
                }
                if s == z && ecc != self.radii[i] {
                    return Err(GraphError::InvalidPartition(format!("cluster {i} radius mismatch")));
                }
                worst = worst.max(ecc);
            }
        }
        if worst != self.strong_diameter {
            return Err(GraphError::InvalidPartition("strong diameter mismatch".into()));
        }
        if let Some(bound) = diameter_bound {
            if worst > bound {
                return Err(GraphError::InvalidPartition(format!(
                    "strong diameter {worst} exceeds {bound}"
                )));
            }
        }
        Ok(())
    }
}

fn check_cover(g: &WeightedGraph, clusters: &[Vec<usize>]) -> Result<(), GraphError> {
    let n = g.n();
    let mut seen = vec![false; n];
    for (i, c) in clusters.iter().enumerate() {
        if c.is_empty() {
            return Err(GraphError::InvalidPartition(format!("cluster {i} is empty")));
        }
        for &v in c {
            if v >= n {
                return Err(GraphError::VertexOutOfRange { vertex: v, n });
            }
            if seen[v] {
                return Err(GraphError::InvalidPartition(format!("vertex {v} in two clusters")));
            }
            seen[v] = true;
        }
    }
    match seen.iter().position(|s| !s) {
        Some(v) => Err(GraphError::InvalidPartition(format!("vertex {v} not covered"))),
        None => Ok(()),
    }
}

struct ClusterStats {
    center: usize,
    radius: usize,
    diameter: usize,
    eccentricity: Vec<usize>,
}

/// All-sources BFS inside `G[cluster]`. `None` if the cluster is disconnected.
fn cluster_eccentricities(g: &WeightedGraph, cluster: &[usize]) -> Option<ClusterStats> {
    let (sub, map) = g.induced_subgraph(cluster);
    let k = sub.n();
    let mut eccentricity = vec![0; k];
    let mut dist = vec![INF; k];
    let mut queue = VecDeque::with_capacity(k);
    for s in 0..k {
        dist.iter_mut().for_each(|d| *d = INF);
        dist[s] = 0;
        queue.push_back(s);
        let mut reached = 1;
        let mut ecc = 0;
        while let Some(u) = queue.pop_front() {
            ecc = dist[u];
            for &v in sub.neighbors(u) {
                if dist[v] == INF {
                    dist[v] = dist[u] + 1;
                    reached += 1;
                    queue.push_back(v);
                }
            }
        }
        if reached < k {
            return None;
        }
        eccentricity[s] = ecc;
    }
    let best = (0..k).min_by_key(|&i| (eccentricity[i], map[i]))?;
    Some(ClusterStats {
        center: map[best],
        radius: eccentricity[best],
        diameter: eccentricity.iter().copied().max().unwrap_or(0),
        eccentricity,
    })
}

/// `⌈32/eps⌉`, the hard strong-diameter bound of [`sparse_partition`].
pub fn diameter_bound(eps: f64) -> usize {
    (32.0 / eps).ceil() as usize
}

#[derive(Clone, Copy, Debug, PartialEq)]
struct HeapKey {
    key: f64,
    center: usize,
    vertex: usize,
}

impl Eq for HeapKey {}

impl Ord for HeapKey {
    fn cmp(&self, other: &Self) -> Ordering {
        // min-heap on (key, center)
        other
            .key
            .total_cmp(&self.key)
            .then_with(|| other.center.cmp(&self.center))
            .then_with(|| other.vertex.cmp(&self.vertex))
    }
}

impl PartialOrd for HeapKey {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Low-diameter connected partition by exponentially shifted BFS.
///
/// Every vertex draws a delay `δ_v ~ Exp(eps/8)`; vertex `u` joins the cell of the
/// center maximizing `δ_c - dist(c, u)`. Cells whose strong diameter exceeds
/// `⌈32/eps⌉` are carved into BFS balls of radius `⌊⌈32/eps⌉/2⌋`, so the
/// diameter bound holds unconditionally. Sparsity (clusters met by each
/// radius-2 ball) is measured by [`ball2_cluster_count`], not enforced.
pub fn sparse_partition<R: Rng + ?Sized>(
    g: &WeightedGraph,
    eps: f64,
    rng: &mut R,
) -> Result<ConnectedPartition, ClusteringError> {
    if !(eps > 0.0 && eps <= 1.0) {
        return Err(ClusteringError::InvalidEps(eps));
    }
    let n = g.n();
    if n == 0 {
        return Err(ClusteringError::EmptyGraph);
    }
    let bound = diameter_bound(eps);
    let exp = Exp::new(eps / 8.0).expect("positive rate");
    let shifts: Vec<f64> = (0..n).map(|_| exp.sample(rng)).collect();
    let top = shifts.iter().copied().fold(0.0, f64::max);

    let mut owner = vec![INF; n];
    let mut heap: BinaryHeap<HeapKey> = (0..n)
        .map(|c| HeapKey {
            key: top - shifts[c],
            center: c,
            vertex: c,
        })
        .collect();
    while let Some(HeapKey { key, center, vertex }) = heap.pop() {
        if owner[vertex] != INF {
            continue;
        }
        owner[vertex] = center;
        for &u in g.neighbors(vertex) {
            if owner[u] == INF {
                heap.push(HeapKey {
                    key: key + 1.0,
                    center,
                    vertex: u,
                });
            }
        }
    }

    let mut cells: Vec<Vec<usize>> = vec![Vec::new(); n];
    for v in 0..n {
        cells[owner[v]].push(v);
    }
    let mut clusters = Vec::new();
    for (center, cell) in cells.into_iter().enumerate() {
        if cell.is_empty() {
            continue;
        }
        let fits = cluster_eccentricities(g, &cell)
            .map(|s| s.diameter <= bound)
            .unwrap_or(false);
        if fits {
            clusters.push(cell);
        } else {
            clusters.extend(carve(g, &cell, center, bound / 2));
        }
    }
    Ok(ConnectedPartition::from_clusters(g, clusters)?)
}

/// Splits `cell` into BFS balls of radius `radius` taken inside the remaining
/// part of the cell, starting from `first` and then from the smallest
/// remaining vertex. Each ball induces a connected subgraph of diameter at most
/// `2 * radius`.
fn carve(g: &WeightedGraph, cell: &[usize], first: usize, radius: usize) -> Vec<Vec<usize>> {
    let mut remaining = vec![false; g.n()];
    cell.iter().for_each(|&v| remaining[v] = true);
    let mut out = Vec::new();
    let mut order = cell.to_vec();
    order.sort_unstable();
    let starts = std::iter::once(first).chain(order.iter().copied());
    let mut dist = vec![INF; g.n()];
    let mut queue = VecDeque::new();
    for s in starts {
        if !remaining[s] {
            continue;
        }
        let mut piece = vec![s];
        dist[s] = 0;
        queue.push_back(s);
        while let Some(u) = queue.pop_front() {
            if dist[u] == radius {
                continue;
            }
            for &v in g.neighbors(u) {
                if remaining[v] && dist[v] == INF {
                    dist[v] = dist[u] + 1;
                    piece.push(v);
                    queue.push_back(v);
                }
            }
        }
        for &v in &piece {
            remaining[v] = false;
            dist[v] = INF;
        }
        out.push(piece);
    }
    out
}

/// `max_u |{X : X ∩ B_G(u, 2) ≠ ∅}|`, the measured sparsity of a partition.
pub fn ball2_cluster_count(g: &WeightedGraph, p: &ConnectedPartition) -> usize {
    let cluster_of = p.cluster_of(g.n());
    let mut stamp = vec![INF; p.len()];
    let mut best = 0;
    for u in 0..g.n() {
        let mut count = 0;
        let mut mark = |x: usize| {
            if stamp[x] != u {
                stamp[x] = u;
                count += 1;
            }
        };
        mark(cluster_of[u]);
        for &v in g.neighbors(u) {
            mark(cluster_of[v]);
            for &w in g.neighbors(v) {
                mark(cluster_of[w]);
            }
        }
        best = best.max(count);
    }
    best
}

/// Ξ: ordered cluster pairs at `G`-distance at most 2, diagonal included.
#[derive(Clone, Debug, PartialEq)]
pub struct XiSet {
    near: Vec<Vec<usize>>,
}

impl XiSet {
    /// Number of ordered pairs.
    pub fn len(&self) -> usize {
        self.near.iter().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.near.is_empty()
    }

    pub fn contains(&self, x: usize, y: usize) -> bool {
        self.near[x].binary_search(&y).is_ok()
    }

    /// Clusters within `G`-distance 2 of cluster `x`, sorted.
    pub fn near(&self, x: usize) -> &[usize] {
        &self.near[x]
    }

    /// Whether some `(X, X') ∈ Ξ` has `X ∈ a` and `X' ∈ b`. `b` must be sorted.
    pub fn meets(&self, a: &[usize], b_sorted: &[usize]) -> bool {
        a.iter().any(|&x| {
            let near = &self.near[x];
            if near.len() < b_sorted.len() {
                near.iter().any(|y| b_sorted.binary_search(y).is_ok())
            } else {
                b_sorted.iter().any(|y| near.binary_search(y).is_ok())
            }
        })
    }
}

/// Exact Ξ by a depth-2 BFS from every cluster's vertex set.
pub fn xi_pairs(g: &WeightedGraph, p: &ConnectedPartition) -> XiSet {
    let cluster_of = p.cluster_of(g.n());
    let mut dist = vec![INF; g.n()];
    let mut touched = Vec::new();
    let mut queue = VecDeque::new();
    let mut near = Vec::with_capacity(p.len());
    for cluster in p.clusters() {
        for &v in cluster {
            dist[v] = 0;
            touched.push(v);
            queue.push_back(v);
        }
        while let Some(u) = queue.pop_front() {
            if dist[u] == 2 {
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
        let mut ids: Vec<usize> = touched.iter().map(|&v| cluster_of[v]).collect();
        ids.sort_unstable();
        ids.dedup();
        near.push(ids);
        touched.iter().for_each(|&v| dist[v] = INF);
        touched.clear();
    }
    XiSet { near }
}

/// A star partition and its quotient, with the quantities from its
/// construction.
#[derive(Clone, Debug)]
pub struct StarPartition {
    pub partition: ConnectedPartition,
    pub quotient: QuotientGraph,
    /// Degree threshold `k = ⌈n^{1/3} ln^{2/3} n⌉` (1 when `n < 3`).
    pub k: usize,
    /// Number of peeled low-degree vertices.
    pub peeled: usize,
    pub dominating_set_size: usize,
    /// `2 (n - h) ln k / k` for the residual graph.
    pub dominating_set_bound: f64,
}

impl StarPartition {
    pub fn dominating_bound_holds(&self) -> bool {
        self.dominating_set_size as f64 <= self.dominating_set_bound
    }
}

pub fn star_threshold(n: usize) -> usize {
    if n < 3 {
        return 1;
    }
    let nf = n as f64;
    (nf.cbrt() * nf.ln().powf(2.0 / 3.0)).ceil() as usize
}

/// Star partition whose quotient has `O(n^{4/3} log^{2/3} n)` edges: peel a
/// maximal sequence of vertices of remaining degree at most `k`, dominate the
/// rest greedily, and attach each non-dominator to the first dominator that
/// covered it. Peeled vertices become singletons.
pub fn star_partition(g: &WeightedGraph) -> Result<StarPartition, GraphError> {
    let n = g.n();
    let k = star_threshold(n);

    let mut degree: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut removed = vec![false; n];
    let mut queued = vec![false; n];
    let mut queue: VecDeque<usize> = (0..n).filter(|&v| degree[v] <= k).collect();
    queue.iter().for_each(|&v| queued[v] = true);
    let mut peeled = Vec::new();
    while let Some(v) = queue.pop_front() {
        removed[v] = true;
        peeled.push(v);
        for &u in g.neighbors(v) {
            if !removed[u] {
                degree[u] -= 1;
                if degree[u] <= k && !queued[u] {
                    queued[u] = true;
                    queue.push_back(u);
                }
            }
        }
    }

    let residual: Vec<usize> = (0..n).filter(|&v| !removed[v]).collect();
    let (dominators, assignment) = greedy_dominating_set(g, &removed);

    let mut clusters: Vec<Vec<usize>> = peeled.iter().map(|&v| vec![v]).collect();
    let mut centers: Vec<usize> = peeled.clone();
    let mut slot = vec![INF; n];
    for &d in &dominators {
        slot[d] = clusters.len();
        clusters.push(Vec::new());
        centers.push(d);
    }
    for &v in &residual {
        clusters[slot[assignment[v]]].push(v);
    }

    let h = peeled.len();
    let dominating_set_bound = if residual.is_empty() {
        0.0
    } else {
        2.0 * (n - h) as f64 * (k as f64).ln() / k as f64
    };
    let partition = ConnectedPartition::with_centers(g, clusters, centers)?;
    let quotient = partition.quotient(g)?;
    let out = StarPartition {
        partition,
        quotient,
        k,
        peeled: h,
        dominating_set_size: dominators.len(),
        dominating_set_bound,
    };
    if !out.dominating_bound_holds() {
        log::warn!(
            "greedy dominating set has {} vertices, above the bound {:.2}",
            out.dominating_set_size,
            out.dominating_set_bound
        );
    }
    Ok(out)
}

/// Greedy dominating set of `G - removed`: repeatedly take the vertex whose
/// closed neighborhood holds the most undominated vertices (smallest id on
/// ties). Returns the dominators in pick order and, for every residual vertex,
/// the dominator it belongs to (itself for dominators).
fn greedy_dominating_set(g: &WeightedGraph, removed: &[bool]) -> (Vec<usize>, Vec<usize>) {
    let n = g.n();
    let mut gain = vec![0usize; n];
    for v in 0..n {
        if !removed[v] {
            gain[v] = 1 + g.neighbors(v).iter().filter(|&&u| !removed[u]).count();
        }
    }
    let mut heap: BinaryHeap<(usize, std::cmp::Reverse<usize>)> = (0..n)
        .filter(|&v| !removed[v])
        .map(|v| (gain[v], std::cmp::Reverse(v)))
        .collect();
    let mut dominated = vec![false; n];
    let mut assignment = vec![INF; n];
    let mut dominators = Vec::new();
    while let Some((g_v, std::cmp::Reverse(v))) = heap.pop() {
        if g_v != gain[v] {
            heap.push((gain[v], std::cmp::Reverse(v)));
            continue;
        }
        if g_v == 0 {
            break;
        }
        dominators.push(v);
        let closed = std::iter::once(v).chain(g.neighbors(v).iter().copied().filter(|&u| !removed[u]));
        let fresh: Vec<usize> = closed.filter(|&u| !dominated[u]).collect();
        for &u in &fresh {
            dominated[u] = true;
            assignment[u] = v;
            gain[u] -= 1;
            for &w in g.neighbors(u) {
                if !removed[w] {
                    gain[w] -= 1;
                }
            }
        }
    }
    // dominators head their own cluster even if an earlier pick covered them
    for &d in &dominators {
        assignment[d] = d;
    }
    (dominators, assignment)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

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
    fn sparse_partition_on_small_graphs() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let p = sparse_partition(&path(5), 0.5, &mut rng).unwrap();
        p.validate(&path(5), Some(64)).unwrap();
        let c100 = cycle(100);
        let p = sparse_partition(&c100, 0.1, &mut rng).unwrap();
        p.validate(&c100, Some(320)).unwrap();
        assert!(ball2_cluster_count(&c100, &p) <= 5);
    }

    #[test]
    fn sparse_partition_rejects_bad_eps() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        assert!(matches!(
            sparse_partition(&path(3), 0.0, &mut rng),
            Err(ClusteringError::InvalidEps(_))
        ));
        assert!(matches!(
            sparse_partition(&path(3), -1.0, &mut rng),
            Err(ClusteringError::InvalidEps(_))
        ));
        let empty = WeightedGraph::from_edges(0, &[]).unwrap();
        assert!(matches!(
            sparse_partition(&empty, 0.5, &mut rng),
            Err(ClusteringError::EmptyGraph)
        ));
    }

    #[test]
    fn carving_enforces_the_bound() {
        // a single long path cell must be split into diameter <= 4 pieces
        let g = path(30);
        let cell: Vec<usize> = (0..30).collect();
        let pieces = carve(&g, &cell, 13, 2);
        let p = ConnectedPartition::from_clusters(&g, pieces).unwrap();
        p.validate(&g, Some(4)).unwrap();
    }

    #[test]
    fn xi_examples() {
        let c6 = cycle(6);
        let p = ConnectedPartition::from_clusters(&c6, vec![vec![0, 1], vec![2, 3], vec![4, 5]]).unwrap();
        assert_eq!(xi_pairs(&c6, &p).len(), 9);

        let two = WeightedGraph::from_edges(6, &[(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]).unwrap();
        let p = ConnectedPartition::from_clusters(&two, vec![vec![0, 1, 2], vec![3, 4, 5]]).unwrap();
        let xi = xi_pairs(&two, &p);
        assert_eq!(xi.len(), 2);
        assert!(xi.contains(0, 0) && xi.contains(1, 1) && !xi.contains(0, 1));

        // enumerate |i - j| <= 2 directly
        let p9 = path(9);
        let singles = (0..9).map(|v| vec![v]).collect();
        let p = ConnectedPartition::from_clusters(&p9, singles).unwrap();
        let expected = (0..9usize)
            .flat_map(|i| (0..9usize).map(move |j| (i, j)))
            .filter(|(i, j)| i.abs_diff(*j) <= 2)
            .count();
        assert_eq!(expected, 39);
        assert_eq!(xi_pairs(&p9, &p).len(), expected);
    }

    #[test]
    fn star_partition_examples() {
        let star = WeightedGraph::from_edges(5, &[(0, 1), (0, 2), (0, 3), (0, 4)]).unwrap();
        let sp = star_partition(&star).unwrap();
        // k = 3 < deg(hub) = 4, but the leaves peel and then so does the hub
        assert_eq!(sp.k, 3);
        assert_eq!(sp.peeled, 5);
        assert_eq!(sp.quotient.graph.n(), 5);
        for (i, c) in sp.partition.clusters().iter().enumerate() {
            let z = sp.partition.center(i);
            assert!(c.iter().all(|&v| v == z || star.has_edge(v, z)));
        }

        let p5 = path(5);
        let sp = star_partition(&p5).unwrap();
        assert_eq!(sp.k, 3);
        assert_eq!(sp.peeled, 5);
        assert_eq!(sp.partition.len(), 5);
        assert_eq!(sp.quotient.graph.edge_count(), 4);

        let k50 = clique(50);
        let sp = star_partition(&k50).unwrap();
        let expected_k = (50f64.cbrt() * 50f64.ln().powf(2.0 / 3.0)).ceil() as usize;
        assert_eq!(sp.k, expected_k);
        assert_eq!(sp.peeled, 0);
        assert_eq!(sp.dominating_set_size, 1);
        assert_eq!(sp.quotient.graph.n(), 1);
        assert_eq!(sp.quotient.graph.edge_count(), 0);
    }

    #[test]
    fn star_partition_hub_center_when_leaves_cannot_peel() {
        // K_{1,4} plus a K5 on the leaves keeps every degree above k = 3
        let mut edges = vec![(0, 1), (0, 2), (0, 3), (0, 4)];
        for u in 1..5 {
            for v in u + 1..5 {
                edges.push((u, v));
            }
        }
        let g = WeightedGraph::from_edges(5, &edges).unwrap();
        let sp = star_partition(&g).unwrap();
        assert_eq!(sp.partition.len(), 1);
        assert_eq!(sp.partition.center(0), 0);
    }

    #[test]
    fn star_partition_degenerate() {
        let single = WeightedGraph::from_edges(1, &[]).unwrap();
        let sp = star_partition(&single).unwrap();
        assert_eq!(sp.partition.len(), 1);
        let edgeless = WeightedGraph::from_edges(4, &[]).unwrap();
        let sp = star_partition(&edgeless).unwrap();
        assert_eq!(sp.partition.len(), 4);
        assert_eq!(sp.k, star_threshold(4));
    }
}
