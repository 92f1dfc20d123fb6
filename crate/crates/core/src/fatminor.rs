//! Fat minor models, crude models on the 2-subdivision, and the conversions
//! between them.

use std::collections::{BTreeMap, VecDeque};
use std::fmt;

use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::ModelError;
use crate::flowcut::ConcurrentFlow;
use crate::graph::{bfs_bounded, bfs_distances, power, QuotientGraph, WeightedGraph, INF};

/// A small simple graph `H` whose fat minors we look for. Edges are stored
/// as `(u, v)` with `u < v`, sorted; edge indices refer to this order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PatternGraph {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl PatternGraph {
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self, ModelError> {
        let g = WeightedGraph::from_edges(n, edges)?;
        Ok(Self::from_graph(&g))
    }

    pub fn from_graph(g: &WeightedGraph) -> Self {
        Self {
            n: g.n(),
            edges: g.edges().collect(),
        }
    }

    pub fn complete(k: usize) -> Self {
        let mut edges = Vec::new();
        for u in 0..k {
            for v in u + 1..k {
                edges.push((u, v));
            }
        }
        Self { n: k, edges }
    }

    pub fn path(k: usize) -> Self {
        Self {
            n: k,
            edges: (1..k).map(|i| (i - 1, i)).collect(),
        }
    }

    pub fn cycle(k: usize) -> Result<Self, ModelError> {
        if k < 3 {
            return Err(ModelError::Pattern(format!("cycle needs at least 3 vertices, got {k}")));
        }
        let mut edges: Vec<_> = (1..k).map(|i| (i - 1, i)).collect();
        edges.push((0, k - 1));
        Self::new(k, &edges)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// `‖H‖ = |V(H)| + |E(H)|`.
    pub fn size(&self) -> usize {
        self.n + self.edges.len()
    }

    pub fn edge_index(&self, u: usize, v: usize) -> Option<usize> {
        let key = (u.min(v), u.max(v));
        self.edges.binary_search(&key).ok()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|&&(a, b)| a == v || b == v).count()
    }

    pub fn isolated(&self) -> Vec<usize> {
        let mut deg = vec![0; self.n];
        for &(a, b) in &self.edges {
            deg[a] += 1;
            deg[b] += 1;
        }
        (0..self.n).filter(|&v| deg[v] == 0).collect()
    }

    pub fn to_graph(&self) -> WeightedGraph {
        WeightedGraph::from_edges(self.n, &self.edges).expect("pattern edges are valid")
    }

    fn is_incident(&self, a: Branch, b: Branch) -> bool {
        match (a, b) {
            (Branch::Vertex(u), Branch::Edge(e)) | (Branch::Edge(e), Branch::Vertex(u)) => {
                let (x, y) = self.edges[e];
                u == x || u == y
            }
            _ => false,
        }
    }
}

/// A branch set of a model: one per vertex and one per edge of the pattern.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Branch {
    Vertex(usize),
    Edge(usize),
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Branch::Vertex(u) => write!(f, "vertex {u}"),
            Branch::Edge(e) => write!(f, "edge #{e}"),
        }
    }
}

/// `Ḧ`: every edge `ab` (with `a < b`, pattern index `i`) becomes the path
/// `a – (n+2i) – (n+2i+1) – b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subdivision {
    pub graph: PatternGraph,
    pub base_vertices: usize,
    /// `Ė_u`: subdivision edges at each original vertex `u`.
    pub incident: Vec<Vec<usize>>,
    /// `ė`: the middle subdivision edge of each original edge.
    pub middle: Vec<usize>,
}

impl Subdivision {
    /// `‖Ḧ‖`.
    pub fn size(&self) -> usize {
        self.graph.size()
    }

    /// Unordered pairs of subdivision edges with four distinct endpoints.
    pub fn independent_edge_pairs(&self) -> Vec<(usize, usize)> {
        let e = self.graph.edges();
        let mut out = Vec::new();
        for i in 0..e.len() {
            for j in i + 1..e.len() {
                let (a, b) = e[i];
                let (c, d) = e[j];
                if a != c && a != d && b != c && b != d {
                    out.push((i, j));
                }
            }
        }
        out
    }
}

pub fn two_subdivision(h: &PatternGraph) -> Subdivision {
    let n = h.n();
    let m = h.edges().len();
    let mut edges = Vec::with_capacity(3 * m);
    for (i, &(a, b)) in h.edges().iter().enumerate() {
        let (x, y) = (n + 2 * i, n + 2 * i + 1);
        edges.push((a, x));
        edges.push((x, y));
        edges.push((b, y));
    }
    let graph = PatternGraph::new(n + 2 * m, &edges).expect("subdivision is simple");
    let mut incident = vec![Vec::new(); n];
    let mut middle = Vec::with_capacity(m);
    for (i, &(a, b)) in h.edges().iter().enumerate() {
        let (x, y) = (n + 2 * i, n + 2 * i + 1);
        incident[a].push(graph.edge_index(a, x).unwrap());
        incident[b].push(graph.edge_index(b, y).unwrap());
        middle.push(graph.edge_index(x, y).unwrap());
    }
    incident.iter_mut().for_each(|v| v.sort_unstable());
    Subdivision {
        graph,
        base_vertices: n,
        incident,
        middle,
    }
}

/// `H⁺`: the pattern with isolated vertices paired up by new edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Augmented {
    pub graph: PatternGraph,
    /// Index in `graph` of each edge of the original pattern.
    pub original_edges: Vec<usize>,
}

impl Augmented {
    /// Drops the branch sets of added edges.
    pub fn restrict(&self, model: &FatModel) -> FatModel {
        FatModel {
            fatness: model.fatness,
            vertex_sets: model.vertex_sets.clone(),
            edge_sets: self
                .original_edges
                .iter()
                .map(|&e| model.edge_sets[e].clone())
                .collect(),
        }
    }
}

/// Isolated vertices are matched in increasing order; an odd one out is
/// joined to the smallest non-isolated vertex, or to the last matched vertex.
pub fn ensure_no_isolated(h: &PatternGraph) -> Result<Augmented, ModelError> {
    let iso = h.isolated();
    let mut edges = h.edges().to_vec();
    for pair in iso.chunks(2) {
        match *pair {
            [a, b] => edges.push((a, b)),
            [a] => {
                let anchor = (0..h.n())
                    .find(|v| iso.binary_search(v).is_err())
                    .or_else(|| iso.len().checked_sub(2).map(|i| iso[i]));
                match anchor {
                    Some(b) => edges.push((a.min(b), a.max(b))),
                    None => return Err(ModelError::Pattern("a single isolated vertex cannot be paired".into())),
                }
            }
            _ => unreachable!(),
        }
    }
    let graph = PatternGraph::new(h.n(), &edges)?;
    let original_edges = h
        .edges()
        .iter()
        .map(|&(u, v)| graph.edge_index(u, v).unwrap())
        .collect();
    Ok(Augmented { graph, original_edges })
}

/// Branch sets for every vertex and edge of a pattern, in pattern order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FatModel {
    pub fatness: usize,
    pub vertex_sets: Vec<Vec<usize>>,
    pub edge_sets: Vec<Vec<usize>>,
}

#[derive(Serialize, Deserialize)]
struct ModelJson {
    fatness: usize,
    vertex_sets: BTreeMap<String, Vec<usize>>,
    edge_sets: BTreeMap<String, Vec<usize>>,
}

impl FatModel {
    pub fn branch(&self, b: Branch) -> &[usize] {
        match b {
            Branch::Vertex(u) => &self.vertex_sets[u],
            Branch::Edge(e) => &self.edge_sets[e],
        }
    }

    /// `{"fatness": d, "vertex_sets": {"u": [...]}, "edge_sets": {"u-v": [...]}}`.
    pub fn to_json(&self, h: &PatternGraph) -> serde_json::Value {
        let doc = ModelJson {
            fatness: self.fatness,
            vertex_sets: self
                .vertex_sets
                .iter()
                .enumerate()
                .map(|(u, s)| (u.to_string(), s.clone()))
                .collect(),
            edge_sets: h
                .edges()
                .iter()
                .zip(&self.edge_sets)
                .map(|(&(u, v), s)| (format!("{u}-{v}"), s.clone()))
                .collect(),
        };
        serde_json::to_value(doc).expect("model serializes")
    }

    pub fn from_json(value: &serde_json::Value, h: &PatternGraph) -> Result<Self, ModelError> {
        let doc: ModelJson =
            serde_json::from_value(value.clone()).map_err(|e| ModelError::Fat(format!("malformed model: {e}")))?;
        let mut vertex_sets = Vec::with_capacity(h.n());
        for u in 0..h.n() {
            let set = doc
                .vertex_sets
                .get(&u.to_string())
                .ok_or_else(|| ModelError::Fat(format!("missing branch set for vertex {u}")))?;
            vertex_sets.push(normalized(set));
        }
        let mut edge_sets = Vec::with_capacity(h.edges().len());
        for &(u, v) in h.edges() {
            let set = doc
                .edge_sets
                .get(&format!("{u}-{v}"))
                .or_else(|| doc.edge_sets.get(&format!("{v}-{u}")))
                .ok_or_else(|| ModelError::Fat(format!("missing branch set for edge {u}-{v}")))?;
            edge_sets.push(normalized(set));
        }
        if doc.vertex_sets.len() != h.n() || doc.edge_sets.len() != h.edges().len() {
            return Err(ModelError::Fat(
                "model has branch sets for unknown pattern elements".into(),
            ));
        }
        Ok(Self {
            fatness: doc.fatness,
            vertex_sets,
            edge_sets,
        })
    }
}

fn normalized(set: &[usize]) -> Vec<usize> {
    let mut s = set.to_vec();
    s.sort_unstable();
    s.dedup();
    s
}

/// All violations found by [`verify_fat_model`].
#[derive(Clone, Debug, Default, PartialEq)]
pub struct FatReport {
    /// Wrong number of branch sets, or vertices outside the host graph.
    pub malformed: Option<String>,
    /// Empty or not inducing a connected subgraph.
    pub disconnected: Vec<Branch>,
    /// Vertex–edge incidences whose branch sets do not meet.
    pub missing_intersections: Vec<(Branch, Branch)>,
    /// Non-incident pairs closer than the fatness, with their distance.
    pub close_pairs: Vec<(Branch, Branch, usize)>,
    /// Least distance over non-incident pairs, [`INF`] if there are none.
    pub min_distance: usize,
}

impl FatReport {
    pub fn passed(&self) -> bool {
        self.malformed.is_none()
            && self.disconnected.is_empty()
            && self.missing_intersections.is_empty()
            && self.close_pairs.is_empty()
    }

    pub fn describe(&self) -> String {
        if let Some(m) = &self.malformed {
            return m.clone();
        }
        if let Some(b) = self.disconnected.first() {
            return format!("branch set of {b} is not connected");
        }
        if let Some((a, b)) = self.missing_intersections.first() {
            return format!("branch sets of {a} and {b} do not intersect");
        }
        if let Some((a, b, d)) = self.close_pairs.first() {
            return format!("branch sets of {a} and {b} are at distance {d}");
        }
        "ok".into()
    }
}

fn intersects(a: &[usize], b: &[usize]) -> bool {
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => return true,
        }
    }
    false
}

/// Checks every defining condition of a `d`-fat model of `h` in `g`.
pub fn verify_fat_model(g: &WeightedGraph, h: &PatternGraph, model: &FatModel, d: usize) -> FatReport {
    let mut report = FatReport {
        min_distance: INF,
        ..FatReport::default()
    };
    if model.vertex_sets.len() != h.n() || model.edge_sets.len() != h.edges().len() {
        report.malformed = Some(format!(
            "expected {} vertex and {} edge branch sets, found {} and {}",
            h.n(),
            h.edges().len(),
            model.vertex_sets.len(),
            model.edge_sets.len()
        ));
        return report;
    }
    let items: Vec<Branch> = (0..h.n())
        .map(Branch::Vertex)
        .chain((0..h.edges().len()).map(Branch::Edge))
        .collect();
    let sets: Vec<Vec<usize>> = items.iter().map(|&b| normalized(model.branch(b))).collect();
    if let Some(v) = sets.iter().flatten().find(|&&v| v >= g.n()) {
        report.malformed = Some(format!("vertex {v} is not in the host graph"));
        return report;
    }
    for (i, s) in sets.iter().enumerate() {
        if s.is_empty() || !g.induces_connected(s) {
            report.disconnected.push(items[i]);
        }
    }
    for i in 0..items.len() {
        let dist = if sets[i].is_empty() {
            vec![INF; g.n()]
        } else {
            bfs_distances(g, &sets[i])
        };
        for j in i + 1..items.len() {
            if h.is_incident(items[i], items[j]) {
                if !intersects(&sets[i], &sets[j]) {
                    report.missing_intersections.push((items[i], items[j]));
                }
                continue;
            }
            let dij = sets[j].iter().map(|&v| dist[v]).min().unwrap_or(INF);
            report.min_distance = report.min_distance.min(dij);
            if dij < d {
                report.close_pairs.push((items[i], items[j], dij));
            }
        }
    }
    report
}

/// `(φ, π)`: a vertex of `G` per vertex of `Ḧ` and a `φ(u)`–`φ(v)` path per
/// edge `uv` of `Ḧ` (stored with `u < v`, oriented from `φ(u)`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrudeFatModel {
    pub fatness: usize,
    pub phi: Vec<usize>,
    pub paths: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct CrudeReport {
    pub malformed: Option<String>,
    /// Edges whose path is not a simple `φ(u)`–`φ(v)` path in the host.
    pub bad_paths: Vec<(usize, String)>,
    /// Pairs of edges with four distinct endpoints at distance below `d`.
    pub close_pairs: Vec<(usize, usize, usize)>,
}

impl CrudeReport {
    pub fn passed(&self) -> bool {
        self.malformed.is_none() && self.bad_paths.is_empty() && self.close_pairs.is_empty()
    }

    pub fn describe(&self) -> String {
        if let Some(m) = &self.malformed {
            return m.clone();
        }
        if let Some((e, why)) = self.bad_paths.first() {
            return format!("path of edge #{e}: {why}");
        }
        if let Some((a, b, d)) = self.close_pairs.first() {
            return format!("paths of edges #{a} and #{b} are at distance {d}");
        }
        "ok".into()
    }
}

/// Checks a crude `d`-fat model of the pattern `pattern` (usually `Ḧ`) in `g`.
pub fn verify_crude(g: &WeightedGraph, pattern: &PatternGraph, model: &CrudeFatModel, d: usize) -> CrudeReport {
    let mut report = CrudeReport::default();
    if model.phi.len() != pattern.n() || model.paths.len() != pattern.edges().len() {
        report.malformed = Some(format!(
            "expected {} images and {} paths, found {} and {}",
            pattern.n(),
            pattern.edges().len(),
            model.phi.len(),
            model.paths.len()
        ));
        return report;
    }
    if let Some(v) = model
        .phi
        .iter()
        .chain(model.paths.iter().flatten())
        .find(|&&v| v >= g.n())
    {
        report.malformed = Some(format!("vertex {v} is not in the host graph"));
        return report;
    }
    let mut seen = vec![false; g.n()];
    for (e, &(u, v)) in pattern.edges().iter().enumerate() {
        let p = &model.paths[e];
        let why = if p.first() != Some(&model.phi[u]) {
            Some(format!("does not start at the image {} of {u}", model.phi[u]))
        } else if p.last() != Some(&model.phi[v]) {
            Some(format!("does not end at the image {} of {v}", model.phi[v]))
        } else if let Some(w) = p.windows(2).find(|w| !g.has_edge(w[0], w[1])) {
            Some(format!("{}-{} is not an edge", w[0], w[1]))
        } else if p.iter().any(|&x| std::mem::replace(&mut seen[x], true)) {
            Some("repeats a vertex".to_string())
        } else {
            None
        };
        p.iter().for_each(|&x| seen[x] = false);
        if let Some(why) = why {
            report.bad_paths.push((e, why));
        }
    }
    if d == 0 {
        return report;
    }
    let edges = pattern.edges();
    for i in 0..edges.len() {
        let (a, b) = edges[i];
        let mut dist = None;
        for (j, &(c, e)) in edges.iter().enumerate().skip(i + 1) {
            if a == c || a == e || b == c || b == e {
                continue;
            }
            let dist = dist.get_or_insert_with(|| bfs_bounded(g, &model.paths[i], d - 1));
            let dij = model.paths[j].iter().map(|&v| dist[v]).min().unwrap_or(INF);
            if dij < d {
                report.close_pairs.push((i, j, dij));
            }
        }
    }
    report
}

/// Turns a crude `d`-fat model of `Ḧ` into a `d`-fat model of `H`:
/// `B_u = ∪_{e ∈ Ė_u} π(e)` and `B_e = π(ė)`.
pub fn crude_to_fat(
    g: &WeightedGraph,
    h: &PatternGraph,
    sub: &Subdivision,
    model: &CrudeFatModel,
) -> Result<FatModel, ModelError> {
    if model.fatness == 0 {
        return Err(ModelError::Crude("fatness must be at least 1".into()));
    }
    if let Some(u) = h.isolated().first() {
        return Err(ModelError::Pattern(format!("vertex {u} is isolated")));
    }
    if sub.base_vertices != h.n() || sub.middle.len() != h.edges().len() {
        return Err(ModelError::Pattern("subdivision does not match the pattern".into()));
    }
    let report = verify_crude(g, &sub.graph, model, model.fatness);
    if !report.passed() {
        return Err(ModelError::Crude(report.describe()));
    }
    let vertex_sets = sub
        .incident
        .iter()
        .map(|es| {
            normalized(
                &es.iter()
                    .flat_map(|&e| model.paths[e].iter().copied())
                    .collect::<Vec<_>>(),
            )
        })
        .collect();
    let edge_sets = sub.middle.iter().map(|&e| normalized(&model.paths[e])).collect();
    Ok(FatModel {
        fatness: model.fatness,
        vertex_sets,
        edge_sets,
    })
}

/// Expands a model in a quotient graph to `G` and checks it is `d`-fat there.
pub fn lift_model(
    g: &WeightedGraph,
    q: &QuotientGraph,
    h: &PatternGraph,
    model: &FatModel,
    d: usize,
) -> Result<FatModel, ModelError> {
    let lifted = FatModel {
        fatness: d,
        vertex_sets: model.vertex_sets.iter().map(|s| q.expand(s)).collect(),
        edge_sets: model.edge_sets.iter().map(|s| q.expand(s)).collect(),
    };
    let report = verify_fat_model(g, h, &lifted, d);
    if !report.passed() {
        return Err(ModelError::Fat(report.describe()));
    }
    Ok(lifted)
}

/// Turns a 3-fat model in `G^d` into a `d`-fat model in `G` by threading
/// `G`-geodesics along a spanning tree of each branch set in `G^d`.
pub fn power_model_to_base(
    g: &WeightedGraph,
    h: &PatternGraph,
    model: &FatModel,
    d: usize,
) -> Result<FatModel, ModelError> {
    if d == 0 {
        return Err(ModelError::Fat("fatness must be at least 1".into()));
    }
    let gd = power(g, d)?;
    power_model_to_base_in(g, &gd, h, model, d)
}

pub(crate) fn power_model_to_base_in(
    g: &WeightedGraph,
    gd: &WeightedGraph,
    h: &PatternGraph,
    model: &FatModel,
    d: usize,
) -> Result<FatModel, ModelError> {
    let report = verify_fat_model(gd, h, model, 3);
    if !report.passed() {
        return Err(ModelError::Fat(format!(
            "not 3-fat in the power graph: {}",
            report.describe()
        )));
    }
    let out = FatModel {
        fatness: d,
        vertex_sets: model.vertex_sets.iter().map(|s| thread_geodesics(g, gd, s)).collect(),
        edge_sets: model.edge_sets.iter().map(|s| thread_geodesics(g, gd, s)).collect(),
    };
    let report = verify_fat_model(g, h, &out, d);
    if !report.passed() {
        return Err(ModelError::Fat(report.describe()));
    }
    Ok(out)
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

fn thread_geodesics(g: &WeightedGraph, gd: &WeightedGraph, set: &[usize]) -> Vec<usize> {
    let n = g.n();
    let mut member = vec![false; n];
    set.iter().for_each(|&v| member[v] = true);
    let mut dsu: Vec<usize> = (0..n).collect();
    let join = |dsu: &mut Vec<usize>, a: usize, b: usize| {
        let (ra, rb) = (find(dsu, a), find(dsu, b));
        if ra != rb {
            dsu[ra.max(rb)] = ra.min(rb);
        }
    };
    for &u in set {
        for &v in g.neighbors(u) {
            if member[v] {
                join(&mut dsu, u, v);
            }
        }
    }
    let mut out = set.to_vec();
    let Some(&root) = set.first() else {
        return out;
    };
    // BFS spanning tree of G^d[set]
    let mut seen = vec![false; n];
    let mut queue = VecDeque::from([root]);
    seen[root] = true;
    let mut tree = Vec::new();
    while let Some(u) = queue.pop_front() {
        for &v in gd.neighbors(u) {
            if set.binary_search(&v).is_ok() && !seen[v] {
                seen[v] = true;
                tree.push((u, v));
                queue.push_back(v);
            }
        }
    }
    for (p, c) in tree {
        if find(&mut dsu, p) == find(&mut dsu, c) {
            continue;
        }
        for x in geodesic(g, p, c) {
            if !member[x] {
                member[x] = true;
                out.push(x);
                for &y in g.neighbors(x) {
                    if member[y] {
                        join(&mut dsu, x, y);
                    }
                }
            }
        }
    }
    out.sort_unstable();
    out
}

/// Shortest `s`–`t` path in `g`; ties go to the first-discovered parent.
fn geodesic(g: &WeightedGraph, s: usize, t: usize) -> Vec<usize> {
    let mut parent = vec![INF; g.n()];
    parent[s] = s;
    let mut queue = VecDeque::from([s]);
    while let Some(u) = queue.pop_front() {
        if u == t {
            break;
        }
        for &v in g.neighbors(u) {
            if parent[v] == INF {
                parent[v] = u;
                queue.push_back(v);
            }
        }
    }
    let mut path = vec![t];
    let mut cur = t;
    while cur != s {
        cur = parent[cur];
        path.push(cur);
    }
    path.reverse();
    path
}

/// Draws `φ(u)` for each vertex of `sub` from `candidates` with probability
/// proportional to weight, then for each edge `uv` a stored `φ(u) → φ(v)` path
/// of `flow` with probability proportional to its amount. Vertex ids are
/// those of the flow's host graph.
pub fn sample_crude_model<R: Rng + ?Sized>(
    flow: &ConcurrentFlow,
    candidates: &[usize],
    sub: &PatternGraph,
    rng: &mut R,
) -> Result<CrudeFatModel, ModelError> {
    let host = flow.host();
    let weights: Vec<f64> = candidates.iter().map(|&x| host.weight(x)).collect();
    let pick = WeightedIndex::new(&weights).map_err(|e| ModelError::Sampling(format!("candidate weights: {e}")))?;
    let phi: Vec<usize> = (0..sub.n()).map(|_| candidates[pick.sample(rng)]).collect();
    let mut paths = Vec::with_capacity(sub.edges().len());
    for &(u, v) in sub.edges() {
        let (x, y) = (phi[u], phi[v]);
        if x == y {
            paths.push(vec![x]);
            continue;
        }
        let ids = flow.paths_between(x, y);
        let amounts: Vec<f64> = ids.iter().map(|&i| flow.paths()[i].amount).collect();
        let choice = WeightedIndex::new(&amounts)
            .map_err(|e| ModelError::Sampling(format!("no flow paths from {x} to {y}: {e}")))?;
        paths.push(flow.path_vertices(ids[choice.sample(rng)]));
    }
    Ok(CrudeFatModel { fatness: 1, phi, paths })
}
