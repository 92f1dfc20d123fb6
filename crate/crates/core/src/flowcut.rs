//! Concurrent vertex-capacitated flows versus sparse separations.
//!
//! [`flow_or_sparse_cut`] decides, for a congestion budget `γ`, between a
//! path-decomposed concurrent flow of congestion at most `γ` and a separation
//! of sparsity at most `C_cut · ln n / γ`. The flow side is a
//! multiplicative-weights solver for the product multicommodity flow on the
//! vertex-split graph, where every routed unit is charged to each vertex of its
//! path, endpoints included. The cut side grows regions on the solver's vertex
//! lengths. Whatever is returned has been re-verified from scratch.
//!
//! [`balanced_separator_or_flow`] iterates the dichotomy, peeling off the
//! lighter side of each sparse separation until either the remaining graph is
//! light or it carries a low-congestion flow.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BinaryHeap, HashMap};

use serde::Serialize;

use crate::error::FlowError;
use crate::graph::{Separation, WeightedGraph, INF};

/// Default constant in the sparsity guarantee `C_cut · ln n / γ`.
pub const DEFAULT_CUT_CONSTANT: f64 = 64.0;

/// Relative tolerance for demand satisfaction and congestion checks.
pub const FLOW_TOLERANCE: f64 = 1e-6;

#[derive(Clone, Debug, PartialEq)]
pub struct FlowPath {
    pub vertices: Vec<usize>,
    pub amount: f64,
}

impl FlowPath {
    pub fn source(&self) -> usize {
        self.vertices[0]
    }

    pub fn target(&self) -> usize {
        *self.vertices.last().unwrap()
    }
}

/// One stored path of a [`ConcurrentFlow`]; its vertices are recovered with
/// [`ConcurrentFlow::path_vertices`].
#[derive(Clone, Debug, PartialEq)]
pub struct PathRecord {
    pub source: usize,
    pub target: usize,
    pub amount: f64,
    end: usize,
}

#[derive(Clone, Copy, Debug, PartialEq)]
struct TrieNode {
    vertex: usize,
    parent: usize,
    root: usize,
}

/// A path flow sending `w(u) w(v)` from `u` to `v` for every ordered pair of
/// distinct positive-weight vertices of its host graph.
///
/// Paths are kept in a prefix trie, so paths that share a start segment
/// share storage.
#[derive(Clone, Debug)]
pub struct ConcurrentFlow {
    host: WeightedGraph,
    nodes: Vec<TrieNode>,
    paths: Vec<PathRecord>,
    by_pair: BTreeMap<(usize, usize), Vec<usize>>,
}

#[derive(Default)]
struct PathTrie {
    nodes: Vec<TrieNode>,
    index: HashMap<(usize, usize), usize>,
    paths: Vec<PathRecord>,
}

impl PathTrie {
    /// The node extending `parent` (or a new root when `parent == INF`) by `v`.
    fn child(&mut self, parent: usize, v: usize) -> usize {
        let next = self.nodes.len();
        let root = if parent == INF { v } else { self.nodes[parent].root };
        *self.index.entry((parent, v)).or_insert_with(|| {
            self.nodes.push(TrieNode {
                vertex: v,
                parent,
                root,
            });
            next
        })
    }

    fn push(&mut self, end: usize, amount: f64) {
        let TrieNode { vertex, root, .. } = self.nodes[end];
        self.paths.push(PathRecord {
            source: root,
            target: vertex,
            amount,
            end,
        });
    }

    fn insert(&mut self, vertices: &[usize], amount: f64) {
        let mut at = INF;
        for &v in vertices {
            at = self.child(at, v);
        }
        if at != INF {
            self.push(at, amount);
        }
    }

    fn finish(self, host: WeightedGraph) -> ConcurrentFlow {
        let mut by_pair: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
        for (i, p) in self.paths.iter().enumerate() {
            by_pair.entry((p.source, p.target)).or_default().push(i);
        }
        ConcurrentFlow {
            host,
            nodes: self.nodes,
            paths: self.paths,
            by_pair,
        }
    }
}

impl ConcurrentFlow {
    pub fn new(host: WeightedGraph, paths: Vec<FlowPath>) -> Self {
        let mut trie = PathTrie::default();
        for p in &paths {
            trie.insert(&p.vertices, p.amount);
        }
        trie.finish(host)
    }

    pub fn host(&self) -> &WeightedGraph {
        &self.host
    }

    pub fn paths(&self) -> &[PathRecord] {
        &self.paths
    }

    pub fn path_vertices(&self, i: usize) -> Vec<usize> {
        let mut out = Vec::new();
        let mut at = self.paths[i].end;
        while at != INF {
            out.push(self.nodes[at].vertex);
            at = self.nodes[at].parent;
        }
        out.reverse();
        out
    }

    /// Indices into [`paths`](Self::paths) of the stored `u → v` paths.
    pub fn paths_between(&self, u: usize, v: usize) -> &[usize] {
        self.by_pair.get(&(u, v)).map(Vec::as_slice).unwrap_or(&[])
    }

    /// `γ(v)`: total amount on stored paths through `v`, endpoints included.
    pub fn congestion(&self, v: usize) -> f64 {
        self.congestion_profile()[v]
    }

    pub fn congestion_profile(&self) -> Vec<f64> {
        // parents precede children in `nodes`
        let mut through = vec![0.0; self.nodes.len()];
        for p in &self.paths {
            through[p.end] += p.amount;
        }
        let mut out = vec![0.0; self.host.n()];
        for i in (0..self.nodes.len()).rev() {
            let TrieNode { vertex, parent, .. } = self.nodes[i];
            out[vertex] += through[i];
            if parent != INF {
                through[parent] += through[i];
            }
        }
        out
    }

    pub fn max_congestion(&self) -> f64 {
        self.congestion_profile().into_iter().fold(0.0, f64::max)
    }

    /// Checks path validity and the exact-demand invariant at relative
    /// tolerance `tol`.
    pub fn check(&self, tol: f64) -> Result<(), FlowError> {
        let g = &self.host;
        let n = g.n();
        // every root-to-node walk must be a simple path of the host
        let mut children: Vec<Vec<usize>> = vec![Vec::new(); self.nodes.len()];
        let mut roots = Vec::new();
        for (i, node) in self.nodes.iter().enumerate() {
            if node.vertex >= n {
                return Err(FlowError::Invariant(format!("vertex {} outside the host", node.vertex)));
            }
            if node.parent == INF {
                roots.push(i);
            } else {
                if !g.has_edge(self.nodes[node.parent].vertex, node.vertex) {
                    return Err(FlowError::Invariant(format!(
                        "step {}-{} leaves the host graph",
                        self.nodes[node.parent].vertex, node.vertex
                    )));
                }
                children[node.parent].push(i);
            }
        }
        let mut on_path = vec![false; n];
        for root in roots {
            let mut stack = vec![(root, false)];
            while let Some((i, done)) = stack.pop() {
                let v = self.nodes[i].vertex;
                if done {
                    on_path[v] = false;
                    continue;
                }
                if on_path[v] {
                    return Err(FlowError::Invariant(format!("a path revisits vertex {v}")));
                }
                on_path[v] = true;
                stack.push((i, true));
                stack.extend(children[i].iter().map(|&c| (c, false)));
            }
        }
        for (i, p) in self.paths.iter().enumerate() {
            if self.nodes[p.end].parent == INF || p.amount.is_nan() || p.amount < 0.0 {
                return Err(FlowError::Invariant(format!("path {i} is degenerate")));
            }
            if self.nodes[p.end].root != p.source || self.nodes[p.end].vertex != p.target {
                return Err(FlowError::Invariant(format!("path {i} has wrong endpoints")));
            }
        }
        let positive: Vec<usize> = (0..n).filter(|&v| g.weight(v) > 0.0).collect();
        for &u in &positive {
            for &v in &positive {
                if u == v {
                    continue;
                }
                let demand = g.weight(u) * g.weight(v);
                let routed: f64 = self.paths_between(u, v).iter().map(|&i| self.paths[i].amount).sum();
                if (routed - demand).abs() > tol * demand {
                    return Err(FlowError::Invariant(format!(
                        "pair ({u},{v}) routes {routed}, demand {demand}"
                    )));
                }
            }
        }
        for &(u, v) in self.by_pair.keys() {
            if g.weight(u) <= 0.0 || g.weight(v) <= 0.0 {
                let amount: f64 = self.paths_between(u, v).iter().map(|&i| self.paths[i].amount).sum();
                if amount > 0.0 {
                    return Err(FlowError::Invariant(format!("flow on zero-demand pair ({u},{v})")));
                }
            }
        }
        Ok(())
    }
}

/// `γ_{G,λ}(v)`.
pub fn congestion(flow: &ConcurrentFlow, v: usize) -> f64 {
    flow.congestion(v)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FlowCutConfig {
    pub cut_constant: f64,
    /// Accuracy parameter of the multiplicative-weights solver.
    pub epsilon: f64,
    /// Safety cap on solver phases before giving up with a diagnostic.
    pub max_phases: usize,
}

impl Default for FlowCutConfig {
    fn default() -> Self {
        Self {
            cut_constant: DEFAULT_CUT_CONSTANT,
            epsilon: 0.1,
            max_phases: 20_000,
        }
    }
}

#[derive(Clone, Debug)]
pub enum FlowOrCut {
    Flow(ConcurrentFlow),
    Cut {
        separation: Separation,
        sparsity: f64,
        /// `C_cut · ln n / γ`, which `sparsity` does not exceed.
        bound: f64,
    },
}

/// Either a concurrent flow with congestion at most `gamma` or a separation
/// with sparsity at most `cfg.cut_constant · ln n / gamma`.
pub fn flow_or_sparse_cut(g: &WeightedGraph, gamma: f64, cfg: &FlowCutConfig) -> Result<FlowOrCut, FlowError> {
    if !(gamma > 0.0 && gamma.is_finite()) {
        return Err(FlowError::InvalidGamma(gamma));
    }
    let n = g.n();
    let positive: Vec<usize> = (0..n).filter(|&v| g.weight(v) > 0.0).collect();
    if positive.len() < 2 {
        return Ok(FlowOrCut::Flow(ConcurrentFlow::new(g.clone(), Vec::new())));
    }
    let bound = cfg.cut_constant * (n as f64).ln() / gamma;

    // Positive weight in two components: nothing can be routed, and a
    // component boundary is a separation of sparsity zero.
    let components = g.components();
    let mut comp_of = vec![0; n];
    for (i, c) in components.iter().enumerate() {
        c.iter().for_each(|&v| comp_of[v] = i);
    }
    if positive.iter().any(|&v| comp_of[v] != comp_of[positive[0]]) {
        let side_a = components[comp_of[positive[0]]].clone();
        let side_b: Vec<usize> = (0..n).filter(|&v| comp_of[v] != comp_of[positive[0]]).collect();
        let separation = Separation::new(g, side_a, side_b).map_err(|e| FlowError::Invariant(e.to_string()))?;
        return Ok(FlowOrCut::Cut {
            sparsity: 0.0,
            separation,
            bound,
        });
    }

    let mut solver = MwSolver::new(g, &positive, gamma, cfg.epsilon);
    let mut last_cut: Option<(Separation, f64)> = None;
    let mut tried_cut = false;
    let mut phases_since_cut = 0;
    while solver.phases < cfg.max_phases {
        let complete = solver.run_phase();
        if complete && solver.feasible() {
            let flow = solver.extract_flow()?;
            let worst = flow.max_congestion();
            if worst > gamma * (1.0 + FLOW_TOLERANCE) {
                return Err(FlowError::Invariant(format!(
                    "extracted flow has congestion {worst} above {gamma}"
                )));
            }
            flow.check(FLOW_TOLERANCE)?;
            return Ok(FlowOrCut::Flow(flow));
        }
        if solver.dual_value() >= 1.0 {
            phases_since_cut += 1;
            if !tried_cut || phases_since_cut >= 8 {
                tried_cut = true;
                phases_since_cut = 0;
                let (separation, sparsity) = best_region_cut(g, &solver.normalized_lengths())?;
                if sparsity <= bound {
                    return Ok(FlowOrCut::Cut {
                        separation,
                        sparsity,
                        bound,
                    });
                }
                last_cut = Some((separation, sparsity));
                solver.renormalize();
            }
        }
    }
    let detail = match last_cut {
        Some((_, s)) => format!("best separation has sparsity {s:.6e} above bound {bound:.6e}"),
        None => "no separation attempted".to_string(),
    };
    Err(FlowError::NonConvergence(format!(
        "no flow of congestion {gamma} after {} phases; {detail}",
        solver.phases
    )))
}

#[derive(Clone, Copy, Debug, PartialEq)]
struct Key(f64, usize);

impl Eq for Key {}

impl Ord for Key {
    fn cmp(&self, other: &Self) -> Ordering {
        other.0.total_cmp(&self.0).then_with(|| other.1.cmp(&self.1))
    }
}

impl PartialOrd for Key {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Vertex-length Dijkstra; a path's length is the sum over all its vertices.
/// Returns distances, parents and the settle order.
fn vertex_dijkstra(g: &WeightedGraph, source: usize, length: &[f64]) -> (Vec<f64>, Vec<usize>, Vec<usize>) {
    let n = g.n();
    let mut dist = vec![f64::INFINITY; n];
    let mut parent = vec![INF; n];
    let mut done = vec![false; n];
    let mut order = Vec::with_capacity(n);
    let mut heap = BinaryHeap::new();
    dist[source] = length[source];
    heap.push(Key(dist[source], source));
    while let Some(Key(d, u)) = heap.pop() {
        if done[u] {
            continue;
        }
        done[u] = true;
        order.push(u);
        for &v in g.neighbors(u) {
            let nd = d + length[v];
            if !done[v] && nd < dist[v] {
                dist[v] = nd;
                parent[v] = u;
                heap.push(Key(nd, v));
            }
        }
    }
    (dist, parent, order)
}

/// Garg–Könemann style maximum concurrent flow with unit vertex capacities,
/// commodities grouped by source and routed along shortest-path trees.
/// Demands are pre-scaled by `1/γ`, so a flow of value 1 is what we want.
struct MwSolver<'a> {
    g: &'a WeightedGraph,
    sources: Vec<usize>,
    gamma: f64,
    epsilon: f64,
    length: Vec<f64>,
    /// Total unit charges per vertex accumulated over all routed flow.
    load: Vec<f64>,
    /// Per source, flow on the directed arc `u → adj[u][k]` at `offset[u] + k`.
    arc_flow: Vec<Vec<f64>>,
    offset: Vec<usize>,
    phases: usize,
    dual_scale: f64,
}

impl<'a> MwSolver<'a> {
    fn new(g: &'a WeightedGraph, positive: &[usize], gamma: f64, epsilon: f64) -> Self {
        let n = g.n();
        let mut offset = vec![0; n + 1];
        for v in 0..n {
            offset[v + 1] = offset[v] + g.degree(v);
        }
        let m = n as f64;
        let delta = (1.0 + epsilon) * ((1.0 + epsilon) * m).powf(-1.0 / epsilon);
        Self {
            g,
            sources: positive.to_vec(),
            gamma,
            epsilon,
            length: vec![delta; n],
            load: vec![0.0; n],
            arc_flow: vec![vec![0.0; offset[n]]; positive.len()],
            offset,
            phases: 0,
            dual_scale: 1.0,
        }
    }

    fn dual_value(&self) -> f64 {
        self.length.iter().sum::<f64>() * self.dual_scale
    }

    fn renormalize(&mut self) {
        let total: f64 = self.length.iter().sum();
        self.dual_scale *= total;
        self.length.iter_mut().for_each(|l| *l /= total);
    }

    fn normalized_lengths(&self) -> Vec<f64> {
        let total: f64 = self.length.iter().sum();
        self.length.iter().map(|l| l / total).collect()
    }

    /// Feasible iff routing `phases` copies of the demand charges each
    /// vertex at most `phases`.
    fn feasible(&self) -> bool {
        let t = self.phases as f64;
        self.load.iter().all(|&l| l <= t * (1.0 + 1e-9))
    }

    /// Routes one full copy of every demand. Returns `false` if the dual
    /// value reached 1 first (the phase is abandoned midway).
    fn run_phase(&mut self) -> bool {
        let g = self.g;
        let n = g.n();
        let mut remaining = vec![0.0; n];
        let mut subtree = vec![0.0; n];
        for (si, &s) in self.sources.clone().iter().enumerate() {
            let ws = g.weight(s);
            for &t in &self.sources {
                remaining[t] = if t == s { 0.0 } else { ws * g.weight(t) / self.gamma };
            }
            loop {
                let total: f64 = self.sources.iter().map(|&t| remaining[t]).sum();
                if total <= 0.0 {
                    break;
                }
                if self.dual_value() >= 1.0 && self.phases > 0 {
                    return false;
                }
                let (_, parent, order) = vertex_dijkstra(g, s, &self.length);
                subtree.iter_mut().for_each(|x| *x = 0.0);
                for &v in order.iter().rev() {
                    subtree[v] += remaining[v];
                    if v != s {
                        subtree[parent[v]] += subtree[v];
                    }
                }
                let peak = order.iter().map(|&v| subtree[v]).fold(0.0, f64::max);
                let sigma = if peak > 1.0 { 1.0 / peak } else { 1.0 };
                for &v in &order {
                    let through = sigma * subtree[v];
                    if through <= 0.0 {
                        continue;
                    }
                    self.load[v] += through;
                    self.length[v] *= 1.0 + self.epsilon * through;
                    if v != s {
                        let p = parent[v];
                        let k = g.neighbors(p).binary_search(&v).unwrap();
                        self.arc_flow[si][self.offset[p] + k] += through;
                    }
                }
                if sigma >= 1.0 {
                    self.sources.iter().for_each(|&t| remaining[t] = 0.0);
                } else {
                    self.sources.iter().for_each(|&t| remaining[t] *= 1.0 - sigma);
                }
            }
        }
        self.phases += 1;
        true
    }

    /// Scales the accumulated flow to exactly one copy of the unscaled
    /// demands and decomposes it into paths.
    fn extract_flow(&self) -> Result<ConcurrentFlow, FlowError> {
        let g = self.g;
        let scale = self.gamma / self.phases as f64;
        let mut trie = PathTrie::default();
        for (si, &s) in self.sources.iter().enumerate() {
            let mut flow: Vec<f64> = self.arc_flow[si].iter().map(|f| f * scale).collect();
            let mut ends = decompose_single_source(g, &self.offset, &mut flow, s, &mut trie);
            for &t in &self.sources {
                if t == s {
                    continue;
                }
                let demand = g.weight(s) * g.weight(t);
                let group = std::mem::take(&mut ends[t]);
                let routed: f64 = group.values().sum();
                if routed.is_nan() || routed <= 0.0 || (routed - demand).abs() > 1e-3 * demand {
                    return Err(FlowError::Invariant(format!(
                        "decomposition routes {routed} of demand {demand} for ({s},{t})"
                    )));
                }
                let fix = demand / routed;
                for (node, amount) in group {
                    trie.push(node, amount * fix);
                }
            }
        }
        Ok(trie.finish(g.clone()))
    }
}

fn arc_index(g: &WeightedGraph, offset: &[usize], u: usize, v: usize) -> usize {
    offset[u] + g.neighbors(u).binary_search(&v).unwrap()
}

/// Cancels 2-cycles and longer cycles, then splits the acyclic remainder
/// into `s → t` paths in topological order, growing them directly in `trie`.
/// Returns, per target, the path end nodes with their amounts.
fn decompose_single_source(
    g: &WeightedGraph,
    offset: &[usize],
    flow: &mut [f64],
    s: usize,
    trie: &mut PathTrie,
) -> Vec<BTreeMap<usize, f64>> {
    let n = g.n();
    let total: f64 = flow.iter().sum();
    let tiny = 1e-13 * total.max(1e-300);

    for u in 0..n {
        for (k, &v) in g.neighbors(u).iter().enumerate() {
            if u < v {
                let a = offset[u] + k;
                let b = arc_index(g, offset, v, u);
                let m = flow[a].min(flow[b]);
                flow[a] -= m;
                flow[b] -= m;
            }
        }
    }
    flow.iter_mut().for_each(|f| {
        if *f < tiny {
            *f = 0.0
        }
    });
    cancel_cycles(g, offset, flow, tiny);

    let mut excess = vec![0.0; n];
    let mut indegree = vec![0usize; n];
    for u in 0..n {
        for (k, &v) in g.neighbors(u).iter().enumerate() {
            let f = flow[offset[u] + k];
            if f > 0.0 {
                excess[v] += f;
                excess[u] -= f;
                indegree[v] += 1;
            }
        }
    }
    let mut queue: std::collections::VecDeque<usize> = (0..n).filter(|&v| indegree[v] == 0).collect();
    let mut arriving: Vec<Vec<(usize, f64)>> = vec![Vec::new(); n];
    let mut ends: Vec<BTreeMap<usize, f64>> = vec![BTreeMap::new(); n];
    arriving[s].push((trie.child(INF, s), -excess[s]));
    while let Some(v) = queue.pop_front() {
        let items = std::mem::take(&mut arriving[v]);
        let mut demands: Vec<(usize, f64)> = Vec::new();
        if v != s && excess[v] > tiny {
            demands.push((INF, excess[v]));
        }
        for (k, &u) in g.neighbors(v).iter().enumerate() {
            let f = flow[offset[v] + k];
            if f > 0.0 {
                demands.push((u, f));
                indegree[u] -= 1;
                if indegree[u] == 0 {
                    queue.push_back(u);
                }
            }
        }
        let (mut i, mut j) = (0, 0);
        let mut have = items.first().map_or(0.0, |x| x.1);
        let mut want = demands.first().map_or(0.0, |x| x.1);
        while i < items.len() && j < demands.len() {
            let take = have.min(want);
            if take > tiny {
                let (node, _) = items[i];
                match demands[j].0 {
                    INF => *ends[v].entry(node).or_insert(0.0) += take,
                    u => {
                        let next = trie.child(node, u);
                        match arriving[u].last_mut() {
                            Some(last) if last.0 == next => last.1 += take,
                            _ => arriving[u].push((next, take)),
                        }
                    }
                }
            }
            have -= take;
            want -= take;
            if have <= 0.0 {
                i += 1;
                have = items.get(i).map_or(0.0, |x| x.1);
            }
            if want <= 0.0 {
                j += 1;
                want = demands.get(j).map_or(0.0, |x| x.1);
            }
        }
    }
    ends
}

/// Removes every directed cycle of positive flow by repeated DFS.
fn cancel_cycles(g: &WeightedGraph, offset: &[usize], flow: &mut [f64], tiny: f64) {
    let n = g.n();
    // 0 = unvisited, 1 = on stack, 2 = finished
    let mut color = vec![0u8; n];
    let mut next = vec![0usize; n];
    let mut stack: Vec<usize> = Vec::new();
    let mut root = 0;
    while root < n {
        if color[root] != 0 {
            root += 1;
            continue;
        }
        color[root] = 1;
        next[root] = 0;
        stack.push(root);
        while let Some(&u) = stack.last() {
            let nbrs = g.neighbors(u);
            let mut advanced = false;
            while next[u] < nbrs.len() {
                let k = next[u];
                let v = nbrs[k];
                if flow[offset[u] + k] <= tiny {
                    next[u] += 1;
                    continue;
                }
                if color[v] == 0 {
                    color[v] = 1;
                    next[v] = 0;
                    stack.push(v);
                    advanced = true;
                    break;
                }
                if color[v] == 1 {
                    // cycle v -> ... -> u -> v along the stack
                    let pos = stack.iter().rposition(|&x| x == v).unwrap();
                    let mut cyc: Vec<usize> = stack[pos..]
                        .windows(2)
                        .map(|w| arc_index(g, offset, w[0], w[1]))
                        .collect();
                    cyc.push(offset[u] + k);
                    let m = cyc.iter().map(|&a| flow[a]).fold(f64::INFINITY, f64::min);
                    for &a in &cyc {
                        flow[a] -= m;
                        if flow[a] <= tiny {
                            flow[a] = 0.0;
                        }
                    }
                    // unwind to v and retry from there
                    for &x in &stack[pos + 1..] {
                        color[x] = 0;
                    }
                    stack.truncate(pos + 1);
                    advanced = true;
                    break;
                }
                next[u] += 1;
            }
            if !advanced {
                color[u] = 2;
                stack.pop();
            }
        }
    }
}

#[derive(Clone, Copy)]
enum SweepSide {
    /// `A = P ∪ N(P)`, `B = V \ P`.
    Outer,
    /// `A = P`, `B = (V \ P) ∪ ∂P`.
    Inner,
}

/// Region growing: from every root, order vertices by length-distance and
/// sweep all prefixes `P`, scoring both separations induced by `P`. Also
/// sweeps with unit lengths. Returns the sparsest separation found.
fn best_region_cut(g: &WeightedGraph, length: &[f64]) -> Result<(Separation, f64), FlowError> {
    let n = g.n();
    let total = g.total_weight();
    let total_pos = (0..n).filter(|&v| g.weight(v) > 0.0).count();
    let pos = |v: usize| usize::from(g.weight(v) > 0.0);
    let unit = vec![1.0; n];
    let mut best: Option<(f64, Vec<usize>, usize, SweepSide)> = None;
    for metric in [length, unit.as_slice()] {
        for root in 0..n {
            let (dist, _, mut order) = vertex_dijkstra(g, root, metric);
            let mut rest: Vec<usize> = (0..n).filter(|&v| dist[v] == f64::INFINITY).collect();
            order.append(&mut rest);
            let mut in_p = vec![false; n];
            let mut p_nbrs = vec![0usize; n];
            let mut out_nbrs = vec![0usize; n];
            // weights for sparsity, positive-vertex counts for side emptiness
            let (mut outer_count, mut outer_weight, mut outer_pos) = (0usize, 0.0, 0usize);
            let (mut inner_count, mut inner_weight, mut inner_pos) = (0usize, 0.0, 0usize);
            let (mut p_weight, mut p_pos) = (0.0, 0usize);
            for (i, &v) in order.iter().enumerate().take(n - 1) {
                if p_nbrs[v] > 0 {
                    outer_count -= 1;
                    outer_weight -= g.weight(v);
                    outer_pos -= pos(v);
                }
                in_p[v] = true;
                p_weight += g.weight(v);
                p_pos += pos(v);
                let outside = g.neighbors(v).iter().filter(|&&u| !in_p[u]).count();
                out_nbrs[v] = outside;
                if outside > 0 {
                    inner_count += 1;
                    inner_weight += g.weight(v);
                    inner_pos += pos(v);
                }
                for &u in g.neighbors(v) {
                    if in_p[u] {
                        out_nbrs[u] -= 1;
                        if out_nbrs[u] == 0 {
                            inner_count -= 1;
                            inner_weight -= g.weight(u);
                            inner_pos -= pos(u);
                        }
                    } else {
                        p_nbrs[u] += 1;
                        if p_nbrs[u] == 1 {
                            outer_count += 1;
                            outer_weight += g.weight(u);
                            outer_pos += pos(u);
                        }
                    }
                }
                let candidates = [
                    (
                        SweepSide::Outer,
                        outer_count,
                        p_weight + outer_weight,
                        total - p_weight,
                        p_pos + outer_pos,
                        total_pos - p_pos,
                    ),
                    (
                        SweepSide::Inner,
                        inner_count,
                        p_weight,
                        total - p_weight + inner_weight,
                        p_pos,
                        total_pos - p_pos + inner_pos,
                    ),
                ];
                for (side, sep, wa, wb, pos_a, pos_b) in candidates {
                    if pos_a == 0 || pos_b == 0 {
                        continue;
                    }
                    let sparsity = sep as f64 / (wa * wb);
                    if best.as_ref().is_none_or(|b| sparsity < b.0) {
                        best = Some((sparsity, order.clone(), i + 1, side));
                    }
                }
            }
        }
    }
    let (_, order, len, side) =
        best.ok_or_else(|| FlowError::NonConvergence("no separation with positive side weights".into()))?;
    let mut in_p = vec![false; n];
    order[..len].iter().for_each(|&v| in_p[v] = true);
    let (side_a, side_b): (Vec<usize>, Vec<usize>) = match side {
        SweepSide::Outer => {
            let a = (0..n)
                .filter(|&v| in_p[v] || g.neighbors(v).iter().any(|&u| in_p[u]))
                .collect();
            (a, (0..n).filter(|&v| !in_p[v]).collect())
        }
        SweepSide::Inner => {
            let b = (0..n)
                .filter(|&v| !in_p[v] || g.neighbors(v).iter().any(|&u| !in_p[u]))
                .collect();
            ((0..n).filter(|&v| in_p[v]).collect(), b)
        }
    };
    let separation = Separation::new(g, side_a, side_b).map_err(|e| FlowError::Invariant(e.to_string()))?;
    let sparsity = separation.sparsity(g);
    Ok((separation, sparsity))
}

/// One peeling step of [`balanced_separator_or_flow`], in original vertex ids.
#[derive(Clone, Debug, Serialize)]
pub struct PeelStep {
    pub separator: Vec<usize>,
    /// `B_i \ A_i`, the lighter side removed at this step.
    pub removed: Vec<usize>,
    pub sparsity: f64,
    pub weight_a: f64,
    pub weight_b: f64,
}

#[derive(Clone, Debug)]
pub enum SeparatorOrFlow {
    /// `S = ∪ S_i` is a balanced separator of the input graph.
    Balanced {
        separator: Vec<usize>,
        steps: Vec<PeelStep>,
    },
    /// `vertices` (sorted, original ids) induce `G'` with `w(G') >= W/2`,
    /// `flow` lives on `G'` in local ids (position in `vertices`), and
    /// `separator` is disjoint from `G'` and cuts it off from the rest.
    Heavy {
        vertices: Vec<usize>,
        flow: ConcurrentFlow,
        separator: Vec<usize>,
        steps: Vec<PeelStep>,
    },
}

impl SeparatorOrFlow {
    pub fn separator(&self) -> &[usize] {
        match self {
            Self::Balanced { separator, .. } | Self::Heavy { separator, .. } => separator,
        }
    }

    pub fn steps(&self) -> &[PeelStep] {
        match self {
            Self::Balanced { steps, .. } | Self::Heavy { steps, .. } => steps,
        }
    }
}

/// Repeatedly applies [`flow_or_sparse_cut`] to `G_i`, starting from `G`,
/// while `w(G_i) >= W/2`; each separation `(A_i, B_i)` (oriented so that
/// `w(A_i) >= w(B_i)`) contributes `S_i = A_i ∩ B_i` and `G_{i+1} = G_i[A_i \ B_i]`.
pub fn balanced_separator_or_flow(
    g: &WeightedGraph,
    gamma: f64,
    cfg: &FlowCutConfig,
) -> Result<SeparatorOrFlow, FlowError> {
    if !(gamma > 0.0 && gamma.is_finite()) {
        return Err(FlowError::InvalidGamma(gamma));
    }
    let total = g.total_weight();
    let mut current: Vec<usize> = (0..g.n()).collect();
    let mut separator = Vec::new();
    let mut steps = Vec::new();
    if total <= 0.0 {
        return Ok(SeparatorOrFlow::Balanced { separator, steps });
    }
    loop {
        let current_weight = g.weight_of(current.iter().copied());
        if current_weight < total / 2.0 {
            check_peeling(g, &steps, &current)?;
            check_size(g, gamma, cfg, &steps)?;
            separator.sort_unstable();
            return Ok(SeparatorOrFlow::Balanced { separator, steps });
        }
        let (sub, map) = g.induced_subgraph(&current);
        match flow_or_sparse_cut(&sub, gamma, cfg)? {
            FlowOrCut::Flow(flow) => {
                check_peeling(g, &steps, &current)?;
                check_size(g, gamma, cfg, &steps)?;
                separator.sort_unstable();
                return Ok(SeparatorOrFlow::Heavy {
                    vertices: map,
                    flow,
                    separator,
                    steps,
                });
            }
            FlowOrCut::Cut {
                separation, sparsity, ..
            } => {
                let mut a: Vec<usize> = separation.side_a.iter().map(|&v| map[v]).collect();
                let mut b: Vec<usize> = separation.side_b.iter().map(|&v| map[v]).collect();
                let (mut wa, mut wb) = (g.weight_of(a.iter().copied()), g.weight_of(b.iter().copied()));
                if wa < wb || (wa == wb && a < b) {
                    std::mem::swap(&mut a, &mut b);
                    std::mem::swap(&mut wa, &mut wb);
                }
                let in_b = membership(g.n(), &b);
                let in_a = membership(g.n(), &a);
                let s_i: Vec<usize> = a.iter().copied().filter(|&v| in_b[v]).collect();
                let removed: Vec<usize> = b.iter().copied().filter(|&v| !in_a[v]).collect();
                separator.extend_from_slice(&s_i);
                current = a.into_iter().filter(|&v| !in_b[v]).collect();
                steps.push(PeelStep {
                    separator: s_i,
                    removed,
                    sparsity,
                    weight_a: wa,
                    weight_b: wb,
                });
            }
        }
    }
}

fn membership(n: usize, set: &[usize]) -> Vec<bool> {
    let mut out = vec![false; n];
    set.iter().for_each(|&v| out[v] = true);
    out
}

/// `V(G) \ S` must split into the removed sides `B_i \ A_i` and the final
/// remainder, with no edge between distinct parts.
fn check_peeling(g: &WeightedGraph, steps: &[PeelStep], remainder: &[usize]) -> Result<(), FlowError> {
    let n = g.n();
    let mut part = vec![INF; n];
    let mut in_sep = vec![false; n];
    for (i, step) in steps.iter().enumerate() {
        for &v in &step.separator {
            if in_sep[v] || part[v] != INF {
                return Err(FlowError::Invariant(format!("separator pieces overlap at {v}")));
            }
            in_sep[v] = true;
        }
        for &v in &step.removed {
            if part[v] != INF || in_sep[v] {
                return Err(FlowError::Invariant(format!("removed sides overlap at {v}")));
            }
            part[v] = i;
        }
    }
    for &v in remainder {
        if part[v] != INF || in_sep[v] {
            return Err(FlowError::Invariant(format!("remainder overlaps at {v}")));
        }
        part[v] = steps.len();
    }
    if let Some(v) = (0..n).find(|&v| !in_sep[v] && part[v] == INF) {
        return Err(FlowError::Invariant(format!("vertex {v} lost while peeling")));
    }
    for (u, v) in g.edges() {
        if !in_sep[u] && !in_sep[v] && part[u] != part[v] {
            return Err(FlowError::Invariant(format!("edge {u}-{v} joins two parts")));
        }
    }
    Ok(())
}

/// `|S| <= C_cut · W² · ln n / γ`.
fn check_size(g: &WeightedGraph, gamma: f64, cfg: &FlowCutConfig, steps: &[PeelStep]) -> Result<(), FlowError> {
    let size: usize = steps.iter().map(|s| s.separator.len()).sum();
    let w = g.total_weight();
    let bound = cfg.cut_constant * w * w * (g.n() as f64).ln() / gamma;
    if size as f64 > bound * (1.0 + 1e-9) {
        return Err(FlowError::Invariant(format!(
            "separator size {size} above bound {bound}"
        )));
    }
    Ok(())
}
