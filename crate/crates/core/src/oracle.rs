//! Exhaustive ground truth for tiny instances.

use crate::error::OracleError;
use crate::fatminor::{FatModel, PatternGraph};
use crate::graph::{Separation, WeightedGraph};

pub const FAT_MINOR_MAX_VERTICES: usize = 12;
pub const FAT_MINOR_MAX_PATTERN: usize = 6;
pub const EXACT_MAX_VERTICES: usize = 16;

type Mask = u32;

fn bits(mask: Mask) -> impl Iterator<Item = usize> {
    (0..32).filter(move |&i| mask >> i & 1 == 1)
}

fn to_vec(mask: Mask) -> Vec<usize> {
    bits(mask).collect()
}

fn adjacency_masks(g: &WeightedGraph) -> Vec<Mask> {
    (0..g.n())
        .map(|v| g.neighbors(v).iter().fold(0, |m, &u| m | 1 << u))
        .collect()
}

fn neighborhood(adj: &[Mask], mask: Mask) -> Mask {
    bits(mask).fold(mask, |m, v| m | adj[v])
}

fn is_connected(adj: &[Mask], mask: Mask) -> bool {
    if mask == 0 {
        return false;
    }
    let mut reach: Mask = mask & mask.wrapping_neg();
    loop {
        let next = neighborhood(adj, reach) & mask;
        if next == reach {
            return reach == mask;
        }
        reach = next;
    }
}

/// Components of the subgraph induced by `mask`.
fn components(adj: &[Mask], mut mask: Mask) -> Vec<Mask> {
    let mut out = Vec::new();
    while mask != 0 {
        let mut comp: Mask = mask & mask.wrapping_neg();
        loop {
            let next = neighborhood(adj, comp) & mask;
            if next == comp {
                break;
            }
            comp = next;
        }
        out.push(comp);
        mask &= !comp;
    }
    out
}

fn mask_weight(g: &WeightedGraph, mask: Mask) -> f64 {
    bits(mask).map(|v| g.weight(v)).sum()
}

#[derive(Clone, Copy, PartialEq)]
enum Item {
    Vertex(usize),
    Edge(usize),
}

/// Exhaustive search for a `d`-fat model of `h` in `g`, or `None` if there
/// is none. Requires `|V(G)| <= 12` and `‖H‖ <= 6`.
pub fn brute_force_fat_minor(g: &WeightedGraph, h: &PatternGraph, d: usize) -> Result<Option<FatModel>, OracleError> {
    if g.n() > FAT_MINOR_MAX_VERTICES {
        return Err(OracleError::TooLarge(format!("{} host vertices", g.n())));
    }
    if h.size() > FAT_MINOR_MAX_PATTERN {
        return Err(OracleError::TooLarge(format!("pattern of size {}", h.size())));
    }
    let n = g.n();
    let adj = adjacency_masks(g);
    let mut connected: Vec<Mask> = (1..(1 as Mask) << n).filter(|&m| is_connected(&adj, m)).collect();
    connected.sort_by_key(|m| (m.count_ones(), *m));
    // `reach[i]` is the radius-(d-1) neighborhood of `connected[i]`
    let reach: Vec<Mask> = connected
        .iter()
        .map(|&m| (1..d).fold(m, |acc, _| neighborhood(&adj, acc)))
        .collect();

    // vertices first, each followed by its edges to earlier vertices, so
    // intersections are checked as early as possible
    let mut order = Vec::new();
    for u in 0..h.n() {
        order.push(Item::Vertex(u));
        for (e, &(_, b)) in h.edges().iter().enumerate() {
            if b == u {
                order.push(Item::Edge(e));
            }
        }
    }
    let incident = |x: Item, y: Item| match (x, y) {
        (Item::Vertex(u), Item::Edge(e)) | (Item::Edge(e), Item::Vertex(u)) => {
            let (a, b) = h.edges()[e];
            u == a || u == b
        }
        _ => false,
    };

    let mut chosen: Vec<usize> = Vec::with_capacity(order.len());
    if search(&order, &connected, &reach, d, &incident, &mut chosen) {
        let mut model = FatModel {
            fatness: d,
            vertex_sets: vec![Vec::new(); h.n()],
            edge_sets: vec![Vec::new(); h.edges().len()],
        };
        for (item, &c) in order.iter().zip(&chosen) {
            match *item {
                Item::Vertex(u) => model.vertex_sets[u] = to_vec(connected[c]),
                Item::Edge(e) => model.edge_sets[e] = to_vec(connected[c]),
            }
        }
        Ok(Some(model))
    } else {
        Ok(None)
    }
}

fn search(
    order: &[Item],
    connected: &[Mask],
    reach: &[Mask],
    d: usize,
    incident: &dyn Fn(Item, Item) -> bool,
    chosen: &mut Vec<usize>,
) -> bool {
    let depth = chosen.len();
    if depth == order.len() {
        return true;
    }
    let item = order[depth];
    'candidates: for c in 0..connected.len() {
        for (j, &p) in chosen.iter().enumerate() {
            if incident(item, order[j]) {
                if connected[c] & connected[p] == 0 {
                    continue 'candidates;
                }
            } else if d > 0 && reach[c] & connected[p] != 0 {
                continue 'candidates;
            }
        }
        chosen.push(c);
        if search(order, connected, reach, d, incident, chosen) {
            return true;
        }
        chosen.pop();
    }
    false
}

/// Independent bitmask check of the fat-model conditions.
pub fn check_model_exhaustively(g: &WeightedGraph, h: &PatternGraph, model: &FatModel, d: usize) -> bool {
    if g.n() > 32 || model.vertex_sets.len() != h.n() || model.edge_sets.len() != h.edges().len() {
        return false;
    }
    let adj = adjacency_masks(g);
    let to_mask = |s: &[usize]| -> Option<Mask> { s.iter().try_fold(0, |m, &v| (v < g.n()).then_some(m | 1 << v)) };
    let mut sets = Vec::new();
    for s in model.vertex_sets.iter().chain(&model.edge_sets) {
        match to_mask(s) {
            Some(m) if is_connected(&adj, m) => sets.push(m),
            _ => return false,
        }
    }
    let nv = h.n();
    for i in 0..sets.len() {
        for j in i + 1..sets.len() {
            let inc = i < nv && j >= nv && {
                let (a, b) = h.edges()[j - nv];
                i == a || i == b
            };
            if inc {
                if sets[i] & sets[j] == 0 {
                    return false;
                }
            } else {
                let ball = (1..d).fold(sets[i], |acc, _| neighborhood(&adj, acc));
                if d > 0 && ball & sets[j] != 0 {
                    return false;
                }
            }
        }
    }
    true
}

/// A separation of minimum sparsity and its sparsity `α*`.
pub fn exact_sparsest_separation(g: &WeightedGraph) -> Result<(Separation, f64), OracleError> {
    let n = g.n();
    if n > EXACT_MAX_VERTICES {
        return Err(OracleError::TooLarge(format!("{n} vertices")));
    }
    if g.total_weight() <= 0.0 {
        return Err(OracleError::Degenerate);
    }
    let adj = adjacency_masks(g);
    let full: Mask = ((1u64 << n) - 1) as Mask;
    let mut best: Option<(f64, Mask, Mask)> = None;
    for s in 0..=full {
        let ws = mask_weight(g, s);
        let comps = components(&adj, full & !s);
        let weights: Vec<f64> = comps.iter().map(|&c| mask_weight(g, c)).collect();
        let rest: f64 = weights.iter().sum();
        for pick in 0..(1u64 << comps.len()) {
            let x: f64 = (0..comps.len())
                .filter(|&i| pick >> i & 1 == 1)
                .map(|i| weights[i])
                .sum();
            if ws + x <= 0.0 || ws + rest - x <= 0.0 {
                continue;
            }
            let a_side = (0..comps.len())
                .filter(|&i| pick >> i & 1 == 1)
                .fold(s, |m, i| m | comps[i]);
            let b_side = (0..comps.len())
                .filter(|&i| pick >> i & 1 == 0)
                .fold(s, |m, i| m | comps[i]);
            // summed in vertex order, as Separation::sparsity does
            let alpha = s.count_ones() as f64 / (mask_weight(g, a_side) * mask_weight(g, b_side));
            if best.as_ref().is_none_or(|b| alpha < b.0) {
                best = Some((alpha, a_side, b_side));
            }
        }
        if best.as_ref().is_some_and(|b| b.0 == 0.0) {
            break;
        }
    }
    let (alpha, a, b) = best.ok_or(OracleError::Degenerate)?;
    let sep = Separation::new(g, to_vec(a), to_vec(b)).expect("enumerated separation is valid");
    Ok((sep, alpha))
}

/// A smallest `S` leaving no component heavier than `W/2`.
pub fn exact_min_balanced_separator(g: &WeightedGraph) -> Result<(Vec<usize>, usize), OracleError> {
    let n = g.n();
    if n > EXACT_MAX_VERTICES {
        return Err(OracleError::TooLarge(format!("{n} vertices")));
    }
    let adj = adjacency_masks(g);
    let full: Mask = ((1u64 << n) - 1) as Mask;
    let half = g.total_weight() / 2.0;
    for size in 0..=n as u32 {
        let mut candidates: Vec<Mask> = (0..=full).filter(|m| m.count_ones() == size).collect();
        candidates.sort_unstable();
        for s in candidates {
            if components(&adj, full & !s).iter().all(|&c| mask_weight(g, c) <= half) {
                return Ok((to_vec(s), size as usize));
            }
        }
    }
    unreachable!("the whole vertex set is a balanced separator")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fatminor::verify_fat_model;

    fn path(n: usize) -> WeightedGraph {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        WeightedGraph::from_edges(n, &edges).unwrap()
    }

    fn cycle(n: usize) -> WeightedGraph {
        let mut edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        edges.push((0, n - 1));
        WeightedGraph::from_edges(n, &edges).unwrap()
    }

    fn clique(n: usize) -> WeightedGraph {
        WeightedGraph::from_edges(n, PatternGraph::complete(n).edges()).unwrap()
    }

    #[test]
    fn fat_minor_examples() {
        let k2 = PatternGraph::complete(2);
        let m = brute_force_fat_minor(&path(4), &k2, 3).unwrap().expect("model");
        assert!(verify_fat_model(&path(4), &k2, &m, 3).passed());
        assert_eq!(m.vertex_sets, vec![vec![0], vec![3]]);
        assert_eq!(m.edge_sets, vec![vec![0, 1, 2, 3]]);

        let k3 = PatternGraph::complete(3);
        assert!(brute_force_fat_minor(&cycle(6), &k3, 2).unwrap().is_none());
        let m = brute_force_fat_minor(&cycle(12), &k3, 1).unwrap().expect("model");
        assert!(check_model_exhaustively(&cycle(12), &k3, &m, 1));
        assert!(verify_fat_model(&cycle(12), &k3, &m, 1).passed());
        // K8 has diameter 1
        assert!(brute_force_fat_minor(&clique(8), &k3, 3).unwrap().is_none());
    }

    #[test]
    fn fat_minor_bounds() {
        assert!(brute_force_fat_minor(&path(13), &PatternGraph::complete(2), 1).is_err());
        assert!(brute_force_fat_minor(&path(5), &PatternGraph::path(4), 1).is_err());
    }

    #[test]
    fn sparsest_examples() {
        let (sep, a) = exact_sparsest_separation(&path(3)).unwrap();
        assert!((a - 0.25).abs() < 1e-12);
        assert!((sep.sparsity(&path(3)) - a).abs() < 1e-12);
        let (_, a) = exact_sparsest_separation(&clique(3)).unwrap();
        assert!((a - 1.0 / 3.0).abs() < 1e-12);
        let (_, a) = exact_sparsest_separation(&clique(2)).unwrap();
        assert!((a - 0.5).abs() < 1e-12);
        let two = WeightedGraph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        assert_eq!(exact_sparsest_separation(&two).unwrap().1, 0.0);
        let zero = path(3).with_weights(vec![0.0; 3]).unwrap();
        assert_eq!(exact_sparsest_separation(&zero).unwrap_err(), OracleError::Degenerate);
    }

    #[test]
    fn balanced_examples() {
        assert_eq!(exact_min_balanced_separator(&path(5)).unwrap(), (vec![2], 1));
        assert_eq!(exact_min_balanced_separator(&clique(4)).unwrap().1, 2);
        let g = WeightedGraph::from_edges(6, &[(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (2, 3)]).unwrap();
        let (s, k) = exact_min_balanced_separator(&g).unwrap();
        assert_eq!(k, 1);
        assert!(s == vec![2] || s == vec![3]);
        assert!(exact_min_balanced_separator(&path(17)).is_err());
    }
}
