//! Seeded graph generators.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::GenerateError;
use crate::graph::WeightedGraph;

/// A graph family with its size parameters. Written as `kind:arg:...`,
/// e.g. `grid:10`, `regular:3:1000`, `gnp:100:0.04`, `barbell:50:50`.
#[derive(Clone, Debug, PartialEq)]
pub enum GraphFamily {
    Grid(usize),
    Torus(usize),
    Cycle(usize),
    Path(usize),
    Clique(usize),
    RandomRegular {
        degree: usize,
        n: usize,
    },
    Gnp {
        n: usize,
        p: f64,
    },
    /// Two cliques joined by a path with `bridge` edges.
    Barbell {
        clique: usize,
        bridge: usize,
    },
}

impl GraphFamily {
    pub fn kind(&self) -> &'static str {
        match self {
            GraphFamily::Grid(_) => "grid",
            GraphFamily::Torus(_) => "torus",
            GraphFamily::Cycle(_) => "cycle",
            GraphFamily::Path(_) => "path",
            GraphFamily::Clique(_) => "clique",
            GraphFamily::RandomRegular { .. } => "regular",
            GraphFamily::Gnp { .. } => "gnp",
            GraphFamily::Barbell { .. } => "barbell",
        }
    }

    /// The same family with its main size parameter replaced.
    pub fn with_size(&self, size: usize) -> Self {
        match *self {
            GraphFamily::Grid(_) => GraphFamily::Grid(size),
            GraphFamily::Torus(_) => GraphFamily::Torus(size),
            GraphFamily::Cycle(_) => GraphFamily::Cycle(size),
            GraphFamily::Path(_) => GraphFamily::Path(size),
            GraphFamily::Clique(_) => GraphFamily::Clique(size),
            GraphFamily::RandomRegular { degree, .. } => GraphFamily::RandomRegular { degree, n: size },
            GraphFamily::Gnp { n, p } => GraphFamily::Gnp {
                n: size,
                p: p * n as f64 / size as f64,
            },
            GraphFamily::Barbell { .. } => GraphFamily::Barbell {
                clique: size,
                bridge: size,
            },
        }
    }
}

impl fmt::Display for GraphFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphFamily::Grid(k) | GraphFamily::Torus(k) => write!(f, "{}:{k}", self.kind()),
            GraphFamily::Cycle(n) | GraphFamily::Path(n) | GraphFamily::Clique(n) => write!(f, "{}:{n}", self.kind()),
            GraphFamily::RandomRegular { degree, n } => write!(f, "regular:{degree}:{n}"),
            GraphFamily::Gnp { n, p } => write!(f, "gnp:{n}:{p}"),
            GraphFamily::Barbell { clique, bridge } => write!(f, "barbell:{clique}:{bridge}"),
        }
    }
}

impl FromStr for GraphFamily {
    type Err = GenerateError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<&str> = s.split(':').collect();
        let bad = || GenerateError::Params(format!("cannot read family `{s}`"));
        let int =
            |i: usize| -> Result<usize, GenerateError> { parts.get(i).and_then(|t| t.parse().ok()).ok_or_else(bad) };
        let arity = |k: usize| if parts.len() == k + 1 { Ok(()) } else { Err(bad()) };
        let fam = match parts[0] {
            "grid" => arity(1).and(int(1).map(GraphFamily::Grid)),
            "torus" => arity(1).and(int(1).map(GraphFamily::Torus)),
            "cycle" => arity(1).and(int(1).map(GraphFamily::Cycle)),
            "path" => arity(1).and(int(1).map(GraphFamily::Path)),
            "clique" => arity(1).and(int(1).map(GraphFamily::Clique)),
            "regular" | "random_regular" => arity(2).and_then(|_| {
                Ok(GraphFamily::RandomRegular {
                    degree: int(1)?,
                    n: int(2)?,
                })
            }),
            "gnp" => arity(2).and_then(|_| {
                let p = parts[2].parse().map_err(|_| bad())?;
                Ok(GraphFamily::Gnp { n: int(1)?, p })
            }),
            "barbell" => arity(2).and_then(|_| {
                Ok(GraphFamily::Barbell {
                    clique: int(1)?,
                    bridge: int(2)?,
                })
            }),
            _ => Err(bad()),
        }?;
        Ok(fam)
    }
}

/// Builds a member of `family`; random families are a function of `seed`.
pub fn generate(family: &GraphFamily, seed: u64) -> Result<WeightedGraph, GenerateError> {
    let build = |n: usize, edges: Vec<(usize, usize)>| {
        WeightedGraph::from_edges(n, &edges).map_err(|e| GenerateError::Params(e.to_string()))
    };
    match *family {
        GraphFamily::Grid(k) => {
            let mut edges = Vec::new();
            for r in 0..k {
                for c in 0..k {
                    let v = r * k + c;
                    if c + 1 < k {
                        edges.push((v, v + 1));
                    }
                    if r + 1 < k {
                        edges.push((v, v + k));
                    }
                }
            }
            build(k * k, edges)
        }
        GraphFamily::Torus(k) => {
            if k < 3 {
                return Err(GenerateError::Params(format!("torus side must be at least 3, got {k}")));
            }
            let mut edges = Vec::new();
            for r in 0..k {
                for c in 0..k {
                    let v = r * k + c;
                    edges.push((v, r * k + (c + 1) % k));
                    edges.push((v, ((r + 1) % k) * k + c));
                }
            }
            build(k * k, edges)
        }
        GraphFamily::Cycle(n) => {
            if n < 3 {
                return Err(GenerateError::Params(format!(
                    "cycle needs at least 3 vertices, got {n}"
                )));
            }
            let mut edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
            edges.push((0, n - 1));
            build(n, edges)
        }
        GraphFamily::Path(n) => build(n, (1..n).map(|i| (i - 1, i)).collect()),
        GraphFamily::Clique(n) => build(n, clique_edges(0, n)),
        GraphFamily::RandomRegular { degree, n } => random_regular(degree, n, seed),
        GraphFamily::Gnp { n, p } => {
            if !(0.0..=1.0).contains(&p) {
                return Err(GenerateError::Params(format!("edge probability {p} outside [0, 1]")));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut edges = Vec::new();
            for u in 0..n {
                for v in u + 1..n {
                    if rng.random_bool(p) {
                        edges.push((u, v));
                    }
                }
            }
            build(n, edges)
        }
        GraphFamily::Barbell { clique, bridge } => {
            if clique == 0 || bridge == 0 {
                return Err(GenerateError::Params(
                    "barbell needs nonempty cliques and bridge".into(),
                ));
            }
            let inner = bridge - 1;
            let second = clique + inner;
            let mut edges = clique_edges(0, clique);
            edges.extend(clique_edges(second, clique));
            let mut chain = vec![clique - 1];
            chain.extend(clique..second);
            chain.push(second);
            edges.extend(chain.windows(2).map(|w| (w[0], w[1])));
            build(2 * clique + inner, edges)
        }
    }
}

fn clique_edges(base: usize, k: usize) -> Vec<(usize, usize)> {
    let mut edges = Vec::new();
    for u in 0..k {
        for v in u + 1..k {
            edges.push((base + u, base + v));
        }
    }
    edges
}

/// Configuration model with restarts until the pairing is simple and the
/// graph is connected.
fn random_regular(degree: usize, n: usize, seed: u64) -> Result<WeightedGraph, GenerateError> {
    if degree >= n || (degree * n) % 2 == 1 {
        return Err(GenerateError::Params(format!(
            "no {degree}-regular graph on {n} vertices"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut stubs: Vec<usize> = (0..n).flat_map(|v| std::iter::repeat_n(v, degree)).collect();
    for _ in 0..10_000 {
        stubs.shuffle(&mut rng);
        let mut edges: Vec<(usize, usize)> = stubs.chunks(2).map(|p| (p[0].min(p[1]), p[0].max(p[1]))).collect();
        if edges.iter().any(|&(u, v)| u == v) {
            continue;
        }
        edges.sort_unstable();
        if edges.windows(2).any(|w| w[0] == w[1]) {
            continue;
        }
        let g = WeightedGraph::from_edges(n, &edges).expect("simple pairing");
        if n == 0 || g.components().len() == 1 {
            return Ok(g);
        }
    }
    Err(GenerateError::Params(format!(
        "no simple connected {degree}-regular pairing found on {n} vertices"
    )))
}
