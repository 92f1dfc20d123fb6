//! Acceptance suite. Each criterion prints one PASS/FAIL line; the process
//! exits non-zero if any criterion fails.

use std::path::PathBuf;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use coarsesep::clustering::{diameter_bound, star_partition};
use coarsesep::fatminor::{
    crude_to_fat, power_model_to_base, two_subdivision, verify_crude, verify_fat_model, CrudeFatModel,
};
use coarsesep::flowcut::{flow_or_sparse_cut, FlowCutConfig, FlowOrCut, FLOW_TOLERANCE};
use coarsesep::generate::{generate, GraphFamily};
use coarsesep::graph::{bfs_distances, power, INF};
use coarsesep::oracle::{brute_force_fat_minor, check_model_exhaustively, exact_sparsest_separation};
use coarsesep::pipeline::Route;
use coarsesep::{coarse_separator_or_model, FatModel, Outcome, PatternGraph, PipelineConfig, WeightedGraph};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Verdict {
    pass: bool,
    detail: String,
}

fn verdict(pass: bool, detail: impl Into<String>) -> Verdict {
    Verdict {
        pass,
        detail: detail.into(),
    }
}

fn cycle(n: usize) -> WeightedGraph {
    generate(&GraphFamily::Cycle(n), 0).unwrap()
}

fn path(n: usize) -> WeightedGraph {
    generate(&GraphFamily::Path(n), 0).unwrap()
}

fn petersen() -> WeightedGraph {
    let mut edges = Vec::new();
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
        edges.push((i, i + 5));
        edges.push((5 + i, 5 + (i + 2) % 5));
    }
    WeightedGraph::from_edges(10, &edges).unwrap()
}

/// One run of the totality matrix.
struct MatrixRun {
    label: String,
    fatness: usize,
    eps: f64,
    outcome: Result<(Outcome, Route), String>,
    verified: bool,
}

fn matrix() -> (Vec<MatrixRun>, Duration) {
    let families = [
        GraphFamily::Grid(10),
        GraphFamily::Grid(20),
        GraphFamily::Grid(30),
        GraphFamily::Cycle(100),
        GraphFamily::Cycle(400),
        GraphFamily::Cycle(1000),
        GraphFamily::Barbell { clique: 20, bridge: 20 },
        GraphFamily::RandomRegular { degree: 3, n: 200 },
        GraphFamily::RandomRegular { degree: 3, n: 1000 },
        GraphFamily::RandomRegular { degree: 3, n: 2000 },
    ];
    let mut combos = Vec::new();
    for k in [2, 3, 5] {
        for d in [1, 3, 5] {
            for eps in [0.25, 0.5] {
                combos.push((k, d, eps));
            }
        }
    }
    let start = Instant::now();
    let mut runs = Vec::new();
    for (f, family) in families.iter().enumerate() {
        for j in 0..4 {
            let (k, d, eps) = combos[(4 * f + j) % combos.len()];
            let h = PatternGraph::complete(k);
            for seed in 0..5u64 {
                let g = generate(family, seed).unwrap();
                let cfg = PipelineConfig {
                    eps,
                    fatness: d,
                    seed,
                    ..PipelineConfig::default()
                };
                let label = format!("{family} K{k} d={d} eps={eps} seed={seed}");
                let (outcome, verified) = match coarse_separator_or_model(&g, &h, &cfg) {
                    Ok(r) => {
                        let verified = match &r.outcome {
                            Outcome::Separator(c) => c.verify(&g).passed(),
                            Outcome::Model(m) => verify_fat_model(&g, &h, m, d).passed(),
                            Outcome::Failure(_) => false,
                        };
                        (Ok((r.outcome, r.stats.route)), verified)
                    }
                    Err(e) => (Err(e.to_string()), false),
                };
                runs.push(MatrixRun {
                    label,
                    fatness: d,
                    eps,
                    outcome,
                    verified,
                });
            }
        }
    }
    (runs, start.elapsed())
}

fn output_totality(runs: &[MatrixRun], elapsed: Duration) -> Verdict {
    let mut unverified = Vec::new();
    let mut failures = 0;
    let mut outside = 0;
    for r in runs {
        match &r.outcome {
            Err(e) => unverified.push(format!("{}: {e}", r.label)),
            Ok((Outcome::Failure(diag), _)) => {
                failures += 1;
                if diag.stage != "sampling" {
                    outside += 1;
                }
            }
            Ok(_) if !r.verified => unverified.push(r.label.clone()),
            Ok(_) => {}
        }
    }
    let rate = failures as f64 / runs.len() as f64;
    let pass = runs.len() == 200
        && unverified.is_empty()
        && outside == 0
        && rate <= 0.01
        && elapsed < Duration::from_secs(30 * 60);
    let mut detail = format!(
        "{} runs, {} unverified, {failures} failures ({outside} outside sampling), {:.1}s",
        runs.len(),
        unverified.len(),
        elapsed.as_secs_f64()
    );
    if let Some(first) = unverified.first() {
        detail.push_str(&format!("; first: {first}"));
    }
    verdict(pass, detail)
}

fn radius_bound(runs: &[MatrixRun]) -> Verdict {
    let mut checked = 0;
    let mut bad = Vec::new();
    for r in runs {
        if let Ok((Outcome::Separator(c), _)) = &r.outcome {
            checked += 1;
            let limit = if r.fatness > 3 { r.fatness } else { 1 } * diameter_bound(r.eps);
            if c.radius > limit {
                bad.push(format!("{}: radius {} > {limit}", r.label, c.radius));
            }
        }
    }
    let pass = checked > 0 && bad.is_empty();
    verdict(
        pass,
        format!(
            "{checked} certificates, {} over the bound {}",
            bad.len(),
            bad.first().cloned().unwrap_or_default()
        ),
    )
}

fn center_scaling() -> Verdict {
    let h = PatternGraph::complete(5);
    let mut points = Vec::new();
    for k in [10, 20, 30, 40] {
        let g = generate(&GraphFamily::Grid(k), 0).unwrap();
        let cfg = PipelineConfig {
            eps: 0.25,
            fatness: 3,
            ..PipelineConfig::default()
        };
        match coarse_separator_or_model(&g, &h, &cfg) {
            Ok(r) => match r.outcome {
                Outcome::Separator(c) if c.verify(&g).passed() => points.push((g.n() as f64, c.centers.len() as f64)),
                other => return verdict(false, format!("grid {k}: no verified certificate ({})", other.name())),
            },
            Err(e) => return verdict(false, format!("grid {k}: {e}")),
        }
    }
    let ratios: Vec<f64> = points.iter().map(|&(n, c)| c / n).collect();
    let decreasing = ratios.windows(2).all(|w| w[1] < w[0]);
    let kappa = points[0].1 / points[0].0.powf(0.75);
    let fits = points.iter().all(|&(n, c)| c <= kappa * n.powf(0.75) * (1.0 + 1e-12));
    let counts: Vec<String> = points.iter().map(|&(n, c)| format!("{n}:{c}")).collect();
    verdict(
        decreasing && fits,
        format!(
            "centers {} kappa {kappa:.4}, decreasing={decreasing} fits={fits}",
            counts.join(" ")
        ),
    )
}

fn duality_corpus() -> Vec<WeightedGraph> {
    let mut out = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    while out.len() < 50 {
        let n = rng.random_range(2..=10);
        let p = rng.random_range(0.25..0.8);
        let g = generate(&GraphFamily::Gnp { n, p }, rng.random()).unwrap();
        let g = if out.len() % 2 == 0 {
            g
        } else {
            let w = (0..n)
                .map(|_| {
                    if rng.random_bool(0.15) {
                        0.0
                    } else {
                        rng.random_range(0.2..2.0)
                    }
                })
                .collect();
            g.with_weights(w).unwrap()
        };
        if (0..g.n()).filter(|&v| g.weight(v) > 0.0).count() >= 2 {
            out.push(g);
        }
    }
    out
}

fn flow_cut_duality() -> Verdict {
    let cfg = FlowCutConfig::default();
    let mut cases = 0;
    let (mut flows, mut cuts) = (0, 0);
    for (i, g) in duality_corpus().iter().enumerate() {
        let (_, alpha_star) = exact_sparsest_separation(g).unwrap();
        for gamma in [0.1, 1.0, 10.0] {
            cases += 1;
            let fail = |why: String| verdict(false, format!("graph {i} (n={}) gamma {gamma}: {why}", g.n()));
            match flow_or_sparse_cut(g, gamma, &cfg) {
                Ok(FlowOrCut::Flow(f)) => {
                    flows += 1;
                    if let Err(e) = f.check(FLOW_TOLERANCE) {
                        return fail(e.to_string());
                    }
                    let worst = f.max_congestion();
                    if worst > gamma * (1.0 + FLOW_TOLERANCE) {
                        return fail(format!("congestion {worst}"));
                    }
                }
                Ok(FlowOrCut::Cut {
                    separation,
                    sparsity,
                    bound,
                }) => {
                    cuts += 1;
                    let recomputed = separation.sparsity(g);
                    if (recomputed - sparsity).abs() > 1e-12 * recomputed.max(1e-12) {
                        return fail(format!("claimed sparsity {sparsity}, recomputed {recomputed}"));
                    }
                    if recomputed > bound {
                        return fail(format!("sparsity {recomputed} above {bound}"));
                    }
                    if recomputed < alpha_star {
                        return fail(format!("sparsity {recomputed} below the optimum {alpha_star}"));
                    }
                }
                Err(e) => return fail(e.to_string()),
            }
        }
    }
    verdict(true, format!("{cases} cases: {flows} flows, {cuts} separations"))
}

fn geodesic(g: &WeightedGraph, from: usize, to: usize) -> Option<Vec<usize>> {
    let dist = bfs_distances(g, &[to]);
    if dist[from] == INF {
        return None;
    }
    let mut walk = vec![from];
    let mut at = from;
    while at != to {
        at = *g.neighbors(at).iter().find(|&&u| dist[u] + 1 == dist[at]).unwrap();
        walk.push(at);
    }
    Some(walk)
}

fn random_host(rng: &mut ChaCha8Rng) -> WeightedGraph {
    let n = rng.random_range(10..=60);
    match rng.random_range(0..3) {
        0 => {
            let mut edges: Vec<(usize, usize)> = (1..n).map(|i| (i - 1, i)).collect();
            edges.push((0, n - 1));
            for _ in 0..rng.random_range(0..4) {
                let (u, v) = (rng.random_range(0..n), rng.random_range(0..n));
                let e = (u.min(v), u.max(v));
                if u != v && !edges.contains(&e) && !(e.0 == 0 && e.1 == n - 1) {
                    edges.push(e);
                }
            }
            WeightedGraph::from_edges(n, &edges).unwrap()
        }
        1 => {
            let edges: Vec<(usize, usize)> = (1..n).map(|v| (rng.random_range(0..v), v)).collect();
            WeightedGraph::from_edges(n, &edges).unwrap()
        }
        _ => generate(&GraphFamily::Gnp { n, p: 2.5 / n as f64 }, rng.random()).unwrap(),
    }
}

fn crude_conversion() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    let patterns = [
        PatternGraph::complete(2),
        PatternGraph::path(3),
        PatternGraph::complete(3),
    ];
    let mut accepted = 0;
    let mut draws = 0;
    while accepted < 200 && draws < 200_000 {
        draws += 1;
        let g = random_host(&mut rng);
        let h = &patterns[rng.random_range(0..patterns.len())];
        let d = rng.random_range(1..=3);
        let sub = two_subdivision(h);
        let phi: Vec<usize> = (0..sub.graph.n()).map(|_| rng.random_range(0..g.n())).collect();
        let paths: Option<Vec<Vec<usize>>> = sub
            .graph
            .edges()
            .iter()
            .map(|&(u, v)| geodesic(&g, phi[u], phi[v]))
            .collect();
        let Some(paths) = paths else { continue };
        let crude = CrudeFatModel { fatness: d, phi, paths };
        if !verify_crude(&g, &sub.graph, &crude, d).passed() {
            continue;
        }
        accepted += 1;
        match crude_to_fat(&g, h, &sub, &crude) {
            Ok(m) if verify_fat_model(&g, h, &m, d).passed() => {}
            Ok(m) => {
                return verdict(
                    false,
                    format!("model {accepted}: {}", verify_fat_model(&g, h, &m, d).describe()),
                )
            }
            Err(e) => return verdict(false, format!("model {accepted}: {e}")),
        }
    }
    verdict(
        accepted == 200,
        format!("{accepted} crude models converted ({draws} draws)"),
    )
}

/// Six arcs of `C_40` in the order `B0, B01, B1, B12, B2, B20`, consecutive
/// arcs sharing an endpoint.
fn c40_square_model() -> FatModel {
    let arc = |a: usize, b: usize| -> Vec<usize> {
        let mut s: Vec<usize> = (a..=b).map(|v| v % 40).collect();
        s.sort_unstable();
        s
    };
    FatModel {
        fatness: 3,
        vertex_sets: vec![arc(0, 6), arc(13, 20), arc(26, 33)],
        edge_sets: vec![arc(6, 13), arc(33, 40), arc(20, 26)],
    }
}

fn power_reduction() -> Verdict {
    let g = cycle(40);
    let h = PatternGraph::complete(3);
    let g2 = power(&g, 2).unwrap();
    let model = c40_square_model();
    let in_square = verify_fat_model(&g2, &h, &model, 3);
    if !in_square.passed() {
        return verdict(
            false,
            format!("constructed model is not 3-fat in the square: {}", in_square.describe()),
        );
    }
    match power_model_to_base(&g, &h, &model, 2) {
        Ok(m) => {
            let r = verify_fat_model(&g, &h, &m, 2);
            verdict(r.passed(), format!("base model check: {}", r.describe()))
        }
        Err(e) => verdict(false, e.to_string()),
    }
}

fn brute_force_agreement() -> Verdict {
    let hosts = [
        ("P4", path(4)),
        ("C6", cycle(6)),
        ("C12", cycle(12)),
        ("Petersen", petersen()),
    ];
    let patterns = [
        ("K2", PatternGraph::complete(2)),
        ("P3", PatternGraph::path(3)),
        ("K3", PatternGraph::complete(3)),
    ];
    let mut checks = 0;
    let mut found = 0;
    for (gname, g) in &hosts {
        for (hname, h) in &patterns {
            let mut models: Vec<(usize, FatModel)> = Vec::new();
            for d in 1..=3 {
                let oracle = match brute_force_fat_minor(g, h, d) {
                    Ok(o) => o,
                    Err(e) => return verdict(false, format!("{gname}/{hname}/{d}: {e}")),
                };
                if let Some(m) = oracle {
                    found += 1;
                    models.push((d, m));
                }
            }
            for (_, m) in &models {
                for d in 1..=3 {
                    checks += 1;
                    let ours = verify_fat_model(g, h, m, d).passed();
                    let theirs = check_model_exhaustively(g, h, m, d);
                    let exists = models.iter().any(|&(e, _)| e == d);
                    if ours != theirs || (ours && !exists) {
                        return verdict(
                            false,
                            format!(
                                "{gname}/{hname} at d={d}: verifier {ours}, exhaustive {theirs}, oracle found {exists}"
                            ),
                        );
                    }
                }
            }
            for d in 1..=3 {
                if let Some((_, m)) = models.iter().find(|&&(e, _)| e == d) {
                    checks += 1;
                    if !verify_fat_model(g, h, m, d).passed() {
                        return verdict(false, format!("{gname}/{hname}: oracle model rejected at d={d}"));
                    }
                }
            }
        }
    }
    verdict(
        true,
        format!("{checks} decisions agree, {found} of 36 instances have models"),
    )
}

fn model_branch_success() -> Verdict {
    let h = PatternGraph::complete(2);
    let (mut verified, mut unverifiable, mut failures, mut models) = (0, 0, 0, 0);
    for seed in 0..100u64 {
        let g = generate(&GraphFamily::RandomRegular { degree: 3, n: 2000 }, seed).unwrap();
        let cfg = PipelineConfig {
            eps: 0.3,
            fatness: 3,
            trials: 64,
            seed,
            ..PipelineConfig::default()
        };
        match coarse_separator_or_model(&g, &h, &cfg) {
            Ok(r) => match &r.outcome {
                Outcome::Separator(c) if c.verify(&g).passed() => verified += 1,
                Outcome::Model(m) if verify_fat_model(&g, &h, m, 3).passed() => {
                    verified += 1;
                    models += 1;
                }
                Outcome::Failure(_) => failures += 1,
                _ => unverifiable += 1,
            },
            Err(_) => unverifiable += 1,
        }
    }
    verdict(
        verified >= 95 && unverifiable == 0,
        format!("{verified}/100 verified ({models} models), {failures} failures, {unverifiable} unverifiable"),
    )
}

fn star_partition_trend() -> Verdict {
    let mut points = Vec::new();
    for n in [100usize, 400, 1600] {
        let g = generate(&GraphFamily::Gnp { n, p: 4.0 / n as f64 }, 11).unwrap();
        let star = match star_partition(&g) {
            Ok(s) => s,
            Err(e) => return verdict(false, format!("n={n}: {e}")),
        };
        let p = &star.partition;
        for (i, c) in p.clusters().iter().enumerate() {
            let z = p.center(i);
            if let Some(v) = c.iter().find(|&&v| v != z && !g.has_edge(v, z)) {
                return verdict(false, format!("n={n}: vertex {v} not adjacent to center {z}"));
            }
        }
        let nf = n as f64;
        points.push((
            n,
            star.quotient.graph.edge_count() as f64,
            nf.powf(4.0 / 3.0) * nf.ln().powf(2.0 / 3.0),
        ));
    }
    let kappa = points[0].1 / points[0].2;
    let fits = points.iter().all(|&(_, m, f)| m <= kappa * f * (1.0 + 1e-12));
    let counts: Vec<String> = points.iter().map(|&(n, m, _)| format!("{n}:{m}")).collect();
    verdict(fits, format!("quotient edges {} kappa' {kappa:.4}", counts.join(" ")))
}

struct Scratch(PathBuf);

impl Drop for Scratch {
    fn drop(&mut self) {
        let _ = std::fs::remove_dir_all(&self.0);
    }
}

fn cli_determinism() -> Verdict {
    let bin = env!("CARGO_BIN_EXE_coarsesep");
    let dir = Scratch(std::env::temp_dir().join(format!("coarsesep-acceptance-{}", std::process::id())));
    std::fs::create_dir_all(&dir.0).unwrap();
    let file = |name: &str, text: &str| {
        let p = dir.0.join(name);
        std::fs::write(&p, text).unwrap();
        p.to_string_lossy().into_owned()
    };
    let small = file("small.txt", "6 7\n0 1\n1 2\n2 0\n2 3\n3 4\n4 5\n5 3\n");
    let model_graph = file("c6.txt", "6 6\n0 1\n1 2\n2 3\n3 4\n4 5\n0 5\n");
    let model = file(
        "model.json",
        r#"{"fatness": 1, "vertex_sets": {"0": [0, 1], "1": [2, 3], "2": [4, 5]}, "edge_sets": {"0-1": [1, 2], "0-2": [0, 5], "1-2": [3, 4]}}"#,
    );
    let cert = file("cert.json", r#"{"S": [2, 3], "centers": [2], "radius": 1}"#);
    let invocations: Vec<Vec<&str>> = vec![
        vec!["--seed", "5", "gen", "regular:3:300"],
        vec!["--seed", "3", "partition", "--graph", "grid:15", "--eps", "0.5"],
        vec![
            "--seed",
            "3",
            "--json",
            "partition",
            "--graph",
            "regular:3:400",
            "--eps",
            "0.25",
        ],
        vec!["flowcut", "--graph", &small, "--gamma", "1"],
        vec!["flowcut", "--graph", &small, "--gamma", "0.01"],
        vec![
            "--seed",
            "2",
            "--json",
            "separate",
            "--graph",
            "regular:3:500",
            "--pattern",
            "clique:3",
        ],
        vec![
            "--seed",
            "1",
            "--json",
            "separate",
            "--graph",
            "grid:20",
            "--pattern",
            "clique:5",
            "--fatness",
            "5",
        ],
        vec![
            "--seed",
            "7",
            "--json",
            "separate",
            "--graph",
            "cycle:8000",
            "--pattern",
            "clique:2",
            "--eps",
            "1",
            "--gamma",
            "1e30",
        ],
        vec!["--json", "induced-sep", "--graph", "path:60"],
        vec![
            "verify-model",
            "--graph",
            &model_graph,
            "--pattern",
            "clique:3",
            "--model",
            &model,
        ],
        vec!["verify-separator", "--graph", &small, "--separator", &cert],
        vec!["oracle", "sparsest", "--graph", "cycle:8"],
        vec!["oracle", "balanced", "--graph", &small],
        vec![
            "oracle",
            "fat-minor",
            "--graph",
            "cycle:12",
            "--pattern",
            "clique:3",
            "--fatness",
            "1",
        ],
        vec![
            "--seed",
            "4",
            "bench",
            "--family",
            "grid:10",
            "--sizes",
            "8,12",
            "--pattern",
            "clique:3",
            "--seeds",
            "0,1",
            "--no-timing",
        ],
    ];
    for args in &invocations {
        let run = || Command::new(bin).args(args).output().expect("binary runs");
        let (a, b) = (run(), run());
        if !a.status.success() {
            return verdict(
                false,
                format!(
                    "`{}` exited {:?}: {}",
                    args.join(" "),
                    a.status.code(),
                    String::from_utf8_lossy(&a.stderr)
                ),
            );
        }
        if a.stdout != b.stdout || a.status.code() != b.status.code() || a.stdout.is_empty() {
            return verdict(false, format!("`{}` output differs between runs", args.join(" ")));
        }
    }
    verdict(true, format!("{} invocations byte-identical", invocations.len()))
}

fn main() -> ExitCode {
    let t = Instant::now();
    let (runs, elapsed) = matrix();
    type Check<'a> = Box<dyn Fn() -> Verdict + 'a>;
    let criteria: Vec<(&str, Check)> = vec![
        ("output totality", Box::new(|| output_totality(&runs, elapsed))),
        ("center scaling", Box::new(center_scaling)),
        ("radius bound", Box::new(|| radius_bound(&runs))),
        ("flow/cut duality", Box::new(flow_cut_duality)),
        ("crude model conversion", Box::new(crude_conversion)),
        ("power reduction", Box::new(power_reduction)),
        ("brute-force agreement", Box::new(brute_force_agreement)),
        ("model-branch success", Box::new(model_branch_success)),
        ("star partition", Box::new(star_partition_trend)),
        ("determinism", Box::new(cli_determinism)),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let v = check();
        if !v.pass {
            failed += 1;
        }
        println!(
            "{} criterion {:>2} {name}: {}",
            if v.pass { "PASS" } else { "FAIL" },
            i + 1,
            v.detail
        );
    }
    println!(
        "{} of {} criteria passed in {:.1}s",
        criteria.len() - failed,
        criteria.len(),
        t.elapsed().as_secs_f64()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
