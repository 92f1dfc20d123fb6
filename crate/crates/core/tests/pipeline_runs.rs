use coarsesep::clustering::diameter_bound;
use coarsesep::fatminor::verify_fat_model;
use coarsesep::generate::{generate, GraphFamily};
use coarsesep::oracle::brute_force_fat_minor;
use coarsesep::pipeline::{core_3fat, Route};
use coarsesep::{coarse_separator_or_model, Outcome, PatternGraph, PipelineConfig, WeightedGraph};

fn config(eps: f64, fatness: usize, seed: u64) -> PipelineConfig {
    PipelineConfig {
        eps,
        fatness,
        seed,
        ..PipelineConfig::default()
    }
}

#[test]
fn forced_flow_branch_yields_verified_models() {
    // clusters of a cycle stay below the W/(4h^2) threshold once n > 4 * 49 * 33
    let g = generate(&GraphFamily::Cycle(8000), 0).unwrap();
    let h = PatternGraph::complete(2);
    for seed in 0..3 {
        let cfg = PipelineConfig {
            gamma_override: Some(1e30),
            ..config(1.0, 3, seed)
        };
        let run = coarse_separator_or_model(&g, &h, &cfg).unwrap();
        assert_eq!(run.stats.heavy_clusters, 0);
        assert_eq!(run.stats.route, Route::Sampled);
        assert_eq!(run.stats.lift_rejected, 0);
        let Outcome::Model(m) = &run.outcome else {
            panic!("expected a model, got {}", run.outcome.name());
        };
        assert!(verify_fat_model(&g, &h, m, 3).passed());
    }
}

#[test]
fn pipeline_models_exist_for_the_oracle_too() {
    // small instances where a forced flow branch can succeed
    let g = generate(&GraphFamily::Cycle(12), 0).unwrap();
    let h = PatternGraph::complete(2);
    for seed in 0..10 {
        let cfg = PipelineConfig {
            gamma_override: Some(1e30),
            ..config(1.0, 3, seed)
        };
        let run = core_3fat(&g, &h, &cfg).unwrap();
        if let Outcome::Model(m) = &run.outcome {
            assert!(verify_fat_model(&g, &h, m, 3).passed());
            assert!(brute_force_fat_minor(&g, &h, 3).unwrap().is_some());
        }
    }
}

#[test]
fn certificates_respect_the_radius_bound() {
    let cases: Vec<(WeightedGraph, f64, usize)> = vec![
        (generate(&GraphFamily::Grid(25), 0).unwrap(), 0.5, 1),
        (generate(&GraphFamily::Cycle(800), 0).unwrap(), 0.25, 5),
        (
            generate(&GraphFamily::RandomRegular { degree: 3, n: 500 }, 3).unwrap(),
            0.5,
            4,
        ),
        (
            generate(&GraphFamily::Barbell { clique: 15, bridge: 30 }, 0).unwrap(),
            0.5,
            3,
        ),
    ];
    for (g, eps, d) in cases {
        let run = coarse_separator_or_model(&g, &PatternGraph::complete(4), &config(eps, d, 1)).unwrap();
        if let Outcome::Separator(c) = &run.outcome {
            assert!(c.verify(&g).passed());
            let scale = if d > 3 { d } else { 1 };
            assert!(c.radius <= scale * diameter_bound(eps));
        }
    }
}

#[test]
fn weighted_inputs_are_balanced_by_weight() {
    let g = generate(&GraphFamily::Path(300), 0).unwrap();
    let w: Vec<f64> = (0..300).map(|v| if v < 30 { 10.0 } else { 0.1 }).collect();
    let g = g.with_weights(w).unwrap();
    let run = coarse_separator_or_model(&g, &PatternGraph::complete(3), &config(0.5, 1, 0)).unwrap();
    match &run.outcome {
        Outcome::Separator(c) => assert!(c.verify(&g).passed()),
        other => panic!("expected a separator, got {}", other.name()),
    }
}
