//! Benchmark harness: one pipeline run per (size, seed), as CSV.

use std::time::Instant;

use serde::Serialize;

use crate::fatminor::{verify_fat_model, PatternGraph};
use crate::generate::{generate, GraphFamily};
use crate::pipeline::{coarse_separator_or_model, Outcome, PipelineConfig};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BenchRow {
    pub n: usize,
    pub branch: String,
    pub separator_size: usize,
    pub centers: usize,
    pub radius: usize,
    /// Wall-clock milliseconds, left empty when timing is off.
    pub runtime_ms: Option<f64>,
    pub verified: bool,
}

#[derive(Clone, Debug)]
pub struct BenchSpec {
    pub family: GraphFamily,
    pub sizes: Vec<usize>,
    pub pattern: PatternGraph,
    pub config: PipelineConfig,
    pub seeds: Vec<u64>,
    pub timing: bool,
}

/// Rows in (size, seed) order. The seed drives both the generator and the
/// pipeline.
pub fn bench(spec: &BenchSpec) -> Vec<BenchRow> {
    let mut rows = Vec::new();
    for &size in &spec.sizes {
        let family = spec.family.with_size(size);
        for &seed in &spec.seeds {
            let start = Instant::now();
            let row = match generate(&family, seed) {
                Err(e) => {
                    log::error!("{family}: {e}");
                    BenchRow {
                        n: 0,
                        branch: "error".into(),
                        separator_size: 0,
                        centers: 0,
                        radius: 0,
                        runtime_ms: None,
                        verified: false,
                    }
                }
                Ok(g) => {
                    let cfg = PipelineConfig {
                        seed,
                        ..spec.config.clone()
                    };
                    let result = coarse_separator_or_model(&g, &spec.pattern, &cfg);
                    let mut row = BenchRow {
                        n: g.n(),
                        branch: "error".into(),
                        separator_size: 0,
                        centers: 0,
                        radius: 0,
                        runtime_ms: None,
                        verified: false,
                    };
                    match result {
                        Ok(r) => {
                            row.branch = r.outcome.name().into();
                            match &r.outcome {
                                Outcome::Separator(c) => {
                                    row.separator_size = c.separator.len();
                                    row.centers = c.centers.len();
                                    row.radius = c.radius;
                                    row.verified = c.verify(&g).passed();
                                }
                                Outcome::Model(m) => {
                                    row.verified = verify_fat_model(&g, &spec.pattern, m, cfg.fatness).passed();
                                }
                                Outcome::Failure(_) => {}
                            }
                        }
                        Err(e) => log::error!("{family} seed {seed}: {e}"),
                    }
                    row
                }
            };
            let elapsed = start.elapsed().as_secs_f64() * 1e3;
            rows.push(BenchRow {
                runtime_ms: spec.timing.then_some(elapsed),
                ..row
            });
        }
    }
    rows
}

pub fn to_csv(rows: &[BenchRow]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r).expect("rows serialize");
    }
    String::from_utf8(w.into_inner().expect("in-memory writer")).expect("csv is utf-8")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_rows_are_verified_certificates() {
        let spec = BenchSpec {
            family: GraphFamily::Grid(10),
            sizes: vec![5, 8],
            pattern: PatternGraph::complete(5),
            config: PipelineConfig::default(),
            seeds: vec![1, 2],
            timing: false,
        };
        let rows = bench(&spec);
        assert_eq!(rows.len(), 4);
        assert!(rows.iter().all(|r| r.branch == "separator" && r.verified));
        let csv = to_csv(&rows);
        assert!(csv.starts_with("n,branch,separator_size,centers,radius,runtime_ms,verified\n"));
        assert_eq!(csv, to_csv(&bench(&spec)));
    }
}
