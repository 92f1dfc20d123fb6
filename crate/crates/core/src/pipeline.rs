//! End-to-end: a coverable balanced separator, or a fat minor model.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::clustering::{sparse_partition, star_partition, xi_pairs, ConnectedPartition, StarPartition};
use crate::error::PipelineError;
use crate::fatminor::{
    crude_to_fat, ensure_no_isolated, lift_model, power_model_to_base_in, sample_crude_model, two_subdivision,
    verify_fat_model, CrudeFatModel, FatModel, PatternGraph,
};
use crate::flowcut::{balanced_separator_or_flow, FlowCutConfig, SeparatorOrFlow};
use crate::graph::{power, verify_separator, QuotientGraph, SeparatorCertificate, WeightedGraph};

pub const DEFAULT_TRIALS: usize = 64;

#[derive(Clone, Debug, PartialEq)]
pub struct PipelineConfig {
    pub eps: f64,
    pub fatness: usize,
    pub trials: usize,
    pub seed: u64,
    pub flow: FlowCutConfig,
    /// Replaces the computed congestion parameter.
    pub gamma_override: Option<f64>,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        Self {
            eps: 0.5,
            fatness: 3,
            trials: DEFAULT_TRIALS,
            seed: 0,
            flow: FlowCutConfig::default(),
            gamma_override: None,
        }
    }
}

impl PipelineConfig {
    pub fn validate(&self) -> Result<(), PipelineError> {
        if !(self.eps > 0.0 && self.eps <= 1.0) {
            return Err(PipelineError::Config(format!(
                "eps must lie in (0, 1], got {}",
                self.eps
            )));
        }
        if self.fatness == 0 {
            return Err(PipelineError::Config("fatness must be at least 1".into()));
        }
        if self.trials == 0 {
            return Err(PipelineError::Config("trial budget must be at least 1".into()));
        }
        if let Some(g) = self.gamma_override {
            if !(g > 0.0 && g.is_finite()) {
                return Err(PipelineError::Config(format!(
                    "congestion override must be positive, got {g}"
                )));
            }
        }
        Ok(())
    }
}

/// How the run ended up at its answer.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Route {
    /// Degenerate input answered without clustering.
    Trivial,
    /// The peeling loop produced a balanced separator of the quotient.
    Balanced,
    /// The heavy clusters of the flow subgraph form the separator.
    HeavyClusters,
    /// A sampled crude model survived and was lifted.
    Sampled,
    /// Every trial was rejected.
    Exhausted,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct Diagnostics {
    pub stage: String,
    pub trials: usize,
    pub not_injective: usize,
    pub close_paths: usize,
    pub lift_rejected: usize,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Outcome {
    Separator(SeparatorCertificate),
    Model(FatModel),
    Failure(Diagnostics),
}

impl Outcome {
    pub fn name(&self) -> &'static str {
        match self {
            Outcome::Separator(_) => "separator",
            Outcome::Model(_) => "model",
            Outcome::Failure(_) => "failure",
        }
    }
}

/// Measurements taken along the way.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunStats {
    pub route: Route,
    pub clusters: usize,
    pub quotient_edges: usize,
    pub xi_pairs: usize,
    pub strong_diameter: usize,
    pub gamma: f64,
    pub peel_steps: usize,
    pub heavy_clusters: usize,
    pub trials_used: usize,
    /// Trials that passed the Ξ check but failed verification after lifting.
    pub lift_rejected: usize,
}

impl RunStats {
    fn trivial() -> Self {
        Self {
            route: Route::Trivial,
            clusters: 0,
            quotient_edges: 0,
            xi_pairs: 0,
            strong_diameter: 0,
            gamma: 0.0,
            peel_steps: 0,
            heavy_clusters: 0,
            trials_used: 0,
            lift_rejected: 0,
        }
    }
}

#[derive(Clone, Debug)]
pub struct PipelineResult {
    pub outcome: Outcome,
    pub stats: RunStats,
}

/// A balanced separator coverable by few balls, or a `d`-fat model of `h`.
/// Every non-failure output has been verified in `g` at fatness `d`.
pub fn coarse_separator_or_model(
    g: &WeightedGraph,
    h: &PatternGraph,
    cfg: &PipelineConfig,
) -> Result<PipelineResult, PipelineError> {
    cfg.validate()?;
    let d = cfg.fatness;
    if d <= 3 {
        let result = core_3fat(g, h, cfg)?;
        check_outcome(g, h, &result.outcome, d)?;
        return Ok(result);
    }
    let gd = power(g, d)?;
    let mut result = core_3fat(&gd, h, cfg)?;
    result.outcome = match result.outcome {
        Outcome::Separator(mut cert) => {
            cert.radius *= d;
            Outcome::Separator(cert)
        }
        Outcome::Model(m) => Outcome::Model(power_model_to_base_in(g, &gd, h, &m, d)?),
        failure => failure,
    };
    check_outcome(g, h, &result.outcome, d)?;
    Ok(result)
}

fn check_outcome(g: &WeightedGraph, h: &PatternGraph, outcome: &Outcome, d: usize) -> Result<(), PipelineError> {
    match outcome {
        Outcome::Separator(cert) => {
            let r = cert.verify(g);
            if !r.passed() {
                return Err(PipelineError::Verification(format!(
                    "certificate: balanced={} covered={}",
                    r.balanced, r.covered
                )));
            }
        }
        Outcome::Model(m) => {
            let r = verify_fat_model(g, h, m, d);
            if !r.passed() {
                return Err(PipelineError::Verification(r.describe()));
            }
        }
        Outcome::Failure(_) => {}
    }
    Ok(())
}

fn certificate(partition: &ConnectedPartition, q: &QuotientGraph, clusters: &[usize]) -> SeparatorCertificate {
    let mut ids = clusters.to_vec();
    ids.sort_unstable();
    ids.dedup();
    SeparatorCertificate {
        separator: q.expand(&ids),
        centers: ids.iter().map(|&x| partition.center(x)).collect(),
        radius: ids.iter().map(|&x| partition.radius(x)).max().unwrap_or(0),
    }
}

/// The 3-fat routine: clustering, the flow-or-separator dichotomy on the
/// quotient, and crude-model sampling from the flow.
pub fn core_3fat(g: &WeightedGraph, h: &PatternGraph, cfg: &PipelineConfig) -> Result<PipelineResult, PipelineError> {
    cfg.validate()?;
    let empty_cert = || SeparatorCertificate {
        separator: Vec::new(),
        centers: Vec::new(),
        radius: 0,
    };
    if h.n() == 0 {
        let outcome = Outcome::Model(FatModel {
            fatness: 3,
            vertex_sets: Vec::new(),
            edge_sets: Vec::new(),
        });
        return Ok(PipelineResult {
            outcome,
            stats: RunStats::trivial(),
        });
    }
    if g.n() == 0 {
        return Ok(PipelineResult {
            outcome: Outcome::Separator(empty_cert()),
            stats: RunStats::trivial(),
        });
    }
    if h.n() == 1 {
        let outcome = Outcome::Model(FatModel {
            fatness: 3,
            vertex_sets: vec![vec![0]],
            edge_sets: Vec::new(),
        });
        return Ok(PipelineResult {
            outcome,
            stats: RunStats::trivial(),
        });
    }
    let total = g.total_weight();
    if total <= 0.0 {
        return Ok(PipelineResult {
            outcome: Outcome::Separator(empty_cert()),
            stats: RunStats::trivial(),
        });
    }

    let augmented = ensure_no_isolated(h)?;
    let sub = two_subdivision(&augmented.graph);
    let hh = sub.size() as f64;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let partition = sparse_partition(g, cfg.eps, &mut rng)?;
    let q = partition.quotient(g)?;
    let xi = xi_pairs(g, &partition);
    let gamma = cfg
        .gamma_override
        .unwrap_or_else(|| total * total / (32.0 * hh * (xi.len() as f64).sqrt()));
    log::debug!(
        "{} clusters, |Ξ| = {}, strong diameter {}, γ = {gamma:.4e}",
        partition.len(),
        xi.len(),
        partition.strong_diameter()
    );
    let mut stats = RunStats {
        route: Route::Balanced,
        clusters: partition.len(),
        quotient_edges: q.graph.edge_count(),
        xi_pairs: xi.len(),
        strong_diameter: partition.strong_diameter(),
        gamma,
        peel_steps: 0,
        heavy_clusters: 0,
        trials_used: 0,
        lift_rejected: 0,
    };

    let split = balanced_separator_or_flow(&q.graph, gamma, &cfg.flow)?;
    stats.peel_steps = split.steps().len();
    let (vertices, flow, peeled) = match split {
        SeparatorOrFlow::Balanced { separator, .. } => {
            let cert = certificate(&partition, &q, &separator);
            return Ok(PipelineResult {
                outcome: Outcome::Separator(cert),
                stats,
            });
        }
        SeparatorOrFlow::Heavy {
            vertices,
            flow,
            separator,
            ..
        } => (vertices, flow, separator),
    };

    let threshold = total / (4.0 * hh * hh);
    let (heavy, light): (Vec<usize>, Vec<usize>) =
        (0..vertices.len()).partition(|&i| flow.host().weight(i) >= threshold);
    stats.heavy_clusters = heavy.len();
    let heavy_weight = flow.host().weight_of(heavy.iter().copied());
    let light_weight = flow.host().weight_of(light.iter().copied());
    if heavy_weight >= light_weight {
        stats.route = Route::HeavyClusters;
        let mut clusters = peeled;
        clusters.extend(heavy.iter().map(|&i| vertices[i]));
        let cert = certificate(&partition, &q, &clusters);
        let report = verify_separator(g, &cert.separator, &cert.centers, cert.radius);
        if !report.passed() {
            // the heavy-cluster argument did not carry over to this instance
            let detail = format!(
                "heaviest component {} of total {total}, covered={}",
                report.heaviest_component, report.covered
            );
            stats.route = Route::Exhausted;
            let outcome = Outcome::Failure(Diagnostics {
                stage: "heavy-clusters".into(),
                detail,
                ..Diagnostics::default()
            });
            return Ok(PipelineResult { outcome, stats });
        }
        return Ok(PipelineResult {
            outcome: Outcome::Separator(cert),
            stats,
        });
    }

    let pairs = sub.independent_edge_pairs();
    let mut diag = Diagnostics {
        stage: "sampling".into(),
        ..Diagnostics::default()
    };
    for trial in 0..cfg.trials {
        diag.trials = trial + 1;
        stats.trials_used = trial + 1;
        let crude = sample_crude_model(&flow, &light, &sub.graph, &mut rng)?;
        let mut images = crude.phi.clone();
        images.sort_unstable();
        if images.windows(2).any(|w| w[0] == w[1]) {
            diag.not_injective += 1;
            continue;
        }
        let cluster_sets: Vec<Vec<usize>> = crude
            .paths
            .iter()
            .map(|p| {
                let mut s: Vec<usize> = p.iter().map(|&i| vertices[i]).collect();
                s.sort_unstable();
                s
            })
            .collect();
        if pairs.iter().any(|&(a, b)| xi.meets(&cluster_sets[a], &cluster_sets[b])) {
            diag.close_paths += 1;
            continue;
        }
        let in_quotient = CrudeFatModel {
            fatness: 1,
            phi: crude.phi.iter().map(|&i| vertices[i]).collect(),
            paths: crude
                .paths
                .iter()
                .map(|p| p.iter().map(|&i| vertices[i]).collect())
                .collect(),
        };
        let lifted = crude_to_fat(&q.graph, &augmented.graph, &sub, &in_quotient)
            .and_then(|m| lift_model(g, &q, &augmented.graph, &m, 3));
        match lifted {
            Ok(m) => {
                let mut model = augmented.restrict(&m);
                model.fatness = 3;
                let report = verify_fat_model(g, h, &model, 3);
                if !report.passed() {
                    return Err(PipelineError::Verification(report.describe()));
                }
                stats.route = Route::Sampled;
                return Ok(PipelineResult {
                    outcome: Outcome::Model(model),
                    stats,
                });
            }
            Err(e) => {
                log::warn!("trial {trial}: lifted model rejected: {e}");
                diag.lift_rejected += 1;
                stats.lift_rejected += 1;
            }
        }
    }
    stats.route = Route::Exhausted;
    diag.detail = format!("{} light clusters, {} independent path pairs", light.len(), pairs.len());
    Ok(PipelineResult {
        outcome: Outcome::Failure(diag),
        stats,
    })
}

/// Maps a quotient graph to a balanced separator of it.
pub trait QuotientSeparator {
    fn separate(&self, quotient: &WeightedGraph) -> Result<Vec<usize>, PipelineError>;
}

impl<F> QuotientSeparator for F
where
    F: Fn(&WeightedGraph) -> Result<Vec<usize>, PipelineError>,
{
    fn separate(&self, quotient: &WeightedGraph) -> Result<Vec<usize>, PipelineError> {
        self(quotient)
    }
}

/// Runs [`balanced_separator_or_flow`] with `γ = W², W²/2, W²/4, …` until the
/// separator branch fires.
#[derive(Clone, Debug, Default)]
pub struct FlowSweepOracle {
    pub flow: FlowCutConfig,
}

impl QuotientSeparator for FlowSweepOracle {
    fn separate(&self, q: &WeightedGraph) -> Result<Vec<usize>, PipelineError> {
        let total = q.total_weight();
        if total <= 0.0 {
            return Ok(Vec::new());
        }
        let mut gamma = total * total;
        for _ in 0..256 {
            match balanced_separator_or_flow(q, gamma, &self.flow)? {
                SeparatorOrFlow::Balanced { separator, .. } => return Ok(separator),
                SeparatorOrFlow::Heavy { .. } => gamma /= 2.0,
            }
        }
        Err(PipelineError::Oracle(
            "congestion sweep never produced a separator".into(),
        ))
    }
}

#[derive(Clone, Debug)]
pub struct InducedResult {
    pub certificate: SeparatorCertificate,
    pub star: StarPartition,
    /// The oracle's separator, in quotient ids.
    pub quotient_separator: Vec<usize>,
}

/// Star partition, a balanced separator of the quotient from `oracle`, and
/// its lift: a balanced separator of `g` covered by radius-1 balls around
/// star centers.
pub fn induced_minor_separator<O: QuotientSeparator + ?Sized>(
    g: &WeightedGraph,
    oracle: &O,
) -> Result<InducedResult, PipelineError> {
    let star = star_partition(g)?;
    let qg = &star.quotient.graph;
    let sq = oracle.separate(qg)?;
    if let Some(&x) = sq.iter().find(|&&x| x >= qg.n()) {
        return Err(PipelineError::Oracle(format!("cluster {x} does not exist")));
    }
    let check = verify_separator(qg, &sq, &sq, 0);
    if !check.balanced {
        return Err(PipelineError::Oracle(format!(
            "heaviest quotient component weighs {} of {}",
            check.heaviest_component,
            qg.total_weight()
        )));
    }
    let mut ids = sq.clone();
    ids.sort_unstable();
    ids.dedup();
    let certificate = SeparatorCertificate {
        separator: star.quotient.expand(&ids),
        centers: ids.iter().map(|&x| star.partition.center(x)).collect(),
        radius: 1,
    };
    let report = certificate.verify(g);
    if !report.passed() {
        return Err(PipelineError::Verification(format!(
            "lifted separator: balanced={} covered={}",
            report.balanced, report.covered
        )));
    }
    Ok(InducedResult {
        certificate,
        star,
        quotient_separator: ids,
    })
}
