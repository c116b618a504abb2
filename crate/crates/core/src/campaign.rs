//! Randomized extraction campaigns over seeded embeddings.

use std::collections::BTreeMap;
use std::time::Instant;

#[cfg(feature = "parallel")]
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::classify::PatternKind;
use crate::extract::{edge_nlink_in, extract_nlink_in, verify_certificate, ExtractError, ExtractOptions, LinkCertificate, Method};
use crate::diagram::project_generic;
use crate::geometry::random_embedding;
use crate::graph::{Edge, PartitionedGraph};

/// Offset between the extraction seed and the seed of the re-check.
pub const VERIFY_SEED_OFFSET: u64 = 0x5eed_0000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CampaignMode {
    /// One link per embedding.
    Extract,
    /// One link through every edge of each embedding.
    EdgeLink,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CampaignConfig {
    pub shape: (usize, usize),
    pub n: usize,
    pub trials: usize,
    pub seed0: u64,
    pub bends: usize,
    pub method: Method,
    pub allow_fallback: bool,
    pub mode: CampaignMode,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrialFailure {
    pub seed: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub edge: Option<String>,
    pub theorem_violation: bool,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WallClock {
    pub total_ms: f64,
    pub mean_ms: f64,
    pub max_ms: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialReport {
    pub graph: String,
    pub n: usize,
    pub mode: CampaignMode,
    pub method: Method,
    pub seed_first: u64,
    pub seed_last: u64,
    pub trials: usize,
    pub certificates: usize,
    /// Steps per fired case, base steps included.
    pub case_counts: BTreeMap<String, usize>,
    /// Linking patterns consulted as evidence, by kind.
    pub pattern_histogram: BTreeMap<String, usize>,
    pub failures: Vec<TrialFailure>,
    pub wall_clock: WallClock,
}

impl TrialReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

struct Outcome {
    certs: Vec<LinkCertificate>,
    failures: Vec<TrialFailure>,
    ms: f64,
}

fn run_trial(cfg: &CampaignConfig, g: &PartitionedGraph, seed: u64) -> Outcome {
    let start = Instant::now();
    let mut out = Outcome {
        certs: Vec::new(),
        failures: Vec::new(),
        ms: 0.0,
    };
    let fail = |edge: Option<Edge>, err: &dyn std::fmt::Display, theorem: bool| TrialFailure {
        seed,
        edge: edge.map(|e| g.edge_name(e)),
        theorem_violation: theorem,
        message: err.to_string(),
    };
    let opts = ExtractOptions {
        method: cfg.method,
        allow_fallback: cfg.allow_fallback,
        seed,
    };
    let d = random_embedding(g, seed, cfg.bends)
        .map_err(ExtractError::from)
        .and_then(|e| Ok((project_generic(&e, &[], seed)?, e)));
    let (d, e) = match d {
        Ok(x) => x,
        Err(err) => {
            out.failures.push(fail(None, &err, false));
            return out;
        }
    };
    let targets: Vec<Option<Edge>> = match cfg.mode {
        CampaignMode::Extract => vec![None],
        CampaignMode::EdgeLink => g.edges().into_iter().map(Some).collect(),
    };
    for t in targets {
        let res = match t {
            None => extract_nlink_in(&d, cfg.n, &opts),
            Some(edge) => edge_nlink_in(&d, edge, cfg.n, &opts),
        };
        match res {
            Ok(c) => {
                let rep = verify_certificate(&e, &c, seed.wrapping_add(VERIFY_SEED_OFFSET));
                let through = t.is_none_or(|edge| c.components.iter().any(|q| q.contains_edge(edge)));
                if !rep.passed() || !through {
                    let bad: Vec<&str> = rep.checks.iter().filter(|c| !c.passed).map(|c| c.name).collect();
                    let msg = if through {
                        format!("verification failed: {}", bad.join(", "))
                    } else {
                        "no component contains the target edge".to_string()
                    };
                    out.failures.push(fail(t, &msg, false));
                } else {
                    out.certs.push(c);
                }
            }
            Err(err) => {
                let theorem = matches!(err, ExtractError::TheoremViolation { .. });
                out.failures.push(fail(t, &err, theorem));
            }
        }
    }
    out.ms = start.elapsed().as_secs_f64() * 1e3;
    out
}

pub fn run_campaign(cfg: &CampaignConfig) -> Result<TrialReport, ExtractError> {
    let g = PartitionedGraph::complete(cfg.shape.0, cfg.shape.1)?;
    let seeds: Vec<u64> = (0..cfg.trials as u64).map(|i| cfg.seed0.wrapping_add(i)).collect();
    #[cfg(feature = "parallel")]
    let outcomes: Vec<Outcome> = seeds.par_iter().map(|&s| run_trial(cfg, &g, s)).collect();
    #[cfg(not(feature = "parallel"))]
    let outcomes: Vec<Outcome> = seeds.iter().map(|&s| run_trial(cfg, &g, s)).collect();

    let mut case_counts = BTreeMap::new();
    let mut pattern_histogram: BTreeMap<String, usize> = ["ZERO", "FOUR", "SIX"].iter().map(|k| (k.to_string(), 0)).collect();
    let mut failures = Vec::new();
    let mut certificates = 0;
    let (mut total, mut max) = (0.0f64, 0.0f64);
    for o in outcomes {
        total += o.ms;
        max = max.max(o.ms);
        failures.extend(o.failures);
        certificates += o.certs.len();
        for c in &o.certs {
            for step in &c.trace {
                *case_counts.entry(step.case.as_str().to_string()).or_insert(0) += 1;
                for (_, p) in &step.evidence {
                    let k = match p.kind() {
                        PatternKind::Zero => "ZERO",
                        PatternKind::Four => "FOUR",
                        PatternKind::Six => "SIX",
                    };
                    *pattern_histogram.get_mut(k).expect("preset") += 1;
                }
            }
        }
    }
    Ok(TrialReport {
        graph: format!("k{},{}", cfg.shape.0, cfg.shape.1),
        n: cfg.n,
        mode: cfg.mode,
        method: cfg.method,
        seed_first: cfg.seed0,
        seed_last: cfg.seed0.wrapping_add(cfg.trials.saturating_sub(1) as u64),
        trials: cfg.trials,
        certificates,
        case_counts,
        pattern_histogram,
        failures,
        wall_clock: WallClock {
            total_ms: total,
            mean_ms: if cfg.trials == 0 { 0.0 } else { total / cfg.trials as f64 },
            max_ms: max,
        },
    })
}
