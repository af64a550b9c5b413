//! The G(n, p) experiment: sample random graphs, label them with the
//! five-block prime labeling and count how often it is proper.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::constructions::gnp_prime_labeling;
use crate::graph::Graph;
use crate::semantics::{verify_proper, LabelingRule, Verdict};

/// Identifies the sampling protocol in reports.
pub const GENERATOR: &str = "chacha8 (rand_chacha 0.9), stream seeded with seed+trial; \
pairs u<v in lexicographic order, edge iff gen::<f64>() < p";

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ExperimentConfig {
    pub n: usize,
    pub p: f64,
    pub trials: usize,
    pub seed: u64,
}

/// One improper trial and the first edge whose endpoints collided.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Collision {
    pub trial: usize,
    /// 1-based endpoints.
    pub edge: (usize, usize),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ExperimentReport {
    pub n: usize,
    pub p: f64,
    pub trials: usize,
    pub seed: u64,
    pub successes: usize,
    pub success_rate: Option<f64>,
    /// Up to three collisions, in trial order.
    pub failures: Vec<Collision>,
    pub wall_time_ms: u128,
    pub generator: &'static str,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ExperimentError {
    #[error("p must lie strictly between 0 and 1, got {0}")]
    BadProbability(f64),
}

/// Samples `G(n, p)` from `rng`.
pub fn gnp(n: usize, p: f64, rng: &mut impl Rng) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.random::<f64>() < p {
                edges.push((u, v));
            }
        }
    }
    Graph::new_simple(n, edges).expect("pairs are distinct")
}

/// The graph used for trial `trial`.
pub fn trial_graph(config: &ExperimentConfig, trial: usize) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed.wrapping_add(trial as u64));
    gnp(config.n, config.p, &mut rng)
}

pub fn run_gnp_experiment(config: ExperimentConfig) -> Result<ExperimentReport, ExperimentError> {
    if !(config.p > 0.0 && config.p < 1.0) {
        return Err(ExperimentError::BadProbability(config.p));
    }
    let start = Instant::now();
    let outcomes: Vec<Option<(usize, usize)>> = (0..config.trials)
        .into_par_iter()
        .map(|t| {
            let g = trial_graph(&config, t);
            let (f, _) = gnp_prime_labeling(&g);
            match verify_proper(&g, LabelingRule::VertexProduct, &f).expect("labeling fits") {
                Verdict::Proper => None,
                Verdict::Violation { edge, .. } => Some(edge),
            }
        })
        .collect();
    let successes = outcomes.iter().filter(|o| o.is_none()).count();
    let failures = outcomes
        .iter()
        .enumerate()
        .filter_map(|(trial, o)| o.map(|(u, v)| Collision { trial, edge: (u + 1, v + 1) }))
        .take(3)
        .collect();
    Ok(ExperimentReport {
        n: config.n,
        p: config.p,
        trials: config.trials,
        seed: config.seed,
        successes,
        success_rate: (config.trials > 0).then(|| successes as f64 / config.trials as f64),
        failures,
        wall_time_ms: start.elapsed().as_millis(),
        generator: GENERATOR,
    })
}

impl ExperimentReport {
    pub fn table(&self) -> String {
        let rate = self.success_rate.map_or("-".to_string(), |r| format!("{r:.3}"));
        let mut s = format!(
            "n\tp\ttrials\tsuccesses\trate\ttime_ms\n{}\t{}\t{}\t{}\t{}\t{}\n",
            self.n, self.p, self.trials, self.successes, rate, self.wall_time_ms
        );
        for c in &self.failures {
            s += &format!("trial {}: vertices {} and {} collide\n", c.trial, c.edge.0, c.edge.1);
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(n: usize, p: f64, trials: usize) -> ExperimentConfig {
        ExperimentConfig { n, p, trials, seed: 7 }
    }

    #[test]
    fn zero_trials() {
        let r = run_gnp_experiment(cfg(10, 0.5, 0)).unwrap();
        assert_eq!((r.successes, r.success_rate), (0, None));
        assert!(r.failures.is_empty());
    }

    #[test]
    fn two_vertices_always_succeed() {
        let r = run_gnp_experiment(cfg(2, 0.99, 100)).unwrap();
        assert_eq!(r.successes, 100);
    }

    #[test]
    fn deterministic_given_seed() {
        let a = run_gnp_experiment(cfg(30, 0.5, 20)).unwrap();
        let b = run_gnp_experiment(cfg(30, 0.5, 20)).unwrap();
        assert_eq!((a.successes, &a.failures), (b.successes, &b.failures));
        assert_eq!(trial_graph(&cfg(30, 0.5, 1), 3), trial_graph(&cfg(30, 0.5, 1), 3));
    }

    #[test]
    fn rejects_bad_probability() {
        assert!(run_gnp_experiment(cfg(5, 1.0, 1)).is_err());
        assert!(run_gnp_experiment(cfg(5, 0.0, 1)).is_err());
    }
}
