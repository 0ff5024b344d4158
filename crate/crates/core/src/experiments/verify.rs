//! Seeded verification suites that check the library's invariants end to end.

use std::collections::BTreeMap;
use std::f64::consts::{FRAC_PI_4, PI};
use std::str::FromStr;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::circuit::{
    build_qgan_circuit, build_variational_circuit, uniform_thetas, Circuit, Phases, Topology,
};
use crate::entanglement::{entanglement_of_qubit, entanglement_schmidt_oracle};
use crate::error::{Error, Result};
use crate::graphs::{verify_degree_formula, Graph};
use crate::measurement::{estimate_entanglement_of_state, seeded_rng};

/// Default seed of every suite.
pub const DEFAULT_VERIFY_SEED: u64 = 0x5eed_2024;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    OracleEquivalence,
    GraphFormula,
    Locality,
    ShotScaling,
}

impl Suite {
    pub const ALL: [Suite; 4] = [
        Suite::OracleEquivalence,
        Suite::GraphFormula,
        Suite::Locality,
        Suite::ShotScaling,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::OracleEquivalence => "oracle-equivalence",
            Suite::GraphFormula => "graph-formula",
            Suite::Locality => "locality",
            Suite::ShotScaling => "shot-scaling",
        }
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| {
                Error::Config(format!(
                    "unknown suite `{s}`; expected one of oracle-equivalence, graph-formula, locality, shot-scaling"
                ))
            })
    }
}

/// Outcome of one suite. `metrics` holds the measured quantities by name.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyReport {
    pub suite: Suite,
    pub passed: bool,
    pub cases: usize,
    pub seed: u64,
    pub metrics: BTreeMap<String, f64>,
    pub criterion: String,
}

impl VerifyReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

pub fn run_verify(suite: Suite, seed: u64) -> Result<VerifyReport> {
    match suite {
        Suite::OracleEquivalence => oracle_equivalence(seed, 200),
        Suite::GraphFormula => graph_formula(seed, 50),
        Suite::Locality => locality(seed, 100),
        Suite::ShotScaling => shot_scaling(seed, 100),
    }
}

fn random_angle(rng: &mut ChaCha8Rng) -> f64 {
    rng.random_range(0.0..2.0 * PI)
}

/// Random circuit with `n` in `2..=8`, depth in `1..=3`, a random edge set and
/// independent uniform angles for every gate.
pub fn random_circuit(rng: &mut ChaCha8Rng) -> Result<Circuit> {
    let n = rng.random_range(2..=8usize);
    let depth = rng.random_range(1..=3usize);
    let topology = match rng.random_range(0..4) {
        0 => Topology::Chain,
        1 => Topology::Star {
            center: rng.random_range(0..n),
        },
        2 => Topology::Complete,
        _ => {
            let p = rng.random_range(0.2..0.8);
            let graph = Graph::random(n, p, rng.random())?;
            Topology::Explicit {
                edges: graph.edges().to_vec(),
            }
        }
    };
    let n_edges = topology.edges(n)?.len();
    let thetas: Vec<Vec<f64>> = (0..n)
        .map(|_| (0..depth).map(|_| random_angle(rng)).collect())
        .collect();
    let phis: Vec<Vec<f64>> = (0..depth)
        .map(|_| (0..n_edges).map(|_| random_angle(rng)).collect())
        .collect();
    build_variational_circuit(n, depth, &thetas, &Phases::PerEdge(phis), &topology)
}

/// Mean-spin entanglement against the Schmidt oracle on every qubit of
/// `circuits` random circuits.
pub fn oracle_equivalence(seed: u64, circuits: usize) -> Result<VerifyReport> {
    let mut rng = seeded_rng(seed);
    let mut max_dev = 0.0f64;
    let mut qubits = 0;
    for _ in 0..circuits {
        let state = random_circuit(&mut rng)?.run()?;
        for q in 0..state.n_qubits() {
            let spin = entanglement_of_qubit(&state, q)?.value();
            let schmidt = entanglement_schmidt_oracle(&state, q)?.value();
            max_dev = max_dev.max((spin - schmidt).abs());
            qubits += 1;
        }
    }
    Ok(VerifyReport {
        suite: Suite::OracleEquivalence,
        passed: max_dev < 1e-10,
        cases: circuits,
        seed,
        metrics: BTreeMap::from([
            ("max_abs_deviation".into(), max_dev),
            ("qubits_checked".into(), qubits as f64),
        ]),
        criterion: "max |E_spin - E_schmidt| < 1e-10".into(),
    })
}

/// Graph corpus: `random_graphs` seeded random graphs with `n <= 8` plus path,
/// cycle, star and complete fixtures for `n = 3..=8`.
pub fn graph_corpus(seed: u64, random_graphs: usize) -> Result<Vec<Graph>> {
    let mut rng = seeded_rng(seed);
    let mut corpus = Vec::new();
    for n in 3..=8 {
        corpus.push(Graph::path(n)?);
        corpus.push(Graph::cycle(n)?);
        corpus.push(Graph::star(n, 0)?);
        corpus.push(Graph::complete(n)?);
    }
    for _ in 0..random_graphs {
        let n = rng.random_range(2..=8usize);
        let p = rng.random_range(0.0..=1.0);
        corpus.push(Graph::random(n, p, rng.random())?);
    }
    Ok(corpus)
}

/// Degree formula against simulation over [`graph_corpus`], plus equal-degree
/// vertices having equal simulated entanglement.
pub fn graph_formula(seed: u64, random_graphs: usize) -> Result<VerifyReport> {
    let corpus = graph_corpus(seed, random_graphs)?;
    let mut rng = seeded_rng(seed.wrapping_add(1));
    let mut max_dev = 0.0f64;
    let mut max_degree_spread = 0.0f64;
    for graph in &corpus {
        let (theta, phi) = (random_angle(&mut rng), random_angle(&mut rng));
        let report = verify_degree_formula(graph, theta, phi)?;
        max_dev = max_dev.max(report.max_abs_difference());
        let mut by_degree: BTreeMap<usize, (f64, f64)> = BTreeMap::new();
        for r in &report.records {
            let entry = by_degree
                .entry(r.degree)
                .or_insert((r.e_simulated, r.e_simulated));
            entry.0 = entry.0.min(r.e_simulated);
            entry.1 = entry.1.max(r.e_simulated);
        }
        for (lo, hi) in by_degree.values() {
            max_degree_spread = max_degree_spread.max(hi - lo);
        }
    }
    Ok(VerifyReport {
        suite: Suite::GraphFormula,
        passed: max_dev < 1e-10 && max_degree_spread < 1e-10,
        cases: corpus.len(),
        seed,
        metrics: BTreeMap::from([
            ("max_abs_deviation".into(), max_dev),
            ("max_equal_degree_spread".into(), max_degree_spread),
        ]),
        criterion: "max |E_formula - E_simulated| < 1e-10 and equal-degree spread < 1e-10".into(),
    })
}

/// Six-qubit one-layer chain: re-drawing the rotations of qubits 3, 4, 5 must not
/// move the entanglement of qubit 1.
pub fn locality(seed: u64, trials: usize) -> Result<VerifyReport> {
    const N: usize = 6;
    let mut rng = seeded_rng(seed);
    let mut max_change = 0.0f64;
    for _ in 0..trials {
        let mut thetas: Vec<Vec<f64>> = (0..N).map(|_| vec![random_angle(&mut rng)]).collect();
        let phis = Phases::PerEdge(vec![(0..N - 1).map(|_| random_angle(&mut rng)).collect()]);
        let before = build_variational_circuit(N, 1, &thetas, &phis, &Topology::Chain)?.run()?;
        for row in thetas.iter_mut().skip(3) {
            row[0] += rng.random_range(-PI..PI);
        }
        let after = build_variational_circuit(N, 1, &thetas, &phis, &Topology::Chain)?.run()?;
        let change = (entanglement_of_qubit(&before, 1)?.value()
            - entanglement_of_qubit(&after, 1)?.value())
        .abs();
        max_change = max_change.max(change);
    }
    Ok(VerifyReport {
        suite: Suite::Locality,
        passed: max_change < 1e-12,
        cases: trials,
        seed,
        metrics: BTreeMap::from([("max_abs_change".into(), max_change)]),
        criterion: "max |dE(q1)| < 1e-12 when perturbing theta of q3..q5".into(),
    })
}

/// Standard deviation of the sampled entanglement over seeds at each shot count.
pub fn shot_noise_profile(shot_counts: &[u64], seeds: usize, base_seed: u64) -> Result<Vec<f64>> {
    let state = build_qgan_circuit(3, 1, &uniform_thetas(3, &[FRAC_PI_4]))?.run()?;
    shot_counts
        .iter()
        .map(|&shots| {
            let samples = (0..seeds)
                .map(|s| {
                    let seed = base_seed.wrapping_add(3 * s as u64);
                    Ok(estimate_entanglement_of_state(&state, 1, shots, seed)?.value)
                })
                .collect::<Result<Vec<f64>>>()?;
            let mean = samples.iter().sum::<f64>() / seeds as f64;
            let var =
                samples.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (seeds as f64 - 1.0);
            Ok(var.sqrt())
        })
        .collect()
}

/// Least-squares slope of `log y` against `log x`.
pub fn log_log_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let lx: Vec<f64> = xs.iter().map(|x| x.ln()).collect();
    let ly: Vec<f64> = ys.iter().map(|y| y.ln()).collect();
    let n = lx.len() as f64;
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let cov: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
    let var: f64 = lx.iter().map(|x| (x - mx).powi(2)).sum();
    cov / var
}

/// Fits the decay of the estimator's spread across shots in {1e2, 1e3, 1e4}
/// on the one-layer chain at `theta = pi/4`, qubit 1.
pub fn shot_scaling(seed: u64, seeds: usize) -> Result<VerifyReport> {
    let shots = [100u64, 1_000, 10_000];
    let stds = shot_noise_profile(&shots, seeds, seed)?;
    let xs: Vec<f64> = shots.iter().map(|&s| s as f64).collect();
    let exponent = log_log_slope(&xs, &stds);
    let expected_ratio = 10f64.sqrt();
    let ratios_ok = stds.windows(2).all(|w| {
        let ratio = w[0] / w[1];
        ratio >= expected_ratio / 2.0 && ratio <= expected_ratio * 2.0
    });
    let mut metrics = BTreeMap::from([("fitted_exponent".into(), exponent)]);
    for (s, sd) in shots.iter().zip(&stds) {
        metrics.insert(format!("std_at_{s}"), *sd);
    }
    Ok(VerifyReport {
        suite: Suite::ShotScaling,
        passed: (-0.65..=-0.35).contains(&exponent) && ratios_ok,
        cases: seeds,
        seed,
        metrics,
        criterion: "fitted exponent in [-0.65, -0.35], decade ratios within 2x of sqrt(10)".into(),
    })
}
