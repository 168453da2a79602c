//! Seeded encode/decode campaigns.
//!
//! Trial `i` draws from a ChaCha8 generator (`rand_chacha`) seeded with
//! `seed` via `seed_from_u64` and switched to stream `i`, so every trial is
//! independent of execution order and the whole report is a function of the
//! configuration.

use std::time::Instant;

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::alphabet::Alphabet;
use crate::budget::Budget;
use crate::decode::{decode, oracle_decode_with, DecodeMode, DecodeOptions, OracleVerdict};
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::io::parse_matrix;
use crate::matrix::QaryMatrix;
use crate::rational::Rational;
use crate::vector::{encode, OutcomeVector, SparseVector};

pub const RNG_NAME: &str = "ChaCha8 (rand_chacha 0.3, seed_from_u64, one stream per trial)";

#[derive(Debug, Clone, Serialize)]
pub struct SimulationConfig {
    pub matrix_path: String,
    pub levels: String,
    pub d: usize,
    pub trials: usize,
    pub seed: u64,
    pub mode: DecodeMode,
    pub oracle_check: bool,
    #[serde(skip)]
    pub budget: Budget,
    /// Adds wall-clock statistics, which makes reports run-dependent.
    #[serde(skip)]
    pub timing: bool,
    #[serde(skip)]
    pub exec: Execution,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TrialFailure {
    pub trial: usize,
    pub x: Vec<Rational>,
    pub v: Vec<Rational>,
    pub x_hat: Option<Vec<Rational>>,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComparisonStats {
    pub mean: f64,
    pub max: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TimingStats {
    pub total_ms: f64,
    pub mean_trial_us: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SimulationReport {
    pub matrix: String,
    pub levels: String,
    pub d: usize,
    pub seed: u64,
    pub mode: DecodeMode,
    pub oracle_check: bool,
    pub rng: &'static str,
    pub trials: usize,
    pub successes: usize,
    pub failures: Vec<TrialFailure>,
    pub comparisons: ComparisonStats,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing: Option<TimingStats>,
}

impl SimulationReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Loads the matrix named in `cfg` and runs the campaign.
pub fn run_simulation(cfg: &SimulationConfig) -> Result<SimulationReport> {
    let file = parse_matrix(&cfg.matrix_path)?;
    run_simulation_on(&file.matrix, cfg)
}

/// The `x` drawn for a trial: uniform weight in `0..=d`, uniform support of
/// that weight, uniform nonzero level per support item.
pub fn draw_trial(seed: u64, trial: usize, n: usize, alphabet: &Alphabet, d: usize) -> SparseVector {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial as u64);
    let weight = rng.gen_range(0..=d.min(n));
    let mut support = sample(&mut rng, n, weight).into_vec();
    support.sort_unstable();
    let nonzero: Vec<&Rational> = alphabet.nonzero().collect();
    let entries = support
        .into_iter()
        .map(|j| (j, nonzero[rng.gen_range(0..nonzero.len())].clone()))
        .collect();
    SparseVector::new(n, entries).expect("sampled indices are distinct")
}

pub fn run_simulation_on(matrix: &QaryMatrix, cfg: &SimulationConfig) -> Result<SimulationReport> {
    let alphabet: Alphabet = cfg.levels.parse()?;
    if cfg.d > matrix.n() {
        return Err(Error::InvalidParameter(format!(
            "d = {} exceeds n = {}",
            cfg.d,
            matrix.n()
        )));
    }
    let opts = DecodeOptions {
        exec: Execution::Sequential,
        budget: cfg.budget,
        check_hypothesis: false,
    };
    let started = Instant::now();
    let outcomes = cfg.exec.map_range(cfg.trials, |trial| {
        run_trial(matrix, &alphabet, cfg, &opts, trial)
    });
    let elapsed = started.elapsed();

    let mut failures = Vec::new();
    let mut total = 0u64;
    let mut max = 0u64;
    for outcome in outcomes {
        match outcome? {
            Ok(cmp) => {
                total += cmp;
                max = max.max(cmp);
            }
            Err(f) => failures.push(f),
        }
    }
    let successes = cfg.trials - failures.len();
    Ok(SimulationReport {
        matrix: cfg.matrix_path.clone(),
        levels: alphabet.to_string(),
        d: cfg.d,
        seed: cfg.seed,
        mode: cfg.mode,
        oracle_check: cfg.oracle_check,
        rng: RNG_NAME,
        trials: cfg.trials,
        successes,
        failures,
        comparisons: ComparisonStats {
            mean: if successes == 0 { 0.0 } else { total as f64 / successes as f64 },
            max,
        },
        timing: cfg.timing.then(|| TimingStats {
            total_ms: elapsed.as_secs_f64() * 1e3,
            mean_trial_us: if cfg.trials == 0 {
                0.0
            } else {
                elapsed.as_secs_f64() * 1e6 / cfg.trials as f64
            },
        }),
    })
}

/// `Ok(Ok(comparisons))` on success, `Ok(Err(_))` on a mathematical failure,
/// `Err(_)` when the run itself cannot proceed (budget, dimensions).
fn run_trial(
    matrix: &QaryMatrix,
    alphabet: &Alphabet,
    cfg: &SimulationConfig,
    opts: &DecodeOptions,
    trial: usize,
) -> Result<std::result::Result<u64, TrialFailure>> {
    let x = draw_trial(cfg.seed, trial, matrix.n(), alphabet, cfg.d);
    let v: OutcomeVector = encode(matrix, &x)?;
    let fail = |x_hat: Option<&SparseVector>, reason: String| TrialFailure {
        trial,
        x: x.to_dense(),
        v: v.to_vec(),
        x_hat: x_hat.map(SparseVector::to_dense),
        reason,
    };
    let decoded = match decode(matrix, &v, alphabet, cfg.d, cfg.mode, opts) {
        Ok(res) => res,
        Err(e @ Error::NoConsistentVector(_)) => return Ok(Err(fail(None, e.to_string()))),
        Err(e) => return Err(e),
    };
    if decoded.x_hat != x {
        return Ok(Err(fail(Some(&decoded.x_hat), "decoded vector differs".into())));
    }
    if cfg.oracle_check {
        match oracle_decode_with(matrix, &v, alphabet, cfg.d, Execution::Sequential, cfg.budget)? {
            OracleVerdict::Unique { x: ref o } if *o == x => {}
            verdict => {
                return Ok(Err(fail(
                    Some(&decoded.x_hat),
                    format!("oracle disagrees: {}", serde_json::to_string(&verdict).unwrap_or_default()),
                )))
            }
        }
    }
    Ok(Ok(decoded.comparisons))
}
