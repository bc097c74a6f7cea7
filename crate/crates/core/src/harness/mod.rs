//! Seeded, parallel execution of the property suites.
//!
//! Case `i` of a suite draws from its own generator substream, so a suite's
//! record depends only on `(suite, config)` and never on scheduling. The
//! per-case reduction (violation count, worst margin with smallest-index
//! tie-break) is associative and commutative.

mod sampling;
mod suites;

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use sampling::{case_rng, sample_disc_point, sample_measure, GENERATOR};
pub use suites::{Case, SuiteId};

/// Parameters of a verification campaign.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialConfig {
    pub seed: u64,
    /// Cases per random suite. Grid suites ignore it; the gradient and
    /// mean-value suites cap it.
    pub trials: u64,
    pub max_atoms: usize,
    pub rmax: f64,
    pub weight_range: (f64, f64),
    /// Per-suite tolerances, keyed by suite name.
    pub tolerances: BTreeMap<String, f64>,
}

impl Default for TrialConfig {
    fn default() -> Self {
        TrialConfig {
            seed: 1,
            trials: 100_000,
            max_atoms: 8,
            rmax: 0.99,
            weight_range: (0.1, 10.0),
            tolerances: default_tolerances(),
        }
    }
}

pub fn default_tolerances() -> BTreeMap<String, f64> {
    SuiteId::ALL
        .iter()
        .map(|s| (s.name().to_string(), s.default_tolerance()))
        .collect()
}

impl TrialConfig {
    pub fn validate(&self) -> Result<()> {
        let usage = |m: String| Err(Error::Usage(m));
        if self.trials == 0 {
            return usage("trials must be at least 1".into());
        }
        if self.max_atoms == 0 {
            return usage("max_atoms must be at least 1".into());
        }
        if !(self.rmax > 0.0 && self.rmax < 1.0) {
            return usage(format!("rmax = {} must lie in (0, 1)", self.rmax));
        }
        let (lo, hi) = self.weight_range;
        if !(lo > 0.0 && lo <= hi && hi.is_finite()) {
            return usage(format!("weight range ({lo}, {hi}) must satisfy 0 < min <= max < inf"));
        }
        for (name, tol) in &self.tolerances {
            name.parse::<SuiteId>()?;
            if !(tol.is_finite() && *tol >= 0.0) {
                return usage(format!("tolerance for `{name}` must be finite and >= 0, got {tol}"));
            }
        }
        Ok(())
    }

    /// Tolerance in force for `suite`.
    pub fn tolerance(&self, suite: SuiteId) -> f64 {
        self.tolerances
            .get(suite.name())
            .copied()
            .unwrap_or_else(|| suite.default_tolerance())
    }

    /// Overrides one suite tolerance.
    pub fn set_tolerance(&mut self, suite: &str, tol: f64) -> Result<()> {
        let id: SuiteId = suite.parse()?;
        if !(tol.is_finite() && tol >= 0.0) {
            return Err(Error::Usage(format!("tolerance for `{suite}` must be finite and >= 0")));
        }
        self.tolerances.insert(id.name().to_string(), tol);
        Ok(())
    }
}

/// Outcome of one suite.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteRecord {
    pub suite: String,
    pub trials: u64,
    pub violations: u64,
    /// Smallest margin observed; `None` when it is not a finite number.
    pub worst_slack: Option<f64>,
    /// Inputs of the worst case, recorded when the suite has violations.
    pub witness: Option<Case>,
}

impl SuiteRecord {
    pub fn passed(&self) -> bool {
        self.violations == 0
    }
}

/// Outcome of a whole campaign.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub generator: String,
    pub config: TrialConfig,
    pub pass: bool,
    pub suites: Vec<SuiteRecord>,
}

#[derive(Debug, Clone, Copy)]
struct Tally {
    violations: u64,
    worst: f64,
    worst_index: u64,
}

impl Tally {
    const EMPTY: Tally = Tally { violations: 0, worst: f64::INFINITY, worst_index: u64::MAX };

    fn merge(self, other: Tally) -> Tally {
        let self_first = self
            .worst
            .total_cmp(&other.worst)
            .then(self.worst_index.cmp(&other.worst_index))
            .is_le();
        let (worst, worst_index) = if self_first {
            (self.worst, self.worst_index)
        } else {
            (other.worst, other.worst_index)
        };
        Tally { violations: self.violations + other.violations, worst, worst_index }
    }
}

fn tally_case(suite: SuiteId, config: &TrialConfig, tol: f64, index: u64) -> Tally {
    let margin = match suite.evaluate(&suite.case(config, index)) {
        Ok(m) if !m.is_nan() => m,
        _ => f64::NEG_INFINITY,
    };
    Tally {
        violations: suite.is_violation(margin, tol) as u64,
        worst: margin,
        worst_index: index,
    }
}

fn run_validated(suite: SuiteId, config: &TrialConfig) -> SuiteRecord {
    let tol = config.tolerance(suite);
    let count = suite.case_count(config);
    let tally = (0..count)
        .into_par_iter()
        .map(|i| tally_case(suite, config, tol, i))
        .reduce(|| Tally::EMPTY, Tally::merge);
    let witness = (tally.violations > 0).then(|| suite.case(config, tally.worst_index));
    SuiteRecord {
        suite: suite.name().to_string(),
        trials: count,
        violations: tally.violations,
        worst_slack: tally.worst.is_finite().then_some(tally.worst),
        witness,
    }
}

/// Runs one named suite.
pub fn run_suite(name: &str, config: &TrialConfig) -> Result<SuiteRecord> {
    let suite: SuiteId = name.parse()?;
    config.validate()?;
    Ok(run_validated(suite, config))
}

/// Runs every suite on the global thread pool.
pub fn run_all(config: &TrialConfig) -> Result<VerificationReport> {
    config.validate()?;
    let suites: Vec<SuiteRecord> = SuiteId::ALL.iter().map(|&s| run_validated(s, config)).collect();
    Ok(VerificationReport {
        generator: GENERATOR.to_string(),
        config: config.clone(),
        pass: suites.iter().all(SuiteRecord::passed),
        suites,
    })
}

/// Runs every suite on a dedicated pool of `workers` threads.
pub fn run_all_with_workers(config: &TrialConfig, workers: usize) -> Result<VerificationReport> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .map_err(|e| Error::Usage(format!("cannot start {workers} workers: {e}")))?;
    pool.install(|| run_all(config))
}

/// Re-evaluates a recorded witness; returns its margin and whether it
/// violates the suite at `tol`.
pub fn replay(suite: &str, witness: &Case, tol: f64) -> Result<(f64, bool)> {
    let suite: SuiteId = suite.parse()?;
    let margin = suite.evaluate(witness)?;
    Ok((margin, suite.is_violation(margin, tol)))
}
