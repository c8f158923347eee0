//! Instance generators and seeded experiment suites.
//!
//! A suite runs `runs` independent trials. Trial `i` draws everything from
//! its own substream of the suite seed, so results do not depend on how the
//! trials are scheduled; rows are merged back in trial order.

use std::collections::BTreeMap;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::rng::{mix, stream_id};

pub mod gen;
mod suites;

pub use suites::*;

/// One trial of a suite.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TrialRow {
    pub trial: usize,
    pub instance: String,
    pub values: BTreeMap<String, f64>,
    /// Named pass/fail flags this trial contributes to the suite checks.
    pub flags: BTreeMap<String, bool>,
}

impl TrialRow {
    pub fn new(trial: usize, instance: impl Into<String>) -> Self {
        TrialRow { trial, instance: instance.into(), values: BTreeMap::new(), flags: BTreeMap::new() }
    }

    pub fn value(mut self, key: &str, v: f64) -> Self {
        self.values.insert(key.to_string(), v);
        self
    }

    pub fn flag(mut self, key: &str, ok: bool) -> Self {
        self.flags.insert(key.to_string(), ok);
        self
    }
}

/// `passed` of `total` items satisfied a property; `required` must.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: usize,
    pub total: usize,
    pub required: usize,
    pub ok: bool,
}

impl Check {
    pub fn new(name: &str, passed: usize, total: usize, required: usize) -> Self {
        Check { name: name.to_string(), passed, total, required, ok: passed >= required }
    }

    /// Every item must pass.
    pub fn all(name: &str, passed: usize, total: usize) -> Self {
        Check::new(name, passed, total, total)
    }

    /// Counts a flag over the rows.
    pub fn from_rows(name: &str, rows: &[TrialRow], required: impl Fn(usize) -> usize) -> Self {
        let total = rows.iter().filter(|r| r.flags.contains_key(name)).count();
        let passed = rows.iter().filter(|r| r.flags.get(name) == Some(&true)).count();
        Check::new(name, passed, total, required(total))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub seed: u64,
    pub runs: usize,
    pub trials: usize,
    pub constants: BTreeMap<String, f64>,
    pub checks: Vec<Check>,
    pub summary: BTreeMap<String, f64>,
    pub passed: bool,
    pub rows: Vec<TrialRow>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_time_ms: Option<u128>,
}

impl SuiteReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Tabular projection: fixed columns `trial,instance`, then every value
    /// and flag name in sorted order. Missing cells are empty.
    pub fn table(&self) -> (Vec<String>, Vec<Vec<String>>) {
        let mut value_keys: Vec<&String> = self.rows.iter().flat_map(|r| r.values.keys()).collect();
        value_keys.sort();
        value_keys.dedup();
        let mut flag_keys: Vec<&String> = self.rows.iter().flat_map(|r| r.flags.keys()).collect();
        flag_keys.sort();
        flag_keys.dedup();
        let mut header = vec!["trial".to_string(), "instance".to_string()];
        header.extend(value_keys.iter().chain(&flag_keys).map(|k| k.to_string()));
        let rows = self
            .rows
            .iter()
            .map(|r| {
                let mut cells = vec![r.trial.to_string(), r.instance.clone()];
                cells.extend(value_keys.iter().map(|k| r.values.get(*k).map_or(String::new(), |v| v.to_string())));
                cells.extend(flag_keys.iter().map(|k| r.flags.get(*k).map_or(String::new(), |v| v.to_string())));
                cells
            })
            .collect();
        (header, rows)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    /// LP optimum never exceeds the integral optimum.
    LpRelaxation,
    /// Exhaustive min cut equals max flow per group.
    CutFlow,
    /// Rounding connects each edge with probability `x_e`.
    Marginals,
    /// Per-pass group connection probability is `Ω(1/log N)`.
    Connection,
    /// Degree and cost of the bicriteria tree solver.
    DegreeBound,
    /// Exact two-point hashing bounds and the full-bin sweep.
    TwoPoint,
    /// Steiner k-tree reduction against the exact optimum.
    #[serde(rename = "ktree")]
    KTree,
    /// Separator tree structure on bounded treewidth graphs.
    Separators,
    /// End-to-end bounded treewidth pipeline against the exact optimum.
    Btw,
    /// Backward edge rewiring of exact optima in the contracted graph.
    Rewiring,
}

impl Suite {
    pub const ALL: [Suite; 10] = [
        Suite::LpRelaxation,
        Suite::CutFlow,
        Suite::Marginals,
        Suite::Connection,
        Suite::DegreeBound,
        Suite::TwoPoint,
        Suite::KTree,
        Suite::Separators,
        Suite::Btw,
        Suite::Rewiring,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::LpRelaxation => "lp-relaxation",
            Suite::CutFlow => "cut-flow",
            Suite::Marginals => "marginals",
            Suite::Connection => "connection",
            Suite::DegreeBound => "degree-bound",
            Suite::TwoPoint => "two-point",
            Suite::KTree => "ktree",
            Suite::Separators => "separators",
            Suite::Btw => "btw",
            Suite::Rewiring => "rewiring",
        }
    }

    /// Trials run when the caller does not say.
    pub fn default_runs(self) -> usize {
        match self {
            Suite::LpRelaxation | Suite::Separators => 200,
            Suite::CutFlow | Suite::Btw | Suite::Rewiring => 50,
            Suite::Marginals => 1,
            Suite::Connection => 20,
            Suite::DegreeBound | Suite::TwoPoint | Suite::KTree => 100,
        }
    }

    /// Monte Carlo samples per trial when the caller does not say.
    pub fn default_trials(self) -> usize {
        match self {
            Suite::Marginals => 100_000,
            Suite::Connection => 10_000,
            _ => 0,
        }
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let alias = match s {
            "theorem1" => "ktree",
            "theorem2" => "btw",
            "theorem3" => "degree-bound",
            other => other,
        };
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == alias)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown suite {s:?}")))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuiteConfig {
    pub seed: u64,
    pub runs: Option<usize>,
    pub trials: Option<usize>,
    /// For the k-tree suite: `None` runs both modes.
    pub mode: Option<crate::ktree::ReductionMode>,
}

impl SuiteConfig {
    pub fn new(seed: u64) -> Self {
        SuiteConfig { seed, runs: None, trials: None, mode: None }
    }
}

/// Seed of trial `i` of a suite.
pub fn trial_seed(seed: u64, suite: Suite, trial: usize) -> u64 {
    mix(seed ^ stream_id(suite.name(), trial as u64))
}

/// Runs trials on the rayon pool and returns rows in trial order.
pub fn run_trials<F>(runs: usize, f: F) -> Result<Vec<TrialRow>>
where
    F: Fn(usize) -> Result<TrialRow> + Sync + Send,
{
    (0..runs).into_par_iter().map(f).collect()
}

pub fn run_suite(suite: Suite, config: &SuiteConfig) -> Result<SuiteReport> {
    let runs = config.runs.unwrap_or(suite.default_runs());
    let trials = config.trials.unwrap_or(suite.default_trials());
    let body = match suite {
        Suite::LpRelaxation => suites::lp_relaxation(config.seed, runs)?,
        Suite::CutFlow => suites::cut_flow(config.seed, runs)?,
        Suite::Marginals => suites::marginals(config.seed, runs, trials)?,
        Suite::Connection => suites::connection(config.seed, runs, trials)?,
        Suite::DegreeBound => suites::degree_bound(config.seed, runs)?,
        Suite::TwoPoint => suites::two_point(config.seed, runs)?,
        Suite::KTree => suites::ktree(config.seed, runs, config.mode)?,
        Suite::Separators => suites::separators(config.seed, runs)?,
        Suite::Btw => suites::btw(config.seed, runs)?,
        Suite::Rewiring => suites::rewiring(config.seed, runs)?,
    };
    let passed = body.checks.iter().all(|c| c.ok);
    Ok(SuiteReport {
        suite,
        seed: config.seed,
        runs,
        trials,
        constants: body.constants,
        checks: body.checks,
        summary: body.summary,
        passed,
        rows: body.rows,
        wall_time_ms: None,
    })
}
