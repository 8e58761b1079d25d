use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::gen::{gen_complex_with, trial_seed, GenParams, Generated};
use super::suites::{find_suite, Suite};
use crate::error::{Error, Result};

/// Property outcomes of one trial, `Some` holding the failure description.
pub type Outcome = Vec<(&'static str, Option<String>)>;

/// State of one trial: its random stream and the property outcomes so far.
pub struct TrialCtx {
    pub rng: ChaCha8Rng,
    pub params: GenParams,
    outcomes: Outcome,
}

impl TrialCtx {
    pub fn new(params: GenParams) -> Self {
        TrialCtx { rng: ChaCha8Rng::seed_from_u64(params.seed), params, outcomes: Vec::new() }
    }

    pub fn gen(&mut self) -> Generated {
        let p = self.params;
        gen_complex_with(&mut self.rng, &p)
    }

    pub fn gen_with(&mut self, p: GenParams) -> Generated {
        gen_complex_with(&mut self.rng, &p)
    }

    /// Records one property outcome; `repro` is only evaluated on failure.
    pub fn check(&mut self, property: &'static str, ok: bool, repro: impl FnOnce() -> String) {
        self.outcomes.push((property, if ok { None } else { Some(repro()) }));
    }

    fn failed(&self) -> bool {
        self.outcomes.iter().any(|(_, f)| f.is_some())
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Tally {
    pub passed: u64,
    pub failed: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub trial: u64,
    /// Replays the trial via [`replay`].
    pub seed: u64,
    pub property: String,
    /// Smallest rank bound at which the trial still fails.
    pub shrunk_max_rank: usize,
    pub reproduction: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub suite: String,
    pub seed: u64,
    pub trials: u64,
    pub passed_trials: u64,
    pub properties: BTreeMap<String, Tally>,
    pub failures: Vec<Failure>,
    /// Whether the suite's deliberately broken input was flagged.
    pub control_flagged: bool,
    #[serde(serialize_with = "secs")]
    pub wall_time: Duration,
}

fn secs<S: serde::Serializer>(d: &Duration, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_f64(d.as_secs_f64())
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.control_flagged
    }

    /// Everything except the wall time; equal for equal seeds and parameters.
    pub fn outcome(&self) -> (&str, u64, u64, u64, &BTreeMap<String, Tally>, &[Failure], bool) {
        (&self.suite, self.seed, self.trials, self.passed_trials, &self.properties, &self.failures, self.control_flagged)
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "suite: {}", self.suite);
        let _ = writeln!(out, "seed: {}", self.seed);
        let _ = writeln!(out, "trials: {}", self.trials);
        let _ = writeln!(out, "passed_trials: {}", self.passed_trials);
        for (name, t) in &self.properties {
            let _ = writeln!(out, "property {name}: {}/{}", t.passed, t.passed + t.failed);
        }
        let _ = writeln!(out, "control_flagged: {}", self.control_flagged);
        for f in &self.failures {
            let _ = writeln!(
                out,
                "failure: trial={} seed={} property={} max_rank={} input={}",
                f.trial, f.seed, f.property, f.shrunk_max_rank, f.reproduction
            );
        }
        let _ = writeln!(out, "wall_time_s: {:.3}", self.wall_time.as_secs_f64());
        let _ = writeln!(out, "status: {}", if self.passed() { "pass" } else { "fail" });
        out
    }
}

fn run_trial(suite: &Suite, params: GenParams) -> Outcome {
    let mut ctx = TrialCtx::new(params);
    if let Err(e) = (suite.trial)(&mut ctx) {
        ctx.outcomes.push(("no-error", Some(format!("error: {e}"))));
    }
    ctx.outcomes
}

/// Runs one trial with the given seed, as recorded in a [`Failure`].
pub fn replay(name: &str, params: &GenParams, seed: u64) -> Result<Outcome> {
    let suite = find_suite(name)?;
    Ok(run_trial(suite, params.with_seed(seed)))
}

fn shrink(suite: &Suite, params: GenParams, first: &Outcome) -> (usize, String, String) {
    let describe = |o: &[(&'static str, Option<String>)]| {
        o.iter().find_map(|(p, f)| f.as_ref().map(|f| (p.to_string(), f.clone()))).unwrap_or_default()
    };
    let (mut property, mut repro) = describe(first);
    let mut rank = params.max_rank;
    while rank > 1 {
        let smaller = params.with_max_rank(rank - 1);
        let outcome = run_trial(suite, smaller);
        if !outcome.iter().any(|(_, f)| f.is_some()) {
            break;
        }
        rank -= 1;
        (property, repro) = describe(&outcome);
    }
    (rank, property, repro)
}

/// Runs `trials` independent trials of the named suite.
///
/// Trial `i` draws from its own stream seeded by `(params.seed, i)`, so the
/// report does not depend on scheduling.
pub fn run_suite(name: &str, params: &GenParams, trials: u64) -> Result<VerifyReport> {
    params.validate()?;
    let suite = find_suite(name)?;
    let start = Instant::now();
    let outcomes: Vec<(u64, u64, Outcome)> = (0..trials)
        .into_par_iter()
        .map(|i| {
            let seed = trial_seed(params.seed, i);
            (i, seed, run_trial(suite, params.with_seed(seed)))
        })
        .collect();
    let mut properties: BTreeMap<String, Tally> = BTreeMap::new();
    let mut failures = Vec::new();
    let mut passed_trials = 0;
    for (i, seed, outcome) in &outcomes {
        for (p, f) in outcome {
            let t = properties.entry(p.to_string()).or_default();
            if f.is_some() {
                t.failed += 1;
            } else {
                t.passed += 1;
            }
        }
        if outcome.iter().any(|(_, f)| f.is_some()) {
            let (rank, property, reproduction) = shrink(suite, params.with_seed(*seed), outcome);
            failures.push(Failure { trial: *i, seed: *seed, property, shrunk_max_rank: rank, reproduction });
        } else {
            passed_trials += 1;
        }
    }
    let control_flagged = (suite.control)().unwrap_or(false);
    Ok(VerifyReport {
        suite: suite.name.to_string(),
        seed: params.seed,
        trials,
        passed_trials,
        properties,
        failures,
        control_flagged,
        wall_time: start.elapsed(),
    })
}

impl TrialCtx {
    /// Converts a failed precondition into a property failure.
    pub fn expect<T>(&mut self, property: &'static str, r: Result<T>, repro: impl FnOnce() -> String) -> Option<T> {
        match r {
            Ok(v) => {
                self.check(property, true, String::new);
                Some(v)
            }
            Err(e) => {
                let msg = format!("{e}; {}", repro());
                self.check(property, false, || msg);
                None
            }
        }
    }

    pub fn any_failed(&self) -> bool {
        self.failed()
    }
}

pub(crate) fn unknown(name: &str) -> Error {
    Error::UnknownSuite(name.to_string())
}
