//! Seeded falsification runs over random and exhaustive instance streams.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::checks::{CheckKind, CheckResult, Checker, Counterexample};
use super::gen::{self, Shape};
use super::model::{FlowModel, Reference};
use crate::error::{Error, Result};
use crate::network::Network;
use crate::state::{State, MAX_WIDTH};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FuzzConfig {
    pub seed: u64,
    /// Instances per check.
    pub trials: u64,
    pub n_min: usize,
    pub n_max: usize,
    pub max_prefix: usize,
    pub max_period: usize,
    pub max_explicit_times: usize,
    pub k_max: i64,
    /// Largest discrete shift or restart index drawn.
    pub max_shift: u64,
    /// Run every trial on this network instead of random ones.
    pub network: Option<Network>,
}

impl Default for FuzzConfig {
    fn default() -> Self {
        FuzzConfig {
            seed: 42,
            trials: 10_000,
            n_min: 1,
            n_max: 6,
            max_prefix: 4,
            max_period: 4,
            max_explicit_times: 4,
            k_max: 50,
            max_shift: 6,
            network: None,
        }
    }
}

impl FuzzConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |why: &str| Err(Error::Precondition(format!("fuzz config: {why}")));
        if self.n_min < 1 || self.n_max > MAX_WIDTH || self.n_min > self.n_max {
            return bad("width range must lie within 1..=20");
        }
        if self.max_prefix == 0 || self.max_period == 0 || self.max_explicit_times == 0 {
            return bad("shape bounds must be positive");
        }
        if self.k_max < 0 || self.max_shift == 0 {
            return bad("k_max must be non-negative and max_shift positive");
        }
        Ok(())
    }

    fn shape(&self) -> Shape {
        Shape {
            max_prefix: self.max_prefix,
            max_period: self.max_period,
            max_explicit_times: self.max_explicit_times,
        }
    }
}

/// Aggregated results, one entry per check in [`CheckKind::ALL`] order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub mode: String,
    pub seed: Option<u64>,
    pub passed: bool,
    pub checks: Vec<CheckResult>,
}

impl SuiteReport {
    fn new(mode: &str, seed: Option<u64>, kinds: &[CheckKind]) -> SuiteReport {
        SuiteReport {
            mode: mode.to_string(),
            seed,
            passed: true,
            checks: kinds.iter().map(|k| CheckResult::empty(*k)).collect(),
        }
    }

    fn record(&mut self, result: CheckResult) {
        self.passed &= result.passed;
        let slot = self
            .checks
            .iter_mut()
            .find(|c| c.check == result.check)
            .expect("report covers every check it runs");
        slot.absorb(result);
    }

    pub fn check(&self, kind: CheckKind) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.check == kind)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data")
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.seed {
            Some(seed) => writeln!(f, "{} run, seed {seed}", self.mode)?,
            None => writeln!(f, "{} run", self.mode)?,
        }
        for c in &self.checks {
            writeln!(
                f,
                "  {:<30} {:>8} trials  {:>6} failures  {}",
                c.check.name(),
                c.trials,
                c.failures,
                if c.passed { "PASS" } else { "FAIL" }
            )?;
            if let Some(cx) = &c.counterexample {
                write_counterexample(f, cx)?;
            }
        }
        writeln!(f, "result: {}", if self.passed { "PASS" } else { "FAIL" })
    }
}

fn write_counterexample(f: &mut fmt::Formatter<'_>, cx: &Counterexample) -> fmt::Result {
    let fields = [
        ("trial", cx.trial.map(|t| t.to_string())),
        ("init", cx.initial.map(|s| s.to_string())),
        ("alpha", cx.alpha.clone()),
        ("times", cx.times.clone()),
        ("other alpha", cx.other_alpha.clone()),
        ("other times", cx.other_times.clone()),
        ("shift", cx.shift.clone()),
        ("probe", cx.probe.clone()),
        ("expected", Some(cx.expected.clone())),
        ("found", Some(cx.found.clone())),
    ];
    for (name, value) in fields {
        if let Some(v) = value {
            writeln!(f, "      {name}: {v}")?;
        }
    }
    if let Some(net) = &cx.network {
        writeln!(f, "      network:")?;
        for line in net.lines() {
            writeln!(f, "        {line}")?;
        }
    }
    Ok(())
}

fn error_result(kind: CheckKind, err: Error) -> CheckResult {
    CheckResult::fail(
        kind,
        Counterexample {
            expected: "a verdict".into(),
            found: format!("error: {err}"),
            ..Default::default()
        },
    )
}

/// Generator state for one (trial, check) pair, independent of every other
/// pair, so trials can run in any order.
fn trial_rng(seed: u64, trial: u64, kind: CheckKind) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let index = CheckKind::ALL.iter().position(|k| *k == kind).unwrap() as u64;
    rng.set_stream(trial * CheckKind::ALL.len() as u64 + index);
    rng
}

fn run_trial<M: FlowModel + ?Sized>(
    checker: &Checker<'_, M>,
    kind: CheckKind,
    rng: &mut ChaCha8Rng,
    config: &FuzzConfig,
) -> Result<CheckResult> {
    let shape = config.shape();
    let net = match &config.network {
        Some(net) => net.clone(),
        None => {
            let n = rng.gen_range(config.n_min..=config.n_max);
            gen::network(rng, n)
        }
    };
    let n = net.width();
    let mu = gen::state(rng, n);
    match kind {
        CheckKind::ProgressiveShiftDiscrete => {
            let alpha = if rng.gen_bool(0.5) {
                gen::progressive_schedule(rng, n, &shape)
            } else {
                gen::schedule(rng, n, &shape)
            };
            let by = if rng.gen_bool(0.5) { 1 } else { rng.gen_range(0..=20) };
            checker.progressive_shift_discrete(&alpha, by)
        }
        CheckKind::ProgressiveShiftReal => {
            let rho = if rng.gen_bool(0.5) {
                gen::progressive_real_schedule(rng, n, &shape)
            } else {
                gen::real_schedule(rng, n, &shape)
            };
            let from = gen::cut(rng, rho.times());
            checker.progressive_shift_real(&rho, &from)
        }
        CheckKind::ConsistencyDiscrete => {
            let alpha = gen::schedule(rng, n, &shape);
            checker.consistency_discrete(&net, &mu, &alpha)
        }
        CheckKind::ConsistencyReal => {
            let rho = gen::real_schedule(rng, n, &shape);
            checker.consistency_real(&net, &mu, &rho)
        }
        CheckKind::CompositionShiftDiscrete => {
            let alpha = gen::progressive_schedule(rng, n, &shape);
            let shift = rng.gen_range(0..=config.max_shift);
            checker.composition_shift_discrete(&net, &mu, &alpha, shift, config.k_max)
        }
        CheckKind::CompositionShiftReal => {
            let rho = gen::progressive_real_schedule(rng, n, &shape);
            let from = gen::cut(rng, rho.times());
            checker.composition_shift_real(&net, &mu, &rho, &from)
        }
        CheckKind::CompositionRestartDiscrete => {
            let alpha = gen::progressive_schedule(rng, n, &shape);
            let restart = rng.gen_range(-1..=config.max_shift as i64);
            checker.composition_restart_discrete(&net, &mu, &alpha, restart, config.k_max)
        }
        CheckKind::CompositionRestartReal => {
            let rho = gen::progressive_real_schedule(rng, n, &shape);
            let restart = gen::cut(rng, rho.times());
            checker.composition_restart_real(&net, &mu, &rho, &restart)
        }
        CheckKind::CausalityDiscrete => {
            let alpha = gen::progressive_schedule(rng, n, &shape);
            let k = rng.gen_range(0..=config.max_shift * 2);
            let beta = gen::mutate_tail(rng, &alpha, k + 1, &shape);
            checker.causality_discrete(&net, &mu, &alpha, &beta, k)
        }
        CheckKind::CausalityReal => {
            let rho = gen::progressive_real_schedule(rng, n, &shape);
            let until = gen::cut(rng, rho.times());
            let other = gen::mutate_real_tail(rng, &rho, &until, &shape);
            checker.causality_real(&net, &mu, &rho, &other, &until)
        }
    }
}

/// Runs every check `config.trials` times against the reference flow.
pub fn run_fuzz_suite(config: &FuzzConfig) -> Result<SuiteReport> {
    run_fuzz_suite_with(&Reference, config, &CheckKind::ALL)
}

/// Runs the given checks against `model`. The report depends only on the
/// config, not on thread scheduling.
pub fn run_fuzz_suite_with<M: FlowModel + ?Sized>(
    model: &M,
    config: &FuzzConfig,
    kinds: &[CheckKind],
) -> Result<SuiteReport> {
    config.validate()?;
    let checker = Checker::new(model);
    let per_trial: Vec<Vec<CheckResult>> = (0..config.trials)
        .into_par_iter()
        .map(|trial| {
            kinds
                .iter()
                .map(|&kind| {
                    let mut rng = trial_rng(config.seed, trial, kind);
                    run_trial(&checker, kind, &mut rng, config)
                        .unwrap_or_else(|e| error_result(kind, e))
                        .with_trial(trial)
                })
                .collect()
        })
        .collect();
    let mut report = SuiteReport::new("fuzz", Some(config.seed), kinds);
    for result in per_trial.into_iter().flatten() {
        report.record(result);
    }
    Ok(report)
}

/// Size of the fixed schedule battery used by [`run_exhaustive`].
pub const BATTERY_SIZE: usize = 20;

/// Every network of width 1 and 2, every initial state, every schedule of a
/// fixed battery, all discrete-time checks.
pub fn run_exhaustive<M: FlowModel + ?Sized>(model: &M, k_max: i64) -> Result<SuiteReport> {
    let checker = Checker::new(model);
    let mut report = SuiteReport::new("exhaustive", None, &CheckKind::DISCRETE);
    for n in 1..=2usize {
        let states: Vec<State> = State::all(n)?.collect();
        let battery = gen::schedule_battery(n, BATTERY_SIZE);
        let rows = 1usize << n;
        let networks = 1u64 << (n * rows);
        let results: Vec<CheckResult> = (0..networks)
            .into_par_iter()
            .flat_map_iter(|code| {
                let images = (0..rows)
                    .map(|row| ((code >> (row * n)) as u32) & ((1 << n) - 1))
                    .collect();
                let net = Network::from_images(n, images).expect("valid images");
                let mut out = Vec::new();
                for mu in &states {
                    for (b, alpha) in battery.iter().enumerate() {
                        let mut run = |r: Result<CheckResult>, kind| {
                            out.push(r.unwrap_or_else(|e| error_result(kind, e)));
                        };
                        for by in [1, 3] {
                            run(
                                checker.progressive_shift_discrete(alpha, by),
                                CheckKind::ProgressiveShiftDiscrete,
                            );
                        }
                        run(
                            checker.consistency_discrete(&net, mu, alpha),
                            CheckKind::ConsistencyDiscrete,
                        );
                        for shift in 0..=5 {
                            run(
                                checker.composition_shift_discrete(&net, mu, alpha, shift, k_max),
                                CheckKind::CompositionShiftDiscrete,
                            );
                        }
                        for restart in -1..=5 {
                            run(
                                checker.composition_restart_discrete(&net, mu, alpha, restart, k_max),
                                CheckKind::CompositionRestartDiscrete,
                            );
                        }
                        for k in [0u64, 1, 2, 5] {
                            let other = &battery[(b + 1 + k as usize) % battery.len()];
                            let beta = alpha.splice(k + 1, other).expect("same width");
                            run(
                                checker.causality_discrete(&net, mu, alpha, &beta, k),
                                CheckKind::CausalityDiscrete,
                            );
                        }
                    }
                }
                out
            })
            .collect();
        for r in results {
            report.record(r);
        }
    }
    Ok(report)
}
