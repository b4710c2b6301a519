//! One checker per law. Each evaluates both sides of an identity on a
//! single instance through a [`FlowModel`] and reports the first place they
//! disagree.

use std::fmt;

use serde::Serialize;

use super::model::{FlowModel, Mutant, Reference};
use crate::compfn::{DiscreteCompFn, RealCompFn};
use crate::error::{Error, Result};
use crate::netparse::{print_network, NetworkFile};
use crate::network::Network;
use crate::signal::{first_difference, probe_points};
use crate::state::State;
use crate::time::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CheckKind {
    ProgressiveShiftDiscrete,
    ProgressiveShiftReal,
    ConsistencyDiscrete,
    ConsistencyReal,
    CompositionShiftDiscrete,
    CompositionShiftReal,
    CompositionRestartDiscrete,
    CompositionRestartReal,
    CausalityDiscrete,
    CausalityReal,
}

impl CheckKind {
    pub const ALL: [CheckKind; 10] = [
        CheckKind::ProgressiveShiftDiscrete,
        CheckKind::ProgressiveShiftReal,
        CheckKind::ConsistencyDiscrete,
        CheckKind::ConsistencyReal,
        CheckKind::CompositionShiftDiscrete,
        CheckKind::CompositionShiftReal,
        CheckKind::CompositionRestartDiscrete,
        CheckKind::CompositionRestartReal,
        CheckKind::CausalityDiscrete,
        CheckKind::CausalityReal,
    ];

    pub const DISCRETE: [CheckKind; 5] = [
        CheckKind::ProgressiveShiftDiscrete,
        CheckKind::ConsistencyDiscrete,
        CheckKind::CompositionShiftDiscrete,
        CheckKind::CompositionRestartDiscrete,
        CheckKind::CausalityDiscrete,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            CheckKind::ProgressiveShiftDiscrete => "progressive-shift-discrete",
            CheckKind::ProgressiveShiftReal => "progressive-shift-real",
            CheckKind::ConsistencyDiscrete => "consistency-discrete",
            CheckKind::ConsistencyReal => "consistency-real",
            CheckKind::CompositionShiftDiscrete => "composition-shift-discrete",
            CheckKind::CompositionShiftReal => "composition-shift-real",
            CheckKind::CompositionRestartDiscrete => "composition-restart-discrete",
            CheckKind::CompositionRestartReal => "composition-restart-real",
            CheckKind::CausalityDiscrete => "causality-discrete",
            CheckKind::CausalityReal => "causality-real",
        }
    }

    /// The broken model this check is expected to catch.
    pub fn negative_control(&self) -> Mutant {
        match self {
            CheckKind::ProgressiveShiftDiscrete | CheckKind::ProgressiveShiftReal => Mutant::ProgressivePrefix,
            CheckKind::ConsistencyDiscrete => Mutant::InitialIsImage,
            CheckKind::ConsistencyReal => Mutant::LeftLimitIsValue,
            CheckKind::CompositionShiftDiscrete | CheckKind::CompositionRestartDiscrete => Mutant::ShiftOffByOne,
            CheckKind::CompositionShiftReal => Mutant::ShiftRealOpen,
            CheckKind::CompositionRestartReal => Mutant::RestrictClosed,
            CheckKind::CausalityDiscrete => Mutant::Lookahead,
            CheckKind::CausalityReal => Mutant::RealLookahead,
        }
    }
}

impl fmt::Display for CheckKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A failing instance, serialized in the textual formats the CLI reads so
/// it can be replayed.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trial: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub network: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub initial: Option<State>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub times: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub other_alpha: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub other_times: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub shift: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub probe: Option<String>,
    pub expected: String,
    pub found: String,
}

impl Counterexample {
    fn instance(net: &Network, mu: &State) -> Counterexample {
        Counterexample {
            network: Some(print_network(&NetworkFile::from_network(net))),
            initial: Some(*mu),
            ..Default::default()
        }
    }

    fn discrete(net: &Network, mu: &State, alpha: &DiscreteCompFn) -> Counterexample {
        Counterexample {
            alpha: Some(alpha.to_string()),
            ..Counterexample::instance(net, mu)
        }
    }

    fn real(net: &Network, mu: &State, rho: &RealCompFn) -> Counterexample {
        Counterexample {
            alpha: Some(rho.values().to_string()),
            times: Some(rho.times().to_string()),
            ..Counterexample::instance(net, mu)
        }
    }

    fn sides(self, expected: impl ToString, found: impl ToString) -> Counterexample {
        Counterexample {
            expected: expected.to_string(),
            found: found.to_string(),
            ..self
        }
    }
}

/// Outcome of running a check on one or more instances.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub check: CheckKind,
    pub passed: bool,
    pub trials: u64,
    pub failures: u64,
    /// The first failing instance; present exactly when `passed` is false.
    pub counterexample: Option<Counterexample>,
}

impl CheckResult {
    pub fn empty(check: CheckKind) -> CheckResult {
        CheckResult {
            check,
            passed: true,
            trials: 0,
            failures: 0,
            counterexample: None,
        }
    }

    fn pass(check: CheckKind) -> CheckResult {
        CheckResult {
            trials: 1,
            ..CheckResult::empty(check)
        }
    }

    pub(crate) fn fail(check: CheckKind, counterexample: Counterexample) -> CheckResult {
        CheckResult {
            check,
            passed: false,
            trials: 1,
            failures: 1,
            counterexample: Some(counterexample),
        }
    }

    /// Adds `other`'s trials; the earlier counterexample wins.
    pub fn absorb(&mut self, other: CheckResult) {
        debug_assert_eq!(self.check, other.check);
        self.trials += other.trials;
        self.failures += other.failures;
        self.passed &= other.passed;
        if self.counterexample.is_none() {
            self.counterexample = other.counterexample;
        }
    }

    pub(crate) fn with_trial(mut self, trial: u64) -> CheckResult {
        if let Some(c) = self.counterexample.as_mut() {
            c.trial.get_or_insert(trial);
        }
        self
    }
}

fn widths(net: &Network, mu: &State, schedule_width: usize) -> Result<()> {
    Error::check_width(net.width(), mu.width())?;
    Error::check_width(net.width(), schedule_width)
}

fn require_progressive(progressive: bool, what: &str) -> Result<()> {
    if progressive {
        Ok(())
    } else {
        Err(Error::Precondition(format!("{what} is not progressive")))
    }
}

/// Runs the checks against one flow model.
pub struct Checker<'m, M: FlowModel + ?Sized = Reference> {
    model: &'m M,
}

impl Checker<'static, Reference> {
    pub fn reference() -> Self {
        Checker { model: &Reference }
    }
}

impl<'m, M: FlowModel + ?Sized> Checker<'m, M> {
    pub fn new(model: &'m M) -> Self {
        Checker { model }
    }

    /// Progressiveness survives a discrete shift, in both directions.
    pub fn progressive_shift_discrete(&self, alpha: &DiscreteCompFn, by: u64) -> Result<CheckResult> {
        let kind = CheckKind::ProgressiveShiftDiscrete;
        let before = self.model.is_progressive(alpha);
        let after = self.model.is_progressive(&self.model.shift_schedule(alpha, by));
        Ok(if before == after {
            CheckResult::pass(kind)
        } else {
            CheckResult::fail(
                kind,
                Counterexample {
                    alpha: Some(alpha.to_string()),
                    shift: Some(by.to_string()),
                    ..Default::default()
                }
                .sides(before, after),
            )
        })
    }

    /// Progressiveness survives a real-time shift, in both directions.
    pub fn progressive_shift_real(&self, rho: &RealCompFn, from: &Rational) -> Result<CheckResult> {
        let kind = CheckKind::ProgressiveShiftReal;
        let before = self.model.is_progressive_real(rho);
        let after = self.model.is_progressive_real(&self.model.shift_rho(rho, from));
        Ok(if before == after {
            CheckResult::pass(kind)
        } else {
            CheckResult::fail(
                kind,
                Counterexample {
                    alpha: Some(rho.values().to_string()),
                    times: Some(rho.times().to_string()),
                    shift: Some(from.to_string()),
                    ..Default::default()
                }
                .sides(before, after),
            )
        })
    }

    /// `Φ̂^α(μ, -1) = μ`.
    pub fn consistency_discrete(&self, net: &Network, mu: &State, alpha: &DiscreteCompFn) -> Result<CheckResult> {
        widths(net, mu, alpha.width())?;
        let kind = CheckKind::ConsistencyDiscrete;
        let got = self.model.discrete_at(net, mu, alpha, -1)?;
        Ok(if got == *mu {
            CheckResult::pass(kind)
        } else {
            CheckResult::fail(
                kind,
                Counterexample {
                    probe: Some("-1".into()),
                    ..Counterexample::discrete(net, mu, alpha)
                }
                .sides(mu, got),
            )
        })
    }

    /// `Φ^ρ(μ, t_0 - 0) = μ`.
    pub fn consistency_real(&self, net: &Network, mu: &State, rho: &RealCompFn) -> Result<CheckResult> {
        widths(net, mu, rho.width())?;
        let kind = CheckKind::ConsistencyReal;
        let t0 = rho.times().first();
        let flow = self.model.real_signal(net, mu, rho)?;
        let got = self.model.left_limit(&flow, &t0);
        Ok(if got == *mu {
            CheckResult::pass(kind)
        } else {
            CheckResult::fail(
                kind,
                Counterexample {
                    probe: Some(t0.to_string()),
                    ..Counterexample::real(net, mu, rho)
                }
                .sides(mu, got),
            )
        })
    }

    /// `σ̂^{k'}(Φ̂^α(μ, ·))(k) = Φ̂^{σ̂^{k'}(α)}(Φ̂^α(μ, k' - 1), k)` for
    /// `k ∈ [-1, k_max]`.
    pub fn composition_shift_discrete(
        &self,
        net: &Network,
        mu: &State,
        alpha: &DiscreteCompFn,
        shift: u64,
        k_max: i64,
    ) -> Result<CheckResult> {
        widths(net, mu, alpha.width())?;
        require_progressive(alpha.is_progressive(), "computation function")?;
        let kind = CheckKind::CompositionShiftDiscrete;
        let flow = self.model.discrete_signal(net, mu, alpha)?;
        let shifted_flow = self.model.shift_signal(&flow, shift);
        let start = self.model.discrete_at(net, mu, alpha, shift as i64 - 1)?;
        let restarted = self
            .model
            .discrete_signal(net, &start, &self.model.shift_schedule(alpha, shift))?;
        for k in -1..=k_max {
            let (lhs, rhs) = (shifted_flow.at(k)?, restarted.at(k)?);
            if lhs != rhs {
                return Ok(CheckResult::fail(
                    kind,
                    Counterexample {
                        shift: Some(shift.to_string()),
                        probe: Some(k.to_string()),
                        ..Counterexample::discrete(net, mu, alpha)
                    }
                    .sides(lhs, rhs),
                ));
            }
        }
        Ok(CheckResult::pass(kind))
    }

    /// `σ^{t'}(Φ^ρ(μ, ·)) = Φ^{σ^{t'}(ρ)}(Φ^ρ(μ, t' - 0), ·)` as signals.
    pub fn composition_shift_real(
        &self,
        net: &Network,
        mu: &State,
        rho: &RealCompFn,
        from: &Rational,
    ) -> Result<CheckResult> {
        widths(net, mu, rho.width())?;
        require_progressive(rho.is_progressive(), "real computation function")?;
        let kind = CheckKind::CompositionShiftReal;
        let flow = self.model.real_signal(net, mu, rho)?;
        let lhs = self.model.shift_real_signal(&flow, from);
        let start = self.model.left_limit(&flow, from);
        let rhs = self.model.real_signal(net, &start, &self.model.shift_rho(rho, from))?;
        Ok(match first_difference(&lhs, &rhs)? {
            None => CheckResult::pass(kind),
            Some(t) => CheckResult::fail(
                kind,
                Counterexample {
                    shift: Some(from.to_string()),
                    probe: Some(t.to_string()),
                    ..Counterexample::real(net, mu, rho)
                }
                .sides(lhs.at(&t), rhs.at(&t)),
            ),
        })
    }

    /// `Φ̂^α(μ, k) = Φ̂^{σ̂^{k'+1}(α)}(Φ̂^α(μ, k'), k - k' - 1)` for
    /// `k ∈ [k', k_max]`.
    pub fn composition_restart_discrete(
        &self,
        net: &Network,
        mu: &State,
        alpha: &DiscreteCompFn,
        restart: i64,
        k_max: i64,
    ) -> Result<CheckResult> {
        widths(net, mu, alpha.width())?;
        if restart < -1 {
            return Err(Error::Precondition(format!("restart time {restart} is below -1")));
        }
        let kind = CheckKind::CompositionRestartDiscrete;
        let flow = self.model.discrete_signal(net, mu, alpha)?;
        let start = self.model.discrete_at(net, mu, alpha, restart)?;
        let restarted =
            self.model
                .discrete_signal(net, &start, &self.model.shift_schedule(alpha, (restart + 1) as u64))?;
        for k in restart..=k_max {
            let (lhs, rhs) = (flow.at(k)?, restarted.at(k - restart - 1)?);
            if lhs != rhs {
                return Ok(CheckResult::fail(
                    kind,
                    Counterexample {
                        shift: Some(restart.to_string()),
                        probe: Some(k.to_string()),
                        ..Counterexample::discrete(net, mu, alpha)
                    }
                    .sides(lhs, rhs),
                ));
            }
        }
        Ok(CheckResult::pass(kind))
    }

    /// `Φ^ρ(μ, t) = Φ^{ρ·χ_(t',∞)}(Φ^ρ(μ, t'), t)` for `t >= t'`.
    pub fn composition_restart_real(
        &self,
        net: &Network,
        mu: &State,
        rho: &RealCompFn,
        restart: &Rational,
    ) -> Result<CheckResult> {
        widths(net, mu, rho.width())?;
        let kind = CheckKind::CompositionRestartReal;
        let flow = self.model.real_signal(net, mu, rho)?;
        let start = self.model.real_at(net, mu, rho, restart)?;
        let restarted = self
            .model
            .real_signal(net, &start, &self.model.restrict_after(rho, restart))?;
        let probes =
            std::iter::once(*restart).chain(probe_points(&flow, &restarted).into_iter().filter(|t| t >= restart));
        for t in probes {
            let (lhs, rhs) = (flow.at(&t), restarted.at(&t));
            if lhs != rhs {
                return Ok(CheckResult::fail(
                    kind,
                    Counterexample {
                        shift: Some(restart.to_string()),
                        probe: Some(t.to_string()),
                        ..Counterexample::real(net, mu, rho)
                    }
                    .sides(lhs, rhs),
                ));
            }
        }
        Ok(CheckResult::pass(kind))
    }

    /// Schedules that agree on `0..=k` give flows that agree up to `k`.
    pub fn causality_discrete(
        &self,
        net: &Network,
        mu: &State,
        alpha: &DiscreteCompFn,
        beta: &DiscreteCompFn,
        k: u64,
    ) -> Result<CheckResult> {
        widths(net, mu, alpha.width())?;
        widths(net, mu, beta.width())?;
        if let Some(j) = (0..=k).find(|&j| alpha.at(j) != beta.at(j)) {
            return Err(Error::Precondition(format!("schedules differ at index {j} <= {k}")));
        }
        let kind = CheckKind::CausalityDiscrete;
        for j in -1..=k as i64 {
            let lhs = self.model.discrete_at(net, mu, alpha, j)?;
            let rhs = self.model.discrete_at(net, mu, beta, j)?;
            if lhs != rhs {
                return Ok(CheckResult::fail(
                    kind,
                    Counterexample {
                        other_alpha: Some(beta.to_string()),
                        shift: Some(k.to_string()),
                        probe: Some(j.to_string()),
                        ..Counterexample::discrete(net, mu, alpha)
                    }
                    .sides(lhs, rhs),
                ));
            }
        }
        Ok(CheckResult::pass(kind))
    }

    /// Schedules that agree on `(-∞, t']` give flows that agree at `t'`.
    pub fn causality_real(
        &self,
        net: &Network,
        mu: &State,
        rho: &RealCompFn,
        other: &RealCompFn,
        until: &Rational,
    ) -> Result<CheckResult> {
        widths(net, mu, rho.width())?;
        widths(net, mu, other.width())?;
        let mut instants: Vec<Rational> = rho
            .times()
            .instants_up_to(until)
            .chain(other.times().instants_up_to(until))
            .collect();
        instants.sort();
        instants.dedup();
        if let Some(t) = instants.iter().find(|t| rho.at(t) != other.at(t)) {
            return Err(Error::Precondition(format!("schedules differ at {t} <= {until}")));
        }
        let kind = CheckKind::CausalityReal;
        let lhs = self.model.real_at(net, mu, rho, until)?;
        let rhs = self.model.real_at(net, mu, other, until)?;
        Ok(if lhs == rhs {
            CheckResult::pass(kind)
        } else {
            CheckResult::fail(
                kind,
                Counterexample {
                    other_alpha: Some(other.values().to_string()),
                    other_times: Some(other.times().to_string()),
                    probe: Some(until.to_string()),
                    ..Counterexample::real(net, mu, rho)
                }
                .sides(lhs, rhs),
            )
        })
    }
}

pub fn check_progressiveness_shift(alpha: &DiscreteCompFn, by: u64) -> Result<CheckResult> {
    Checker::reference().progressive_shift_discrete(alpha, by)
}

pub fn check_progressiveness_shift_real(rho: &RealCompFn, from: &Rational) -> Result<CheckResult> {
    Checker::reference().progressive_shift_real(rho, from)
}

pub fn check_consistency_discrete(net: &Network, mu: &State, alpha: &DiscreteCompFn) -> Result<CheckResult> {
    Checker::reference().consistency_discrete(net, mu, alpha)
}

pub fn check_consistency_real(net: &Network, mu: &State, rho: &RealCompFn) -> Result<CheckResult> {
    Checker::reference().consistency_real(net, mu, rho)
}

pub fn check_composition_shift_discrete(
    net: &Network,
    mu: &State,
    alpha: &DiscreteCompFn,
    shift: u64,
    k_max: i64,
) -> Result<CheckResult> {
    Checker::reference().composition_shift_discrete(net, mu, alpha, shift, k_max)
}

pub fn check_composition_shift_real(
    net: &Network,
    mu: &State,
    rho: &RealCompFn,
    from: &Rational,
) -> Result<CheckResult> {
    Checker::reference().composition_shift_real(net, mu, rho, from)
}

pub fn check_composition_restart_discrete(
    net: &Network,
    mu: &State,
    alpha: &DiscreteCompFn,
    restart: i64,
    k_max: i64,
) -> Result<CheckResult> {
    Checker::reference().composition_restart_discrete(net, mu, alpha, restart, k_max)
}

pub fn check_composition_restart_real(
    net: &Network,
    mu: &State,
    rho: &RealCompFn,
    restart: &Rational,
) -> Result<CheckResult> {
    Checker::reference().composition_restart_real(net, mu, rho, restart)
}

pub fn check_causality_discrete(
    net: &Network,
    mu: &State,
    alpha: &DiscreteCompFn,
    beta: &DiscreteCompFn,
    k: u64,
) -> Result<CheckResult> {
    Checker::reference().causality_discrete(net, mu, alpha, beta, k)
}

pub fn check_causality_real(
    net: &Network,
    mu: &State,
    rho: &RealCompFn,
    other: &RealCompFn,
    until: &Rational,
) -> Result<CheckResult> {
    Checker::reference().causality_real(net, mu, rho, other, until)
}
