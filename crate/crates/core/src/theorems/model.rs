//! The flow operations the checkers evaluate, behind a trait so that
//! deliberately broken variants can be substituted to show that every
//! check can fail.

use serde::Serialize;

use crate::compfn::{DiscreteCompFn, RealCompFn};
use crate::error::Result;
use crate::flow;
use crate::network::Network;
use crate::signal::{DiscreteSignal, RealSignal};
use crate::state::State;
use crate::time::Rational;

pub trait FlowModel: Sync {
    fn discrete_at(&self, net: &Network, mu: &State, alpha: &DiscreteCompFn, k: i64) -> Result<State> {
        flow::discrete_flow_at(net, mu, alpha, k)
    }

    fn discrete_signal(&self, net: &Network, mu: &State, alpha: &DiscreteCompFn) -> Result<DiscreteSignal> {
        flow::discrete_flow_signal(net, mu, alpha)
    }

    fn real_at(&self, net: &Network, mu: &State, rho: &RealCompFn, t: &Rational) -> Result<State> {
        flow::real_flow_at(net, mu, rho, t)
    }

    fn real_signal(&self, net: &Network, mu: &State, rho: &RealCompFn) -> Result<RealSignal> {
        flow::real_flow_signal(net, mu, rho)
    }

    fn shift_schedule(&self, alpha: &DiscreteCompFn, by: u64) -> DiscreteCompFn {
        alpha.shift(by)
    }

    fn shift_rho(&self, rho: &RealCompFn, from: &Rational) -> RealCompFn {
        rho.shift(from)
    }

    fn restrict_after(&self, rho: &RealCompFn, after: &Rational) -> RealCompFn {
        rho.restrict_after(after)
    }

    fn shift_signal(&self, x: &DiscreteSignal, by: u64) -> DiscreteSignal {
        x.shift(by)
    }

    fn shift_real_signal(&self, x: &RealSignal, from: &Rational) -> RealSignal {
        x.shift(from)
    }

    fn left_limit(&self, x: &RealSignal, t: &Rational) -> State {
        x.left_limit(t)
    }

    fn is_progressive(&self, alpha: &DiscreteCompFn) -> bool {
        alpha.is_progressive()
    }

    fn is_progressive_real(&self, rho: &RealCompFn) -> bool {
        self.is_progressive(rho.values())
    }
}

/// The crate's own flow implementation.
#[derive(Clone, Copy, Debug, Default)]
pub struct Reference;

impl FlowModel for Reference {}

/// Broken flow implementations used as negative controls.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mutant {
    /// `Φ̂^α(μ, -1)` reported as `Φ(μ)` instead of `μ`.
    InitialIsImage,
    /// Left limits reported as the value at the instant itself.
    LeftLimitIsValue,
    /// Discrete schedule shift drops one mask too many.
    ShiftOffByOne,
    /// Real schedule shift drops the instant at the cut.
    ShiftRealOpen,
    /// Restriction to `(t', ∞)` keeps the instant at `t'`.
    RestrictClosed,
    /// The state at step `k` also applies `α^{k+1}`.
    Lookahead,
    /// The real state at `t` is read from the next switch interval.
    RealLookahead,
    /// Progressiveness also counts masks of the prefix.
    ProgressivePrefix,
}

impl Mutant {
    pub const ALL: [Mutant; 8] = [
        Mutant::InitialIsImage,
        Mutant::LeftLimitIsValue,
        Mutant::ShiftOffByOne,
        Mutant::ShiftRealOpen,
        Mutant::RestrictClosed,
        Mutant::Lookahead,
        Mutant::RealLookahead,
        Mutant::ProgressivePrefix,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Mutant::InitialIsImage => "initial-is-image",
            Mutant::LeftLimitIsValue => "left-limit-is-value",
            Mutant::ShiftOffByOne => "shift-off-by-one",
            Mutant::ShiftRealOpen => "shift-real-open",
            Mutant::RestrictClosed => "restrict-closed",
            Mutant::Lookahead => "lookahead",
            Mutant::RealLookahead => "real-lookahead",
            Mutant::ProgressivePrefix => "progressive-prefix",
        }
    }

    pub fn from_name(name: &str) -> Option<Mutant> {
        Mutant::ALL.into_iter().find(|m| m.name() == name)
    }
}

impl FlowModel for Mutant {
    fn discrete_at(&self, net: &Network, mu: &State, alpha: &DiscreteCompFn, k: i64) -> Result<State> {
        match self {
            Mutant::InitialIsImage if k == -1 => {
                flow::discrete_flow_at(net, mu, alpha, -1)?;
                net.apply_full(mu)
            }
            Mutant::Lookahead if k >= 0 => flow::discrete_flow_at(net, mu, alpha, k + 1),
            _ => flow::discrete_flow_at(net, mu, alpha, k),
        }
    }

    fn real_at(&self, net: &Network, mu: &State, rho: &RealCompFn, t: &Rational) -> Result<State> {
        match (self, rho.times().interval_index(t)) {
            (Mutant::RealLookahead, Some(k)) => {
                flow::real_flow_at(net, mu, rho, t)?;
                flow::discrete_flow_at(net, mu, rho.values(), k as i64 + 1)
            }
            _ => flow::real_flow_at(net, mu, rho, t),
        }
    }

    fn shift_schedule(&self, alpha: &DiscreteCompFn, by: u64) -> DiscreteCompFn {
        match self {
            Mutant::ShiftOffByOne => alpha.shift(by + 1),
            _ => alpha.shift(by),
        }
    }

    fn shift_rho(&self, rho: &RealCompFn, from: &Rational) -> RealCompFn {
        match self {
            Mutant::ShiftRealOpen => rho.restrict_after(from),
            _ => rho.shift(from),
        }
    }

    fn restrict_after(&self, rho: &RealCompFn, after: &Rational) -> RealCompFn {
        match self {
            Mutant::RestrictClosed => rho.shift(after),
            _ => rho.restrict_after(after),
        }
    }

    fn left_limit(&self, x: &RealSignal, t: &Rational) -> State {
        match self {
            Mutant::LeftLimitIsValue => x.at(t),
            _ => x.left_limit(t),
        }
    }

    fn is_progressive(&self, alpha: &DiscreteCompFn) -> bool {
        match self {
            Mutant::ProgressivePrefix => {
                let covered = alpha
                    .prefix()
                    .iter()
                    .chain(alpha.period())
                    .fold(0u32, |acc, m| acc | m.bits());
                covered.count_ones() as usize == alpha.width()
            }
            _ => alpha.is_progressive(),
        }
    }
}
