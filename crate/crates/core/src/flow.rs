//! Evolution functions: the state reached from `μ` under a computation
//! function, in discrete time (`Φ̂^α(μ, k)`) and real time (`Φ^ρ(μ, t)`).

use std::collections::HashMap;

use crate::compfn::{DiscreteCompFn, RealCompFn};
use crate::error::{Error, Result};
use crate::network::Network;
use crate::seq::UltimatelyPeriodic;
use crate::signal::{DiscreteSignal, RealSignal};
use crate::state::State;
use crate::time::Rational;

/// A schedule in either time domain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Schedule {
    Discrete(DiscreteCompFn),
    Real(RealCompFn),
}

impl Schedule {
    pub fn width(&self) -> usize {
        match self {
            Schedule::Discrete(a) => a.width(),
            Schedule::Real(r) => r.width(),
        }
    }

    pub fn is_progressive(&self) -> bool {
        match self {
            Schedule::Discrete(a) => a.is_progressive(),
            Schedule::Real(r) => r.is_progressive(),
        }
    }
}

/// The flow produced by a [`FlowQuery`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Flow {
    Discrete(DiscreteSignal),
    Real(RealSignal),
}

/// Network, initial state and schedule with agreeing widths.
#[derive(Clone, Debug)]
pub struct FlowQuery {
    net: Network,
    initial: State,
    schedule: Schedule,
}

impl FlowQuery {
    pub fn new(net: Network, initial: State, schedule: Schedule) -> Result<FlowQuery> {
        Error::check_width(net.width(), initial.width())?;
        Error::check_width(net.width(), schedule.width())?;
        Ok(FlowQuery { net, initial, schedule })
    }

    pub fn net(&self) -> &Network {
        &self.net
    }

    pub fn initial(&self) -> State {
        self.initial
    }

    pub fn schedule(&self) -> &Schedule {
        &self.schedule
    }

    pub fn flow(&self) -> Flow {
        match &self.schedule {
            Schedule::Discrete(a) => Flow::Discrete(flow_signal(&self.net, self.initial, a)),
            Schedule::Real(r) => Flow::Real(real_signal(&self.net, self.initial, r)),
        }
    }
}

fn check_widths(net: &Network, mu: &State, schedule_width: usize) -> Result<()> {
    Error::check_width(net.width(), mu.width())?;
    Error::check_width(net.width(), schedule_width)
}

/// `Φ̂^α(μ, k)`: `μ` at `k = -1`, otherwise `Φ^{α^0 … α^k}(μ)`.
pub fn discrete_flow_at(net: &Network, mu: &State, alpha: &DiscreteCompFn, k: i64) -> Result<State> {
    check_widths(net, mu, alpha.width())?;
    if k < -1 {
        return Err(Error::Domain(format!("discrete time {k} is below -1")));
    }
    let mut state = *mu;
    for j in 0..=k {
        state = net.step(&alpha.at(j as u64), &state);
    }
    Ok(state)
}

/// The whole discrete flow `Φ̂^α(μ, ·)` as an eventually periodic signal.
///
/// Non-progressive schedules are accepted; the result is then a semi-flow.
pub fn discrete_flow_signal(net: &Network, mu: &State, alpha: &DiscreteCompFn) -> Result<DiscreteSignal> {
    check_widths(net, mu, alpha.width())?;
    Ok(flow_signal(net, *mu, alpha))
}

/// Once the prefix of `α` is used up, the step `k → k + 1` depends only on
/// `(x̂(k), (k + 1 - |prefix|) mod |period|)`. The first repeated pair closes
/// the cycle.
fn flow_signal(net: &Network, mu: State, alpha: &DiscreteCompFn) -> DiscreteSignal {
    let prefix_len = alpha.prefix().len() as u64;
    let period_len = alpha.period().len() as u64;
    let mut values: Vec<State> = Vec::new();
    let mut seen: HashMap<(State, u64), usize> = HashMap::new();
    let mut state = mu;
    let mut k: u64 = 0;
    loop {
        state = net.step(&alpha.at(k), &state);
        values.push(state);
        if k + 1 >= prefix_len {
            let key = (state, (k + 1 - prefix_len) % period_len);
            if let Some(&start) = seen.get(&key) {
                let mut cycle = values.split_off(start);
                cycle.pop();
                let values = UltimatelyPeriodic::new(values, cycle).expect("cycle is nonempty");
                return DiscreteSignal::from_parts(mu, values);
            }
            seen.insert(key, k as usize);
        }
        k += 1;
    }
}

/// `Φ^ρ(μ, t)`: `μ` before `t_0`, `Φ̂^α(μ, k)` on `[t_k, t_{k+1})`.
pub fn real_flow_at(net: &Network, mu: &State, rho: &RealCompFn, t: &Rational) -> Result<State> {
    check_widths(net, mu, rho.width())?;
    match rho.times().interval_index(t) {
        None => Ok(*mu),
        Some(k) => discrete_flow_at(net, mu, rho.values(), k as i64),
    }
}

/// The whole real flow `Φ^ρ(μ, ·)`: switch instants of `ρ`, values of the
/// discrete flow under the values of `ρ`.
pub fn real_flow_signal(net: &Network, mu: &State, rho: &RealCompFn) -> Result<RealSignal> {
    check_widths(net, mu, rho.width())?;
    Ok(real_signal(net, *mu, rho))
}

fn real_signal(net: &Network, mu: State, rho: &RealCompFn) -> RealSignal {
    let discrete = flow_signal(net, mu, rho.values());
    RealSignal::from_parts(mu, rho.times().clone(), discrete.values().clone())
}

/// `Φ^k(μ)`, the `k`-fold synchronous iterate.
pub fn synchronous_iterate(net: &Network, mu: &State, k: u64) -> Result<State> {
    Error::check_width(net.width(), mu.width())?;
    let mut state = *mu;
    for _ in 0..k {
        state = net.image(&state);
    }
    Ok(state)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::time::{integer, parse_rational};

    fn s(text: &str) -> State {
        text.parse().unwrap()
    }

    fn alpha(text: &str) -> DiscreteCompFn {
        text.parse().unwrap()
    }

    fn r(text: &str) -> Rational {
        parse_rational(text).unwrap()
    }

    #[test]
    fn discrete_at_examples() {
        let net = Network::example();
        let mu = s("00");
        assert_eq!(discrete_flow_at(&net, &mu, &alpha(";(11)"), -1).unwrap(), mu);
        assert_eq!(discrete_flow_at(&net, &mu, &alpha("11;(00)"), 0).unwrap(), s("11"));
        // 00 -(11)-> 11 -(01)-> 10 -(01)-> 11
        assert_eq!(discrete_flow_at(&net, &mu, &alpha("11;(01)"), 2).unwrap(), s("11"));
        assert!(discrete_flow_at(&net, &mu, &alpha(";(11)"), -2).is_err());
        assert!(discrete_flow_at(&net, &s("000"), &alpha(";(11)"), 0).is_err());
    }

    #[test]
    fn stable_scenario_signal() {
        let x = discrete_flow_signal(&Network::example(), &s("00"), &alpha("01;(11)")).unwrap();
        assert_eq!(x.initial(), s("00"));
        for k in 0..20 {
            assert_eq!(x.at(k).unwrap(), s("01"));
        }
        assert_eq!(x.eventually_constant(), Some(s("01")));
    }

    #[test]
    fn unstable_scenario_signal() {
        let x = discrete_flow_signal(&Network::example(), &s("10"), &alpha(";(01)")).unwrap();
        assert_eq!(x.eventually_constant(), None);
        let mut cycle = x.cycle().to_vec();
        cycle.sort();
        assert_eq!(cycle, vec![s("10"), s("11")]);
        assert_eq!(x.at(0).unwrap(), s("11"));
        assert_eq!(x.at(1).unwrap(), s("10"));
    }

    #[test]
    fn identity_flow_is_constant() {
        let net = Network::identity(3).unwrap();
        let mu = s("101");
        let x = discrete_flow_signal(&net, &mu, &alpha("100,010;(011,111)")).unwrap();
        for k in -1..30 {
            assert_eq!(x.at(k).unwrap(), mu);
        }
    }

    #[test]
    fn signal_agrees_with_pointwise_evaluation() {
        let net = Network::example();
        for a in ["10,01,00;(01,10,11)", ";(00)", "11;(10)", ";(01,01,10)"] {
            let a = alpha(a);
            for mu in State::all(2).unwrap() {
                let x = discrete_flow_signal(&net, &mu, &a).unwrap();
                for k in -1..40 {
                    assert_eq!(x.at(k).unwrap(), discrete_flow_at(&net, &mu, &a, k).unwrap());
                }
            }
        }
    }

    #[test]
    fn real_flow_examples() {
        let net = Network::example();
        let mu = s("00");
        let stable = RealCompFn::new(alpha("01;(11)"), "0;+1".parse().unwrap());
        assert_eq!(real_flow_at(&net, &mu, &stable, &r("-1")).unwrap(), mu);
        assert_eq!(real_flow_at(&net, &mu, &stable, &r("100")).unwrap(), s("01"));

        let rho = RealCompFn::new(alpha(";(11,01)"), "0;+1".parse().unwrap());
        assert_eq!(real_flow_at(&net, &mu, &rho, &r("3/2")).unwrap(), s("10"));

        let x = real_flow_signal(&net, &mu, &stable).unwrap();
        assert_eq!(x.left_limit(&integer(0)), mu);
        assert_eq!(x.eventually_constant(), Some(s("01")));

        let unstable = RealCompFn::new(alpha(";(01)"), "0;+1".parse().unwrap());
        let y = real_flow_signal(&net, &s("10"), &unstable).unwrap();
        assert_eq!(y.eventually_constant(), None);
    }

    #[test]
    fn synchronous_examples() {
        let net = Network::example();
        assert_eq!(synchronous_iterate(&net, &s("00"), 0).unwrap(), s("00"));
        assert_eq!(synchronous_iterate(&net, &s("00"), 2).unwrap(), s("10"));
        let sync = DiscreteCompFn::synchronous(2).unwrap();
        for k in 0..10 {
            assert_eq!(
                synchronous_iterate(&net, &s("00"), k + 1).unwrap(),
                discrete_flow_at(&net, &s("00"), &sync, k as i64).unwrap()
            );
        }
    }

    #[test]
    fn query_checks_widths() {
        let net = Network::example();
        assert!(FlowQuery::new(net.clone(), s("000"), Schedule::Discrete(alpha(";(11)"))).is_err());
        assert!(FlowQuery::new(net.clone(), s("00"), Schedule::Discrete(alpha(";(111)"))).is_err());
        let q = FlowQuery::new(net, s("00"), Schedule::Discrete(alpha("01;(11)"))).unwrap();
        match q.flow() {
            Flow::Discrete(x) => assert_eq!(x.eventually_constant(), Some(s("01"))),
            Flow::Real(_) => unreachable!(),
        }
    }
}
