//! Discrete-time and real-time signals.
//!
//! Discrete signals live on `N₋ = {-1, 0, 1, …}`. Real signals are
//! right-continuous, piecewise constant, and switch only on the instants of
//! a [`TimeSeq`]:
//!
//! `x(t) = μ` for `t < t_0`, `x(t) = v_k` for `t ∈ [t_k, t_{k+1})`.
//!
//! Both are eventually periodic by construction.

use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::seq::UltimatelyPeriodic;
use crate::state::State;
use crate::time::{integer, midpoint, rational_lcm, Rational, TimeSeq};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DiscreteSignal {
    initial: State,
    values: UltimatelyPeriodic<State>,
}

impl DiscreteSignal {
    /// `initial` is the value at `k = -1`; `transient` and then `cycle`
    /// repeated give the values at `k = 0, 1, …`.
    pub fn new(initial: State, transient: Vec<State>, cycle: Vec<State>) -> Result<DiscreteSignal> {
        for v in transient.iter().chain(&cycle) {
            Error::check_width(initial.width(), v.width())?;
        }
        Ok(DiscreteSignal {
            initial,
            values: UltimatelyPeriodic::new(transient, cycle)?,
        })
    }

    pub(crate) fn from_parts(initial: State, values: UltimatelyPeriodic<State>) -> DiscreteSignal {
        DiscreteSignal { initial, values }
    }

    pub fn constant(value: State) -> DiscreteSignal {
        DiscreteSignal {
            initial: value,
            values: UltimatelyPeriodic::constant(value),
        }
    }

    pub fn width(&self) -> usize {
        self.initial.width()
    }

    pub fn initial(&self) -> State {
        self.initial
    }

    pub fn transient(&self) -> &[State] {
        self.values.prefix()
    }

    pub fn cycle(&self) -> &[State] {
        self.values.period()
    }

    pub fn values(&self) -> &UltimatelyPeriodic<State> {
        &self.values
    }

    /// `x̂(k)` for `k >= -1`.
    pub fn at(&self, k: i64) -> Result<State> {
        match k {
            -1 => Ok(self.initial),
            k if k >= 0 => Ok(*self.values.at(k as u64)),
            k => Err(Error::Domain(format!("discrete time {k} is below -1"))),
        }
    }

    fn value(&self, k: u64) -> State {
        *self.values.at(k)
    }

    /// `σ̂^{k'}(x̂)`: the signal `k ↦ x̂(k + k')`.
    pub fn shift(&self, by: u64) -> DiscreteSignal {
        let initial = if by == 0 { self.initial } else { self.value(by - 1) };
        DiscreteSignal {
            initial,
            values: self.values.shift(by),
        }
    }

    pub fn eventually_constant(&self) -> Option<State> {
        constant_cycle(self.cycle())
    }

    /// `(k, x̂(k))` for `k = -1..=k_max`.
    pub fn trace(&self, k_max: i64) -> Vec<TracePoint> {
        (-1..=k_max)
            .map(|k| TracePoint {
                k,
                state: self.at(k).expect("k >= -1"),
            })
            .collect()
    }
}

fn constant_cycle(cycle: &[State]) -> Option<State> {
    let first = cycle[0];
    cycle.iter().all(|v| *v == first).then_some(first)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct TracePoint {
    pub k: i64,
    pub state: State,
}

/// A right-continuous piecewise-constant signal `R → B^n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RealSignal {
    initial: State,
    times: TimeSeq,
    values: UltimatelyPeriodic<State>,
}

impl RealSignal {
    /// `initial` before `t_0`; `transient` then `cycle` repeated give the
    /// values taken at `t_0, t_1, …`.
    pub fn new(initial: State, times: TimeSeq, transient: Vec<State>, cycle: Vec<State>) -> Result<RealSignal> {
        for v in transient.iter().chain(&cycle) {
            Error::check_width(initial.width(), v.width())?;
        }
        Ok(RealSignal {
            initial,
            times,
            values: UltimatelyPeriodic::new(transient, cycle)?,
        })
    }

    pub(crate) fn from_parts(initial: State, times: TimeSeq, values: UltimatelyPeriodic<State>) -> RealSignal {
        RealSignal { initial, times, values }
    }

    pub fn width(&self) -> usize {
        self.initial.width()
    }

    pub fn initial(&self) -> State {
        self.initial
    }

    pub fn times(&self) -> &TimeSeq {
        &self.times
    }

    pub fn values(&self) -> &UltimatelyPeriodic<State> {
        &self.values
    }

    /// `x(t_k)`.
    pub fn value(&self, k: u64) -> State {
        *self.values.at(k)
    }

    /// `x(t)`.
    pub fn at(&self, t: &Rational) -> State {
        match self.times.interval_index(t) {
            None => self.initial,
            Some(k) => self.value(k),
        }
    }

    /// `x(t - 0)`: the value on a small enough interval `(t - ε, t)`.
    pub fn left_limit(&self, t: &Rational) -> State {
        match self.times.count_below(t) {
            0 => self.initial,
            c => self.value(c - 1),
        }
    }

    /// `σ^{t'}(x)`: equal to `x` from `t'` on, held at `x(t' - 0)` before.
    pub fn shift(&self, from: &Rational) -> RealSignal {
        let dropped = self.times.count_below(from);
        RealSignal {
            initial: self.left_limit(from),
            times: self.times.drop_first(dropped),
            values: self.values.shift(dropped),
        }
    }

    /// Index from which both the values repeat and the instants are
    /// arithmetic.
    fn periodic_from(&self) -> u64 {
        (self.values.prefix().len() as u64).max(self.times.arithmetic_from())
    }

    /// The instant from which `x` is periodic with period [`Self::period`].
    pub fn periodic_since(&self) -> Rational {
        self.times.at(self.periodic_from())
    }

    /// A real period of `x` on `[periodic_since, ∞)`.
    pub fn period(&self) -> Rational {
        self.times.step() * integer(self.values.period().len() as i64)
    }

    /// The repeating block of values starting at [`Self::periodic_since`].
    pub fn cycle_from_periodic_start(&self) -> Vec<State> {
        self.values.shift(self.periodic_from()).period().to_vec()
    }

    pub fn eventually_constant(&self) -> Option<State> {
        constant_cycle(self.values.period())
    }

    /// Maximal constant pieces of `x` that start at or before `until`, in
    /// order. The last piece's `to` is `None` when `x` never changes again.
    pub fn intervals(&self, until: &Rational) -> Vec<Interval> {
        let mut out = Vec::new();
        let mut current = Interval {
            from: None,
            to: None,
            state: self.initial,
        };
        let seen = self.times.count_up_to(until);
        for k in 0..seen {
            let v = self.value(k);
            if v != current.state {
                let t = self.times.at(k);
                current.to = Some(t);
                out.push(current);
                current = Interval {
                    from: Some(t),
                    to: None,
                    state: v,
                };
            }
        }
        // Past the transient, one full cycle decides whether x changes again.
        let limit = seen.max(self.values.prefix().len() as u64) + self.values.period().len() as u64;
        current.to = (seen..limit)
            .find(|&k| self.value(k) != current.state)
            .map(|k| self.times.at(k));
        out.push(current);
        out
    }

    /// Trace entries for JSON export: the pieces up to `until` followed by
    /// a marker describing the periodic tail.
    pub fn trace(&self, until: &Rational) -> Vec<TraceEntry> {
        let mut entries: Vec<TraceEntry> = self.intervals(until).into_iter().map(TraceEntry::Interval).collect();
        entries.push(TraceEntry::Cycle(CycleMarker {
            cycle_from: self.periodic_since(),
            step: self.times.step(),
            cycle: self.cycle_from_periodic_start(),
        }));
        entries
    }
}

/// `state` on `[from, to)`; `None` bounds stand for `-∞` and `+∞`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interval {
    pub from: Option<Rational>,
    pub to: Option<Rational>,
    pub state: State,
}

impl Serialize for Interval {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(3))?;
        map.serialize_entry("from", &self.from.map(|t| t.to_string()))?;
        map.serialize_entry("to", &self.to.map(|t| t.to_string()))?;
        map.serialize_entry("state", &self.state)?;
        map.end()
    }
}

/// From `cycle_from` on, the signal takes the values of `cycle` on
/// consecutive instants spaced by `step`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleMarker {
    pub cycle_from: Rational,
    pub step: Rational,
    pub cycle: Vec<State>,
}

impl Serialize for CycleMarker {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(3))?;
        map.serialize_entry("cycle_from", &self.cycle_from.to_string())?;
        map.serialize_entry("step", &self.step.to_string())?;
        map.serialize_entry("cycle", &self.cycle)?;
        map.end()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum TraceEntry {
    Interval(Interval),
    Cycle(CycleMarker),
}

/// Probe instants on which two real signals are compared.
///
/// Past `max(periodic_since)` both signals repeat with period
/// `L = lcm(period_x, period_y)`, so agreement on `(-∞, H]` with
/// `H = max(periodic_since) + L` implies agreement everywhere. Both signals
/// are constant between consecutive switch instants, so it is enough to look
/// at every switch instant up to `H`, the midpoints between them, and one
/// instant before the earliest switch.
pub fn probe_points(x: &RealSignal, y: &RealSignal) -> Vec<Rational> {
    let horizon = x.periodic_since().max(y.periodic_since()) + rational_lcm(&x.period(), &y.period());
    let mut instants: Vec<Rational> = x
        .times
        .instants_up_to(&horizon)
        .chain(y.times.instants_up_to(&horizon))
        .collect();
    instants.sort();
    instants.dedup();
    let earliest = x.times.first().min(y.times.first());
    let mut probes = Vec::with_capacity(2 * instants.len() + 1);
    probes.push(earliest - integer(1));
    for (i, t) in instants.iter().enumerate() {
        if i > 0 {
            probes.push(midpoint(&instants[i - 1], t));
        }
        probes.push(*t);
    }
    probes
}

/// First probe instant at which `x` and `y` differ.
pub fn first_difference(x: &RealSignal, y: &RealSignal) -> Result<Option<Rational>> {
    Error::check_width(x.width(), y.width())?;
    Ok(probe_points(x, y).into_iter().find(|t| x.at(t) != y.at(t)))
}

/// Semantic equality: same value at every real instant, regardless of
/// representation.
pub fn signals_equal(x: &RealSignal, y: &RealSignal) -> Result<bool> {
    Ok(first_difference(x, y)?.is_none())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::time::parse_rational;

    fn s(text: &str) -> State {
        text.parse().unwrap()
    }

    fn r(text: &str) -> Rational {
        parse_rational(text).unwrap()
    }

    fn states(list: &[&str]) -> Vec<State> {
        list.iter().map(|t| s(t)).collect()
    }

    #[test]
    fn discrete_eval() {
        let x = DiscreteSignal::new(s("00"), states(&["01"]), states(&["01"])).unwrap();
        assert_eq!(x.at(-1).unwrap(), s("00"));
        assert_eq!(x.at(5).unwrap(), s("01"));
        assert!(matches!(x.at(-2), Err(Error::Domain(_))));
    }

    #[test]
    fn discrete_shift_examples() {
        let (a, b, c, d) = (s("000"), s("100"), s("010"), s("001"));
        let x = DiscreteSignal::new(s("111"), vec![a, b, c], vec![d]).unwrap();
        assert_eq!(x.shift(0), x);
        assert_eq!(x.shift(1).initial(), a);
        let y = x.shift(2);
        assert_eq!(y.initial(), b);
        let expected = [c, d, d, d];
        for (k, v) in expected.iter().enumerate() {
            assert_eq!(y.at(k as i64).unwrap(), *v);
        }
        for k in -1..=10 {
            assert_eq!(y.at(k).unwrap(), x.at(k + 2).unwrap());
        }
    }

    fn sample() -> RealSignal {
        // 00 before 0, then 11, 10, 11, 10, … on 0, 1, 2, …
        RealSignal::new(s("00"), "0;+1".parse().unwrap(), vec![], states(&["11", "10"])).unwrap()
    }

    #[test]
    fn real_eval() {
        let x = sample();
        assert_eq!(x.at(&r("-1")), s("00"));
        assert_eq!(x.at(&r("0")), s("11"));
        assert_eq!(x.at(&r("5/2")), s("11"));
        assert_eq!(x.at(&r("7/2")), s("10"));
    }

    #[test]
    fn left_limits() {
        let x = sample();
        assert_eq!(x.left_limit(&r("0")), s("00"));
        assert_eq!(x.left_limit(&r("-7")), s("00"));
        assert_eq!(x.left_limit(&r("1/2")), x.at(&r("1/2")));
        // switch at 1: left limit is the previous value
        assert_eq!(x.left_limit(&r("1")), s("11"));
        assert_ne!(x.left_limit(&r("1")), x.at(&r("1")));
        assert_eq!(x.left_limit(&r("1")), x.at(&r("1/2")));
    }

    #[test]
    fn real_shift_cases() {
        let x = RealSignal::new(
            s("00"),
            "0,1,3/2;+1".parse().unwrap(),
            states(&["10", "11"]),
            states(&["01", "11"]),
        )
        .unwrap();
        let below = x.shift(&r("-2"));
        assert!(signals_equal(&below, &x).unwrap());

        // at a switch instant
        let y = x.shift(&r("3/2"));
        assert_eq!(y.at(&r("-100")), x.value(1));
        assert_eq!(y.at(&r("1")), x.value(1));
        assert_eq!(y.at(&r("3/2")), x.at(&r("3/2")));

        // strictly inside (t_1, t_2)
        let z = x.shift(&r("5/4"));
        assert_eq!(z.at(&r("0")), x.value(1));
        for t in ["5/4", "3/2", "2", "5/2", "3", "7"] {
            assert_eq!(z.at(&r(t)), x.at(&r(t)));
        }
    }

    #[test]
    fn equality_is_semantic() {
        let x = sample();
        assert!(signals_equal(&x, &x).unwrap());

        let flipped = RealSignal::new(s("00"), "0;+1".parse().unwrap(), vec![], states(&["11", "11"])).unwrap();
        assert!(!signals_equal(&x, &flipped).unwrap());

        // extra switch instant at 1/2 carrying the same value
        let split = RealSignal::new(
            s("00"),
            "0,1/2,1;+1".parse().unwrap(),
            states(&["11", "11"]),
            states(&["10", "11"]),
        )
        .unwrap();
        assert!(signals_equal(&x, &split).unwrap());

        let narrow = RealSignal::new(s("000"), "0;+1".parse().unwrap(), vec![], states(&["110"])).unwrap();
        assert!(signals_equal(&x, &narrow).is_err());
    }

    #[test]
    fn equality_sees_late_differences() {
        // same up to t = 6, then the tail differs
        let a = RealSignal::new(s("0"), "0;+1".parse().unwrap(), states(&["1"; 6]), states(&["0"])).unwrap();
        let b = RealSignal::new(s("0"), "0;+1".parse().unwrap(), states(&["1"; 6]), states(&["1"])).unwrap();
        assert_eq!(first_difference(&a, &b).unwrap(), Some(r("6")));
    }

    #[test]
    fn eventual_constancy() {
        let stable = RealSignal::new(s("00"), "0;+1".parse().unwrap(), vec![], states(&["01"])).unwrap();
        assert_eq!(stable.eventually_constant(), Some(s("01")));
        assert_eq!(sample().eventually_constant(), None);
        let doubled = RealSignal::new(s("00"), "0;+1".parse().unwrap(), vec![], states(&["01", "01"])).unwrap();
        assert_eq!(doubled.eventually_constant(), Some(s("01")));
    }

    #[test]
    fn intervals_merge_equal_values() {
        let stable = RealSignal::new(s("00"), "0;+1".parse().unwrap(), states(&["01", "01"]), states(&["01"])).unwrap();
        let pieces = stable.intervals(&r("5"));
        assert_eq!(
            pieces,
            vec![
                Interval {
                    from: None,
                    to: Some(r("0")),
                    state: s("00")
                },
                Interval {
                    from: Some(r("0")),
                    to: None,
                    state: s("01")
                },
            ]
        );
        let before = stable.intervals(&r("-1"));
        assert_eq!(
            before,
            vec![Interval {
                from: None,
                to: Some(r("0")),
                state: s("00")
            }]
        );

        let osc = sample().intervals(&r("3/2"));
        assert_eq!(osc.len(), 3);
        assert_eq!(
            osc[2],
            Interval {
                from: Some(r("1")),
                to: Some(r("2")),
                state: s("10")
            }
        );
    }

    #[test]
    fn trace_json_shape() {
        let json = serde_json::to_value(sample().trace(&r("1"))).unwrap();
        assert_eq!(
            json,
            serde_json::json!([
                {"from": null, "to": "0", "state": "00"},
                {"from": "0", "to": "1", "state": "11"},
                {"from": "1", "to": "2", "state": "10"},
                {"cycle_from": "0", "step": "1", "cycle": ["11", "10"]},
            ])
        );
        let d = DiscreteSignal::constant(s("1"));
        assert_eq!(
            serde_json::to_value(d.trace(0)).unwrap(),
            serde_json::json!([{"k": -1, "state": "1"}, {"k": 0, "state": "1"}])
        );
    }
}
