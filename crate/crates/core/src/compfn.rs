//! Computation functions: the schedules saying when, and on which
//! coordinates, `Φ` is computed.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::seq::UltimatelyPeriodic;
use crate::state::State;
use crate::time::{Rational, TimeSeq};

/// Discrete-time computation function `α : N → B^n`, eventually periodic.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DiscreteCompFn {
    width: usize,
    masks: UltimatelyPeriodic<State>,
}

impl DiscreteCompFn {
    pub fn new(prefix: Vec<State>, period: Vec<State>) -> Result<DiscreteCompFn> {
        let width = period
            .first()
            .ok_or_else(|| Error::format("computation function", "period must not be empty"))?
            .width();
        for m in prefix.iter().chain(&period) {
            Error::check_width(width, m.width())?;
        }
        Ok(DiscreteCompFn {
            width,
            masks: UltimatelyPeriodic::new(prefix, period)?,
        })
    }

    /// `α^k = λ` for every `k`.
    pub fn constant(mask: State) -> DiscreteCompFn {
        DiscreteCompFn {
            width: mask.width(),
            masks: UltimatelyPeriodic::constant(mask),
        }
    }

    /// The synchronous schedule: every coordinate at every step.
    pub fn synchronous(width: usize) -> Result<DiscreteCompFn> {
        Ok(DiscreteCompFn::constant(State::ones(width)?))
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn prefix(&self) -> &[State] {
        self.masks.prefix()
    }

    pub fn period(&self) -> &[State] {
        self.masks.period()
    }

    pub fn masks(&self) -> &UltimatelyPeriodic<State> {
        &self.masks
    }

    /// `α^k`.
    pub fn at(&self, k: u64) -> State {
        *self.masks.at(k)
    }

    /// `σ̂^{k'}(α)`: the schedule `k ↦ α^{k + k'}`.
    pub fn shift(&self, by: u64) -> DiscreteCompFn {
        DiscreteCompFn {
            width: self.width,
            masks: self.masks.shift(by),
        }
    }

    /// Every coordinate is computed infinitely often. Only the period
    /// matters: the prefix contributes finitely many instants.
    pub fn is_progressive(&self) -> bool {
        let covered = self.period().iter().fold(0u32, |acc, m| acc | m.bits());
        covered == State::ones(self.width).expect("valid width").bits()
    }

    /// Coordinates that the periodic tail never computes.
    pub fn starved_coords(&self) -> Vec<usize> {
        let covered = self.period().iter().fold(0u32, |acc, m| acc | m.bits());
        (1..=self.width).filter(|i| (covered >> (i - 1)) & 1 == 0).collect()
    }

    /// Replaces `α^k` for `k >= keep` with the masks of `tail`.
    pub fn splice(&self, keep: u64, tail: &DiscreteCompFn) -> Result<DiscreteCompFn> {
        Error::check_width(self.width, tail.width)?;
        let mut prefix: Vec<State> = (0..keep).map(|k| self.at(k)).collect();
        prefix.extend_from_slice(tail.prefix());
        DiscreteCompFn::new(prefix, tail.period().to_vec())
    }
}

impl fmt::Display for DiscreteCompFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |ms: &[State]| ms.iter().map(|m| m.to_string()).collect::<Vec<_>>().join(",");
        write!(f, "{};({})", join(self.prefix()), join(self.period()))
    }
}

/// Textual form `"m0,m1,…;(p0,p1,…)"`, e.g. `"10,01;(11)"`. The prefix may
/// be empty: `";(11)"`.
impl FromStr for DiscreteCompFn {
    type Err = Error;

    fn from_str(text: &str) -> Result<DiscreteCompFn> {
        let bad = |why: &str| Error::format("computation function", format!("{text:?}: {why}"));
        let (head, tail) = text
            .split_once(';')
            .ok_or_else(|| bad("expected \"prefix;(period)\""))?;
        let period = tail
            .trim()
            .strip_prefix('(')
            .and_then(|t| t.strip_suffix(')'))
            .ok_or_else(|| bad("period must be parenthesised"))?;
        let masks = |list: &str| -> Result<Vec<State>> {
            list.split(',')
                .map(str::trim)
                .filter(|m| !m.is_empty())
                .map(str::parse)
                .collect()
        };
        let period = masks(period)?;
        if period.is_empty() {
            return Err(bad("period must not be empty"));
        }
        DiscreteCompFn::new(masks(head)?, period)
    }
}

/// Real-time computation function `ρ`: `ρ(t_k) = α^k` on the instants of
/// `times`, `(0,…,0)` everywhere else.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RealCompFn {
    values: DiscreteCompFn,
    times: TimeSeq,
}

impl RealCompFn {
    pub fn new(values: DiscreteCompFn, times: TimeSeq) -> RealCompFn {
        RealCompFn { values, times }
    }

    pub fn width(&self) -> usize {
        self.values.width()
    }

    pub fn values(&self) -> &DiscreteCompFn {
        &self.values
    }

    pub fn times(&self) -> &TimeSeq {
        &self.times
    }

    /// `ρ(t)`.
    pub fn at(&self, t: &Rational) -> State {
        match self.times.index_of(t) {
            Some(k) => self.values.at(k),
            None => State::zeros(self.width()).expect("valid width"),
        }
    }

    fn drop_first(&self, count: u64) -> RealCompFn {
        RealCompFn {
            values: self.values.shift(count),
            times: self.times.drop_first(count),
        }
    }

    /// `σ^{t'}(ρ) = ρ · χ_[t', ∞)`: instants before `t'` discarded, `t'`
    /// itself kept.
    pub fn shift(&self, from: &Rational) -> RealCompFn {
        self.drop_first(self.times.count_below(from))
    }

    /// `ρ · χ_(t', ∞)`: only instants strictly after `t'` kept.
    pub fn restrict_after(&self, after: &Rational) -> RealCompFn {
        self.drop_first(self.times.count_up_to(after))
    }

    /// The support of every coordinate is unbounded above. Since the
    /// instants are strictly increasing and unbounded, this is the same as
    /// the discrete values being progressive.
    pub fn is_progressive(&self) -> bool {
        self.values.is_progressive()
    }
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
    fn eval_examples() {
        let a = alpha("10;(01)");
        assert_eq!(a.at(0), s("10"));
        assert_eq!(a.at(7), s("01"));
        assert_eq!(alpha(";(10,01)").at(3), s("01"));
    }

    #[test]
    fn text_round_trip() {
        for text in ["10,01;(11)", ";(11)", ";(10,01)", "0;(1)"] {
            assert_eq!(alpha(text).to_string(), text);
        }
        assert_eq!(alpha(" 10 , 01 ; ( 11 ) ").to_string(), "10,01;(11)");
        assert!("10;()".parse::<DiscreteCompFn>().is_err());
        assert!("10;11".parse::<DiscreteCompFn>().is_err());
        assert!("10,011;(11)".parse::<DiscreteCompFn>().is_err());
        assert!("1x;(11)".parse::<DiscreteCompFn>().is_err());
    }

    #[test]
    fn shift_examples() {
        let a = alpha("10;(01)");
        for k in 0..10 {
            assert_eq!(a.shift(0).at(k), a.at(k));
        }
        let b = alpha(";(10,01)").shift(1);
        let expected = alpha(";(01,10)");
        for k in 0..=10 {
            assert_eq!(b.at(k), expected.at(k));
        }
        let c = alpha("10,01;(11)").shift(3);
        for k in 0..10 {
            assert_eq!(c.at(k), s("11"));
        }
    }

    #[test]
    fn progressiveness_examples() {
        assert!(alpha(";(11)").is_progressive());
        assert!(!alpha(";(10)").is_progressive());
        assert_eq!(alpha(";(10)").starved_coords(), vec![2]);
        assert!(alpha("01;(10,01)").is_progressive());
        assert!(!alpha("01;(10)").is_progressive());
    }

    #[test]
    fn rho_eval_examples() {
        let rho = RealCompFn::new(alpha("01;(11)"), TimeSeq::arithmetic(integer(0), integer(1)).unwrap());
        assert_eq!(rho.at(&r("0")), s("01"));
        assert_eq!(rho.at(&r("-5")), s("00"));
        assert_eq!(rho.at(&r("1/2")), s("00"));

        let rho = RealCompFn::new(alpha(";(10,01)"), "1;+1".parse().unwrap());
        // instants 1, 2, 3, …; t = 3 is t_2
        assert_eq!(rho.at(&r("3")), s("10"));
        assert_eq!(rho.at(&r("2")), s("01"));
    }

    #[test]
    fn rho_shift_examples() {
        let rho = RealCompFn::new(alpha("10,01;(11,10)"), "0,1/2;+1".parse().unwrap());
        let same = rho.shift(&r("-3"));
        for t in ["-1", "0", "1/2", "3/2", "5/2", "7/2"] {
            assert_eq!(same.at(&r(t)), rho.at(&r(t)));
        }

        let rho = RealCompFn::new(alpha(";(10,01,11)"), "1,2,3;+1".parse().unwrap());
        let shifted = rho.shift(&r("5/2"));
        assert_eq!(shifted.times().first(), r("3"));
        for t in ["1", "2"] {
            assert!(shifted.at(&r(t)).is_zero());
        }
        for t in ["3", "4", "5", "6"] {
            assert_eq!(shifted.at(&r(t)), rho.at(&r(t)));
        }

        let rho = RealCompFn::new(alpha(";(11)"), "0;+1".parse().unwrap());
        assert_eq!(rho.shift(&r("0")), rho);
    }

    #[test]
    fn restrict_after_drops_the_cut_instant() {
        let rho = RealCompFn::new(alpha(";(10,01)"), "0;+1".parse().unwrap());
        let open = rho.restrict_after(&r("1"));
        assert!(open.at(&r("1")).is_zero());
        assert_eq!(open.at(&r("2")), rho.at(&r("2")));
        let closed = rho.shift(&r("1"));
        assert_eq!(closed.at(&r("1")), rho.at(&r("1")));
    }

    #[test]
    fn real_progressiveness_reduces_to_values() {
        let ts: TimeSeq = "0;+1".parse().unwrap();
        assert!(RealCompFn::new(alpha(";(11)"), ts.clone()).is_progressive());
        assert!(!RealCompFn::new(alpha(";(01)"), ts.clone()).is_progressive());
        // coordinate 2 infinitely often, coordinate 1 too
        assert!(RealCompFn::new(alpha("10;(01,10)"), ts).is_progressive());
    }

    #[test]
    fn splice_keeps_head() {
        let a = alpha("10,01;(11)");
        let tail = alpha("00;(01,10)");
        let b = a.splice(2, &tail).unwrap();
        assert_eq!(b.at(0), a.at(0));
        assert_eq!(b.at(1), a.at(1));
        assert_eq!(b.at(2), s("00"));
        assert_eq!(b.at(3), s("01"));
    }
}
