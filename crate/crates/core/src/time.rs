//! Exact time instants and the strictly increasing, unbounded instant
//! sequences `t_0 < t_1 < …` that real-time schedules and signals switch on.

use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use num_traits::Signed;

use crate::error::{Error, Result};

/// Exact time instant, always in lowest terms.
pub type Rational = Ratio<i64>;

pub fn rational(numer: i64, denom: i64) -> Rational {
    Ratio::new(numer, denom)
}

pub fn integer(value: i64) -> Rational {
    Ratio::from_integer(value)
}

/// Parses `"a/b"` or a plain integer.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let text = text.trim();
    let bad = |why: &str| Error::format("rational", format!("{text:?}: {why}"));
    let (numer, denom) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let numer: i64 = numer.parse().map_err(|_| bad("bad numerator"))?;
    let denom: i64 = denom.parse().map_err(|_| bad("bad denominator"))?;
    if denom == 0 {
        return Err(bad("zero denominator"));
    }
    Ok(Ratio::new(numer, denom))
}

/// `floor(q)` as an integer.
fn floor_int(q: &Rational) -> i64 {
    q.floor().to_integer()
}

fn ceil_int(q: &Rational) -> i64 {
    q.ceil().to_integer()
}

/// Least common multiple of two positive rationals: the smallest positive
/// rational that is an integer multiple of both.
pub fn rational_lcm(a: &Rational, b: &Rational) -> Rational {
    use num_integer::Integer;
    Ratio::new(a.numer().lcm(b.numer()), a.denom().gcd(b.denom()))
}

/// A strictly increasing sequence of instants, unbounded above.
///
/// The first `explicit.len()` instants are listed; after the last listed one
/// the sequence continues in steps of `step`:
/// `t_k = last + (k - explicit.len() + 1) * step`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TimeSeq {
    explicit: Vec<Rational>,
    step: Rational,
}

impl TimeSeq {
    pub fn new(explicit: Vec<Rational>, step: Rational) -> Result<TimeSeq> {
        if explicit.is_empty() {
            return Err(Error::format("time sequence", "no explicit instants"));
        }
        if let Some(w) = explicit.windows(2).find(|w| w[0] >= w[1]) {
            return Err(Error::format(
                "time sequence",
                format!("instants not strictly increasing: {} then {}", w[0], w[1]),
            ));
        }
        if !step.is_positive() {
            return Err(Error::format(
                "time sequence",
                format!("tail step must be positive, got {step}"),
            ));
        }
        Ok(TimeSeq { explicit, step })
    }

    /// `start, start + step, start + 2·step, …`
    pub fn arithmetic(start: Rational, step: Rational) -> Result<TimeSeq> {
        TimeSeq::new(vec![start], step)
    }

    pub fn explicit(&self) -> &[Rational] {
        &self.explicit
    }

    pub fn step(&self) -> Rational {
        self.step
    }

    fn last(&self) -> Rational {
        *self.explicit.last().expect("nonempty")
    }

    pub fn first(&self) -> Rational {
        self.explicit[0]
    }

    pub fn at(&self, k: u64) -> Rational {
        let len = self.explicit.len() as u64;
        if k < len {
            self.explicit[k as usize]
        } else {
            self.last() + self.step * integer((k - len + 1) as i64)
        }
    }

    /// Number of instants strictly before `t`.
    pub fn count_below(&self, t: &Rational) -> u64 {
        let last = self.last();
        if *t <= last {
            self.explicit.partition_point(|x| x < t) as u64
        } else {
            // tail instants last + m·step with m ≥ 1 and last + m·step < t
            let q = (*t - last) / self.step;
            self.explicit.len() as u64 + (ceil_int(&q) - 1) as u64
        }
    }

    /// Number of instants at or before `t`.
    pub fn count_up_to(&self, t: &Rational) -> u64 {
        let last = self.last();
        if *t < last {
            self.explicit.partition_point(|x| x <= t) as u64
        } else {
            let q = (*t - last) / self.step;
            self.explicit.len() as u64 + floor_int(&q) as u64
        }
    }

    /// The `k` with `t ∈ [t_k, t_{k+1})`, or `None` when `t < t_0`.
    pub fn interval_index(&self, t: &Rational) -> Option<u64> {
        self.count_up_to(t).checked_sub(1)
    }

    /// The `k` with `t_k == t`, if any.
    pub fn index_of(&self, t: &Rational) -> Option<u64> {
        let last = self.last();
        if *t <= last {
            self.explicit.binary_search(t).ok().map(|i| i as u64)
        } else {
            let q = (*t - last) / self.step;
            q.is_integer()
                .then(|| self.explicit.len() as u64 - 1 + q.to_integer() as u64)
        }
    }

    /// The sequence with its first `count` instants removed.
    pub fn drop_first(&self, count: u64) -> TimeSeq {
        let len = self.explicit.len() as u64;
        let explicit = if count < len {
            self.explicit[count as usize..].to_vec()
        } else {
            vec![self.at(count)]
        };
        TimeSeq {
            explicit,
            step: self.step,
        }
    }

    /// Index from which the sequence is purely arithmetic: every `t_k` with
    /// `k >= arithmetic_from()` satisfies `t_{k+1} = t_k + step`.
    pub fn arithmetic_from(&self) -> u64 {
        self.explicit.len() as u64 - 1
    }

    /// Instants `t_k <= horizon`, in order.
    pub fn instants_up_to(&self, horizon: &Rational) -> impl Iterator<Item = Rational> + '_ {
        let count = self.count_up_to(horizon);
        (0..count).map(move |k| self.at(k))
    }
}

impl fmt::Display for TimeSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let head: Vec<String> = self.explicit.iter().map(|t| t.to_string()).collect();
        write!(f, "{};+{}", head.join(","), self.step)
    }
}

/// Textual form `"t0,t1,…;+Δ"`, e.g. `"0,1,3/2;+1/2"`.
impl FromStr for TimeSeq {
    type Err = Error;

    fn from_str(text: &str) -> Result<TimeSeq> {
        let (head, tail) = text
            .split_once(';')
            .ok_or_else(|| Error::format("time sequence", format!("{text:?}: expected \"t0,t1,…;+step\"")))?;
        let tail = tail.trim();
        let step = tail
            .strip_prefix('+')
            .ok_or_else(|| Error::format("time sequence", format!("{tail:?}: step must start with '+'")))?;
        let step = parse_rational(step)?;
        let explicit = head
            .split(',')
            .map(|t| t.trim())
            .filter(|t| !t.is_empty())
            .map(parse_rational)
            .collect::<Result<Vec<_>>>()?;
        TimeSeq::new(explicit, step)
    }
}

/// A rational strictly between `a` and `b`.
pub fn midpoint(a: &Rational, b: &Rational) -> Rational {
    (*a + *b) / integer(2)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(text: &str) -> Rational {
        parse_rational(text).unwrap()
    }

    #[test]
    fn parse_forms() {
        assert_eq!(r("3/2"), rational(3, 2));
        assert_eq!(r("-4"), integer(-4));
        assert_eq!(r("4/-6"), rational(-2, 3));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
        assert!(parse_rational("").is_err());
    }

    #[test]
    fn lowest_terms() {
        let q = r("6/4");
        assert_eq!((*q.numer(), *q.denom()), (3, 2));
    }

    #[test]
    fn instants_and_tail() {
        let ts: TimeSeq = "0,1,3/2;+1/2".parse().unwrap();
        let got: Vec<_> = (0..6).map(|k| ts.at(k)).collect();
        assert_eq!(got, [r("0"), r("1"), r("3/2"), r("2"), r("5/2"), r("3")]);
        assert_eq!(ts.to_string(), "0,1,3/2;+1/2");
    }

    #[test]
    fn rejects_malformed() {
        assert!("1,1;+1".parse::<TimeSeq>().is_err());
        assert!("2,1;+1".parse::<TimeSeq>().is_err());
        assert!("0;+0".parse::<TimeSeq>().is_err());
        assert!("0;+-1".parse::<TimeSeq>().is_err());
        assert!("0;1".parse::<TimeSeq>().is_err());
        assert!(";+1".parse::<TimeSeq>().is_err());
        assert!("0".parse::<TimeSeq>().is_err());
    }

    #[test]
    fn counting_matches_enumeration() {
        let ts: TimeSeq = "-1,0,1/3;+2/3".parse().unwrap();
        let instants: Vec<_> = (0..40).map(|k| ts.at(k)).collect();
        let mut probes: Vec<Rational> = instants.clone();
        probes.extend(instants.windows(2).map(|w| midpoint(&w[0], &w[1])));
        probes.push(r("-5"));
        for t in probes.iter().filter(|t| **t < instants[30]) {
            let below = instants.iter().filter(|x| *x < t).count() as u64;
            let upto = instants.iter().filter(|x| *x <= t).count() as u64;
            assert_eq!(ts.count_below(t), below, "t={t}");
            assert_eq!(ts.count_up_to(t), upto, "t={t}");
            let idx = instants.iter().position(|x| x == t).map(|i| i as u64);
            assert_eq!(ts.index_of(t), idx, "t={t}");
        }
    }

    #[test]
    fn interval_index_before_start() {
        let ts = TimeSeq::arithmetic(integer(0), integer(1)).unwrap();
        assert_eq!(ts.interval_index(&r("-1/2")), None);
        assert_eq!(ts.interval_index(&r("0")), Some(0));
        assert_eq!(ts.interval_index(&r("5/2")), Some(2));
    }

    #[test]
    fn drop_first_reindexes() {
        let ts: TimeSeq = "1,2,3;+1".parse().unwrap();
        for c in 0..6 {
            let d = ts.drop_first(c);
            for k in 0..10 {
                assert_eq!(d.at(k), ts.at(k + c));
            }
        }
    }

    #[test]
    fn lcm_of_rationals() {
        assert_eq!(rational_lcm(&r("3/7"), &r("5/11")), r("15"));
        assert_eq!(rational_lcm(&r("1/2"), &r("1/3")), r("1"));
        assert_eq!(rational_lcm(&r("2"), &r("3")), r("6"));
        assert_eq!(rational_lcm(&r("1/2"), &r("1/4")), r("1/2"));
    }
}
