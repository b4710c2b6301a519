//! Eventually periodic sequences indexed by `N`.

use crate::error::{Error, Result};

/// `prefix` followed by `period` repeated forever.
///
/// Element `k` is `prefix[k]` for `k < prefix.len()` and
/// `period[(k - prefix.len()) % period.len()]` afterwards. The period is
/// never empty, so every index is defined.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct UltimatelyPeriodic<T> {
    prefix: Vec<T>,
    period: Vec<T>,
}

impl<T: Clone> UltimatelyPeriodic<T> {
    pub fn new(prefix: Vec<T>, period: Vec<T>) -> Result<Self> {
        if period.is_empty() {
            return Err(Error::Domain("period must not be empty".into()));
        }
        Ok(UltimatelyPeriodic { prefix, period })
    }

    pub fn constant(value: T) -> Self {
        UltimatelyPeriodic {
            prefix: Vec::new(),
            period: vec![value],
        }
    }

    pub fn prefix(&self) -> &[T] {
        &self.prefix
    }

    pub fn period(&self) -> &[T] {
        &self.period
    }

    pub fn at(&self, k: u64) -> &T {
        let k = k as usize;
        match self.prefix.get(k) {
            Some(v) => v,
            None => &self.period[(k - self.prefix.len()) % self.period.len()],
        }
    }

    /// The sequence `k ↦ self.at(k + by)`.
    ///
    /// Consumed prefix entries are dropped; once the prefix is exhausted the
    /// period is rotated instead.
    pub fn shift(&self, by: u64) -> Self {
        let by = by as usize;
        if by <= self.prefix.len() {
            UltimatelyPeriodic {
                prefix: self.prefix[by..].to_vec(),
                period: self.period.clone(),
            }
        } else {
            let r = (by - self.prefix.len()) % self.period.len();
            let mut period = self.period.clone();
            period.rotate_left(r);
            UltimatelyPeriodic {
                prefix: Vec::new(),
                period,
            }
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = &T> + '_ {
        self.prefix.iter().chain(self.period.iter().cycle())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lookup_follows_prefix_then_period() {
        let s = UltimatelyPeriodic::new(vec![9], vec![1, 2, 3]).unwrap();
        let got: Vec<_> = (0..8).map(|k| *s.at(k)).collect();
        assert_eq!(got, [9, 1, 2, 3, 1, 2, 3, 1]);
        let via_iter: Vec<_> = s.iter().take(8).copied().collect();
        assert_eq!(via_iter, got);
    }

    #[test]
    fn empty_period_rejected() {
        assert!(UltimatelyPeriodic::<u8>::new(vec![1], vec![]).is_err());
    }

    #[test]
    fn shift_rotates_after_prefix() {
        let s = UltimatelyPeriodic::new(vec![7, 8], vec![1, 2, 3]).unwrap();
        for by in 0..12 {
            let t = s.shift(by);
            for k in 0..20 {
                assert_eq!(t.at(k), s.at(k + by), "by={by} k={k}");
            }
        }
        assert_eq!(s.shift(3).prefix(), &[] as &[i32]);
        assert_eq!(s.shift(3).period(), &[2, 3, 1]);
    }
}
