//! Points of the state space `B^n`.
//!
//! The same type is used for states, for the masks selecting which
//! coordinates are computed in one step, and for the values of a discrete
//! computation function.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Largest supported width. Networks store explicit `2^n`-entry tables.
pub const MAX_WIDTH: usize = 20;

/// A vector of `n` Boolean coordinates, numbered `1..=n`.
///
/// Coordinate `i` is stored in bit `i - 1` of `bits`, so `bits` doubles as
/// the index of the state in a truth table. Textual form puts coordinate 1
/// first: `"10"` has coordinate 1 set and coordinate 2 clear.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct State {
    width: u8,
    bits: u32,
}

impl State {
    pub fn new(width: usize, bits: u32) -> Result<State> {
        if width == 0 || width > MAX_WIDTH {
            return Err(Error::Capacity {
                width,
                limit: MAX_WIDTH,
            });
        }
        if bits >> width != 0 {
            return Err(Error::Domain(format!(
                "bit pattern {bits:#x} does not fit in width {width}"
            )));
        }
        Ok(State {
            width: width as u8,
            bits,
        })
    }

    /// Builds a state from the pattern `bits`, discarding anything above `width`.
    pub(crate) fn from_index(width: usize, bits: u32) -> State {
        debug_assert!((1..=MAX_WIDTH).contains(&width));
        State {
            width: width as u8,
            bits: bits & Self::full_mask(width),
        }
    }

    pub fn zeros(width: usize) -> Result<State> {
        State::new(width, 0)
    }

    pub fn ones(width: usize) -> Result<State> {
        State::new(width, 0).map(|s| State {
            bits: Self::full_mask(width),
            ..s
        })
    }

    pub fn from_bools(bits: &[bool]) -> Result<State> {
        let pattern = bits
            .iter()
            .enumerate()
            .fold(0u32, |acc, (i, &b)| acc | ((b as u32) << i));
        State::new(bits.len(), pattern)
    }

    fn full_mask(width: usize) -> u32 {
        if width >= 32 {
            u32::MAX
        } else {
            (1u32 << width) - 1
        }
    }

    pub fn width(&self) -> usize {
        self.width as usize
    }

    /// The raw bit pattern; also the index of this state in `0..2^n`.
    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn index(&self) -> usize {
        self.bits as usize
    }

    /// Coordinate `i`, 1-based.
    ///
    /// Panics when `i` is outside `1..=width`.
    pub fn get(&self, i: usize) -> bool {
        assert!(
            i >= 1 && i <= self.width(),
            "coordinate {i} out of range 1..={}",
            self.width
        );
        (self.bits >> (i - 1)) & 1 == 1
    }

    pub fn with(&self, i: usize, value: bool) -> State {
        assert!(i >= 1 && i <= self.width(), "coordinate {i} out of range");
        let bit = 1u32 << (i - 1);
        State {
            width: self.width,
            bits: if value { self.bits | bit } else { self.bits & !bit },
        }
    }

    pub fn flip(&self, i: usize) -> State {
        self.with(i, !self.get(i))
    }

    pub fn is_zero(&self) -> bool {
        self.bits == 0
    }

    pub fn count_ones(&self) -> u32 {
        self.bits.count_ones()
    }

    /// Coordinates set to 1, ascending.
    pub fn ones_iter(&self) -> impl Iterator<Item = usize> + '_ {
        (1..=self.width()).filter(move |&i| self.get(i))
    }

    pub fn and(&self, other: &State) -> Result<State> {
        Error::check_width(self.width(), other.width())?;
        Ok(State::from_index(self.width(), self.bits & other.bits))
    }

    pub fn or(&self, other: &State) -> Result<State> {
        Error::check_width(self.width(), other.width())?;
        Ok(State::from_index(self.width(), self.bits | other.bits))
    }

    pub fn xor(&self, other: &State) -> Result<State> {
        Error::check_width(self.width(), other.width())?;
        Ok(State::from_index(self.width(), self.bits ^ other.bits))
    }

    /// All `2^width` states in index order.
    pub fn all(width: usize) -> Result<impl Iterator<Item = State>> {
        State::zeros(width)?;
        Ok((0..(1u32 << width)).map(move |bits| State::from_index(width, bits)))
    }

    pub fn to_bit_string(&self) -> String {
        (1..=self.width())
            .map(|i| if self.get(i) { '1' } else { '0' })
            .collect()
    }
}

impl fmt::Display for State {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_bit_string())
    }
}

impl fmt::Debug for State {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "State({self})")
    }
}

impl FromStr for State {
    type Err = Error;

    fn from_str(s: &str) -> Result<State> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::format("state", "empty bit string"));
        }
        let bits = s
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(Error::format(
                    "state",
                    format!("unexpected character {other:?} in {s:?}"),
                )),
            })
            .collect::<Result<Vec<_>>>()?;
        State::from_bools(&bits)
    }
}

impl Serialize for State {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_bit_string())
    }
}

impl<'de> Deserialize<'de> for State {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}
