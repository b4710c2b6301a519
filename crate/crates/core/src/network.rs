//! The generating function `Φ : B^n → B^n` and its asynchronous application
//! operators.

use crate::error::{Error, Result};
use crate::state::{State, MAX_WIDTH};

/// `Φ = (Φ_1, …, Φ_n)` stored as explicit truth tables.
///
/// Entry `μ.index()` of `images` holds the bit pattern of `Φ(μ)`; bit `i - 1`
/// of that pattern is row `μ` of the truth table of `Φ_i`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Network {
    width: usize,
    images: Vec<u32>,
}

impl Network {
    /// Builds `Φ` by evaluating `f` on every state.
    pub fn from_fn(width: usize, mut f: impl FnMut(State) -> State) -> Result<Network> {
        if width == 0 || width > MAX_WIDTH {
            return Err(Error::Capacity {
                width,
                limit: MAX_WIDTH,
            });
        }
        let mut images = Vec::with_capacity(1 << width);
        for mu in State::all(width)? {
            let image = f(mu);
            Error::check_width(width, image.width())?;
            images.push(image.bits());
        }
        Ok(Network { width, images })
    }

    /// Builds `Φ` from `n` truth tables, table `i - 1` giving `Φ_i`.
    pub fn from_tables(tables: &[Vec<bool>]) -> Result<Network> {
        let width = tables.len();
        if width == 0 || width > MAX_WIDTH {
            return Err(Error::Capacity {
                width,
                limit: MAX_WIDTH,
            });
        }
        let rows = 1usize << width;
        if let Some(bad) = tables.iter().find(|t| t.len() != rows) {
            return Err(Error::Domain(format!(
                "truth table has {} entries, expected {rows}",
                bad.len()
            )));
        }
        let images = (0..rows)
            .map(|row| {
                tables
                    .iter()
                    .enumerate()
                    .fold(0u32, |acc, (i, t)| acc | ((t[row] as u32) << i))
            })
            .collect();
        Ok(Network { width, images })
    }

    /// Builds `Φ` from the image pattern of every state, in index order.
    pub fn from_images(width: usize, images: Vec<u32>) -> Result<Network> {
        if width == 0 || width > MAX_WIDTH {
            return Err(Error::Capacity {
                width,
                limit: MAX_WIDTH,
            });
        }
        if images.len() != 1 << width {
            return Err(Error::Domain(format!(
                "{} images given, expected {}",
                images.len(),
                1usize << width
            )));
        }
        if images.iter().any(|&b| b >> width != 0) {
            return Err(Error::Domain("image pattern wider than the network".into()));
        }
        Ok(Network { width, images })
    }

    pub fn identity(width: usize) -> Result<Network> {
        Network::from_fn(width, |mu| mu)
    }

    pub fn constant(value: State) -> Result<Network> {
        Network::from_fn(value.width(), |_| value)
    }

    /// The two-gate circuit used as the running example: `(0,1)` is its only
    /// fixed point and `(1,0)`, `(1,1)` exchange under the second coordinate.
    ///
    /// `Φ(μ) = (μ1 ∪ !μ1·!μ2, !μ1 ∪ μ1·!μ2)`, i.e. `00→11`, `01→01`,
    /// `10→11`, `11→10`.
    pub fn example() -> Network {
        Network::from_fn(2, |mu| {
            let (m1, m2) = (mu.get(1), mu.get(2));
            State::from_bools(&[m1 || (!m1 && !m2), !m1 || (m1 && !m2)]).unwrap()
        })
        .expect("width 2 is valid")
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    /// Truth table of coordinate `i` (1-based), indexed by state.
    pub fn table(&self, i: usize) -> Vec<bool> {
        assert!(i >= 1 && i <= self.width, "coordinate {i} out of range");
        self.images.iter().map(|b| (b >> (i - 1)) & 1 == 1).collect()
    }

    fn check(&self, s: &State) -> Result<()> {
        Error::check_width(self.width, s.width())
    }

    /// `Φ(μ)`: every coordinate computed.
    pub fn apply_full(&self, mu: &State) -> Result<State> {
        self.check(mu)?;
        Ok(self.image(mu))
    }

    pub(crate) fn image(&self, mu: &State) -> State {
        State::from_index(self.width, self.images[mu.index()])
    }

    /// `Φ^λ(μ)`: coordinate `i` becomes `Φ_i(μ)` where `λ_i = 1` and keeps
    /// `μ_i` where `λ_i = 0`.
    pub fn apply_masked(&self, lambda: &State, mu: &State) -> Result<State> {
        self.check(lambda)?;
        self.check(mu)?;
        Ok(self.step(lambda, mu))
    }

    pub(crate) fn step(&self, lambda: &State, mu: &State) -> State {
        let image = self.images[mu.index()];
        let mask = lambda.bits();
        State::from_index(self.width, (mu.bits() & !mask) | (image & mask))
    }

    /// `Φ^{λ0 λ1 … λk}(μ)`: the masks applied left to right. The empty word
    /// leaves `μ` unchanged.
    pub fn apply_word(&self, word: &[State], mu: &State) -> Result<State> {
        self.check(mu)?;
        word.iter().try_fold(*mu, |acc, lambda| {
            self.check(lambda)?;
            Ok(self.step(lambda, &acc))
        })
    }

    /// Coordinates that a full computation would change at `μ`.
    pub fn changed_coords(&self, mu: &State) -> Result<Vec<usize>> {
        self.check(mu)?;
        let diff = self.image(mu).bits() ^ mu.bits();
        Ok((1..=self.width).filter(|i| (diff >> (i - 1)) & 1 == 1).collect())
    }

    pub fn is_fixed_point(&self, mu: &State) -> Result<bool> {
        Ok(self.apply_full(mu)? == *mu)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(text: &str) -> State {
        text.parse().unwrap()
    }

    #[test]
    fn example_transitions() {
        let net = Network::example();
        assert_eq!(net.apply_full(&s("00")).unwrap(), s("11"));
        assert_eq!(net.apply_full(&s("01")).unwrap(), s("01"));
        assert_eq!(net.apply_full(&s("10")).unwrap(), s("11"));
        assert_eq!(net.apply_full(&s("11")).unwrap(), s("10"));
    }

    #[test]
    fn identity_full() {
        let net = Network::identity(3).unwrap();
        for mu in State::all(3).unwrap() {
            assert_eq!(net.apply_full(&mu).unwrap(), mu);
        }
    }

    #[test]
    fn masked_scenarios_from_origin() {
        let net = Network::example();
        let origin = s("00");
        assert_eq!(net.apply_masked(&s("00"), &origin).unwrap(), s("00"));
        assert_eq!(net.apply_masked(&s("10"), &origin).unwrap(), s("10"));
        assert_eq!(net.apply_masked(&s("01"), &origin).unwrap(), s("01"));
        assert_eq!(net.apply_masked(&s("11"), &origin).unwrap(), s("11"));
    }

    #[test]
    fn word_examples() {
        let net = Network::example();
        assert_eq!(net.apply_word(&[], &s("00")).unwrap(), s("00"));
        // 00 -(10)-> 10 -(01)-> 11
        assert_eq!(net.apply_word(&[s("10"), s("01")], &s("00")).unwrap(), s("11"));
        for lambda in State::all(2).unwrap() {
            for mu in State::all(2).unwrap() {
                assert_eq!(
                    net.apply_word(&[lambda, s("00")], &mu).unwrap(),
                    net.apply_masked(&lambda, &mu).unwrap()
                );
            }
        }
    }

    #[test]
    fn width_mismatch_is_dimension_error() {
        let net = Network::example();
        assert_eq!(
            net.apply_full(&s("010")),
            Err(Error::Dimension { expected: 2, found: 3 })
        );
        assert!(net.apply_masked(&s("1"), &s("00")).is_err());
        assert!(net.apply_word(&[s("101")], &s("00")).is_err());
    }

    #[test]
    fn tables_round_trip() {
        let net = Network::example();
        let tables: Vec<_> = (1..=2).map(|i| net.table(i)).collect();
        assert_eq!(Network::from_tables(&tables).unwrap(), net);
        assert!(Network::from_tables(&[vec![true; 3]]).is_err());
        assert!(Network::from_images(2, vec![0, 1, 2]).is_err());
        assert!(Network::from_images(1, vec![0, 2]).is_err());
    }

    #[test]
    fn changed_coords_of_example() {
        let net = Network::example();
        assert_eq!(net.changed_coords(&s("00")).unwrap(), vec![1, 2]);
        assert_eq!(net.changed_coords(&s("01")).unwrap(), Vec::<usize>::new());
        assert_eq!(net.changed_coords(&s("11")).unwrap(), vec![2]);
    }
}
