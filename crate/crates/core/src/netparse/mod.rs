//! Network definition files.
//!
//! One equation per line, `x<i> = <expr>`, defining coordinate `i` of `Φ`.
//! Expressions use `0`, `1`, variables `x1 … xn`, and the operators, from
//! tightest to loosest binding:
//!
//! | operator | meaning     |
//! |----------|-------------|
//! | `!`      | complement  |
//! | `&`      | conjunction |
//! | `^`      | exclusive or|
//! | `\|`     | disjunction |
//!
//! `#` starts a comment. The width is the highest variable index that is
//! defined or referenced, unless an `n = <int>` line fixes it.
//!
//! ```text
//! # two-gate example
//! x1 = x1 | !x1 & !x2
//! x2 = !x1 | x1 & !x2
//! ```

mod parser;
mod print;

use thiserror::Error;

use crate::error::{Error, Result};
use crate::network::Network;
use crate::state::{State, MAX_WIDTH};

pub use parser::parse_network;
pub use print::{print_expr, print_network};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum BoolExpr {
    Const(bool),
    /// 1-based coordinate index.
    Var(usize),
    Not(Box<BoolExpr>),
    And(Box<BoolExpr>, Box<BoolExpr>),
    Xor(Box<BoolExpr>, Box<BoolExpr>),
    Or(Box<BoolExpr>, Box<BoolExpr>),
}

impl BoolExpr {
    pub fn var(i: usize) -> BoolExpr {
        BoolExpr::Var(i)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(e: BoolExpr) -> BoolExpr {
        BoolExpr::Not(Box::new(e))
    }

    pub fn and(a: BoolExpr, b: BoolExpr) -> BoolExpr {
        BoolExpr::And(Box::new(a), Box::new(b))
    }

    pub fn xor(a: BoolExpr, b: BoolExpr) -> BoolExpr {
        BoolExpr::Xor(Box::new(a), Box::new(b))
    }

    pub fn or(a: BoolExpr, b: BoolExpr) -> BoolExpr {
        BoolExpr::Or(Box::new(a), Box::new(b))
    }

    /// Highest variable index referenced, 0 if none.
    pub fn max_var(&self) -> usize {
        match self {
            BoolExpr::Const(_) => 0,
            BoolExpr::Var(i) => *i,
            BoolExpr::Not(e) => e.max_var(),
            BoolExpr::And(a, b) | BoolExpr::Xor(a, b) | BoolExpr::Or(a, b) => a.max_var().max(b.max_var()),
        }
    }

    fn eval_unchecked(&self, mu: &State) -> bool {
        match self {
            BoolExpr::Const(b) => *b,
            BoolExpr::Var(i) => mu.get(*i),
            BoolExpr::Not(e) => !e.eval_unchecked(mu),
            BoolExpr::And(a, b) => a.eval_unchecked(mu) & b.eval_unchecked(mu),
            BoolExpr::Xor(a, b) => a.eval_unchecked(mu) ^ b.eval_unchecked(mu),
            BoolExpr::Or(a, b) => a.eval_unchecked(mu) | b.eval_unchecked(mu),
        }
    }
}

/// Evaluates `e` at `μ`.
pub fn eval_expr(e: &BoolExpr, mu: &State) -> Result<bool> {
    let max = e.max_var();
    if max > mu.width() {
        return Err(Error::Domain(format!(
            "variable x{max} out of range for a state of width {}",
            mu.width()
        )));
    }
    if contains_var_zero(e) {
        return Err(Error::Domain("variable x0 is not a coordinate".into()));
    }
    Ok(e.eval_unchecked(mu))
}

fn contains_var_zero(e: &BoolExpr) -> bool {
    match e {
        BoolExpr::Const(_) => false,
        BoolExpr::Var(i) => *i == 0,
        BoolExpr::Not(e) => contains_var_zero(e),
        BoolExpr::And(a, b) | BoolExpr::Xor(a, b) | BoolExpr::Or(a, b) => contains_var_zero(a) || contains_var_zero(b),
    }
}

/// A parsed network file: `equations[i - 1]` defines `Φ_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NetworkFile {
    width: usize,
    equations: Vec<BoolExpr>,
}

impl NetworkFile {
    pub fn new(equations: Vec<BoolExpr>) -> Result<NetworkFile> {
        let width = equations.len();
        if width == 0 {
            return Err(Error::Domain("a network needs at least one coordinate".into()));
        }
        if let Some(e) = equations.iter().find(|e| e.max_var() > width || contains_var_zero(e)) {
            return Err(Error::Domain(format!(
                "equation references x{} outside 1..={width}",
                e.max_var()
            )));
        }
        Ok(NetworkFile { width, equations })
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn equations(&self) -> &[BoolExpr] {
        &self.equations
    }

    /// Sum-of-minterms file for an arbitrary network, so any network can be
    /// written out and read back.
    pub fn from_network(net: &Network) -> NetworkFile {
        let width = net.width();
        let minterm = |mu: State| {
            (1..=width)
                .map(|i| {
                    if mu.get(i) {
                        BoolExpr::var(i)
                    } else {
                        BoolExpr::not(BoolExpr::var(i))
                    }
                })
                .reduce(BoolExpr::and)
                .expect("width >= 1")
        };
        let equations = (1..=width)
            .map(|i| {
                State::all(width)
                    .expect("valid width")
                    .filter(|mu| net.image(mu).get(i))
                    .map(minterm)
                    .reduce(BoolExpr::or)
                    .unwrap_or(BoolExpr::Const(false))
            })
            .collect();
        NetworkFile { width, equations }
    }
}

/// Fills the truth tables of every coordinate.
pub fn compile(file: &NetworkFile) -> Result<Network> {
    if file.width > MAX_WIDTH {
        return Err(Error::Capacity {
            width: file.width,
            limit: MAX_WIDTH,
        });
    }
    Network::from_fn(file.width, |mu| {
        let bits = file
            .equations
            .iter()
            .enumerate()
            .fold(0u32, |acc, (i, e)| acc | ((e.eval_unchecked(&mu) as u32) << i));
        State::new(file.width, bits).expect("fits the width")
    })
}

/// Parses and compiles in one go.
pub fn load_network(text: &str) -> Result<Network> {
    compile(&parse_network(text)?)
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("{line}:{col}: syntax error: {message}")]
    Syntax { line: usize, col: usize, message: String },

    #[error("{line}:{col}: unknown variable x{index}: the network has {width} coordinates")]
    UnknownVariable {
        line: usize,
        col: usize,
        index: usize,
        width: usize,
    },

    #[error("{line}:{col}: x{index} is defined twice")]
    Duplicate { line: usize, col: usize, index: usize },

    #[error("x{index} is never defined")]
    Missing { index: usize },

    #[error("{line}:{col}: coordinate index {text} is out of range")]
    OutOfRange { line: usize, col: usize, text: String },
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(text: &str) -> State {
        text.parse().unwrap()
    }

    #[test]
    fn eval_follows_boolean_laws() {
        let mu = s("10");
        let one = || BoolExpr::Const(true);
        let zero = || BoolExpr::Const(false);
        assert!(!eval_expr(&BoolExpr::xor(one(), one()), &mu).unwrap());
        assert!(eval_expr(&BoolExpr::or(one(), zero()), &mu).unwrap());
        assert!(!eval_expr(&BoolExpr::and(one(), zero()), &mu).unwrap());
        assert!(eval_expr(&BoolExpr::not(BoolExpr::var(2)), &mu).unwrap());
        assert!(!eval_expr(&BoolExpr::not(BoolExpr::var(1)), &mu).unwrap());
        assert!(eval_expr(&BoolExpr::var(3), &mu).is_err());
        assert!(eval_expr(&BoolExpr::var(0), &mu).is_err());
    }

    #[test]
    fn example_file_compiles_to_example_network() {
        let net = load_network("x1 = x1 | !x1 & !x2\nx2 = !x1 | x1 & !x2\n").unwrap();
        assert_eq!(net, Network::example());
        assert_eq!(net.apply_full(&s("01")).unwrap(), s("01"));
    }

    #[test]
    fn simple_files() {
        let zero = load_network("x1 = 0").unwrap();
        assert_eq!(zero, Network::constant(s("0")).unwrap());
        let id = load_network("x1 = x1").unwrap();
        assert_eq!(id, Network::identity(1).unwrap());
    }

    #[test]
    fn minterm_file_reproduces_network() {
        for net in [
            Network::example(),
            Network::identity(3).unwrap(),
            Network::constant(s("000")).unwrap(),
        ] {
            assert_eq!(compile(&NetworkFile::from_network(&net)).unwrap(), net);
        }
    }

    #[test]
    fn compile_rejects_wide_files() {
        let text: String = (1..=21).map(|i| format!("x{i} = x{i}\n")).collect();
        let file = parse_network(&text).unwrap();
        assert!(matches!(compile(&file), Err(Error::Capacity { width: 21, .. })));
    }
}
