#![allow(dead_code)]

use asyncflow::theorems::gen::{self, Shape};
use asyncflow::{DiscreteCompFn, Network, RealCompFn, State};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn st(bits: &str) -> State {
    bits.parse().unwrap()
}

pub fn network(max_width: usize) -> impl Strategy<Value = Network> {
    (1..=max_width).prop_flat_map(|n| {
        prop::collection::vec(0..(1u32 << n), 1 << n).prop_map(move |images| Network::from_images(n, images).unwrap())
    })
}

pub fn state(width: usize) -> impl Strategy<Value = State> {
    (0..(1u32 << width)).prop_map(move |bits| State::new(width, bits).unwrap())
}

/// A network with a state and a mask of its width.
pub fn net_state_mask(max_width: usize) -> impl Strategy<Value = (Network, State, State)> {
    network(max_width).prop_flat_map(|net| {
        let n = net.width();
        (Just(net), state(n), state(n))
    })
}

/// Random instances drawn through the crate's own generators, keyed by seed.
pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn schedule(seed: u64, width: usize, progressive: bool) -> DiscreteCompFn {
    let mut r = rng(seed);
    if progressive {
        gen::progressive_schedule(&mut r, width, &Shape::default())
    } else {
        gen::schedule(&mut r, width, &Shape::default())
    }
}

pub fn real_schedule(seed: u64, width: usize, progressive: bool) -> RealCompFn {
    let mut r = rng(seed);
    if progressive {
        gen::progressive_real_schedule(&mut r, width, &Shape::default())
    } else {
        gen::real_schedule(&mut r, width, &Shape::default())
    }
}
