//! Random instance generators for the falsification harness and tests.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::compfn::{DiscreteCompFn, RealCompFn};
use crate::network::Network;
use crate::signal::RealSignal;
use crate::state::State;
use crate::time::{rational, Rational, TimeSeq};

/// Bounds on generated schedules and instant sequences.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Shape {
    pub max_prefix: usize,
    pub max_period: usize,
    pub max_explicit_times: usize,
}

impl Default for Shape {
    fn default() -> Self {
        Shape {
            max_prefix: 4,
            max_period: 4,
            max_explicit_times: 4,
        }
    }
}

/// Uniform truth tables.
pub fn network<R: Rng + ?Sized>(rng: &mut R, width: usize) -> Network {
    let mask = (1u32 << width) - 1;
    let images = (0..1usize << width).map(|_| rng.gen::<u32>() & mask).collect();
    Network::from_images(width, images).expect("generated width is valid")
}

pub fn state<R: Rng + ?Sized>(rng: &mut R, width: usize) -> State {
    State::from_index(width, rng.gen::<u32>())
}

pub fn states<R: Rng + ?Sized>(rng: &mut R, width: usize, len: usize) -> Vec<State> {
    (0..len).map(|_| state(rng, width)).collect()
}

/// Any eventually periodic schedule within `shape`.
pub fn schedule<R: Rng + ?Sized>(rng: &mut R, width: usize, shape: &Shape) -> DiscreteCompFn {
    let prefix_len = rng.gen_range(0..=shape.max_prefix);
    let period_len = rng.gen_range(1..=shape.max_period.max(1));
    DiscreteCompFn::new(states(rng, width, prefix_len), states(rng, width, period_len))
        .expect("nonempty period of one width")
}

/// Forces every coordinate the period misses into one random period slot.
pub fn make_progressive<R: Rng + ?Sized>(rng: &mut R, alpha: &DiscreteCompFn) -> DiscreteCompFn {
    let mut period = alpha.period().to_vec();
    for i in alpha.starved_coords() {
        let slot = rng.gen_range(0..period.len());
        period[slot] = period[slot].with(i, true);
    }
    DiscreteCompFn::new(alpha.prefix().to_vec(), period).expect("same shape")
}

pub fn progressive_schedule<R: Rng + ?Sized>(rng: &mut R, width: usize, shape: &Shape) -> DiscreteCompFn {
    let alpha = schedule(rng, width, shape);
    make_progressive(rng, &alpha)
}

/// A positive rational `p/q` with `p, q ∈ 1..=4`.
pub fn positive_step<R: Rng + ?Sized>(rng: &mut R) -> Rational {
    rational(rng.gen_range(1..=4), rng.gen_range(1..=4))
}

pub fn time_seq<R: Rng + ?Sized>(rng: &mut R, shape: &Shape) -> TimeSeq {
    let count = rng.gen_range(1..=shape.max_explicit_times.max(1));
    let mut t = rational(rng.gen_range(-8..=8), rng.gen_range(1..=4));
    let mut explicit = vec![t];
    for _ in 1..count {
        t += positive_step(rng);
        explicit.push(t);
    }
    TimeSeq::new(explicit, positive_step(rng)).expect("increasing by construction")
}

pub fn real_schedule<R: Rng + ?Sized>(rng: &mut R, width: usize, shape: &Shape) -> RealCompFn {
    RealCompFn::new(schedule(rng, width, shape), time_seq(rng, shape))
}

pub fn progressive_real_schedule<R: Rng + ?Sized>(rng: &mut R, width: usize, shape: &Shape) -> RealCompFn {
    RealCompFn::new(progressive_schedule(rng, width, shape), time_seq(rng, shape))
}

/// A cut instant relative to `times`, covering the three positions that
/// matter: before `t_0`, exactly on an instant, strictly between two.
pub fn cut<R: Rng + ?Sized>(rng: &mut R, times: &TimeSeq) -> Rational {
    let k = rng.gen_range(0..times.explicit().len() as u64 + 4);
    match rng.gen_range(0..3) {
        0 => times.first() - rational(rng.gen_range(0..=8), rng.gen_range(1..=4)),
        1 => times.at(k),
        _ => {
            let (a, b) = (times.at(k), times.at(k + 1));
            let denom = rng.gen_range(2..=5);
            a + (b - a) * rational(rng.gen_range(1..denom), denom)
        }
    }
}

/// A progressive schedule equal to `alpha` on `0..keep` with a fresh tail.
pub fn mutate_tail<R: Rng + ?Sized>(rng: &mut R, alpha: &DiscreteCompFn, keep: u64, shape: &Shape) -> DiscreteCompFn {
    let tail = progressive_schedule(rng, alpha.width(), shape);
    alpha.splice(keep, &tail).expect("same width")
}

/// A progressive real schedule equal to `rho` on `(-∞, until]`, with fresh
/// instants and values afterwards.
pub fn mutate_real_tail<R: Rng + ?Sized>(rng: &mut R, rho: &RealCompFn, until: &Rational, shape: &Shape) -> RealCompFn {
    let keep = rho.times().count_up_to(until);
    let mut explicit: Vec<Rational> = (0..keep).map(|k| rho.times().at(k)).collect();
    let mut t = explicit.last().copied().unwrap_or(*until).max(*until);
    for _ in 0..rng.gen_range(1..=shape.max_explicit_times.max(1)) {
        t += positive_step(rng);
        explicit.push(t);
    }
    let times = TimeSeq::new(explicit, positive_step(rng)).expect("increasing by construction");
    let values = mutate_tail(rng, rho.values(), keep, shape);
    RealCompFn::new(values, times)
}

/// An arbitrary eventually periodic real signal.
pub fn real_signal<R: Rng + ?Sized>(rng: &mut R, width: usize, shape: &Shape) -> RealSignal {
    let transient = rng.gen_range(0..=shape.max_prefix);
    let cycle = rng.gen_range(1..=shape.max_period.max(1));
    RealSignal::new(
        state(rng, width),
        time_seq(rng, shape),
        states(rng, width, transient),
        states(rng, width, cycle),
    )
    .expect("one width throughout")
}

/// A fixed battery of progressive schedules of the given width, the same on
/// every call.
pub fn schedule_battery(width: usize, size: usize) -> Vec<DiscreteCompFn> {
    use rand::SeedableRng;
    let ones = State::ones(width).expect("valid width");
    let zero = State::zeros(width).expect("valid width");
    let singles: Vec<State> = (1..=width).map(|i| zero.with(i, true)).collect();
    let mut reversed = singles.clone();
    reversed.reverse();
    let mut battery = vec![
        DiscreteCompFn::constant(ones),
        DiscreteCompFn::new(vec![], singles.clone()).unwrap(),
        DiscreteCompFn::new(vec![], reversed).unwrap(),
        DiscreteCompFn::new(vec![zero, zero], vec![ones, zero]).unwrap(),
        DiscreteCompFn::new(singles.clone(), vec![ones]).unwrap(),
    ];
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0xba77e1 + width as u64);
    let shape = Shape::default();
    while battery.len() < size {
        let alpha = progressive_schedule(&mut rng, width, &shape);
        if !battery.contains(&alpha) {
            battery.push(alpha);
        }
    }
    battery.truncate(size);
    battery.shuffle(&mut rng);
    battery
}
