mod common;

use asyncflow::flow::{Flow, FlowQuery, Schedule};
use asyncflow::time::{integer, rational};
use asyncflow::{discrete_flow_at, discrete_flow_signal, real_flow_at, real_flow_signal, synchronous_iterate, Network};
use common::{network, real_schedule, rng, schedule, st, state};
use proptest::prelude::*;

proptest! {
    #[test]
    fn signal_matches_pointwise_evaluation(
        (net, mu) in network(5).prop_flat_map(|net| { let n = net.width(); (Just(net), state(n)) }),
        seed: u64,
    ) {
        let alpha = schedule(seed, net.width(), seed % 3 != 0);
        let x = discrete_flow_signal(&net, &mu, &alpha).unwrap();
        for k in -1..60 {
            prop_assert_eq!(x.at(k).unwrap(), discrete_flow_at(&net, &mu, &alpha, k).unwrap());
        }
    }

    #[test]
    fn real_flow_follows_the_instants(
        (net, mu) in network(4).prop_flat_map(|net| { let n = net.width(); (Just(net), state(n)) }),
        seed: u64,
    ) {
        let rho = real_schedule(seed, net.width(), true);
        let alpha = rho.values();
        let y = real_flow_signal(&net, &mu, &rho).unwrap();
        let t0 = rho.times().first();
        prop_assert_eq!(y.at(&(t0 - integer(1))), mu);
        for k in 0..20u64 {
            let t = rho.times().at(k);
            let expected = discrete_flow_at(&net, &mu, alpha, k as i64).unwrap();
            prop_assert_eq!(y.at(&t), expected);
            prop_assert_eq!(real_flow_at(&net, &mu, &rho, &t).unwrap(), expected);
            let between = (t + rho.times().at(k + 1)) / integer(2);
            prop_assert_eq!(real_flow_at(&net, &mu, &rho, &between).unwrap(), expected);
        }
    }
}

#[test]
fn stable_scenario_settles() {
    let net = Network::example();
    let x = discrete_flow_signal(&net, &st("00"), &"01;(11)".parse().unwrap()).unwrap();
    let states: Vec<String> = (-1..4).map(|k| x.at(k).unwrap().to_string()).collect();
    assert_eq!(states, ["00", "01", "01", "01", "01"]);
    assert_eq!(x.eventually_constant(), Some(st("01")));
}

#[test]
fn unstable_scenario_switches_forever() {
    let net = Network::example();
    let x = discrete_flow_signal(&net, &st("10"), &";(01)".parse().unwrap()).unwrap();
    assert_eq!(x.eventually_constant(), None);
    let states: Vec<String> = (-1..4).map(|k| x.at(k).unwrap().to_string()).collect();
    assert_eq!(states, ["10", "11", "10", "11", "10"]);
}

#[test]
fn full_mask_is_synchronous_iteration() {
    let mut r = rng(11);
    for _ in 0..50 {
        let net = asyncflow::theorems::gen::network(&mut r, 4);
        let mu = asyncflow::theorems::gen::state(&mut r, 4);
        let alpha = asyncflow::DiscreteCompFn::synchronous(4).unwrap();
        for k in 0..20u64 {
            assert_eq!(
                discrete_flow_at(&net, &mu, &alpha, k as i64).unwrap(),
                synchronous_iterate(&net, &mu, k + 1).unwrap()
            );
        }
    }
}

#[test]
fn query_dispatches_on_time_domain() {
    let net = Network::example();
    let alpha: asyncflow::DiscreteCompFn = "01;(11)".parse().unwrap();
    let q = FlowQuery::new(net.clone(), st("00"), Schedule::Discrete(alpha.clone())).unwrap();
    assert!(matches!(q.flow(), Flow::Discrete(x) if x.eventually_constant() == Some(st("01"))));
    let rho = asyncflow::RealCompFn::new(alpha, "0;+1".parse().unwrap());
    let q = FlowQuery::new(net, st("00"), Schedule::Real(rho)).unwrap();
    match q.flow() {
        Flow::Real(y) => assert_eq!(y.at(&rational(1, 2)), st("01")),
        other => panic!("expected a real flow, got {other:?}"),
    }
    assert!(FlowQuery::new(
        Network::example(),
        st("000"),
        Schedule::Discrete(";(11)".parse().unwrap())
    )
    .is_err());
}

#[test]
fn indices_below_minus_one_are_rejected() {
    let net = Network::example();
    assert!(discrete_flow_at(&net, &st("00"), &";(11)".parse().unwrap(), -2).is_err());
}
