//! Strategies and invariant checks shared by the property tests and the
//! acceptance harness.

#![allow(dead_code)]

use lns::family::GeneratorSpec;
use lns::graph::{ring_distance, Network, NetworkBuilder};
use lns::metrics::{average_distance, bfs_distances, diameter};
use lns::navigation::{average_navigation_length, navigate, NavPolicy, TwoLevelMode};
use lns::stochastic::StochasticSpec;
use proptest::prelude::*;
use proptest::test_runner::TestCaseError;

pub const CASES: u32 = 256;

pub const POLICIES: [NavPolicy; 3] = [
    NavPolicy::Greedy,
    NavPolicy::TwoLevel(TwoLevelMode::Rehop),
    NavPolicy::TwoLevel(TwoLevelMode::Commit),
];

/// Ring of `size` nodes plus the admissible pairs of `raw` (taken mod size).
pub fn build(size: usize, raw: &[(usize, usize)]) -> Network {
    let mut b = NetworkBuilder::new(size).unwrap();
    for &(i, j) in raw {
        b.add_if_new(i, j);
    }
    b.build()
}

pub fn arb_network() -> impl Strategy<Value = Network> {
    (5usize..64)
        .prop_flat_map(|size| prop::collection::vec((0..size, 0..size), 0..size).prop_map(move |raw| build(size, &raw)))
}

/// Network plus a pair that is not yet a shortcut or ring edge.
pub fn arb_network_and_pair() -> impl Strategy<Value = (Network, usize, usize)> {
    arb_network().prop_flat_map(|net| {
        let size = net.size();
        (Just(net), 0..size, 2..=size / 2).prop_filter_map("pair already present", |(net, i, r)| {
            let j = (i + r) % net.size();
            (!net.has_shortcut(i as u32, j as u32)).then_some((net, i, j))
        })
    })
}

pub fn arb_stochastic() -> impl Strategy<Value = StochasticSpec> {
    let alpha = prop::sample::select(vec![0.0, 0.5, 1.0, 2.0, 3.0]);
    (8usize..120, alpha).prop_flat_map(|(size, alpha)| {
        prop_oneof![
            (0.05f64..=1.0).prop_map(move |p| StochasticSpec::S1 { size, p, alpha }),
            (1..=size).prop_map(move |t| StochasticSpec::S1m { size, t, alpha }),
            (2..=size).prop_flat_map(move |t| (0..t).prop_map(move |c| StochasticSpec::S2 { size, t, c, alpha })),
        ]
    })
}

pub fn arb_spec() -> impl Strategy<Value = GeneratorSpec> {
    prop_oneof![
        (3usize..200).prop_map(|size| GeneratorSpec::Ring { size }),
        arb_stochastic().prop_map(GeneratorSpec::Stochastic),
        (8usize..200).prop_flat_map(|size| (1..size / 2).prop_map(move |t| GeneratorSpec::D1 { size, t })),
        (3u32..12).prop_map(|k| GeneratorSpec::D2 { size: 1 << k }),
        (2usize..6, 2u32..4).prop_map(|(s, k)| GeneratorSpec::Multiplicative { s, k }),
        (2usize..5, 1u32..4, 1usize..4)
            .prop_filter("too small", |&(b, k, m)| m * b.pow(k) >= 5)
            .prop_map(|(b, k, m)| GeneratorSpec::D4s {
                size: m * b.pow(k),
                b,
                k
            }),
    ]
}

fn ring_closed_form(size: usize) -> (f64, u32) {
    ((size * size / 4) as f64 / (size - 1) as f64, (size / 2) as u32)
}

// Individual invariants.

pub fn check_round_trip(net: &Network) -> Result<(), TestCaseError> {
    let text = net.encode();
    let back = Network::decode(&text).map_err(|e| TestCaseError::fail(e.to_string()))?;
    prop_assert_eq!(&back, net);
    prop_assert_eq!(back.encode(), text);
    Ok(())
}

pub fn check_spec_round_trip(spec: &GeneratorSpec) -> Result<(), TestCaseError> {
    let line = format!("family={spec}");
    let back = GeneratorSpec::parse_line(&line).map_err(|e| TestCaseError::fail(format!("{line}: {e}")))?;
    prop_assert_eq!(&back, spec);
    Ok(())
}

pub fn check_monotone(net: &Network, i: usize, j: usize) -> Result<(), TestCaseError> {
    let bigger = net.add_shortcut(i, j).map_err(|e| TestCaseError::fail(e.to_string()))?;
    prop_assert!(average_distance(&bigger) <= average_distance(net));
    prop_assert!(diameter(&bigger) <= diameter(net));
    let added = ring_distance(net.size(), i, j) as u64;
    prop_assert_eq!(
        bigger.wiring_cost().total_length,
        net.wiring_cost().total_length + added
    );
    prop_assert!(bigger.wiring_cost().unit_cost > net.wiring_cost().unit_cost);
    Ok(())
}

pub fn check_ring(size: usize) -> Result<(), TestCaseError> {
    let ring = Network::new_ring(size).unwrap();
    let (d, diam) = ring_closed_form(size);
    prop_assert!((average_distance(&ring) - d).abs() < 1e-12);
    prop_assert_eq!(diameter(&ring), diam);
    prop_assert_eq!(ring.wiring_cost().total_length, 0);
    for policy in POLICIES {
        prop_assert!((average_navigation_length(&ring, policy) - d).abs() < 1e-12);
    }
    Ok(())
}

pub fn check_navigation(net: &Network, s: usize, t: usize) -> Result<(), TestCaseError> {
    let size = net.size();
    let (s, t) = (s % size, t % size);
    let exact = bfs_distances(net, s as u32)[t] as usize;
    for policy in POLICIES {
        let r = navigate(net, policy, s as u32, t as u32);
        prop_assert!(r.hops <= 4 * size);
        prop_assert_eq!(r.path.first().copied(), Some(s as u32));
        prop_assert_eq!(r.path.last().copied(), Some(t as u32));
        prop_assert_eq!(r.path.len(), r.hops + 1);
        for w in r.path.windows(2) {
            prop_assert!(net.is_adjacent(w[0], w[1]), "{:?} steps off an edge", policy);
        }
        prop_assert!(exact <= r.hops);
        if policy == NavPolicy::Greedy {
            prop_assert!(r.hops <= ring_distance(size, s, t));
        }
    }
    Ok(())
}

pub fn check_distance_below_navigation(net: &Network) -> Result<(), TestCaseError> {
    let d = average_distance(net);
    for policy in POLICIES {
        let l = average_navigation_length(net, policy);
        prop_assert!(d <= l + 1e-12, "d = {} > {:?} = {}", d, policy, l);
    }
    Ok(())
}

pub fn check_seed_determinism(spec: &StochasticSpec, seed: u64) -> Result<(), TestCaseError> {
    let a = spec.construct(seed).map_err(|e| TestCaseError::fail(e.to_string()))?;
    let b = spec.construct(seed).map_err(|e| TestCaseError::fail(e.to_string()))?;
    prop_assert_eq!(a.encode(), b.encode());
    Ok(())
}
