//! Shared voltage-graph fixtures for unit tests.

use crate::graph::SerreGraph;
use crate::padic::PadicScalar;
use crate::tower::{Ramification, VoltageGraph};

fn exact_voltages(p: u64, values: &[i64]) -> Vec<PadicScalar> {
    values.iter().map(|&v| PadicScalar::exact(p, v)).collect()
}

/// p = 2, bouquet with two loops, voltages 3 and 5, vertex ramified with
/// exponent 2.
pub fn bouquet_p2() -> VoltageGraph {
    let base = SerreGraph::from_pairs(1, &[(0, 0), (0, 0)]).unwrap();
    VoltageGraph::new(
        base,
        2,
        exact_voltages(2, &[3, 5]),
        vec![Ramification::Ramified(2)],
    )
    .unwrap()
}

/// p = 3, dumbbell (loop, bridge, loop) with voltages 1, 0, 11, fully
/// unramified.
pub fn dumbbell_p3_unramified() -> VoltageGraph {
    let base = SerreGraph::from_pairs(2, &[(0, 0), (0, 1), (1, 1)]).unwrap();
    VoltageGraph::new(
        base,
        3,
        exact_voltages(3, &[1, 0, 11]),
        vec![Ramification::Unramified, Ramification::Unramified],
    )
    .unwrap()
}

/// The dumbbell with the second vertex ramified with exponent 1.
pub fn dumbbell_p3_branched() -> VoltageGraph {
    let base = SerreGraph::from_pairs(2, &[(0, 0), (0, 1), (1, 1)]).unwrap();
    VoltageGraph::new(
        base,
        3,
        exact_voltages(3, &[1, 0, 11]),
        vec![Ramification::Unramified, Ramification::Ramified(1)],
    )
    .unwrap()
}

/// p = 3, three loops of voltage 1 at the first vertex, three bridges of
/// voltage 0, one loop of voltage 11 at the second vertex, which is
/// ramified with exponent 1.
pub fn triple_loop_p3() -> VoltageGraph {
    let base = SerreGraph::from_pairs(2, &[(0, 0), (0, 0), (0, 0), (0, 1), (0, 1), (0, 1), (1, 1)])
        .unwrap();
    VoltageGraph::new(
        base,
        3,
        exact_voltages(3, &[1, 1, 1, 0, 0, 0, 11]),
        vec![Ramification::Unramified, Ramification::Ramified(1)],
    )
    .unwrap()
}

/// p = 3 bouquet whose voltages are all divisible by 3; the
/// connectedness criterion fails and the levels really disconnect.
pub fn divisible_bouquet_p3() -> VoltageGraph {
    let base = SerreGraph::from_pairs(1, &[(0, 0), (0, 0)]).unwrap();
    VoltageGraph::new(
        base,
        3,
        exact_voltages(3, &[3, 6]),
        vec![Ramification::Unramified],
    )
    .unwrap()
}

/// The four standing examples.
pub fn all() -> Vec<VoltageGraph> {
    vec![
        bouquet_p2(),
        dumbbell_p3_unramified(),
        dumbbell_p3_branched(),
        triple_loop_p3(),
    ]
}
