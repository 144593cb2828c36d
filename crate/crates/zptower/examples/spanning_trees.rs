//! Spanning-tree counts two ways: the reduced-Laplacian determinant
//! (exact, fraction-free) against subset enumeration on small graphs.

use zptower::graph::SerreGraph;
use zptower::oracle::brute_force_spanning_trees;
use zptower::picard::{kappa, kappa_at};

fn main() -> Result<(), zptower::Error> {
    let cases: Vec<(&str, SerreGraph)> = vec![
        ("4-cycle", cycle(4)),
        ("8-cycle", cycle(8)),
        (
            "path on 5 vertices",
            SerreGraph::from_pairs(5, &[(0, 1), (1, 2), (2, 3), (3, 4)])?,
        ),
        (
            "dumbbell (loops never count)",
            SerreGraph::from_pairs(2, &[(0, 0), (0, 1), (1, 1)])?,
        ),
        (
            "triangular prism",
            SerreGraph::from_pairs(
                6,
                &[
                    (0, 1),
                    (1, 2),
                    (2, 0),
                    (3, 4),
                    (4, 5),
                    (5, 3),
                    (0, 3),
                    (1, 4),
                    (2, 5),
                ],
            )?,
        ),
        (
            "theta graph (triple edge)",
            SerreGraph::from_pairs(2, &[(0, 1), (0, 1), (0, 1)])?,
        ),
        ("complete graph K5", complete(5)),
    ];
    println!(
        "{:<28} {:>12} {:>12}",
        "graph", "determinant", "enumeration"
    );
    for (name, g) in &cases {
        let det = kappa(g)?;
        let brute = brute_force_spanning_trees(g)?;
        assert_eq!(det, brute);
        println!(
            "{name:<28} {:>12} {:>12}",
            det.to_string(),
            brute.to_string()
        );
    }
    println!();
    // any vertex may be deleted from the Laplacian
    let prism = &cases[4].1;
    let counts: Vec<String> = (0..prism.num_vertices())
        .map(|v| kappa_at(prism, v).unwrap().to_string())
        .collect();
    println!(
        "prism count, deleting each vertex in turn: {}",
        counts.join(" ")
    );
    Ok(())
}

fn cycle(n: usize) -> SerreGraph {
    let pairs: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    SerreGraph::from_pairs(n, &pairs).unwrap()
}

fn complete(n: usize) -> SerreGraph {
    let mut pairs = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            pairs.push((i, j));
        }
    }
    SerreGraph::from_pairs(n, &pairs).unwrap()
}
