//! Each branched level receives the matching unramified level through a
//! label-collapsing immersion: bijective on edges, injective on every
//! edge-star, collapsing exactly the ramified fibers.

use zptower::graph::SerreGraph;
use zptower::padic::PadicScalar;
use zptower::tower::{build_level, verify_immersion, Ramification, VoltageGraph};

fn main() -> Result<(), zptower::Error> {
    let base = SerreGraph::from_pairs(2, &[(0, 0), (0, 1), (1, 1)])?;
    let vg = VoltageGraph::new(
        base,
        3,
        vec![
            PadicScalar::exact(3, 1),
            PadicScalar::exact(3, 0),
            PadicScalar::exact(3, 11),
        ],
        vec![Ramification::Unramified, Ramification::Ramified(1)],
    )?;

    println!("dumbbell with the second vertex ramified (k = 1), p = 3:");
    println!();
    println!(" n  unramified V  branched V  morphism  edge-bijective  star-injective  isomorphism");
    for n in 0..=3u32 {
        let r = verify_immersion(&vg, n)?;
        println!(
            "{n:>2}  {:>12}  {:>10}  {:>8}  {:>14}  {:>14}  {:>11}",
            r.source_vertex_count,
            r.target_vertex_count,
            r.is_morphism,
            r.edges_bijective,
            r.stars_injective,
            r.is_isomorphism
        );
    }
    println!();
    println!("the immersion is bijective until level k = 1; past that, the fiber over the");
    println!("ramified vertex stays at 3 points while the unramified fiber keeps growing:");
    for n in 0..=3u32 {
        let branched = build_level(&vg, n)?;
        println!(
            "  level {n}: fiber sizes (v1, v2) = ({}, {})",
            branched.vertex_modulus(0),
            branched.vertex_modulus(1)
        );
    }
    Ok(())
}
