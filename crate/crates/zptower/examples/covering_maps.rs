//! The branched covers between levels: ramification indices, the
//! valency and degree laws, divisor pushforwards, and the Laplacian
//! compatibility square.

use num_bigint::BigInt;

use zptower::graph::{Divisor, SerreGraph};
use zptower::padic::PadicScalar;
use zptower::picard::{check_laplacian_compatibility, pushforward_ram, pushforward_star};
use zptower::tower::{projection, verify_cover, Ramification, VoltageGraph};

fn main() -> Result<(), zptower::Error> {
    let base = SerreGraph::from_pairs(1, &[(0, 0), (0, 0)])?;
    let vg = VoltageGraph::new(
        base,
        2,
        vec![PadicScalar::exact(2, 3), PadicScalar::exact(2, 5)],
        vec![Ramification::Ramified(2)],
    )?;

    for upper in 1..=4u32 {
        let cover = projection(&vg, upper, upper - 1)?;
        let report = verify_cover(&cover);
        println!(
            "level {upper} -> {}: degree {}, ramification indices {:?}, cover axioms {}, \
             valency law {}, degree law {}",
            upper - 1,
            report.degree.unwrap(),
            cover.ram_indices,
            report.is_branched_cover,
            report.valency_law_ok,
            report.degree_law_ok
        );
    }
    println!();

    // a composed projection multiplies ramification indices
    let composed = projection(&vg, 4, 1)?;
    println!(
        "level 4 -> 1: degree {}, indices {:?}",
        verify_cover(&composed).degree.unwrap(),
        composed.ram_indices
    );
    println!();

    // pushforwards: the plain one preserves degree, the ramified one
    // weights by the index; on a full fiber it reproduces the degree
    let cover = projection(&vg, 3, 2)?;
    let n_src = cover.source.graph().num_vertices();
    let fiber_of_zero: Divisor = {
        let mut d = Divisor::new(n_src);
        for w in 0..n_src {
            if cover.vertex_map[w] == 0 {
                d.add_at(w, &BigInt::from(1));
            }
        }
        d
    };
    let star = pushforward_star(&cover, &fiber_of_zero)?;
    let ram = pushforward_ram(&cover, &fiber_of_zero)?;
    println!("full fiber over vertex 0 at level 3 -> 2:");
    println!("  plain pushforward coefficient: {}", star.coeff(0));
    println!(
        "  ramified pushforward coefficient: {} (= cover degree)",
        ram.coeff(0)
    );

    let compat = check_laplacian_compatibility(&cover)?;
    println!();
    println!(
        "Laplacian square L_target . f_ram = f_star . L_source: {} ({} vertices checked)",
        compat.ok,
        compat.per_vertex.len()
    );
    Ok(())
}
