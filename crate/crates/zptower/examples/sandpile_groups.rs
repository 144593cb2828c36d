//! Sandpile (degree-zero Picard) groups along a tower: invariant
//! factors from the Smith normal form of the Laplacian, the group
//! order matching the spanning-tree count, and the growing p-part.

use zptower::graph::SerreGraph;
use zptower::padic::PadicScalar;
use zptower::picard::{kappa, p_part, picard_group};
use zptower::tower::{build_level, Ramification, VoltageGraph};

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

    for n in 0..=3u32 {
        let level = build_level(&vg, n)?;
        let g = level.graph();
        let group = picard_group(g)?;
        let pp = p_part(&group, 3);
        let factors: Vec<String> = group
            .invariant_factors
            .iter()
            .map(|d| d.to_string())
            .collect();
        println!("level {n}: {} vertices", g.num_vertices());
        println!("  order        = {}", group.order);
        println!(
            "  factors      = {}",
            if factors.is_empty() {
                "(trivial)".to_string()
            } else {
                factors.join(" | ")
            }
        );
        println!(
            "  Sylow 3-part = 3^{}  (per factor {:?})",
            pp.total, pp.factor_valuations
        );
        assert_eq!(group.order, kappa(g)?);
    }

    println!();
    println!("small sanity cases:");
    for n in 3..=6usize {
        let pairs: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        let g = SerreGraph::from_pairs(n, &pairs)?;
        let group = picard_group(&g)?;
        println!(
            "  {n}-cycle: cyclic of order {}",
            group
                .invariant_factors
                .first()
                .map_or("1".to_string(), |d| d.to_string())
        );
    }
    Ok(())
}
