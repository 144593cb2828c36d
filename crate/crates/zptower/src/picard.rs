//! Spanning-tree counts and sandpile groups, exactly.
//!
//! The number of spanning trees of a finite connected graph equals any
//! cofactor of its Laplacian (Kirchhoff), and the degree-zero divisor
//! class group ("sandpile group") is the cokernel of the Laplacian on
//! degree-zero divisors: a finite abelian group of that same order whose
//! cyclic decomposition falls out of the Smith normal form.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::graph::{Divisor, SerreGraph};
use crate::matrix::ord_p;
use crate::tower::CoverMap;

/// The sandpile group in invariant-factor form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PicardGroup {
    /// Nontrivial invariant factors `d_1 | d_2 | ...` (entries equal to
    /// one are dropped).
    pub invariant_factors: Vec<BigInt>,
    /// Group order; equals the spanning-tree count.
    pub order: BigInt,
}

/// Spanning-tree count via the reduced Laplacian determinant, deleting
/// the row and column of the vertex `delete`.
pub fn kappa_at(g: &SerreGraph, delete: usize) -> Result<BigInt> {
    if delete >= g.num_vertices() {
        return Err(Error::UnknownVertex(delete));
    }
    if !g.is_connected()? {
        return Err(Error::Disconnected);
    }
    let det = g
        .laplacian_matrix()
        .minor_removing(delete, delete)
        .det_bareiss();
    debug_assert!(det.is_positive() || g.num_vertices() == 1);
    Ok(det)
}

/// Spanning-tree count of a connected graph, deleting the first vertex.
pub fn kappa(g: &SerreGraph) -> Result<BigInt> {
    kappa_at(g, 0)
}

/// Sandpile group from the Smith normal form of the full Laplacian.
///
/// The Laplacian of a connected graph has exactly one structural zero
/// invariant factor (the all-ones kernel); more than one means the graph
/// was disconnected.
pub fn picard_group(g: &SerreGraph) -> Result<PicardGroup> {
    if g.num_vertices() == 0 {
        return Err(Error::EmptyGraph);
    }
    if !g.is_connected()? {
        return Err(Error::Disconnected);
    }
    let diag = g.laplacian_matrix().smith_diagonal();
    let zeros = diag.iter().filter(|d| d.is_zero()).count();
    if zeros != 1 {
        return Err(Error::InvalidGraph(format!(
            "Laplacian rank deficiency {zeros}, expected exactly 1"
        )));
    }
    let mut order = BigInt::one();
    let mut invariant_factors = Vec::new();
    for d in diag {
        if d.is_zero() {
            continue;
        }
        order *= &d;
        if !d.is_one() {
            invariant_factors.push(d);
        }
    }
    Ok(PicardGroup {
        invariant_factors,
        order,
    })
}

/// The p-primary data of a sandpile group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PPart {
    /// `ord_p` of each nontrivial invariant factor.
    pub factor_valuations: Vec<u32>,
    /// `ord_p` of the group order; the Sylow p-subgroup has order
    /// `p^total`.
    pub total: u32,
}

pub fn p_part(group: &PicardGroup, p: u64) -> PPart {
    let factor_valuations = group
        .invariant_factors
        .iter()
        .map(|d| ord_p(d, p).expect("invariant factors are nonzero"))
        .collect();
    let total = ord_p(&group.order, p).expect("group order is nonzero");
    PPart {
        factor_valuations,
        total,
    }
}

/// Linear extension of the vertex map of a cover: coefficients push
/// forward unchanged, so divisor degree is preserved.
pub fn pushforward_star(c: &CoverMap, d: &Divisor) -> Result<Divisor> {
    let n_src = c.source.graph().num_vertices();
    if d.len() != n_src {
        return Err(Error::SupportMismatch {
            expected: n_src,
            got: d.len(),
        });
    }
    let mut out = Divisor::new(c.target.graph().num_vertices());
    for w in 0..n_src {
        out.add_at(c.vertex_map[w], &d.coeff(w));
    }
    Ok(out)
}

/// Pushforward weighted by the ramification index `m_w` of each source
/// vertex.
pub fn pushforward_ram(c: &CoverMap, d: &Divisor) -> Result<Divisor> {
    let n_src = c.source.graph().num_vertices();
    if d.len() != n_src {
        return Err(Error::SupportMismatch {
            expected: n_src,
            got: d.len(),
        });
    }
    let mut out = Divisor::new(c.target.graph().num_vertices());
    for w in 0..n_src {
        out.add_at(
            c.vertex_map[w],
            &(d.coeff(w) * BigInt::from(c.ram_indices[w])),
        );
    }
    Ok(out)
}

/// Per-vertex outcome of the Laplacian compatibility square.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompatReport {
    pub ok: bool,
    pub per_vertex: Vec<bool>,
}

/// Checks `L_target(ram-pushforward(w)) = star-pushforward(L_source(w))`
/// on every source vertex basis divisor.
pub fn check_laplacian_compatibility(c: &CoverMap) -> Result<CompatReport> {
    let src = c.source.graph();
    let tgt = c.target.graph();
    let n_src = src.num_vertices();
    let mut per_vertex = Vec::with_capacity(n_src);
    for w in 0..n_src {
        let delta = Divisor::vertex(n_src, w);
        let lhs = tgt.laplacian_apply(&pushforward_ram(c, &delta)?)?;
        let rhs = pushforward_star(c, &src.laplacian_apply(&delta)?)?;
        per_vertex.push(lhs == rhs);
    }
    Ok(CompatReport {
        ok: per_vertex.iter().all(|&b| b),
        per_vertex,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::oracle::brute_force_spanning_trees;
    use crate::tower::{build_level, projection, CoverMap};

    fn cycle(n: usize) -> SerreGraph {
        let pairs: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        SerreGraph::from_pairs(n, &pairs).unwrap()
    }

    #[test]
    fn kappa_of_single_vertex_is_one() {
        let g = SerreGraph::from_pairs(1, &[(0, 0), (0, 0)]).unwrap();
        assert_eq!(kappa(&g).unwrap(), BigInt::one());
    }

    #[test]
    fn kappa_of_cycle_matches_oracle() {
        let g = cycle(4);
        let k = kappa(&g).unwrap();
        assert_eq!(k, BigInt::from(4));
        assert_eq!(k, brute_force_spanning_trees(&g).unwrap());
    }

    #[test]
    fn kappa_of_dumbbell_level_one_is_75() {
        // the derived graph at level 1 of the dumbbell data
        let level = build_level(&fixtures::dumbbell_p3_unramified(), 1).unwrap();
        assert_eq!(kappa(level.graph()).unwrap(), BigInt::from(75));
        let branched = build_level(&fixtures::dumbbell_p3_branched(), 1).unwrap();
        assert_eq!(kappa(branched.graph()).unwrap(), BigInt::from(75));
    }

    #[test]
    fn kappa_rejects_disconnected_graphs() {
        let g = SerreGraph::from_pairs(2, &[(0, 0), (1, 1)]).unwrap();
        assert_eq!(kappa(&g), Err(Error::Disconnected));
    }

    #[test]
    fn kappa_is_independent_of_the_deleted_vertex() {
        let level = build_level(&fixtures::dumbbell_p3_branched(), 1).unwrap();
        let g = level.graph();
        let k0 = kappa_at(g, 0).unwrap();
        for v in 1..g.num_vertices() {
            assert_eq!(kappa_at(g, v).unwrap(), k0);
        }
    }

    #[test]
    fn picard_group_of_cycle_is_cyclic() {
        for n in 3..=7usize {
            let group = picard_group(&cycle(n)).unwrap();
            assert_eq!(group.invariant_factors, vec![BigInt::from(n)]);
            assert_eq!(group.order, BigInt::from(n));
        }
    }

    #[test]
    fn picard_group_of_tree_is_trivial() {
        let path = SerreGraph::from_pairs(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        let group = picard_group(&path).unwrap();
        assert!(group.invariant_factors.is_empty());
        assert_eq!(group.order, BigInt::one());
    }

    #[test]
    fn picard_group_order_at_bouquet_level_two() {
        let level = build_level(&fixtures::bouquet_p2(), 2).unwrap();
        let group = picard_group(level.graph()).unwrap();
        assert_eq!(group.order, BigInt::from(32)); // 2^5
        assert_eq!(group.order, kappa(level.graph()).unwrap());
    }

    #[test]
    fn invariant_factor_product_equals_kappa() {
        for vg in fixtures::all() {
            for n in 0..=2u32 {
                let level = build_level(&vg, n).unwrap();
                let group = picard_group(level.graph()).unwrap();
                assert_eq!(group.order, kappa(level.graph()).unwrap());
            }
        }
    }

    #[test]
    fn p_part_of_75() {
        let group = PicardGroup {
            invariant_factors: vec![BigInt::from(5), BigInt::from(15)],
            order: BigInt::from(75),
        };
        assert_eq!(
            p_part(&group, 3),
            PPart {
                factor_valuations: vec![0, 1],
                total: 1
            }
        );
        assert_eq!(
            p_part(&group, 5),
            PPart {
                factor_valuations: vec![1, 1],
                total: 2
            }
        );
        let trivial = PicardGroup {
            invariant_factors: vec![],
            order: BigInt::one(),
        };
        assert_eq!(p_part(&trivial, 3).total, 0);
    }

    #[test]
    fn pushforwards_on_a_projection() {
        let c = projection(&fixtures::dumbbell_p3_branched(), 2, 1).unwrap();
        let n_src = c.source.graph().num_vertices();
        // single vertex pushes to its image
        let d = Divisor::vertex(n_src, 0);
        let star = pushforward_star(&c, &d).unwrap();
        assert_eq!(star.coeff(c.vertex_map[0]), BigInt::one());
        assert_eq!(star.degree(), BigInt::one());
        // degree is preserved in general
        let mut d = Divisor::new(n_src);
        d.set(0, BigInt::from(5));
        d.set(1, BigInt::from(-5));
        assert!(pushforward_star(&c, &d).unwrap().degree().is_zero());
        // the full fiber of a target vertex pushes to |fiber| * v (star)
        // and to degree * v (ramified), by the degree formula
        let degree = BigInt::from(3);
        for v in 0..c.target.graph().num_vertices() {
            let mut fiber = Divisor::new(n_src);
            for w in 0..n_src {
                if c.vertex_map[w] == v {
                    fiber.add_at(w, &BigInt::one());
                }
            }
            let star = pushforward_star(&c, &fiber).unwrap();
            assert_eq!(star.coeff(v), fiber.degree());
            let ram = pushforward_ram(&c, &fiber).unwrap();
            assert_eq!(ram.coeff(v), degree);
        }
    }

    #[test]
    fn ram_pushforward_scales_by_index() {
        let c = projection(&fixtures::bouquet_p2(), 3, 2).unwrap();
        assert!(c.ram_indices.iter().all(|&m| m == 2));
        let d = Divisor::vertex(c.source.graph().num_vertices(), 1);
        let ram = pushforward_ram(&c, &d).unwrap();
        assert_eq!(ram.coeff(c.vertex_map[1]), BigInt::from(2));
    }

    #[test]
    fn laplacian_compatibility_on_tower_projections() {
        for vg in fixtures::all() {
            for n in 0..3u32 {
                let c = projection(&vg, n + 1, n).unwrap();
                assert!(check_laplacian_compatibility(&c).unwrap().ok);
            }
        }
    }

    #[test]
    fn laplacian_compatibility_on_identity() {
        let level = build_level(&fixtures::triple_loop_p3(), 1).unwrap();
        let c = CoverMap::identity(&level);
        assert!(check_laplacian_compatibility(&c).unwrap().ok);
    }

    #[test]
    fn corrupted_ramification_index_fails_compatibility() {
        let mut c = projection(&fixtures::bouquet_p2(), 3, 2).unwrap();
        c.ram_indices[0] = 7;
        let report = check_laplacian_compatibility(&c).unwrap();
        assert!(!report.ok);
        assert!(!report.per_vertex[0]);
    }

    #[test]
    fn tower_kappa_divisibility() {
        for vg in fixtures::all() {
            let mut prev: Option<BigInt> = None;
            for n in 0..=3u32 {
                let level = build_level(&vg, n).unwrap();
                let k = kappa(level.graph()).unwrap();
                if let Some(p) = prev {
                    assert!(
                        (&k % &p).is_zero(),
                        "kappa({n}) not divisible by kappa({})",
                        n - 1
                    );
                }
                prev = Some(k);
            }
        }
    }
}
