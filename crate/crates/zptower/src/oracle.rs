//! Brute-force baselines used to cross-check the exact linear algebra.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::graph::SerreGraph;

/// Hard cap on the number of undirected edges the enumeration accepts.
pub const ENUMERATION_CAP: usize = 16;

/// Counts spanning trees by enumerating undirected-edge subsets of size
/// `|V| - 1` and keeping the acyclic spanning ones.  Loops are pruned up
/// front since a tree never contains one.
pub fn brute_force_spanning_trees(g: &SerreGraph) -> Result<BigInt> {
    let n = g.num_vertices();
    if n == 0 {
        return Err(Error::EmptyGraph);
    }
    let m = g.num_undirected_edges();
    if m > ENUMERATION_CAP {
        return Err(Error::OracleCap(m, ENUMERATION_CAP));
    }
    if !g.is_connected()? {
        return Err(Error::Disconnected);
    }
    if n == 1 {
        return Ok(BigInt::from(1));
    }
    let non_loops: Vec<(usize, usize)> = g
        .undirected_representatives()
        .iter()
        .map(|&e| (g.origin(e), g.terminus(e)))
        .filter(|&(a, b)| a != b)
        .collect();
    let need = n - 1;
    let mut count = 0u64;
    let mut chosen = Vec::with_capacity(need);
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    fn rec(
        edges: &[(usize, usize)],
        start: usize,
        need: usize,
        n: usize,
        chosen: &mut Vec<(usize, usize)>,
        count: &mut u64,
    ) {
        if chosen.len() == need {
            let mut parent: Vec<usize> = (0..n).collect();
            let mut merged = 0;
            for &(a, b) in chosen.iter() {
                let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                if ra == rb {
                    return; // cycle
                }
                parent[ra] = rb;
                merged += 1;
            }
            if merged == need {
                *count += 1;
            }
            return;
        }
        if edges.len() - start < need - chosen.len() {
            return;
        }
        for i in start..edges.len() {
            chosen.push(edges[i]);
            rec(edges, i + 1, need, n, chosen, count);
            chosen.pop();
        }
    }
    rec(&non_loops, 0, need, n, &mut chosen, &mut count);
    Ok(BigInt::from(count))
}

/// The sandpile group order equals the spanning-tree count; this is the
/// same enumeration under a second name so tests can state what they
/// cross-check.
pub fn brute_force_group_order(g: &SerreGraph) -> Result<BigInt> {
    brute_force_spanning_trees(g)
}
