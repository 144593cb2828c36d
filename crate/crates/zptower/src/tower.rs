//! Voltage data and the derived tower of branched covers.
//!
//! A [`VoltageGraph`] is a finite connected base graph together with a
//! prime `p`, one `Z_p` voltage per directed edge (anti-symmetric under
//! inversion), and a ramification exponent per vertex.  Level `n` of the
//! tower is the finite derived graph whose vertices are pairs
//! `(v, residue mod p^min(n, k_v))` and whose directed edges are pairs
//! `(e, sigma mod p^n)`, the edge `(e, sigma)` running from
//! `(o(e), sigma)` to `(t(e), sigma + alpha(e))`.  Successive levels are
//! joined by degree-`p` branched covers obtained by reducing labels.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::graph::{DirectedEdge, SerreGraph};
use crate::matrix::is_prime;
use crate::padic::{checked_pow_u64, PadicScalar, Valuation};

/// Ramification data at one vertex: the closed subgroups of `Z_p` are
/// exactly `{0}` (unramified) and `p^k Z_p` (ramified with exponent `k`).
/// `Ramified(0)` means total ramification: the fiber over the vertex is
/// a single vertex at every level.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Ramification {
    Unramified,
    Ramified(u32),
}

impl Ramification {
    /// Exponent of the residue modulus at level `n`: `min(n, k)`, with
    /// `k = infinity` for unramified vertices.
    pub fn modulus_exponent(&self, n: u32) -> u32 {
        match self {
            Ramification::Unramified => n,
            Ramification::Ramified(k) => n.min(*k),
        }
    }

    pub fn is_ramified(&self) -> bool {
        matches!(self, Ramification::Ramified(_))
    }
}

/// A base graph with a prime, voltages, and ramification exponents.
#[derive(Clone, Debug)]
pub struct VoltageGraph {
    base: SerreGraph,
    p: u64,
    voltages: Vec<PadicScalar>,
    ramification: Vec<Ramification>,
}

impl VoltageGraph {
    /// Builds voltage data from one scalar per undirected edge (assigned
    /// to the even directed edge of each pair; the odd edge carries the
    /// negation).  The base graph must be valid and connected.
    pub fn new(
        base: SerreGraph,
        p: u64,
        oriented_voltages: Vec<PadicScalar>,
        ramification: Vec<Ramification>,
    ) -> Result<VoltageGraph> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let violations = base.validate();
        if !violations.is_empty() {
            return Err(Error::InvalidGraph(violations.join("; ")));
        }
        if !base.is_connected()? {
            return Err(Error::Disconnected);
        }
        if oriented_voltages.len() != base.num_undirected_edges() {
            return Err(Error::BadArgument(format!(
                "expected {} voltages, got {}",
                base.num_undirected_edges(),
                oriented_voltages.len()
            )));
        }
        if ramification.len() != base.num_vertices() {
            return Err(Error::BadArgument(format!(
                "expected {} ramification entries, got {}",
                base.num_vertices(),
                ramification.len()
            )));
        }
        let mut voltages = Vec::with_capacity(base.num_directed_edges());
        for v in &oriented_voltages {
            if v.prime() != p {
                return Err(Error::PrimeMismatch(p, v.prime()));
            }
            voltages.push(v.clone());
            voltages.push(v.negated());
        }
        Ok(VoltageGraph {
            base,
            p,
            voltages,
            ramification,
        })
    }

    pub fn base(&self) -> &SerreGraph {
        &self.base
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn voltage(&self, e: usize) -> &PadicScalar {
        &self.voltages[e]
    }

    pub fn ramification(&self, v: usize) -> Ramification {
        self.ramification[v]
    }

    /// True when every voltage is an exact integer, enabling the exact
    /// Laurent computation path.
    pub fn all_exact(&self) -> bool {
        self.voltages.iter().all(|v| v.is_exact())
    }

    /// `voltage(inv(e)) = -voltage(e)` holds by construction; this
    /// re-checks it for report-style validation.
    pub fn voltage_antisymmetry_ok(&self) -> bool {
        (0..self.base.num_directed_edges())
            .all(|e| self.voltages[self.base.inverse(e)] == self.voltages[e].negated())
    }

    /// The same voltages with every vertex unramified.
    pub fn unramified_copy(&self) -> VoltageGraph {
        VoltageGraph {
            base: self.base.clone(),
            p: self.p,
            voltages: self.voltages.clone(),
            ramification: vec![Ramification::Unramified; self.ramification.len()],
        }
    }

    /// The same data with every voltage truncated to `precision` digits.
    pub fn forced_truncation(&self, precision: u32) -> VoltageGraph {
        VoltageGraph {
            base: self.base.clone(),
            p: self.p,
            voltages: self
                .voltages
                .iter()
                .map(|v| v.forced_truncation(precision))
                .collect(),
            ramification: self.ramification.clone(),
        }
    }

    /// Vertices split as (unramified, ramified), each in input order.
    /// This ordering fixes the characteristic-matrix layout.
    pub fn vertex_split(&self) -> (Vec<usize>, Vec<usize>) {
        let mut unram = Vec::new();
        let mut ram = Vec::new();
        for v in 0..self.base.num_vertices() {
            if self.ramification[v].is_ramified() {
                ram.push(v);
            } else {
                unram.push(v);
            }
        }
        (unram, ram)
    }
}

/// One finite level of the tower, with its labelling.
#[derive(Clone, Debug)]
pub struct LevelGraph {
    level: u32,
    p: u64,
    graph: SerreGraph,
    vertex_labels: Vec<(usize, u64)>,
    edge_labels: Vec<(usize, u64)>,
    vertex_modulus: Vec<u64>,
    vertex_offset: Vec<usize>,
    group_order: u64,
}

impl LevelGraph {
    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn graph(&self) -> &SerreGraph {
        &self.graph
    }

    /// `(base vertex, residue)` per level vertex.
    pub fn vertex_labels(&self) -> &[(usize, u64)] {
        &self.vertex_labels
    }

    /// `(base directed edge, group element)` per level edge.
    pub fn edge_labels(&self) -> &[(usize, u64)] {
        &self.edge_labels
    }

    /// `p^min(n, k_v)` for a base vertex.
    pub fn vertex_modulus(&self, base_vertex: usize) -> u64 {
        self.vertex_modulus[base_vertex]
    }

    /// `p^n`
    pub fn group_order(&self) -> u64 {
        self.group_order
    }

    /// Index of the level vertex `(base_vertex, residue)`.
    pub fn vertex_index(&self, base_vertex: usize, residue: u64) -> usize {
        self.vertex_offset[base_vertex] + (residue % self.vertex_modulus[base_vertex]) as usize
    }

    /// Index of the level edge `(base_edge, sigma)`.
    pub fn edge_index(&self, base_edge: usize, sigma: u64) -> usize {
        base_edge * self.group_order as usize + (sigma % self.group_order) as usize
    }

    /// The deck transformation shifting every label by `tau`; returns
    /// the induced vertex and edge permutations.
    pub fn translate(&self, tau: u64) -> (Vec<usize>, Vec<usize>) {
        let vperm = self
            .vertex_labels
            .iter()
            .map(|&(v, r)| self.vertex_index(v, r + tau))
            .collect();
        let eperm = self
            .edge_labels
            .iter()
            .map(|&(e, s)| self.edge_index(e, (s + tau) % self.group_order))
            .collect();
        (vperm, eperm)
    }
}

/// Builds level `n` of the tower.  Truncated voltages must carry at
/// least `n` digits.
pub fn build_level(vg: &VoltageGraph, n: u32) -> Result<LevelGraph> {
    let p = vg.prime();
    let pn = checked_pow_u64(p, n)?;
    let base = vg.base();
    let num_base_edges = base.num_directed_edges();
    let mut alphas = Vec::with_capacity(num_base_edges);
    for e in 0..num_base_edges {
        alphas.push(vg.voltage(e).residue_mod(n)?);
    }

    let nv = base.num_vertices();
    let mut vertex_modulus = Vec::with_capacity(nv);
    let mut vertex_offset = Vec::with_capacity(nv);
    let mut vertex_labels = Vec::new();
    let mut names = Vec::new();
    let mut offset = 0usize;
    for v in 0..nv {
        let m = checked_pow_u64(p, vg.ramification(v).modulus_exponent(n))?;
        vertex_modulus.push(m);
        vertex_offset.push(offset);
        for r in 0..m {
            vertex_labels.push((v, r));
            names.push(format!("{}:{}", base.vertex_name(v), r));
        }
        offset += m as usize;
    }

    let pn_usize = pn as usize;
    let mut edges = Vec::with_capacity(num_base_edges * pn_usize);
    let mut edge_labels = Vec::with_capacity(num_base_edges * pn_usize);
    for (e, &alpha) in alphas.iter().enumerate() {
        let o = base.origin(e);
        let t = base.terminus(e);
        let inv = base.inverse(e);
        for sigma in 0..pn {
            let shifted = (sigma + alpha) % pn;
            edges.push(DirectedEdge {
                origin: vertex_offset[o] + (sigma % vertex_modulus[o]) as usize,
                terminus: vertex_offset[t] + (shifted % vertex_modulus[t]) as usize,
                inverse: inv * pn_usize + shifted as usize,
            });
            edge_labels.push((e, sigma));
        }
    }

    let graph = SerreGraph::from_raw_parts(names, edges);
    debug_assert!(graph.validate().is_empty());
    Ok(LevelGraph {
        level: n,
        p,
        graph,
        vertex_labels,
        edge_labels,
        vertex_modulus,
        vertex_offset,
        group_order: pn,
    })
}

/// A concrete graph morphism between two levels, together with the
/// ramification index recorded per source vertex.
#[derive(Clone, Debug)]
pub struct CoverMap {
    pub source: LevelGraph,
    pub target: LevelGraph,
    pub vertex_map: Vec<usize>,
    pub edge_map: Vec<usize>,
    pub ram_indices: Vec<u64>,
}

impl CoverMap {
    pub fn identity(level: &LevelGraph) -> CoverMap {
        CoverMap {
            source: level.clone(),
            target: level.clone(),
            vertex_map: (0..level.graph().num_vertices()).collect(),
            edge_map: (0..level.graph().num_directed_edges()).collect(),
            ram_indices: vec![1; level.graph().num_vertices()],
        }
    }

    /// `self: Y -> Z` followed by `then: Z -> W`; ramification indices
    /// multiply along the composition.
    pub fn compose(&self, then: &CoverMap) -> Result<CoverMap> {
        if self.target.level() != then.source.level() {
            return Err(Error::LevelMismatch(format!(
                "cannot compose cover onto level {} with cover from level {}",
                self.target.level(),
                then.source.level()
            )));
        }
        let vertex_map: Vec<usize> = self
            .vertex_map
            .iter()
            .map(|&v| then.vertex_map[v])
            .collect();
        let edge_map = self.edge_map.iter().map(|&e| then.edge_map[e]).collect();
        let ram_indices = self
            .ram_indices
            .iter()
            .zip(&self.vertex_map)
            .map(|(&m, &v)| m * then.ram_indices[v])
            .collect();
        Ok(CoverMap {
            source: self.source.clone(),
            target: then.target.clone(),
            vertex_map,
            edge_map,
            ram_indices,
        })
    }
}

fn projection_step(vg: &VoltageGraph, upper: u32) -> Result<CoverMap> {
    let n = upper - 1;
    let source = build_level(vg, upper)?;
    let target = build_level(vg, n)?;
    let vertex_map = source
        .vertex_labels()
        .iter()
        .map(|&(v, r)| target.vertex_index(v, r))
        .collect();
    let edge_map = source
        .edge_labels()
        .iter()
        .map(|&(e, s)| target.edge_index(e, s))
        .collect();
    // the ramification index of one step is |image of p^k Z_p in Z/p^(n+1)
    // intersected with ker(Z/p^(n+1) -> Z/p^n)|: p when k <= n, else 1
    let ram_indices = source
        .vertex_labels()
        .iter()
        .map(|&(v, _)| match vg.ramification(v) {
            Ramification::Ramified(k) if k <= n => vg.prime(),
            _ => 1,
        })
        .collect();
    Ok(CoverMap {
        source,
        target,
        vertex_map,
        edge_map,
        ram_indices,
    })
}

/// The projection from level `n_from` down to level `n_to`, composed
/// from single steps.  Requires `n_from > n_to`.
pub fn projection(vg: &VoltageGraph, n_from: u32, n_to: u32) -> Result<CoverMap> {
    if n_from <= n_to {
        return Err(Error::LevelMismatch(format!(
            "projection needs a higher source level, got {n_from} -> {n_to}"
        )));
    }
    let mut cover = projection_step(vg, n_from)?;
    for upper in (n_to + 1..n_from).rev() {
        cover = cover.compose(&projection_step(vg, upper)?)?;
    }
    Ok(cover)
}

/// Everything `verify_cover` establishes about a candidate cover.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverReport {
    pub is_morphism: bool,
    pub surjective_on_vertices: bool,
    pub surjective_on_edges: bool,
    pub fibers_uniform: bool,
    pub ram_indices_consistent: bool,
    pub valency_law_ok: bool,
    pub degree_law_ok: bool,
    pub degree: Option<u64>,
    pub is_branched_cover: bool,
}

/// Checks the branched-cover axioms by direct counting: the maps form a
/// graph morphism, are surjective, every edge-star restriction is
/// `m_w`-to-1 for a well-defined `m_w`, valencies satisfy
/// `val(w) = m_w * val(f(w))`, and the fiber sums of `m_w` agree over
/// every target vertex (the common value is the degree).
pub fn verify_cover(c: &CoverMap) -> CoverReport {
    let src = c.source.graph();
    let tgt = c.target.graph();
    let mut report = CoverReport {
        is_morphism: true,
        surjective_on_vertices: true,
        surjective_on_edges: true,
        fibers_uniform: true,
        ram_indices_consistent: true,
        valency_law_ok: true,
        degree_law_ok: true,
        degree: None,
        is_branched_cover: false,
    };

    if c.vertex_map.len() != src.num_vertices()
        || c.edge_map.len() != src.num_directed_edges()
        || c.vertex_map.iter().any(|&v| v >= tgt.num_vertices())
        || c.edge_map.iter().any(|&e| e >= tgt.num_directed_edges())
    {
        report.is_morphism = false;
        return report;
    }
    for e in 0..src.num_directed_edges() {
        let image = c.edge_map[e];
        if tgt.origin(image) != c.vertex_map[src.origin(e)]
            || tgt.terminus(image) != c.vertex_map[src.terminus(e)]
            || c.edge_map[src.inverse(e)] != tgt.inverse(image)
        {
            report.is_morphism = false;
        }
    }

    let mut vertex_hit = vec![false; tgt.num_vertices()];
    for &v in &c.vertex_map {
        vertex_hit[v] = true;
    }
    report.surjective_on_vertices = vertex_hit.iter().all(|&h| h);
    let mut edge_hit = vec![false; tgt.num_directed_edges()];
    for &e in &c.edge_map {
        edge_hit[e] = true;
    }
    report.surjective_on_edges = edge_hit.iter().all(|&h| h);

    let mut computed_m = vec![0u64; src.num_vertices()];
    for (w, slot) in computed_m.iter_mut().enumerate() {
        let v = c.vertex_map[w];
        let mut counts: HashMap<usize, u64> = HashMap::new();
        for &e in src.out_edges(w) {
            *counts.entry(c.edge_map[e]).or_insert(0) += 1;
        }
        let star: Vec<usize> = tgt.out_edges(v).to_vec();
        let m = if star.is_empty() && counts.is_empty() {
            1
        } else if counts.len() != star.len() || !star.iter().all(|e| counts.contains_key(e)) {
            report.fibers_uniform = false;
            0
        } else {
            let m = counts[&star[0]];
            if star.iter().any(|e| counts[e] != m) {
                report.fibers_uniform = false;
                0
            } else {
                m
            }
        };
        *slot = m;
        if m != c.ram_indices[w] {
            report.ram_indices_consistent = false;
        }
        if report.fibers_uniform
            && src.out_edges(w).len() as u64 != m * tgt.out_edges(v).len() as u64
        {
            report.valency_law_ok = false;
        }
    }
    if !report.fibers_uniform {
        report.valency_law_ok = false;
    }

    if report.fibers_uniform && report.surjective_on_vertices {
        let mut fiber_sum = vec![0u64; tgt.num_vertices()];
        for w in 0..src.num_vertices() {
            fiber_sum[c.vertex_map[w]] += computed_m[w];
        }
        let d = fiber_sum.first().copied();
        if fiber_sum.iter().any(|&s| Some(s) != d) {
            report.degree_law_ok = false;
        } else {
            report.degree = d;
        }
    } else {
        report.degree_law_ok = false;
    }

    report.is_branched_cover = report.is_morphism
        && report.surjective_on_vertices
        && report.surjective_on_edges
        && report.fibers_uniform;
    report
}

/// Outcome of the sufficient connectedness test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CriterionReport {
    /// True iff the voltages of the fundamental cycles generate all of
    /// `Z_p` as a closed subgroup, i.e. some cycle sum is a unit.  This
    /// makes every unramified level connected, and therefore every
    /// branched level as well.
    pub unramified_tower_connected: bool,
    /// Least valuation among the cycle sums; `None` when all sums are
    /// exactly zero.
    pub min_cycle_valuation: Option<u32>,
}

/// Sums the voltages along a fundamental cycle basis and inspects their
/// valuations.  Fails as indeterminate when no unit was found but some
/// truncated sum vanishes to its full visible precision.
pub fn connectedness_criterion(vg: &VoltageGraph) -> Result<CriterionReport> {
    let base = vg.base();
    let tree = base.spanning_tree()?;
    let zero = PadicScalar::exact(vg.prime(), 0);
    let sums = base.fundamental_cycle_sums(&tree, zero, |e| Some(vg.voltage(e).clone()))?;
    let mut min_val: Option<u32> = None;
    let mut indeterminate = false;
    for s in &sums {
        match s.valuation() {
            Valuation::Exact(0) => {
                return Ok(CriterionReport {
                    unramified_tower_connected: true,
                    min_cycle_valuation: Some(0),
                })
            }
            Valuation::Exact(v) => min_val = Some(min_val.map_or(v, |m: u32| m.min(v))),
            Valuation::AtLeast(_) => indeterminate = true,
            Valuation::Infinite => {}
        }
    }
    if indeterminate {
        return Err(Error::IndeterminateCriterion);
    }
    Ok(CriterionReport {
        unramified_tower_connected: false,
        min_cycle_valuation: min_val,
    })
}

/// What `verify_immersion` establishes about the label-collapsing map
/// from the unramified level into the branched one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ImmersionReport {
    pub is_morphism: bool,
    pub edges_bijective: bool,
    pub stars_injective: bool,
    pub is_isomorphism: bool,
    pub source_vertex_count: usize,
    pub target_vertex_count: usize,
}

/// Builds the unramified level alongside level `n` and checks that
/// collapsing residues is a graph morphism, bijective on directed edges
/// and injective on every edge-star.
pub fn verify_immersion(vg: &VoltageGraph, n: u32) -> Result<ImmersionReport> {
    let branched = build_level(vg, n)?;
    let unramified = build_level(&vg.unramified_copy(), n)?;
    let src = unramified.graph();
    let tgt = branched.graph();
    let vertex_map: Vec<usize> = unramified
        .vertex_labels()
        .iter()
        .map(|&(v, r)| branched.vertex_index(v, r))
        .collect();
    let edge_map: Vec<usize> = unramified
        .edge_labels()
        .iter()
        .map(|&(e, s)| branched.edge_index(e, s))
        .collect();

    let mut is_morphism = true;
    for e in 0..src.num_directed_edges() {
        let image = edge_map[e];
        if tgt.origin(image) != vertex_map[src.origin(e)]
            || tgt.terminus(image) != vertex_map[src.terminus(e)]
            || edge_map[src.inverse(e)] != tgt.inverse(image)
        {
            is_morphism = false;
        }
    }

    let mut edge_hit = vec![0usize; tgt.num_directed_edges()];
    for &e in &edge_map {
        edge_hit[e] += 1;
    }
    let edges_bijective =
        src.num_directed_edges() == tgt.num_directed_edges() && edge_hit.iter().all(|&h| h == 1);

    let mut stars_injective = true;
    for w in 0..src.num_vertices() {
        let mut images: Vec<usize> = src.out_edges(w).iter().map(|&e| edge_map[e]).collect();
        images.sort_unstable();
        images.dedup();
        if images.len() != src.out_edges(w).len() {
            stars_injective = false;
        }
    }

    let mut vertex_hit = vec![0usize; tgt.num_vertices()];
    for &v in &vertex_map {
        vertex_hit[v] += 1;
    }
    let vertices_bijective = vertex_hit.iter().all(|&h| h == 1);

    Ok(ImmersionReport {
        is_morphism,
        edges_bijective,
        stars_injective,
        is_isomorphism: is_morphism && edges_bijective && vertices_bijective,
        source_vertex_count: src.num_vertices(),
        target_vertex_count: tgt.num_vertices(),
    })
}
