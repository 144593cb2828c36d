//! Finite multigraphs in Serre's formalism.
//!
//! A graph is a set of vertices together with a set of *directed* edges
//! carrying an incidence map `e -> (o(e), t(e))` and a fixed-point-free
//! involution `e -> inv(e)` that swaps origin and terminus.  A geometric
//! (undirected) edge is a pair `{e, inv(e)}`; a geometric loop therefore
//! contributes two directed edges at its vertex and counts twice towards
//! the valency.  Parallel edges and loops are fully supported.

use std::collections::VecDeque;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::matrix::IntMatrix;

/// One directed edge: where it starts, where it ends, and its inverse.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DirectedEdge {
    pub origin: usize,
    pub terminus: usize,
    pub inverse: usize,
}

/// A finite multigraph given by directed-edge pairs.
///
/// Directed edges come in consecutive pairs: the undirected edge `i`
/// consists of the directed edges `2i` (the chosen orientation) and
/// `2i + 1` (its inverse).  Vertices and edge pairs keep their input
/// order; every deterministic tie-break in the crate uses this order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SerreGraph {
    vertex_names: Vec<String>,
    edges: Vec<DirectedEdge>,
    out_edges: Vec<Vec<usize>>,
}

impl SerreGraph {
    /// Builds a graph from named vertices and oriented edge pairs.
    ///
    /// Each `(a, b)` entry creates the directed edge `a -> b` and its
    /// inverse `b -> a`.
    pub fn new(vertex_names: Vec<String>, pairs: &[(usize, usize)]) -> Result<SerreGraph> {
        let n = vertex_names.len();
        let mut edges = Vec::with_capacity(2 * pairs.len());
        for &(a, b) in pairs {
            if a >= n {
                return Err(Error::UnknownVertex(a));
            }
            if b >= n {
                return Err(Error::UnknownVertex(b));
            }
            let i = edges.len();
            edges.push(DirectedEdge {
                origin: a,
                terminus: b,
                inverse: i + 1,
            });
            edges.push(DirectedEdge {
                origin: b,
                terminus: a,
                inverse: i,
            });
        }
        Ok(Self::assemble(vertex_names, edges))
    }

    /// Convenience constructor with vertices named `v1, v2, ...`.
    pub fn from_pairs(num_vertices: usize, pairs: &[(usize, usize)]) -> Result<SerreGraph> {
        let names = (1..=num_vertices).map(|i| format!("v{i}")).collect();
        SerreGraph::new(names, pairs)
    }

    /// Builds a graph from explicit directed edges without checking the
    /// Serre axioms.  Use [`SerreGraph::validate`] afterwards.
    pub fn from_raw_parts(vertex_names: Vec<String>, edges: Vec<DirectedEdge>) -> SerreGraph {
        Self::assemble(vertex_names, edges)
    }

    fn assemble(vertex_names: Vec<String>, edges: Vec<DirectedEdge>) -> SerreGraph {
        let n = vertex_names.len();
        let mut out_edges = vec![Vec::new(); n];
        for (i, e) in edges.iter().enumerate() {
            if e.origin < n {
                out_edges[e.origin].push(i);
            }
        }
        SerreGraph {
            vertex_names,
            edges,
            out_edges,
        }
    }

    pub fn num_vertices(&self) -> usize {
        self.vertex_names.len()
    }

    pub fn num_directed_edges(&self) -> usize {
        self.edges.len()
    }

    /// Number of geometric edges; only meaningful on valid graphs.
    pub fn num_undirected_edges(&self) -> usize {
        self.edges.len() / 2
    }

    pub fn vertex_name(&self, v: usize) -> &str {
        &self.vertex_names[v]
    }

    pub fn edges(&self) -> &[DirectedEdge] {
        &self.edges
    }

    pub fn origin(&self, e: usize) -> usize {
        self.edges[e].origin
    }

    pub fn terminus(&self, e: usize) -> usize {
        self.edges[e].terminus
    }

    pub fn inverse(&self, e: usize) -> usize {
        self.edges[e].inverse
    }

    /// Directed edges with origin `v`, in ascending index order.
    pub fn out_edges(&self, v: usize) -> &[usize] {
        &self.out_edges[v]
    }

    /// One canonical directed edge per geometric edge: the indices `i`
    /// with `i < inverse(i)`, ascending.  Geometric edges are numbered
    /// by their rank in this list; graphs built through
    /// [`SerreGraph::new`] make rank `k` the directed pair `(2k, 2k+1)`,
    /// but derived graphs pair arbitrary indices.
    pub fn undirected_representatives(&self) -> Vec<usize> {
        (0..self.edges.len())
            .filter(|&i| {
                let inv = self.edges[i].inverse;
                inv < self.edges.len() && i < inv
            })
            .collect()
    }

    /// Checks the Serre axioms and returns the list of violations.
    /// An empty list means the graph is valid.
    pub fn validate(&self) -> Vec<String> {
        let mut violations = Vec::new();
        let n = self.num_vertices();
        let m = self.edges.len();
        if !m.is_multiple_of(2) {
            violations.push(format!("directed edge count {m} is odd"));
        }
        for (i, e) in self.edges.iter().enumerate() {
            if e.origin >= n {
                violations.push(format!("edge {i}: origin {} out of range", e.origin));
                continue;
            }
            if e.terminus >= n {
                violations.push(format!("edge {i}: terminus {} out of range", e.terminus));
                continue;
            }
            if e.inverse >= m {
                violations.push(format!("edge {i}: inverse {} out of range", e.inverse));
                continue;
            }
            if e.inverse == i {
                violations.push(format!("edge {i}: inverse equals the edge itself"));
                continue;
            }
            let inv = &self.edges[e.inverse];
            if inv.inverse != i {
                violations.push(format!("edge {i}: inverse is not an involution"));
            }
            if inv.origin != e.terminus || inv.terminus != e.origin {
                violations.push(format!(
                    "edge {i}: inverse does not swap origin and terminus"
                ));
            }
        }
        violations
    }

    /// Number of directed edges with origin `v`.  A loop contributes 2.
    pub fn valency(&self, v: usize) -> Result<usize> {
        if v >= self.num_vertices() {
            return Err(Error::UnknownVertex(v));
        }
        Ok(self.out_edges[v].len())
    }

    /// True iff every pair of vertices is joined by a path.
    pub fn is_connected(&self) -> Result<bool> {
        let n = self.num_vertices();
        if n == 0 {
            return Err(Error::EmptyGraph);
        }
        let mut seen = vec![false; n];
        let mut queue = VecDeque::new();
        seen[0] = true;
        queue.push_back(0);
        let mut count = 1;
        while let Some(v) = queue.pop_front() {
            for &e in &self.out_edges[v] {
                let w = self.edges[e].terminus;
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    queue.push_back(w);
                }
            }
        }
        Ok(count == n)
    }

    /// Deterministic spanning tree: scan geometric edges in canonical
    /// order and keep each one that joins two components.  Returns the
    /// kept geometric-edge ranks.  Loops are never kept.
    pub fn spanning_tree(&self) -> Result<Vec<usize>> {
        let n = self.num_vertices();
        if n == 0 {
            return Err(Error::EmptyGraph);
        }
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        let mut tree = Vec::with_capacity(n.saturating_sub(1));
        for (rank, &rep) in self.undirected_representatives().iter().enumerate() {
            let e = &self.edges[rep];
            let a = find(&mut parent, e.origin);
            let b = find(&mut parent, e.terminus);
            if a != b {
                parent[a] = b;
                tree.push(rank);
            }
        }
        if tree.len() + 1 != n {
            return Err(Error::Disconnected);
        }
        Ok(tree)
    }

    /// Sums an abelian edge weight along each fundamental cycle of the
    /// given spanning tree, one value per non-tree geometric edge in
    /// canonical order.  The weight map must satisfy
    /// `w(inv(e)) = -w(e)`; `weight` returning `None` reports a missing
    /// edge.  The returned values generate the same subgroup as the
    /// weight of the fundamental group based at vertex 0.
    pub fn fundamental_cycle_sums<T, F>(&self, tree: &[usize], zero: T, weight: F) -> Result<Vec<T>>
    where
        T: Clone + std::ops::Add<Output = T>,
        F: Fn(usize) -> Option<T>,
    {
        let n = self.num_vertices();
        if n == 0 {
            return Err(Error::EmptyGraph);
        }
        let w = |e: usize| weight(e).ok_or(Error::MissingWeight(e));
        let reps = self.undirected_representatives();
        let mut in_tree = vec![false; self.edges.len()];
        for &rank in tree {
            let rep = reps[rank];
            in_tree[rep] = true;
            in_tree[self.edges[rep].inverse] = true;
        }
        // forward[v] = weight of the tree path 0 -> v,
        // backward[v] = weight of the tree path v -> 0.
        let mut forward: Vec<Option<T>> = vec![None; n];
        let mut backward: Vec<Option<T>> = vec![None; n];
        forward[0] = Some(zero.clone());
        backward[0] = Some(zero);
        let mut queue = VecDeque::new();
        queue.push_back(0usize);
        while let Some(v) = queue.pop_front() {
            for &e in &self.out_edges[v] {
                if !in_tree[e] {
                    continue;
                }
                let u = self.edges[e].terminus;
                if forward[u].is_none() {
                    let fv = forward[v].clone().unwrap();
                    let bv = backward[v].clone().unwrap();
                    forward[u] = Some(fv + w(e)?);
                    backward[u] = Some(w(self.edges[e].inverse)? + bv);
                    queue.push_back(u);
                }
            }
        }
        let mut sums = Vec::new();
        for &e in &reps {
            if in_tree[e] {
                continue;
            }
            let o = self.edges[e].origin;
            let t = self.edges[e].terminus;
            let (fo, bt) = match (&forward[o], &backward[t]) {
                (Some(f), Some(b)) => (f.clone(), b.clone()),
                _ => return Err(Error::Disconnected),
            };
            sums.push(fo + w(e)? + bt);
        }
        Ok(sums)
    }

    /// The graph Laplacian `L = D - A` as an exact integer matrix.
    /// Rows and columns sum to zero.
    pub fn laplacian_matrix(&self) -> IntMatrix {
        let n = self.num_vertices();
        let mut m = IntMatrix::zero(n, n);
        for v in 0..n {
            *m.entry_mut(v, v) += BigInt::from(self.out_edges[v].len());
        }
        for e in &self.edges {
            *m.entry_mut(e.origin, e.terminus) -= 1;
        }
        m
    }

    /// Applies the Laplacian operator to a divisor without materializing
    /// the matrix.
    pub fn laplacian_apply(&self, d: &Divisor) -> Result<Divisor> {
        let n = self.num_vertices();
        if d.len() != n {
            return Err(Error::SupportMismatch {
                expected: n,
                got: d.len(),
            });
        }
        let mut out = Divisor::new(n);
        for v in 0..n {
            let mut acc = d.coeff(v) * BigInt::from(self.out_edges[v].len());
            for &e in &self.out_edges[v] {
                acc -= d.coeff(self.edges[e].terminus);
            }
            out.set(v, acc);
        }
        Ok(out)
    }
}

/// A choice of one directed edge per undirected pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orientation {
    edges: Vec<usize>,
}

impl Orientation {
    /// The canonical orientation: the lower directed index of each pair.
    pub fn canonical(g: &SerreGraph) -> Orientation {
        let mut edges = Vec::with_capacity(g.num_undirected_edges());
        let mut taken = vec![false; g.num_directed_edges()];
        for e in 0..g.num_directed_edges() {
            if !taken[e] {
                taken[e] = true;
                taken[g.inverse(e)] = true;
                edges.push(e);
            }
        }
        Orientation { edges }
    }

    pub fn edges(&self) -> &[usize] {
        &self.edges
    }

    /// True iff exactly one edge of each `{e, inv(e)}` pair is present.
    pub fn is_valid(&self, g: &SerreGraph) -> bool {
        if self.edges.len() * 2 != g.num_directed_edges() {
            return false;
        }
        let mut seen = vec![false; g.num_directed_edges()];
        for &e in &self.edges {
            if e >= g.num_directed_edges() || seen[e] || seen[g.inverse(e)] {
                return false;
            }
            seen[e] = true;
        }
        true
    }
}

/// An integer divisor: one arbitrary-precision coefficient per vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Divisor {
    coeffs: Vec<BigInt>,
}

impl Divisor {
    pub fn new(num_vertices: usize) -> Divisor {
        Divisor {
            coeffs: vec![BigInt::zero(); num_vertices],
        }
    }

    pub fn from_coeffs(coeffs: Vec<BigInt>) -> Divisor {
        Divisor { coeffs }
    }

    /// The divisor `1 * v`.
    pub fn vertex(num_vertices: usize, v: usize) -> Divisor {
        let mut d = Divisor::new(num_vertices);
        d.coeffs[v] = BigInt::from(1);
        d
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, v: usize) -> BigInt {
        self.coeffs[v].clone()
    }

    pub fn set(&mut self, v: usize, value: BigInt) {
        self.coeffs[v] = value;
    }

    pub fn add_at(&mut self, v: usize, value: &BigInt) {
        self.coeffs[v] += value;
    }

    pub fn degree(&self) -> BigInt {
        self.coeffs.iter().sum()
    }
}
