//! Dual graphs of equigenerated monomial ideals.
//!
//! The vertices of `G_I` are the minimal generators of `I`; two generators of
//! degree `d` are joined when their lcm has degree `d + 1`, i.e. they differ by
//! trading one variable for another. `Δ_n(d)` is the dual graph of `m^d`.
//!
//! A graph refers to its generators by index into [`MonomialIdeal::generators`],
//! so restricting a graph keeps vertex identities.

use std::borrow::Cow;
use std::collections::VecDeque;
use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::monomial::{Monomial, MonomialIdeal};

#[derive(Clone, Debug)]
pub struct DualGraph<'a> {
    ideal: Cow<'a, MonomialIdeal>,
    degree: u32,
    /// Generator indices, ascending.
    vertices: Vec<usize>,
    /// Pairs `(u, v)` of generator indices with `u < v`, sorted.
    edges: Vec<(usize, usize)>,
}

/// Two generators whose restricted graph `G_I(f, g)` is disconnected.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DisconnectedPair {
    pub first: Monomial,
    pub second: Monomial,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PresentationVerdict {
    Linear,
    Disconnected(DisconnectedPair),
}

impl PresentationVerdict {
    pub fn is_linear(&self) -> bool {
        matches!(self, PresentationVerdict::Linear)
    }

    pub fn witness(&self) -> Option<&DisconnectedPair> {
        match self {
            PresentationVerdict::Linear => None,
            PresentationVerdict::Disconnected(pair) => Some(pair),
        }
    }
}

fn adjacent(a: &Monomial, b: &Monomial, d: u32) -> bool {
    a.lcm_same(b).degree() == d + 1
}

/// The dual graph `G_I` of a nonzero equigenerated ideal.
pub fn dual_graph(ideal: &MonomialIdeal) -> Result<DualGraph<'_>> {
    DualGraph::build(Cow::Borrowed(ideal))
}

/// `Δ_n(d)`, the dual graph of `m^d`.
pub fn simplex_graph(n: usize, d: u32) -> Result<DualGraph<'static>> {
    DualGraph::build(Cow::Owned(MonomialIdeal::maximal_power(n, d)))
}

impl<'a> DualGraph<'a> {
    fn build(ideal: Cow<'a, MonomialIdeal>) -> Result<Self> {
        let degree = ideal.require_equigenerated()?;
        let gens = ideal.generators();
        let mut edges = Vec::new();
        for u in 0..gens.len() {
            for v in u + 1..gens.len() {
                if adjacent(&gens[u], &gens[v], degree) {
                    edges.push((u, v));
                }
            }
        }
        Ok(DualGraph {
            degree,
            vertices: (0..gens.len()).collect(),
            edges,
            ideal,
        })
    }

    pub fn ideal(&self) -> &MonomialIdeal {
        &self.ideal
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn contains_vertex(&self, v: usize) -> bool {
        self.vertices.binary_search(&v).is_ok()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        let key = if u < v { (u, v) } else { (v, u) };
        self.edges.binary_search(&key).is_ok()
    }

    pub fn monomial(&self, v: usize) -> &Monomial {
        &self.ideal.generators()[v]
    }

    /// The induced subgraph `G_I(f, g)` on the generators dividing
    /// `lcm(m_f, m_g)`.
    pub fn restricted_graph(&self, f: usize, g: usize) -> Result<DualGraph<'_>> {
        for v in [f, g] {
            if !self.contains_vertex(v) {
                return Err(Error::InvalidVertex(v));
            }
        }
        let bound = self.monomial(f).lcm_same(self.monomial(g));
        let vertices: Vec<usize> = self
            .vertices
            .iter()
            .copied()
            .filter(|&v| self.monomial(v).divides_same(&bound))
            .collect();
        let edges = self
            .edges
            .iter()
            .copied()
            .filter(|(u, v)| vertices.binary_search(u).is_ok() && vertices.binary_search(v).is_ok())
            .collect();
        Ok(DualGraph {
            ideal: Cow::Borrowed(self.ideal.as_ref()),
            degree: self.degree,
            vertices,
            edges,
        })
    }

    /// True iff the graph has a single connected component. Graphs with at
    /// most one vertex (including the empty graph) count as connected.
    pub fn is_connected(&self) -> bool {
        let Some(&start) = self.vertices.first() else {
            return true;
        };
        let reached = self.reachable_from(start, |_| true);
        reached == self.vertices.len()
    }

    /// Whether `G(f, g)` is connected, without materialising it.
    pub fn pair_connected(&self, f: usize, g: usize) -> Result<bool> {
        for v in [f, g] {
            if !self.contains_vertex(v) {
                return Err(Error::InvalidVertex(v));
            }
        }
        let bound = self.monomial(f).lcm_same(self.monomial(g));
        let allowed = |v: usize| self.monomial(v).divides_same(&bound);
        let size = self.vertices.iter().filter(|&&v| allowed(v)).count();
        Ok(self.reachable_from(f, allowed) == size)
    }

    /// Number of vertices reachable from `start` through vertices accepted by
    /// `allowed` (breadth-first).
    fn reachable_from(&self, start: usize, allowed: impl Fn(usize) -> bool) -> usize {
        let n = self.ideal.num_generators();
        let mut adjacency = vec![Vec::new(); n];
        for &(u, v) in &self.edges {
            if allowed(u) && allowed(v) {
                adjacency[u].push(v);
                adjacency[v].push(u);
            }
        }
        let mut seen = vec![false; n];
        seen[start] = true;
        let mut queue = VecDeque::from([start]);
        let mut count = 1;
        while let Some(u) = queue.pop_front() {
            for &w in &adjacency[u] {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    queue.push_back(w);
                }
            }
        }
        count
    }

    /// Graphviz rendering; vertices are labelled by their monomials.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph dual {\n");
        for &v in &self.vertices {
            let _ = writeln!(out, "  \"{}\";", self.monomial(v));
        }
        for &(u, v) in &self.edges {
            let _ = writeln!(
                out,
                "  \"{}\" -- \"{}\";",
                self.monomial(u),
                self.monomial(v)
            );
        }
        out.push_str("}\n");
        out
    }
}

/// Decides linear presentation: `I` is linearly presented iff `G_I(f, g)` is
/// connected for every pair of generators. On failure the first
/// disconnected pair in canonical order is returned.
pub fn is_linearly_presented(ideal: &MonomialIdeal) -> Result<PresentationVerdict> {
    let graph = dual_graph(ideal)?;
    let r = ideal.num_generators();
    for f in 0..r {
        for g in f + 1..r {
            if !graph.pair_connected(f, g)? {
                return Ok(PresentationVerdict::Disconnected(DisconnectedPair {
                    first: graph.monomial(f).clone(),
                    second: graph.monomial(g).clone(),
                }));
            }
        }
    }
    Ok(PresentationVerdict::Linear)
}
