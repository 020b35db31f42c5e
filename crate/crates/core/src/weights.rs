//! Lie-theoretic weights of trivalent (Jacobi) graphs and of the bicolored
//! graphs of a gauge field coupled to a charged fermion, the AS and IHX
//! relations, and automorphism counts.
//!
//! A graph is a set of half-edges: every half-edge sits in exactly one
//! vertex slot or is a leg, and edges pair half-edges perfectly. Gauge
//! vertices carry `f_abc = ⟨[e_a, e_b], e_c⟩`, gauge edges carry the inverse
//! of the pairing, fermion vertices carry `ρ(e_a)[out][in]`, and each
//! fermion cycle contributes a factor `-1`.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::lie::{InvariantPairing, LieAlgebraData, Representation};
use crate::ring::{rat, HSeries, Rational};

pub const MAX_ALGEBRA_DIM: usize = 8;
pub const MAX_EDGES: usize = 10;
pub const MAX_SYMMETRY_VERTICES: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WeightError {
    #[error("graph has open legs and no leg vectors were given")]
    OpenGraph,
    #[error("too large: {0}")]
    DimensionTooLarge(String),
    #[error("fermion half-edge {0} is not closed into a cycle")]
    OpenFermionPath(usize),
    #[error("malformed graph: {0}")]
    Malformed(String),
    #[error("pairing does not fit the algebra: {0}")]
    Pairing(String),
    #[error("symmetry factor limited to {MAX_SYMMETRY_VERTICES} vertices, got {0}")]
    TooLarge(usize),
}

/// Which pairing enters the vertex tensor when the level has `h`-corrections.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum VertexMode {
    /// `⟨[a,b],c⟩` with the full graded pairing.
    #[default]
    Full,
    /// `⟨[a,b],c⟩` with the classical pairing only.
    Classical,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JacobiGraph {
    /// Each vertex lists its three half-edges in cyclic order.
    pub vertices: Vec<[usize; 3]>,
    pub legs: Vec<usize>,
    pub edges: Vec<(usize, usize)>,
}

impl JacobiGraph {
    pub fn new(
        vertices: Vec<[usize; 3]>,
        legs: Vec<usize>,
        edges: Vec<(usize, usize)>,
    ) -> Result<Self, WeightError> {
        let g = Self {
            vertices,
            legs,
            edges,
        };
        g.validate()?;
        Ok(g)
    }

    fn validate(&self) -> Result<(), WeightError> {
        let slots: Vec<usize> = self
            .vertices
            .iter()
            .flatten()
            .chain(&self.legs)
            .copied()
            .collect();
        let paired: Vec<usize> = self.edges.iter().flat_map(|&(a, b)| [a, b]).collect();
        check_partition(&slots, &paired)
    }

    pub fn from_json(text: &str) -> Result<Self, WeightError> {
        let g: Self =
            serde_json::from_str(text).map_err(|e| WeightError::Malformed(e.to_string()))?;
        g.validate()?;
        Ok(g)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("serializable")
    }

    pub fn half_edge_count(&self) -> usize {
        self.vertices.len() * 3 + self.legs.len()
    }

    /// Two vertices joined by three edges, drawn in the plane with both
    /// vertices counterclockwise. Its weight is `dim g` for the Killing form.
    pub fn theta() -> Self {
        Self::new(
            vec![[0, 1, 2], [3, 4, 5]],
            vec![],
            vec![(0, 3), (1, 5), (2, 4)],
        )
        .expect("theta")
    }

    /// A single edge between two legs.
    pub fn strut() -> Self {
        Self::new(vec![], vec![0, 1], vec![(0, 1)]).expect("strut")
    }

    /// Disjoint union; half-edges of `other` are renumbered.
    pub fn disjoint_union(&self, other: &Self) -> Self {
        let shift = self.half_edge_count();
        let s = |h: usize| h + shift;
        Self {
            vertices: self
                .vertices
                .iter()
                .cloned()
                .chain(other.vertices.iter().map(|v| v.map(s)))
                .collect(),
            legs: self
                .legs
                .iter()
                .copied()
                .chain(other.legs.iter().map(|&h| s(h)))
                .collect(),
            edges: self
                .edges
                .iter()
                .copied()
                .chain(other.edges.iter().map(|&(a, b)| (s(a), s(b))))
                .collect(),
        }
    }

    /// The same graph with the cyclic order at `vertex` reversed.
    pub fn reverse_vertex(&self, vertex: usize) -> Self {
        let mut g = self.clone();
        g.vertices[vertex].swap(1, 2);
        g
    }

    /// A closed trivalent graph on `vertices` vertices (even) with a random
    /// matching and random cyclic orders.
    pub fn random_closed(vertices: usize, rng: &mut impl Rng) -> Self {
        assert!(
            vertices.is_multiple_of(2),
            "closed trivalent graphs have an even vertex count"
        );
        let mut halves: Vec<usize> = (0..3 * vertices).collect();
        halves.shuffle(rng);
        let edges = halves.chunks(2).map(|p| (p[0], p[1])).collect();
        let verts = (0..vertices)
            .map(|v| {
                let mut slots = [3 * v, 3 * v + 1, 3 * v + 2];
                if rng.gen_bool(0.5) {
                    slots.swap(1, 2);
                }
                slots
            })
            .collect();
        Self::new(verts, vec![], edges).expect("random graph is well formed")
    }

    /// Graphs of the three-term relation at `edge`, when it joins two
    /// distinct vertices. The weights of the three graphs sum to zero.
    pub fn ihx_triple(&self, edge: usize) -> Option<[JacobiGraph; 3]> {
        let (h1, h2) = self.edges[edge];
        let owner = |h: usize| self.vertices.iter().position(|v| v.contains(&h));
        let (u, v) = (owner(h1)?, owner(h2)?);
        if u == v {
            return None;
        }
        // rotate so that the shared edge is last at u and first at v
        let rot_u = rotate_to(self.vertices[u], h1, 2);
        let rot_v = rotate_to(self.vertices[v], h2, 0);
        let (p, q, m) = (rot_u[0], rot_u[1], rot_u[2]);
        let (m2, r, s) = (rot_v[0], rot_v[1], rot_v[2]);
        let build = |a: usize, b: usize, c: usize| {
            let mut g = self.clone();
            g.vertices[u] = [a, b, m];
            g.vertices[v] = [m2, c, s];
            g
        };
        Some([build(p, q, r), build(q, r, p), build(r, p, q)])
    }

    fn as_bicolored(&self) -> BicoloredGraph {
        BicoloredGraph {
            gauge_vertices: self.vertices.clone(),
            fermion_vertices: vec![],
            legs: self.legs.clone(),
            gauge_edges: self.edges.clone(),
            fermion_edges: vec![],
            bare_fermion_loops: 0,
        }
    }
}

fn rotate_to(v: [usize; 3], h: usize, slot: usize) -> [usize; 3] {
    let i = v.iter().position(|&x| x == h).expect("half-edge at vertex");
    let shift = (i + 3 - slot) % 3;
    [v[shift % 3], v[(shift + 1) % 3], v[(shift + 2) % 3]]
}

fn check_partition(slots: &[usize], paired: &[usize]) -> Result<(), WeightError> {
    let mut seen = BTreeSet::new();
    for &h in slots {
        if !seen.insert(h) {
            return Err(WeightError::Malformed(format!("half-edge {h} used twice")));
        }
    }
    let mut matched = BTreeSet::new();
    for &h in paired {
        if !seen.contains(&h) {
            return Err(WeightError::Malformed(format!(
                "edge uses unknown half-edge {h}"
            )));
        }
        if !matched.insert(h) {
            return Err(WeightError::Malformed(format!(
                "half-edge {h} is in two edges"
            )));
        }
    }
    if let Some(h) = seen.difference(&matched).next() {
        return Err(WeightError::Malformed(format!(
            "half-edge {h} is unmatched"
        )));
    }
    Ok(())
}

/// Fermion vertex `g ψ ψ̄`: one gauge half-edge and a directed fermion line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FermionVertex {
    pub gauge: usize,
    pub incoming: usize,
    pub outgoing: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BicoloredGraph {
    #[serde(default)]
    pub gauge_vertices: Vec<[usize; 3]>,
    #[serde(default)]
    pub fermion_vertices: Vec<FermionVertex>,
    /// Gauge legs.
    #[serde(default)]
    pub legs: Vec<usize>,
    #[serde(default)]
    pub gauge_edges: Vec<(usize, usize)>,
    /// Directed `(outgoing half-edge, incoming half-edge)`.
    #[serde(default)]
    pub fermion_edges: Vec<(usize, usize)>,
    /// Fermion loops with no vertices on them.
    #[serde(default)]
    pub bare_fermion_loops: usize,
}

impl BicoloredGraph {
    pub fn validate(&self) -> Result<(), WeightError> {
        let gauge_slots: Vec<usize> = self
            .gauge_vertices
            .iter()
            .flatten()
            .copied()
            .chain(self.fermion_vertices.iter().map(|f| f.gauge))
            .chain(self.legs.iter().copied())
            .collect();
        let gauge_paired: Vec<usize> = self.gauge_edges.iter().flat_map(|&(a, b)| [a, b]).collect();
        check_partition(&gauge_slots, &gauge_paired)?;
        let outs: BTreeSet<usize> = self.fermion_vertices.iter().map(|f| f.outgoing).collect();
        let ins: BTreeSet<usize> = self.fermion_vertices.iter().map(|f| f.incoming).collect();
        let all: BTreeSet<usize> = gauge_slots.iter().copied().collect();
        if outs.len() + ins.len() != 2 * self.fermion_vertices.len()
            || outs.iter().chain(&ins).any(|h| all.contains(h))
            || !outs.is_disjoint(&ins)
        {
            return Err(WeightError::Malformed(
                "fermion half-edges must be distinct".into(),
            ));
        }
        let mut out_used = BTreeSet::new();
        let mut in_used = BTreeSet::new();
        for &(o, i) in &self.fermion_edges {
            if !outs.contains(&o) || !ins.contains(&i) {
                return Err(WeightError::Malformed(format!(
                    "fermion edge ({o}, {i}) must run from an outgoing to an incoming half-edge"
                )));
            }
            if !out_used.insert(o) || !in_used.insert(i) {
                return Err(WeightError::Malformed(format!(
                    "fermion edge ({o}, {i}) reuses a half-edge"
                )));
            }
        }
        if let Some(&h) = outs
            .difference(&out_used)
            .next()
            .or_else(|| ins.difference(&in_used).next())
        {
            return Err(WeightError::OpenFermionPath(h));
        }
        Ok(())
    }

    pub fn from_json(text: &str) -> Result<Self, WeightError> {
        let g: Self =
            serde_json::from_str(text).map_err(|e| WeightError::Malformed(e.to_string()))?;
        g.validate()?;
        Ok(g)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("serializable")
    }

    /// Number of fermion cycles through at least one vertex.
    pub fn fermion_cycles(&self) -> usize {
        let index: HashMap<usize, usize> = self
            .fermion_vertices
            .iter()
            .enumerate()
            .map(|(k, f)| (f.incoming, k))
            .collect();
        let next: HashMap<usize, usize> = self
            .fermion_edges
            .iter()
            .map(|&(o, i)| (o, index[&i]))
            .collect();
        let mut seen = vec![false; self.fermion_vertices.len()];
        let mut cycles = 0;
        for start in 0..seen.len() {
            if seen[start] {
                continue;
            }
            cycles += 1;
            let mut k = start;
            while !seen[k] {
                seen[k] = true;
                k = next[&self.fermion_vertices[k].outgoing];
            }
        }
        cycles
    }

    /// A fermion cycle through `k` vertices whose gauge half-edges are legs.
    pub fn fermion_wheel(k: usize) -> Self {
        if k == 0 {
            return Self {
                bare_fermion_loops: 1,
                ..Self::empty()
            };
        }
        let fermion_vertices: Vec<FermionVertex> = (0..k)
            .map(|v| FermionVertex {
                gauge: 3 * v,
                incoming: 3 * v + 1,
                outgoing: 3 * v + 2,
            })
            .collect();
        let legs: Vec<usize> = (0..k).map(|v| 3 * k + v).collect();
        let gauge_edges = (0..k).map(|v| (3 * v, 3 * k + v)).collect();
        let fermion_edges = (0..k).map(|v| (3 * v + 2, 3 * ((v + 1) % k) + 1)).collect();
        Self {
            gauge_vertices: vec![],
            fermion_vertices,
            legs,
            gauge_edges,
            fermion_edges,
            bare_fermion_loops: 0,
        }
    }

    /// A fermion cycle through two vertices whose gauge half-edges are
    /// joined by one gauge edge.
    pub fn fermion_two_wheel_closed() -> Self {
        let mut g = Self::fermion_wheel(2);
        g.legs.clear();
        g.gauge_edges = vec![(0, 3)];
        g
    }

    fn empty() -> Self {
        Self {
            gauge_vertices: vec![],
            fermion_vertices: vec![],
            legs: vec![],
            gauge_edges: vec![],
            fermion_edges: vec![],
            bare_fermion_loops: 0,
        }
    }
}

/// `(G_0 + h G_1 + ...)^{-1}` entrywise as series truncated at `order`.
fn inverse_pairing(
    lambda: &InvariantPairing,
    order: usize,
) -> Result<Vec<Vec<HSeries>>, WeightError> {
    let g = lambda.orders();
    let d = g[0].rows();
    let g0inv = g[0]
        .inverse()
        .ok_or_else(|| WeightError::Pairing("classical pairing is degenerate".into()))?;
    let mut inv = vec![g0inv.clone()];
    for k in 1..=order {
        let mut acc = crate::linalg::QMatrix::zeros(d, d);
        for j in 1..=k.min(g.len() - 1) {
            acc = acc.add(&g[j].mul(&inv[k - j]));
        }
        inv.push(g0inv.mul(&acc).scale(&rat(-1, 1)));
    }
    Ok((0..d)
        .map(|a| {
            (0..d)
                .map(|b| HSeries::from_coeffs(inv.iter().map(|m| m[(a, b)].clone()).collect()))
                .collect()
        })
        .collect())
}

fn pairing_series(lambda: &InvariantPairing, order: usize) -> Vec<Vec<HSeries>> {
    let g = lambda.orders();
    let d = g[0].rows();
    (0..d)
        .map(|a| {
            (0..d)
                .map(|b| {
                    HSeries::from_coeffs(
                        (0..=order)
                            .map(|k| g.get(k).map_or_else(Rational::zero, |m| m[(a, b)].clone()))
                            .collect(),
                    )
                })
                .collect()
        })
        .collect()
}

/// A node of the tensor network: the wires at its slots and its nonzero
/// entries.
struct Node {
    wires: Vec<usize>,
    entries: Vec<(Vec<u8>, HSeries)>,
}

struct Network {
    nodes: Vec<Node>,
    order: usize,
}

impl Network {
    fn contract(mut self) -> HSeries {
        let mut open: Vec<usize> = Vec::new();
        let mut current: HashMap<Vec<u8>, HSeries> =
            HashMap::from([(vec![], HSeries::one(self.order))]);
        while !self.nodes.is_empty() {
            let open_set: BTreeSet<usize> = open.iter().copied().collect();
            let pick = (0..self.nodes.len())
                .max_by_key(|&k| {
                    let shared = self.nodes[k]
                        .wires
                        .iter()
                        .filter(|w| open_set.contains(w))
                        .count();
                    (shared, usize::MAX - self.nodes[k].entries.len())
                })
                .expect("nonempty");
            let node = self.nodes.swap_remove(pick);
            // positions of shared wires in `open` and in the node
            let shared: Vec<(usize, usize)> = node
                .wires
                .iter()
                .enumerate()
                .filter_map(|(j, w)| open.iter().position(|x| x == w).map(|i| (i, j)))
                .collect();
            let keep_open: Vec<usize> = (0..open.len())
                .filter(|i| !shared.iter().any(|s| s.0 == *i))
                .collect();
            let keep_node: Vec<usize> = (0..node.wires.len())
                .filter(|j| !shared.iter().any(|s| s.1 == *j))
                .collect();
            let mut grouped: HashMap<Vec<u8>, Vec<(Vec<u8>, &HSeries)>> = HashMap::new();
            for (idx, val) in &node.entries {
                let key: Vec<u8> = shared.iter().map(|s| idx[s.1]).collect();
                let rest: Vec<u8> = keep_node.iter().map(|&j| idx[j]).collect();
                grouped.entry(key).or_default().push((rest, val));
            }
            let mut next: HashMap<Vec<u8>, HSeries> = HashMap::new();
            for (idx, val) in &current {
                let key: Vec<u8> = shared.iter().map(|s| idx[s.0]).collect();
                let Some(matches) = grouped.get(&key) else {
                    continue;
                };
                let base: Vec<u8> = keep_open.iter().map(|&i| idx[i]).collect();
                for (rest, v2) in matches {
                    let mut k = base.clone();
                    k.extend_from_slice(rest);
                    let prod = val * *v2;
                    let slot = next.entry(k).or_insert_with(|| HSeries::zero(self.order));
                    *slot = &*slot + &prod;
                }
            }
            next.retain(|_, v| !v.is_zero());
            open = keep_open
                .iter()
                .map(|&i| open[i])
                .chain(keep_node.iter().map(|&j| node.wires[j]))
                .collect();
            current = next;
        }
        current
            .remove(&vec![])
            .unwrap_or_else(|| HSeries::zero(self.order))
    }
}

/// Inputs shared by the weight computations.
pub struct WeightContext<'a> {
    pub g: &'a LieAlgebraData,
    pub lambda: &'a InvariantPairing,
    pub mode: VertexMode,
}

impl<'a> WeightContext<'a> {
    pub fn new(g: &'a LieAlgebraData, lambda: &'a InvariantPairing) -> Self {
        Self {
            g,
            lambda,
            mode: VertexMode::Full,
        }
    }

    pub fn with_mode(mut self, mode: VertexMode) -> Self {
        self.mode = mode;
        self
    }

    fn check(&self) -> Result<(), WeightError> {
        let d = self.g.dim();
        if d > MAX_ALGEBRA_DIM {
            return Err(WeightError::DimensionTooLarge(format!(
                "dim g = {d} > {MAX_ALGEBRA_DIM}"
            )));
        }
        if self
            .lambda
            .orders()
            .iter()
            .any(|m| m.rows() != d || m.cols() != d)
        {
            return Err(WeightError::Pairing(format!(
                "pairing matrices must be {d}×{d}"
            )));
        }
        Ok(())
    }

    /// `f_abc = ⟨[e_a, e_b], e_c⟩` as series.
    fn vertex_entries(&self, order: usize) -> Vec<(Vec<u8>, HSeries)> {
        let d = self.g.dim();
        let pairing = match self.mode {
            VertexMode::Full => pairing_series(self.lambda, order),
            VertexMode::Classical => pairing_series(
                &InvariantPairing::classical(self.lambda.orders()[0].clone()),
                order,
            ),
        };
        let mut out = Vec::new();
        for a in 0..d {
            for b in 0..d {
                let mut row = vec![HSeries::zero(order); d];
                for m in 0..d {
                    let f = self.g.f(a, b, m);
                    if f.is_zero() {
                        continue;
                    }
                    for (c, slot) in row.iter_mut().enumerate() {
                        *slot = &*slot + &pairing[m][c].scale(f);
                    }
                }
                for (c, v) in row.into_iter().enumerate() {
                    if !v.is_zero() {
                        out.push((vec![a as u8, b as u8, c as u8], v));
                    }
                }
            }
        }
        out
    }

    /// Contracts a bicolored graph; legs receive `leg_vectors` in order.
    fn evaluate(
        &self,
        graph: &BicoloredGraph,
        rho: Option<&Representation>,
        leg_vectors: &[Vec<Rational>],
    ) -> Result<HSeries, WeightError> {
        self.check()?;
        graph.validate()?;
        if leg_vectors.len() != graph.legs.len() {
            return Err(WeightError::OpenGraph);
        }
        let edges = graph.gauge_edges.len() + graph.fermion_edges.len();
        if edges > MAX_EDGES {
            return Err(WeightError::DimensionTooLarge(format!(
                "{edges} edges > {MAX_EDGES}"
            )));
        }
        let d = self.g.dim();
        let order = self.lambda.max_order();
        let ginv = inverse_pairing(self.lambda, order)?;
        let gser = pairing_series(self.lambda, order);
        // each half-edge is a wire; gauge edges become propagator nodes and
        // fermion edges identify their two half-edges
        let mut wire: HashMap<usize, usize> = HashMap::new();
        let mut fresh = 0usize;
        let mut wire_of = |h: usize, wire: &mut HashMap<usize, usize>| {
            *wire.entry(h).or_insert_with(|| {
                fresh += 1;
                fresh - 1
            })
        };
        for &(o, i) in &graph.fermion_edges {
            let w = wire_of(o, &mut wire);
            wire.insert(i, w);
        }
        let mut nodes = Vec::new();
        let vertex = self.vertex_entries(order);
        for v in &graph.gauge_vertices {
            nodes.push(Node {
                wires: v.iter().map(|&h| wire_of(h, &mut wire)).collect(),
                entries: vertex.clone(),
            });
        }
        if !graph.fermion_vertices.is_empty() {
            let rho = rho.ok_or_else(|| {
                WeightError::Malformed("fermion vertices need a representation".into())
            })?;
            if rho.matrices().len() != d {
                return Err(WeightError::Malformed(
                    "representation does not match the algebra".into(),
                ));
            }
            let mut entries = Vec::new();
            for (a, m) in rho.matrices().iter().enumerate() {
                for i in 0..m.rows() {
                    for j in 0..m.cols() {
                        if !m[(i, j)].is_zero() {
                            entries.push((
                                vec![a as u8, i as u8, j as u8],
                                HSeries::constant(m[(i, j)].clone(), order),
                            ));
                        }
                    }
                }
            }
            for f in &graph.fermion_vertices {
                let wires = vec![
                    wire_of(f.gauge, &mut wire),
                    wire_of(f.outgoing, &mut wire),
                    wire_of(f.incoming, &mut wire),
                ];
                nodes.push(Node {
                    wires,
                    entries: entries.clone(),
                });
            }
        }
        for (&h, x) in graph.legs.iter().zip(leg_vectors) {
            if x.len() != d {
                return Err(WeightError::Malformed(format!(
                    "leg vector has length {}, expected {d}",
                    x.len()
                )));
            }
            // covector G·x, so that the propagator on the leg's edge returns x
            let mut entries = Vec::new();
            for a in 0..d {
                let mut s = HSeries::zero(order);
                for (b, xb) in x.iter().enumerate() {
                    if !xb.is_zero() {
                        s = &s + &gser[a][b].scale(xb);
                    }
                }
                if !s.is_zero() {
                    entries.push((vec![a as u8], s));
                }
            }
            nodes.push(Node {
                wires: vec![wire_of(h, &mut wire)],
                entries,
            });
        }
        let mut prop = Vec::new();
        for (a, row) in ginv.iter().enumerate() {
            for (b, v) in row.iter().enumerate() {
                if !v.is_zero() {
                    prop.push((vec![a as u8, b as u8], v.clone()));
                }
            }
        }
        for &(h1, h2) in &graph.gauge_edges {
            nodes.push(Node {
                wires: vec![wire_of(h1, &mut wire), wire_of(h2, &mut wire)],
                entries: prop.clone(),
            });
        }
        let value = Network { nodes, order }.contract();
        let dim_v = rho.map_or(0, Representation::dim) as i64;
        let mut factor = if graph.fermion_cycles().is_multiple_of(2) {
            rat(1, 1)
        } else {
            rat(-1, 1)
        };
        for _ in 0..graph.bare_fermion_loops {
            factor *= rat(-dim_v, 1);
        }
        Ok(value.scale(&factor))
    }
}

/// Weight of a closed Jacobi graph.
pub fn lie_weight(
    graph: &JacobiGraph,
    g: &LieAlgebraData,
    lambda: &InvariantPairing,
) -> Result<HSeries, WeightError> {
    if !graph.legs.is_empty() {
        return Err(WeightError::OpenGraph);
    }
    WeightContext::new(g, lambda).evaluate(&graph.as_bicolored(), None, &[])
}

/// Weight of a Jacobi graph whose legs are contracted with the given
/// vectors; also takes the vertex mode.
pub fn lie_weight_with(
    ctx: &WeightContext<'_>,
    graph: &JacobiGraph,
    leg_vectors: &[Vec<Rational>],
) -> Result<HSeries, WeightError> {
    ctx.evaluate(&graph.as_bicolored(), None, leg_vectors)
}

/// Weight of a closed bicolored graph in the representation `rho`.
pub fn coupled_weight(
    graph: &BicoloredGraph,
    g: &LieAlgebraData,
    rho: &Representation,
    lambda: &InvariantPairing,
) -> Result<HSeries, WeightError> {
    if !graph.legs.is_empty() {
        return Err(WeightError::OpenGraph);
    }
    WeightContext::new(g, lambda).evaluate(graph, Some(rho), &[])
}

/// As [`coupled_weight`] with gauge legs contracted against `leg_vectors`.
pub fn coupled_weight_with(
    ctx: &WeightContext<'_>,
    graph: &BicoloredGraph,
    rho: &Representation,
    leg_vectors: &[Vec<Rational>],
) -> Result<HSeries, WeightError> {
    ctx.evaluate(graph, Some(rho), leg_vectors)
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct RelationReport {
    pub graphs: usize,
    pub as_checks: usize,
    pub ihx_checks: usize,
    /// Descriptions of failed checks.
    pub failures: Vec<String>,
}

impl RelationReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks AS at every vertex and IHX at every edge between distinct
/// vertices, for each closed graph in `family`.
pub fn check_as_ihx(
    g: &LieAlgebraData,
    lambda: &InvariantPairing,
    family: &[JacobiGraph],
) -> Result<RelationReport, WeightError> {
    let mut report = RelationReport {
        graphs: family.len(),
        ..Default::default()
    };
    for (k, graph) in family.iter().enumerate() {
        let w = lie_weight(graph, g, lambda)?;
        for v in 0..graph.vertices.len() {
            report.as_checks += 1;
            if lie_weight(&graph.reverse_vertex(v), g, lambda)? != -&w {
                report
                    .failures
                    .push(format!("AS fails on graph {k} at vertex {v}"));
            }
        }
        for e in 0..graph.edges.len() {
            let Some(triple) = graph.ihx_triple(e) else {
                continue;
            };
            report.ihx_checks += 1;
            let mut sum = HSeries::zero(lambda.max_order());
            for t in &triple {
                sum = &sum + &lie_weight(t, g, lambda)?;
            }
            if !sum.is_zero() {
                report
                    .failures
                    .push(format!("IHX fails on graph {k} at edge {e}"));
            }
        }
    }
    Ok(report)
}

/// The theta graph plus seeded random closed graphs on 2, 4 and 6 vertices.
pub fn generated_family(rng: &mut impl Rng, per_size: usize) -> Vec<JacobiGraph> {
    let mut out = vec![JacobiGraph::theta()];
    for v in [2, 4, 6] {
        for _ in 0..per_size {
            out.push(JacobiGraph::random_closed(v, rng));
        }
    }
    out
}

/// Number of permutations of half-edges that map vertices to vertices and
/// edges to edges and fix every leg. Cyclic orders are not required to be
/// preserved.
pub fn symmetry_factor(graph: &JacobiGraph) -> Result<u64, WeightError> {
    graph.validate()?;
    if graph.vertices.len() > MAX_SYMMETRY_VERTICES {
        return Err(WeightError::TooLarge(graph.vertices.len()));
    }
    let mut partner: BTreeMap<usize, usize> = BTreeMap::new();
    for &(a, b) in &graph.edges {
        partner.insert(a, b);
        partner.insert(b, a);
    }
    let mut owner: BTreeMap<usize, usize> = BTreeMap::new();
    for (v, slots) in graph.vertices.iter().enumerate() {
        for &h in slots {
            owner.insert(h, v);
        }
    }
    let search = AutSearch {
        graph,
        partner,
        owner,
    };
    let mut state = AutState {
        sigma: BTreeMap::new(),
        vertex_image: vec![None; graph.vertices.len()],
        used_targets: vec![false; graph.vertices.len()],
    };
    let legs: Vec<(usize, usize)> = graph.legs.iter().map(|&l| (l, l)).collect();
    if !search.assign(&mut state, &legs) {
        return Ok(0);
    }
    Ok(search.count(&mut state))
}

struct AutSearch<'a> {
    graph: &'a JacobiGraph,
    partner: BTreeMap<usize, usize>,
    owner: BTreeMap<usize, usize>,
}

#[derive(Clone)]
struct AutState {
    sigma: BTreeMap<usize, usize>,
    vertex_image: Vec<Option<usize>>,
    used_targets: Vec<bool>,
}

impl AutSearch<'_> {
    /// Adds `h ↦ h'` pairs and everything they force through edges.
    fn assign(&self, st: &mut AutState, pairs: &[(usize, usize)]) -> bool {
        let mut queue: Vec<(usize, usize)> = pairs.to_vec();
        while let Some((h, t)) = queue.pop() {
            if let Some(&existing) = st.sigma.get(&h) {
                if existing != t {
                    return false;
                }
                continue;
            }
            if st.sigma.values().any(|&x| x == t) {
                return false;
            }
            // legs are fixed, vertex slots go to vertex slots
            match (self.owner.get(&h), self.owner.get(&t)) {
                (None, None) => {
                    if h != t {
                        return false;
                    }
                }
                (Some(&v), Some(&w)) => match st.vertex_image[v] {
                    Some(img) if img != w => return false,
                    Some(_) => {}
                    None => {
                        if st.used_targets[w] {
                            return false;
                        }
                        st.vertex_image[v] = Some(w);
                        st.used_targets[w] = true;
                    }
                },
                _ => return false,
            }
            st.sigma.insert(h, t);
            queue.push((self.partner[&h], self.partner[&t]));
        }
        true
    }

    fn count(&self, st: &mut AutState) -> u64 {
        // first vertex with an unassigned slot
        let Some(v) = (0..self.graph.vertices.len()).find(|&v| {
            self.graph.vertices[v]
                .iter()
                .any(|h| !st.sigma.contains_key(h))
        }) else {
            return 1;
        };
        let targets: Vec<usize> = match st.vertex_image[v] {
            Some(w) => vec![w],
            None => (0..self.graph.vertices.len())
                .filter(|&w| !st.used_targets[w])
                .collect(),
        };
        let mut total = 0;
        for w in targets {
            for perm in PERMS3 {
                let src = self.graph.vertices[v];
                let dst = self.graph.vertices[w];
                let pairs: Vec<(usize, usize)> = (0..3).map(|i| (src[i], dst[perm[i]])).collect();
                let mut next = st.clone();
                if self.assign(&mut next, &pairs) {
                    total += self.count(&mut next);
                }
            }
        }
        total
    }
}

const PERMS3: [[usize; 3]; 6] = [
    [0, 1, 2],
    [0, 2, 1],
    [1, 0, 2],
    [1, 2, 0],
    [2, 0, 1],
    [2, 1, 0],
];

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clifford::{bernoulli_plus, wheel_term};
    use crate::lie::builtin;
    use crate::linalg::QMatrix;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn killing(name: &str) -> (LieAlgebraData, InvariantPairing) {
        let (g, _) = builtin(name).unwrap();
        let k = InvariantPairing::killing(&g);
        (g, k)
    }

    /// Sum over all edge labelings of the product of vertex tensors and
    /// inverse-pairing factors; closed graphs with a single-order pairing.
    fn brute_force(graph: &JacobiGraph, g: &LieAlgebraData, lambda: &InvariantPairing) -> Rational {
        let d = g.dim();
        let g0 = &lambda.orders()[0];
        let ginv = g0.inverse().unwrap();
        let f_low = |a: usize, b: usize, c: usize| {
            (0..d).fold(Rational::zero(), |acc, m| acc + g.f(a, b, m) * &g0[(m, c)])
        };
        let n_half = graph.half_edge_count();
        let mut total = Rational::zero();
        let mut label = vec![0usize; n_half];
        let count = d.pow(n_half as u32);
        for code in 0..count {
            let mut c = code;
            for slot in label.iter_mut() {
                *slot = c % d;
                c /= d;
            }
            let mut term = rat(1, 1);
            for &(a, b) in &graph.edges {
                term *= &ginv[(label[a], label[b])];
                if term.is_zero() {
                    break;
                }
            }
            if term.is_zero() {
                continue;
            }
            for v in &graph.vertices {
                term *= f_low(label[v[0]], label[v[1]], label[v[2]]);
            }
            total += term;
        }
        total
    }

    #[test]
    fn theta_weights() {
        let (g, k) = killing("sl2");
        let w = lie_weight(&JacobiGraph::theta(), &g, &k).unwrap();
        assert_eq!(w, HSeries::constant(rat(3, 1), 0));
        assert_eq!(w.coeff(0), &brute_force(&JacobiGraph::theta(), &g, &k));
        let (g3, k3) = killing("sl3");
        assert_eq!(
            lie_weight(&JacobiGraph::theta(), &g3, &k3)
                .unwrap()
                .coeff(0),
            &rat(8, 1)
        );
        let ab = LieAlgebraData::abelian(2);
        let id = InvariantPairing::classical(QMatrix::identity(2));
        assert!(lie_weight(&JacobiGraph::theta(), &ab, &id)
            .unwrap()
            .is_zero());
    }

    #[test]
    fn self_loops_vanish() {
        // a "dumbbell": two self-loops joined by an edge
        let g = JacobiGraph::new(
            vec![[0, 1, 2], [3, 4, 5]],
            vec![],
            vec![(0, 1), (2, 3), (4, 5)],
        )
        .unwrap();
        let (alg, k) = killing("so3");
        assert!(lie_weight(&g, &alg, &k).unwrap().is_zero());
    }

    #[test]
    fn random_graphs_match_brute_force() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let (g, k) = killing("so3");
        for v in [2, 4] {
            for _ in 0..4 {
                let graph = JacobiGraph::random_closed(v, &mut rng);
                assert_eq!(
                    lie_weight(&graph, &g, &k).unwrap().coeff(0),
                    &brute_force(&graph, &g, &k)
                );
            }
        }
    }

    #[test]
    fn as_and_ihx_hold() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let family = generated_family(&mut rng, 3);
        for name in ["sl2", "so3"] {
            let (g, k) = killing(name);
            let report = check_as_ihx(&g, &k, &family).unwrap();
            assert!(report.passed(), "{name}: {:?}", report.failures);
            assert!(report.ihx_checks > 0 && report.as_checks > 0);
        }
    }

    #[test]
    fn theta_ihx_triple_sums_to_zero_and_as_negates() {
        let (g, k) = killing("sl2");
        let theta = JacobiGraph::theta();
        let w = lie_weight(&theta, &g, &k).unwrap();
        assert_eq!(lie_weight(&theta.reverse_vertex(0), &g, &k).unwrap(), -&w);
        let triple = theta.ihx_triple(0).unwrap();
        let sum = triple.iter().fold(HSeries::zero(0), |acc, t| {
            &acc + &lie_weight(t, &g, &k).unwrap()
        });
        assert!(sum.is_zero());
    }

    #[test]
    fn weights_are_basis_independent() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let (g, k) = killing("sl2");
        let family = generated_family(&mut rng, 2);
        for _ in 0..3 {
            let p = loop {
                let p = QMatrix::from_fn(3, 3, |_, _| {
                    rat(rng.gen_range(-3..=3), rng.gen_range(1..=2))
                });
                if p.rank() == 3 {
                    break p;
                }
            };
            let g2 = g.change_basis(&p).unwrap();
            let k2 = InvariantPairing::classical(p.mul(&k.orders()[0]).mul(&p.transpose()));
            assert_eq!(k2.orders()[0], g2.killing_form());
            for graph in &family {
                assert_eq!(
                    lie_weight(graph, &g, &k).unwrap(),
                    lie_weight(graph, &g2, &k2).unwrap()
                );
            }
        }
    }

    #[test]
    fn graded_levels_thread_through_propagators() {
        let (g, k) = killing("sl2");
        // λ = κ (1 + h): inverse propagator κ^{-1}(1 - h + h^2 ...), vertex κ(1 + h)
        let lambda = InvariantPairing::new(vec![k.orders()[0].clone(), k.orders()[0].clone()]);
        let theta = JacobiGraph::theta();
        let full = lie_weight(&theta, &g, &lambda).unwrap();
        // two vertices (1+h)^2, three propagators (1+h)^{-3}: 3 (1+h)^{-1} = 3 - 3h
        assert_eq!(full, HSeries::from_coeffs(vec![rat(3, 1), rat(-3, 1)]));
        let classical = lie_weight_with(
            &WeightContext::new(&g, &lambda).with_mode(VertexMode::Classical),
            &theta,
            &[],
        )
        .unwrap();
        // (1+h)^{-3} = 1 - 3h
        assert_eq!(classical, HSeries::from_coeffs(vec![rat(3, 1), rat(-9, 1)]));
    }

    #[test]
    fn open_graphs_need_leg_vectors() {
        let (g, k) = killing("sl2");
        assert_eq!(
            lie_weight(&JacobiGraph::strut(), &g, &k),
            Err(WeightError::OpenGraph)
        );
        let x = vec![rat(1, 1), rat(0, 1), rat(0, 1)];
        // strut with both legs = H: κ(H, H) = 8
        let w = lie_weight_with(
            &WeightContext::new(&g, &k),
            &JacobiGraph::strut(),
            &[x.clone(), x],
        )
        .unwrap();
        assert_eq!(w.coeff(0), &rat(8, 1));
    }

    #[test]
    fn fermion_wheels() {
        let (g, rep) = builtin("sl2").unwrap();
        let rep = rep.unwrap();
        let k = InvariantPairing::killing(&g);
        assert_eq!(
            coupled_weight(&BicoloredGraph::fermion_wheel(0), &g, &rep, &k)
                .unwrap()
                .coeff(0),
            &rat(-2, 1)
        );
        // two-wheel closed by a gauge edge: -Σ G^{ab} tr(ρ_a ρ_b)
        let kinv = k.orders()[0].inverse().unwrap();
        let mut expect = Rational::zero();
        for a in 0..3 {
            for b in 0..3 {
                expect -= &kinv[(a, b)] * rep.matrix(a).mul(rep.matrix(b)).trace();
            }
        }
        assert_eq!(
            coupled_weight(&BicoloredGraph::fermion_two_wheel_closed(), &g, &rep, &k)
                .unwrap()
                .coeff(0),
            &expect
        );
        assert_eq!(expect, rat(-3, 4));
        let zero = Representation::trivial(&g, 2);
        assert!(
            coupled_weight(&BicoloredGraph::fermion_two_wheel_closed(), &g, &zero, &k)
                .unwrap()
                .is_zero()
        );
    }

    #[test]
    fn wheels_with_cartan_legs_match_the_one_loop_series() {
        for name in ["sl2", "sl3"] {
            let (g, rep) = builtin(name).unwrap();
            let rep = rep.unwrap();
            let k = InvariantPairing::killing(&g);
            let ctx = WeightContext::new(&g, &k);
            let mut x = vec![rat(0, 1); g.dim()];
            x[0] = rat(1, 1);
            let order = MAX_EDGES / 2;
            let series = wheel_term(&rep, &x, order).unwrap();
            let b = bernoulli_plus(order);
            for m in 1..=order {
                let wheel = BicoloredGraph::fermion_wheel(m);
                let w = coupled_weight_with(&ctx, &wheel, &rep, &vec![x.clone(); m]).unwrap();
                let tr = rep.apply(&x);
                let mut power = QMatrix::identity(tr.rows());
                for _ in 0..m {
                    power = power.mul(&tr);
                }
                assert_eq!(w.coeff(0), &-power.trace(), "{name} m={m}");
                let c = if m % 2 == 0 {
                    -&b[m] / rat((m * factorial(m)) as i64, 1)
                } else {
                    Rational::zero()
                };
                assert_eq!(series.coeff(m), &(c * w.coeff(0)), "{name} m={m}");
            }
        }
    }

    fn factorial(n: usize) -> usize {
        (1..=n).product()
    }

    #[test]
    fn open_fermion_paths_are_rejected() {
        let mut g = BicoloredGraph::fermion_wheel(2);
        g.fermion_edges.pop();
        assert!(matches!(g.validate(), Err(WeightError::OpenFermionPath(_))));
    }

    #[test]
    fn symmetry_factors() {
        let theta = JacobiGraph::theta();
        assert_eq!(symmetry_factor(&theta).unwrap(), 12);
        assert_eq!(symmetry_factor(&JacobiGraph::strut()).unwrap(), 1);
        assert_eq!(symmetry_factor(&theta.disjoint_union(&theta)).unwrap(), 288);
        // tetrahedron (K4): 4! vertex maps, each fixing the slot bijection
        let k4 = JacobiGraph::new(
            vec![[0, 1, 2], [3, 4, 5], [6, 7, 8], [9, 10, 11]],
            vec![],
            vec![(0, 3), (1, 6), (2, 9), (4, 7), (5, 10), (8, 11)],
        )
        .unwrap();
        assert_eq!(symmetry_factor(&k4).unwrap(), 24);
    }

    #[test]
    fn json_round_trip() {
        let theta = JacobiGraph::theta();
        assert_eq!(JacobiGraph::from_json(&theta.to_json()).unwrap(), theta);
        assert!(
            JacobiGraph::from_json(r#"{"vertices": [[0,1,2]], "legs": [], "edges": [[0,1]]}"#)
                .is_err()
        );
        let wheel = BicoloredGraph::fermion_two_wheel_closed();
        assert_eq!(BicoloredGraph::from_json(&wheel.to_json()).unwrap(), wheel);
    }
}
