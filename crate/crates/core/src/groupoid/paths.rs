//! Infinite paths presented as a finite prefix followed by a fixed block of degree `1_k` at
//! every vertex, and groupoid elements built over them.

use std::fmt;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::degree::Degree;
use crate::error::{Error, Result};
use crate::graph::{EdgeId, KGraph, Morphism, VertexId};

/// A graph together with its block choice `ρ_u ∈ uΛ^{1_k}`.
#[derive(Clone, Debug)]
pub struct PathSpace {
    graph: Arc<KGraph>,
    blocks: Arc<Vec<Morphism>>,
    outgoing: Arc<Vec<Vec<EdgeId>>>,
}

/// `prefix · ρ_u · ρ_{s(ρ_u)} · ⋯` with `u = s(prefix)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EventualPath {
    prefix: Morphism,
}

impl EventualPath {
    pub fn prefix(&self) -> &Morphism {
        &self.prefix
    }

    pub fn range(&self) -> VertexId {
        self.prefix.range()
    }

    /// The vertex where the blocks start.
    pub fn anchor(&self) -> VertexId {
        self.prefix.source()
    }
}

/// `(pz, d(p) − d(q), qz)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupoidElem {
    p: Morphism,
    q: Morphism,
    tail: EventualPath,
}

/// `p_0, …, p_n` over one tail `z`, denoting the arrows `g_i = (p_{i−1}z, ·, p_i z)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ComposableTuple {
    paths: Vec<Morphism>,
    tail: EventualPath,
}

fn degree_of(v: &[i64]) -> Degree {
    Degree::from_vec(v.iter().map(|&x| u32::try_from(x).expect("nonnegative degree")).collect())
}

/// `max(v, 0)` componentwise.
pub(crate) fn positive_part(v: &[i64]) -> Degree {
    degree_of(&v.iter().map(|&x| x.max(0)).collect::<Vec<_>>())
}

impl PathSpace {
    /// Uses the lexicographically least block at each vertex.
    pub fn new(graph: Arc<KGraph>) -> Result<Self> {
        let blocks = graph.canonical_blocks()?;
        Ok(Self::build(graph, blocks))
    }

    pub fn with_blocks(graph: Arc<KGraph>, blocks: Vec<Morphism>) -> Result<Self> {
        graph.check_no_sources()?;
        if blocks.len() != graph.vertex_count() {
            return Err(Error::BadValue(format!("{} blocks", blocks.len()), format!("{} vertices", graph.vertex_count())));
        }
        let ones = Degree::ones(graph.rank());
        for (v, b) in graph.vertex_ids().zip(&blocks) {
            let vertex = graph.vertex_name(v).to_string();
            if b.range() != v {
                return Err(Error::InvalidBlock { vertex, reason: "range differs from the vertex" });
            }
            if b.degree() != &ones {
                return Err(Error::InvalidBlock { vertex, reason: "degree is not 1_k" });
            }
        }
        Ok(Self::build(graph, blocks))
    }

    fn build(graph: Arc<KGraph>, blocks: Vec<Morphism>) -> Self {
        let mut outgoing = vec![Vec::new(); graph.vertex_count()];
        for e in graph.edge_ids() {
            outgoing[graph.source(e).index()].push(e);
        }
        PathSpace { graph, blocks: Arc::new(blocks), outgoing: Arc::new(outgoing) }
    }

    pub fn graph(&self) -> &Arc<KGraph> {
        &self.graph
    }

    pub fn block(&self, v: VertexId) -> &Morphism {
        &self.blocks[v.index()]
    }

    pub fn blocks(&self) -> &[Morphism] {
        &self.blocks
    }

    pub fn path(&self, prefix: Morphism) -> EventualPath {
        EventualPath { prefix }
    }

    /// The block path `ρ_v ρ_{s(ρ_v)} ⋯` at `v`.
    pub fn vertex_path(&self, v: VertexId) -> EventualPath {
        EventualPath { prefix: self.graph.vertex_morphism(v) }
    }

    /// The prefix followed by just enough blocks to reach degree `n`.
    pub fn expand(&self, x: &EventualPath, n: &Degree) -> Morphism {
        let need = n.diff(x.prefix.degree()).into_iter().max().unwrap_or(0).max(0);
        let mut acc = x.prefix.clone();
        for _ in 0..need {
            let b = self.block(acc.source());
            acc = self.graph.compose(&acc, b).expect("blocks start at the anchor");
        }
        acc
    }

    /// `x(m, n)`.
    pub fn tail_query(&self, x: &EventualPath, m: &Degree, n: &Degree) -> Morphism {
        assert!(m.le(n), "segment bounds out of order");
        let e = self.expand(x, n);
        self.graph.segment(&e, m, n).expect("expansion covers the segment")
    }

    /// `σ^t x`.
    pub fn shift(&self, x: &EventualPath, t: &Degree) -> EventualPath {
        let e = self.expand(x, t);
        let end = e.degree().clone();
        EventualPath { prefix: self.graph.segment(&e, t, &end).expect("expansion covers the shift") }
    }

    /// `λx`.
    pub fn prepend(&self, lambda: &Morphism, x: &EventualPath) -> Result<EventualPath> {
        Ok(EventualPath { prefix: self.graph.compose(lambda, &x.prefix)? })
    }

    pub fn elem(&self, p: Morphism, q: Morphism, tail: EventualPath) -> Result<GroupoidElem> {
        for m in [&p, &q] {
            if m.source() != tail.range() {
                return Err(Error::NotComposable { left: self.graph.describe(m), right: self.graph.describe(&tail.prefix) });
            }
        }
        Ok(GroupoidElem { p, q, tail })
    }

    pub fn tuple(&self, paths: Vec<Morphism>, tail: EventualPath) -> Result<ComposableTuple> {
        if let Some(m) = paths.iter().find(|m| m.source() != tail.range()) {
            return Err(Error::NotComposable { left: self.graph.describe(m), right: self.graph.describe(&tail.prefix) });
        }
        Ok(ComposableTuple { paths, tail })
    }

    /// The unit `(z, 0, z)`.
    pub fn unit(&self, z: EventualPath) -> GroupoidElem {
        let v = self.graph.vertex_morphism(z.range());
        GroupoidElem { p: v.clone(), q: v, tail: z }
    }

    /// `r(g) = pz`.
    pub fn range_path(&self, g: &GroupoidElem) -> EventualPath {
        self.prepend(&g.p, &g.tail).expect("s(p) = r(z)")
    }

    /// `s(g) = qz`.
    pub fn source_path(&self, g: &GroupoidElem) -> EventualPath {
        self.prepend(&g.q, &g.tail).expect("s(q) = r(z)")
    }

    /// The presentation `(p z(0,t), q z(0,t), σ^t z)` of the same element.
    pub fn extend_elem(&self, g: &GroupoidElem, t: &Degree) -> GroupoidElem {
        if t.is_zero() {
            return g.clone();
        }
        let head = self.tail_query(&g.tail, &Degree::zero(self.graph.rank()), t);
        GroupoidElem {
            p: self.graph.compose(&g.p, &head).expect("s(p) = r(z)"),
            q: self.graph.compose(&g.q, &head).expect("s(q) = r(z)"),
            tail: self.shift(&g.tail, t),
        }
    }

    /// The same extension applied to every path of a tuple.
    pub fn extend_tuple(&self, x: &ComposableTuple, t: &Degree) -> ComposableTuple {
        if t.is_zero() {
            return x.clone();
        }
        let head = self.tail_query(&x.tail, &Degree::zero(self.graph.rank()), t);
        ComposableTuple {
            paths: x.paths.iter().map(|p| self.graph.compose(p, &head).expect("shared source")).collect(),
            tail: self.shift(&x.tail, t),
        }
    }

    /// A random path with source `v` and at most `max_len` edges, grown backwards from `v`.
    pub fn random_path_from<R: Rng + ?Sized>(&self, rng: &mut R, v: VertexId, max_len: usize) -> Morphism {
        let len = rng.gen_range(0..=max_len);
        let mut word = Vec::with_capacity(len);
        let mut at = v;
        for _ in 0..len {
            let Some(&e) = self.outgoing[at.index()].choose(rng) else { break };
            word.push(e);
            at = self.graph.range(e);
        }
        if word.is_empty() {
            return self.graph.vertex_morphism(v);
        }
        word.reverse();
        self.graph.morphism_from_word(&word).expect("walk is composable")
    }

    /// `n + 1` random paths into a random vertex `v` and a random tail at `v`.
    /// Paths repeat with positive probability so units occur.
    pub fn random_tuple<R: Rng + ?Sized>(&self, rng: &mut R, arrows: usize, max_len: usize) -> ComposableTuple {
        let v = VertexId(rng.gen_range(0..self.graph.vertex_count() as u32));
        let mut paths: Vec<Morphism> = Vec::with_capacity(arrows + 1);
        for _ in 0..=arrows {
            let p = match paths.last() {
                Some(prev) if rng.gen_bool(0.15) => prev.clone(),
                _ => self.random_path_from(rng, v, max_len),
            };
            paths.push(p);
        }
        let tail = EventualPath { prefix: crate::sample::random_morphism(&self.graph, rng, Some(v), max_len) };
        ComposableTuple { paths, tail }
    }
}

impl GroupoidElem {
    pub fn p(&self) -> &Morphism {
        &self.p
    }

    pub fn q(&self) -> &Morphism {
        &self.q
    }

    pub fn tail(&self) -> &EventualPath {
        &self.tail
    }

    /// `d̃(g) = d(p) − d(q)`.
    pub fn lag(&self) -> Vec<i64> {
        self.p.degree().diff(self.q.degree())
    }

    pub fn is_unit(&self) -> bool {
        self.p == self.q
    }

    pub fn inverse(&self) -> GroupoidElem {
        GroupoidElem { p: self.q.clone(), q: self.p.clone(), tail: self.tail.clone() }
    }
}

impl ComposableTuple {
    pub fn paths(&self) -> &[Morphism] {
        &self.paths
    }

    pub fn tail(&self) -> &EventualPath {
        &self.tail
    }

    /// Number of arrows.
    pub fn len(&self) -> usize {
        self.paths.len().saturating_sub(1)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// `(p_i z, ·, p_j z)`; `element(i − 1, i)` is the `i`th arrow and `element(0, n)` the product.
    pub fn element(&self, i: usize, j: usize) -> GroupoidElem {
        GroupoidElem { p: self.paths[i].clone(), q: self.paths[j].clone(), tail: self.tail.clone() }
    }

    /// The tuple on the chosen paths, e.g. `[0, 2, 3]` gives `(g_1 g_2, g_3)`.
    pub fn select(&self, idx: &[usize]) -> ComposableTuple {
        ComposableTuple { paths: idx.iter().map(|&i| self.paths[i].clone()).collect(), tail: self.tail.clone() }
    }
}

/// A basic set `Z(μ, ν)` with `s(μ) = s(ν)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cylinder {
    pub mu: Morphism,
    pub nu: Morphism,
}

impl Cylinder {
    pub fn new(mu: Morphism, nu: Morphism) -> Self {
        debug_assert_eq!(mu.source(), nu.source());
        Cylinder { mu, nu }
    }

    /// `d(μ) − d(ν)`, the common lag of its elements.
    pub fn lag(&self) -> Vec<i64> {
        self.mu.degree().diff(self.nu.degree())
    }

    pub fn describe(&self, g: &KGraph) -> String {
        format!("({}, {})", g.describe(&self.mu), g.describe(&self.nu))
    }
}

impl fmt::Display for GroupoidElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ids = |m: &Morphism| m.word().iter().map(|e| e.index()).collect::<Vec<_>>();
        write!(f, "({:?}z, {:?}, {:?}z) over {:?}", ids(&self.p), self.lag(), ids(&self.q), ids(&self.tail.prefix))
    }
}
