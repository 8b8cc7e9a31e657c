//! Finite k-graphs presented by a coloured skeleton and a table of commuting squares.

mod derive;
mod diagnostics;
mod morphism;

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::cubical::CubeSet;
use crate::error::{Error, Result};

pub use derive::{product, pullback, skew, DerivedGraph, DerivedKind};
pub use diagnostics::{periodicity_diagnostics, AperiodicityVerdict, CofinalityVerdict, Diagnostics};
pub use morphism::Morphism;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexId(pub(crate) u32);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EdgeId(pub(crate) u32);

impl VertexId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl EdgeId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub id: String,
    pub colour: usize,
    pub source: VertexId,
    pub range: VertexId,
}

/// Vertices and coloured edges. Edge order is declaration order.
#[derive(Clone, Debug, Default)]
pub struct Skeleton {
    k: usize,
    vertices: Vec<String>,
    edges: Vec<Edge>,
    vertex_index: HashMap<String, VertexId>,
    edge_index: HashMap<String, EdgeId>,
}

impl Skeleton {
    pub fn new(k: usize) -> Self {
        Skeleton { k, ..Default::default() }
    }

    pub fn rank(&self) -> usize {
        self.k
    }

    pub fn add_vertex(&mut self, name: impl Into<String>) -> Result<VertexId> {
        let name = name.into();
        if self.vertex_index.contains_key(&name) {
            return Err(Error::DuplicateVertex(name));
        }
        let id = VertexId(self.vertices.len() as u32);
        self.vertex_index.insert(name.clone(), id);
        self.vertices.push(name);
        Ok(id)
    }

    pub fn add_edge(&mut self, id: impl Into<String>, colour: usize, source: &str, range: &str) -> Result<EdgeId> {
        let id = id.into();
        if colour == 0 || colour > self.k {
            return Err(Error::InvalidColour { edge: id, colour, k: self.k });
        }
        let s = self.vertex(source)?;
        let r = self.vertex(range)?;
        if self.edge_index.contains_key(&id) {
            return Err(Error::DuplicateEdge(id));
        }
        let eid = EdgeId(self.edges.len() as u32);
        self.edge_index.insert(id.clone(), eid);
        self.edges.push(Edge { id, colour, source: s, range: r });
        Ok(eid)
    }

    pub fn vertex(&self, name: &str) -> Result<VertexId> {
        self.vertex_index.get(name).copied().ok_or_else(|| Error::UnknownVertex(name.to_string()))
    }

    pub fn edge(&self, name: &str) -> Result<EdgeId> {
        self.edge_index.get(name).copied().ok_or_else(|| Error::UnknownEdge(name.to_string()))
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }
}

/// Quadruples `(f, g, g', f')` of edge ids with `fg = g'f'` and `colour(f) < colour(g)`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SquareTable {
    entries: Vec<[String; 4]>,
}

impl SquareTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, f: &str, g: &str, g2: &str, f2: &str) {
        self.entries.push([f.into(), g.into(), g2.into(), f2.into()]);
    }

    pub fn with(mut self, f: &str, g: &str, g2: &str, f2: &str) -> Self {
        self.push(f, g, g2, f2);
        self
    }

    pub fn entries(&self) -> &[[String; 4]] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Square {
    pub f: EdgeId,
    pub g: EdgeId,
    pub g2: EdgeId,
    pub f2: EdgeId,
}

/// A validated k-graph. Immutable once built.
#[derive(Debug)]
pub struct KGraph {
    skeleton: Skeleton,
    squares: Vec<Square>,
    up: HashMap<(EdgeId, EdgeId), (EdgeId, EdgeId)>,
    down: HashMap<(EdgeId, EdgeId), (EdgeId, EdgeId)>,
    // incoming[v][c - 1]: edges of colour c with range v, in id order
    incoming: Vec<Vec<Vec<EdgeId>>>,
    cubes: Vec<OnceLock<Arc<CubeSet>>>,
}

impl PartialEq for KGraph {
    fn eq(&self, other: &Self) -> bool {
        let key = |g: &KGraph| {
            let mut sq: Vec<_> = g.squares.iter().map(|s| (s.f, s.g, s.g2, s.f2)).collect();
            sq.sort();
            sq
        };
        self.skeleton.k == other.skeleton.k
            && self.skeleton.vertices == other.skeleton.vertices
            && self.skeleton.edges == other.skeleton.edges
            && key(self) == key(other)
    }
}

impl Eq for KGraph {}

/// Checks the square table and returns the k-graph it presents.
pub fn validate(skeleton: Skeleton, squares: &SquareTable) -> Result<KGraph> {
    let k = skeleton.k;
    let mut incoming = vec![vec![Vec::new(); k]; skeleton.vertices.len()];
    for (i, e) in skeleton.edges.iter().enumerate() {
        incoming[e.range.index()][e.colour - 1].push(EdgeId(i as u32));
    }

    let mut resolved = Vec::with_capacity(squares.len());
    let mut up = HashMap::new();
    let mut down = HashMap::new();
    for entry in &squares.entries {
        let ids = [skeleton.edge(&entry[0])?, skeleton.edge(&entry[1])?, skeleton.edge(&entry[2])?, skeleton.edge(&entry[3])?];
        let [f, g, g2, f2] = ids.map(|e| &skeleton.edges[e.index()]);
        let bad = |reason| Error::MalformedSquare { entry: entry.to_vec(), reason };
        if f.colour != f2.colour || g.colour != g2.colour {
            return Err(bad("opposite sides have different colours"));
        }
        if f.colour >= g.colour {
            return Err(bad("colour(f) must be less than colour(g)"));
        }
        if g.range != f.source || f2.range != g2.source {
            return Err(bad("a side is not composable"));
        }
        if g2.range != f.range || f2.source != g.source {
            return Err(bad("the two sides have different endpoints"));
        }
        let sq = Square { f: ids[0], g: ids[1], g2: ids[2], f2: ids[3] };
        if up.insert((sq.f, sq.g), (sq.g2, sq.f2)).is_some() {
            return Err(Error::DuplicateSquare { word: vec![entry[0].clone(), entry[1].clone()] });
        }
        if down.insert((sq.g2, sq.f2), (sq.f, sq.g)).is_some() {
            return Err(Error::DuplicateSquare { word: vec![entry[2].clone(), entry[3].clone()] });
        }
        resolved.push(sq);
    }

    let name = |e: EdgeId| skeleton.edges[e.index()].id.clone();
    for (i, e) in skeleton.edges.iter().enumerate() {
        let a = EdgeId(i as u32);
        for c in (e.colour + 1)..=k {
            for &b in &incoming[e.source.index()][c - 1] {
                if !up.contains_key(&(a, b)) {
                    return Err(Error::IncompleteSquares { word: vec![name(a), name(b)] });
                }
            }
        }
        for c in 1..e.colour {
            for &b in &incoming[e.source.index()][c - 1] {
                if !down.contains_key(&(a, b)) {
                    return Err(Error::IncompleteSquares { word: vec![name(a), name(b)] });
                }
            }
        }
    }

    let graph = KGraph { cubes: (0..=k).map(|_| OnceLock::new()).collect(), skeleton, squares: resolved, up, down, incoming };
    graph.check_cubes()?;
    Ok(graph)
}

impl KGraph {
    fn check_cubes(&self) -> Result<()> {
        let k = self.rank();
        for (i, e) in self.skeleton.edges.iter().enumerate() {
            let f0 = EdgeId(i as u32);
            for j in (e.colour + 1)..=k {
                for &g0 in self.incoming_of(self.source(f0), j) {
                    for l in (j + 1)..=k {
                        for &h0 in self.incoming_of(self.source(g0), l) {
                            let (h1, g1) = self.up[&(g0, h0)];
                            let (h2, f1) = self.up[&(f0, h1)];
                            let (g2, f2) = self.up[&(f1, g1)];
                            let (g3, f3) = self.up[&(f0, g0)];
                            let (h3, f4) = self.up[&(f3, h0)];
                            let (h4, g4) = self.up[&(g3, h3)];
                            if (h2, g2, f2) != (h4, g4, f4) {
                                return Err(Error::CubeInconsistency {
                                    word: vec![self.edge_name(f0).into(), self.edge_name(g0).into(), self.edge_name(h0).into()],
                                });
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn rank(&self) -> usize {
        self.skeleton.k
    }

    pub fn skeleton(&self) -> &Skeleton {
        &self.skeleton
    }

    pub fn squares(&self) -> &[Square] {
        &self.squares
    }

    pub fn vertex_count(&self) -> usize {
        self.skeleton.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.skeleton.edges.len()
    }

    pub fn vertex_ids(&self) -> impl Iterator<Item = VertexId> {
        (0..self.vertex_count() as u32).map(VertexId)
    }

    pub fn edge_ids(&self) -> impl Iterator<Item = EdgeId> {
        (0..self.edge_count() as u32).map(EdgeId)
    }

    pub fn vertex(&self, name: &str) -> Result<VertexId> {
        self.skeleton.vertex(name)
    }

    pub fn edge(&self, name: &str) -> Result<EdgeId> {
        self.skeleton.edge(name)
    }

    pub fn vertex_name(&self, v: VertexId) -> &str {
        &self.skeleton.vertices[v.index()]
    }

    pub fn edge_name(&self, e: EdgeId) -> &str {
        &self.skeleton.edges[e.index()].id
    }

    pub fn colour(&self, e: EdgeId) -> usize {
        self.skeleton.edges[e.index()].colour
    }

    pub fn source(&self, e: EdgeId) -> VertexId {
        self.skeleton.edges[e.index()].source
    }

    pub fn range(&self, e: EdgeId) -> VertexId {
        self.skeleton.edges[e.index()].range
    }

    /// Edges of the given colour whose range is `v`.
    pub fn incoming_of(&self, v: VertexId, colour: usize) -> &[EdgeId] {
        &self.incoming[v.index()][colour - 1]
    }

    /// Rewrites a composable two-edge word `ab` with distinct colours as `b'a'`,
    /// where `b'` has the colour of `b`.
    pub fn swap(&self, a: EdgeId, b: EdgeId) -> (EdgeId, EdgeId) {
        if self.colour(a) < self.colour(b) {
            self.up[&(a, b)]
        } else {
            self.down[&(a, b)]
        }
    }

    /// Words are read range-to-source: `s(w[i]) = r(w[i + 1])`.
    pub fn is_composable_word(&self, word: &[EdgeId]) -> bool {
        word.windows(2).all(|w| self.source(w[0]) == self.range(w[1]))
    }

    pub(crate) fn cube_cache(&self, r: usize) -> Option<&OnceLock<Arc<CubeSet>>> {
        self.cubes.get(r)
    }

    pub fn word_names(&self, word: &[EdgeId]) -> Vec<String> {
        word.iter().map(|&e| self.edge_name(e).to_string()).collect()
    }

    /// Human-readable form of a morphism: the edge word, or the vertex for an identity.
    pub fn describe(&self, m: &Morphism) -> String {
        if m.is_vertex() {
            self.vertex_name(m.range()).to_string()
        } else {
            self.word_names(m.word()).join(" ")
        }
    }
}

impl fmt::Display for KGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}-graph with {} vertices, {} edges, {} squares",
            self.rank(),
            self.vertex_count(),
            self.edge_count(),
            self.squares.len()
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn catalog_graphs_validate() {
        assert_eq!(catalog::b2().edge_count(), 2);
        assert_eq!(catalog::t2().squares().len(), 1);
        assert_eq!(catalog::cube3().squares().len(), 3);
    }

    #[test]
    fn missing_square_is_reported() {
        let mut s = Skeleton::new(2);
        s.add_vertex("v").unwrap();
        s.add_edge("e", 1, "v", "v").unwrap();
        s.add_edge("f", 2, "v", "v").unwrap();
        let err = validate(s, &SquareTable::new()).unwrap_err();
        assert_eq!(err, Error::IncompleteSquares { word: vec!["e".into(), "f".into()] });
    }

    #[test]
    fn duplicate_square_is_reported() {
        let mut s = Skeleton::new(2);
        s.add_vertex("v").unwrap();
        s.add_edge("e", 1, "v", "v").unwrap();
        s.add_edge("f", 2, "v", "v").unwrap();
        let table = SquareTable::new().with("e", "f", "f", "e").with("e", "f", "f", "e");
        assert!(matches!(validate(s, &table), Err(Error::DuplicateSquare { .. })));
    }

    #[test]
    fn bad_colour_is_rejected() {
        let mut s = Skeleton::new(2);
        s.add_vertex("v").unwrap();
        assert!(matches!(s.add_edge("e", 3, "v", "v"), Err(Error::InvalidColour { .. })));
    }

    fn three_colour(sigma: [usize; 3], tau: [usize; 3]) -> Result<KGraph> {
        // colour 1 edges a0..a2 permuted by sigma across b and by tau across c
        let mut s = Skeleton::new(3);
        s.add_vertex("v").unwrap();
        for (e, c) in [("a0", 1), ("a1", 1), ("a2", 1), ("b", 2), ("c", 3)] {
            s.add_edge(e, c, "v", "v").unwrap();
        }
        let mut table = SquareTable::new().with("b", "c", "c", "b");
        for i in 0..3 {
            let a = format!("a{i}");
            table.push(&a, "b", "b", &format!("a{}", sigma[i]));
            table.push(&a, "c", "c", &format!("a{}", tau[i]));
        }
        validate(s, &table)
    }

    #[test]
    fn cube_consistency_needs_commuting_twists() {
        assert!(three_colour([1, 0, 2], [1, 0, 2]).is_ok());
        assert!(three_colour([1, 2, 0], [2, 0, 1]).is_ok());
        let err = three_colour([1, 0, 2], [0, 2, 1]).unwrap_err();
        assert!(matches!(err, Error::CubeInconsistency { .. }));
    }
}
