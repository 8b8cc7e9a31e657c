//! Membership in basic sets `Z(μ, ν)`, their intersections, and partitions of the groupoid
//! into such sets.

use std::collections::HashMap;
use std::sync::RwLock;

use super::paths::{positive_part, Cylinder, GroupoidElem, PathSpace};
use crate::degree::Degree;
use crate::graph::{KGraph, Morphism};

/// Whether `μ = λν` for some `λ`.
pub fn is_suffix(g: &KGraph, nu: &Morphism, mu: &Morphism) -> bool {
    if nu.source() != mu.source() || !nu.degree().le(mu.degree()) {
        return false;
    }
    let start = mu.degree().checked_sub(nu.degree()).unwrap();
    g.segment(mu, &start, mu.degree()).is_ok_and(|tail| &tail == nu)
}

/// Whether `g ∈ Z(μ, ν)`.
pub fn contains(space: &PathSpace, cell: &Cylinder, g: &GroupoidElem) -> bool {
    if cell.lag() != g.lag() {
        return false;
    }
    let t = positive_part(&cell.mu.degree().diff(g.p().degree()));
    let h = space.extend_elem(g, &t);
    inside(space.graph(), h.p(), h.q(), cell)
}

/// For `d(η) ≥ d(μ)` and `d(ζ) ≥ d(ν)` with matching lags: `Z(η, ζ) ⊆ Z(μ, ν)`, and otherwise
/// the two are disjoint.
fn inside(g: &KGraph, eta: &Morphism, zeta: &Morphism, cell: &Cylinder) -> bool {
    g.extends(eta, &cell.mu)
        && g.extends(zeta, &cell.nu)
        && g.segment(eta, cell.mu.degree(), eta.degree()).ok() == g.segment(zeta, cell.nu.degree(), zeta.degree()).ok()
}

/// `Z(μ, ν)` cut into the pieces `Z(μα, να)` with `d(μα) = d(μ) ∨ d(σ)`, each of which lies
/// inside or outside `Z(σ, τ)`. `None` when the lags differ, so the sets are disjoint.
fn split(g: &KGraph, cell: &Cylinder, other: &Cylinder) -> Option<(Vec<Cylinder>, Vec<Cylinder>)> {
    if cell.lag() != other.lag() {
        return None;
    }
    let join = cell.mu.degree().join(other.mu.degree());
    let rest = join.checked_sub(cell.mu.degree()).unwrap();
    let (mut ins, mut outs) = (Vec::new(), Vec::new());
    for alpha in g.enumerate_paths(Some(cell.mu.source()), &rest, None) {
        let piece = Cylinder::new(g.compose(&cell.mu, &alpha).unwrap(), g.compose(&cell.nu, &alpha).unwrap());
        if inside(g, &piece.mu, &piece.nu, other) {
            ins.push(piece);
        } else {
            outs.push(piece);
        }
    }
    Some((ins, outs))
}

/// `(μ, ν) ∧ (σ, τ)`: the pairs `(μα, να) = (σβ, τβ)` with `d(μα) = d(μ) ∨ d(σ)`.
/// Their basic sets partition `Z(μ, ν) ∩ Z(σ, τ)`.
pub fn wedge(g: &KGraph, a: &Cylinder, b: &Cylinder) -> Vec<Cylinder> {
    split(g, a, b).map(|(ins, _)| ins).unwrap_or_default()
}

/// A partition of the groupoid into basic sets.
pub trait Partition: Sync {
    fn space(&self) -> &PathSpace;

    /// The member `(μ_g, ν_g)` containing `g`.
    fn locate(&self, g: &GroupoidElem) -> Cylinder;
}

/// The members `Z(λ, s(λ))` followed by every `Z(μ, ν)` with `ν` not a suffix of `μ`, ordered by
/// `|μ| + |ν|` and then lexicographically, each with the earlier ones removed by successive
/// splitting. Only the piece containing the queried element is followed.
pub struct CanonicalPartition {
    space: PathSpace,
    covers: RwLock<Covers>,
    meets: RwLock<HashMap<(Cylinder, usize), bool>>,
}

#[derive(Default)]
struct Covers {
    /// Levels `0..levels` have been enumerated.
    levels: usize,
    list: Vec<Cylinder>,
}

impl CanonicalPartition {
    pub fn new(space: PathSpace) -> Self {
        CanonicalPartition { space, covers: RwLock::default(), meets: RwLock::default() }
    }

    /// The test `d(p) − d(q) = m ≥ 0` and `p(m, d(p)) = q`, giving `(p(0, m), s(λ))`.
    pub fn x_part(&self, g: &GroupoidElem) -> Option<Cylinder> {
        let graph = self.space.graph();
        let m = g.p().degree().checked_sub(g.q().degree())?;
        if &graph.segment(g.p(), &m, g.p().degree()).ok()? != g.q() {
            return None;
        }
        let lambda = graph.prefix(g.p(), &m).ok()?;
        let v = graph.vertex_morphism(lambda.source());
        Some(Cylinder::new(lambda, v))
    }

    fn level(&self, total: usize) -> Vec<Cylinder> {
        let g = self.space.graph();
        let k = g.rank();
        let by_len: Vec<Vec<Morphism>> = (0..=total)
            .map(|t| Degree::all_with_total(k, t).iter().flat_map(|n| g.enumerate_paths(None, n, None)).collect())
            .collect();
        let mut out = Vec::new();
        for a in 0..=total {
            for mu in &by_len[a] {
                for nu in by_len[total - a].iter().filter(|nu| nu.source() == mu.source()) {
                    if !is_suffix(g, nu, mu) {
                        out.push(Cylinder::new(mu.clone(), nu.clone()));
                    }
                }
            }
        }
        out.sort();
        out
    }

    /// The `i`th set `U_i` of the cover, enumerating further levels as needed.
    pub fn cover(&self, i: usize) -> Cylinder {
        loop {
            {
                let covers = self.covers.read().unwrap();
                if let Some(c) = covers.list.get(i) {
                    return c.clone();
                }
            }
            let mut covers = self.covers.write().unwrap();
            if covers.list.len() <= i {
                let next = self.level(covers.levels);
                covers.list.extend(next);
                covers.levels += 1;
            }
        }
    }

    /// Position of `(μ, ν)` in the cover.
    pub fn position(&self, cell: &Cylinder) -> Option<usize> {
        let level = cell.mu.len() + cell.nu.len();
        let mut i = 0;
        loop {
            let c = self.cover(i);
            if c.mu.len() + c.nu.len() > level {
                return None;
            }
            if &c == cell {
                return Some(i);
            }
            i += 1;
        }
    }

    /// Index of the first cover set containing `g`, for `g` outside the X-part.
    pub fn first_cover(&self, g: &GroupoidElem) -> usize {
        let bound = g.p().len() + g.q().len();
        let mut i = 0;
        loop {
            let c = self.cover(i);
            assert!(c.mu.len() + c.nu.len() <= bound, "Z(p, q) is a cover set, so the search stops by its level");
            if contains(&self.space, &c, g) {
                return i;
            }
            i += 1;
        }
    }

    fn meets(&self, cell: &Cylinder, j: usize) -> bool {
        let key = (cell.clone(), j);
        if let Some(&hit) = self.meets.read().unwrap().get(&key) {
            return hit;
        }
        let hit = split(self.space.graph(), cell, &self.cover(j)).is_some_and(|(ins, _)| !ins.is_empty());
        self.meets.write().unwrap().insert(key, hit);
        hit
    }

    /// Every piece of `U_i` minus `U_0 ∪ ⋯ ∪ U_{i−1}`, computed eagerly.
    pub fn stage_pieces(&self, i: usize) -> Vec<Cylinder> {
        let g = self.space.graph();
        let mut pieces = vec![self.cover(i)];
        for j in 0..i {
            let u = self.cover(j);
            let mut next = Vec::with_capacity(pieces.len());
            for piece in pieces {
                match split(g, &piece, &u) {
                    Some((ins, outs)) if !ins.is_empty() => next.extend(outs),
                    _ => next.push(piece),
                }
            }
            pieces = next;
        }
        pieces
    }
}

impl Partition for CanonicalPartition {
    fn space(&self) -> &PathSpace {
        &self.space
    }

    fn locate(&self, g: &GroupoidElem) -> Cylinder {
        if let Some(cell) = self.x_part(g) {
            return cell;
        }
        let graph = self.space.graph();
        let i = self.first_cover(g);
        let x = self.space.range_path(g);
        let mut cell = self.cover(i);
        for j in 0..i {
            if cell.lag() != self.cover(j).lag() || !self.meets(&cell, j) {
                continue;
            }
            // g is outside U_j, so its piece at the split degree is too
            let join = cell.mu.degree().join(self.cover(j).mu.degree());
            let alpha = self.space.tail_query(&x, cell.mu.degree(), &join);
            cell = Cylinder::new(graph.compose(&cell.mu, &alpha).unwrap(), graph.compose(&cell.nu, &alpha).unwrap());
        }
        cell
    }
}

/// `Q`: every member `(μ, ν)` of a base partition split into `(μτ, ντ)` with `d(τ) = e_1`.
pub struct RefinedPartition<'a> {
    base: &'a dyn Partition,
}

impl<'a> RefinedPartition<'a> {
    pub fn new(base: &'a dyn Partition) -> Self {
        RefinedPartition { base }
    }

    /// The base member `(μ_g, ν_g)` and the path `λ_g = τ` with `(μ_gτ, ν_gτ)` the refined member.
    pub fn refine(&self, g: &GroupoidElem) -> (Cylinder, Morphism) {
        let space = self.base.space();
        let cell = self.base.locate(g);
        let x = space.range_path(g);
        let start = cell.mu.degree();
        let tau = space.tail_query(&x, start, &start.add(&Degree::unit(start.rank(), 1)));
        (cell, tau)
    }
}

impl Partition for RefinedPartition<'_> {
    fn space(&self) -> &PathSpace {
        self.base.space()
    }

    fn locate(&self, g: &GroupoidElem) -> Cylinder {
        let graph = self.space().graph();
        let (cell, tau) = self.refine(g);
        Cylinder::new(graph.compose(&cell.mu, &tau).unwrap(), graph.compose(&cell.nu, &tau).unwrap())
    }
}
