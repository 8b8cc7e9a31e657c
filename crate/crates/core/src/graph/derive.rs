use std::collections::HashMap;
use std::sync::Arc;

use super::{validate, EdgeId, KGraph, Morphism, Skeleton, SquareTable, VertexId};
use crate::coeff::{CoeffGroup, GroupElem};
use crate::degree::Degree;
use crate::error::{Error, Result};

/// A graph built from other graphs, together with the data needed to
/// project its morphisms back onto the inputs.
#[derive(Clone, Debug)]
pub struct DerivedGraph {
    pub graph: Arc<KGraph>,
    pub kind: DerivedKind,
}

#[derive(Clone, Debug)]
pub enum DerivedKind {
    Product {
        left: Arc<KGraph>,
        right: Arc<KGraph>,
    },
    Pullback {
        base: Arc<KGraph>,
        /// `k × l`, column `j` is the image of `e_j`.
        matrix: Vec<Vec<u32>>,
        /// base morphism carried by each new edge
        edge_origin: Vec<Morphism>,
    },
    Skew {
        base: Arc<KGraph>,
        modulus: u64,
        /// functor value of each base edge
        values: Vec<u64>,
    },
}

fn pair(a: &str, b: &str) -> String {
    format!("({a},{b})")
}

/// The cartesian product, of rank `k1 + k2`.
pub fn product(left: Arc<KGraph>, right: Arc<KGraph>) -> Result<DerivedGraph> {
    let k1 = left.rank();
    let mut s = Skeleton::new(k1 + right.rank());
    for v in left.vertex_ids() {
        for w in right.vertex_ids() {
            s.add_vertex(pair(left.vertex_name(v), right.vertex_name(w)))?;
        }
    }
    let vname = |v: VertexId, w: VertexId| pair(left.vertex_name(v), right.vertex_name(w));
    for e in left.edge_ids() {
        for w in right.vertex_ids() {
            s.add_edge(
                pair(left.edge_name(e), right.vertex_name(w)),
                left.colour(e),
                &vname(left.source(e), w),
                &vname(left.range(e), w),
            )?;
        }
    }
    for v in left.vertex_ids() {
        for e in right.edge_ids() {
            s.add_edge(
                pair(left.vertex_name(v), right.edge_name(e)),
                k1 + right.colour(e),
                &vname(v, right.source(e)),
                &vname(v, right.range(e)),
            )?;
        }
    }
    let le = |e: EdgeId, w: VertexId| pair(left.edge_name(e), right.vertex_name(w));
    let re = |v: VertexId, e: EdgeId| pair(left.vertex_name(v), right.edge_name(e));
    let mut table = SquareTable::new();
    for sq in left.squares() {
        for w in right.vertex_ids() {
            table.push(&le(sq.f, w), &le(sq.g, w), &le(sq.g2, w), &le(sq.f2, w));
        }
    }
    for v in left.vertex_ids() {
        for sq in right.squares() {
            table.push(&re(v, sq.f), &re(v, sq.g), &re(v, sq.g2), &re(v, sq.f2));
        }
    }
    for f in left.edge_ids() {
        for g in right.edge_ids() {
            table.push(&le(f, right.range(g)), &re(left.source(f), g), &re(left.range(f), g), &le(f, right.source(g)));
        }
    }
    let graph = Arc::new(validate(s, &table)?);
    Ok(DerivedGraph { graph, kind: DerivedKind::Product { left, right } })
}

/// Pulls `base` back along the monoid map `N^l -> N^k` given by `matrix` (`k` rows, `l` columns).
pub fn pullback(base: Arc<KGraph>, matrix: Vec<Vec<u32>>) -> Result<DerivedGraph> {
    let k = base.rank();
    if matrix.len() != k {
        return Err(Error::InvalidMatrix(format!("expected {k} rows, found {}", matrix.len())));
    }
    let l = matrix.first().map_or(0, |row| row.len());
    if matrix.iter().any(|row| row.len() != l) {
        return Err(Error::InvalidMatrix("rows have different lengths".into()));
    }
    let column = |j: usize| Degree::from_vec(matrix.iter().map(|row| row[j - 1]).collect());

    let mut s = Skeleton::new(l);
    for v in base.vertex_ids() {
        s.add_vertex(base.vertex_name(v))?;
    }
    let label = |m: &Morphism| {
        if m.is_vertex() {
            base.vertex_name(m.range()).to_string()
        } else {
            base.word_names(m.word()).join(".")
        }
    };
    let mut origin = Vec::new();
    let mut index: HashMap<(Morphism, usize), String> = HashMap::new();
    for j in 1..=l {
        for lambda in base.enumerate_paths(None, &column(j), None) {
            let name = pair(&label(&lambda), &j.to_string());
            s.add_edge(name.clone(), j, base.vertex_name(lambda.source()), base.vertex_name(lambda.range()))?;
            index.insert((lambda.clone(), j), name);
            origin.push(lambda);
        }
    }
    let mut table = SquareTable::new();
    for i in 1..=l {
        for j in (i + 1)..=l {
            for lambda in base.enumerate_paths(None, &column(i), None) {
                for mu in base.enumerate_paths(Some(lambda.source()), &column(j), None) {
                    let whole = base.compose(&lambda, &mu)?;
                    let mu2 = base.prefix(&whole, &column(j))?;
                    let lambda2 = base.segment(&whole, &column(j), whole.degree())?;
                    table.push(&index[&(lambda.clone(), i)], &index[&(mu.clone(), j)], &index[&(mu2, j)], &index[&(lambda2, i)]);
                }
            }
        }
    }
    let graph = Arc::new(validate(s, &table)?);
    Ok(DerivedGraph { graph, kind: DerivedKind::Pullback { base, matrix, edge_origin: origin } })
}

/// Skew product by a functor into a finite cyclic group, given by its values on edges.
pub fn skew(base: Arc<KGraph>, group: &CoeffGroup, values: &[GroupElem]) -> Result<DerivedGraph> {
    let n = match group {
        CoeffGroup::IntegersMod(n) => *n,
        _ => return Err(Error::InfiniteResult),
    };
    if values.len() != base.edge_count() || values.iter().any(|x| !group.contains(x)) {
        return Err(Error::InvalidFunctor { square: Vec::new() });
    }
    let vals: Vec<u64> = values.iter().map(|x| x.to_bigint().unwrap().try_into().unwrap()).collect();
    for sq in base.squares() {
        let lhs = (vals[sq.f.index()] + vals[sq.g.index()]) % n;
        let rhs = (vals[sq.g2.index()] + vals[sq.f2.index()]) % n;
        if lhs != rhs {
            return Err(Error::InvalidFunctor { square: base.word_names(&[sq.f, sq.g, sq.g2, sq.f2]) });
        }
    }
    let vname = |v: VertexId, a: u64| pair(base.vertex_name(v), &a.to_string());
    let ename = |e: EdgeId, a: u64| pair(base.edge_name(e), &a.to_string());
    let mut s = Skeleton::new(base.rank());
    for v in base.vertex_ids() {
        for a in 0..n {
            s.add_vertex(vname(v, a))?;
        }
    }
    for e in base.edge_ids() {
        for a in 0..n {
            let b = (a + vals[e.index()]) % n;
            s.add_edge(ename(e, a), base.colour(e), &vname(base.source(e), b), &vname(base.range(e), a))?;
        }
    }
    let mut table = SquareTable::new();
    for sq in base.squares() {
        for a in 0..n {
            table.push(
                &ename(sq.f, a),
                &ename(sq.g, (a + vals[sq.f.index()]) % n),
                &ename(sq.g2, a),
                &ename(sq.f2, (a + vals[sq.g2.index()]) % n),
            );
        }
    }
    let graph = Arc::new(validate(s, &table)?);
    Ok(DerivedGraph { graph, kind: DerivedKind::Skew { base, modulus: n, values: vals } })
}

impl DerivedGraph {
    /// Product coordinates `(λ1, λ2)` of a morphism of a product graph.
    pub fn split(&self, lambda: &Morphism) -> Option<(Morphism, Morphism)> {
        let DerivedKind::Product { left, right } = &self.kind else { return None };
        let g = &self.graph;
        let k1 = left.rank();
        let nr = right.vertex_count() as u32;
        let ne1 = (left.edge_count() * right.vertex_count()) as u32;
        let r = lambda.range();
        let (r1, r2) = (VertexId(r.0 / nr), VertexId(r.0 % nr));
        let mut w1 = Vec::new();
        let mut w2 = Vec::new();
        for &e in lambda.word() {
            if g.colour(e) <= k1 {
                w1.push(EdgeId(e.0 / nr));
            } else {
                let idx = e.0 - ne1;
                w2.push(EdgeId(idx % right.edge_count() as u32));
            }
        }
        let m1 = if w1.is_empty() { left.vertex_morphism(r1) } else { left.morphism_from_word(&w1).ok()? };
        let m2 = if w2.is_empty() { right.vertex_morphism(r2) } else { right.morphism_from_word(&w2).ok()? };
        Some((m1, m2))
    }

    /// The base morphism `λ` of a pullback morphism `(λ, m)`.
    pub fn pullback_base(&self, lambda: &Morphism) -> Option<Morphism> {
        let DerivedKind::Pullback { base, edge_origin, .. } = &self.kind else { return None };
        let mut acc = base.vertex_morphism(lambda.range());
        for &e in lambda.word() {
            acc = base.compose(&acc, &edge_origin[e.index()]).ok()?;
        }
        Some(acc)
    }

    /// The base morphism and range label `(μ, a)` of a skew-product morphism.
    pub fn skew_base(&self, lambda: &Morphism) -> Option<(Morphism, u64)> {
        let DerivedKind::Skew { base, modulus, .. } = &self.kind else { return None };
        let n = *modulus as u32;
        let label = (lambda.range().0 % n) as u64;
        if lambda.is_vertex() {
            return Some((base.vertex_morphism(VertexId(lambda.range().0 / n)), label));
        }
        let word: Vec<EdgeId> = lambda.word().iter().map(|e| EdgeId(e.0 / n)).collect();
        Some((base.morphism_from_word(&word).ok()?, label))
    }

    pub fn base_graphs(&self) -> Vec<&Arc<KGraph>> {
        match &self.kind {
            DerivedKind::Product { left, right } => vec![left, right],
            DerivedKind::Pullback { base, .. } | DerivedKind::Skew { base, .. } => vec![base],
        }
    }
}
