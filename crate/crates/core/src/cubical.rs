//! Cubes, the cubical chain complex, its homology and cohomology, and cubical cochains.

use std::collections::HashMap;
use std::ops::{Add, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use rand::Rng;

use crate::coeff::{CoeffGroup, GroupElem};
use crate::degree::Degree;
use crate::error::{Error, Result};
use crate::graph::{EdgeId, KGraph, Morphism};
use crate::matrix::{smith_normal_form, subquotient, IntMatrix};

pub use crate::matrix::FinAbGroup;

/// `Q_r`: morphisms of degree at most `1_k` with `r` edges, in enumeration order.
#[derive(Debug)]
pub struct CubeSet {
    cubes: Vec<Morphism>,
    index: HashMap<Morphism, usize>,
}

impl CubeSet {
    pub fn cubes(&self) -> &[Morphism] {
        &self.cubes
    }

    pub fn len(&self) -> usize {
        self.cubes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cubes.is_empty()
    }

    pub fn position(&self, m: &Morphism) -> Option<usize> {
        self.index.get(m).copied()
    }
}

pub fn cubes(g: &KGraph, r: usize) -> Arc<CubeSet> {
    let build = || {
        let cubes: Vec<Morphism> = if r > g.rank() {
            Vec::new()
        } else {
            let ones = Degree::ones(g.rank());
            Degree::all_with_total(g.rank(), r)
                .into_iter()
                .filter(|d| d.le(&ones))
                .flat_map(|d| g.enumerate_paths(None, &d, None))
                .collect()
        };
        let index = cubes.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
        Arc::new(CubeSet { cubes, index })
    };
    match g.cube_cache(r) {
        Some(cell) => cell.get_or_init(build).clone(),
        None => build(),
    }
}

/// `F_j^0(λ) = λ(0, d − e_{i_j})` and `F_j^1(λ) = λ(e_{i_j}, d)`, with `j` 1-based.
pub fn face(g: &KGraph, cube: &Morphism, j: usize, end: u8) -> Result<Morphism> {
    let colours = cube.degree().colour_word();
    if j == 0 || j > colours.len() {
        return Err(Error::IndexOutOfRange { index: j, rank: colours.len() });
    }
    let d = cube.degree();
    let e = Degree::unit(g.rank(), colours[j - 1]);
    if end == 0 {
        g.prefix(cube, &d.checked_sub(&e).unwrap())
    } else {
        g.segment(cube, &e, d)
    }
}

/// All `2r` faces as `(j, ℓ, face)`.
pub fn faces(g: &KGraph, cube: &Morphism) -> Vec<(usize, u8, Morphism)> {
    let r = cube.len();
    (1..=r).flat_map(|j| [0u8, 1].map(|l| (j, l, face(g, cube, j, l).unwrap()))).collect()
}

fn sign(j: usize, l: u8) -> i64 {
    if (j + l as usize).is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Matrix of `∂_r : Z Q_r -> Z Q_{r-1}`; for `r = 0` the empty map.
pub fn boundary_matrix(g: &KGraph, r: usize) -> IntMatrix {
    let cols = cubes(g, r);
    if r == 0 {
        return IntMatrix::zeros(0, cols.len());
    }
    let rows = cubes(g, r - 1);
    let mut m = IntMatrix::zeros(rows.len(), cols.len());
    for (c, cube) in cols.cubes().iter().enumerate() {
        for (j, l, f) in faces(g, cube) {
            m.add_to(rows.position(&f).expect("faces are cubes"), c, sign(j, l));
        }
    }
    m
}

/// `H_r = ker ∂_r / im ∂_{r+1}`.
pub fn homology(g: &KGraph, r: usize) -> FinAbGroup {
    let n = cubes(g, r).len();
    let rank_in = if r == 0 { 0 } else { smith_normal_form(&boundary_matrix(g, r)).rank() };
    let out = smith_normal_form(&boundary_matrix(g, r + 1));
    FinAbGroup {
        free_rank: n - rank_in - out.rank(),
        torsion: out.diagonal.into_iter().filter(|d| *d > BigInt::from(1)).collect(),
    }
}

/// `H^r(Λ, A)` for `A = Z` or `Z/n`.
pub fn cohomology(g: &KGraph, r: usize, group: &CoeffGroup) -> Result<FinAbGroup> {
    let q = cubes(g, r).len();
    let delta = boundary_matrix(g, r + 1).transpose();
    let below: Vec<Vec<BigInt>> = if r == 0 {
        Vec::new()
    } else {
        let prev = boundary_matrix(g, r).transpose();
        (0..prev.cols()).map(|j| prev.column(j)).collect()
    };
    match group {
        CoeffGroup::Integers => {
            let kernel = smith_normal_form(&delta).kernel();
            Ok(subquotient(q, &kernel, &below))
        }
        CoeffGroup::IntegersMod(n) => {
            let n = BigInt::from(*n);
            let m = delta.rows();
            let mut scaled = IntMatrix::zeros(m, m);
            for i in 0..m {
                scaled.set(i, i, n.clone());
            }
            // x with δx ∈ nZ^m: kernel of [δ | nI] projected to the first q coordinates
            let kernel: Vec<Vec<BigInt>> =
                smith_normal_form(&delta.hcat(&scaled)).kernel().into_iter().map(|v| v[..q].to_vec()).collect();
            let mut image = below;
            for i in 0..q {
                let mut v = vec![BigInt::from(0); q];
                v[i] = n.clone();
                image.push(v);
            }
            Ok(subquotient(q, &kernel, &image))
        }
        CoeffGroup::RationalsMod1 => Err(Error::UnsupportedCoefficients(group.to_string())),
    }
}

/// A function `Q_r -> A`, stored in cube order.
#[derive(Clone, Debug)]
pub struct CubicalCochain {
    graph: Arc<KGraph>,
    rank: usize,
    group: CoeffGroup,
    values: Vec<GroupElem>,
}

impl PartialEq for CubicalCochain {
    fn eq(&self, other: &Self) -> bool {
        (Arc::ptr_eq(&self.graph, &other.graph) || self.graph == other.graph)
            && self.rank == other.rank
            && self.group == other.group
            && self.values == other.values
    }
}

impl CubicalCochain {
    pub fn new(graph: Arc<KGraph>, rank: usize, group: CoeffGroup, values: Vec<GroupElem>) -> Result<Self> {
        let n = cubes(&graph, rank).len();
        if values.len() != n {
            return Err(Error::BadValue(format!("{} values", values.len()), format!("a table over {n} cubes")));
        }
        if let Some(bad) = values.iter().find(|x| !group.contains(x)) {
            return Err(Error::BadValue(bad.to_string(), group.to_string()));
        }
        Ok(CubicalCochain { graph, rank, group, values })
    }

    pub fn zero(graph: Arc<KGraph>, rank: usize, group: CoeffGroup) -> Self {
        let n = cubes(&graph, rank).len();
        let values = vec![group.zero(); n];
        CubicalCochain { graph, rank, group, values }
    }

    pub fn from_fn(graph: Arc<KGraph>, rank: usize, group: CoeffGroup, f: impl Fn(&Morphism) -> GroupElem) -> Self {
        let values = cubes(&graph, rank).cubes().iter().map(f).collect();
        CubicalCochain { graph, rank, group, values }
    }

    pub fn random<R: Rng + ?Sized>(graph: Arc<KGraph>, rank: usize, group: CoeffGroup, rng: &mut R) -> Self {
        let n = cubes(&graph, rank).len();
        let values = (0..n).map(|_| group.sample(rng)).collect();
        CubicalCochain { graph, rank, group, values }
    }

    pub fn graph(&self) -> &Arc<KGraph> {
        &self.graph
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn group(&self) -> &CoeffGroup {
        &self.group
    }

    pub fn values(&self) -> &[GroupElem] {
        &self.values
    }

    pub fn cubes(&self) -> Arc<CubeSet> {
        cubes(&self.graph, self.rank)
    }

    /// Value on a cube of the right rank.
    pub fn at(&self, cube: &Morphism) -> &GroupElem {
        let i = self.cubes().position(cube).expect("argument is a cube of this rank");
        &self.values[i]
    }

    pub fn with_value(mut self, cube: &Morphism, value: GroupElem) -> Self {
        let i = self.cubes().position(cube).expect("argument is a cube of this rank");
        self.values[i] = value;
        self
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(GroupElem::is_zero)
    }

    fn zip(&self, other: &Self, op: impl Fn(&GroupElem, &GroupElem) -> GroupElem) -> Self {
        assert!(self.rank == other.rank && self.group == other.group, "cochains of different shape");
        let values = self.values.iter().zip(&other.values).map(|(a, b)| op(a, b)).collect();
        CubicalCochain { graph: self.graph.clone(), rank: self.rank, group: self.group.clone(), values }
    }
}

impl Add for &CubicalCochain {
    type Output = CubicalCochain;

    fn add(self, rhs: &CubicalCochain) -> CubicalCochain {
        self.zip(rhs, |a, b| a + b)
    }
}

impl Sub for &CubicalCochain {
    type Output = CubicalCochain;

    fn sub(self, rhs: &CubicalCochain) -> CubicalCochain {
        self.zip(rhs, |a, b| a - b)
    }
}

impl Neg for &CubicalCochain {
    type Output = CubicalCochain;

    fn neg(self) -> CubicalCochain {
        let values = self.values.iter().map(|a| -a).collect();
        CubicalCochain { graph: self.graph.clone(), rank: self.rank, group: self.group.clone(), values }
    }
}

/// `(δf)(λ) = f(∂λ)`.
pub fn cub_coboundary(f: &CubicalCochain) -> CubicalCochain {
    let g = f.graph.clone();
    let group = f.group.clone();
    CubicalCochain::from_fn(g.clone(), f.rank + 1, group.clone(), |cube| {
        faces(&g, cube).into_iter().fold(group.zero(), |acc, (j, l, face)| {
            let v = f.at(&face);
            if sign(j, l) > 0 {
                &acc + v
            } else {
                &acc - v
            }
        })
    })
}

/// A 3-cube on which `φ(F_3^0) + φ(F_2^1) + φ(F_1^0) = φ(F_1^1) + φ(F_2^0) + φ(F_3^1)` fails.
pub fn cub_2cocycle_witness(phi: &CubicalCochain) -> Option<Morphism> {
    assert_eq!(phi.rank, 2, "expected a function on squares");
    let g = &phi.graph;
    cubes(g, 3).cubes().iter().find_map(|cube| {
        let at = |j, l| phi.at(&face(g, cube, j, l).unwrap()).clone();
        let lhs = at(3, 0) + at(2, 1) + at(1, 0);
        let rhs = at(1, 1) + at(2, 0) + at(3, 1);
        (lhs != rhs).then(|| cube.clone())
    })
}

pub fn is_cub_2cocycle(phi: &CubicalCochain) -> bool {
    cub_2cocycle_witness(phi).is_none()
}

/// A functor `Λ -> A` determined by its values on edges.
#[derive(Clone, Debug, PartialEq)]
pub struct EdgeFunctor {
    group: CoeffGroup,
    values: Vec<GroupElem>,
}

impl EdgeFunctor {
    /// The functor with the given value on each edge, indexed by edge id.
    /// Fails with `InvalidFunctor` unless the values agree around every square.
    pub fn from_edge_values(graph: Arc<KGraph>, group: CoeffGroup, values: Vec<GroupElem>) -> Result<Self> {
        if values.len() != graph.edge_count() {
            return Err(Error::BadValue(format!("{} values", values.len()), format!("{} edges", graph.edge_count())));
        }
        if let Some(v) = values.iter().find(|v| !group.contains(v)) {
            return Err(Error::BadValue(v.to_string(), group.to_string()));
        }
        let f = CubicalCochain::from_fn(graph, 1, group, |e| values[e.word()[0].index()].clone());
        extend_1cocycle(&f)
    }

    pub fn group(&self) -> &CoeffGroup {
        &self.group
    }

    pub fn edge_value(&self, e: EdgeId) -> &GroupElem {
        &self.values[e.index()]
    }

    /// `f̃(λ) = Σ f(λ̄_i)`.
    pub fn eval(&self, lambda: &Morphism) -> GroupElem {
        self.group.sum(lambda.word().iter().map(|e| &self.values[e.index()]))
    }

    /// Sum over an arbitrary composable word.
    pub fn eval_word(&self, word: &[EdgeId]) -> GroupElem {
        self.group.sum(word.iter().map(|e| &self.values[e.index()]))
    }
}

/// Extends a cubical 1-cocycle to the functor it determines.
pub fn extend_1cocycle(f: &CubicalCochain) -> Result<EdgeFunctor> {
    assert_eq!(f.rank, 1, "expected a function on edges");
    let d = cub_coboundary(f);
    if let Some(i) = d.values.iter().position(|x| !x.is_zero()) {
        let sq = d.cubes().cubes()[i].clone();
        return Err(Error::NotACocycle(format!("δf is nonzero on the square {}", f.graph.describe(&sq))));
    }
    let g = &f.graph;
    let values = g.edge_ids().map(|e| f.at(&g.edge_morphism(e)).clone()).collect();
    Ok(EdgeFunctor { group: f.group.clone(), values })
}

/// The restriction of a functor to `Q_1`.
pub fn restrict_functor(graph: Arc<KGraph>, functor: &EdgeFunctor) -> CubicalCochain {
    let group = functor.group.clone();
    CubicalCochain::from_fn(graph, 1, group, |e| functor.eval(e))
}

/// Integer basis of the cubical 2-cocycles: the kernel of `δ²` over `Z`.
pub fn integral_2cocycle_basis(g: &KGraph) -> Vec<Vec<BigInt>> {
    smith_normal_form(&boundary_matrix(g, 3).transpose()).kernel()
}

/// A random cubical 2-cocycle: a random combination of the integral basis.
pub fn random_2cocycle<R: Rng + ?Sized>(graph: Arc<KGraph>, group: &CoeffGroup, rng: &mut R) -> CubicalCochain {
    let basis = integral_2cocycle_basis(&graph);
    let n = cubes(&graph, 2).len();
    let mut values = vec![group.zero(); n];
    for b in &basis {
        let coeff = group.sample(rng);
        for (v, x) in values.iter_mut().zip(b) {
            *v = &*v + &coeff.mul_int(x);
        }
    }
    CubicalCochain::new(graph, 2, group.clone(), values).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn b2_cubes_and_homology() {
        let b2 = catalog::b2();
        assert_eq!(cubes(&b2, 1).len(), 2);
        assert!(cubes(&b2, 2).is_empty());
        assert!(boundary_matrix(&b2, 1).is_zero());
        assert_eq!(homology(&b2, 0), FinAbGroup::free(1));
        assert_eq!(homology(&b2, 1), FinAbGroup::free(2));
    }

    #[test]
    fn t2_faces() {
        let t2 = catalog::t2();
        let sq = &cubes(&t2, 2).cubes()[0].clone();
        let e = t2.edge_morphism(t2.edge("e").unwrap());
        let f = t2.edge_morphism(t2.edge("f").unwrap());
        assert_eq!(face(&t2, sq, 1, 0).unwrap(), f);
        assert_eq!(face(&t2, sq, 1, 1).unwrap(), f);
        assert_eq!(face(&t2, sq, 2, 0).unwrap(), e);
        assert_eq!(face(&t2, sq, 2, 1).unwrap(), e);
        assert!(face(&t2, sq, 3, 0).is_err());
        let star = t2.vertex_morphism(t2.vertex("*").unwrap());
        assert_eq!(face(&t2, &e, 1, 0).unwrap(), star);
        assert_eq!(face(&t2, &e, 1, 1).unwrap(), star);
    }

    #[test]
    fn cohomology_of_small_graphs() {
        let t2 = catalog::t2();
        let z = CoeffGroup::Integers;
        assert_eq!(cohomology(&t2, 1, &z).unwrap(), FinAbGroup::free(2));
        let z2 = CoeffGroup::IntegersMod(2);
        let h2 = cohomology(&t2, 2, &z2).unwrap();
        assert_eq!(h2, FinAbGroup { free_rank: 0, torsion: vec![BigInt::from(2)] });
        assert!(cohomology(&t2, 2, &CoeffGroup::RationalsMod1).is_err());
    }

    #[test]
    fn extension_of_edge_cocycle() {
        let b2 = catalog::b2();
        let z = CoeffGroup::Integers;
        let f1 = b2.edge("f1").unwrap();
        let f = CubicalCochain::from_fn(b2.clone(), 1, z.clone(), |m| z.from_int((m.word()[0] == f1) as i64));
        let ft = extend_1cocycle(&f).unwrap();
        let w = b2.morphism_from_word(&[f1, b2.edge("f2").unwrap(), f1]).unwrap();
        assert_eq!(ft.eval(&w), z.from_int(2));
        assert!(ft.eval(&b2.vertex_morphism(b2.vertex("*").unwrap())).is_zero());
    }

    #[test]
    fn non_cocycle_is_rejected() {
        let g = catalog::twisted_square();
        let z = CoeffGroup::Integers;
        let a0 = g.edge("a0").unwrap();
        let f = CubicalCochain::from_fn(g.clone(), 1, z.clone(), |m| z.from_int((m.word()[0] == a0) as i64));
        assert!(matches!(extend_1cocycle(&f), Err(Error::NotACocycle(_))));
    }
}
