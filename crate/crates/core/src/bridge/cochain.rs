//! Categorical 1-cochains and 2-cocycles as evaluators over finite data.

use std::collections::hash_map::DefaultHasher;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use super::shuffle::SquareValues;
use crate::coeff::{CoeffGroup, GroupElem};
use crate::cubical::{cub_2cocycle_witness, is_cub_2cocycle, CubicalCochain, EdgeFunctor};
use crate::error::{Error, Result};
use crate::extension::{Extension, Section};
use crate::graph::{DerivedGraph, DerivedKind, KGraph, Morphism};
use crate::par;
use crate::sample::{self, Check, SampleSpec};

pub(crate) fn same_graph(a: &Arc<KGraph>, b: &Arc<KGraph>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

fn same_group(a: &CoeffGroup, b: &CoeffGroup) -> Result<()> {
    if a == b {
        Ok(())
    } else {
        Err(Error::CoefficientMismatch(a.to_string(), b.to_string()))
    }
}

type Fn1 = dyn Fn(&Morphism) -> GroupElem + Send + Sync;
type Fn2 = dyn Fn(&Morphism, &Morphism) -> GroupElem + Send + Sync;

/// A normalised function `Λ -> A`.
#[derive(Clone)]
pub struct Cat1Cochain {
    graph: Arc<KGraph>,
    group: CoeffGroup,
    kind: Arc<Cat1Kind>,
}

pub enum Cat1Kind {
    /// `b(λ) = Σ_i f(λ̄_i)` for edge values `f`.
    PreferredSum(Vec<GroupElem>),
    Negate(Cat1Cochain),
    Sum(Cat1Cochain, Cat1Cochain),
    /// Pseudo-random values derived from a seed and the edge word.
    Hashed(u64),
    Custom(String, Box<Fn1>),
}

impl fmt::Debug for Cat1Cochain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match &*self.kind {
            Cat1Kind::PreferredSum(v) => format!("PreferredSum({} edges)", v.len()),
            Cat1Kind::Negate(_) => "Negate".into(),
            Cat1Kind::Sum(..) => "Sum".into(),
            Cat1Kind::Hashed(s) => format!("Hashed({s})"),
            Cat1Kind::Custom(name, _) => format!("Custom({name})"),
        };
        write!(f, "Cat1Cochain {{ group: {}, kind: {kind} }}", self.group)
    }
}

impl Cat1Cochain {
    fn build(graph: Arc<KGraph>, group: CoeffGroup, kind: Cat1Kind) -> Self {
        Cat1Cochain { graph, group, kind: Arc::new(kind) }
    }

    /// Sums a function on edges along preferred words.
    pub fn preferred_sum(f: &CubicalCochain) -> Self {
        assert_eq!(f.rank(), 1, "expected a function on edges");
        let g = f.graph().clone();
        let values = g.edge_ids().map(|e| f.at(&g.edge_morphism(e)).clone()).collect();
        Self::build(g, f.group().clone(), Cat1Kind::PreferredSum(values))
    }

    /// The cochain given by a functor.
    pub fn from_functor(graph: Arc<KGraph>, functor: &EdgeFunctor) -> Self {
        let values = graph.edge_ids().map(|e| functor.edge_value(e).clone()).collect();
        Self::build(graph, functor.group().clone(), Cat1Kind::PreferredSum(values))
    }

    pub fn hashed(graph: Arc<KGraph>, group: CoeffGroup, seed: u64) -> Self {
        Self::build(graph, group, Cat1Kind::Hashed(seed))
    }

    /// `f` must vanish on vertices.
    pub fn custom(
        graph: Arc<KGraph>,
        group: CoeffGroup,
        name: impl Into<String>,
        f: impl Fn(&Morphism) -> GroupElem + Send + Sync + 'static,
    ) -> Self {
        Self::build(graph, group, Cat1Kind::Custom(name.into(), Box::new(f)))
    }

    pub fn negate(&self) -> Self {
        Self::build(self.graph.clone(), self.group.clone(), Cat1Kind::Negate(self.clone()))
    }

    pub fn sum(&self, other: &Cat1Cochain) -> Result<Self> {
        if !same_graph(&self.graph, &other.graph) {
            return Err(Error::GraphMismatch);
        }
        same_group(&self.group, &other.group)?;
        Ok(Self::build(self.graph.clone(), self.group.clone(), Cat1Kind::Sum(self.clone(), other.clone())))
    }

    pub fn graph(&self) -> &Arc<KGraph> {
        &self.graph
    }

    pub fn group(&self) -> &CoeffGroup {
        &self.group
    }

    pub fn kind(&self) -> &Cat1Kind {
        &self.kind
    }

    pub fn eval(&self, lambda: &Morphism) -> GroupElem {
        match &*self.kind {
            Cat1Kind::PreferredSum(values) => self.group.sum(lambda.word().iter().map(|e| &values[e.index()])),
            Cat1Kind::Negate(b) => -b.eval(lambda),
            Cat1Kind::Sum(a, b) => a.eval(lambda) + b.eval(lambda),
            Cat1Kind::Hashed(seed) => {
                if lambda.is_vertex() {
                    return self.group.zero();
                }
                let mut h = DefaultHasher::new();
                seed.hash(&mut h);
                lambda.hash(&mut h);
                self.group.sample(&mut sample::rng(h.finish()))
            }
            Cat1Kind::Custom(_, f) => f(lambda),
        }
    }
}

/// A normalised function on composable pairs, evaluated on demand.
#[derive(Clone)]
pub struct Cat2Cocycle {
    graph: Arc<KGraph>,
    group: CoeffGroup,
    kind: Arc<CocycleKind>,
}

pub enum CocycleKind {
    Zero,
    /// `c_φ(μ, ν) = S_φ(μ̄ν̄)`.
    FromCubical {
        phi: CubicalCochain,
        table: SquareValues,
    },
    /// `δb(μ, ν) = b(μ) − b(μν) + b(ν)`.
    Coboundary(Cat1Cochain),
    Sum(Cat2Cocycle, Cat2Cocycle),
    Negate(Cat2Cocycle),
    /// `c((λ, m), (λ', m')) = c(λ, λ')`, read pairwise.
    Pullback {
        derived: Arc<DerivedGraph>,
        base: Cat2Cocycle,
    },
    /// `(c1 × c2)((λ1, λ2), (μ1, μ2)) = c1(λ1, μ1) + c2(λ2, μ2)`.
    Product {
        derived: Arc<DerivedGraph>,
        first: Cat2Cocycle,
        second: Cat2Cocycle,
    },
    /// `c((μ, a), (ν, a + F(μ))) = c(μ, ν)`.
    Skew {
        derived: Arc<DerivedGraph>,
        base: Cat2Cocycle,
    },
    /// `c_σ(μ, ν) = a(σ(μ)σ(ν), σ(μν))`.
    FromSection {
        ext: Extension,
        section: Section,
    },
    Custom(String, Box<Fn2>),
}

impl fmt::Debug for Cat2Cocycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cat2Cocycle {{ group: {}, kind: {} }}", self.group, self.kind_name())
    }
}

/// Arguments for [`build_cocycle`].
pub enum CocycleRecipe {
    Coboundary(Cat1Cochain),
    Sum(Cat2Cocycle, Cat2Cocycle),
    Negate(Cat2Cocycle),
    Pullback(Arc<DerivedGraph>, Cat2Cocycle),
    Product(Arc<DerivedGraph>, Cat2Cocycle, Cat2Cocycle),
    Skew(Arc<DerivedGraph>, Cat2Cocycle),
}

pub fn build_cocycle(recipe: CocycleRecipe) -> Result<Cat2Cocycle> {
    match recipe {
        CocycleRecipe::Coboundary(b) => Ok(Cat2Cocycle::coboundary(&b)),
        CocycleRecipe::Sum(a, b) => a.sum(&b),
        CocycleRecipe::Negate(a) => Ok(a.negate()),
        CocycleRecipe::Pullback(d, c) => Cat2Cocycle::pullback(d, &c),
        CocycleRecipe::Product(d, a, b) => Cat2Cocycle::product(d, &a, &b),
        CocycleRecipe::Skew(d, c) => Cat2Cocycle::skew(d, &c),
    }
}

/// `c_φ` for a cubical 2-cocycle `φ`.
pub fn c_phi(phi: &CubicalCochain) -> Result<Cat2Cocycle> {
    if let Some(cube) = cub_2cocycle_witness(phi) {
        return Err(Error::NotACocycle(format!("the cube identity fails on {}", phi.graph().describe(&cube))));
    }
    let table = SquareValues::new(phi);
    Ok(Cat2Cocycle::build(phi.graph().clone(), phi.group().clone(), CocycleKind::FromCubical { phi: phi.clone(), table }))
}

impl Cat2Cocycle {
    pub(crate) fn build(graph: Arc<KGraph>, group: CoeffGroup, kind: CocycleKind) -> Self {
        Cat2Cocycle { graph, group, kind: Arc::new(kind) }
    }

    pub fn zero(graph: Arc<KGraph>, group: CoeffGroup) -> Self {
        Self::build(graph, group, CocycleKind::Zero)
    }

    pub fn coboundary(b: &Cat1Cochain) -> Self {
        Self::build(b.graph.clone(), b.group.clone(), CocycleKind::Coboundary(b.clone()))
    }

    /// An arbitrary pair function; used for hand-made or deliberately broken cocycles.
    pub fn custom(
        graph: Arc<KGraph>,
        group: CoeffGroup,
        name: impl Into<String>,
        f: impl Fn(&Morphism, &Morphism) -> GroupElem + Send + Sync + 'static,
    ) -> Self {
        Self::build(graph, group, CocycleKind::Custom(name.into(), Box::new(f)))
    }

    pub fn sum(&self, other: &Cat2Cocycle) -> Result<Self> {
        if !same_graph(&self.graph, &other.graph) {
            return Err(Error::GraphMismatch);
        }
        same_group(&self.group, &other.group)?;
        Ok(Self::build(self.graph.clone(), self.group.clone(), CocycleKind::Sum(self.clone(), other.clone())))
    }

    pub fn negate(&self) -> Self {
        Self::build(self.graph.clone(), self.group.clone(), CocycleKind::Negate(self.clone()))
    }

    pub fn pullback(derived: Arc<DerivedGraph>, base: &Cat2Cocycle) -> Result<Self> {
        match &derived.kind {
            DerivedKind::Pullback { base: b, .. } if same_graph(b, &base.graph) => {}
            _ => return Err(Error::GraphMismatch),
        }
        let graph = derived.graph.clone();
        Ok(Self::build(graph, base.group.clone(), CocycleKind::Pullback { derived, base: base.clone() }))
    }

    pub fn product(derived: Arc<DerivedGraph>, first: &Cat2Cocycle, second: &Cat2Cocycle) -> Result<Self> {
        match &derived.kind {
            DerivedKind::Product { left, right } if same_graph(left, &first.graph) && same_graph(right, &second.graph) => {}
            _ => return Err(Error::GraphMismatch),
        }
        same_group(&first.group, &second.group)?;
        let graph = derived.graph.clone();
        let kind = CocycleKind::Product { derived, first: first.clone(), second: second.clone() };
        Ok(Self::build(graph, first.group.clone(), kind))
    }

    pub fn skew(derived: Arc<DerivedGraph>, base: &Cat2Cocycle) -> Result<Self> {
        match &derived.kind {
            DerivedKind::Skew { base: b, .. } if same_graph(b, &base.graph) => {}
            _ => return Err(Error::GraphMismatch),
        }
        let graph = derived.graph.clone();
        Ok(Self::build(graph, base.group.clone(), CocycleKind::Skew { derived, base: base.clone() }))
    }

    pub fn graph(&self) -> &Arc<KGraph> {
        &self.graph
    }

    pub fn group(&self) -> &CoeffGroup {
        &self.group
    }

    pub fn kind(&self) -> &CocycleKind {
        &self.kind
    }

    pub fn kind_name(&self) -> &str {
        match &*self.kind {
            CocycleKind::Zero => "zero",
            CocycleKind::FromCubical { .. } => "from-cubical",
            CocycleKind::Coboundary(_) => "coboundary",
            CocycleKind::Sum(..) => "sum",
            CocycleKind::Negate(_) => "negate",
            CocycleKind::Pullback { .. } => "pullback",
            CocycleKind::Product { .. } => "product",
            CocycleKind::Skew { .. } => "skew",
            CocycleKind::FromSection { .. } => "from-section",
            CocycleKind::Custom(name, _) => name,
        }
    }

    /// `c(μ, ν)`. The pair must be composable (`s(μ) = r(ν)`).
    pub fn eval(&self, mu: &Morphism, nu: &Morphism) -> GroupElem {
        debug_assert_eq!(mu.source(), nu.range(), "arguments must be composable");
        match &*self.kind {
            CocycleKind::Zero => self.group.zero(),
            CocycleKind::FromCubical { table, .. } => {
                let mut word = mu.word().to_vec();
                word.extend_from_slice(nu.word());
                table.sort(&self.graph, &mut word)
            }
            CocycleKind::Coboundary(b) => {
                let mn = self.graph.compose(mu, nu).expect("composable arguments");
                b.eval(mu) - b.eval(&mn) + b.eval(nu)
            }
            CocycleKind::Sum(a, b) => a.eval(mu, nu) + b.eval(mu, nu),
            CocycleKind::Negate(a) => -a.eval(mu, nu),
            CocycleKind::Pullback { derived, base } => {
                let m = derived.pullback_base(mu).expect("morphism of the pullback");
                let n = derived.pullback_base(nu).expect("morphism of the pullback");
                base.eval(&m, &n)
            }
            CocycleKind::Product { derived, first, second } => {
                let (m1, m2) = derived.split(mu).expect("morphism of the product");
                let (n1, n2) = derived.split(nu).expect("morphism of the product");
                first.eval(&m1, &n1) + second.eval(&m2, &n2)
            }
            CocycleKind::Skew { derived, base } => {
                let (m, _) = derived.skew_base(mu).expect("morphism of the skew product");
                let (n, _) = derived.skew_base(nu).expect("morphism of the skew product");
                base.eval(&m, &n)
            }
            CocycleKind::FromSection { ext, section } => ext.section_cocycle_value(section, mu, nu),
            CocycleKind::Custom(_, f) => f(mu, nu),
        }
    }

    /// `c(μ, ν)` with a composability check.
    pub fn try_eval(&self, mu: &Morphism, nu: &Morphism) -> Result<GroupElem> {
        if mu.source() != nu.range() {
            return Err(Error::NotComposable { left: self.graph.describe(mu), right: self.graph.describe(nu) });
        }
        Ok(self.eval(mu, nu))
    }

    /// `c(λ1, λ2) + c(λ1λ2, λ3) − c(λ2, λ3) − c(λ1, λ2λ3)`, zero exactly when the identity holds.
    pub fn identity_defect(&self, l1: &Morphism, l2: &Morphism, l3: &Morphism) -> GroupElem {
        let g = &self.graph;
        let l12 = g.compose(l1, l2).expect("composable chain");
        let l23 = g.compose(l2, l3).expect("composable chain");
        self.eval(l1, l2) + self.eval(&l12, l3) - self.eval(l2, l3) - self.eval(l1, &l23)
    }
}

/// Checks the 2-cocycle identity on the composable triples described by `spec`.
/// The witness is the first failing triple in sample order.
pub fn cat2_eval_and_check(c: &Cat2Cocycle, spec: &SampleSpec) -> Check<Vec<Morphism>> {
    let triples = sample::chains(&c.graph, 3, spec);
    let witness = par::find_first(&triples, |t| (!c.identity_defect(&t[0], &t[1], &t[2]).is_zero()).then(|| t.clone()));
    Check { checked: triples.len(), witness }
}

/// Exhaustive triples with at most two edges each, then 500 random triples with at most four.
pub fn cat2_check_default(c: &Cat2Cocycle, seed: u64) -> Check<Vec<Morphism>> {
    let first = cat2_eval_and_check(c, &SampleSpec::Exhaustive { max_len: 2 });
    if !first.passed() {
        return first;
    }
    let second = cat2_eval_and_check(c, &SampleSpec::Random { seed, count: 500, max_len: 4 });
    Check { checked: first.checked + second.checked, witness: second.witness }
}

/// Whether `c` vanishes when either argument is an identity, on morphisms with at most `max_len` edges.
pub fn is_normalised(c: &Cat2Cocycle, max_len: usize) -> bool {
    let g = &c.graph;
    g.morphisms_up_to(max_len).iter().all(|l| {
        let r = g.vertex_morphism(l.range());
        let s = g.vertex_morphism(l.source());
        c.eval(&r, l).is_zero() && c.eval(l, &s).is_zero()
    })
}

pub(crate) fn require_cocycle(phi: &CubicalCochain) -> Result<()> {
    if is_cub_2cocycle(phi) {
        Ok(())
    } else {
        Err(Error::NotACocycle("the cube identity fails".into()))
    }
}
