//! Central extensions of a k-graph by a coefficient group, built from 2-cocycles
//! and closed under the group operations on extensions.

mod laws;

use std::fmt;
use std::sync::Arc;

use crate::bridge::{Cat1Cochain, Cat2Cocycle, CocycleKind};
use crate::coeff::{CoeffGroup, GroupElem};
use crate::cubical::CubicalCochain;
use crate::error::{Error, Result};
use crate::graph::{KGraph, Morphism, VertexId};

pub use laws::ext_law_suite;

/// An element of an extension. The shape follows the extension it belongs to.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ExtElem {
    /// `(λ, a)` in `X_c` or the trivial extension.
    Pair(Morphism, GroupElem),
    /// The class `[x, y]` in a sum, stored with `y` a canonical lift.
    Class(Box<ExtElem>, Box<ExtElem>),
    /// `x̄` in the negative of an extension.
    Bar(Box<ExtElem>),
}

impl fmt::Display for ExtElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtElem::Pair(m, a) => write!(f, "({:?}, {a})", m.word().iter().map(|e| e.index()).collect::<Vec<_>>()),
            ExtElem::Class(x, y) => write!(f, "[{x}, {y}]"),
            ExtElem::Bar(x) => write!(f, "bar{x}"),
        }
    }
}

#[derive(Clone)]
pub struct Extension(Arc<ExtKind>);

pub enum ExtKind {
    /// `X_c`: pairs `(λ, a)` with `(μ, a)(ν, b) = (μν, c(μ, ν) + a + b)`.
    Cocycle(Cat2Cocycle),
    /// `Λ × A` with coordinatewise composition.
    Trivial { graph: Arc<KGraph>, group: CoeffGroup },
    /// `X + Y`: the fibred product modulo the antidiagonal action.
    Sum(Extension, Extension),
    /// `X` with the action negated.
    Neg(Extension),
}

impl fmt::Debug for Extension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &*self.0 {
            ExtKind::Cocycle(c) => write!(f, "X[{}]", c.kind_name()),
            ExtKind::Trivial { .. } => write!(f, "Trivial"),
            ExtKind::Sum(x, y) => write!(f, "({x:?} + {y:?})"),
            ExtKind::Neg(x) => write!(f, "-{x:?}"),
        }
    }
}

/// `X_c` for a normalised categorical 2-cocycle `c`.
pub fn xc_build(c: &Cat2Cocycle) -> Extension {
    Extension(Arc::new(ExtKind::Cocycle(c.clone())))
}

pub fn trivial(graph: Arc<KGraph>, group: CoeffGroup) -> Extension {
    Extension(Arc::new(ExtKind::Trivial { graph, group }))
}

pub fn ext_sum(x: &Extension, y: &Extension) -> Result<Extension> {
    if !crate::bridge::same_graph(x.base(), y.base()) || x.group() != y.group() {
        return Err(Error::BaseMismatch);
    }
    Ok(Extension(Arc::new(ExtKind::Sum(x.clone(), y.clone()))))
}

pub fn ext_neg(x: &Extension) -> Extension {
    Extension(Arc::new(ExtKind::Neg(x.clone())))
}

impl Extension {
    pub fn kind(&self) -> &ExtKind {
        &self.0
    }

    pub fn base(&self) -> &Arc<KGraph> {
        match &*self.0 {
            ExtKind::Cocycle(c) => c.graph(),
            ExtKind::Trivial { graph, .. } => graph,
            ExtKind::Sum(x, _) | ExtKind::Neg(x) => x.base(),
        }
    }

    pub fn group(&self) -> &CoeffGroup {
        match &*self.0 {
            ExtKind::Cocycle(c) => c.group(),
            ExtKind::Trivial { group, .. } => group,
            ExtKind::Sum(x, _) | ExtKind::Neg(x) => x.group(),
        }
    }

    /// Whether `x` has the shape of an element of this extension.
    pub fn contains(&self, x: &ExtElem) -> bool {
        match (&*self.0, x) {
            (ExtKind::Cocycle(_) | ExtKind::Trivial { .. }, ExtElem::Pair(_, a)) => self.group().contains(a),
            (ExtKind::Sum(a, b), ExtElem::Class(x, y)) => a.contains(x) && b.contains(y) && a.q(x) == b.q(y),
            (ExtKind::Neg(a), ExtElem::Bar(x)) => a.contains(x),
            _ => false,
        }
    }

    fn check(&self, x: &ExtElem) -> Result<()> {
        if self.contains(x) {
            Ok(())
        } else {
            Err(Error::ForeignElement)
        }
    }

    /// The quotient map to the base graph.
    pub fn q(&self, x: &ExtElem) -> Morphism {
        match (&*self.0, x) {
            (_, ExtElem::Pair(m, _)) => m.clone(),
            (ExtKind::Sum(a, _), ExtElem::Class(x, _)) => a.q(x),
            (ExtKind::Neg(a), ExtElem::Bar(x)) => a.q(x),
            _ => panic!("element does not belong to this extension"),
        }
    }

    /// `ι(v, a)`.
    pub fn iota(&self, v: VertexId, a: &GroupElem) -> ExtElem {
        self.act(a, &self.canonical_lift(&self.base().vertex_morphism(v)))
    }

    /// The lift `λ ↦ (λ, 0)` and its images under the extension operations.
    pub fn canonical_lift(&self, lambda: &Morphism) -> ExtElem {
        match &*self.0 {
            ExtKind::Cocycle(_) | ExtKind::Trivial { .. } => ExtElem::Pair(lambda.clone(), self.group().zero()),
            ExtKind::Sum(a, b) => ExtElem::Class(Box::new(a.canonical_lift(lambda)), Box::new(b.canonical_lift(lambda))),
            ExtKind::Neg(a) => ExtElem::Bar(Box::new(a.canonical_lift(lambda))),
        }
    }

    /// `a·x = ι(r(q(x)), a) x`.
    pub fn act(&self, a: &GroupElem, x: &ExtElem) -> ExtElem {
        match (&*self.0, x) {
            (ExtKind::Cocycle(_) | ExtKind::Trivial { .. }, ExtElem::Pair(m, b)) => ExtElem::Pair(m.clone(), a + b),
            (ExtKind::Sum(p, _), ExtElem::Class(x, y)) => ExtElem::Class(Box::new(p.act(a, x)), y.clone()),
            (ExtKind::Neg(p), ExtElem::Bar(x)) => ExtElem::Bar(Box::new(p.act(&-a, x))),
            _ => panic!("element does not belong to this extension"),
        }
    }

    /// The unique `a` with `x = a·y`; requires `q(x) = q(y)`.
    pub fn a_of(&self, x: &ExtElem, y: &ExtElem) -> Result<GroupElem> {
        self.check(x)?;
        self.check(y)?;
        if self.q(x) != self.q(y) {
            return Err(Error::FibreMismatch);
        }
        Ok(self.a_of_unchecked(x, y))
    }

    fn a_of_unchecked(&self, x: &ExtElem, y: &ExtElem) -> GroupElem {
        match (&*self.0, x, y) {
            (_, ExtElem::Pair(_, a), ExtElem::Pair(_, b)) => a - b,
            (ExtKind::Sum(p, r), ExtElem::Class(x1, y1), ExtElem::Class(x2, y2)) => {
                p.a_of_unchecked(x1, x2) + r.a_of_unchecked(y1, y2)
            }
            (ExtKind::Neg(p), ExtElem::Bar(x), ExtElem::Bar(y)) => -p.a_of_unchecked(x, y),
            _ => unreachable!("shapes were checked"),
        }
    }

    /// `[x, y]` in a sum, normalised so `y` is the canonical lift.
    pub fn class(&self, x: ExtElem, y: ExtElem) -> Result<ExtElem> {
        let ExtKind::Sum(p, r) = &*self.0 else { return Err(Error::ForeignElement) };
        p.check(&x)?;
        r.check(&y)?;
        let lambda = r.q(&y);
        if p.q(&x) != lambda {
            return Err(Error::FibreMismatch);
        }
        let lift = r.canonical_lift(&lambda);
        let b = r.a_of_unchecked(&y, &lift);
        Ok(ExtElem::Class(Box::new(p.act(&b, &x)), Box::new(lift)))
    }

    /// `x̄` in a negative.
    pub fn bar(&self, x: ExtElem) -> Result<ExtElem> {
        let ExtKind::Neg(p) = &*self.0 else { return Err(Error::ForeignElement) };
        p.check(&x)?;
        Ok(ExtElem::Bar(Box::new(x)))
    }

    pub fn compose(&self, x: &ExtElem, y: &ExtElem) -> Result<ExtElem> {
        self.check(x)?;
        self.check(y)?;
        let (qx, qy) = (self.q(x), self.q(y));
        if qx.source() != qy.range() {
            let g = self.base();
            return Err(Error::NotComposable { left: g.describe(&qx), right: g.describe(&qy) });
        }
        Ok(self.compose_unchecked(x, y))
    }

    fn compose_unchecked(&self, x: &ExtElem, y: &ExtElem) -> ExtElem {
        match (&*self.0, x, y) {
            (ExtKind::Cocycle(c), ExtElem::Pair(m, a), ExtElem::Pair(n, b)) => {
                let mn = c.graph().compose(m, n).expect("composable");
                ExtElem::Pair(mn, c.eval(m, n) + a + b)
            }
            (ExtKind::Trivial { graph, .. }, ExtElem::Pair(m, a), ExtElem::Pair(n, b)) => {
                ExtElem::Pair(graph.compose(m, n).expect("composable"), a + b)
            }
            (ExtKind::Sum(p, r), ExtElem::Class(x1, y1), ExtElem::Class(x2, y2)) => {
                let x = p.compose_unchecked(x1, x2);
                let y = r.compose_unchecked(y1, y2);
                let lift = r.canonical_lift(&r.q(&y));
                let b = r.a_of_unchecked(&y, &lift);
                ExtElem::Class(Box::new(p.act(&b, &x)), Box::new(lift))
            }
            (ExtKind::Neg(p), ExtElem::Bar(x), ExtElem::Bar(y)) => ExtElem::Bar(Box::new(p.compose_unchecked(x, y))),
            _ => unreachable!("shapes were checked"),
        }
    }

    /// `σ(λ)`.
    pub fn section_value(&self, section: &Section, lambda: &Morphism) -> ExtElem {
        match &*section.0 {
            SectionKind::Canonical => self.canonical_lift(lambda),
            SectionKind::FromEdgeLifts(lifts) => {
                let mut acc = self.canonical_lift(&self.base().vertex_morphism(lambda.range()));
                for e in lambda.word() {
                    acc = self.compose_unchecked(&acc, &lifts[e.index()]);
                }
                acc
            }
            SectionKind::Perturbed(base, b) => self.act(&b.eval(lambda), &self.section_value(base, lambda)),
        }
    }

    /// `c_σ(μ, ν) = a(σ(μ)σ(ν), σ(μν))`.
    pub fn section_cocycle_value(&self, section: &Section, mu: &Morphism, nu: &Morphism) -> GroupElem {
        let g = self.base();
        let prod = self.compose_unchecked(&self.section_value(section, mu), &self.section_value(section, nu));
        let whole = self.section_value(section, &g.compose(mu, nu).expect("composable"));
        self.a_of_unchecked(&prod, &whole)
    }
}

/// A normalised section `σ` with `q ∘ σ = id` and `σ(v) = ι(v, 0)`.
#[derive(Clone)]
pub struct Section(Arc<SectionKind>);

pub enum SectionKind {
    /// `λ ↦ (λ, 0)` and its images under the extension operations.
    Canonical,
    /// Lift each edge and multiply along the preferred word.
    FromEdgeLifts(Vec<ExtElem>),
    /// `λ ↦ b(λ)·σ(λ)`.
    Perturbed(Section, Cat1Cochain),
}

impl fmt::Debug for Section {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &*self.0 {
            SectionKind::Canonical => write!(f, "Canonical"),
            SectionKind::FromEdgeLifts(l) => write!(f, "FromEdgeLifts({} edges)", l.len()),
            SectionKind::Perturbed(s, b) => write!(f, "Perturbed({s:?}, {b:?})"),
        }
    }
}

impl Section {
    pub fn canonical() -> Self {
        Section(Arc::new(SectionKind::Canonical))
    }

    /// One lift per edge, in edge order; each must lie over its edge.
    pub fn from_edge_lifts(ext: &Extension, lifts: Vec<ExtElem>) -> Result<Self> {
        let g = ext.base();
        if lifts.len() != g.edge_count() {
            return Err(Error::BadValue(format!("{} lifts", lifts.len()), format!("{} edges", g.edge_count())));
        }
        for (e, x) in g.edge_ids().zip(&lifts) {
            ext.check(x)?;
            if ext.q(x) != g.edge_morphism(e) {
                return Err(Error::FibreMismatch);
            }
        }
        Ok(Section(Arc::new(SectionKind::FromEdgeLifts(lifts))))
    }

    /// Edge lifts `e ↦ σ(e)` of the canonical section.
    pub fn canonical_edge_lifts(ext: &Extension) -> Self {
        let g = ext.base();
        let lifts = g.edge_ids().map(|e| ext.canonical_lift(&g.edge_morphism(e))).collect();
        Section(Arc::new(SectionKind::FromEdgeLifts(lifts)))
    }

    pub fn perturbed(&self, b: &Cat1Cochain) -> Self {
        Section(Arc::new(SectionKind::Perturbed(self.clone(), b.clone())))
    }

    pub fn kind(&self) -> &SectionKind {
        &self.0
    }
}

/// `c_σ` as a categorical 2-cocycle.
pub fn section_cocycle(ext: &Extension, section: &Section) -> Cat2Cocycle {
    let kind = CocycleKind::FromSection { ext: ext.clone(), section: section.clone() };
    Cat2Cocycle::build(ext.base().clone(), ext.group().clone(), kind)
}

/// The square function read off a section: `φ(λ)·σ(g')σ(f') = σ(f)σ(g)` for `λ = fg = g'f'`.
/// On `X_c` with edge lifts `(e, 0)` this is `c(f, g) − c(g', f')`.
pub fn section_phi(ext: &Extension, section: &Section) -> CubicalCochain {
    let g = ext.base().clone();
    CubicalCochain::from_fn(g.clone(), 2, ext.group().clone(), |sq| {
        let (f, gg) = (sq.word()[0], sq.word()[1]);
        let (g2, f2) = g.swap(f, gg);
        let s = |e| ext.section_value(section, &g.edge_morphism(e));
        let lhs = ext.compose_unchecked(&s(f), &s(gg));
        let rhs = ext.compose_unchecked(&s(g2), &s(f2));
        ext.a_of_unchecked(&lhs, &rhs)
    })
}
