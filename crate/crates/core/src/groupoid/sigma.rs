//! The groupoid 2-cocycle `σ_c` of a categorical 2-cocycle relative to a partition, and the
//! identities it satisfies.

use rand::Rng;

use super::partition::{Partition, RefinedPartition};
use super::paths::{ComposableTuple, Cylinder, GroupoidElem, PathSpace};
use crate::bridge::{same_graph, Cat2Cocycle, CocycleKind};
use crate::coeff::GroupElem;
use crate::cubical::EdgeFunctor;
use crate::degree::Degree;
use crate::error::{Error, Result};
use crate::graph::Morphism;
use crate::par;
use crate::sample::{self, SuiteCheck, SuiteReport};

/// Located members of `g`, `h`, `gh` and paths `α, β, γ` with
/// `μ_gα = μ_{gh}γ`, `ν_hβ = ν_{gh}γ` and `ν_gα = μ_hβ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Choice {
    pub g: Cylinder,
    pub h: Cylinder,
    pub gh: Cylinder,
    pub alpha: Morphism,
    pub beta: Morphism,
    pub gamma: Morphism,
}

fn require_pair(space: &PathSpace, pair: &ComposableTuple) -> Result<()> {
    if pair.len() != 2 {
        let g = space.graph();
        let names: Vec<String> = pair.paths().iter().map(|m| g.describe(m)).collect();
        return Err(Error::NotComposable { left: format!("{} paths", names.len()), right: names.join(", ") });
    }
    Ok(())
}

/// `α, β, γ` read off `r(g)` and `r(h)` at `N = d(μ_g) ∨ d(μ_{gh}) ∨ (d(μ_h) + d̃(g))`,
/// enlarged by `extra`.
pub fn choose_abc_with(partition: &dyn Partition, pair: &ComposableTuple, extra: &Degree) -> Result<Choice> {
    let space = partition.space();
    require_pair(space, pair)?;
    let (g, h, gh) = (pair.element(0, 1), pair.element(1, 2), pair.element(0, 2));
    let (cg, ch, cgh) = (partition.locate(&g), partition.locate(&h), partition.locate(&gh));
    let lag = g.lag();
    let n: Vec<i64> = (0..lag.len())
        .map(|i| {
            let at = |c: &Cylinder| c.mu.degree().get(i + 1) as i64;
            at(&cg).max(at(&cgh)).max(at(&ch) + lag[i])
        })
        .collect();
    let n = Degree::zero(lag.len()).offset(&n).expect("N dominates d(μ_g)").add(extra);
    let n_h = n.offset(&lag.iter().map(|x| -x).collect::<Vec<_>>()).expect("N − d̃(g) dominates d(μ_h)");
    let (rg, rh) = (space.range_path(&g), space.range_path(&h));
    Ok(Choice {
        alpha: space.tail_query(&rg, cg.mu.degree(), &n),
        beta: space.tail_query(&rh, ch.mu.degree(), &n_h),
        gamma: space.tail_query(&rg, cgh.mu.degree(), &n),
        g: cg,
        h: ch,
        gh: cgh,
    })
}

pub fn choose_abc(partition: &dyn Partition, pair: &ComposableTuple) -> Result<Choice> {
    let k = partition.space().graph().rank();
    choose_abc_with(partition, pair, &Degree::zero(k))
}

/// Checks the three path identities of a choice by composing.
pub fn verify_choice(partition: &dyn Partition, choice: &Choice) -> bool {
    let g = partition.space().graph();
    let c = |a: &Morphism, b: &Morphism| g.compose(a, b).ok();
    c(&choice.g.mu, &choice.alpha) == c(&choice.gh.mu, &choice.gamma)
        && c(&choice.h.nu, &choice.beta) == c(&choice.gh.nu, &choice.gamma)
        && c(&choice.g.nu, &choice.alpha) == c(&choice.h.mu, &choice.beta)
}

fn value_at(c: &Cat2Cocycle, choice: &Choice) -> GroupElem {
    let term = |cell: &Cylinder, x: &Morphism| c.eval(&cell.mu, x) - c.eval(&cell.nu, x);
    term(&choice.g, &choice.alpha) + term(&choice.h, &choice.beta) - term(&choice.gh, &choice.gamma)
}

fn require_graph(c: &Cat2Cocycle, partition: &dyn Partition) -> Result<()> {
    if !same_graph(c.graph(), partition.space().graph()) {
        return Err(Error::GraphMismatch);
    }
    Ok(())
}

/// `σ_c(g, h)` for the pair presented by `pair`.
pub fn sigma_eval(c: &Cat2Cocycle, partition: &dyn Partition, pair: &ComposableTuple) -> Result<GroupElem> {
    require_graph(c, partition)?;
    Ok(value_at(c, &choose_abc(partition, pair)?))
}

/// `σ_c(g, h)` computed from the choice enlarged by `extra`.
pub fn sigma_eval_with(c: &Cat2Cocycle, partition: &dyn Partition, pair: &ComposableTuple, extra: &Degree) -> Result<GroupElem> {
    require_graph(c, partition)?;
    Ok(value_at(c, &choose_abc_with(partition, pair, extra)?))
}

/// The groupoid 1-cocycle `f(p) − f(q)` induced by a functor.
pub fn functor_1cocycle(f: &EdgeFunctor, g: &GroupoidElem) -> GroupElem {
    f.eval(g.p()) - f.eval(g.q())
}

/// Seeded composable tuples for the suites.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TupleSpec {
    pub seed: u64,
    pub count: usize,
    pub max_len: usize,
}

pub fn sample_tuples(space: &PathSpace, arrows: usize, spec: &TupleSpec) -> Vec<ComposableTuple> {
    let mut rng = sample::rng(spec.seed);
    (0..spec.count).map(|_| space.random_tuple(&mut rng, arrows, spec.max_len)).collect()
}

/// A random degree with entries in `0..=bound`.
fn random_degree<R: Rng + ?Sized>(rng: &mut R, k: usize, bound: u32) -> Degree {
    Degree::from_vec((0..k).map(|_| rng.gen_range(0..=bound)).collect())
}

fn run<T: Sync>(name: &str, items: &[T], test: impl Fn(&T) -> Option<String> + Sync + Send) -> SuiteCheck {
    SuiteCheck { name: name.to_string(), checked: items.len(), witness: par::find_first(items, test) }
}

fn show(space: &PathSpace, x: &ComposableTuple) -> String {
    let g = space.graph();
    let paths: Vec<String> = x.paths().iter().map(|m| g.describe(m)).collect();
    format!("paths [{}] over {}", paths.join(", "), g.describe(x.tail().prefix()))
}

fn mismatch(space: &PathSpace, x: &ComposableTuple, left: &GroupElem, right: &GroupElem) -> Option<String> {
    (left != right).then(|| format!("{}: {left} vs {right}", show(space, x)))
}

/// `a(g) = b(μ_g) − b(ν_g)` when `c = δb`.
fn coboundary_potential(c: &Cat2Cocycle) -> Option<&crate::bridge::Cat1Cochain> {
    match c.kind() {
        CocycleKind::Coboundary(b) => Some(b),
        _ => None,
    }
}

/// Checks on seeded composable triples: the chosen paths satisfy their identities, units give
/// zero, the value is independent of the choice and of the presentation, the groupoid cocycle
/// identity, and for `c = δb` the coboundary identity with `a(g) = b(μ_g) − b(ν_g)`.
pub fn sigma_identity_suite(c: &Cat2Cocycle, partition: &dyn Partition, spec: &TupleSpec) -> Result<SuiteReport> {
    require_graph(c, partition)?;
    let space = partition.space();
    let k = space.graph().rank();
    let triples = sample_tuples(space, 3, spec);
    let mut rng = sample::rng(spec.seed ^ 0x5eed);
    let extras: Vec<(ComposableTuple, Degree, Degree)> =
        triples.iter().map(|t| (t.clone(), random_degree(&mut rng, k, 2), random_degree(&mut rng, k, 2))).collect();
    let sigma = |x: &ComposableTuple| value_at(c, &choose_abc(partition, x).expect("pairs have three paths"));
    let mut checks = Vec::new();

    checks.push(run("chosen paths satisfy the composition identities", &triples, |t| {
        [[0, 1, 2], [0, 2, 3], [1, 2, 3], [0, 1, 3]].iter().find_map(|idx| {
            let pair = t.select(idx);
            let choice = choose_abc(partition, &pair).expect("pair");
            (!verify_choice(partition, &choice)).then(|| show(space, &pair))
        })
    }));

    checks.push(run("units give zero", &triples, |t| {
        let v = t.paths()[1].clone();
        [vec![v.clone(), v.clone(), t.paths()[2].clone()], vec![t.paths()[0].clone(), v.clone(), v]].into_iter().find_map(
            |paths| {
                let pair = space.tuple(paths, t.tail().clone()).expect("shared source");
                let s = sigma(&pair);
                (!s.is_zero()).then(|| format!("{}: {s}", show(space, &pair)))
            },
        )
    }));

    checks.push(run("independent of the choice of paths", &extras, |(t, extra, _)| {
        let pair = t.select(&[0, 1, 2]);
        let other = value_at(c, &choose_abc_with(partition, &pair, extra).expect("pair"));
        mismatch(space, &pair, &sigma(&pair), &other)
    }));

    checks.push(run("independent of the presentation", &extras, |(t, _, shift)| {
        let pair = t.select(&[0, 1, 2]);
        let moved = space.extend_tuple(&pair, shift);
        for (i, j) in [(0, 1), (1, 2), (0, 2)] {
            if partition.locate(&pair.element(i, j)) != partition.locate(&moved.element(i, j)) {
                return Some(format!("{}: located differently after shifting by {shift}", show(space, &pair)));
            }
        }
        mismatch(space, &pair, &sigma(&pair), &sigma(&moved))
    }));

    checks.push(run("groupoid cocycle identity", &triples, |t| {
        let left = sigma(&t.select(&[0, 1, 2])) + sigma(&t.select(&[0, 2, 3]));
        let right = sigma(&t.select(&[1, 2, 3])) + sigma(&t.select(&[0, 1, 3]));
        mismatch(space, t, &left, &right)
    }));

    if let Some(b) = coboundary_potential(c) {
        let a = |g: &GroupoidElem| {
            let cell = partition.locate(g);
            b.eval(&cell.mu) - b.eval(&cell.nu)
        };
        checks.push(run("coboundary identity", &triples, |t| {
            let pair = t.select(&[0, 1, 2]);
            let expected = a(&pair.element(0, 1)) + a(&pair.element(1, 2)) - a(&pair.element(0, 2));
            mismatch(space, &pair, &sigma(&pair), &expected)
        }));
    }
    Ok(SuiteReport { checks })
}

/// Compares `σ^P_c` with `σ^Q_c` for the refinement `Q` of `P` by one colour-1 edge:
/// their difference is `b(g) + b(h) − b(gh)` with `b(g) = c(μ_g, λ_g) − c(ν_g, λ_g)`.
pub fn refine_compare(c: &Cat2Cocycle, partition: &dyn Partition, spec: &TupleSpec) -> Result<SuiteReport> {
    require_graph(c, partition)?;
    let space = partition.space();
    let refined = RefinedPartition::new(partition);
    let pairs = sample_tuples(space, 2, spec);
    let b = |g: &GroupoidElem| {
        let (cell, tau) = refined.refine(g);
        c.eval(&cell.mu, &tau) - c.eval(&cell.nu, &tau)
    };
    let mut checks = vec![run("refinement changes σ by a coboundary", &pairs, |pair| {
        let p = value_at(c, &choose_abc(partition, pair).expect("pair"));
        let q = value_at(c, &choose_abc(&refined, pair).expect("pair"));
        let db = b(&pair.element(0, 1)) + b(&pair.element(1, 2)) - b(&pair.element(0, 2));
        mismatch(space, pair, &(p - q), &db)
    })];
    checks.push(run("refinement potential vanishes on units", &pairs, |pair| {
        let u = space.unit(space.prepend(&pair.paths()[0], pair.tail()).expect("shared source"));
        let v = b(&u);
        (!v.is_zero()).then(|| format!("{}: {v}", show(space, pair)))
    }));
    Ok(SuiteReport { checks })
}
