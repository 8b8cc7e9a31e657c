//! Sampled checks of the extension axioms and of the witness isomorphisms behind
//! the group structure on extensions.

use super::{ext_neg, ext_sum, section_cocycle, section_phi, trivial, xc_build, ExtElem, Extension, Section};
use crate::bridge::{c_phi, cub_class_equal, restrict_to_squares, Cat2Cocycle};
use crate::cubical::is_cub_2cocycle;
use crate::error::{Error, Result};
use crate::sample::{self, SeededRng, SuiteCheck, SuiteReport};

const MAX_LEN: usize = 3;

fn random_elem(ext: &Extension, rng: &mut SeededRng, lambda: &crate::graph::Morphism) -> ExtElem {
    let a = ext.group().sample(rng);
    ext.act(&a, &ext.canonical_lift(lambda))
}

fn random_pair(ext: &Extension, rng: &mut SeededRng) -> (ExtElem, ExtElem) {
    let chain = sample::random_chain(ext.base(), rng, 2, MAX_LEN);
    (random_elem(ext, rng, &chain[0]), random_elem(ext, rng, &chain[1]))
}

fn run(name: String, samples: usize, mut test: impl FnMut() -> Option<String>) -> SuiteCheck {
    let witness = (0..samples).find_map(|_| test());
    SuiteCheck { name, checked: samples, witness }
}

/// Checks that `map` is a morphism of extensions `src -> dst` on sampled composable pairs:
/// multiplicative, over the identity of the base, and equivariant for the action.
fn homomorphism(
    name: String,
    src: &Extension,
    dst: &Extension,
    map: impl Fn(&ExtElem) -> Result<ExtElem>,
    rng: &mut SeededRng,
    samples: usize,
) -> SuiteCheck {
    run(name, samples, || {
        let (s, t) = random_pair(src, rng);
        let a = src.group().sample(rng);
        let st = src.compose(&s, &t).ok()?;
        let outcome = (|| -> Result<bool> {
            let (ms, mt) = (map(&s)?, map(&t)?);
            Ok(map(&st)? == dst.compose(&ms, &mt)? && dst.q(&ms) == src.q(&s) && map(&src.act(&a, &s))? == dst.act(&a, &ms))
        })();
        match outcome {
            Ok(true) => None,
            Ok(false) => Some(format!("{s} · {t}")),
            Err(e) => Some(format!("{s} · {t}: {e}")),
        }
    })
}

fn split(x: &ExtElem) -> Result<(&ExtElem, &ExtElem)> {
    match x {
        ExtElem::Class(a, b) => Ok((a, b)),
        _ => Err(Error::ForeignElement),
    }
}

fn unbar(x: &ExtElem) -> Result<&ExtElem> {
    match x {
        ExtElem::Bar(a) => Ok(a),
        _ => Err(Error::ForeignElement),
    }
}

fn axioms(x: &Extension, rng: &mut SeededRng, samples: usize, tag: &str) -> SuiteCheck {
    run(format!("extension axioms {tag}"), samples, || {
        let chain = sample::random_chain(x.base(), rng, 3, MAX_LEN);
        let (s, t, u) = (random_elem(x, rng, &chain[0]), random_elem(x, rng, &chain[1]), random_elem(x, rng, &chain[2]));
        let a = x.group().sample(rng);
        let lambda = x.q(&s);
        let other = random_elem(x, rng, &lambda);
        let v = lambda.range();
        let ok = x.q(&x.iota(v, &a)) == x.base().vertex_morphism(v)
            && x.a_of(&x.act(&a, &s), &s).ok()? == a
            && x.act(&x.a_of(&s, &other).ok()?, &other) == s
            && x.compose(&x.act(&a, &s), &t).ok()? == x.compose(&s, &x.act(&a, &t)).ok()?
            && x.compose(&x.compose(&s, &t).ok()?, &u).ok()? == x.compose(&s, &x.compose(&t, &u).ok()?).ok()?;
        (!ok).then(|| format!("{s}, {t}, {u}"))
    })
}

/// Runs the extension laws for the given cocycles, all over one graph and group.
///
/// Per cocycle: the axioms, `c_σ = c` for the canonical section, the unit and inverse
/// isomorphisms, and recovery of the square function from edge lifts. Per cyclic pair
/// and triple: commutativity, additivity of `a`, `X_{c1} + X_{c2} ≅ X_{c1+c2}` and
/// associativity.
pub fn ext_law_suite(cocycles: &[Cat2Cocycle], seed: u64, samples: usize) -> Result<SuiteReport> {
    let Some(first) = cocycles.first() else { return Ok(SuiteReport::default()) };
    let (graph, group) = (first.graph().clone(), first.group().clone());
    let mut rng = sample::rng(seed);
    let mut checks = Vec::new();
    let xs: Vec<Extension> = cocycles.iter().map(xc_build).collect();
    let zero = trivial(graph.clone(), group.clone());

    for (i, (c, x)) in cocycles.iter().zip(&xs).enumerate() {
        let tag = format!("X{i}");
        checks.push(axioms(x, &mut rng, samples, &tag));

        let sigma = section_cocycle(x, &Section::canonical());
        checks.push(run(format!("canonical section recovers c, {tag}"), samples, || {
            let chain = sample::random_chain(&graph, &mut rng, 2, MAX_LEN);
            (sigma.eval(&chain[0], &chain[1]) != c.eval(&chain[0], &chain[1]))
                .then(|| format!("{}, {}", graph.describe(&chain[0]), graph.describe(&chain[1])))
        }));

        let with_unit = ext_sum(x, &zero)?;
        checks.push(homomorphism(
            format!("unit law {tag} + 0 -> {tag}"),
            &with_unit,
            x,
            |s| {
                let (p, t) = split(s)?;
                let ExtElem::Pair(_, a) = t else { return Err(Error::ForeignElement) };
                Ok(x.act(a, p))
            },
            &mut rng,
            samples,
        ));
        checks.push(run(format!("unit law inverse {tag}"), samples, || {
            let chain = sample::random_chain(&graph, &mut rng, 1, MAX_LEN);
            let p = random_elem(x, &mut rng, &chain[0]);
            let s = with_unit.class(p.clone(), zero.canonical_lift(&chain[0])).ok()?;
            let (back, _) = split(&s).ok()?;
            (back != &p).then(|| p.to_string())
        }));

        let neg = ext_neg(x);
        let cancel = ext_sum(x, &neg)?;
        checks.push(homomorphism(
            format!("inverse law {tag} - {tag} -> 0"),
            &cancel,
            &zero,
            |s| {
                let (p, yb) = split(s)?;
                let y = unbar(yb)?;
                Ok(ExtElem::Pair(x.q(p), x.a_of(p, y)?))
            },
            &mut rng,
            samples,
        ));

        let lifted = section_phi(x, &Section::canonical_edge_lifts(x));
        let restricted = restrict_to_squares(c);
        let mut detail = None;
        if !is_cub_2cocycle(&lifted) {
            detail = Some("extracted square function is not a cocycle".to_string());
        } else if lifted != -&restricted {
            detail = Some("extracted square function differs from -φ_c".to_string());
        } else {
            let back = restrict_to_squares(&c_phi(&restricted)?);
            if !cub_class_equal(&back, &restricted)?.equal {
                detail = Some("[φ of c_φ] differs from [φ_c]".to_string());
            }
        }
        checks.push(SuiteCheck { name: format!("square function from edge lifts, {tag}"), checked: 1, witness: detail });
    }

    let n = xs.len();
    for i in 0..n {
        let (j, k) = ((i + 1) % n, (i + 2) % n);
        let (x, y, z) = (&xs[i], &xs[j], &xs[k]);
        let tag = format!("X{i}, X{j}");
        let xy = ext_sum(x, y)?;
        let yx = ext_sum(y, x)?;
        checks.push(homomorphism(
            format!("commutativity {tag}"),
            &xy,
            &yx,
            |s| {
                let (p, q) = split(s)?;
                yx.class(q.clone(), p.clone())
            },
            &mut rng,
            samples,
        ));

        checks.push(run(format!("additivity of a under sums, {tag}"), samples, || {
            let chain = sample::random_chain(&graph, &mut rng, 1, MAX_LEN);
            let l = &chain[0];
            let (p1, p2) = (random_elem(x, &mut rng, l), random_elem(x, &mut rng, l));
            let (q1, q2) = (random_elem(y, &mut rng, l), random_elem(y, &mut rng, l));
            let s1 = xy.class(p1.clone(), q1.clone()).ok()?;
            let s2 = xy.class(p2.clone(), q2.clone()).ok()?;
            let lhs = xy.a_of(&s1, &s2).ok()?;
            let rhs = x.a_of(&p1, &p2).ok()? + y.a_of(&q1, &q2).ok()?;
            (lhs != rhs).then(|| format!("{s1}, {s2}"))
        }));

        let summed = xc_build(&cocycles[i].sum(&cocycles[j])?);
        checks.push(homomorphism(
            format!("sum of extensions realises the sum of cocycles, {tag}"),
            &xy,
            &summed,
            |s| {
                let (p, _) = split(s)?;
                match p {
                    ExtElem::Pair(m, a) => Ok(ExtElem::Pair(m.clone(), a.clone())),
                    _ => Err(Error::ForeignElement),
                }
            },
            &mut rng,
            samples,
        ));

        let left = ext_sum(&xy, z)?;
        let yz = ext_sum(y, z)?;
        let right = ext_sum(x, &yz)?;
        checks.push(homomorphism(
            format!("associativity X{i}, X{j}, X{k}"),
            &left,
            &right,
            |s| {
                let (pq, r) = split(s)?;
                let (p, q) = split(pq)?;
                right.class(p.clone(), yz.class(q.clone(), r.clone())?)
            },
            &mut rng,
            samples,
        ));
    }
    Ok(SuiteReport { checks })
}
