use std::sync::Arc;

use kgraph::bridge::{c_phi, cat2_eval_and_check, restrict_to_squares, Cat1Cochain, Cat2Cocycle};
use kgraph::catalog;
use kgraph::cubical::{random_2cocycle, CubicalCochain};
use kgraph::extension::*;
use kgraph::sample::{self, SampleSpec};
use kgraph::{CoeffGroup, Error, KGraph, Morphism};
use proptest::prelude::*;

fn t2_theta(group: &CoeffGroup, value: kgraph::GroupElem) -> (Arc<KGraph>, Cat2Cocycle) {
    let t2 = catalog::t2();
    let phi = CubicalCochain::from_fn(t2.clone(), 2, group.clone(), move |_| value.clone());
    (t2, c_phi(&phi).unwrap())
}

fn edge(g: &KGraph, name: &str) -> Morphism {
    g.edge_morphism(g.edge(name).unwrap())
}

#[test]
fn twisted_composition_on_t2() {
    let q = CoeffGroup::RationalsMod1;
    let (t2, c) = t2_theta(&q, q.fraction(1, 4));
    let x = xc_build(&c);
    let (e, f) = (edge(&t2, "e"), edge(&t2, "f"));
    let fe = x.compose(&ExtElem::Pair(f.clone(), q.zero()), &ExtElem::Pair(e.clone(), q.zero())).unwrap();
    assert_eq!(fe, ExtElem::Pair(t2.compose(&f, &e).unwrap(), q.fraction(1, 4)));

    let s = t2.vertex_morphism(f.source());
    let out = x.compose(&ExtElem::Pair(f.clone(), q.fraction(1, 3)), &ExtElem::Pair(s, q.fraction(1, 6))).unwrap();
    assert_eq!(out, ExtElem::Pair(f.clone(), q.fraction(1, 2)));

    let a = x.a_of(&ExtElem::Pair(f.clone(), q.fraction(1, 3)), &ExtElem::Pair(f.clone(), q.fraction(1, 2))).unwrap();
    assert_eq!(a, q.fraction(-1, 6));
    assert!(matches!(
        x.a_of(&ExtElem::Pair(f.clone(), q.zero()), &ExtElem::Pair(e.clone(), q.zero())),
        Err(Error::FibreMismatch)
    ));
    assert!(matches!(
        x.compose(&ExtElem::Bar(Box::new(ExtElem::Pair(f, q.zero()))), &ExtElem::Pair(e, q.zero())),
        Err(Error::ForeignElement)
    ));
}

#[test]
fn sum_representatives_reproduce_the_sum_cocycle() {
    let z5 = CoeffGroup::IntegersMod(5);
    let (t2, c1) = t2_theta(&z5, z5.from_int(2));
    let c2 = Cat2Cocycle::coboundary(&Cat1Cochain::hashed(t2.clone(), z5.clone(), 9));
    let sum = ext_sum(&xc_build(&c1), &xc_build(&c2)).unwrap();
    let mut rng = sample::rng(4);
    for _ in 0..50 {
        let chain = sample::random_chain(&t2, &mut rng, 2, 3);
        let (l, m) = (&chain[0], &chain[1]);
        let (a, b) = (z5.sample(&mut rng), z5.sample(&mut rng));
        let x = sum.class(ExtElem::Pair(l.clone(), a.clone()), ExtElem::Pair(l.clone(), z5.zero())).unwrap();
        let y = sum.class(ExtElem::Pair(m.clone(), b.clone()), ExtElem::Pair(m.clone(), z5.zero())).unwrap();
        let lm = t2.compose(l, m).unwrap();
        let expected = c1.eval(l, m) + c2.eval(l, m) + a + b;
        let want = sum.class(ExtElem::Pair(lm.clone(), expected), ExtElem::Pair(lm, z5.zero())).unwrap();
        assert_eq!(sum.compose(&x, &y).unwrap(), want);
    }
    let other = xc_build(&Cat2Cocycle::zero(catalog::b2(), z5.clone()));
    assert!(matches!(ext_sum(&sum, &other), Err(Error::BaseMismatch)));
}

#[test]
fn negation_flips_the_action() {
    let z7 = CoeffGroup::IntegersMod(7);
    let (t2, c) = t2_theta(&z7, z7.from_int(3));
    let x = xc_build(&c);
    let neg = ext_neg(&x);
    let f = edge(&t2, "f");
    let p = ExtElem::Pair(f.clone(), z7.from_int(1));
    let bar = neg.bar(p.clone()).unwrap();
    assert_eq!(neg.q(&bar), x.q(&p));
    let a = z7.from_int(2);
    assert_eq!(neg.act(&a, &bar), ExtElem::Bar(Box::new(x.act(&-&a, &p))));
    assert_eq!(neg.iota(f.range(), &a), ExtElem::Bar(Box::new(x.iota(f.range(), &-&a))));
}

#[test]
fn section_cocycles() {
    let q = CoeffGroup::RationalsMod1;
    let (t2, c) = t2_theta(&q, q.fraction(1, 4));
    let x = xc_build(&c);
    let canonical = section_cocycle(&x, &Section::canonical());
    let lifted = section_cocycle(&x, &Section::canonical_edge_lifts(&x));
    let b = Cat1Cochain::hashed(t2.clone(), q.clone(), 3);
    let sigma2 = Section::canonical().perturbed(&b);
    let perturbed = section_cocycle(&x, &sigma2);
    let db = Cat2Cocycle::coboundary(&b);
    for pair in sample::all_chains(&t2, 2, 3) {
        let (m, n) = (&pair[0], &pair[1]);
        assert_eq!(canonical.eval(m, n), c.eval(m, n));
        assert_eq!(lifted.eval(m, n), c.eval(m, n));
        assert_eq!(perturbed.eval(m, n) - canonical.eval(m, n), db.eval(m, n));
        let between = x.a_of(&x.section_value(&Section::canonical(), m), &x.section_value(&sigma2, m)).unwrap();
        assert_eq!(between, -b.eval(m));
    }
    assert!(cat2_eval_and_check(&perturbed, &SampleSpec::Exhaustive { max_len: 2 }).passed());
    // the square function read from edge lifts carries the opposite sign to φ_c
    assert_eq!(section_phi(&x, &Section::canonical_edge_lifts(&x)), -&restrict_to_squares(&c));
}

#[test]
fn edge_lift_sections_are_validated() {
    let z3 = CoeffGroup::IntegersMod(3);
    let (t2, c) = t2_theta(&z3, z3.from_int(1));
    let x = xc_build(&c);
    let e = edge(&t2, "e");
    assert!(Section::from_edge_lifts(&x, vec![ExtElem::Pair(e.clone(), z3.zero())]).is_err());
    let wrong = vec![ExtElem::Pair(e.clone(), z3.zero()), ExtElem::Pair(e.clone(), z3.zero())];
    assert!(matches!(Section::from_edge_lifts(&x, wrong), Err(Error::FibreMismatch)));
    let shifted = vec![ExtElem::Pair(e, z3.from_int(1)), ExtElem::Pair(edge(&t2, "f"), z3.from_int(2))];
    let s = Section::from_edge_lifts(&x, shifted).unwrap();
    assert!(cat2_eval_and_check(&section_cocycle(&x, &s), &SampleSpec::Exhaustive { max_len: 2 }).passed());
}

#[test]
fn law_suite_on_t2() {
    let z4 = CoeffGroup::IntegersMod(4);
    let (t2, c) = t2_theta(&z4, z4.from_int(1));
    let b = Cat2Cocycle::coboundary(&Cat1Cochain::hashed(t2.clone(), z4.clone(), 1));
    let report = ext_law_suite(&[c, b, Cat2Cocycle::zero(t2, z4)], 5, 100).unwrap();
    for check in &report.checks {
        assert!(check.passed(), "{}: {:?}", check.name, check.witness);
    }
    assert!(report.checks.len() >= 15);
}

#[test]
fn law_suite_detects_a_non_cocycle() {
    let z4 = CoeffGroup::IntegersMod(4);
    let t2 = catalog::t2();
    let f = edge(&t2, "f");
    let g = t2.clone();
    let bad = Cat2Cocycle::custom(t2.clone(), z4.clone(), "broken", move |m, n| {
        let whole = g.compose(m, n).unwrap();
        z4.from_int((m == &f && whole.len() == 2) as i64)
    });
    let report = ext_law_suite(&[bad], 2, 200).unwrap();
    assert!(!report.passed());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn extension_axioms_hold(gi in 0usize..9, seed in any::<u64>()) {
        let all = catalog::all();
        let g = all[gi].1.clone();
        let grp = CoeffGroup::IntegersMod(6);
        let mut rng = sample::rng(seed);
        let c = c_phi(&random_2cocycle(g.clone(), &grp, &mut rng)).unwrap();
        let x = xc_build(&c);
        let y = xc_build(&Cat2Cocycle::coboundary(&Cat1Cochain::hashed(g.clone(), grp.clone(), seed)));
        for ext in [x.clone(), ext_sum(&x, &y).unwrap(), ext_neg(&x), ext_sum(&ext_neg(&y), &x).unwrap()] {
            let chain = sample::random_chain(&g, &mut rng, 3, 3);
            let elems: Vec<ExtElem> = chain.iter().map(|l| ext.act(&grp.sample(&mut rng), &ext.canonical_lift(l))).collect();
            let (w, s, z) = (&elems[0], &elems[1], &elems[2]);
            let a = grp.sample(&mut rng);
            let s2 = ext.act(&grp.sample(&mut rng), s);
            let sa = ext.a_of(s, &s2).unwrap();
            prop_assert_eq!(&ext.act(&sa, &s2), s);
            prop_assert_eq!(ext.a_of(&ext.act(&a, s), s).unwrap(), a.clone());
            // cancellation: a(x, y) = a(wxz, wyz)
            let wsz = ext.compose(&ext.compose(w, s).unwrap(), z).unwrap();
            let ws2z = ext.compose(&ext.compose(w, &s2).unwrap(), z).unwrap();
            prop_assert_eq!(ext.a_of(&wsz, &ws2z).unwrap(), sa.clone());
            // associativity of composition
            let left = ext.compose(&ext.compose(w, s).unwrap(), z).unwrap();
            let right = ext.compose(w, &ext.compose(s, z).unwrap()).unwrap();
            prop_assert_eq!(left, right);
            // telescoping along a fibre
            let fibre: Vec<ExtElem> = (0..4).map(|_| ext.act(&grp.sample(&mut rng), s)).collect();
            let total = (0..3).fold(grp.zero(), |acc, i| acc + ext.a_of(&fibre[i], &fibre[i + 1]).unwrap());
            prop_assert_eq!(total, ext.a_of(&fibre[0], &fibre[3]).unwrap());
        }
    }

    #[test]
    fn sections_give_cohomologous_cocycles(seed in any::<u64>()) {
        let g = catalog::twisted_square();
        let grp = CoeffGroup::RationalsMod1;
        let mut rng = sample::rng(seed);
        let x = xc_build(&c_phi(&random_2cocycle(g.clone(), &grp, &mut rng)).unwrap());
        let lifts: Vec<ExtElem> = g.edge_ids().map(|e| x.act(&grp.sample(&mut rng), &x.canonical_lift(&g.edge_morphism(e)))).collect();
        let s1 = Section::from_edge_lifts(&x, lifts).unwrap();
        let s2 = Section::canonical().perturbed(&Cat1Cochain::hashed(g.clone(), grp.clone(), seed));
        let (c1, c2) = (section_cocycle(&x, &s1), section_cocycle(&x, &s2));
        let spec = SampleSpec::Random { seed, count: 40, max_len: 3 };
        prop_assert!(cat2_eval_and_check(&c1, &spec).passed());
        for pair in sample::chains(&g, 2, &spec) {
            let (m, n) = (&pair[0], &pair[1]);
            let mn = g.compose(m, n).unwrap();
            let b = |l: &Morphism| x.a_of(&x.section_value(&s1, l), &x.section_value(&s2, l)).unwrap();
            // σ1 = b·σ2 pointwise, so c_{σ1} − c_{σ2} = δb
            prop_assert_eq!(c1.eval(m, n) - c2.eval(m, n), b(m) - b(&mn) + b(n));
        }
    }
}
