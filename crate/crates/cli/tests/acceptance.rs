//! Acceptance suite: one line per criterion, `PASS` or `FAIL`, then a nonzero exit on any failure.
//! Every comparison is exact; the tolerance column records that.

mod common;

use std::sync::Arc;
use std::time::Instant;

use kgraph::bridge::{
    c_phi, cat2_check_default, cub_class_equal, preferred_word, restrict_to_squares, shuffle, shuffle_with, Cat1Cochain,
    Cat2Cocycle, ColouredWord, Strategy,
};
use kgraph::catalog;
use kgraph::cubical::{boundary_matrix, cub_coboundary, cubes, homology, is_cub_2cocycle, random_2cocycle, CubicalCochain};
use kgraph::extension::ext_law_suite;
use kgraph::groupoid::{refine_compare, sigma_identity_suite, CanonicalPartition, PathSpace, TupleSpec};
use kgraph::matrix::{FinAbGroup, IntMatrix};
use kgraph::sample::{self, SampleSpec};
use kgraph::{CoeffGroup, KGraph};

/// Exact equality everywhere: group elements are integers, residues or reduced fractions.
const TOLERANCE: &str = "exact";
const PRIME: i64 = 1_000_003;

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn rank_mod_p(m: &IntMatrix) -> usize {
    let mut a = reduce_mod_p(m);
    let cols = m.cols();
    let inv = |x: i64| {
        let (mut r, mut b, mut e) = (1i64, x, PRIME - 2);
        while e > 0 {
            if e & 1 == 1 {
                r = r * b % PRIME;
            }
            b = b * b % PRIME;
            e >>= 1;
        }
        r
    };
    let mut rank = 0;
    for col in 0..cols {
        let Some(piv) = (rank..a.len()).find(|&i| a[i][col] != 0) else { continue };
        a.swap(rank, piv);
        let s = inv(a[rank][col]);
        for i in 0..a.len() {
            if i != rank && a[i][col] != 0 {
                let f = a[i][col] * s % PRIME;
                for j in 0..cols {
                    a[i][j] = (a[i][j] - f * a[rank][j]).rem_euclid(PRIME);
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Boundary entries are 0 or ±1, so they fit in an `i64`.
fn reduce_mod_p(m: &IntMatrix) -> Vec<Vec<i64>> {
    (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| m.get(i, j).to_string().parse::<i64>().unwrap().rem_euclid(PRIME)).collect())
        .collect()
}

fn betti(g: &KGraph, r: usize) -> usize {
    let below = if r == 0 { 0 } else { rank_mod_p(&boundary_matrix(g, r)) };
    cubes(g, r).len() - below - rank_mod_p(&boundary_matrix(g, r + 1))
}

fn chain_complex() -> Outcome {
    let mut products = 0;
    for (name, g) in catalog::all() {
        for r in 1..g.rank() {
            ensure(boundary_matrix(&g, r).mul(&boundary_matrix(&g, r + 1)).is_zero(), || format!("{name}: ∂{r}∂{} ≠ 0", r + 1))?;
            products += 1;
        }
    }
    Ok(format!("{products} products ∂_r∂_(r+1) vanish on {} graphs", catalog::all().len()))
}

fn homology_anchors() -> Outcome {
    let b2 = catalog::b2();
    ensure(homology(&b2, 0) == FinAbGroup::free(1) && homology(&b2, 1) == FinAbGroup::free(2), || "H_*(B2) ≠ (Z, Z²)".into())?;
    let t2 = catalog::t2();
    let got: Vec<FinAbGroup> = (0..=2).map(|r| homology(&t2, r)).collect();
    ensure(got == vec![FinAbGroup::free(1), FinAbGroup::free(2), FinAbGroup::free(1)], || format!("H_*(T2) = {got:?}"))?;
    for (name, g) in [("b2", b2), ("t2", t2)] {
        for r in 0..=g.rank() {
            ensure(homology(&g, r).free_rank == betti(&g, r), || format!("{name}: rank of H_{r} disagrees with the F_p oracle"))?;
        }
    }
    Ok("H(B2) = (Z, Z^2), H(T2) = (Z, Z^2, Z), ranks agree with row reduction mod 1000003".into())
}

fn shuffle_confluence() -> Outcome {
    let group = CoeffGroup::IntegersMod(5);
    let mut total = 0;
    for (gi, (name, g)) in catalog::all().into_iter().enumerate() {
        let mut rng = sample::rng(300 + gi as u64);
        let phi = random_2cocycle(g.clone(), &group, &mut rng);
        for i in 0..1000 {
            let (_, edges) = sample::random_word(&g, &mut rng, None, i % 9);
            let w = ColouredWord::new(&g, edges).map_err(|e| e.to_string())?;
            let left = shuffle_with(&g, &phi, &w, Strategy::Leftmost);
            let right = shuffle_with(&g, &phi, &w, Strategy::Rightmost);
            ensure(left.word == right.word && left.value == right.value, || format!("{name}: strategies disagree on word {i}"))?;
            let (sorted, value) = shuffle(&g, &phi, &w).map_err(|e| e.to_string())?;
            ensure(sorted == left.word && value == left.value, || format!("{name}: insertion sort disagrees on word {i}"))?;
            total += 1;
        }
    }
    Ok(format!("{total} words, leftmost/rightmost/insertion agree on (word, S_φ)"))
}

fn theta(g: &Arc<KGraph>) -> CubicalCochain {
    let q = CoeffGroup::RationalsMod1;
    CubicalCochain::new(g.clone(), 2, q.clone(), vec![q.fraction(1, 4)]).unwrap()
}

fn c_phi_is_a_cocycle() -> Outcome {
    let t2 = catalog::t2();
    let cube3 = catalog::cube3();
    let mut rng = sample::rng(41);
    let cases = [
        ("t2 θ=1/4", theta(&t2)),
        ("t2 random Z/6", random_2cocycle(t2.clone(), &CoeffGroup::IntegersMod(6), &mut rng)),
        ("cube3 random Z/4", random_2cocycle(cube3.clone(), &CoeffGroup::IntegersMod(4), &mut rng)),
        ("cube3 random Z", random_2cocycle(cube3.clone(), &CoeffGroup::Integers, &mut rng)),
    ];
    let mut checked = 0;
    for (i, (name, phi)) in cases.iter().enumerate() {
        let c = c_phi(phi).map_err(|e| e.to_string())?;
        let check = cat2_check_default(&c, 4000 + i as u64);
        ensure(check.passed(), || format!("{name}: identity fails on {:?}", check.witness))?;
        checked += check.checked;
    }
    Ok(format!("{checked} triples (all with |λ_i| ≤ 2, plus 500 seeded with |λ_i| ≤ 4 per cocycle)"))
}

fn edge_pair_values() -> Outcome {
    let mut pairs = 0;
    let mut concatenations = 0;
    for (gi, (name, g)) in catalog::all().into_iter().enumerate() {
        let mut rng = sample::rng(500 + gi as u64);
        let phi = random_2cocycle(g.clone(), &CoeffGroup::IntegersMod(7), &mut rng);
        let c = c_phi(&phi).map_err(|e| e.to_string())?;
        for a in g.edge_ids() {
            for b in g.edge_ids().filter(|&b| g.range(b) == g.source(a)) {
                let (ma, mb) = (g.edge_morphism(a), g.edge_morphism(b));
                let expected =
                    if g.colour(a) > g.colour(b) { phi.at(&g.compose(&ma, &mb).unwrap()).clone() } else { phi.group().zero() };
                ensure(c.eval(&ma, &mb) == expected, || format!("{name}: c_φ({}, {})", g.edge_name(a), g.edge_name(b)))?;
                pairs += 1;
            }
        }
        for pair in sample::chains(&g, 2, &SampleSpec::Exhaustive { max_len: 2 }) {
            let joined = preferred_word(&pair[0]).concat(&g, &preferred_word(&pair[1])).map_err(|e| e.to_string())?;
            if joined.is_preferred(&g) {
                ensure(c.eval(&pair[0], &pair[1]).is_zero(), || format!("{name}: c_φ nonzero on a preferred concatenation"))?;
                concatenations += 1;
            }
        }
    }
    Ok(format!("{pairs} edge pairs, {concatenations} preferred concatenations with |λ_i| ≤ 2"))
}

fn round_trips() -> Outcome {
    let t2 = catalog::t2();
    let z4 = CoeffGroup::IntegersMod(4);
    let mut counts = Vec::new();
    for g in [t2.clone(), catalog::cube3()] {
        let n = cubes(&g, 2).len();
        let mut cocycles = 0;
        for code in 0..4usize.pow(n as u32) {
            let values = (0..n).map(|i| z4.from_int(((code / 4usize.pow(i as u32)) % 4) as i64)).collect();
            let phi = CubicalCochain::new(g.clone(), 2, z4.clone(), values).unwrap();
            if !is_cub_2cocycle(&phi) {
                continue;
            }
            let back = restrict_to_squares(&c_phi(&phi).map_err(|e| e.to_string())?);
            ensure(back == phi, || format!("φ_(c_φ) ≠ φ for table {code}"))?;
            cocycles += 1;
        }
        counts.push(format!("{cocycles} of 4^{n}"));
    }
    let mut rng = sample::rng(61);
    let pairs = sample::chains(&t2, 2, &SampleSpec::Random { seed: 62, count: 200, max_len: 4 });
    for pair in &pairs {
        let phi1 = random_2cocycle(t2.clone(), &z4, &mut rng);
        let phi2 = random_2cocycle(t2.clone(), &z4, &mut rng);
        let sum = c_phi(&(&phi1 + &phi2)).unwrap();
        let (c1, c2) = (c_phi(&phi1).unwrap(), c_phi(&phi2).unwrap());
        ensure(sum.eval(&pair[0], &pair[1]) == c1.eval(&pair[0], &pair[1]) + c2.eval(&pair[0], &pair[1]), || {
            "c_(φ1+φ2) ≠ c_φ1 + c_φ2".into()
        })?;
    }
    Ok(format!("Z²(-, Z/4) exhaustive: T2 {}, CUBE3 {}; additivity on {} pairs", counts[0], counts[1], pairs.len()))
}

fn coboundary_preservation() -> Outcome {
    let t2 = catalog::t2();
    let z4 = CoeffGroup::IntegersMod(4);
    let mut rng = sample::rng(71);
    let pairs = sample::chains(&t2, 2, &SampleSpec::Random { seed: 72, count: 200, max_len: 4 });
    for i in 0..50 {
        let f = CubicalCochain::random(t2.clone(), 1, z4.clone(), &mut rng);
        let c = c_phi(&cub_coboundary(&f)).map_err(|e| e.to_string())?;
        // g(λ) = −b(λ̄), with b the sum of f along a word
        let g = Cat1Cochain::preferred_sum(&f).negate();
        let dg = Cat2Cocycle::coboundary(&g);
        for pair in &pairs {
            ensure(c.eval(&pair[0], &pair[1]) == dg.eval(&pair[0], &pair[1]), || format!("f #{i}: c_(δf) ≠ δg"))?;
        }
    }
    Ok(format!("50 cochains f, {} pairs each", pairs.len()))
}

fn extension_laws() -> Outcome {
    let t2 = catalog::t2();
    let q = CoeffGroup::RationalsMod1;
    let mut rng = sample::rng(81);
    let theta = c_phi(&theta(&t2)).unwrap();
    let other = c_phi(&CubicalCochain::new(t2.clone(), 2, q.clone(), vec![q.fraction(2, 3)]).unwrap()).unwrap();
    let b = Cat1Cochain::hashed(t2.clone(), q.clone(), 82);
    let cobound = Cat2Cocycle::coboundary(&b);
    let z4 = CoeffGroup::IntegersMod(4);
    let report = ext_law_suite(&[theta, other, cobound], 83, 100).map_err(|e| e.to_string())?;
    let cube3 = catalog::cube3();
    let z4_suite = ext_law_suite(
        &[c_phi(&random_2cocycle(cube3.clone(), &z4, &mut rng)).unwrap(), c_phi(&random_2cocycle(cube3, &z4, &mut rng)).unwrap()],
        84,
        100,
    )
    .map_err(|e| e.to_string())?;
    let mut checks = 0;
    for suite in [&report, &z4_suite] {
        for c in &suite.checks {
            ensure(c.passed(), || format!("{}: {}", c.name, c.witness.clone().unwrap_or_default()))?;
            checks += 1;
        }
    }
    for needle in ["canonical section recovers c", "unit law", "inverse law", "commutativity", "additivity of a"] {
        ensure(report.checks.iter().any(|c| c.name.starts_with(needle) && c.checked == 100), || {
            format!("no `{needle}` check over 100 samples")
        })?;
    }
    Ok(format!("{checks} law checks over T2 (Q/Z) and CUBE3 (Z/4), 100 seeded pairs each"))
}

fn sigma_suite() -> Outcome {
    let t2 = catalog::t2();
    let q = CoeffGroup::RationalsMod1;
    let partition = CanonicalPartition::new(PathSpace::new(t2.clone()).map_err(|e| e.to_string())?);
    let cocycles = [
        c_phi(&theta(&t2)).unwrap(),
        Cat2Cocycle::coboundary(&Cat1Cochain::hashed(t2.clone(), q.clone(), 91)),
        Cat2Cocycle::coboundary(&Cat1Cochain::preferred_sum(&CubicalCochain::random(t2.clone(), 1, q, &mut sample::rng(92)))),
    ];
    let triples = TupleSpec { seed: 93, count: 500, max_len: 2 };
    let pairs = TupleSpec { seed: 94, count: 200, max_len: 2 };
    let mut coboundary_checks = 0;
    let mut checks = 0;
    for c in &cocycles {
        let suite = sigma_identity_suite(c, &partition, &triples).map_err(|e| e.to_string())?;
        let refine = refine_compare(c, &partition, &pairs).map_err(|e| e.to_string())?;
        for check in suite.checks.iter().chain(&refine.checks) {
            ensure(check.passed(), || {
                format!("{} ({}): {}", check.name, c.kind_name(), check.witness.clone().unwrap_or_default())
            })?;
            coboundary_checks += usize::from(check.name == "coboundary identity");
            checks += 1;
        }
    }
    ensure(coboundary_checks == 2, || format!("coboundary identity ran {coboundary_checks} times, expected 2"))?;
    Ok(format!("{checks} checks for θ and two coboundaries: 500 triples, refinement on 200 pairs"))
}

fn nontriviality() -> Outcome {
    let t2 = catalog::t2();
    let z2 = CoeffGroup::IntegersMod(2);
    let zero = CubicalCochain::zero(t2.clone(), 2, z2.clone());
    let sq1 = CubicalCochain::new(t2, 2, z2.clone(), vec![z2.from_int(1)]).unwrap();
    let verdict = cub_class_equal(&zero, &sq1).map_err(|e| e.to_string())?;
    ensure(!verdict.equal && verdict.certificate.is_none(), || "0 and φ_(sq=1) reported cohomologous over Z/2".into())?;
    let (_, code) = common::run_case(&[
        "class-equal",
        "--graph",
        "catalog/t2.kg",
        "--phi",
        "catalog/t2-zero.cc",
        "--phi",
        "catalog/t2-sq1.cc",
    ]);
    ensure(code == 1, || format!("class-equal exited with {code}, expected 1"))?;
    Ok("class-equal(0, φ_(sq=1)) = false over Z/2 on T2, CLI exits 1".into())
}

fn golden_reports() -> Outcome {
    let bad = common::golden_mismatches(false);
    ensure(bad.is_empty(), || format!("reports differ: {bad:?}"))?;
    Ok(format!("{} committed reports reproduced byte-for-byte", common::GOLDEN_CASES.len()))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 11] = [
        ("chain complex ∂∂ = 0", chain_complex),
        ("homology anchors", homology_anchors),
        ("shuffle confluence", shuffle_confluence),
        ("c_φ is a 2-cocycle", c_phi_is_a_cocycle),
        ("edge pairs and preferred concatenations", edge_pair_values),
        ("round trips", round_trips),
        ("coboundary preservation", coboundary_preservation),
        ("extension laws", extension_laws),
        ("σ_c suite", sigma_suite),
        ("nontriviality over Z/2", nontriviality),
        ("CLI golden reports", golden_reports),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let ms = start.elapsed().as_millis();
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name} [{TOLERANCE}, {ms} ms]: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name} [{TOLERANCE}, {ms} ms]: {why}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
