use kgraph::catalog;
use kgraph::cubical::*;
use kgraph::matrix::{FinAbGroup, IntMatrix};
use kgraph::sample;
use kgraph::{CoeffGroup, KGraph};
use num_bigint::BigInt;
use num_integer::Integer;
use proptest::prelude::*;

const PRIME: i64 = 1_000_003;

/// Rank over `F_p` by row reduction, independent of the Smith form.
fn rank_mod_p(m: &IntMatrix) -> usize {
    let mut a: Vec<Vec<i64>> =
        (0..m.rows()).map(|i| (0..m.cols()).map(|j| (m.get(i, j) % BigInt::from(PRIME)).try_into().unwrap()).collect()).collect();
    let pow = |mut b: i64, mut e: i64| {
        let mut r = 1i64;
        b = b.rem_euclid(PRIME);
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
    for col in 0..m.cols() {
        let Some(piv) = (rank..a.len()).find(|&i| a[i][col].rem_euclid(PRIME) != 0) else { continue };
        a.swap(rank, piv);
        let inv = pow(a[rank][col], PRIME - 2);
        for i in 0..a.len() {
            if i != rank && a[i][col].rem_euclid(PRIME) != 0 {
                let f = a[i][col] * inv % PRIME;
                for j in 0..m.cols() {
                    a[i][j] = (a[i][j] - f * a[rank][j]).rem_euclid(PRIME);
                }
            }
        }
        rank += 1;
    }
    rank
}

fn betti(g: &KGraph, r: usize) -> usize {
    let n = cubes(g, r).len();
    let below = if r == 0 { 0 } else { rank_mod_p(&boundary_matrix(g, r)) };
    n - below - rank_mod_p(&boundary_matrix(g, r + 1))
}

#[test]
fn boundary_squares_to_zero() {
    for (name, g) in catalog::all() {
        for r in 1..g.rank() {
            let dd = boundary_matrix(&g, r).mul(&boundary_matrix(&g, r + 1));
            assert!(dd.is_zero(), "{name}: ∂{r}∂{} ≠ 0", r + 1);
        }
    }
}

#[test]
fn small_homology() {
    let b2 = catalog::b2();
    assert_eq!(homology(&b2, 0), FinAbGroup::free(1));
    assert_eq!(homology(&b2, 1), FinAbGroup::free(2));
    let t2 = catalog::t2();
    let groups: Vec<FinAbGroup> = (0..=2).map(|r| homology(&t2, r)).collect();
    assert_eq!(groups, vec![FinAbGroup::free(1), FinAbGroup::free(2), FinAbGroup::free(1)]);
    assert_eq!((0..=2).map(|r| betti(&t2, r)).collect::<Vec<_>>(), vec![1, 2, 1]);
    // every square of the twisted square has boundary ±(a0 − a1), so ∂_2 has rank 1
    let tw = catalog::twisted_square();
    let groups: Vec<FinAbGroup> = (0..=2).map(|r| homology(&tw, r)).collect();
    assert_eq!(groups, vec![FinAbGroup::free(1), FinAbGroup::free(3), FinAbGroup::free(3)]);
}

#[test]
fn betti_numbers_match_a_field_oracle() {
    for (name, g) in catalog::all() {
        let mut euler = 0i64;
        for r in 0..=g.rank() {
            let h = homology(&g, r);
            assert_eq!(h.free_rank, betti(&g, r), "{name}: H_{r}");
            let sign = if r % 2 == 0 { 1 } else { -1 };
            euler += sign * (h.free_rank as i64 - cubes(&g, r).len() as i64);
        }
        assert_eq!(euler, 0, "{name}: Euler characteristic");
    }
}

/// Universal coefficients: `H^r(Z/n) = Hom(H_r, Z/n) ⊕ Ext(H_{r−1}, Z/n)` and
/// `H^r(Z) = Z^{b_r} ⊕ T(H_{r−1})`.
fn uct(g: &KGraph, r: usize, n: Option<i64>) -> FinAbGroup {
    let h = homology(g, r);
    let below = if r == 0 { FinAbGroup::trivial() } else { homology(g, r - 1) };
    let mut orders = Vec::new();
    match n {
        None => {
            orders.extend(std::iter::repeat_n(BigInt::from(0), h.free_rank));
            orders.extend(below.torsion.iter().cloned());
        }
        Some(n) => {
            let n = BigInt::from(n);
            orders.extend(std::iter::repeat_n(n.clone(), h.free_rank));
            orders.extend(h.torsion.iter().map(|d| d.gcd(&n)));
            orders.extend(below.torsion.iter().map(|d| d.gcd(&n)));
        }
    }
    FinAbGroup::from_cyclic_orders(&orders)
}

#[test]
fn cohomology_obeys_universal_coefficients() {
    for (name, g) in catalog::all() {
        for r in 0..=g.rank() {
            assert_eq!(cohomology(&g, r, &CoeffGroup::Integers).unwrap(), uct(&g, r, None), "{name}: H^{r}(Z)");
            for n in [2, 4, 6] {
                assert_eq!(
                    cohomology(&g, r, &CoeffGroup::IntegersMod(n)).unwrap(),
                    uct(&g, r, Some(n as i64)),
                    "{name}: H^{r}(Z/{n})"
                );
            }
        }
    }
}

#[test]
fn coboundary_squares_to_zero() {
    for (name, g) in catalog::all() {
        let grp = CoeffGroup::IntegersMod(12);
        let mut rng = sample::rng(3);
        for r in 0..g.rank().saturating_sub(1) {
            let values = cubes(&g, r).cubes().iter().map(|_| grp.sample(&mut rng)).collect();
            let f = CubicalCochain::new(g.clone(), r, grp.clone(), values).unwrap();
            assert!(cub_coboundary(&cub_coboundary(&f)).is_zero(), "{name}: δδ ≠ 0 from rank {r}");
        }
    }
}

#[test]
fn edge_functors_reject_bad_tables() {
    let t2 = catalog::t2();
    let z = CoeffGroup::IntegersMod(3);
    assert!(EdgeFunctor::from_edge_values(t2.clone(), z.clone(), vec![z.zero()]).is_err());
    let bad = vec![z.zero(), CoeffGroup::Integers.from_int(1)];
    assert!(EdgeFunctor::from_edge_values(t2.clone(), z.clone(), bad).is_err());
    let f = EdgeFunctor::from_edge_values(t2.clone(), z.clone(), vec![z.from_int(1), z.from_int(2)]).unwrap();
    let lam = &t2.enumerate_paths(None, &kgraph::Degree::from_vec(vec![2, 1]), None)[0];
    assert_eq!(f.eval(lam), z.from_int(4));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    /// The six-face test agrees with `δφ = 0` on squares of rank-3 graphs.
    #[test]
    fn six_face_test_is_the_coboundary(seed in any::<u64>(), parity in any::<bool>()) {
        let g = if parity { catalog::cube3_parity() } else { catalog::cube3() };
        let grp = CoeffGroup::IntegersMod(4);
        let mut rng = sample::rng(seed);
        let values = cubes(&g, 2).cubes().iter().map(|_| grp.sample(&mut rng)).collect();
        let phi = CubicalCochain::new(g.clone(), 2, grp.clone(), values).unwrap();
        prop_assert_eq!(is_cub_2cocycle(&phi), cub_coboundary(&phi).is_zero());
        let random = random_2cocycle(g.clone(), &grp, &mut rng);
        prop_assert!(cub_coboundary(&random).is_zero());
    }

    #[test]
    fn extended_functors_restrict_back(gi in 0usize..9, seed in any::<u64>()) {
        let g = catalog::all()[gi].1.clone();
        let grp = CoeffGroup::IntegersMod(5);
        let mut rng = sample::rng(seed);
        let b = CubicalCochain::new(g.clone(), 0, grp.clone(), cubes(&g, 0).cubes().iter().map(|_| grp.sample(&mut rng)).collect()).unwrap();
        let f = cub_coboundary(&b);
        let functor = extend_1cocycle(&f).unwrap();
        prop_assert_eq!(restrict_functor(g.clone(), &functor), f);
        for chain in sample::chains(&g, 2, &sample::SampleSpec::Random { seed, count: 20, max_len: 3 }) {
            let whole = g.compose(&chain[0], &chain[1]).unwrap();
            prop_assert_eq!(functor.eval(&whole), functor.eval(&chain[0]) + functor.eval(&chain[1]));
        }
    }
}
