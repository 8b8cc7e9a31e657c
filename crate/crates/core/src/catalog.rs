//! Small named graphs used throughout the tests, benches and CLI examples.

use std::sync::Arc;

use crate::coeff::CoeffGroup;
use crate::graph::{self, validate, DerivedGraph, KGraph, Skeleton, SquareTable};

fn single_vertex(k: usize, edges: &[(&str, usize)], squares: &[[&str; 4]]) -> Arc<KGraph> {
    let mut s = Skeleton::new(k);
    s.add_vertex("*").unwrap();
    for &(e, c) in edges {
        s.add_edge(e, c, "*", "*").unwrap();
    }
    let mut table = SquareTable::new();
    for [f, g, g2, f2] in squares {
        table.push(f, g, g2, f2);
    }
    Arc::new(validate(s, &table).expect("catalog graph is valid"))
}

/// One vertex and two loops of colour 1.
pub fn b2() -> Arc<KGraph> {
    single_vertex(1, &[("f1", 1), ("f2", 1)], &[])
}

/// One vertex, loops `e` (colour 1) and `f` (colour 2), and the square `ef = fe`.
pub fn t2() -> Arc<KGraph> {
    single_vertex(2, &[("e", 1), ("f", 2)], &[["e", "f", "f", "e"]])
}

/// One vertex with one loop per colour in rank 3.
pub fn cube3() -> Arc<KGraph> {
    single_vertex(3, &[("a", 1), ("b", 2), ("c", 3)], &[["a", "b", "b", "a"], ["a", "c", "c", "a"], ["b", "c", "c", "b"]])
}

/// One vertex, two loops per colour in rank 2, with `a_i b_j = b_j a_{1-i}`.
pub fn twisted_square() -> Arc<KGraph> {
    single_vertex(
        2,
        &[("a0", 1), ("a1", 1), ("b0", 2), ("b1", 2)],
        &[["a0", "b0", "b0", "a1"], ["a0", "b1", "b1", "a1"], ["a1", "b0", "b0", "a0"], ["a1", "b1", "b1", "a0"]],
    )
}

fn parity(base: Arc<KGraph>) -> DerivedGraph {
    let z2 = CoeffGroup::IntegersMod(2);
    let values = vec![z2.from_int(1); base.edge_count()];
    graph::skew(base, &z2, &values).expect("parity is a functor")
}

/// Skew product of `b2` by the degree modulo 2.
pub fn skew_b2() -> Arc<KGraph> {
    derived_skew_b2().graph
}

pub fn derived_skew_b2() -> DerivedGraph {
    parity(b2())
}

/// Skew product of `cube3` by the total degree modulo 2: two vertices, two edges per colour.
pub fn cube3_parity() -> Arc<KGraph> {
    parity(cube3()).graph
}

pub fn derived_product_b2_b2() -> DerivedGraph {
    graph::product(b2(), b2()).expect("products of valid graphs are valid")
}

pub fn derived_pullback_b2() -> DerivedGraph {
    graph::pullback(b2(), vec![vec![1, 1]]).expect("valid matrix")
}

/// Every catalog graph with a short name, base graphs first.
pub fn all() -> Vec<(&'static str, Arc<KGraph>)> {
    vec![
        ("b2", b2()),
        ("t2", t2()),
        ("cube3", cube3()),
        ("twisted", twisted_square()),
        ("b2xb2", derived_product_b2_b2().graph),
        ("pullback-b2", derived_pullback_b2().graph),
        ("skew-b2", skew_b2()),
        ("cube3-parity", cube3_parity()),
        ("t2xb2", graph::product(t2(), b2()).unwrap().graph),
    ]
}
