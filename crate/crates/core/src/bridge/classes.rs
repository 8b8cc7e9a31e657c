//! Passing from categorical cocycles back to square functions, and deciding
//! when two square functions differ by a coboundary.

use super::cochain::{require_cocycle, same_graph, Cat2Cocycle};
use crate::coeff::CoeffGroup;
use crate::cubical::{boundary_matrix, cubes, CubicalCochain};
use crate::error::{Error, Result};
use crate::matrix::smith_normal_form;

/// `φ_c(λ) = c(g', f') − c(f, g)` for each square `λ = fg = g'f'` with `c(f) < c(g)`.
pub fn restrict_to_squares(c: &Cat2Cocycle) -> CubicalCochain {
    let g = c.graph().clone();
    CubicalCochain::from_fn(g.clone(), 2, c.group().clone(), |sq| {
        let (f, gg) = (sq.word()[0], sq.word()[1]);
        let (g2, f2) = g.swap(f, gg);
        let e = |x| g.edge_morphism(x);
        c.eval(&e(g2), &e(f2)) - c.eval(&e(f), &e(gg))
    })
}

/// Outcome of a class comparison.
#[derive(Clone, Debug, PartialEq)]
pub struct ClassVerdict {
    pub equal: bool,
    /// Some `f` with `δf = φ1 − φ2` when the classes agree.
    pub certificate: Option<CubicalCochain>,
}

/// Decides whether `φ1 − φ2` is a cubical coboundary by solving `δf = φ1 − φ2`.
pub fn cub_class_equal(phi1: &CubicalCochain, phi2: &CubicalCochain) -> Result<ClassVerdict> {
    if !same_graph(phi1.graph(), phi2.graph()) {
        return Err(Error::GraphMismatch);
    }
    if phi1.group() != phi2.group() {
        return Err(Error::CoefficientMismatch(phi1.group().to_string(), phi2.group().to_string()));
    }
    if phi1.rank() != 2 || phi2.rank() != 2 {
        return Err(Error::BadValue("cochain".into(), "a function on squares".into()));
    }
    require_cocycle(phi1)?;
    require_cocycle(phi2)?;
    let group: CoeffGroup = phi1.group().clone();
    let diff = phi1 - phi2;
    let g = phi1.graph().clone();
    let delta = boundary_matrix(&g, 2).transpose();
    let zero = group.zero();
    let solution = smith_normal_form(&delta).solve(diff.values(), &zero);
    let certificate = solution.map(|values| {
        debug_assert_eq!(values.len(), cubes(&g, 1).len());
        CubicalCochain::new(g.clone(), 1, group.clone(), values).expect("solution has the right shape")
    });
    Ok(ClassVerdict { equal: certificate.is_some(), certificate })
}
