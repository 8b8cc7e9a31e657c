use std::collections::VecDeque;

use super::{KGraph, Morphism, VertexId};
use crate::degree::Degree;
use crate::error::{Error, Result};

/// Pair searches give up past this many `(α, β, τ)` checks.
const WORK_LIMIT: usize = 2_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AperiodicityVerdict {
    /// Every pair within the bound was separated by some τ within the bound.
    VerifiedUpToBound,
    /// No τ within the bound separates this pair.
    PeriodicWitness { alpha: Morphism, beta: Morphism },
    /// The search was cut off by the work limit.
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CofinalityVerdict {
    Cofinal,
    /// The block path from `start` never reaches `vertex`.
    NotCofinal {
        start: VertexId,
        vertex: VertexId,
    },
}

#[derive(Clone, Debug)]
pub struct Diagnostics {
    pub bound: Degree,
    pub aperiodicity: AperiodicityVerdict,
    /// Separating τ for each checked pair, in search order.
    pub separations: Vec<(Morphism, Morphism, Morphism)>,
    pub cofinality: CofinalityVerdict,
}

impl KGraph {
    /// Fails when some vertex receives no edge of some colour.
    pub fn check_no_sources(&self) -> Result<()> {
        for v in self.vertex_ids() {
            for c in 1..=self.rank() {
                if self.incoming_of(v, c).is_empty() {
                    return Err(Error::HasSources { vertex: self.vertex_name(v).into(), colour: c });
                }
            }
        }
        Ok(())
    }

    /// The lexicographically least path of degree `1_k` at each vertex.
    pub fn canonical_blocks(&self) -> Result<Vec<Morphism>> {
        self.check_no_sources()?;
        let ones = Degree::ones(self.rank());
        Ok(self.vertex_ids().map(|v| self.enumerate_paths(Some(v), &ones, None).swap_remove(0)).collect())
    }

    /// Vertices `v` with `vΛw` nonempty.
    pub fn reachable_from(&self, w: VertexId) -> Vec<bool> {
        let mut seen = vec![false; self.vertex_count()];
        let mut queue = VecDeque::from([w]);
        seen[w.index()] = true;
        while let Some(u) = queue.pop_front() {
            for e in self.edge_ids().filter(|&e| self.source(e) == u) {
                let r = self.range(e);
                if !seen[r.index()] {
                    seen[r.index()] = true;
                    queue.push_back(r);
                }
            }
        }
        seen
    }
}

/// Bounded search for aperiodicity and cofinality witnesses.
pub fn periodicity_diagnostics(g: &KGraph, bound: &Degree) -> Result<Diagnostics> {
    let blocks = g.canonical_blocks()?;
    let degrees = Degree::all_below(bound);
    let paths: Vec<Morphism> = degrees.iter().flat_map(|n| g.enumerate_paths(None, n, None)).collect();

    let mut separations = Vec::new();
    let mut aperiodicity = AperiodicityVerdict::VerifiedUpToBound;
    let mut work = 0usize;
    'pairs: for (i, alpha) in paths.iter().enumerate() {
        for beta in &paths[i + 1..] {
            if alpha.source() != beta.source() {
                continue;
            }
            let mut found = None;
            for n in &degrees {
                for tau in g.enumerate_paths(Some(alpha.source()), n, None) {
                    work += 1;
                    if work > WORK_LIMIT {
                        aperiodicity = AperiodicityVerdict::Inconclusive;
                        break 'pairs;
                    }
                    let a = g.compose(alpha, &tau)?;
                    let b = g.compose(beta, &tau)?;
                    if g.mce(&a, &b).is_empty() {
                        found = Some(tau);
                        break;
                    }
                }
                if found.is_some() {
                    break;
                }
            }
            match found {
                Some(tau) => separations.push((alpha.clone(), beta.clone(), tau)),
                None => {
                    aperiodicity = AperiodicityVerdict::PeriodicWitness { alpha: alpha.clone(), beta: beta.clone() };
                    break 'pairs;
                }
            }
        }
    }

    // reach(x(n)) grows with n, and the block anchors enter a cycle within |V| steps
    let mut cofinality = CofinalityVerdict::Cofinal;
    'starts: for u in g.vertex_ids() {
        let mut anchor = u;
        for _ in 0..g.vertex_count() {
            anchor = blocks[anchor.index()].source();
        }
        let reach = g.reachable_from(anchor);
        for v in g.vertex_ids() {
            if !reach[v.index()] {
                cofinality = CofinalityVerdict::NotCofinal { start: u, vertex: v };
                break 'starts;
            }
        }
    }

    Ok(Diagnostics { bound: bound.clone(), aperiodicity, separations, cofinality })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn b2_is_aperiodic_up_to_bound() {
        let b2 = catalog::b2();
        let d = periodicity_diagnostics(&b2, &Degree::from_vec(vec![2])).unwrap();
        assert_eq!(d.aperiodicity, AperiodicityVerdict::VerifiedUpToBound);
        assert_eq!(d.cofinality, CofinalityVerdict::Cofinal);
        let f1 = b2.edge_morphism(b2.edge("f1").unwrap());
        let f2 = b2.edge_morphism(b2.edge("f2").unwrap());
        let star = b2.vertex_morphism(b2.vertex("*").unwrap());
        assert!(d.separations.contains(&(f1, f2, star)));
    }

    #[test]
    fn t2_is_periodic() {
        let t2 = catalog::t2();
        let d = periodicity_diagnostics(&t2, &Degree::from_vec(vec![2, 2])).unwrap();
        let star = t2.vertex_morphism(t2.vertex("*").unwrap());
        let e = t2.edge_morphism(t2.edge("e").unwrap());
        assert_eq!(d.aperiodicity, AperiodicityVerdict::PeriodicWitness { alpha: star, beta: e });
    }

    #[test]
    fn sources_are_rejected() {
        let mut s = super::super::Skeleton::new(1);
        s.add_vertex("a").unwrap();
        s.add_vertex("b").unwrap();
        s.add_edge("x", 1, "a", "b").unwrap();
        let g = super::super::validate(s, &super::super::SquareTable::new()).unwrap();
        assert!(matches!(periodicity_diagnostics(&g, &Degree::from_vec(vec![1])), Err(Error::HasSources { .. })));
    }

    #[test]
    fn disconnected_cycles_are_not_cofinal() {
        let mut s = super::super::Skeleton::new(1);
        s.add_vertex("a").unwrap();
        s.add_vertex("b").unwrap();
        s.add_edge("x", 1, "a", "a").unwrap();
        s.add_edge("y", 1, "b", "b").unwrap();
        let g = super::super::validate(s, &super::super::SquareTable::new()).unwrap();
        let d = periodicity_diagnostics(&g, &Degree::from_vec(vec![1])).unwrap();
        assert!(matches!(d.cofinality, CofinalityVerdict::NotCofinal { .. }));
    }
}
