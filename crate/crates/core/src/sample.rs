//! Seeded sampling of morphisms and word tuples, and the outcome type shared by the check suites.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::{EdgeId, KGraph, Morphism, VertexId};

pub type SeededRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Result of checking an identity over a family of inputs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check<W> {
    pub checked: usize,
    /// First failing input, in sample order.
    pub witness: Option<W>,
}

impl<W> Check<W> {
    pub fn passed(&self) -> bool {
        self.witness.is_none()
    }

    pub fn map_witness<V>(self, f: impl FnOnce(W) -> V) -> Check<V> {
        Check { checked: self.checked, witness: self.witness.map(f) }
    }
}

/// One named property with the number of samples and the first failure, rendered as text.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteCheck {
    pub name: String,
    pub checked: usize,
    pub witness: Option<String>,
}

impl SuiteCheck {
    pub fn passed(&self) -> bool {
        self.witness.is_none()
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SuiteReport {
    pub checks: Vec<SuiteCheck>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(SuiteCheck::passed)
    }
}

/// Which inputs a suite runs over.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SampleSpec {
    /// Every composable tuple whose entries have at most this many edges.
    Exhaustive {
        max_len: usize,
    },
    Random {
        seed: u64,
        count: usize,
        max_len: usize,
    },
}

/// A random composable edge word in arbitrary colour order, ending at `range` if given.
/// Stops early at vertices that receive no edge of the chosen colour.
pub fn random_word<R: Rng + ?Sized>(g: &KGraph, rng: &mut R, range: Option<VertexId>, len: usize) -> (VertexId, Vec<EdgeId>) {
    let start = range.unwrap_or_else(|| VertexId(rng.gen_range(0..g.vertex_count() as u32)));
    let mut word = Vec::with_capacity(len);
    let mut at = start;
    for _ in 0..len {
        if g.rank() == 0 {
            break;
        }
        let colour = rng.gen_range(1..=g.rank());
        let Some(&e) = g.incoming_of(at, colour).choose(rng) else { break };
        word.push(e);
        at = g.source(e);
    }
    (start, word)
}

/// A random morphism with `|λ| <= max_len` and the given range.
pub fn random_morphism<R: Rng + ?Sized>(g: &KGraph, rng: &mut R, range: Option<VertexId>, max_len: usize) -> Morphism {
    let len = rng.gen_range(0..=max_len);
    let (start, word) = random_word(g, rng, range, len);
    if word.is_empty() {
        g.vertex_morphism(start)
    } else {
        g.morphism_from_word(&word).expect("walk is composable")
    }
}

/// A random composable chain `λ1 λ2 ... λn` (so `s(λi) = r(λi+1)`).
pub fn random_chain<R: Rng + ?Sized>(g: &KGraph, rng: &mut R, n: usize, max_len: usize) -> Vec<Morphism> {
    let mut out: Vec<Morphism> = Vec::with_capacity(n);
    for _ in 0..n {
        let range = out.last().map(|m| m.source());
        out.push(random_morphism(g, rng, range, max_len));
    }
    out
}

/// Every composable chain of `n` morphisms each with at most `max_len` edges.
pub fn all_chains(g: &KGraph, n: usize, max_len: usize) -> Vec<Vec<Morphism>> {
    let all = g.morphisms_up_to(max_len);
    let mut by_range: Vec<Vec<&Morphism>> = vec![Vec::new(); g.vertex_count()];
    for m in &all {
        by_range[m.range().index()].push(m);
    }
    let mut chains: Vec<Vec<Morphism>> = vec![Vec::new()];
    for _ in 0..n {
        let mut next = Vec::new();
        for c in &chains {
            let candidates: Vec<&Morphism> = match c.last() {
                Some(m) => by_range[m.source().index()].clone(),
                None => all.iter().collect(),
            };
            for m in candidates {
                let mut d = c.clone();
                d.push(m.clone());
                next.push(d);
            }
        }
        chains = next;
    }
    chains
}

/// Chains described by a sample spec.
pub fn chains(g: &KGraph, n: usize, spec: &SampleSpec) -> Vec<Vec<Morphism>> {
    match spec {
        SampleSpec::Exhaustive { max_len } => all_chains(g, n, *max_len),
        SampleSpec::Random { seed, count, max_len } => {
            let mut r = rng(*seed);
            (0..*count).map(|_| random_chain(g, &mut r, n, *max_len)).collect()
        }
    }
}
