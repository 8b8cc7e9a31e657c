//! Sorting coloured edge words into preferred order by square flips, and the
//! shuffle function that accumulates a square function along the way.

use std::collections::HashMap;

use rand::Rng;

use crate::coeff::GroupElem;
use crate::cubical::CubicalCochain;
use crate::degree::Degree;
use crate::error::{Error, Result};
use crate::graph::{EdgeId, KGraph, Morphism};
use crate::sample;

/// A composable edge word in arbitrary colour order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ColouredWord {
    edges: Vec<EdgeId>,
}

impl ColouredWord {
    pub fn new(g: &KGraph, edges: Vec<EdgeId>) -> Result<Self> {
        if let Some(w) = edges.windows(2).find(|w| g.source(w[0]) != g.range(w[1])) {
            return Err(Error::NotComposable { left: g.edge_name(w[0]).into(), right: g.edge_name(w[1]).into() });
        }
        Ok(ColouredWord { edges })
    }

    pub fn edges(&self) -> &[EdgeId] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn colours(&self, g: &KGraph) -> Vec<usize> {
        self.edges.iter().map(|&e| g.colour(e)).collect()
    }

    pub fn degree(&self, g: &KGraph) -> Degree {
        Degree::from_colours(g.rank(), &self.colours(g))
    }

    pub fn is_preferred(&self, g: &KGraph) -> bool {
        self.edges.windows(2).all(|w| g.colour(w[0]) <= g.colour(w[1]))
    }

    /// Concatenation `uw`; `s(u) = r(w)` is required.
    pub fn concat(&self, g: &KGraph, other: &ColouredWord) -> Result<ColouredWord> {
        let mut edges = self.edges.clone();
        edges.extend_from_slice(&other.edges);
        ColouredWord::new(g, edges)
    }
}

/// `λ̄`, the edge word of `λ` in nondecreasing colour order.
pub fn preferred_word(lambda: &Morphism) -> ColouredWord {
    ColouredWord { edges: lambda.word().to_vec() }
}

/// One square flip: at `position`, colours decrease before and increase after.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransitionMove {
    pub position: usize,
    /// The 2-cube crossed by the move.
    pub square: Morphism,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    /// Always flip the leftmost descent.
    Leftmost,
    /// Always flip the rightmost descent.
    Rightmost,
    /// Flip a uniformly chosen descent.
    Random(u64),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShuffleOutcome {
    pub word: ColouredWord,
    pub value: GroupElem,
    pub moves: Vec<TransitionMove>,
}

/// Values of a square function keyed by the preferred word `(a, b)` of each square.
#[derive(Clone, Debug)]
pub struct SquareValues {
    values: HashMap<(EdgeId, EdgeId), GroupElem>,
    zero: GroupElem,
}

impl SquareValues {
    pub(crate) fn new(phi: &CubicalCochain) -> Self {
        assert_eq!(phi.rank(), 2, "expected a function on squares");
        let values =
            phi.cubes().cubes().iter().zip(phi.values()).map(|(sq, v)| ((sq.word()[0], sq.word()[1]), v.clone())).collect();
        SquareValues { values, zero: phi.group().zero() }
    }

    fn at(&self, a: EdgeId, b: EdgeId) -> &GroupElem {
        &self.values[&(a, b)]
    }

    /// `S_φ` of a word, sorting it in place by insertion.
    pub(crate) fn sort(&self, g: &KGraph, word: &mut [EdgeId]) -> GroupElem {
        let mut acc = self.zero.clone();
        for i in 1..word.len() {
            let mut j = i;
            while j > 0 && g.colour(word[j - 1]) > g.colour(word[j]) {
                let (a, b) = g.swap(word[j - 1], word[j]);
                acc = &acc + self.at(a, b);
                word[j - 1] = a;
                word[j] = b;
                j -= 1;
            }
        }
        acc
    }
}

fn descents<'a>(g: &'a KGraph, w: &'a [EdgeId]) -> impl Iterator<Item = usize> + 'a {
    (0..w.len().saturating_sub(1)).filter(move |&p| g.colour(w[p]) > g.colour(w[p + 1]))
}

/// Sorts `w` with the given strategy, recording every move.
pub fn shuffle_with(g: &KGraph, phi: &CubicalCochain, w: &ColouredWord, strategy: Strategy) -> ShuffleOutcome {
    let table = SquareValues::new(phi);
    shuffle_table(g, &table, w, strategy)
}

pub(crate) fn shuffle_table(g: &KGraph, table: &SquareValues, w: &ColouredWord, strategy: Strategy) -> ShuffleOutcome {
    let mut word = w.edges.clone();
    let mut value = table.zero.clone();
    let mut moves = Vec::new();
    let mut rng = match strategy {
        Strategy::Random(seed) => Some(sample::rng(seed)),
        _ => None,
    };
    loop {
        let p = match (strategy, rng.as_mut()) {
            (Strategy::Leftmost, _) => descents(g, &word).next(),
            (Strategy::Rightmost, _) => descents(g, &word).last(),
            (Strategy::Random(_), Some(r)) => {
                let ds: Vec<usize> = descents(g, &word).collect();
                (!ds.is_empty()).then(|| ds[r.gen_range(0..ds.len())])
            }
            _ => unreachable!(),
        };
        let Some(p) = p else { break };
        let (a, b) = g.swap(word[p], word[p + 1]);
        value = &value + table.at(a, b);
        word[p] = a;
        word[p + 1] = b;
        moves.push(TransitionMove { position: p, square: g.morphism_from_word(&[a, b]).unwrap() });
    }
    ShuffleOutcome { word: ColouredWord { edges: word }, value, moves }
}

/// `(π(w)‾, S_φ(w))`. Two strategies are run; disagreement certifies that `φ` is not a cocycle.
pub fn shuffle(g: &KGraph, phi: &CubicalCochain, w: &ColouredWord) -> Result<(ColouredWord, GroupElem)> {
    let table = SquareValues::new(phi);
    let left = shuffle_table(g, &table, w, Strategy::Leftmost);
    let right = shuffle_table(g, &table, w, Strategy::Rightmost);
    if left.word != right.word || left.value != right.value {
        return Err(Error::NotACocycle(format!(
            "shuffling {} gives {} and {}",
            g.word_names(w.edges()).join(" "),
            left.value,
            right.value
        )));
    }
    Ok((left.word, left.value))
}
