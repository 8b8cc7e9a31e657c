use std::cmp::Ordering;

use super::{EdgeId, KGraph, VertexId};
use crate::degree::Degree;
use crate::error::{Error, Result};

/// A morphism stored as its colour-sorted edge word. An empty word is the
/// identity at `range == source`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Morphism {
    range: VertexId,
    source: VertexId,
    word: Vec<EdgeId>,
    degree: Degree,
}

impl Morphism {
    pub fn range(&self) -> VertexId {
        self.range
    }

    pub fn source(&self) -> VertexId {
        self.source
    }

    pub fn word(&self) -> &[EdgeId] {
        &self.word
    }

    pub fn degree(&self) -> &Degree {
        &self.degree
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    pub fn is_vertex(&self) -> bool {
        self.word.is_empty()
    }
}

fn degree_order(a: &Degree, b: &Degree) -> Ordering {
    // equal totals compare by colour word, which reverses the entry order
    a.total().cmp(&b.total()).then_with(|| b.entries().cmp(a.entries()))
}

impl Ord for Morphism {
    fn cmp(&self, other: &Self) -> Ordering {
        degree_order(&self.degree, &other.degree)
            .then_with(|| self.word.cmp(&other.word))
            .then_with(|| self.range.cmp(&other.range))
    }
}

impl PartialOrd for Morphism {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl KGraph {
    pub fn vertex_morphism(&self, v: VertexId) -> Morphism {
        Morphism { range: v, source: v, word: Vec::new(), degree: Degree::zero(self.rank()) }
    }

    pub fn edge_morphism(&self, e: EdgeId) -> Morphism {
        Morphism {
            range: self.range(e),
            source: self.source(e),
            word: vec![e],
            degree: Degree::unit(self.rank(), self.colour(e)),
        }
    }

    /// The morphism represented by a nonempty composable edge word in any colour order.
    pub fn morphism_from_word(&self, word: &[EdgeId]) -> Result<Morphism> {
        if word.is_empty() {
            return Err(Error::DegreeOutOfRange);
        }
        for w in word.windows(2) {
            if self.source(w[0]) != self.range(w[1]) {
                return Err(Error::NotComposable { left: self.edge_name(w[0]).into(), right: self.edge_name(w[1]).into() });
            }
        }
        Ok(self.morphism_of_sorted(self.sort_word(word)))
    }

    fn morphism_of_sorted(&self, word: Vec<EdgeId>) -> Morphism {
        let colours: Vec<usize> = word.iter().map(|&e| self.colour(e)).collect();
        Morphism {
            range: self.range(word[0]),
            source: self.source(*word.last().unwrap()),
            degree: Degree::from_colours(self.rank(), &colours),
            word,
        }
    }

    /// Sorts a composable word into nondecreasing colour order by square flips.
    pub fn sort_word(&self, word: &[EdgeId]) -> Vec<EdgeId> {
        let mut w = word.to_vec();
        for i in 1..w.len() {
            let mut j = i;
            while j > 0 && self.colour(w[j - 1]) > self.colour(w[j]) {
                let (a, b) = self.swap(w[j - 1], w[j]);
                w[j - 1] = a;
                w[j] = b;
                j -= 1;
            }
        }
        w
    }

    /// Rewrites a composable word into one whose colour sequence is `target`.
    /// `target` must be a rearrangement of the word's colours.
    pub fn rewrite_to_colours(&self, word: &[EdgeId], target: &[usize]) -> Vec<EdgeId> {
        debug_assert_eq!(word.len(), target.len());
        let mut w = word.to_vec();
        for p in 0..w.len() {
            let q = (p..w.len()).find(|&q| self.colour(w[q]) == target[p]).expect("target is a rearrangement");
            for j in (p..q).rev() {
                let (a, b) = self.swap(w[j], w[j + 1]);
                w[j] = a;
                w[j + 1] = b;
            }
        }
        w
    }

    pub fn compose(&self, mu: &Morphism, nu: &Morphism) -> Result<Morphism> {
        if mu.source != nu.range {
            return Err(Error::NotComposable { left: self.describe(mu), right: self.describe(nu) });
        }
        if mu.is_vertex() {
            return Ok(nu.clone());
        }
        if nu.is_vertex() {
            return Ok(mu.clone());
        }
        let mut word = mu.word.clone();
        word.extend_from_slice(&nu.word);
        Ok(self.morphism_of_sorted(self.sort_word(&word)))
    }

    /// Composes a nonempty chain `m0 m1 ... mn`.
    pub fn compose_all(&self, chain: &[&Morphism]) -> Result<Morphism> {
        let mut acc = chain[0].clone();
        for m in &chain[1..] {
            acc = self.compose(&acc, m)?;
        }
        Ok(acc)
    }

    /// `λ(m, n)`: the unique `β` with `λ = αβγ`, `d(α) = m`, `d(β) = n - m`.
    pub fn segment(&self, lambda: &Morphism, m: &Degree, n: &Degree) -> Result<Morphism> {
        let d = &lambda.degree;
        if !m.le(n) || !n.le(d) {
            return Err(Error::DegreeOutOfRange);
        }
        if m.is_zero() && n == d {
            return Ok(lambda.clone());
        }
        let mid = n.checked_sub(m).unwrap();
        let tail = d.checked_sub(n).unwrap();
        let mut target = m.colour_word();
        let (start, len) = (target.len(), mid.total());
        target.extend(mid.colour_word());
        target.extend(tail.colour_word());
        let w = self.rewrite_to_colours(&lambda.word, &target);
        if len == 0 {
            let v = if start < w.len() { self.range(w[start]) } else { lambda.source };
            return Ok(self.vertex_morphism(v));
        }
        Ok(self.morphism_of_sorted(w[start..start + len].to_vec()))
    }

    /// `λ(0, n)`, the prefix of degree `n`.
    pub fn prefix(&self, lambda: &Morphism, n: &Degree) -> Result<Morphism> {
        self.segment(lambda, &Degree::zero(self.rank()), n)
    }

    /// Whether `lambda = mu·α` for some `α`.
    pub fn extends(&self, lambda: &Morphism, mu: &Morphism) -> bool {
        mu.degree.le(&lambda.degree) && self.prefix(lambda, &mu.degree).is_ok_and(|p| &p == mu)
    }

    /// All morphisms of degree `n`, optionally with range `v` and source `w`,
    /// in lexicographic order of their edge words.
    pub fn enumerate_paths(&self, v: Option<VertexId>, n: &Degree, w: Option<VertexId>) -> Vec<Morphism> {
        if n.is_zero() {
            return self
                .vertex_ids()
                .filter(|&u| v.is_none_or(|x| x == u) && w.is_none_or(|x| x == u))
                .map(|u| self.vertex_morphism(u))
                .collect();
        }
        let colours = n.colour_word();
        let mut out = Vec::new();
        let mut word = Vec::with_capacity(colours.len());
        let starts: Vec<VertexId> = match v {
            Some(x) => vec![x],
            None => self.vertex_ids().collect(),
        };
        // DFS in edge-id order keeps the output sorted
        let mut firsts: Vec<EdgeId> = starts.iter().flat_map(|&u| self.incoming_of(u, colours[0]).iter().copied()).collect();
        firsts.sort();
        for e in firsts {
            word.push(e);
            self.extend_paths(&colours, &mut word, w, n, &mut out);
            word.pop();
        }
        out
    }

    fn extend_paths(&self, colours: &[usize], word: &mut Vec<EdgeId>, w: Option<VertexId>, n: &Degree, out: &mut Vec<Morphism>) {
        let last = *word.last().unwrap();
        if word.len() == colours.len() {
            if w.is_none_or(|x| x == self.source(last)) {
                out.push(Morphism {
                    range: self.range(word[0]),
                    source: self.source(last),
                    word: word.clone(),
                    degree: n.clone(),
                });
            }
            return;
        }
        let c = colours[word.len()];
        for &e in self.incoming_of(self.source(last), c) {
            word.push(e);
            self.extend_paths(colours, word, w, n, out);
            word.pop();
        }
    }

    /// Every morphism with `|λ| <= max_len`, in enumeration order.
    pub fn morphisms_up_to(&self, max_len: usize) -> Vec<Morphism> {
        (0..=max_len)
            .flat_map(|t| Degree::all_with_total(self.rank(), t))
            .flat_map(|n| self.enumerate_paths(None, &n, None))
            .collect()
    }

    /// Minimal common extensions: `μΛ ∩ νΛ ∩ Λ^{d(μ) ∨ d(ν)}`.
    pub fn mce(&self, mu: &Morphism, nu: &Morphism) -> Vec<Morphism> {
        if mu.range != nu.range {
            return Vec::new();
        }
        let join = mu.degree.join(&nu.degree);
        let rest = join.checked_sub(&mu.degree).unwrap();
        let mut out: Vec<Morphism> = self
            .enumerate_paths(Some(mu.source), &rest, None)
            .iter()
            .map(|alpha| self.compose(mu, alpha).unwrap())
            .filter(|lambda| self.extends(lambda, nu))
            .collect();
        out.sort();
        out
    }
}
