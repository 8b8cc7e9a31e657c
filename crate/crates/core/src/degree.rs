use std::fmt;

/// An element of `N^k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Degree(Vec<u32>);

impl Degree {
    pub fn zero(k: usize) -> Self {
        Degree(vec![0; k])
    }

    /// The generator `e_colour`; colours are 1-based.
    pub fn unit(k: usize, colour: usize) -> Self {
        let mut d = Self::zero(k);
        d.0[colour - 1] = 1;
        d
    }

    pub fn ones(k: usize) -> Self {
        Degree(vec![1; k])
    }

    pub fn from_vec(entries: Vec<u32>) -> Self {
        Degree(entries)
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    /// `|n|`, the sum of the entries.
    pub fn total(&self) -> usize {
        self.0.iter().map(|&x| x as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn get(&self, colour: usize) -> u32 {
        self.0[colour - 1]
    }

    pub fn le(&self, other: &Degree) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn join(&self, other: &Degree) -> Degree {
        Degree(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn meet(&self, other: &Degree) -> Degree {
        Degree(self.0.iter().zip(&other.0).map(|(a, b)| *a.min(b)).collect())
    }

    pub fn add(&self, other: &Degree) -> Degree {
        Degree(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self - other` when `other <= self`.
    pub fn checked_sub(&self, other: &Degree) -> Option<Degree> {
        self.0.iter().zip(&other.0).map(|(a, b)| a.checked_sub(*b)).collect::<Option<Vec<_>>>().map(Degree)
    }

    /// Signed difference in `Z^k`.
    pub fn diff(&self, other: &Degree) -> Vec<i64> {
        self.0.iter().zip(&other.0).map(|(&a, &b)| a as i64 - b as i64).collect()
    }

    /// `self + shift` when the result stays in `N^k`.
    pub fn offset(&self, shift: &[i64]) -> Option<Degree> {
        self.0.iter().zip(shift).map(|(&a, &s)| u32::try_from(a as i64 + s).ok()).collect::<Option<Vec<_>>>().map(Degree)
    }

    /// Colours listed with multiplicity in nondecreasing order.
    pub fn colour_word(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.total());
        for (i, &n) in self.0.iter().enumerate() {
            out.extend(std::iter::repeat_n(i + 1, n as usize));
        }
        out
    }

    /// All degrees `n` with `|n| = total`, ordered by colour word.
    pub fn all_with_total(k: usize, total: usize) -> Vec<Degree> {
        fn rec(k: usize, first: usize, left: usize, word: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if left == 0 {
                out.push(word.clone());
                return;
            }
            for c in first..=k {
                word.push(c);
                rec(k, c, left - 1, word, out);
                word.pop();
            }
        }
        if k == 0 {
            return if total == 0 { vec![Degree::zero(0)] } else { Vec::new() };
        }
        let mut words = Vec::new();
        rec(k, 1, total, &mut Vec::new(), &mut words);
        words.into_iter().map(|w| Degree::from_colours(k, &w)).collect()
    }

    /// All degrees `n <= bound`, ordered by total then colour word.
    pub fn all_below(bound: &Degree) -> Vec<Degree> {
        (0..=bound.total()).flat_map(|t| Degree::all_with_total(bound.rank(), t)).filter(|d| d.le(bound)).collect()
    }

    pub fn from_colours(k: usize, colours: &[usize]) -> Degree {
        let mut d = Degree::zero(k);
        for &c in colours {
            d.0[c - 1] += 1;
        }
        d
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}
