//! Dense boolean relations over `0..size`, one bit row per source state.

use std::fmt;

const WORD: usize = 64;

fn words_for(size: usize) -> usize {
    size.div_ceil(WORD)
}

/// A subset of `0..size`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct StateSet {
    size: usize,
    words: Vec<u64>,
}

impl StateSet {
    pub fn empty(size: usize) -> Self {
        StateSet {
            size,
            words: vec![0; words_for(size)],
        }
    }

    pub fn full(size: usize) -> Self {
        let mut s = StateSet {
            size,
            words: vec![!0; words_for(size)],
        };
        s.clear_tail();
        s
    }

    pub fn from_indices(size: usize, indices: impl IntoIterator<Item = usize>) -> Self {
        let mut s = StateSet::empty(size);
        for i in indices {
            s.insert(i);
        }
        s
    }

    pub fn from_fn(size: usize, mut f: impl FnMut(usize) -> bool) -> Self {
        StateSet::from_indices(size, (0..size).filter(|&i| f(i)))
    }

    fn clear_tail(&mut self) {
        let rem = self.size % WORD;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }

    /// Size of the universe, not of the set.
    pub fn universe(&self) -> usize {
        self.size
    }

    pub fn contains(&self, i: usize) -> bool {
        i < self.size && self.words[i / WORD] >> (i % WORD) & 1 == 1
    }

    pub fn insert(&mut self, i: usize) {
        assert!(i < self.size, "state {i} out of range {}", self.size);
        self.words[i / WORD] |= 1 << (i % WORD);
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn is_full(&self) -> bool {
        self.count() == self.size
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(k, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let bit = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(k * WORD + bit)
            })
        })
    }

    pub fn union(&self, other: &StateSet) -> StateSet {
        self.zip(other, |a, b| a | b)
    }

    pub fn intersection(&self, other: &StateSet) -> StateSet {
        self.zip(other, |a, b| a & b)
    }

    pub fn complement(&self) -> StateSet {
        let mut s = StateSet {
            size: self.size,
            words: self.words.iter().map(|w| !w).collect(),
        };
        s.clear_tail();
        s
    }

    pub fn is_subset(&self, other: &StateSet) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn intersects(&self, other: &StateSet) -> bool {
        self.words.iter().zip(&other.words).any(|(a, b)| a & b != 0)
    }

    fn zip(&self, other: &StateSet, op: impl Fn(u64, u64) -> u64) -> StateSet {
        assert_eq!(self.size, other.size, "state sets over different universes");
        StateSet {
            size: self.size,
            words: self.words.iter().zip(&other.words).map(|(&a, &b)| op(a, b)).collect(),
        }
    }
}

impl fmt::Debug for StateSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// A binary relation on `0..size`.
#[derive(Clone, PartialEq, Eq)]
pub struct Relation {
    size: usize,
    stride: usize,
    bits: Vec<u64>,
}

impl Relation {
    pub fn empty(size: usize) -> Self {
        let stride = words_for(size);
        Relation {
            size,
            stride,
            bits: vec![0; stride * size],
        }
    }

    pub fn identity(size: usize) -> Self {
        Relation::diagonal(&StateSet::full(size))
    }

    /// Identity restricted to `set`.
    pub fn diagonal(set: &StateSet) -> Self {
        let mut r = Relation::empty(set.universe());
        for s in set.iter() {
            r.insert(s, s);
        }
        r
    }

    pub fn from_fn(size: usize, mut related: impl FnMut(usize, usize) -> bool) -> Self {
        let mut r = Relation::empty(size);
        for s in 0..size {
            for t in 0..size {
                if related(s, t) {
                    r.insert(s, t);
                }
            }
        }
        r
    }

    pub fn from_pairs(size: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut r = Relation::empty(size);
        for (s, t) in pairs {
            r.insert(s, t);
        }
        r
    }

    pub fn size(&self) -> usize {
        self.size
    }

    fn row(&self, s: usize) -> &[u64] {
        &self.bits[s * self.stride..(s + 1) * self.stride]
    }

    pub fn insert(&mut self, s: usize, t: usize) {
        assert!(s < self.size && t < self.size, "pair ({s},{t}) out of range {}", self.size);
        self.bits[s * self.stride + t / WORD] |= 1 << (t % WORD);
    }

    pub fn relates(&self, s: usize, t: usize) -> bool {
        s < self.size && t < self.size && self.bits[s * self.stride + t / WORD] >> (t % WORD) & 1 == 1
    }

    pub fn successors(&self, s: usize) -> StateSet {
        StateSet {
            size: self.size,
            words: self.row(s).to_vec(),
        }
    }

    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.size).flat_map(move |s| self.successors(s).iter().map(move |t| (s, t)).collect::<Vec<_>>())
    }

    pub fn pair_count(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn union(&self, other: &Relation) -> Relation {
        assert_eq!(self.size, other.size, "relations over different universes");
        Relation {
            size: self.size,
            stride: self.stride,
            bits: self.bits.iter().zip(&other.bits).map(|(a, b)| a | b).collect(),
        }
    }

    /// `self ; other`: first a `self` step, then an `other` step.
    pub fn compose(&self, other: &Relation) -> Relation {
        assert_eq!(self.size, other.size, "relations over different universes");
        let mut out = Relation::empty(self.size);
        for s in 0..self.size {
            let target = &mut out.bits[s * self.stride..(s + 1) * self.stride];
            for (k, &w) in self.row(s).iter().enumerate() {
                let mut w = w;
                while w != 0 {
                    let mid = k * WORD + w.trailing_zeros() as usize;
                    w &= w - 1;
                    for (dst, src) in target.iter_mut().zip(other.row(mid)) {
                        *dst |= src;
                    }
                }
            }
        }
        out
    }

    /// Reflexive transitive closure, by squaring `id ∪ self` to a fixpoint.
    pub fn star(&self) -> Relation {
        let mut r = self.union(&Relation::identity(self.size));
        loop {
            let next = r.compose(&r);
            if next == r {
                return r;
            }
            r = next;
        }
    }

    pub fn converse(&self) -> Relation {
        let mut out = Relation::empty(self.size);
        for (s, t) in self.pairs() {
            out.insert(t, s);
        }
        out
    }

    /// States all of whose successors lie in `set`.
    pub fn box_of(&self, set: &StateSet) -> StateSet {
        StateSet::from_fn(self.size, |s| {
            self.row(s).iter().zip(&set.words).all(|(a, b)| a & !b == 0)
        })
    }

    /// States with some successor in `set`.
    pub fn diamond_of(&self, set: &StateSet) -> StateSet {
        StateSet::from_fn(self.size, |s| {
            self.row(s).iter().zip(&set.words).any(|(a, b)| a & b != 0)
        })
    }

    pub fn is_reflexive(&self) -> bool {
        (0..self.size).all(|s| self.relates(s, s))
    }

    pub fn is_symmetric(&self) -> bool {
        self.pairs().all(|(s, t)| self.relates(t, s))
    }

    pub fn is_transitive(&self) -> bool {
        self.compose(self).pairs().all(|(s, t)| self.relates(s, t))
    }

    pub fn is_equivalence(&self) -> bool {
        self.is_reflexive() && self.is_symmetric() && self.is_transitive()
    }

    /// Every state relates to every state.
    pub fn is_total(&self) -> bool {
        self.pair_count() == self.size * self.size
    }
}

impl fmt::Debug for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.pairs()).finish()
    }
}
