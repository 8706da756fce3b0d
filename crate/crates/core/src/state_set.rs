use std::fmt;

use fixedbitset::FixedBitSet;

/// A subset of the states of one transition system.
///
/// The universe size is fixed at construction; set operations between sets
/// over different universes panic.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct StateSet(FixedBitSet);

impl StateSet {
    pub fn empty(universe: usize) -> Self {
        StateSet(FixedBitSet::with_capacity(universe))
    }

    pub fn singleton(universe: usize, p: usize) -> Self {
        let mut s = Self::empty(universe);
        s.insert(p);
        s
    }

    pub fn from_states(universe: usize, states: impl IntoIterator<Item = usize>) -> Self {
        let mut s = Self::empty(universe);
        s.extend(states);
        s
    }

    pub fn full(universe: usize) -> Self {
        let mut s = Self::empty(universe);
        s.0.insert_range(..);
        s
    }

    pub fn universe(&self) -> usize {
        self.0.len()
    }

    /// Panics if `p` is outside the universe.
    pub fn insert(&mut self, p: usize) {
        self.0.insert(p);
    }

    pub fn remove(&mut self, p: usize) {
        self.0.set(p, false);
    }

    pub fn contains(&self, p: usize) -> bool {
        self.0.contains(p)
    }

    pub fn len(&self) -> usize {
        self.0.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_clear()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.ones()
    }

    pub fn first(&self) -> Option<usize> {
        self.0.minimum()
    }

    pub fn union_with(&mut self, other: &StateSet) {
        assert_eq!(
            self.universe(),
            other.universe(),
            "state sets over different systems"
        );
        self.0.union_with(&other.0);
    }

    pub fn union(&self, other: &StateSet) -> StateSet {
        let mut out = self.clone();
        out.union_with(other);
        out
    }

    pub fn intersection(&self, other: &StateSet) -> StateSet {
        assert_eq!(
            self.universe(),
            other.universe(),
            "state sets over different systems"
        );
        let mut out = self.clone();
        out.0.intersect_with(&other.0);
        out
    }

    pub fn is_subset(&self, other: &StateSet) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn is_disjoint(&self, other: &StateSet) -> bool {
        self.0.is_disjoint(&other.0)
    }
}

impl Extend<usize> for StateSet {
    fn extend<I: IntoIterator<Item = usize>>(&mut self, iter: I) {
        for p in iter {
            self.insert(p);
        }
    }
}

impl fmt::Debug for StateSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}
