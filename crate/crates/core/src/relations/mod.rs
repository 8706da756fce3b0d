//! Binary relations over the states of one system, coinductive property
//! checkers, and greatest-fixed-point oracles for the standard preorders.

mod checks;
mod oracles;

use std::collections::BTreeSet;

pub use checks::{
    check_coupling, is_contrasimulation, is_weak_simulation, is_weak_simulation_words,
    synchronized_configurations, Configuration, ContrasimViolation, SimulationViolation,
};
pub use oracles::{
    contrasim_preorder_oracle, strong_bisim_oracle, weak_bisim_oracle, weak_sim_oracle,
};

/// A set of state pairs, iterated in sorted order.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Relation(BTreeSet<(usize, usize)>);

impl Relation {
    pub fn new() -> Self {
        Relation(BTreeSet::new())
    }

    pub fn identity(state_count: usize) -> Self {
        (0..state_count).map(|p| (p, p)).collect()
    }

    pub fn insert(&mut self, p: usize, q: usize) -> bool {
        self.0.insert((p, q))
    }

    pub fn contains(&self, p: usize, q: usize) -> bool {
        self.0.contains(&(p, q))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.0.iter().copied()
    }

    pub fn inverse(&self) -> Relation {
        self.iter().map(|(p, q)| (q, p)).collect()
    }

    pub fn union(&self, other: &Relation) -> Relation {
        self.0.union(&other.0).copied().collect()
    }

    pub fn intersection(&self, other: &Relation) -> Relation {
        self.0.intersection(&other.0).copied().collect()
    }

    pub fn is_subset(&self, other: &Relation) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn is_symmetric(&self) -> bool {
        self.iter().all(|(p, q)| self.contains(q, p))
    }

    pub fn is_reflexive_on(&self, state_count: usize) -> bool {
        (0..state_count).all(|p| self.contains(p, p))
    }

    /// Relational composition `self ; other`.
    pub fn compose(&self, other: &Relation) -> Relation {
        let mut out = Relation::new();
        for (p, q) in self.iter() {
            for (_, r) in other.0.range((q, 0)..=(q, usize::MAX)) {
                out.insert(p, *r);
            }
        }
        out
    }

    /// Pairs whose indices are not all below `state_count`.
    pub fn out_of_range(&self, state_count: usize) -> Option<(usize, usize)> {
        self.iter()
            .find(|&(p, q)| p >= state_count || q >= state_count)
    }
}

impl FromIterator<(usize, usize)> for Relation {
    fn from_iter<I: IntoIterator<Item = (usize, usize)>>(iter: I) -> Self {
        Relation(iter.into_iter().collect())
    }
}

impl Extend<(usize, usize)> for Relation {
    fn extend<I: IntoIterator<Item = (usize, usize)>>(&mut self, iter: I) {
        self.0.extend(iter);
    }
}

/// The interleaved concatenation `R1;R2 ∪ R2;R1`.
pub fn transitive_compose(r1: &Relation, r2: &Relation) -> Relation {
    r1.compose(r2).union(&r2.compose(r1))
}
