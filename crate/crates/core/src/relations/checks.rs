use std::collections::{HashSet, VecDeque};

use crate::lts::{Label, Lts, Word};
use crate::relations::Relation;
use crate::state_set::StateSet;

/// A strong step of the left state that the right state cannot match.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimulationViolation {
    pub pair: (usize, usize),
    pub label: Label,
    pub target: usize,
}

/// A word step of the left state that the right state cannot answer with a
/// swapped pair inside the relation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContrasimViolation {
    pub pair: (usize, usize),
    pub word: Word,
    /// The configuration reached by `word`: a delay-successor of the left
    /// state and `succs(word, {right})`.
    pub configuration: (usize, StateSet),
    /// The left state's internal successor that has no partner.
    pub unmatched: usize,
}

/// Checks that every strong step `p -α-> p'` of a related pair `(p, q)` is
/// matched by a weak step `q ⇒α̂ q'` with `(p', q')` related.
pub fn is_weak_simulation(lts: &Lts, rel: &Relation) -> Result<(), SimulationViolation> {
    for (p, q) in rel.iter() {
        for &(label, target) in lts.outgoing(p) {
            let answers = lts.weak_successors(q, label);
            if !answers.iter().any(|q2| rel.contains(target, q2)) {
                return Err(SimulationViolation {
                    pair: (p, q),
                    label,
                    target,
                });
            }
        }
    }
    Ok(())
}

/// Word form of the weak simulation condition, checked for every word up to
/// `max_word_length` letters (including ε). Exact on acyclic systems when
/// the bound is at least the state count.
pub fn is_weak_simulation_words(lts: &Lts, rel: &Relation, max_word_length: usize) -> bool {
    rel.iter().all(|(p, q)| {
        let mut stack = vec![(lts.singleton(p), lts.singleton(q), 0usize)];
        while let Some((left, right, depth)) = stack.pop() {
            let left_closed = lts.internal_closure(&left);
            let right_closed = lts.internal_closure(&right);
            for p2 in left_closed.iter() {
                if !right_closed.iter().any(|q2| rel.contains(p2, q2)) {
                    return false;
                }
            }
            if depth == max_word_length {
                continue;
            }
            for a in lts.actions() {
                let next_left = lts.delay_step(&left, a);
                if !next_left.is_empty() {
                    stack.push((next_left, lts.delay_step(&right, a), depth + 1));
                }
            }
        }
        true
    })
}

/// A synchronized configuration: a left state reached by `word` and the
/// right-hand set `succs(word, Q)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Configuration {
    pub state: usize,
    pub set: StateSet,
    pub word: Word,
}

/// All configurations reachable from `(p, Q)` where the left side takes a
/// delay step `p1 ⇒a p2` and the right side the set-lifted delay step on
/// the same action. Each configuration carries a shortest witnessing word.
pub fn synchronized_configurations(lts: &Lts, p: usize, set: &StateSet) -> Vec<Configuration> {
    let mut seen: HashSet<(usize, StateSet)> = HashSet::new();
    let mut out = Vec::new();
    let mut queue = VecDeque::new();
    seen.insert((p, set.clone()));
    queue.push_back(Configuration {
        state: p,
        set: set.clone(),
        word: Word::empty(),
    });
    while let Some(conf) = queue.pop_front() {
        for a in lts.actions() {
            let lefts = lts.delay_step(&lts.singleton(conf.state), a);
            if lefts.is_empty() {
                continue;
            }
            let right = lts.delay_step(&conf.set, a);
            for p2 in lefts.iter() {
                if seen.insert((p2, right.clone())) {
                    let mut word = conf.word.clone();
                    word.push(a);
                    queue.push_back(Configuration {
                        state: p2,
                        set: right.clone(),
                        word,
                    });
                }
            }
        }
        out.push(conf);
    }
    out
}

/// Exact contrasimulation check. By the correspondence between weak word
/// steps and `succs`, `p ⇒w p'` holds iff `p'` is in the internal closure
/// of the left state of some configuration reached by `w`, and the right
/// side's answers are exactly the internal closure of that configuration's
/// set.
pub fn is_contrasimulation(lts: &Lts, rel: &Relation) -> Result<(), ContrasimViolation> {
    for (p, q) in rel.iter() {
        for conf in synchronized_configurations(lts, p, &lts.singleton(q)) {
            let answers = lts.internal_closure(&conf.set);
            for p2 in lts.closure_of(conf.state).iter() {
                if !answers.iter().any(|q2| rel.contains(q2, p2)) {
                    return Err(ContrasimViolation {
                        pair: (p, q),
                        word: conf.word,
                        configuration: (conf.state, conf.set),
                        unmatched: p2,
                    });
                }
            }
        }
    }
    Ok(())
}

/// Every related `(p, q)` has some `q ⇒ q'` with `(q', p)` related.
pub fn check_coupling(lts: &Lts, rel: &Relation) -> bool {
    rel.iter()
        .all(|(p, q)| lts.closure_of(q).iter().any(|q2| rel.contains(q2, p)))
}

#[cfg(test)]
mod tests {
    use super::*;

    // 0 = op.(aEats + tau.bEats), 4 = op.bEats
    fn instable_choice() -> Lts {
        Lts::from_named(
            5,
            &[
                (0, "op", 1),
                (1, "aEats", 2),
                (1, "tau", 3),
                (3, "bEats", 2),
                (4, "op", 3),
            ],
        )
        .unwrap()
    }

    #[test]
    fn vacuous_and_identity() {
        let lts = instable_choice();
        let empty = Relation::new();
        let id = Relation::identity(lts.state_count());
        assert!(is_weak_simulation(&lts, &empty).is_ok());
        assert!(is_weak_simulation(&lts, &id).is_ok());
        assert!(is_weak_simulation_words(&lts, &empty, 3));
        assert!(is_weak_simulation_words(&lts, &id, 3));
        assert!(is_contrasimulation(&lts, &empty).is_ok());
        assert!(is_contrasimulation(&lts, &id).is_ok());
        assert!(check_coupling(&lts, &id));
    }

    #[test]
    fn instable_choice_pair_is_no_contrasimulation() {
        let lts = instable_choice();
        let mut rel = Relation::identity(lts.state_count());
        rel.insert(0, 4);
        rel.insert(4, 0);
        let err = is_contrasimulation(&lts, &rel).unwrap_err();
        assert_eq!(err.pair, (0, 4));
        // op leads the left side into state 1 whose closure contains 3; the
        // right side can only answer with 3, and (3, 1) is not related
        assert_eq!(lts.word(&["op"]).unwrap(), err.word);
        assert_eq!(err.configuration, (1, lts.singleton(3)));
        assert_eq!(err.unmatched, 1);
    }

    #[test]
    fn configurations_from_instable_choice() {
        let lts = instable_choice();
        let confs = synchronized_configurations(&lts, 0, &lts.singleton(4));
        let got: Vec<(usize, Vec<usize>)> = confs
            .iter()
            .map(|c| (c.state, c.set.iter().collect()))
            .collect();
        assert_eq!(
            got,
            vec![(0, vec![4]), (1, vec![3]), (2, vec![]), (2, vec![2])]
        );
    }

    #[test]
    fn coupling_needs_return_pair() {
        let lts = instable_choice();
        let one: Relation = [(4, 0)].into_iter().collect();
        assert!(!check_coupling(&lts, &one));
        let two: Relation = [(4, 0), (0, 4)].into_iter().collect();
        assert!(check_coupling(&lts, &two));
    }

    #[test]
    fn weak_simulation_violation_is_reported() {
        let lts = Lts::from_named(3, &[(0, "a", 1)]).unwrap();
        let rel: Relation = [(0, 2)].into_iter().collect();
        let err = is_weak_simulation(&lts, &rel).unwrap_err();
        assert_eq!(err.pair, (0, 2));
        assert_eq!(err.target, 1);
    }
}
