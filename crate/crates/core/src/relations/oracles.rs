//! Greatest fixed points by naive pair deletion from `S × S`.

use crate::lts::{Label, Lts};
use crate::relations::checks::synchronized_configurations;
use crate::relations::Relation;
use crate::state_set::StateSet;

struct PairMatrix {
    n: usize,
    bits: Vec<bool>,
}

impl PairMatrix {
    fn full(n: usize) -> Self {
        PairMatrix {
            n,
            bits: vec![true; n * n],
        }
    }

    fn get(&self, p: usize, q: usize) -> bool {
        self.bits[p * self.n + q]
    }

    fn into_relation(self) -> Relation {
        let n = self.n;
        self.bits
            .into_iter()
            .enumerate()
            .filter(|&(_, b)| b)
            .map(|(i, _)| (i / n, i % n))
            .collect()
    }
}

fn greatest_fixpoint(n: usize, keep: impl Fn(&PairMatrix, usize, usize) -> bool) -> Relation {
    let mut rel = PairMatrix::full(n);
    loop {
        let mut changed = false;
        for p in 0..n {
            for q in 0..n {
                if rel.get(p, q) && !keep(&rel, p, q) {
                    rel.bits[p * n + q] = false;
                    changed = true;
                }
            }
        }
        if !changed {
            return rel.into_relation();
        }
    }
}

fn all_labels(lts: &Lts) -> Vec<Label> {
    std::iter::once(Label::Tau)
        .chain(lts.actions().map(Label::Visible))
        .collect()
}

/// `weak[p][label]` = `{q | p ⇒α̂ q}`.
fn weak_table(lts: &Lts) -> Vec<Vec<StateSet>> {
    let labels = all_labels(lts);
    lts.states()
        .map(|p| labels.iter().map(|&l| lts.weak_successors(p, l)).collect())
        .collect()
}

fn label_slot(label: Label) -> usize {
    match label {
        Label::Tau => 0,
        Label::Visible(a) => a.index() + 1,
    }
}

/// The weak simulation preorder `≼_WS`.
pub fn weak_sim_oracle(lts: &Lts) -> Relation {
    let weak = weak_table(lts);
    greatest_fixpoint(lts.state_count(), |rel, p, q| {
        lts.outgoing(p)
            .iter()
            .all(|&(label, p2)| weak[q][label_slot(label)].iter().any(|q2| rel.get(p2, q2)))
    })
}

/// Weak bisimilarity: the greatest symmetric weak simulation.
pub fn weak_bisim_oracle(lts: &Lts) -> Relation {
    let weak = weak_table(lts);
    greatest_fixpoint(lts.state_count(), |rel, p, q| {
        lts.outgoing(p)
            .iter()
            .all(|&(label, p2)| weak[q][label_slot(label)].iter().any(|q2| rel.get(p2, q2)))
            && lts
                .outgoing(q)
                .iter()
                .all(|&(label, q2)| weak[p][label_slot(label)].iter().any(|p2| rel.get(p2, q2)))
    })
}

/// Strong bisimilarity, with τ treated as an ordinary action.
pub fn strong_bisim_oracle(lts: &Lts) -> Relation {
    greatest_fixpoint(lts.state_count(), |rel, p, q| {
        lts.outgoing(p).iter().all(|&(label, p2)| {
            lts.outgoing(q)
                .iter()
                .any(|&(l, q2)| l == label && rel.get(p2, q2))
        }) && lts.outgoing(q).iter().all(|&(label, q2)| {
            lts.outgoing(p)
                .iter()
                .any(|&(l, p2)| l == label && rel.get(p2, q2))
        })
    })
}

/// The contrasimulation preorder `≼_C`, as the greatest relation in which
/// every related pair satisfies the configuration condition of
/// [`is_contrasimulation`](crate::relations::is_contrasimulation).
pub fn contrasim_preorder_oracle(lts: &Lts) -> Relation {
    let n = lts.state_count();
    // For each pair: the (left state, answer candidates) obligations.
    let obligations: Vec<Vec<(usize, StateSet)>> = (0..n * n)
        .map(|i| {
            let (p, q) = (i / n, i % n);
            let mut obs: Vec<(usize, StateSet)> =
                synchronized_configurations(lts, p, &lts.singleton(q))
                    .into_iter()
                    .flat_map(|conf| {
                        let answers = lts.internal_closure(&conf.set);
                        lts.closure_of(conf.state)
                            .iter()
                            .map(move |p2| (p2, answers.clone()))
                            .collect::<Vec<_>>()
                    })
                    .collect();
            obs.sort();
            obs.dedup();
            obs
        })
        .collect();
    greatest_fixpoint(n, |rel, p, q| {
        obligations[p * n + q]
            .iter()
            .all(|(p2, answers)| answers.iter().any(|q2| rel.get(q2, *p2)))
    })
}
