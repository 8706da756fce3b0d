//! Comparison procedures that approximate the set game: the single-step
//! shortcut (unsound for `≼_C`) and the word game with bounded challenges.

use std::collections::{HashMap, HashSet, VecDeque};

use crate::game::{solve, GameGraph, Player};
use crate::lts::{Label, Lts};
use crate::relations::Relation;
use crate::state_set::StateSet;

/// Greatest relation with: `(p, q)` kept iff every weak step `p ⇒α̂ p'`
/// (α ranging over visible actions and τ) has a weak step `q ⇒α̂ q'` with
/// `(q', p')` kept.
pub fn naive_single_step_relation(lts: &Lts) -> Relation {
    let n = lts.state_count();
    let labels: Vec<Label> = std::iter::once(Label::Tau)
        .chain(lts.actions().map(Label::Visible))
        .collect();
    let weak: Vec<Vec<StateSet>> = lts
        .states()
        .map(|p| labels.iter().map(|&l| lts.weak_successors(p, l)).collect())
        .collect();
    let mut rel = vec![true; n * n];
    loop {
        let mut changed = false;
        for p in 0..n {
            for q in 0..n {
                if !rel[p * n + q] {
                    continue;
                }
                let ok = (0..labels.len()).all(|l| {
                    weak[p][l]
                        .iter()
                        .all(|p2| weak[q][l].iter().any(|q2| rel[q2 * n + p2]))
                });
                if !ok {
                    rel[p * n + q] = false;
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
    (0..n * n)
        .filter(|&i| rel[i])
        .map(|i| (i / n, i % n))
        .collect()
}

/// The single-step shortcut of contrasimulation. Deliberately unsound: it
/// can relate states that are not even weakly trace equivalent.
pub fn naive_single_step_preorder(lts: &Lts, p: usize, q: usize) -> bool {
    naive_single_step_relation(lts).contains(p, q)
}

#[derive(Clone, PartialEq, Eq, Hash)]
enum WordPos {
    Attacker(usize, usize),
    /// The attacker reached `p'` by some word; the defender must pick one of
    /// the states that word leads to from its own side.
    Challenge(usize, StateSet),
}

/// Solves the basic word game in which the attacker, at `(p, q)`, names a
/// word of at most `max_word_length` letters and a `p'` with `p ⇒w p'`, the
/// defender answers with `q ⇒w q'`, and play continues from `(q', p')`.
///
/// Exact on acyclic systems once the bound reaches the state count;
/// otherwise it over-approximates `≼_C`. A bound of 0 allows only ε.
pub fn bounded_word_game_preorder(lts: &Lts, p: usize, q: usize, max_word_length: usize) -> bool {
    let mut positions = vec![WordPos::Attacker(p, q)];
    let mut index: HashMap<WordPos, usize> = HashMap::from([(positions[0].clone(), 0)]);
    let mut moves: Vec<Vec<usize>> = vec![Vec::new()];
    let mut queue = VecDeque::from([0usize]);

    while let Some(g) = queue.pop_front() {
        let succ = match &positions[g] {
            WordPos::Attacker(p, q) => word_challenges(lts, *p, *q, max_word_length),
            WordPos::Challenge(p2, answers) => answers
                .iter()
                .map(|q2| WordPos::Attacker(q2, *p2))
                .collect(),
        };
        let mut targets = Vec::with_capacity(succ.len());
        for pos in succ {
            let t = *index.entry(pos.clone()).or_insert_with(|| {
                positions.push(pos);
                moves.push(Vec::new());
                queue.push_back(positions.len() - 1);
                positions.len() - 1
            });
            targets.push(t);
        }
        moves[g] = targets;
    }
    let owner = positions
        .iter()
        .map(|p| match p {
            WordPos::Attacker(..) => Player::Attacker,
            WordPos::Challenge(..) => Player::Defender,
        })
        .collect();
    let graph = GameGraph::new(owner, moves, 0).expect("targets are interned positions");
    solve(&graph).winner(0) == Player::Defender
}

fn word_challenges(lts: &Lts, p: usize, q: usize, max_word_length: usize) -> Vec<WordPos> {
    let mut out = Vec::new();
    let mut emitted = HashSet::new();
    let mut seen = HashSet::new();
    let mut frontier = vec![(lts.singleton(p), lts.singleton(q))];
    seen.insert(frontier[0].clone());
    for depth in 0..=max_word_length {
        let mut next = Vec::new();
        for (left, right) in &frontier {
            let answers = lts.internal_closure(right);
            for p2 in lts.internal_closure(left).iter() {
                let pos = WordPos::Challenge(p2, answers.clone());
                if emitted.insert(pos.clone()) {
                    out.push(pos);
                }
            }
            if depth == max_word_length {
                continue;
            }
            for a in lts.actions() {
                let l2 = lts.delay_step(left, a);
                if l2.is_empty() {
                    continue;
                }
                let pair = (l2, lts.delay_step(right, a));
                if seen.insert(pair.clone()) {
                    next.push(pair);
                }
            }
        }
        frontier = next;
    }
    out
}
