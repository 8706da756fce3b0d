use std::collections::HashSet;

use crate::csgame::{CsGame, CsPosition};
use crate::game::{Player, PositionalStrategy};
use crate::lts::Lts;
use crate::relations::{synchronized_configurations, Relation};
use crate::state_set::StateSet;

/// The attacker positions `F(Ĉ) = {(p', succs(w, {y})) | (x, y) ∈ C, x ⇒w p'}`
/// generated by a relation `C` between single states.
#[derive(Clone, Debug)]
pub struct FcClosure {
    members: HashSet<(usize, StateSet)>,
}

impl FcClosure {
    pub fn new(lts: &Lts, rel: &Relation) -> Self {
        let mut members = HashSet::new();
        for (x, y) in rel.iter() {
            for conf in synchronized_configurations(lts, x, &lts.singleton(y)) {
                for p in lts.closure_of(conf.state).iter() {
                    members.insert((p, conf.set.clone()));
                }
            }
        }
        FcClosure { members }
    }

    pub fn contains(&self, p: usize, set: &StateSet) -> bool {
        self.members.contains(&(p, set.clone()))
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

/// One-shot membership query `(p, Q) ∈ F(Ĉ)`.
pub fn fc_membership(lts: &Lts, rel: &Relation, p: usize, set: &StateSet) -> bool {
    FcClosure::new(lts, rel).contains(p, set)
}

/// The defender strategy that answers simulation challenges with their unique
/// move and swap challenges `Swap(p', Q)` with the lowest `q' ∈ Q⇒` such
/// that `(q', {p'}) ∈ F(Ĉ)`. Left undefined where no such answer exists.
pub fn strategy_from_fc(lts: &Lts, game: &CsGame, rel: &Relation) -> PositionalStrategy {
    let fc = FcClosure::new(lts, rel);
    strategy_from_closure(game, &fc)
}

pub(crate) fn strategy_from_closure(game: &CsGame, fc: &FcClosure) -> PositionalStrategy {
    let graph = game.graph();
    let mut strategy = PositionalStrategy::empty(Player::Defender, graph.position_count());
    for (g, pos) in game.positions().iter().enumerate() {
        match pos {
            CsPosition::Sim { .. } => strategy.set(g, graph.moves(g)[0]),
            CsPosition::Swap { .. } => {
                // answers are generated in increasing state order
                let choice = graph
                    .moves(g)
                    .iter()
                    .copied()
                    .find(|&t| match game.position(t) {
                        CsPosition::Attacker { state, set } => fc.contains(*state, set),
                        _ => false,
                    });
                if let Some(t) = choice {
                    strategy.set(g, t);
                }
            }
            CsPosition::Attacker { .. } => {}
        }
    }
    strategy
}
