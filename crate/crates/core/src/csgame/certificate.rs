use std::collections::VecDeque;

use crate::csgame::{CsGame, CsGameError, CsPosition};
use crate::game::{Player, PositionalStrategy};
use crate::relations::Relation;

/// Reads a contrasimulation off a defender strategy that wins from the
/// game's initial position `(p0, {q0})`.
///
/// The result holds `(p0, q0)` plus every pair `(q, p)` such that
/// `(q, {p})_a` is entered by a swap answer in some play consistent with the
/// strategy.
pub fn extract_contrasimulation(
    game: &CsGame,
    strategy: &PositionalStrategy,
) -> Result<Relation, CsGameError> {
    if strategy.player() != Player::Defender {
        return Err(CsGameError::NotDefenderStrategy);
    }
    let graph = game.graph();
    let initial = game.initial();
    let mut rel = Relation::new();
    if let CsPosition::Attacker { state, set } = game.position(initial) {
        if set.len() == 1 {
            rel.insert(*state, set.first().expect("nonempty"));
        }
    }

    let mut seen = vec![false; graph.position_count()];
    let mut queue = VecDeque::from([initial]);
    seen[initial] = true;
    while let Some(g) = queue.pop_front() {
        let next: Vec<usize> = match graph.owner(g) {
            Player::Attacker => graph.moves(g).to_vec(),
            Player::Defender => {
                let t = strategy.get(g).ok_or(CsGameError::StrategyNotWinning(g))?;
                if let (CsPosition::Swap { .. }, CsPosition::Attacker { state, set }) =
                    (game.position(g), game.position(t))
                {
                    rel.insert(*state, set.first().expect("swap answers are singletons"));
                }
                vec![t]
            }
        };
        for t in next {
            if !seen[t] {
                seen[t] = true;
                queue.push_back(t);
            }
        }
    }
    Ok(rel)
}
