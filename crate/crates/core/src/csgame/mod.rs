//! The contrasimulation set game.
//!
//! The attacker challenges from `(p, Q)` either with a delay step
//! `p ⇒a p'` (moving to `Sim(a, p', Q)`) or with an internal move `p ⇒ p'`
//! (moving to `Swap(p', Q)`). The defender answers a simulation challenge
//! deterministically with the set-lifted delay step `Q ⇒a Q'`, and a swap
//! challenge by committing to one `q'` with `Q ⇒ q'`, after which the sides
//! exchange: the next position is `(q', {p'})`.
//!
//! The defender wins from `(p, {q})` exactly when `p ≼_C q`.

mod baselines;
mod certificate;
mod fc;
mod formula;

use std::collections::{HashMap, VecDeque};

pub use baselines::{
    bounded_word_game_preorder, naive_single_step_preorder, naive_single_step_relation,
};
pub use certificate::extract_contrasimulation;
pub use fc::{fc_membership, strategy_from_fc, FcClosure};
pub use formula::{
    extract_distinguishing_formula, hml_satisfies, satisfying_states, FormulaParseError, HmlFormula,
};

use crate::game::{solve, GameGraph, Player, Solution};
use crate::lts::{ActionId, Lts};
use crate::relations::Relation;
use crate::state_set::StateSet;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum CsGameError {
    #[error("position {0} is not an attacker position")]
    NotAttackerPosition(usize),
    #[error("position {0} is won by the defender; no distinguishing formula exists")]
    DefenderWins(usize),
    #[error("the defender strategy is not winning: it is stuck or undefined at position {0}")]
    StrategyNotWinning(usize),
    #[error("expected a defender strategy")]
    NotDefenderStrategy,
}

/// A position of the set game.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CsPosition {
    /// `(p, Q)_a`
    Attacker { state: usize, set: StateSet },
    /// `Sim(a, p, Q)_d`
    Sim {
        action: ActionId,
        state: usize,
        set: StateSet,
    },
    /// `Swap(p, Q)_d`
    Swap { state: usize, set: StateSet },
}

impl CsPosition {
    pub fn attacker(state: usize, set: StateSet) -> Self {
        CsPosition::Attacker { state, set }
    }

    pub fn owner(&self) -> Player {
        match self {
            CsPosition::Attacker { .. } => Player::Attacker,
            CsPosition::Sim { .. } | CsPosition::Swap { .. } => Player::Defender,
        }
    }

    pub fn state(&self) -> usize {
        match self {
            CsPosition::Attacker { state, .. }
            | CsPosition::Sim { state, .. }
            | CsPosition::Swap { state, .. } => *state,
        }
    }

    pub fn set(&self) -> &StateSet {
        match self {
            CsPosition::Attacker { set, .. }
            | CsPosition::Sim { set, .. }
            | CsPosition::Swap { set, .. } => set,
        }
    }

    /// Human-readable label using the system's state and action names.
    pub fn display(&self, lts: &Lts) -> String {
        match self {
            CsPosition::Attacker { state, set } => {
                format!(
                    "({}, {})_a",
                    lts.display_state(*state),
                    lts.display_set(set)
                )
            }
            CsPosition::Sim { action, state, set } => format!(
                "Sim({}, {}, {})_d",
                lts.action_name(*action),
                lts.display_state(*state),
                lts.display_set(set)
            ),
            CsPosition::Swap { state, set } => {
                format!(
                    "Swap({}, {})_d",
                    lts.display_state(*state),
                    lts.display_set(set)
                )
            }
        }
    }
}

/// The moves available at `pos`, in a fixed order: simulation challenges by
/// action then target, swap challenges by target, answers by state index.
pub fn cs_successors(lts: &Lts, pos: &CsPosition) -> Vec<CsPosition> {
    match pos {
        CsPosition::Attacker { state, set } => {
            let mut out = Vec::new();
            let from = lts.singleton(*state);
            for action in lts.actions() {
                for target in lts.delay_step(&from, action).iter() {
                    out.push(CsPosition::Sim {
                        action,
                        state: target,
                        set: set.clone(),
                    });
                }
            }
            for target in lts.closure_of(*state).iter() {
                out.push(CsPosition::Swap {
                    state: target,
                    set: set.clone(),
                });
            }
            out
        }
        CsPosition::Sim { action, state, set } => {
            vec![CsPosition::Attacker {
                state: *state,
                set: lts.delay_step(set, *action),
            }]
        }
        CsPosition::Swap { state, set } => lts
            .internal_closure(set)
            .iter()
            .map(|q| CsPosition::Attacker {
                state: q,
                set: lts.singleton(*state),
            })
            .collect(),
    }
}

/// The part of the set game reachable from one initial position.
#[derive(Clone, Debug)]
pub struct CsGame {
    graph: GameGraph,
    positions: Vec<CsPosition>,
    index: HashMap<CsPosition, usize>,
}

impl CsGame {
    pub fn graph(&self) -> &GameGraph {
        &self.graph
    }

    pub fn positions(&self) -> &[CsPosition] {
        &self.positions
    }

    pub fn position(&self, g: usize) -> &CsPosition {
        &self.positions[g]
    }

    pub fn find(&self, pos: &CsPosition) -> Option<usize> {
        self.index.get(pos).copied()
    }

    pub fn initial(&self) -> usize {
        self.graph.initial()
    }

    pub fn position_count(&self) -> usize {
        self.positions.len()
    }

    pub fn move_count(&self) -> usize {
        self.graph.move_count()
    }

    pub fn labels(&self, lts: &Lts) -> Vec<String> {
        self.positions.iter().map(|p| p.display(lts)).collect()
    }
}

/// Explores the game breadth-first from `(p, {q})_a`, which gets index 0.
pub fn build_reachable_game(lts: &Lts, p: usize, q: usize) -> CsGame {
    let start = CsPosition::attacker(p, lts.singleton(q));
    let mut positions = vec![start.clone()];
    let mut index = HashMap::from([(start, 0usize)]);
    let mut moves: Vec<Vec<usize>> = vec![Vec::new()];
    let mut queue = VecDeque::from([0usize]);
    while let Some(g) = queue.pop_front() {
        let succ = cs_successors(lts, &positions[g]);
        let mut targets = Vec::with_capacity(succ.len());
        for pos in succ {
            let t = match index.get(&pos) {
                Some(&t) => t,
                None => {
                    let t = positions.len();
                    index.insert(pos.clone(), t);
                    positions.push(pos);
                    moves.push(Vec::new());
                    queue.push_back(t);
                    t
                }
            };
            targets.push(t);
        }
        moves[g] = targets;
    }
    let owner = positions.iter().map(CsPosition::owner).collect();
    let graph = GameGraph::new(owner, moves, 0).expect("targets are interned positions");
    CsGame {
        graph,
        positions,
        index,
    }
}

/// Upper bound `(|Act| + 2) · |S| · 2^|S|` on the number of set-game
/// positions, saturating.
pub fn position_bound(lts: &Lts) -> u128 {
    let n = lts.state_count() as u32;
    let subsets = 1u128.checked_shl(n).unwrap_or(u128::MAX);
    ((lts.action_count() as u128) + 2)
        .saturating_mul(n as u128)
        .saturating_mul(subsets)
}

/// A solved set game for one pair of states.
#[derive(Clone, Debug)]
pub struct PreorderCheck {
    pub lhs: usize,
    pub rhs: usize,
    pub game: CsGame,
    pub solution: Solution,
}

/// Evidence for a verdict: a contrasimulation containing the pair when it
/// holds, a formula true at the left and false at the right otherwise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate {
    Relation(Relation),
    Formula(HmlFormula),
}

impl PreorderCheck {
    pub fn holds(&self) -> bool {
        self.solution.winner(self.game.initial()) == Player::Defender
    }

    pub fn certificate(&self) -> Certificate {
        let initial = self.game.initial();
        if self.holds() {
            let rel = extract_contrasimulation(&self.game, &self.solution.defender_strategy)
                .expect("solved defender strategy wins its region");
            Certificate::Relation(rel)
        } else {
            let formula = extract_distinguishing_formula(&self.game, &self.solution, initial)
                .expect("initial position is attacker-won");
            Certificate::Formula(formula)
        }
    }
}

pub fn check_preorder(lts: &Lts, p: usize, q: usize) -> PreorderCheck {
    let game = build_reachable_game(lts, p, q);
    let solution = solve(game.graph());
    PreorderCheck {
        lhs: p,
        rhs: q,
        game,
        solution,
    }
}

/// `p ≼_C q`.
pub fn decide_preorder(lts: &Lts, p: usize, q: usize) -> bool {
    check_preorder(lts, p, q).holds()
}

/// `p ∼_C q`.
pub fn decide_equivalence(lts: &Lts, p: usize, q: usize) -> bool {
    decide_preorder(lts, p, q) && decide_preorder(lts, q, p)
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
    fn single_deadlock_state_game() {
        let lts = Lts::from_named(1, &[]).unwrap();
        let game = build_reachable_game(&lts, 0, 0);
        assert_eq!(game.position_count(), 2);
        assert_eq!(
            game.position(1),
            &CsPosition::Swap {
                state: 0,
                set: lts.singleton(0)
            }
        );
        assert_eq!(game.graph().moves(0), &[1]);
        assert_eq!(game.graph().moves(1), &[0]);
        assert!(decide_preorder(&lts, 0, 0));
    }

    #[test]
    fn successor_shapes() {
        let lts = instable_choice();
        let op = lts.action("op").unwrap();
        let sim = CsPosition::Sim {
            action: op,
            state: 1,
            set: lts.singleton(4),
        };
        assert_eq!(
            cs_successors(&lts, &sim),
            vec![CsPosition::attacker(1, lts.singleton(3))]
        );
        let stuck = CsPosition::Swap {
            state: 1,
            set: lts.empty_set(),
        };
        assert!(cs_successors(&lts, &stuck).is_empty());
        let att = CsPosition::attacker(1, lts.singleton(3));
        let succ = cs_successors(&lts, &att);
        // aEats -> 2, bEats -> 2 (via tau), swaps to 1 and 3
        assert_eq!(succ.len(), 4);
        assert!(succ.iter().all(|p| p.set() == &lts.singleton(3)));
        let swap = CsPosition::Swap {
            state: 2,
            set: lts.singleton(1),
        };
        assert_eq!(
            cs_successors(&lts, &swap),
            vec![
                CsPosition::attacker(1, lts.singleton(2)),
                CsPosition::attacker(3, lts.singleton(2))
            ]
        );
    }

    #[test]
    fn instable_choice_verdicts() {
        let lts = instable_choice();
        assert!(!decide_preorder(&lts, 0, 4));
        assert!(!decide_preorder(&lts, 4, 0));
        assert!(decide_preorder(&lts, 3, 1));
        assert!(!decide_equivalence(&lts, 0, 4));
        for p in lts.states() {
            assert!(decide_equivalence(&lts, p, p));
        }
    }

    #[test]
    fn attacker_positions_never_stuck() {
        let lts = instable_choice();
        for p in lts.states() {
            for q in lts.states() {
                let game = build_reachable_game(&lts, p, q);
                for (g, pos) in game.positions().iter().enumerate() {
                    let moves = game.graph().moves(g);
                    match pos {
                        CsPosition::Attacker { .. } => assert!(!moves.is_empty()),
                        CsPosition::Sim { .. } => assert_eq!(moves.len(), 1),
                        CsPosition::Swap { set, .. } if set.is_empty() => assert!(moves.is_empty()),
                        CsPosition::Swap { .. } => assert!(!moves.is_empty()),
                    }
                }
                assert!(game.position_count() as u128 <= position_bound(&lts));
            }
        }
    }

    #[test]
    fn bound_saturates() {
        let lts = Lts::from_named(200, &[]).unwrap();
        assert_eq!(position_bound(&lts), u128::MAX);
        let small = Lts::from_named(3, &[(0, "a", 1)]).unwrap();
        assert_eq!(position_bound(&small), 3 * 3 * 8);
    }
}
