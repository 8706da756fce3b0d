//! Simple reachability games: the attacker wins exactly the plays in which
//! the defender gets stuck; infinite plays go to the defender.

use std::collections::VecDeque;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Player {
    Attacker,
    Defender,
}

impl Player {
    pub fn opponent(self) -> Player {
        match self {
            Player::Attacker => Player::Defender,
            Player::Defender => Player::Attacker,
        }
    }
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum GameError {
    #[error("move target {target} out of range ({positions} positions)")]
    TargetOutOfRange { target: usize, positions: usize },
    #[error("owner and move tables differ in length ({owners} vs {moves})")]
    SizeMismatch { owners: usize, moves: usize },
    #[error("initial position {0} out of range")]
    InitialOutOfRange(usize),
    #[error("illegal move {from} -> {to}")]
    IllegalMove { from: usize, to: usize },
    #[error("strategy undefined at position {0} which still has moves")]
    StrategyUndefined(usize),
}

/// A finite game graph with an owner per position.
#[derive(Clone, Debug)]
pub struct GameGraph {
    owner: Vec<Player>,
    moves: Vec<Vec<usize>>,
    initial: usize,
}

impl GameGraph {
    pub fn new(
        owner: Vec<Player>,
        moves: Vec<Vec<usize>>,
        initial: usize,
    ) -> Result<Self, GameError> {
        if owner.len() != moves.len() {
            return Err(GameError::SizeMismatch {
                owners: owner.len(),
                moves: moves.len(),
            });
        }
        let n = owner.len();
        if initial >= n && n > 0 {
            return Err(GameError::InitialOutOfRange(initial));
        }
        if let Some(&target) = moves.iter().flatten().find(|&&t| t >= n) {
            return Err(GameError::TargetOutOfRange {
                target,
                positions: n,
            });
        }
        Ok(GameGraph {
            owner,
            moves,
            initial,
        })
    }

    pub fn position_count(&self) -> usize {
        self.owner.len()
    }

    pub fn move_count(&self) -> usize {
        self.moves.iter().map(Vec::len).sum()
    }

    pub fn owner(&self, g: usize) -> Player {
        self.owner[g]
    }

    pub fn moves(&self, g: usize) -> &[usize] {
        &self.moves[g]
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    pub fn is_move(&self, from: usize, to: usize) -> bool {
        self.moves.get(from).is_some_and(|m| m.contains(&to))
    }
}

/// A memoryless strategy: at most one chosen successor per position.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PositionalStrategy {
    player: Player,
    choice: Vec<Option<usize>>,
}

impl PositionalStrategy {
    pub fn empty(player: Player, positions: usize) -> Self {
        PositionalStrategy {
            player,
            choice: vec![None; positions],
        }
    }

    pub fn player(&self) -> Player {
        self.player
    }

    pub fn get(&self, g: usize) -> Option<usize> {
        self.choice.get(g).copied().flatten()
    }

    pub fn set(&mut self, g: usize, target: usize) {
        self.choice[g] = Some(target);
    }

    pub fn defined_count(&self) -> usize {
        self.choice.iter().flatten().count()
    }

    /// Checks that choices sit on the player's own positions and are moves.
    pub fn is_valid_for(&self, graph: &GameGraph) -> bool {
        self.choice.len() == graph.position_count()
            && self.choice.iter().enumerate().all(|(g, c)| match c {
                None => true,
                Some(t) => graph.owner(g) == self.player && graph.is_move(g, *t),
            })
    }
}

/// Output of [`solve`].
#[derive(Clone, Debug)]
pub struct Solution {
    pub winner: Vec<Player>,
    pub attacker_strategy: PositionalStrategy,
    pub defender_strategy: PositionalStrategy,
    /// Attractor level for attacker-won positions; `None` (∞) elsewhere.
    pub attacker_rank: Vec<Option<u32>>,
}

impl Solution {
    pub fn winner(&self, g: usize) -> Player {
        self.winner[g]
    }

    pub fn rank(&self, g: usize) -> Option<u32> {
        self.attacker_rank[g]
    }
}

/// Computes the winning regions in time linear in the number of moves.
///
/// Stuck defender positions have rank 0. An attacker position enters one
/// level after its first attacker-won successor, a defender position one
/// level after its last one, so ranks strictly decrease along the attacker
/// strategy and along every defender move inside the attacker region.
pub fn solve(graph: &GameGraph) -> Solution {
    let n = graph.position_count();
    let mut predecessors = vec![Vec::new(); n];
    for g in 0..n {
        for &t in graph.moves(g) {
            predecessors[t].push(g);
        }
    }
    let mut remaining: Vec<usize> = (0..n).map(|g| graph.moves(g).len()).collect();
    let mut rank: Vec<Option<u32>> = vec![None; n];
    let mut attacker_strategy = PositionalStrategy::empty(Player::Attacker, n);

    let mut queue = VecDeque::new();
    for g in 0..n {
        if graph.owner(g) == Player::Defender && remaining[g] == 0 {
            rank[g] = Some(0);
            queue.push_back(g);
        }
    }
    // FIFO order processes positions by nondecreasing rank.
    while let Some(won) = queue.pop_front() {
        let r = rank[won].expect("queued positions are ranked") + 1;
        for &pred in &predecessors[won] {
            if rank[pred].is_some() {
                continue;
            }
            match graph.owner(pred) {
                Player::Attacker => {
                    rank[pred] = Some(r);
                    attacker_strategy.set(pred, won);
                    queue.push_back(pred);
                }
                Player::Defender => {
                    remaining[pred] -= 1;
                    if remaining[pred] == 0 {
                        rank[pred] = Some(r);
                        queue.push_back(pred);
                    }
                }
            }
        }
    }

    let winner: Vec<Player> = rank
        .iter()
        .map(|r| {
            if r.is_some() {
                Player::Attacker
            } else {
                Player::Defender
            }
        })
        .collect();
    let mut defender_strategy = PositionalStrategy::empty(Player::Defender, n);
    for g in 0..n {
        if graph.owner(g) == Player::Defender && winner[g] == Player::Defender {
            if let Some(&t) = graph
                .moves(g)
                .iter()
                .filter(|&&t| winner[t] == Player::Defender)
                .min()
            {
                defender_strategy.set(g, t);
            }
        }
    }
    // Attacker choices are made against the predecessor list order; normalise
    // to the lowest-index successor of minimal rank.
    for g in 0..n {
        if graph.owner(g) == Player::Attacker {
            if let Some(r) = rank[g] {
                let best = graph
                    .moves(g)
                    .iter()
                    .copied()
                    .filter(|&t| rank[t] == Some(r - 1))
                    .min()
                    .expect("ranked attacker position has a witness");
                attacker_strategy.set(g, best);
            }
        }
    }

    Solution {
        winner,
        attacker_strategy,
        defender_strategy,
        attacker_rank: rank,
    }
}

/// A finite prefix of a play, as a sequence of positions.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Play(pub Vec<usize>);

impl Play {
    pub fn positions(&self) -> &[usize] {
        &self.0
    }

    pub fn last(&self) -> Option<usize> {
        self.0.last().copied()
    }
}

/// Whether `play` starts at the initial position, follows moves, and obeys
/// `strategy` wherever it is defined for the positions of its player.
pub fn validate_play(graph: &GameGraph, play: &Play, strategy: &PositionalStrategy) -> bool {
    let Some(&first) = play.0.first() else {
        return false;
    };
    if first != graph.initial() {
        return false;
    }
    play.0.windows(2).all(|w| {
        let (from, to) = (w[0], w[1]);
        if from >= graph.position_count() || !graph.is_move(from, to) {
            return false;
        }
        match strategy.get(from) {
            Some(chosen) if graph.owner(from) == strategy.player() => chosen == to,
            _ => true,
        }
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    DefenderStuck,
    AttackerStuck,
    /// No one got stuck within the step budget. Evidence of a defender win,
    /// not a proof.
    BudgetReached,
}

/// Plays `strategy` for its owner against `adversary` for the other player,
/// starting at the initial position. The adversary gets the current position
/// and its successors and returns the chosen target.
pub fn simulate_play<F>(
    graph: &GameGraph,
    strategy: &PositionalStrategy,
    mut adversary: F,
    max_steps: usize,
) -> Result<(Play, Outcome), GameError>
where
    F: FnMut(usize, &[usize]) -> usize,
{
    let mut current = graph.initial();
    let mut play = Play(vec![current]);
    for _ in 0..max_steps {
        let moves = graph.moves(current);
        let owner = graph.owner(current);
        if moves.is_empty() {
            let outcome = match owner {
                Player::Defender => Outcome::DefenderStuck,
                Player::Attacker => Outcome::AttackerStuck,
            };
            return Ok((play, outcome));
        }
        let next = if owner == strategy.player() {
            strategy
                .get(current)
                .ok_or(GameError::StrategyUndefined(current))?
        } else {
            adversary(current, moves)
        };
        if !moves.contains(&next) {
            return Err(GameError::IllegalMove {
                from: current,
                to: next,
            });
        }
        play.0.push(next);
        current = next;
    }
    let outcome = match (graph.moves(current).is_empty(), graph.owner(current)) {
        (true, Player::Defender) => Outcome::DefenderStuck,
        (true, Player::Attacker) => Outcome::AttackerStuck,
        _ => Outcome::BudgetReached,
    };
    Ok((play, outcome))
}
