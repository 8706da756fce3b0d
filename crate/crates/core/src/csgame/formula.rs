//! Distinguishing formulas in the Hennessy–Milner fragment that alternates
//! internal-step modalities `<e>` with observations and negated
//! disjunctions.
//!
//! Text syntax: `T` is truth, `<e><a>φ` a delayed observation of `a`, and
//! `<e>~(φ1|φ2|…)` a delayed nor (`<e>~()` for the empty nor).

use std::collections::HashMap;
use std::fmt;

use crate::csgame::{CsGame, CsGameError, CsPosition};
use crate::game::{Player, Solution};
use crate::lts::{ActionId, Lts};
use crate::state_set::StateSet;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum HmlFormula {
    Truth,
    /// `⟨ε⟩⟨a⟩φ`
    DelayObs(ActionId, Box<HmlFormula>),
    /// `⟨ε⟩¬(φ1 ∨ … ∨ φk)`
    DelayNor(Vec<HmlFormula>),
}

impl HmlFormula {
    pub fn obs(a: ActionId, body: HmlFormula) -> Self {
        HmlFormula::DelayObs(a, Box::new(body))
    }

    /// Number of nodes in the formula tree.
    pub fn size(&self) -> usize {
        match self {
            HmlFormula::Truth => 1,
            HmlFormula::DelayObs(_, body) => 1 + body.size(),
            HmlFormula::DelayNor(branches) => {
                1 + branches.iter().map(HmlFormula::size).sum::<usize>()
            }
        }
    }

    pub fn display<'a>(&'a self, lts: &'a Lts) -> FormulaDisplay<'a> {
        FormulaDisplay { formula: self, lts }
    }

    /// Parses the text syntax, resolving action names against `lts`.
    pub fn parse(text: &str, lts: &Lts) -> Result<HmlFormula, FormulaParseError> {
        let mut parser = Parser {
            src: text.as_bytes(),
            pos: 0,
            lts,
        };
        let f = parser.formula()?;
        parser.skip_ws();
        if parser.pos != parser.src.len() {
            return Err(parser.error("trailing input"));
        }
        Ok(f)
    }
}

pub struct FormulaDisplay<'a> {
    formula: &'a HmlFormula,
    lts: &'a Lts,
}

impl fmt::Display for FormulaDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.formula {
            HmlFormula::Truth => f.write_str("T"),
            HmlFormula::DelayObs(a, body) => {
                write!(
                    f,
                    "<e><{}>{}",
                    self.lts.action_name(*a),
                    body.display(self.lts)
                )
            }
            HmlFormula::DelayNor(branches) => {
                f.write_str("<e>~(")?;
                for (i, b) in branches.iter().enumerate() {
                    if i > 0 {
                        f.write_str("|")?;
                    }
                    write!(f, "{}", b.display(self.lts))?;
                }
                f.write_str(")")
            }
        }
    }
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
#[error("formula parse error at byte {position}: {message}")]
pub struct FormulaParseError {
    pub position: usize,
    pub message: String,
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    lts: &'a Lts,
}

impl Parser<'_> {
    fn error(&self, message: impl Into<String>) -> FormulaParseError {
        FormulaParseError {
            position: self.pos,
            message: message.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.src.get(self.pos).is_some_and(u8::is_ascii_whitespace) {
            self.pos += 1;
        }
    }

    fn eat(&mut self, token: &str) -> bool {
        self.skip_ws();
        if self.src[self.pos..].starts_with(token.as_bytes()) {
            self.pos += token.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, token: &str) -> Result<(), FormulaParseError> {
        if self.eat(token) {
            Ok(())
        } else {
            Err(self.error(format!("expected `{token}`")))
        }
    }

    fn formula(&mut self) -> Result<HmlFormula, FormulaParseError> {
        if self.eat("T") {
            return Ok(HmlFormula::Truth);
        }
        self.expect("<e>")?;
        if self.eat("~") {
            self.expect("(")?;
            let mut branches = Vec::new();
            if !self.eat(")") {
                loop {
                    branches.push(self.formula()?);
                    if self.eat(")") {
                        break;
                    }
                    self.expect("|")?;
                }
            }
            return Ok(HmlFormula::DelayNor(branches));
        }
        self.expect("<")?;
        let start = self.pos;
        while self.src.get(self.pos).is_some_and(|&c| c != b'>') {
            self.pos += 1;
        }
        let name = std::str::from_utf8(&self.src[start..self.pos])
            .map_err(|_| self.error("invalid utf-8"))?;
        let action = self
            .lts
            .action(name.trim())
            .ok_or_else(|| FormulaParseError {
                position: start,
                message: format!("unknown action `{name}`"),
            })?;
        self.expect(">")?;
        Ok(HmlFormula::obs(action, self.formula()?))
    }
}

/// The set of states satisfying `formula`, computed bottom-up.
pub fn satisfying_states(lts: &Lts, formula: &HmlFormula) -> StateSet {
    match formula {
        HmlFormula::Truth => StateSet::full(lts.state_count()),
        HmlFormula::DelayObs(a, body) => {
            let inner = satisfying_states(lts, body);
            let mut out = lts.empty_set();
            for s in lts.states() {
                if !lts.delay_step(&lts.singleton(s), *a).is_disjoint(&inner) {
                    out.insert(s);
                }
            }
            out
        }
        HmlFormula::DelayNor(branches) => {
            let mut any = lts.empty_set();
            for b in branches {
                any.union_with(&satisfying_states(lts, b));
            }
            let mut out = lts.empty_set();
            for s in lts.states() {
                if lts.closure_of(s).iter().any(|t| !any.contains(t)) {
                    out.insert(s);
                }
            }
            out
        }
    }
}

pub fn hml_satisfies(lts: &Lts, state: usize, formula: &HmlFormula) -> bool {
    satisfying_states(lts, formula).contains(state)
}

/// Follows the attacker's winning strategy from an attacker-won position
/// `(p, Q)`: a simulation challenge becomes a delayed observation, a swap
/// challenge a delayed nor over the formulas for every defender answer.
/// The result holds at `p` and fails at every member of `Q`.
pub fn extract_distinguishing_formula(
    game: &CsGame,
    solution: &Solution,
    position: usize,
) -> Result<HmlFormula, CsGameError> {
    if !matches!(game.position(position), CsPosition::Attacker { .. }) {
        return Err(CsGameError::NotAttackerPosition(position));
    }
    if solution.winner(position) != Player::Attacker {
        return Err(CsGameError::DefenderWins(position));
    }
    let mut memo = HashMap::new();
    Ok(formula_at(game, solution, position, &mut memo))
}

fn formula_at(
    game: &CsGame,
    solution: &Solution,
    g: usize,
    memo: &mut HashMap<usize, HmlFormula>,
) -> HmlFormula {
    if let Some(f) = memo.get(&g) {
        return f.clone();
    }
    let graph = game.graph();
    let challenge = solution
        .attacker_strategy
        .get(g)
        .expect("attacker-won attacker positions have a strategy move");
    let f = match game.position(challenge) {
        CsPosition::Sim { action, .. } => {
            let answer = graph.moves(challenge)[0];
            HmlFormula::obs(*action, formula_at(game, solution, answer, memo))
        }
        CsPosition::Swap { .. } => HmlFormula::DelayNor(
            graph
                .moves(challenge)
                .iter()
                .map(|&answer| formula_at(game, solution, answer, memo))
                .collect(),
        ),
        CsPosition::Attacker { .. } => unreachable!("attacker moves lead to defender positions"),
    };
    memo.insert(g, f.clone());
    f
}
