//! Finite labeled transition systems and their derived step relations.
//!
//! States are dense indices `0..state_count`. Visible actions are interned
//! into [`ActionId`]s; the internal action is [`Label::Tau`]. The internal
//! closure of every state is computed once when the system is built.

use std::collections::HashMap;
use std::fmt;

use crate::state_set::StateSet;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum LtsError {
    #[error("state index {index} out of range (system has {state_count} states)")]
    StateOutOfRange { index: usize, state_count: usize },
    #[error("invalid action name {0:?}: must be nonempty without whitespace or '\"'")]
    InvalidActionName(String),
    #[error("action name {0:?} is reserved for the internal action")]
    ReservedActionName(String),
    #[error("unknown action {0:?}")]
    UnknownAction(String),
    #[error("the internal action is not allowed here; use the internal closure instead")]
    InternalActionNotAllowed,
}

/// Index of a visible action within one [`Lts`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ActionId(u32);

impl ActionId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// A transition label: either a visible action or the internal action τ.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Label {
    Tau,
    Visible(ActionId),
}

impl Label {
    pub fn is_tau(self) -> bool {
        matches!(self, Label::Tau)
    }

    pub fn visible(self) -> Option<ActionId> {
        match self {
            Label::Tau => None,
            Label::Visible(a) => Some(a),
        }
    }
}

/// Names that the `.aut` reader maps onto τ and which therefore cannot name
/// a visible action.
pub const TAU_NAMES: [&str; 2] = ["tau", "i"];

fn validate_action_name(name: &str) -> Result<(), LtsError> {
    if name.is_empty() || name.chars().any(|c| c.is_whitespace() || c == '"') {
        return Err(LtsError::InvalidActionName(name.to_owned()));
    }
    if TAU_NAMES.contains(&name) {
        return Err(LtsError::ReservedActionName(name.to_owned()));
    }
    Ok(())
}

/// A finite sequence of visible actions.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(Vec<ActionId>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letters(&self) -> &[ActionId] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn push(&mut self, a: ActionId) {
        self.0.push(a);
    }

    pub fn pop(&mut self) -> Option<ActionId> {
        self.0.pop()
    }
}

impl FromIterator<ActionId> for Word {
    fn from_iter<I: IntoIterator<Item = ActionId>>(iter: I) -> Self {
        Word(iter.into_iter().collect())
    }
}

/// Incrementally collects actions and transitions for an [`Lts`].
#[derive(Clone, Debug, Default)]
pub struct LtsBuilder {
    state_count: usize,
    actions: Vec<String>,
    action_index: HashMap<String, ActionId>,
    transitions: Vec<(usize, Label, usize)>,
    names: Vec<Option<String>>,
}

impl LtsBuilder {
    pub fn new(state_count: usize) -> Self {
        LtsBuilder {
            state_count,
            names: vec![None; state_count],
            ..Default::default()
        }
    }

    /// Adds a fresh state and returns its index.
    pub fn add_state(&mut self, name: Option<String>) -> usize {
        self.state_count += 1;
        self.names.push(name);
        self.state_count - 1
    }

    pub fn state_count(&self) -> usize {
        self.state_count
    }

    pub fn set_state_name(&mut self, state: usize, name: impl Into<String>) {
        if state >= self.names.len() {
            self.names.resize(state + 1, None);
        }
        self.names[state] = Some(name.into());
    }

    /// Interns a visible action name.
    pub fn action(&mut self, name: &str) -> Result<ActionId, LtsError> {
        if let Some(&id) = self.action_index.get(name) {
            return Ok(id);
        }
        validate_action_name(name)?;
        let id = ActionId(self.actions.len() as u32);
        self.actions.push(name.to_owned());
        self.action_index.insert(name.to_owned(), id);
        Ok(id)
    }

    pub fn add_transition(&mut self, source: usize, label: Label, target: usize) {
        self.transitions.push((source, label, target));
    }

    /// Convenience for `add_transition` with a label given by name; `tau`
    /// (and `i`) denote the internal action.
    pub fn add_named(&mut self, source: usize, label: &str, target: usize) -> Result<(), LtsError> {
        let label = if TAU_NAMES.contains(&label) {
            Label::Tau
        } else {
            Label::Visible(self.action(label)?)
        };
        self.add_transition(source, label, target);
        Ok(())
    }

    pub fn build(self) -> Result<Lts, LtsError> {
        let n = self.state_count;
        for &(s, label, t) in &self.transitions {
            for idx in [s, t] {
                if idx >= n {
                    return Err(LtsError::StateOutOfRange {
                        index: idx,
                        state_count: n,
                    });
                }
            }
            if let Label::Visible(a) = label {
                if a.index() >= self.actions.len() {
                    return Err(LtsError::UnknownAction(format!("#{}", a.index())));
                }
            }
        }
        let mut transitions = self.transitions;
        transitions.sort_unstable();
        transitions.dedup();

        let mut outgoing = vec![Vec::new(); n];
        for &(s, label, t) in &transitions {
            outgoing[s].push((label, t));
        }
        let closure = (0..n).map(|p| tau_reach(n, &outgoing, p)).collect();

        let mut names = self.names;
        names.resize(n, None);
        Ok(Lts {
            state_count: n,
            actions: self.actions,
            action_index: self.action_index,
            transitions,
            outgoing,
            closure,
            names,
        })
    }
}

fn tau_reach(n: usize, outgoing: &[Vec<(Label, usize)>], start: usize) -> StateSet {
    let mut seen = StateSet::singleton(n, start);
    let mut stack = vec![start];
    while let Some(p) = stack.pop() {
        for &(label, t) in &outgoing[p] {
            if label.is_tau() && !seen.contains(t) {
                seen.insert(t);
                stack.push(t);
            }
        }
    }
    seen
}

/// An immutable labeled transition system.
#[derive(Clone, Debug)]
pub struct Lts {
    state_count: usize,
    actions: Vec<String>,
    action_index: HashMap<String, ActionId>,
    transitions: Vec<(usize, Label, usize)>,
    // sorted by label, then target
    outgoing: Vec<Vec<(Label, usize)>>,
    closure: Vec<StateSet>,
    names: Vec<Option<String>>,
}

impl Lts {
    pub fn builder(state_count: usize) -> LtsBuilder {
        LtsBuilder::new(state_count)
    }

    /// Builds a system from `(source, label, target)` triples where labels
    /// are given by name.
    pub fn from_named(state_count: usize, edges: &[(usize, &str, usize)]) -> Result<Lts, LtsError> {
        let mut b = LtsBuilder::new(state_count);
        for &(s, label, t) in edges {
            b.add_named(s, label, t)?;
        }
        b.build()
    }

    pub fn state_count(&self) -> usize {
        self.state_count
    }

    pub fn states(&self) -> std::ops::Range<usize> {
        0..self.state_count
    }

    pub fn action_count(&self) -> usize {
        self.actions.len()
    }

    pub fn actions(&self) -> impl Iterator<Item = ActionId> + '_ {
        (0..self.actions.len() as u32).map(ActionId)
    }

    pub fn action_name(&self, a: ActionId) -> &str {
        &self.actions[a.index()]
    }

    pub fn action(&self, name: &str) -> Option<ActionId> {
        self.action_index.get(name).copied()
    }

    pub fn label_name(&self, label: Label) -> &str {
        match label {
            Label::Tau => "tau",
            Label::Visible(a) => self.action_name(a),
        }
    }

    /// Parses a label name, mapping `tau`/`i` to the internal action.
    pub fn label(&self, name: &str) -> Result<Label, LtsError> {
        if TAU_NAMES.contains(&name) {
            return Ok(Label::Tau);
        }
        self.action(name)
            .map(Label::Visible)
            .ok_or_else(|| LtsError::UnknownAction(name.to_owned()))
    }

    /// Builds a word from action names.
    pub fn word(&self, names: &[&str]) -> Result<Word, LtsError> {
        names
            .iter()
            .map(|n| match self.label(n)? {
                Label::Tau => Err(LtsError::InternalActionNotAllowed),
                Label::Visible(a) => Ok(a),
            })
            .collect()
    }

    /// Sorted, duplicate-free transition list.
    pub fn transitions(&self) -> &[(usize, Label, usize)] {
        &self.transitions
    }

    pub fn transition_count(&self) -> usize {
        self.transitions.len()
    }

    pub fn outgoing(&self, p: usize) -> &[(Label, usize)] {
        &self.outgoing[p]
    }

    pub fn state_name(&self, p: usize) -> Option<&str> {
        self.names.get(p).and_then(|n| n.as_deref())
    }

    /// Display name of a state, falling back to its index.
    pub fn display_state(&self, p: usize) -> String {
        self.state_name(p)
            .map_or_else(|| p.to_string(), str::to_owned)
    }

    /// Looks up a state by display name.
    pub fn find_state(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n.as_deref() == Some(name))
    }

    pub fn check_state(&self, p: usize) -> Result<(), LtsError> {
        if p < self.state_count {
            Ok(())
        } else {
            Err(LtsError::StateOutOfRange {
                index: p,
                state_count: self.state_count,
            })
        }
    }

    pub fn empty_set(&self) -> StateSet {
        StateSet::empty(self.state_count)
    }

    pub fn singleton(&self, p: usize) -> StateSet {
        StateSet::singleton(self.state_count, p)
    }

    pub fn has_tau(&self) -> bool {
        self.transitions.iter().any(|t| t.1.is_tau())
    }

    fn edges_with(&self, p: usize, label: Label) -> impl Iterator<Item = usize> + '_ {
        let out = &self.outgoing[p];
        let start = out.partition_point(|&(l, _)| l < label);
        out[start..]
            .iter()
            .take_while(move |&&(l, _)| l == label)
            .map(|&(_, t)| t)
    }

    /// `{p' | p -α-> p'}`.
    pub fn strong_successors(&self, p: usize, label: Label) -> Result<StateSet, LtsError> {
        self.check_state(p)?;
        let mut out = self.empty_set();
        out.extend(self.edges_with(p, label));
        Ok(out)
    }

    /// States reachable from `p` by zero or more τ-steps.
    pub fn closure_of(&self, p: usize) -> &StateSet {
        &self.closure[p]
    }

    /// `{p' | ∃p ∈ P: p ⇒ p'}`; always a superset of `P`.
    pub fn internal_closure(&self, set: &StateSet) -> StateSet {
        let mut out = set.clone();
        for p in set.iter() {
            out.union_with(&self.closure[p]);
        }
        out
    }

    /// Delay step on sets: `{p' | ∃p ∈ P: p ⇒ -a-> p'}`, with no trailing
    /// internal steps.
    pub fn delay_step(&self, set: &StateSet, a: ActionId) -> StateSet {
        let label = Label::Visible(a);
        let mut out = self.empty_set();
        for p in self.internal_closure(set).iter() {
            out.extend(self.edges_with(p, label));
        }
        out
    }

    /// Checked variant of [`Lts::delay_step`] rejecting the internal action.
    pub fn delay_successors(&self, set: &StateSet, label: Label) -> Result<StateSet, LtsError> {
        match label {
            Label::Tau => Err(LtsError::InternalActionNotAllowed),
            Label::Visible(a) => Ok(self.delay_step(set, a)),
        }
    }

    /// Weak step `p ⇒α̂ p'`: internal closure for τ, otherwise a delay step
    /// followed by the internal closure.
    pub fn weak_successors(&self, p: usize, label: Label) -> StateSet {
        match label {
            Label::Tau => self.closure[p].clone(),
            Label::Visible(a) => self.internal_closure(&self.delay_step(&self.singleton(p), a)),
        }
    }

    /// The word successor function: iterated set-lifted delay steps.
    pub fn succs_word(&self, word: &Word, set: &StateSet) -> StateSet {
        word.letters()
            .iter()
            .fold(set.clone(), |acc, &a| self.delay_step(&acc, a))
    }

    /// Weak word step `p ⇒w p'`, computed as the internal closure of
    /// `succs_word(w, {p})`.
    pub fn weak_word_successors(&self, p: usize, word: &Word) -> StateSet {
        self.internal_closure(&self.succs_word(word, &self.singleton(p)))
    }

    pub fn is_stable(&self, p: usize) -> bool {
        self.edges_with(p, Label::Tau).next().is_none()
    }

    pub fn display_set(&self, set: &StateSet) -> String {
        let names: Vec<String> = set.iter().map(|p| self.display_state(p)).collect();
        format!("{{{}}}", names.join(", "))
    }
}

impl fmt::Display for Lts {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "lts with {} states, {} transitions",
            self.state_count,
            self.transitions.len()
        )?;
        for &(s, label, t) in &self.transitions {
            writeln!(
                f,
                "  {} -{}-> {}",
                self.display_state(s),
                self.label_name(label),
                self.display_state(t)
            )?;
        }
        Ok(())
    }
}
