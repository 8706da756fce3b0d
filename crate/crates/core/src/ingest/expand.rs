use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};
use std::rc::Rc;

use crate::ingest::ccs::{CcsAction, CcsError, CcsProgram, CcsTerm};
use crate::lts::{Label, Lts, LtsBuilder};

pub const DEFAULT_MAX_STATES: usize = 10_000;

type TermId = usize;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
enum Act {
    Name(usize),
    CoName(usize),
    Tau,
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
enum Node {
    Nil,
    Prefix(Act, TermId),
    Choice(TermId, TermId),
    Parallel(TermId, TermId),
    Restrict(TermId, Rc<BTreeSet<usize>>),
    Ident(usize),
}

/// Hash-consed terms: structurally equal terms share one id.
struct Arena<'p> {
    program: &'p CcsProgram,
    names: Vec<String>,
    name_ids: HashMap<String, usize>,
    nodes: Vec<Node>,
    ids: HashMap<Node, TermId>,
    bodies: Vec<Option<TermId>>,
    derivations: HashMap<TermId, Rc<Vec<(Act, TermId)>>>,
    in_progress: HashSet<TermId>,
}

impl<'p> Arena<'p> {
    fn new(program: &'p CcsProgram) -> Self {
        Arena {
            program,
            names: Vec::new(),
            name_ids: HashMap::new(),
            nodes: Vec::new(),
            ids: HashMap::new(),
            bodies: vec![None; program.len()],
            derivations: HashMap::new(),
            in_progress: HashSet::new(),
        }
    }

    fn name(&mut self, n: &str) -> usize {
        if let Some(&id) = self.name_ids.get(n) {
            return id;
        }
        self.names.push(n.to_owned());
        self.name_ids.insert(n.to_owned(), self.names.len() - 1);
        self.names.len() - 1
    }

    fn intern(&mut self, node: Node) -> TermId {
        if let Some(&id) = self.ids.get(&node) {
            return id;
        }
        self.nodes.push(node.clone());
        self.ids.insert(node, self.nodes.len() - 1);
        self.nodes.len() - 1
    }

    fn def_index(&self, name: &str) -> usize {
        self.program
            .names()
            .position(|n| n == name)
            .expect("programs only contain resolved identifiers")
    }

    fn lower(&mut self, term: &CcsTerm) -> TermId {
        let node = match term {
            CcsTerm::Nil => Node::Nil,
            CcsTerm::Prefix(a, t) => {
                let a = match a {
                    CcsAction::Name(n) => Act::Name(self.name(n)),
                    CcsAction::CoName(n) => Act::CoName(self.name(n)),
                    CcsAction::Tau => Act::Tau,
                };
                Node::Prefix(a, self.lower(t))
            }
            CcsTerm::Choice(l, r) => Node::Choice(self.lower(l), self.lower(r)),
            CcsTerm::Parallel(l, r) => Node::Parallel(self.lower(l), self.lower(r)),
            CcsTerm::Restrict(t, names) => {
                let inner = self.lower(t);
                let set = names.iter().map(|n| self.name(n)).collect();
                Node::Restrict(inner, Rc::new(set))
            }
            CcsTerm::Ident(n) => Node::Ident(self.def_index(n)),
        };
        self.intern(node)
    }

    fn body(&mut self, def: usize) -> TermId {
        if let Some(id) = self.bodies[def] {
            return id;
        }
        let program = self.program;
        let id = self.lower(&program.definitions()[def].1);
        self.bodies[def] = Some(id);
        id
    }

    /// Outgoing transitions of `t` by the structural rules.
    fn derive(&mut self, t: TermId) -> Result<Rc<Vec<(Act, TermId)>>, String> {
        if let Some(d) = self.derivations.get(&t) {
            return Ok(d.clone());
        }
        if !self.in_progress.insert(t) {
            return Err(self.show(t));
        }
        let out = match self.nodes[t].clone() {
            Node::Nil => Vec::new(),
            Node::Prefix(a, cont) => vec![(a, cont)],
            Node::Choice(l, r) => {
                let mut v = self.derive(l)?.to_vec();
                v.extend(self.derive(r)?.iter().copied());
                v
            }
            Node::Parallel(l, r) => {
                let left = self.derive(l)?;
                let right = self.derive(r)?;
                let mut v = Vec::new();
                for &(a, l2) in left.iter() {
                    let s = self.intern(Node::Parallel(l2, r));
                    v.push((a, s));
                }
                for &(a, r2) in right.iter() {
                    let s = self.intern(Node::Parallel(l, r2));
                    v.push((a, s));
                }
                for &(a, l2) in left.iter() {
                    for &(b, r2) in right.iter() {
                        let sync = matches!((a, b), (Act::Name(x), Act::CoName(y)) | (Act::CoName(x), Act::Name(y)) if x == y);
                        if sync {
                            let s = self.intern(Node::Parallel(l2, r2));
                            v.push((Act::Tau, s));
                        }
                    }
                }
                v
            }
            Node::Restrict(inner, names) => {
                let mut v = Vec::new();
                for &(a, t2) in self.derive(inner)?.iter() {
                    let blocked = match a {
                        Act::Name(n) | Act::CoName(n) => names.contains(&n),
                        Act::Tau => false,
                    };
                    if !blocked {
                        let s = self.intern(Node::Restrict(t2, names.clone()));
                        v.push((a, s));
                    }
                }
                v
            }
            Node::Ident(def) => {
                let body = self.body(def);
                self.derive(body)?.to_vec()
            }
        };
        self.in_progress.remove(&t);
        let out = Rc::new(out);
        self.derivations.insert(t, out.clone());
        Ok(out)
    }

    fn raise(&self, t: TermId) -> CcsTerm {
        match &self.nodes[t] {
            Node::Nil => CcsTerm::Nil,
            Node::Prefix(a, cont) => CcsTerm::prefix(self.action(*a), self.raise(*cont)),
            Node::Choice(l, r) => CcsTerm::choice(self.raise(*l), self.raise(*r)),
            Node::Parallel(l, r) => CcsTerm::parallel(self.raise(*l), self.raise(*r)),
            Node::Restrict(inner, names) => CcsTerm::Restrict(
                Box::new(self.raise(*inner)),
                names.iter().map(|&n| self.names[n].clone()).collect(),
            ),
            Node::Ident(def) => CcsTerm::Ident(self.program.definitions()[*def].0.clone()),
        }
    }

    fn show(&self, t: TermId) -> String {
        self.raise(t).to_string()
    }

    fn action(&self, a: Act) -> CcsAction {
        match a {
            Act::Name(n) => CcsAction::Name(self.names[n].clone()),
            Act::CoName(n) => CcsAction::CoName(self.names[n].clone()),
            Act::Tau => CcsAction::Tau,
        }
    }

    fn label_text(&self, a: Act) -> String {
        self.action(a).to_string()
    }
}

/// Expands the process `root` into its reachable state space.
///
/// States are numbered in breadth-first discovery order and named by their
/// term. Co-actions appear as visible labels `'a`.
pub fn expand_ccs(
    program: &CcsProgram,
    root: &str,
    max_states: usize,
) -> Result<(Lts, usize), CcsError> {
    let (lts, initials) = expand_ccs_roots(program, &[root], max_states)?;
    Ok((lts, initials[0]))
}

/// Expands several processes into one shared state space, so that their
/// states can be compared directly. Returns the initial state of each root.
pub fn expand_ccs_roots(
    program: &CcsProgram,
    roots: &[&str],
    max_states: usize,
) -> Result<(Lts, Vec<usize>), CcsError> {
    let mut arena = Arena::new(program);
    let mut state_of: HashMap<TermId, usize> = HashMap::new();
    let mut terms: Vec<TermId> = Vec::new();
    let mut queue = VecDeque::new();
    let budget_error = |unguarded| CcsError::BudgetExceeded {
        budget: max_states,
        unguarded,
    };

    let mut visit = |t: TermId,
                     terms: &mut Vec<TermId>,
                     queue: &mut VecDeque<usize>|
     -> Result<usize, CcsError> {
        if let Some(&s) = state_of.get(&t) {
            return Ok(s);
        }
        if terms.len() >= max_states {
            return Err(budget_error(None));
        }
        terms.push(t);
        state_of.insert(t, terms.len() - 1);
        queue.push_back(terms.len() - 1);
        Ok(terms.len() - 1)
    };

    let mut initials = Vec::with_capacity(roots.len());
    for &root in roots {
        if program.get(root).is_none() {
            return Err(CcsError::UndefinedRoot(root.to_owned()));
        }
        let def = arena.def_index(root);
        let t = arena.intern(Node::Ident(def));
        initials.push(visit(t, &mut terms, &mut queue)?);
    }

    let mut edges = Vec::new();
    while let Some(s) = queue.pop_front() {
        let derived = arena
            .derive(terms[s])
            .map_err(|name| budget_error(Some(name)))?;
        for &(a, t2) in derived.iter() {
            let target = visit(t2, &mut terms, &mut queue)?;
            edges.push((s, a, target));
        }
    }

    let mut builder = LtsBuilder::new(terms.len());
    for (s, &t) in terms.iter().enumerate() {
        builder.set_state_name(s, arena.show(t));
    }
    for (s, a, t) in edges {
        let label = match a {
            Act::Tau => Label::Tau,
            _ => Label::Visible(builder.action(&arena.label_text(a))?),
        };
        builder.add_transition(s, label, t);
    }
    Ok((builder.build()?, initials))
}
