//! A small CCS surface language.
//!
//! ```text
//! Def  ::= Name "=" Proc ";"
//! Proc ::= "0" | Act "." Proc | Proc "+" Proc | Proc "|" Proc
//!        | Proc "\" "{" Name ("," Name)* "}" | Name | "(" Proc ")"
//! Act  ::= Name | "'" Name | "tau"
//! ```
//!
//! Following Milner, process identifiers start with an uppercase letter and
//! action names do not. An action standing alone abbreviates its prefix on
//! `0`, so `a + 'b` reads as `a.0 + 'b.0`.
//!
//! Prefix binds tightest, then restriction, parallel, and choice; `+` and
//! `|` associate to the left. `#` starts a comment running to end of line.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum CcsError {
    #[error("syntax error at {line}:{column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("unresolved identifier `{name}` in definition of `{within}`")]
    Unresolved { name: String, within: String },
    #[error("duplicate definition of `{0}`")]
    Duplicate(String),
    #[error("no definition named `{0}`")]
    UndefinedRoot(String),
    #[error("expansion exceeded the state budget of {budget}{}", unguarded.as_ref().map(|n| format!(" (unguarded recursion through `{n}`)")).unwrap_or_default())]
    BudgetExceeded {
        budget: usize,
        unguarded: Option<String>,
    },
    #[error(transparent)]
    Lts(#[from] crate::lts::LtsError),
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CcsAction {
    Name(String),
    CoName(String),
    Tau,
}

impl fmt::Display for CcsAction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CcsAction::Name(n) => f.write_str(n),
            CcsAction::CoName(n) => write!(f, "'{n}"),
            CcsAction::Tau => f.write_str("tau"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum CcsTerm {
    Nil,
    Prefix(CcsAction, Box<CcsTerm>),
    Choice(Box<CcsTerm>, Box<CcsTerm>),
    Parallel(Box<CcsTerm>, Box<CcsTerm>),
    Restrict(Box<CcsTerm>, BTreeSet<String>),
    Ident(String),
}

impl CcsTerm {
    pub fn prefix(action: CcsAction, cont: CcsTerm) -> Self {
        CcsTerm::Prefix(action, Box::new(cont))
    }

    pub fn choice(l: CcsTerm, r: CcsTerm) -> Self {
        CcsTerm::Choice(Box::new(l), Box::new(r))
    }

    pub fn parallel(l: CcsTerm, r: CcsTerm) -> Self {
        CcsTerm::Parallel(Box::new(l), Box::new(r))
    }

    fn idents(&self, out: &mut Vec<String>) {
        match self {
            CcsTerm::Nil => {}
            CcsTerm::Prefix(_, t) | CcsTerm::Restrict(t, _) => t.idents(out),
            CcsTerm::Choice(l, r) | CcsTerm::Parallel(l, r) => {
                l.idents(out);
                r.idents(out);
            }
            CcsTerm::Ident(n) => out.push(n.clone()),
        }
    }
}

// binding strength for printing: higher binds tighter
fn level(t: &CcsTerm) -> u8 {
    match t {
        CcsTerm::Choice(..) => 0,
        CcsTerm::Parallel(..) => 1,
        CcsTerm::Restrict(..) => 2,
        CcsTerm::Prefix(..) => 3,
        CcsTerm::Nil | CcsTerm::Ident(_) => 4,
    }
}

struct Wrapped<'a>(&'a CcsTerm, bool);

impl fmt::Display for Wrapped<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.1 {
            write!(f, "({})", self.0)
        } else {
            write!(f, "{}", self.0)
        }
    }
}

impl fmt::Display for CcsTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CcsTerm::Nil => f.write_str("0"),
            CcsTerm::Ident(n) => f.write_str(n),
            CcsTerm::Prefix(a, t) => write!(f, "{a}.{}", Wrapped(t, level(t) < 3)),
            CcsTerm::Restrict(t, names) => {
                let names: Vec<&str> = names.iter().map(String::as_str).collect();
                write!(
                    f,
                    "{} \\ {{{}}}",
                    Wrapped(t, level(t) < 2),
                    names.join(", ")
                )
            }
            CcsTerm::Parallel(l, r) => write!(
                f,
                "{} | {}",
                Wrapped(l, level(l) < 1),
                Wrapped(r, level(r) < 2)
            ),
            CcsTerm::Choice(l, r) => write!(f, "{} + {}", l, Wrapped(r, level(r) < 1)),
        }
    }
}

/// A set of named process definitions, in source order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CcsProgram {
    definitions: Vec<(String, CcsTerm)>,
    index: HashMap<String, usize>,
}

impl CcsProgram {
    /// Builds a program, rejecting duplicate names and unresolved identifiers.
    pub fn new(definitions: Vec<(String, CcsTerm)>) -> Result<Self, CcsError> {
        let mut index = HashMap::new();
        for (i, (name, _)) in definitions.iter().enumerate() {
            if index.insert(name.clone(), i).is_some() {
                return Err(CcsError::Duplicate(name.clone()));
            }
        }
        for (name, body) in &definitions {
            let mut used = Vec::new();
            body.idents(&mut used);
            if let Some(missing) = used.into_iter().find(|u| !index.contains_key(u)) {
                return Err(CcsError::Unresolved {
                    name: missing,
                    within: name.clone(),
                });
            }
        }
        Ok(CcsProgram { definitions, index })
    }

    pub fn get(&self, name: &str) -> Option<&CcsTerm> {
        self.index.get(name).map(|&i| &self.definitions[i].1)
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.definitions.iter().map(|(n, _)| n.as_str())
    }

    pub fn definitions(&self) -> &[(String, CcsTerm)] {
        &self.definitions
    }

    pub fn len(&self) -> usize {
        self.definitions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.definitions.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Name(String),
    Zero,
    Tau,
    Quote,
    Dot,
    Plus,
    Bar,
    Backslash,
    LBrace,
    RBrace,
    Comma,
    LParen,
    RParen,
    Eq,
    Semi,
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Tok::Name(n) => return write!(f, "name `{n}`"),
            Tok::Zero => "`0`",
            Tok::Tau => "`tau`",
            Tok::Quote => "`'`",
            Tok::Dot => "`.`",
            Tok::Plus => "`+`",
            Tok::Bar => "`|`",
            Tok::Backslash => "`\\`",
            Tok::LBrace => "`{`",
            Tok::RBrace => "`}`",
            Tok::Comma => "`,`",
            Tok::LParen => "`(`",
            Tok::RParen => "`)`",
            Tok::Eq => "`=`",
            Tok::Semi => "`;`",
            Tok::Eof => "end of input",
        };
        f.write_str(s)
    }
}

fn tokenize(src: &str) -> Result<Vec<(Tok, usize, usize)>, CcsError> {
    let mut out = Vec::new();
    let mut chars = src.chars().peekable();
    let (mut line, mut col) = (1, 1);
    while let Some(&c) = chars.peek() {
        let (tl, tc) = (line, col);
        let mut bump = |chars: &mut std::iter::Peekable<std::str::Chars>| {
            let c = chars.next();
            if c == Some('\n') {
                line += 1;
                col = 1;
            } else {
                col += 1;
            }
            c
        };
        if c.is_whitespace() {
            bump(&mut chars);
            continue;
        }
        if c == '#' {
            while chars.peek().is_some_and(|&c| c != '\n') {
                bump(&mut chars);
            }
            continue;
        }
        let tok = if c.is_ascii_alphabetic() || c == '_' {
            let mut name = String::new();
            while chars
                .peek()
                .is_some_and(|&c| c.is_ascii_alphanumeric() || c == '_')
            {
                name.push(bump(&mut chars).expect("peeked"));
            }
            if name == "tau" {
                Tok::Tau
            } else {
                Tok::Name(name)
            }
        } else if c.is_ascii_digit() {
            let mut digits = String::new();
            while chars.peek().is_some_and(char::is_ascii_digit) {
                digits.push(bump(&mut chars).expect("peeked"));
            }
            if digits != "0" {
                return Err(CcsError::Syntax {
                    line: tl,
                    column: tc,
                    message: format!("unexpected number `{digits}`; only `0` is a process"),
                });
            }
            Tok::Zero
        } else {
            bump(&mut chars);
            match c {
                '\'' => Tok::Quote,
                '.' => Tok::Dot,
                '+' => Tok::Plus,
                '|' => Tok::Bar,
                '\\' => Tok::Backslash,
                '{' => Tok::LBrace,
                '}' => Tok::RBrace,
                ',' => Tok::Comma,
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                '=' => Tok::Eq,
                ';' => Tok::Semi,
                other => {
                    return Err(CcsError::Syntax {
                        line: tl,
                        column: tc,
                        message: format!("unexpected character `{other}`"),
                    })
                }
            }
        };
        out.push((tok, tl, tc));
    }
    out.push((Tok::Eof, line, col));
    Ok(out)
}

fn is_identifier(name: &str) -> bool {
    name.starts_with(|c: char| c.is_ascii_uppercase())
}

struct Parser {
    toks: Vec<(Tok, usize, usize)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn next(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error(&self, message: String) -> CcsError {
        let (_, line, column) = self.toks[self.pos];
        CcsError::Syntax {
            line,
            column,
            message,
        }
    }

    fn expect(&mut self, want: Tok) -> Result<(), CcsError> {
        if *self.peek() == want {
            self.next();
            Ok(())
        } else {
            Err(self.error(format!("expected {want}, found {}", self.peek())))
        }
    }

    fn name(&mut self) -> Result<String, CcsError> {
        match self.peek().clone() {
            Tok::Name(n) => {
                self.next();
                Ok(n)
            }
            other => Err(self.error(format!("expected a name, found {other}"))),
        }
    }

    fn program(&mut self) -> Result<Vec<(String, CcsTerm)>, CcsError> {
        let mut defs = Vec::new();
        while *self.peek() != Tok::Eof {
            let name = self.name()?;
            if !is_identifier(&name) {
                self.pos -= 1;
                return Err(self.error(format!(
                    "definition name `{name}` must start with an uppercase letter"
                )));
            }
            self.expect(Tok::Eq)?;
            let body = self.choice()?;
            self.expect(Tok::Semi)?;
            defs.push((name, body));
        }
        Ok(defs)
    }

    fn choice(&mut self) -> Result<CcsTerm, CcsError> {
        let mut t = self.parallel()?;
        while *self.peek() == Tok::Plus {
            self.next();
            t = CcsTerm::choice(t, self.parallel()?);
        }
        Ok(t)
    }

    fn parallel(&mut self) -> Result<CcsTerm, CcsError> {
        let mut t = self.restrict()?;
        while *self.peek() == Tok::Bar {
            self.next();
            t = CcsTerm::parallel(t, self.restrict()?);
        }
        Ok(t)
    }

    fn restrict(&mut self) -> Result<CcsTerm, CcsError> {
        let mut t = self.prefix()?;
        while *self.peek() == Tok::Backslash {
            self.next();
            self.expect(Tok::LBrace)?;
            let mut names = BTreeSet::from([self.action_name()?]);
            while *self.peek() == Tok::Comma {
                self.next();
                names.insert(self.action_name()?);
            }
            self.expect(Tok::RBrace)?;
            t = CcsTerm::Restrict(Box::new(t), names);
        }
        Ok(t)
    }

    fn prefix(&mut self) -> Result<CcsTerm, CcsError> {
        let action = match self.peek().clone() {
            Tok::Tau => {
                self.next();
                CcsAction::Tau
            }
            Tok::Quote => {
                self.next();
                CcsAction::CoName(self.action_name()?)
            }
            Tok::Name(n) if !is_identifier(&n) => {
                self.next();
                CcsAction::Name(n)
            }
            _ => return self.atom(),
        };
        if *self.peek() != Tok::Dot {
            return Ok(CcsTerm::prefix(action, CcsTerm::Nil));
        }
        self.next();
        Ok(CcsTerm::prefix(action, self.prefix()?))
    }

    fn action_name(&mut self) -> Result<String, CcsError> {
        let n = self.name()?;
        if is_identifier(&n) {
            self.pos -= 1;
            return Err(self.error(format!("`{n}` is a process identifier, not an action")));
        }
        Ok(n)
    }

    fn atom(&mut self) -> Result<CcsTerm, CcsError> {
        match self.next() {
            Tok::Zero => Ok(CcsTerm::Nil),
            Tok::Name(n) if is_identifier(&n) => Ok(CcsTerm::Ident(n)),
            Tok::LParen => {
                let t = self.choice()?;
                self.expect(Tok::RParen)?;
                Ok(t)
            }
            other => {
                self.pos -= 1;
                Err(self.error(format!("expected a process, found {other}")))
            }
        }
    }
}

/// Parses a program and checks that its definitions are unique and closed.
pub fn parse_ccs(src: &str) -> Result<CcsProgram, CcsError> {
    let mut parser = Parser {
        toks: tokenize(src)?,
        pos: 0,
    };
    CcsProgram::new(parser.program()?)
}
