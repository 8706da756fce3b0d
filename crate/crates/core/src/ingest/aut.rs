//! Aldebaran `.aut` files.
//!
//! ```text
//! des (<initial>,<#transitions>,<#states>)
//! (<src>,"<label>",<dst>)
//! ```
//!
//! The labels `tau` and `i` denote the internal action.

use std::fmt::Write as _;

use crate::lts::{Lts, LtsBuilder};

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
#[error("line {line}: {message}")]
pub struct AutError {
    pub line: usize,
    pub message: String,
}

fn err(line: usize, message: impl Into<String>) -> AutError {
    AutError {
        line,
        message: message.into(),
    }
}

fn parse_index(text: &str, line: usize, what: &str) -> Result<usize, AutError> {
    text.trim()
        .parse()
        .map_err(|_| err(line, format!("invalid {what} `{}`", text.trim())))
}

fn parenthesized(text: &str, line: usize) -> Result<&str, AutError> {
    text.strip_prefix('(')
        .and_then(|t| t.strip_suffix(')'))
        .ok_or_else(|| err(line, "expected a parenthesized tuple"))
}

/// Parses an `.aut` document into a system and its declared initial state.
pub fn parse_aut(text: &str) -> Result<(Lts, usize), AutError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty());

    let (header_line, header) = lines.next().ok_or_else(|| err(1, "missing `des` header"))?;
    let fields = header
        .strip_prefix("des")
        .map(str::trim)
        .ok_or_else(|| err(header_line, "header must start with `des`"))?;
    let fields: Vec<&str> = parenthesized(fields, header_line)?.split(',').collect();
    if fields.len() != 3 {
        return Err(err(
            header_line,
            "header needs (initial, #transitions, #states)",
        ));
    }
    let initial = parse_index(fields[0], header_line, "initial state")?;
    let declared = parse_index(fields[1], header_line, "transition count")?;
    let states = parse_index(fields[2], header_line, "state count")?;
    if initial >= states {
        return Err(err(
            header_line,
            format!("initial state {initial} >= #states {states}"),
        ));
    }

    let mut builder = LtsBuilder::new(states);
    let mut count = 0;
    for (line, text) in lines {
        let body = parenthesized(text, line)?;
        let (src, rest) = body
            .split_once(',')
            .ok_or_else(|| err(line, "expected (src, label, dst)"))?;
        let (label, dst) = rest
            .rsplit_once(',')
            .ok_or_else(|| err(line, "expected (src, label, dst)"))?;
        let src = parse_index(src, line, "source state")?;
        let dst = parse_index(dst, line, "target state")?;
        for idx in [src, dst] {
            if idx >= states {
                return Err(err(line, format!("state {idx} >= #states {states}")));
            }
        }
        let label = label.trim();
        let label = match label.strip_prefix('"') {
            Some(inner) => inner
                .strip_suffix('"')
                .ok_or_else(|| err(line, "unterminated label quote"))?,
            None => label,
        };
        builder
            .add_named(src, label, dst)
            .map_err(|e| err(line, e.to_string()))?;
        count += 1;
    }
    if count != declared {
        return Err(err(
            header_line,
            format!("header declares {declared} transitions but {count} were found"),
        ));
    }
    let lts = builder
        .build()
        .map_err(|e| err(header_line, e.to_string()))?;
    Ok((lts, initial))
}

/// Serializes a system; τ is written as `tau`. Transitions appear in the
/// system's sorted order.
pub fn write_aut(lts: &Lts, initial: usize) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "des ({},{},{})",
        initial,
        lts.transition_count(),
        lts.state_count()
    );
    for &(s, label, t) in lts.transitions() {
        let _ = writeln!(out, "({},\"{}\",{})", s, lts.label_name(label), t);
    }
    out
}
