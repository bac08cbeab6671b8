//! Text format for permutation groups.
//!
//! ```text
//! degree 5
//! (0 1 2)(3 4)
//! ()
//! ```
//!
//! Grammar:
//!
//! ```text
//! file      := header generator+
//! header    := "degree" SP+ NUM NL
//! generator := "()" NL | cycle+ NL
//! cycle     := "(" NUM (SP+ NUM)* ")"
//! ```
//!
//! Points are 0-based. Blank lines are ignored and surrounding whitespace on
//! a line is trimmed. One-cycles are accepted on input. The printer writes
//! each cycle from its least point, cycles ordered by that point, and the
//! identity as `()`, so printing a parsed canonical file reproduces it byte
//! for byte.

use super::{PermGroup, Permutation};
use crate::error::{Error, Result};

pub fn format_group(group: &PermGroup) -> String {
    let mut out = format!("degree {}\n", group.degree());
    for g in group.generators() {
        out.push_str(&g.to_string());
        out.push('\n');
    }
    out
}

pub fn parse_group(text: &str) -> Result<PermGroup> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty());
    let (hline, header) = lines.next().ok_or(Error::Parse {
        line: 1,
        msg: "missing header".into(),
    })?;
    let degree = parse_header(header).ok_or_else(|| Error::Parse {
        line: hline,
        msg: format!("expected `degree <n>`, found `{header}`"),
    })?;
    if degree == 0 {
        return Err(Error::Parse {
            line: hline,
            msg: "degree must be positive".into(),
        });
    }
    let mut gens = Vec::new();
    for (lineno, line) in lines {
        let cycles = parse_cycles(line).map_err(|msg| Error::Parse { line: lineno, msg })?;
        let g = Permutation::from_cycles(degree, &cycles).map_err(|e| Error::Parse {
            line: lineno,
            msg: e.to_string(),
        })?;
        gens.push(g);
    }
    if gens.is_empty() {
        return Err(Error::Parse {
            line: hline,
            msg: "no generators".into(),
        });
    }
    PermGroup::new(gens)
}

fn parse_header(line: &str) -> Option<usize> {
    let mut parts = line.split_whitespace();
    match (parts.next(), parts.next(), parts.next()) {
        (Some("degree"), Some(n), None) => n.parse().ok(),
        _ => None,
    }
}

fn parse_cycles(line: &str) -> std::result::Result<Vec<Vec<usize>>, String> {
    if line == "()" {
        return Ok(Vec::new());
    }
    let mut cycles = Vec::new();
    let mut rest = line;
    while !rest.is_empty() {
        let body = rest
            .strip_prefix('(')
            .ok_or_else(|| format!("expected `(` at `{rest}`"))?;
        let close = body.find(')').ok_or("unclosed cycle")?;
        let cycle = body[..close]
            .split_whitespace()
            .map(|t| t.parse::<usize>().map_err(|_| format!("bad point `{t}`")))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        if cycle.is_empty() {
            return Err("empty cycle inside a product".into());
        }
        cycles.push(cycle);
        rest = &body[close + 1..];
    }
    Ok(cycles)
}
