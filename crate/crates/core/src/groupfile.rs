//! Plain-text group files.
//!
//! A `degree N` line followed by one generator per line in disjoint-cycle
//! notation on the points `1..=N`. Whitespace is ignored and `#` starts a
//! comment. `()` is the identity.
//!
//! ```text
//! # A5 on five points
//! degree 5
//! (1 2 3)
//! (3 4 5)
//! ```
//!
//! ```
//! let g = hallbound_core::groupfile::parse_group_file(
//!     "# A5 on five points\ndegree 5\n(1 2 3)\n(3 4 5)\n",
//! )
//! .unwrap();
//! assert_eq!(g.order(), 60);
//! ```

use crate::error::{GroupError, Result};
use crate::group::PermGroup;
use crate::perm::Permutation;

fn parse_error(line: usize, msg: impl std::fmt::Display) -> GroupError {
    GroupError::Parse(format!("line {line}: {msg}"))
}

/// One generator line such as `(1 2 3)(4 5)`.
fn parse_cycles(text: &str, degree: usize, line: usize) -> Result<Permutation> {
    let mut cycles: Vec<Vec<u32>> = Vec::new();
    let mut rest = text.trim();
    while !rest.is_empty() {
        let Some(body) = rest.strip_prefix('(') else {
            return Err(parse_error(line, format!("expected '(' at {rest:?}")));
        };
        let close = body
            .find(')')
            .ok_or_else(|| parse_error(line, "unclosed cycle"))?;
        let mut cycle = Vec::new();
        for tok in body[..close].split(|c: char| c.is_whitespace() || c == ',') {
            if tok.is_empty() {
                continue;
            }
            let pt: usize = tok
                .parse()
                .map_err(|_| parse_error(line, format!("bad point {tok:?}")))?;
            if pt == 0 || pt > degree {
                return Err(parse_error(line, format!("point {pt} outside 1..={degree}")));
            }
            cycle.push((pt - 1) as u32);
        }
        cycles.push(cycle);
        rest = body[close + 1..].trim_start();
    }
    let refs: Vec<&[u32]> = cycles.iter().map(|c| c.as_slice()).collect();
    Permutation::from_cycles(degree, &refs).map_err(|e| parse_error(line, e))
}

pub fn parse_group_file(text: &str) -> Result<PermGroup> {
    let mut degree: Option<usize> = None;
    let mut gens = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        match degree {
            None => {
                let n = content
                    .strip_prefix("degree")
                    .ok_or_else(|| parse_error(line, "expected `degree N`"))?
                    .trim()
                    .parse::<usize>()
                    .map_err(|_| parse_error(line, "bad degree"))?;
                if n == 0 {
                    return Err(parse_error(line, "degree must be positive"));
                }
                degree = Some(n);
            }
            Some(n) => gens.push(parse_cycles(content, n, line)?),
        }
    }
    let n = degree.ok_or_else(|| GroupError::Parse("missing `degree N` line".into()))?;
    PermGroup::new(n, gens)
}

/// Writes `g` in the group-file format.
pub fn format_group_file(g: &PermGroup) -> String {
    let mut out = format!("degree {}\n", g.degree());
    for x in g.generators() {
        let cycles = x.cycles();
        if cycles.is_empty() {
            out.push_str("()\n");
            continue;
        }
        for c in cycles {
            let pts: Vec<String> = c.iter().map(|&p| (p + 1).to_string()).collect();
            out.push_str(&format!("({})", pts.join(" ")));
        }
        out.push('\n');
    }
    out
}
