//! Plain-text family files.
//!
//! ```text
//! # comment lines start with '#'; blank lines are ignored
//! 6 3          <- header: n and k (k = 0 for a mixed-size family)
//! 1 2 3        <- one member per line, strictly increasing elements
//! 1 2 4
//! ```
//!
//! The empty set is written as a single `-` and is only legal in mixed files.

use std::fmt::Write as _;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::family::{GroundSetParams, KSet, SetFamily};

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

fn parse_uint(tok: &str, line: usize) -> Result<usize> {
    if tok.is_empty() || !tok.bytes().all(|b| b.is_ascii_digit()) {
        return Err(parse_err(line, format!("expected a non-negative integer, found {tok:?}")));
    }
    tok.parse().map_err(|_| parse_err(line, format!("integer {tok:?} too large")))
}

/// Parses the family text format.
pub fn parse_family(text: &str) -> Result<SetFamily> {
    let mut header: Option<(usize, usize)> = None;
    let mut members: Vec<(KSet, usize)> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some((n, k)) = header else {
            let toks: Vec<&str> = line.split_whitespace().collect();
            if toks.len() != 2 {
                return Err(parse_err(lineno, "header must be `n k`"));
            }
            let n = parse_uint(toks[0], lineno)?;
            let k = parse_uint(toks[1], lineno)?;
            GroundSetParams::new(n, (k > 0).then_some(k)).map_err(|e| parse_err(lineno, e.to_string()))?;
            header = Some((n, k));
            continue;
        };
        let set = if line == "-" {
            if k != 0 {
                return Err(parse_err(lineno, "the empty set cannot be a member of a uniform family"));
            }
            KSet::EMPTY
        } else {
            let mut mask = 0u64;
            let mut prev = 0usize;
            for tok in line.split_whitespace() {
                let x = parse_uint(tok, lineno)?;
                if x == 0 || x > n {
                    return Err(parse_err(lineno, format!("element {x} outside 1..={n}")));
                }
                if x <= prev {
                    return Err(parse_err(lineno, "elements must be strictly increasing"));
                }
                prev = x;
                mask |= 1 << (x - 1);
            }
            let set = KSet::from_mask(mask);
            if k != 0 && set.len() != k {
                return Err(parse_err(lineno, format!("member has {} elements, expected {k}", set.len())));
            }
            set
        };
        members.push((set, lineno));
    }
    let Some((n, k)) = header else {
        return Err(parse_err(text.lines().count().max(1), "missing `n k` header"));
    };
    let mut sorted = members.clone();
    sorted.sort_unstable_by(|a, b| a.0.cmp(&b.0).then(a.1.cmp(&b.1)));
    if let Some(w) = sorted.windows(2).find(|w| w[0].0 == w[1].0) {
        return Err(parse_err(w[1].1, format!("duplicate member {} (first on line {})", w[0].0, w[0].1)));
    }
    SetFamily::new(n, (k > 0).then_some(k), members.into_iter().map(|(s, _)| s).collect())
}

/// Serializes a family in the text format; inverse of [`parse_family`].
pub fn write_family(fam: &SetFamily) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{} {}", fam.n(), fam.declared_k().unwrap_or(0));
    for m in fam.members() {
        if m.is_empty() {
            out.push_str("-\n");
            continue;
        }
        let line: Vec<String> = m.elements().map(|x| x.to_string()).collect();
        let _ = writeln!(out, "{}", line.join(" "));
    }
    out
}

impl FromStr for SetFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_family(s)
    }
}

impl std::fmt::Display for SetFamily {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&write_family(self))
    }
}
