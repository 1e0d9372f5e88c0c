//! Plain-text arrangement files.
//!
//! ```text
//! # the A2 Weyl arrangement
//! dim 2
//! 1 0
//! 0 1
//! 1 1
//! ```
//!
//! `#` starts a comment; blank lines are ignored. Each hyperplane line holds
//! exactly `dim` integers.

use std::fmt::Write as _;

use thiserror::Error;

use super::{Arrangement, ArrangementError, Hyperplane};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

pub fn parse_arrangement(text: &str) -> Result<Arrangement, ParseError> {
    let mut dim: Option<usize> = None;
    let mut hs = Vec::new();
    let mut lines_of = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let err = |message: String| ParseError { line, message };
        let Some(d) = dim else {
            let rest = body
                .strip_prefix("dim")
                .ok_or_else(|| err("expected header \"dim <n>\"".into()))?;
            let d = rest
                .trim()
                .parse::<usize>()
                .map_err(|_| err(format!("bad dimension {:?}", rest.trim())))?;
            dim = Some(d);
            continue;
        };
        let normal = body
            .split_whitespace()
            .map(|t| t.parse::<i64>().map_err(|_| err(format!("bad integer {t:?}"))))
            .collect::<Result<Vec<_>, _>>()?;
        if normal.len() != d {
            return Err(err(format!("expected {d} coefficients, found {}", normal.len())));
        }
        let h = Hyperplane::new(normal).map_err(|e| err(e.to_string()))?;
        lines_of.push((h.clone(), line));
        hs.push(h);
    }
    let Some(d) = dim else {
        return Err(ParseError {
            line: text.lines().count().max(1),
            message: "missing \"dim\" header".into(),
        });
    };
    Arrangement::new(d, hs).map_err(|e| {
        let line = match &e {
            ArrangementError::Duplicate(h) => lines_of
                .iter()
                .filter(|(g, _)| g == h)
                .nth(1)
                .map(|(_, l)| *l)
                .unwrap_or(0),
            _ => 0,
        };
        ParseError {
            line,
            message: e.to_string(),
        }
    })
}

pub fn write_arrangement(a: &Arrangement) -> String {
    let mut out = String::new();
    writeln!(out, "dim {}", a.dim()).unwrap();
    for h in a.iter() {
        let row: Vec<String> = h.normal().iter().map(i64::to_string).collect();
        writeln!(out, "{}", row.join(" ")).unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_with_comments() {
        let a = parse_arrangement("# A2\ndim 2\n1 0 # x\n\n0 1\n1 1\n").unwrap();
        assert_eq!(a.len(), 3);
        assert_eq!(write_arrangement(&a), "dim 2\n0 1\n1 0\n1 1\n");
    }

    #[test]
    fn empty_body() {
        let a = parse_arrangement("dim 3\n").unwrap();
        assert!(a.is_empty());
        assert_eq!(a.dim(), 3);
    }

    #[test]
    fn wrong_arity_cites_line() {
        let e = parse_arrangement("dim 2\n1 0\n1 2 3\n").unwrap_err();
        assert_eq!(e.line, 3);
    }

    #[test]
    fn duplicate_after_normalization() {
        let e = parse_arrangement("dim 2\n1 1\n-2 -2\n").unwrap_err();
        assert_eq!(e.line, 3);
    }

    #[test]
    fn missing_header() {
        assert!(parse_arrangement("1 0\n").is_err());
        assert!(parse_arrangement("").is_err());
    }
}
