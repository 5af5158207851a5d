//! Text format for Cayley tables.
//!
//! ```text
//! semigroup P3
//! order 3
//! row 0 1 2
//! row 2 2 2
//! row 2 2 2
//! name 0 e
//! ```

use thiserror::Error;

use super::table::{Semigroup, SemigroupError};

#[derive(Debug, Error)]
pub enum SemigroupFileError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error(transparent)]
    Semigroup(#[from] SemigroupError),
}

pub fn parse_semigroup(text: &str) -> Result<Semigroup, SemigroupFileError> {
    let mut name = None;
    let mut order: Option<usize> = None;
    let mut rows: Vec<Vec<usize>> = Vec::new();
    let mut names: Vec<(usize, String, usize)> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let err = |msg: String| SemigroupFileError::Syntax { line, msg };
        let content = raw.split('#').next().unwrap_or("").trim();
        let mut words = content.split_whitespace();
        let Some(key) = words.next() else { continue };
        let rest: Vec<&str> = words.collect();
        match key {
            "semigroup" => {
                if rest.len() != 1 {
                    return Err(err("expected `semigroup <name>`".into()));
                }
                name = Some(rest[0].to_string());
            }
            "order" => {
                let n = match rest.as_slice() {
                    [n] => n.parse::<usize>().ok().filter(|&n| n > 0),
                    _ => None,
                };
                order = Some(n.ok_or_else(|| err("expected `order <n>` with n >= 1".into()))?);
            }
            "row" => {
                let n = order.ok_or_else(|| err("`row` before `order`".into()))?;
                let row = rest
                    .iter()
                    .map(|v| v.parse::<usize>())
                    .collect::<Result<Vec<_>, _>>()
                    .map_err(|_| err("row entries must be element indices".into()))?;
                if row.len() != n {
                    return Err(err(format!("row has {} entries, expected {n}", row.len())));
                }
                rows.push(row);
            }
            "name" => match rest.as_slice() {
                [idx, label] => {
                    let idx = idx.parse().map_err(|_| err(format!("bad index {idx:?}")))?;
                    names.push((idx, label.to_string(), line));
                }
                _ => return Err(err("expected `name <idx> <label>`".into())),
            },
            other => return Err(err(format!("unknown directive {other:?}"))),
        }
    }
    let n = order.ok_or(SemigroupFileError::Syntax {
        line: 0,
        msg: "missing `order`".into(),
    })?;
    if rows.len() != n {
        return Err(SemigroupFileError::Syntax {
            line: text.lines().count(),
            msg: format!("{} rows for order {n}", rows.len()),
        });
    }
    let mut s = Semigroup::from_table(&rows)?.with_name(name.unwrap_or_default());
    for (idx, label, line) in names {
        if idx >= n {
            return Err(SemigroupFileError::Syntax {
                line,
                msg: format!("index {idx} out of range"),
            });
        }
        s = s.with_element_name(idx, label);
    }
    Ok(s)
}

pub fn write_semigroup(s: &Semigroup) -> String {
    let mut out = String::new();
    if !s.name().is_empty() {
        out.push_str(&format!("semigroup {}\n", s.name()));
    }
    out.push_str(&format!("order {}\n", s.order()));
    for row in s.rows() {
        let cells: Vec<String> = row.iter().map(|v| v.to_string()).collect();
        out.push_str(&format!("row {}\n", cells.join(" ")));
    }
    for i in 0..s.order() {
        if let Some(label) = s.element_name(i) {
            out.push_str(&format!("name {i} {label}\n"));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semigroup::table::{named_semigroup, p3};

    #[test]
    fn round_trip() {
        for s in [p3(), named_semigroup("c_monoid", Some(3)).unwrap(), named_semigroup("z", Some(4)).unwrap()] {
            assert_eq!(parse_semigroup(&write_semigroup(&s)).unwrap(), s);
        }
    }

    #[test]
    fn errors_carry_lines() {
        let e = parse_semigroup("order 2\nrow 0 0\nrow 0\n").unwrap_err();
        assert_eq!(e.to_string(), "line 3: row has 1 entries, expected 2");
        let e = parse_semigroup("# x\norder 2\nrow 0 1\nrow 0 0\n").unwrap_err();
        assert!(matches!(e, SemigroupFileError::Semigroup(SemigroupError::NonAssociative(..))), "{e}");
    }
}
