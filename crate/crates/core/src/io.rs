//! Text formats: the line-oriented lattice file and DOT export of Hasse diagrams.

use std::fmt::Write as _;

use thiserror::Error;

use crate::lattice::{build_from_covers, Lattice, LatticeError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeFileError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(i) => &line[..i],
        None => line,
    }
}

/// Parse the lattice file format:
///
/// ```text
/// lattice <name>
/// elem <id>
/// cover <lo-id> <hi-id>
/// label <label-name> <id>
/// ```
pub fn parse_lattice(text: &str) -> Result<Lattice, LatticeFileError> {
    let mut name: Option<String> = None;
    let mut elems = Vec::new();
    let mut covers = Vec::new();
    let mut labels = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = lineno + 1;
        let words: Vec<&str> = strip_comment(raw).split_whitespace().collect();
        if words.is_empty() {
            continue;
        }
        let syntax = |message: String| LatticeFileError::Syntax { line, message };
        let arity = |n: usize| {
            if words.len() == n {
                Ok(())
            } else {
                Err(syntax(format!(
                    "`{}` takes {} argument(s), found {}",
                    words[0],
                    n - 1,
                    words.len() - 1
                )))
            }
        };
        match (words[0], &name) {
            ("lattice", None) => {
                arity(2)?;
                name = Some(words[1].to_string());
            }
            ("lattice", Some(_)) => return Err(syntax("duplicate `lattice` header".into())),
            (_, None) => return Err(syntax("expected `lattice <name>` header".into())),
            ("elem", _) => {
                arity(2)?;
                elems.push(words[1].to_string());
            }
            ("cover", _) => {
                arity(3)?;
                covers.push((words[1].to_string(), words[2].to_string()));
            }
            ("label", _) => {
                arity(3)?;
                labels.push((words[1].to_string(), words[2].to_string()));
            }
            (other, _) => return Err(syntax(format!("unknown directive `{other}`"))),
        }
    }
    let name = name.ok_or(LatticeFileError::Syntax {
        line: 1,
        message: "empty lattice file".into(),
    })?;
    let mut lattice = build_from_covers(&elems, &covers)?.with_name(name);
    for (label, id) in labels {
        lattice = lattice.with_label(&label, &id)?;
    }
    Ok(lattice)
}

/// Emit the lattice file format: elements in index order, Hasse covers in
/// index order, labels sorted by name.
pub fn write_lattice(lattice: &Lattice) -> String {
    let mut out = String::new();
    writeln!(out, "lattice {}", lattice.name()).unwrap();
    for id in lattice.ids() {
        writeln!(out, "elem {id}").unwrap();
    }
    for (lo, hi) in lattice.cover_pairs() {
        writeln!(out, "cover {} {}", lattice.id(lo), lattice.id(hi)).unwrap();
    }
    for (label, &idx) in lattice.labels() {
        writeln!(out, "label {label} {}", lattice.id(idx)).unwrap();
    }
    out
}

fn dot_escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

fn dot_quote(s: &str) -> String {
    format!("\"{}\"", dot_escape(s))
}

/// Graph description of the Hasse diagram, bottom at the bottom.
pub fn to_dot(lattice: &Lattice) -> String {
    let mut out = String::new();
    writeln!(out, "digraph {} {{", dot_quote(lattice.name())).unwrap();
    writeln!(out, "  rankdir=BT;").unwrap();
    writeln!(out, "  node [shape=circle];").unwrap();
    for i in 0..lattice.len() {
        let id = lattice.id(i);
        match lattice.label_of(i) {
            Some(label) if label != id => writeln!(
                out,
                "  {} [label={}];",
                dot_quote(id),
                format!("\"{}\\n{}\"", dot_escape(id), dot_escape(label))
            )
            .unwrap(),
            _ => writeln!(out, "  {};", dot_quote(id)).unwrap(),
        }
    }
    for (lo, hi) in lattice.cover_pairs() {
        writeln!(
            out,
            "  {} -> {} [arrowhead=none];",
            dot_quote(lattice.id(lo)),
            dot_quote(lattice.id(hi))
        )
        .unwrap();
    }
    out.push_str("}\n");
    out
}
