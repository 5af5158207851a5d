//! The bundled definition library.
//!
//! Definition files are compiled into the crate. Setting `LATFO_STDLIB` to a
//! directory loads every `*.def` file there instead, in file-name order.

use std::path::Path;

use thiserror::Error;

use crate::formula::{DefError, DefTable};

pub const STDLIB_ENV: &str = "LATFO_STDLIB";

/// Bundled files as (file name, contents).
pub const FILES: &[(&str, &str)] = &[
    ("atoms.def", include_str!("../stdlib/atoms.def")),
    ("nil_chains.def", include_str!("../stdlib/nil_chains.def")),
    ("sublattices.def", include_str!("../stdlib/sublattices.def")),
    ("degree.def", include_str!("../stdlib/degree.def")),
    ("commutative.def", include_str!("../stdlib/commutative.def")),
    ("distributive.def", include_str!("../stdlib/distributive.def")),
    ("permutative.def", include_str!("../stdlib/permutative.def")),
];

/// Definitions taking two arguments; everything else takes one.
pub const BINARY: &[&str] = &["Nil-part", "ZR", "Gr-part"];

/// Parameterized families with the ranges they are exercised on.
pub const FAMILY_RANGES: &[(&str, std::ops::RangeInclusive<i64>)] = &[
    ("N", 1..=12),
    ("C", 0..=8),
    ("D", 1..=8),
    ("A", 2..=8),
    ("A_geq", 2..=9),
    ("E", 1..=8),
    ("NILP", 1..=8),
    ("PERM", 2..=8),
    ("Deg", 1..=8),
    ("CRPow", 1..=8),
];

#[derive(Debug, Error)]
pub enum StdlibError {
    #[error(transparent)]
    Def(#[from] DefError),
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
}

/// The bundled library, validated.
pub fn bundled() -> Result<DefTable, DefError> {
    let mut t = DefTable::new();
    for (name, text) in FILES {
        t.load_str(name, text)?;
    }
    t.validate()?;
    Ok(t)
}

/// Every `*.def` file in `dir`, validated.
pub fn load_dir(dir: &Path) -> Result<DefTable, StdlibError> {
    let io = |e: std::io::Error| StdlibError::Io {
        path: dir.display().to_string(),
        source: e,
    };
    let mut files: Vec<_> = std::fs::read_dir(dir)
        .map_err(io)?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "def"))
        .collect();
    files.sort();
    let mut t = DefTable::new();
    for path in files {
        let text = std::fs::read_to_string(&path).map_err(|e| StdlibError::Io {
            path: path.display().to_string(),
            source: e,
        })?;
        let name = path.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
        t.load_str(&name, &text)?;
    }
    t.validate()?;
    Ok(t)
}

/// The library in effect: `LATFO_STDLIB` if set, else the bundled files.
pub fn load_stdlib() -> Result<DefTable, StdlibError> {
    match std::env::var_os(STDLIB_ENV) {
        Some(dir) if !dir.is_empty() => load_dir(Path::new(&dir)),
        _ => Ok(bundled()?),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::{expand, parse, parse_formula};

    #[test]
    fn bundled_library_loads() {
        let t = bundled().unwrap();
        let clauses: usize = t.families().map(|f| f.clauses.len()).sum();
        assert!(clauses >= 49, "{clauses}");
        for fam in t.families() {
            let want = if BINARY.contains(&fam.name.as_str()) { 2 } else { 1 };
            assert_eq!(fam.arity(), want, "{}", fam.name);
        }
    }

    #[test]
    fn every_clause_round_trips_through_the_printer() {
        let t = bundled().unwrap();
        for fam in t.families() {
            for d in &fam.clauses {
                let text = d.body.to_string();
                assert_eq!(parse(&text, &t).unwrap(), d.body, "{}", d.signature());
            }
        }
    }

    #[test]
    fn zero_reduced_is_nil_and_lower_modular() {
        let t = bundled().unwrap();
        let lhs = expand(&parse_formula("0-red(x)").unwrap(), &t).unwrap();
        let rhs = expand(&parse_formula("Nil(x) & LMod(x)").unwrap(), &t).unwrap();
        assert_eq!(lhs, rhs);
        let n2 = expand(&parse_formula("N[2](x)").unwrap(), &t).unwrap();
        assert_eq!(n2, expand(&parse_formula("ZM(x)").unwrap(), &t).unwrap());
    }

    #[test]
    fn overriding_directory() {
        let dir = std::env::temp_dir().join(format!("latfo-stdlib-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        std::fs::write(dir.join("one.def"), "def Top(x) := forall y ( y <= x ) ;\n").unwrap();
        std::fs::write(dir.join("notes.txt"), "ignored").unwrap();
        let t = load_dir(&dir).unwrap();
        assert_eq!(t.len(), 1);
        std::fs::write(dir.join("two.def"), "def Bad(x) := x = ;\n").unwrap();
        let err = load_dir(&dir).unwrap_err().to_string();
        assert!(err.starts_with("two.def:1:"), "{err}");
        std::fs::remove_dir_all(&dir).unwrap();
    }
}
