//! Named definitions, including integer-parameterized families.
//!
//! A family is every clause sharing a name and a parameter count. Clauses
//! with literal parameters (`N[2]`) take priority over guarded ones
//! (`N[k>=3]`). A clause may call its own family only with a parameter that
//! strictly decreases, and mutual recursion between families is rejected.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use super::ast::{Formula, ParamExpr};
use super::parse::{check_calls, parse_definitions, ParseError};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParamSpec {
    Exact(i64),
    Var { name: String, min: Option<i64> },
}

impl ParamSpec {
    fn matches(&self, value: i64) -> bool {
        match self {
            ParamSpec::Exact(n) => *n == value,
            ParamSpec::Var { min, .. } => min.is_none_or(|m| value >= m),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Definition {
    pub name: String,
    pub params: Vec<ParamSpec>,
    pub args: Vec<String>,
    pub body: Formula,
    /// Source line of the `def` keyword.
    pub line: usize,
}

impl Definition {
    /// Parameter bindings for a concrete instantiation.
    pub fn bind(&self, values: &[i64]) -> BTreeMap<String, i64> {
        self.params
            .iter()
            .zip(values)
            .filter_map(|(p, &v)| match p {
                ParamSpec::Var { name, .. } => Some((name.clone(), v)),
                ParamSpec::Exact(_) => None,
            })
            .collect()
    }

    pub fn signature(&self) -> String {
        let mut s = self.name.clone();
        if !self.params.is_empty() {
            let ps: Vec<String> = self
                .params
                .iter()
                .map(|p| match p {
                    ParamSpec::Exact(n) => n.to_string(),
                    ParamSpec::Var { name, min: Some(m) } => format!("{name}>={m}"),
                    ParamSpec::Var { name, min: None } => name.clone(),
                })
                .collect();
            s.push_str(&format!("[{}]", ps.join(",")));
        }
        s.push_str(&format!("({})", self.args.join(", ")));
        s
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DefError {
    #[error("{0}")]
    Parse(ParseError),
    #[error("{file}:{line}: {source}")]
    InFile {
        file: String,
        line: usize,
        source: Box<DefError>,
    },
    #[error("InconsistentArity: clauses of {0} disagree on argument count")]
    InconsistentArity(String),
    #[error("DuplicateClause: {0}")]
    DuplicateClause(String),
    #[error("RecursionNotWellFounded: {0}")]
    RecursionNotWellFounded(String),
    #[error("ParameterOutOfRange: {family}[{}]", .values.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(","))]
    ParameterOutOfRange { family: String, values: Vec<i64> },
}

/// All clauses of one (name, parameter count) family.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Family {
    pub name: String,
    pub clauses: Vec<Definition>,
}

impl Family {
    pub fn arity(&self) -> usize {
        self.clauses[0].args.len()
    }

    pub fn param_count(&self) -> usize {
        self.clauses[0].params.len()
    }

    /// Pick the clause for concrete parameter values.
    pub fn resolve(&self, values: &[i64]) -> Option<&Definition> {
        let exact = |d: &&Definition| {
            d.params
                .iter()
                .zip(values)
                .all(|(p, &v)| matches!(p, ParamSpec::Exact(n) if *n == v))
        };
        let fits = |d: &&Definition| d.params.iter().zip(values).all(|(p, &v)| p.matches(v));
        self.clauses
            .iter()
            .find(exact)
            .or_else(|| self.clauses.iter().find(fits))
    }

    /// Smallest admissible value of each parameter, where one exists.
    pub fn minimum(&self) -> Vec<Option<i64>> {
        (0..self.param_count())
            .map(|i| {
                self.clauses
                    .iter()
                    .map(|d| match &d.params[i] {
                        ParamSpec::Exact(n) => Some(*n),
                        ParamSpec::Var { min, .. } => *min,
                    })
                    .try_fold(i64::MAX, |acc, m| m.map(|m| acc.min(m)))
            })
            .collect()
    }
}

/// Named formula definitions keyed by (name, parameter count).
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct DefTable {
    families: BTreeMap<(String, usize), Family>,
}

impl DefTable {
    pub fn new() -> Self {
        Self::default()
    }

    /// Parse definition text and add it; `file` names the source in errors.
    pub fn load_str(&mut self, file: &str, text: &str) -> Result<(), DefError> {
        let in_file = |line: usize, e: DefError| DefError::InFile {
            file: file.to_string(),
            line,
            source: Box::new(e),
        };
        let defs = parse_definitions(text).map_err(|e| {
            let line = match &e {
                DefError::Parse(ParseError::Syntax { line, .. }) => *line,
                _ => 0,
            };
            in_file(line, e)
        })?;
        for d in defs {
            let line = d.line;
            self.insert(d).map_err(|e| in_file(line, e))?;
        }
        Ok(())
    }

    pub fn insert(&mut self, def: Definition) -> Result<(), DefError> {
        let key = (def.name.clone(), def.params.len());
        let family = self.families.entry(key).or_insert_with(|| Family {
            name: def.name.clone(),
            clauses: Vec::new(),
        });
        if family.clauses.iter().any(|c| c.params == def.params) {
            return Err(DefError::DuplicateClause(def.signature()));
        }
        if family.clauses.first().is_some_and(|c| c.args.len() != def.args.len()) {
            return Err(DefError::InconsistentArity(def.name.clone()));
        }
        family.clauses.push(def);
        Ok(())
    }

    /// Check call targets and the recursion discipline across the table.
    pub fn validate(&self) -> Result<(), DefError> {
        let at = |d: &Definition, e: DefError| DefError::InFile {
            file: d.name.clone(),
            line: d.line,
            source: Box::new(e),
        };
        for fam in self.families.values() {
            for d in &fam.clauses {
                check_calls(&d.body, self).map_err(|e| at(d, DefError::Parse(e)))?;
                for (name, params, _) in d.body.calls() {
                    if name != d.name || params.len() != d.params.len() {
                        continue;
                    }
                    if !self_call_decreases(d, params) {
                        return Err(at(d, DefError::RecursionNotWellFounded(d.signature())));
                    }
                }
            }
        }
        self.check_no_mutual_recursion()
    }

    fn check_no_mutual_recursion(&self) -> Result<(), DefError> {
        // family graph without self-loops must be acyclic
        let keys: Vec<&(String, usize)> = self.families.keys().collect();
        let index: BTreeMap<&(String, usize), usize> =
            keys.iter().enumerate().map(|(i, k)| (*k, i)).collect();
        let mut edges = vec![BTreeSet::new(); keys.len()];
        for (i, key) in keys.iter().enumerate() {
            for d in &self.families[*key].clauses {
                for (name, params, _) in d.body.calls() {
                    if let Some(&j) = index.get(&(name.to_string(), params.len())) {
                        if j != i {
                            edges[i].insert(j);
                        }
                    }
                }
            }
        }
        // 0 = unvisited, 1 = on stack, 2 = done
        let mut state = vec![0u8; keys.len()];
        fn visit(v: usize, edges: &[BTreeSet<usize>], state: &mut [u8]) -> Option<usize> {
            state[v] = 1;
            for &w in &edges[v] {
                match state[w] {
                    1 => return Some(w),
                    0 => {
                        if let Some(c) = visit(w, edges, state) {
                            return Some(c);
                        }
                    }
                    _ => {}
                }
            }
            state[v] = 2;
            None
        }
        for v in 0..keys.len() {
            if state[v] == 0 {
                if let Some(c) = visit(v, &edges, &mut state) {
                    return Err(DefError::RecursionNotWellFounded(keys[c].0.clone()));
                }
            }
        }
        Ok(())
    }

    pub fn family(&self, name: &str, param_count: usize) -> Option<&Family> {
        self.families.get(&(name.to_string(), param_count))
    }

    pub fn has_name(&self, name: &str) -> bool {
        self.families.keys().any(|(n, _)| n == name)
    }

    pub fn families(&self) -> impl Iterator<Item = &Family> {
        self.families.values()
    }

    /// Number of clauses across all families.
    pub fn len(&self) -> usize {
        self.families.values().map(|f| f.clauses.len()).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.families.is_empty()
    }

    /// The clause a concrete call resolves to.
    pub fn resolve(&self, name: &str, values: &[i64]) -> Result<&Definition, DefError> {
        let fam = self
            .family(name, values.len())
            .ok_or_else(|| DefError::Parse(ParseError::UnknownDefinition(name.to_string())))?;
        fam.resolve(values).ok_or_else(|| DefError::ParameterOutOfRange {
            family: name.to_string(),
            values: values.to_vec(),
        })
    }

    /// Concrete instance of a family as a call on the variable `x`
    /// (or `x, y` for binary definitions), after range checking.
    pub fn instantiate_family(&self, name: &str, values: &[i64]) -> Result<Formula, DefError> {
        let def = self.resolve(name, values)?;
        let vars = ["x", "y", "z", "t"];
        let args: Vec<&str> = (0..def.args.len()).map(|i| vars[i.min(3)]).collect();
        Ok(Formula::call(name, values, &args))
    }
}

fn self_call_decreases(def: &Definition, call_params: &[ParamExpr]) -> bool {
    let mut decreased = false;
    for (spec, expr) in def.params.iter().zip(call_params) {
        match (spec, expr) {
            (ParamSpec::Var { name, .. }, ParamExpr::Var(v, off)) if v == name => {
                if *off > 0 {
                    return false;
                }
                decreased |= *off < 0;
            }
            (ParamSpec::Exact(n), ParamExpr::Lit(m)) => decreased |= m < n,
            (ParamSpec::Exact(_), ParamExpr::Var(..)) => return false,
            // a literal inside a guarded clause is bounded but not obviously smaller
            (ParamSpec::Var { min, .. }, ParamExpr::Lit(m)) => match min {
                Some(lo) if m < lo => decreased = true,
                _ => return false,
            },
            _ => return false,
        }
    }
    decreased
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table(text: &str) -> DefTable {
        let mut t = DefTable::new();
        t.load_str("test.def", text).unwrap();
        t
    }

    #[test]
    fn resolution_prefers_exact_clauses() {
        let t = table(
            "def N[1](x) := x = x ;\n def N[2](x) := x <= x ;\n\
             def N[k>=3](x) := exists y ( N[k-1](y) & y < x ) ;",
        );
        t.validate().unwrap();
        assert_eq!(t.resolve("N", &[2]).unwrap().line, 2);
        assert_eq!(t.resolve("N", &[7]).unwrap().line, 3);
        assert!(matches!(
            t.resolve("N", &[0]),
            Err(DefError::ParameterOutOfRange { .. })
        ));
        assert_eq!(t.family("N", 1).unwrap().minimum(), vec![Some(1)]);
        assert_eq!(t.len(), 3);
    }

    #[test]
    fn rejects_non_decreasing_recursion() {
        let t = table("def B[k>=0](x) := B[k](x) ;");
        assert!(matches!(t.validate(), Err(DefError::InFile { .. })));
        let t = table("def B[k>=0](x) := B[k+1](x) ;");
        assert!(t.validate().is_err());
        let t = table("def P(x) := Q(x) ;\ndef Q(x) := P(x) ;");
        assert!(matches!(t.validate(), Err(DefError::RecursionNotWellFounded(_))));
    }

    #[test]
    fn reports_unknown_calls_and_arity() {
        let t = table("def P(x) := Q(x) ;");
        assert!(t.validate().is_err());
        let t = table("def P(x) := x = x ;\ndef R(x) := P(x, x) ;");
        let err = t.validate().unwrap_err().to_string();
        assert!(err.contains("ArityMismatch"), "{err}");
    }

    #[test]
    fn load_errors_name_file_and_line() {
        let mut t = DefTable::new();
        let err = t.load_str("bad.def", "def A(x) := x = x ;\n\ndef B(x) := x <= ;").unwrap_err();
        match err {
            DefError::InFile { file, line, .. } => assert_eq!((file.as_str(), line), ("bad.def", 3)),
            e => panic!("{e:?}"),
        }
        let err = t.load_str("dup.def", "def A(x) := x = x ;\ndef A(x) := x = x ;").unwrap_err();
        assert!(err.to_string().contains("DuplicateClause"));
    }
}
