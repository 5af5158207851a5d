use std::collections::BTreeSet;

/// Lattice terms: variables, label constants, meets and joins.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Var(String),
    Const(String),
    Meet(Box<Term>, Box<Term>),
    Join(Box<Term>, Box<Term>),
}

impl Term {
    pub fn var(name: &str) -> Term {
        Term::Var(name.to_string())
    }

    pub fn meet(a: Term, b: Term) -> Term {
        Term::Meet(Box::new(a), Box::new(b))
    }

    pub fn join(a: Term, b: Term) -> Term {
        Term::Join(Box::new(a), Box::new(b))
    }

    /// Number of meet/join operators.
    pub fn ops(&self) -> usize {
        match self {
            Term::Var(_) | Term::Const(_) => 0,
            Term::Meet(a, b) | Term::Join(a, b) => 1 + a.ops() + b.ops(),
        }
    }

    pub(crate) fn collect_vars(&self, out: &mut Vec<String>) {
        match self {
            Term::Var(v) => {
                if !out.contains(v) {
                    out.push(v.clone());
                }
            }
            Term::Const(_) => {}
            Term::Meet(a, b) | Term::Join(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
        }
    }

    pub fn vars(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.collect_vars(&mut out);
        out
    }
}

/// Integer argument of a parameterized call: a literal, or a definition
/// parameter plus an offset (`k`, `k-1`, `k+1`).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ParamExpr {
    Lit(i64),
    Var(String, i64),
}

/// First-order formulas in the lattice language, including the `min`/`max`
/// macros, strict order, disequality and calls to named definitions.
///
/// `Min(x, φ)` and `Max(x, φ)` do not bind `x`: they select the minimal or
/// maximal satisfiers of `φ` and leave `x` free.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    Eq(Term, Term),
    Leq(Term, Term),
    Lt(Term, Term),
    Neq(Term, Term),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Iff(Box<Formula>, Box<Formula>),
    Forall(Vec<String>, Box<Formula>),
    Exists(Vec<String>, Box<Formula>),
    Min(String, Box<Formula>),
    Max(String, Box<Formula>),
    Call {
        name: String,
        params: Vec<ParamExpr>,
        args: Vec<Term>,
    },
}

impl Formula {
    pub fn not(f: Formula) -> Formula {
        Formula::Not(Box::new(f))
    }

    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Formula {
        Formula::Or(Box::new(a), Box::new(b))
    }

    pub fn implies(a: Formula, b: Formula) -> Formula {
        Formula::Implies(Box::new(a), Box::new(b))
    }

    pub fn iff(a: Formula, b: Formula) -> Formula {
        Formula::Iff(Box::new(a), Box::new(b))
    }

    pub fn forall(vars: &[&str], body: Formula) -> Formula {
        Formula::Forall(vars.iter().map(|v| v.to_string()).collect(), Box::new(body))
    }

    pub fn exists(vars: &[&str], body: Formula) -> Formula {
        Formula::Exists(vars.iter().map(|v| v.to_string()).collect(), Box::new(body))
    }

    pub fn min(var: &str, body: Formula) -> Formula {
        Formula::Min(var.to_string(), Box::new(body))
    }

    pub fn max(var: &str, body: Formula) -> Formula {
        Formula::Max(var.to_string(), Box::new(body))
    }

    pub fn call(name: &str, params: &[i64], args: &[&str]) -> Formula {
        Formula::Call {
            name: name.to_string(),
            params: params.iter().map(|&p| ParamExpr::Lit(p)).collect(),
            args: args.iter().map(|a| Term::var(a)).collect(),
        }
    }

    /// Free variables in order of first occurrence.
    pub fn free_vars(&self) -> Vec<String> {
        let mut out = Vec::new();
        let mut bound = Vec::new();
        self.collect_free(&mut bound, &mut out);
        out
    }

    fn collect_free(&self, bound: &mut Vec<String>, out: &mut Vec<String>) {
        let push_term = |t: &Term, bound: &Vec<String>, out: &mut Vec<String>| {
            for v in t.vars() {
                if !bound.contains(&v) && !out.contains(&v) {
                    out.push(v);
                }
            }
        };
        match self {
            Formula::Eq(a, b) | Formula::Leq(a, b) | Formula::Lt(a, b) | Formula::Neq(a, b) => {
                push_term(a, bound, out);
                push_term(b, bound, out);
            }
            Formula::Not(f) => f.collect_free(bound, out),
            Formula::And(a, b)
            | Formula::Or(a, b)
            | Formula::Implies(a, b)
            | Formula::Iff(a, b) => {
                a.collect_free(bound, out);
                b.collect_free(bound, out);
            }
            Formula::Forall(vs, body) | Formula::Exists(vs, body) => {
                let depth = bound.len();
                bound.extend(vs.iter().cloned());
                body.collect_free(bound, out);
                bound.truncate(depth);
            }
            Formula::Min(v, body) | Formula::Max(v, body) => {
                push_term(&Term::Var(v.clone()), bound, out);
                body.collect_free(bound, out);
            }
            Formula::Call { args, .. } => {
                for t in args {
                    push_term(t, bound, out);
                }
            }
        }
    }

    /// Every variable name occurring anywhere, bound or free.
    pub fn all_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_all(&mut out);
        out
    }

    fn collect_all(&self, out: &mut BTreeSet<String>) {
        match self {
            Formula::Eq(a, b) | Formula::Leq(a, b) | Formula::Lt(a, b) | Formula::Neq(a, b) => {
                out.extend(a.vars());
                out.extend(b.vars());
            }
            Formula::Not(f) => f.collect_all(out),
            Formula::And(a, b)
            | Formula::Or(a, b)
            | Formula::Implies(a, b)
            | Formula::Iff(a, b) => {
                a.collect_all(out);
                b.collect_all(out);
            }
            Formula::Forall(vs, body) | Formula::Exists(vs, body) => {
                out.extend(vs.iter().cloned());
                body.collect_all(out);
            }
            Formula::Min(v, body) | Formula::Max(v, body) => {
                out.insert(v.clone());
                body.collect_all(out);
            }
            Formula::Call { args, .. } => {
                for t in args {
                    out.extend(t.vars());
                }
            }
        }
    }

    /// Whether the formula uses only the core connectives (no calls,
    /// `min`/`max`, `<` or `!=`).
    pub fn is_core(&self) -> bool {
        match self {
            Formula::Eq(..) | Formula::Leq(..) => true,
            Formula::Lt(..)
            | Formula::Neq(..)
            | Formula::Min(..)
            | Formula::Max(..)
            | Formula::Call { .. } => false,
            Formula::Not(f) => f.is_core(),
            Formula::And(a, b)
            | Formula::Or(a, b)
            | Formula::Implies(a, b)
            | Formula::Iff(a, b) => a.is_core() && b.is_core(),
            Formula::Forall(_, b) | Formula::Exists(_, b) => b.is_core(),
        }
    }

    /// Size used by synthesis budgets: one per connective, comparison,
    /// quantified variable, macro and call, plus one per term operator.
    /// Variables and constants are free.
    pub fn size(&self) -> usize {
        match self {
            Formula::Eq(a, b) | Formula::Leq(a, b) | Formula::Lt(a, b) | Formula::Neq(a, b) => {
                1 + a.ops() + b.ops()
            }
            Formula::Not(f) => 1 + f.size(),
            Formula::And(a, b)
            | Formula::Or(a, b)
            | Formula::Implies(a, b)
            | Formula::Iff(a, b) => 1 + a.size() + b.size(),
            Formula::Forall(vs, body) | Formula::Exists(vs, body) => vs.len() + body.size(),
            Formula::Min(_, body) | Formula::Max(_, body) => 1 + body.size(),
            Formula::Call { args, .. } => 1 + args.iter().map(Term::ops).sum::<usize>(),
        }
    }

    /// Total node count of the tree, counting term nodes too.
    pub fn node_count(&self) -> usize {
        fn term_nodes(t: &Term) -> usize {
            match t {
                Term::Var(_) | Term::Const(_) => 1,
                Term::Meet(a, b) | Term::Join(a, b) => 1 + term_nodes(a) + term_nodes(b),
            }
        }
        match self {
            Formula::Eq(a, b) | Formula::Leq(a, b) | Formula::Lt(a, b) | Formula::Neq(a, b) => {
                1 + term_nodes(a) + term_nodes(b)
            }
            Formula::Not(f) => 1 + f.node_count(),
            Formula::And(a, b)
            | Formula::Or(a, b)
            | Formula::Implies(a, b)
            | Formula::Iff(a, b) => 1 + a.node_count() + b.node_count(),
            Formula::Forall(_, body)
            | Formula::Exists(_, body)
            | Formula::Min(_, body)
            | Formula::Max(_, body) => 1 + body.node_count(),
            Formula::Call { args, .. } => 1 + args.iter().map(term_nodes).sum::<usize>(),
        }
    }

    /// Maximum nesting depth of quantifiers.
    pub fn quantifier_depth(&self) -> usize {
        match self {
            Formula::Eq(..)
            | Formula::Leq(..)
            | Formula::Lt(..)
            | Formula::Neq(..)
            | Formula::Call { .. } => 0,
            Formula::Not(f) => f.quantifier_depth(),
            Formula::And(a, b)
            | Formula::Or(a, b)
            | Formula::Implies(a, b)
            | Formula::Iff(a, b) => a.quantifier_depth().max(b.quantifier_depth()),
            Formula::Forall(vs, body) | Formula::Exists(vs, body) => {
                vs.len() + body.quantifier_depth()
            }
            Formula::Min(_, body) | Formula::Max(_, body) => 1 + body.quantifier_depth(),
        }
    }

    /// Names of definitions called anywhere in the formula.
    pub fn calls(&self) -> Vec<(&str, &[ParamExpr], usize)> {
        let mut out = Vec::new();
        self.collect_calls(&mut out);
        out
    }

    fn collect_calls<'a>(&'a self, out: &mut Vec<(&'a str, &'a [ParamExpr], usize)>) {
        match self {
            Formula::Eq(..) | Formula::Leq(..) | Formula::Lt(..) | Formula::Neq(..) => {}
            Formula::Not(f) => f.collect_calls(out),
            Formula::And(a, b)
            | Formula::Or(a, b)
            | Formula::Implies(a, b)
            | Formula::Iff(a, b) => {
                a.collect_calls(out);
                b.collect_calls(out);
            }
            Formula::Forall(_, body)
            | Formula::Exists(_, body)
            | Formula::Min(_, body)
            | Formula::Max(_, body) => body.collect_calls(out),
            Formula::Call { name, params, args } => out.push((name, params, args.len())),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn free_variables_in_order() {
        // exists y ( forall z ( y <= z ) & min x ( x != y ) )
        let f = Formula::exists(
            &["y"],
            Formula::and(
                Formula::forall(&["z"], Formula::Leq(Term::var("y"), Term::var("z"))),
                Formula::min("x", Formula::Neq(Term::var("x"), Term::var("y"))),
            ),
        );
        assert_eq!(f.free_vars(), vec!["x".to_string()]);
        assert!(!f.is_core());
        let closed = Formula::forall(&["x"], Formula::Eq(Term::var("x"), Term::var("x")));
        assert!(closed.free_vars().is_empty());
        assert!(closed.is_core());
    }

    #[test]
    fn sizes() {
        let bottom = Formula::forall(&["y"], Formula::Leq(Term::var("x"), Term::var("y")));
        assert_eq!(bottom.size(), 2);
        let t = Formula::Eq(Term::join(Term::var("x"), Term::var("y")), Term::var("y"));
        assert_eq!(t.size(), 2);
        assert_eq!(t.node_count(), 5);
        assert_eq!(bottom.quantifier_depth(), 1);
    }
}
