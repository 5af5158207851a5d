//! Macro expansion into core form.
//!
//! `min x (φ)` becomes `φ & forall y (y < x -> !φ[y/x])` and `max` the same
//! with `x < y`; `a < b` becomes `a <= b & !(a = b)`, `a != b` becomes
//! `!(a = b)`, and calls are inlined with capture-avoiding substitution of
//! the actual terms for the formal arguments.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::rc::Rc;

use thiserror::Error;

use super::ast::{Formula, ParamExpr, Term};
use super::defs::{DefError, DefTable};

/// Nesting limit for call inlining.
const MAX_CALL_DEPTH: usize = 256;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExpandError {
    #[error(transparent)]
    Def(#[from] DefError),
    #[error("UnboundParameter: {0}")]
    UnboundParameter(String),
}

/// Expand every macro and call in `f` into the core connectives.
pub fn expand(f: &Formula, defs: &DefTable) -> Result<Formula, ExpandError> {
    Expander::new(defs).expand(f, &BTreeMap::new())
}

pub struct Expander<'a> {
    defs: &'a DefTable,
    cache: HashMap<(String, Vec<i64>), Rc<Formula>>,
    active: Vec<(String, Vec<i64>)>,
}

impl<'a> Expander<'a> {
    pub fn new(defs: &'a DefTable) -> Self {
        Expander {
            defs,
            cache: HashMap::new(),
            active: Vec::new(),
        }
    }

    pub fn expand(
        &mut self,
        f: &Formula,
        params: &BTreeMap<String, i64>,
    ) -> Result<Formula, ExpandError> {
        let rec = |s: &mut Self, g: &Formula| s.expand(g, params).map(Box::new);
        Ok(match f {
            Formula::Eq(a, b) => Formula::Eq(a.clone(), b.clone()),
            Formula::Leq(a, b) => Formula::Leq(a.clone(), b.clone()),
            Formula::Lt(a, b) => strict(a.clone(), b.clone()),
            Formula::Neq(a, b) => Formula::not(Formula::Eq(a.clone(), b.clone())),
            Formula::Not(g) => Formula::Not(rec(self, g)?),
            Formula::And(a, b) => Formula::And(rec(self, a)?, rec(self, b)?),
            Formula::Or(a, b) => Formula::Or(rec(self, a)?, rec(self, b)?),
            Formula::Implies(a, b) => Formula::Implies(rec(self, a)?, rec(self, b)?),
            Formula::Iff(a, b) => Formula::Iff(rec(self, a)?, rec(self, b)?),
            Formula::Forall(vs, g) => Formula::Forall(vs.clone(), rec(self, g)?),
            Formula::Exists(vs, g) => Formula::Exists(vs.clone(), rec(self, g)?),
            Formula::Min(x, g) => extremal(x, self.expand(g, params)?, true),
            Formula::Max(x, g) => extremal(x, self.expand(g, params)?, false),
            Formula::Call {
                name,
                params: exprs,
                args,
            } => {
                let values = exprs
                    .iter()
                    .map(|e| match e {
                        ParamExpr::Lit(n) => Ok(*n),
                        ParamExpr::Var(v, off) => params
                            .get(v)
                            .map(|n| n + off)
                            .ok_or_else(|| ExpandError::UnboundParameter(v.clone())),
                    })
                    .collect::<Result<Vec<i64>, _>>()?;
                let def = self.defs.resolve(name, &values)?;
                if def.args.len() != args.len() {
                    return Err(DefError::Parse(super::parse::ParseError::ArityMismatch {
                        name: name.clone(),
                        expected: def.args.len(),
                        found: args.len(),
                    })
                    .into());
                }
                let body = self.instance(name, &values)?;
                let map: BTreeMap<String, Term> =
                    def.args.iter().cloned().zip(args.iter().cloned()).collect();
                substitute(&body, &map)
            }
        })
    }

    /// Expanded body of one concrete instance, in terms of its formal arguments.
    fn instance(&mut self, name: &str, values: &[i64]) -> Result<Rc<Formula>, ExpandError> {
        let key = (name.to_string(), values.to_vec());
        if let Some(f) = self.cache.get(&key) {
            return Ok(f.clone());
        }
        if self.active.contains(&key) || self.active.len() >= MAX_CALL_DEPTH {
            return Err(DefError::RecursionNotWellFounded(name.to_string()).into());
        }
        let def = self.defs.resolve(name, values)?;
        let bindings = def.bind(values);
        self.active.push(key.clone());
        let body = self.expand(&def.body, &bindings);
        self.active.pop();
        let body = Rc::new(body?);
        self.cache.insert(key, body.clone());
        Ok(body)
    }
}

fn strict(a: Term, b: Term) -> Formula {
    Formula::and(Formula::Leq(a.clone(), b.clone()), Formula::not(Formula::Eq(a, b)))
}

fn extremal(x: &str, phi: Formula, minimal: bool) -> Formula {
    let mut avoid = phi.all_vars();
    avoid.insert(x.to_string());
    let y = fresh_name("y", &avoid);
    let (lo, hi) = if minimal {
        (Term::var(&y), Term::var(x))
    } else {
        (Term::var(x), Term::var(&y))
    };
    let map = BTreeMap::from([(x.to_string(), Term::var(&y))]);
    let renamed = substitute(&phi, &map);
    let guard = Formula::implies(strict(lo, hi), Formula::not(renamed));
    Formula::and(phi, Formula::Forall(vec![y], Box::new(guard)))
}

/// First of `y, z, t, u, w, s` not in `avoid`, else `base1`, `base2`, ...
pub(crate) fn fresh_name(base: &str, avoid: &BTreeSet<String>) -> String {
    if base == "y" {
        for c in ["y", "z", "t", "u", "w", "s"] {
            if !avoid.contains(c) {
                return c.to_string();
            }
        }
    }
    let stem = base.trim_end_matches(|c: char| c.is_ascii_digit());
    let stem = if stem.is_empty() { "v" } else { stem };
    (1..)
        .map(|k| format!("{stem}{k}"))
        .find(|n| !avoid.contains(n))
        .expect("unbounded name supply")
}

fn subst_term(t: &Term, map: &BTreeMap<String, Term>) -> Term {
    match t {
        Term::Var(v) => map.get(v).cloned().unwrap_or_else(|| t.clone()),
        Term::Const(_) => t.clone(),
        Term::Meet(a, b) => Term::meet(subst_term(a, map), subst_term(b, map)),
        Term::Join(a, b) => Term::join(subst_term(a, map), subst_term(b, map)),
    }
}

/// Simultaneous capture-avoiding substitution of terms for free variables.
///
/// Bound variables that would capture a variable of an inserted term are
/// renamed to fresh names.
pub fn substitute(f: &Formula, map: &BTreeMap<String, Term>) -> Formula {
    if map.is_empty() {
        return f.clone();
    }
    let rec = |g: &Formula| Box::new(substitute(g, map));
    match f {
        Formula::Eq(a, b) => Formula::Eq(subst_term(a, map), subst_term(b, map)),
        Formula::Leq(a, b) => Formula::Leq(subst_term(a, map), subst_term(b, map)),
        Formula::Lt(a, b) => Formula::Lt(subst_term(a, map), subst_term(b, map)),
        Formula::Neq(a, b) => Formula::Neq(subst_term(a, map), subst_term(b, map)),
        Formula::Not(g) => Formula::Not(rec(g)),
        Formula::And(a, b) => Formula::And(rec(a), rec(b)),
        Formula::Or(a, b) => Formula::Or(rec(a), rec(b)),
        Formula::Implies(a, b) => Formula::Implies(rec(a), rec(b)),
        Formula::Iff(a, b) => Formula::Iff(rec(a), rec(b)),
        Formula::Forall(vs, body) | Formula::Exists(vs, body) => {
            let (vs, body) = subst_binder(vs, body, map);
            if matches!(f, Formula::Forall(..)) {
                Formula::Forall(vs, Box::new(body))
            } else {
                Formula::Exists(vs, Box::new(body))
            }
        }
        Formula::Min(x, body) | Formula::Max(x, body) => {
            // The selected variable stays free, so it can only be renamed, and
            // only if the new name does not merge with another free variable.
            // Otherwise the macro is unfolded here and substituted as core syntax.
            let minimal = matches!(f, Formula::Min(..));
            let target = match map.get(x) {
                None => Some(x.clone()),
                Some(Term::Var(v)) => Some(v.clone()),
                Some(_) => None,
            };
            let free = body.free_vars();
            let clash = |v: &str| {
                free.iter().filter(|w| *w != x).any(|w| match map.get(w) {
                    Some(t) => t.vars().iter().any(|u| u == v),
                    None => w == v,
                })
            };
            match target {
                Some(v) if !clash(&v) => {
                    let inner = Box::new(substitute(body, map));
                    if minimal {
                        Formula::Min(v, inner)
                    } else {
                        Formula::Max(v, inner)
                    }
                }
                _ => substitute(&extremal(x, (**body).clone(), minimal), map),
            }
        }
        Formula::Call { name, params, args } => Formula::Call {
            name: name.clone(),
            params: params.clone(),
            args: args.iter().map(|t| subst_term(t, map)).collect(),
        },
    }
}

fn subst_binder(
    vs: &[String],
    body: &Formula,
    map: &BTreeMap<String, Term>,
) -> (Vec<String>, Formula) {
    let free_in_body = body.free_vars();
    let mut inner: BTreeMap<String, Term> = map
        .iter()
        .filter(|(k, _)| !vs.contains(k) && free_in_body.contains(k))
        .map(|(k, v)| (k.clone(), v.clone()))
        .collect();
    if inner.is_empty() {
        return (vs.to_vec(), body.clone());
    }
    let incoming: BTreeSet<String> = inner.values().flat_map(|t| t.vars()).collect();
    let mut avoid = body.all_vars();
    avoid.extend(incoming.iter().cloned());
    avoid.extend(vs.iter().cloned());
    let mut new_vs = Vec::with_capacity(vs.len());
    for v in vs {
        if incoming.contains(v) {
            let fresh = fresh_name(v, &avoid);
            avoid.insert(fresh.clone());
            inner.insert(v.clone(), Term::var(&fresh));
            new_vs.push(fresh);
        } else {
            new_vs.push(v.clone());
        }
    }
    (new_vs, substitute(body, &inner))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse::parse_formula;

    fn p(s: &str) -> Formula {
        parse_formula(s).unwrap()
    }

    #[test]
    fn substituting_into_min() {
        let term = |t: &str| match p(&format!("{t} = {t}")) {
            Formula::Eq(a, _) => a,
            _ => unreachable!(),
        };
        let sub = |f: &str, v: &str, t: &str| substitute(&p(f), &BTreeMap::from([(v.to_string(), term(t))]));
        // plain renaming keeps the macro
        assert_eq!(sub("min x ( x <= z )", "z", "w"), p("min x ( x <= w )"));
        assert_eq!(sub("min x ( x <= z )", "x", "w"), p("min w ( w <= z )"));
        // merging the selected variable with another one unfolds it
        assert_eq!(
            sub("min x ( x <= z )", "z", "x"),
            p("x <= x & forall y ( y <= x & !(y = x) -> !(y <= x) )")
        );
        assert_eq!(
            sub("max x ( z <= x )", "x", "a ^ b"),
            p("z <= a ^ b & forall y ( a ^ b <= y & !(a ^ b = y) -> !(z <= y) )")
        );
    }

    #[test]
    fn min_of_reflexivity() {
        let e = expand(&p("min x ( x = x )"), &DefTable::new()).unwrap();
        assert_eq!(e, p("x = x & forall y ( y <= x & !(y = x) -> !(y = y) )"));
        assert!(e.is_core());
    }

    #[test]
    fn max_picks_a_fresh_variable() {
        let e = expand(&p("max x ( exists y ( x <= y ) )"), &DefTable::new()).unwrap();
        assert_eq!(
            e,
            p("exists y ( x <= y ) & forall z ( x <= z & !(x = z) -> !exists y ( z <= y ) )")
        );
    }

    #[test]
    fn calls_inline_without_capture() {
        let mut defs = DefTable::new();
        defs.load_str("t", "def Below(x) := exists y ( y < x ) ;").unwrap();
        let e = expand(&p("Below(y)"), &defs).unwrap();
        assert_eq!(e, p("exists z ( z <= y & !(z = y) )"));
        assert_eq!(e.free_vars(), vec!["y"]);
        let e = expand(&p("Below(x v y)"), &defs).unwrap();
        assert_eq!(e.free_vars(), vec!["x", "y"]);
    }

    #[test]
    fn parameterized_families() {
        let mut defs = DefTable::new();
        defs.load_str(
            "t",
            "def Base(x) := forall y ( x <= y ) ;\n\
             def Step[1](x) := Base(x) ;\n\
             def Step[k>=2](x) := min x ( exists y ( Step[k-1](y) & y < x ) ) ;",
        )
        .unwrap();
        defs.validate().unwrap();
        let one = expand(&p("Step[1](x)"), &defs).unwrap();
        assert_eq!(one, expand(&p("Base(x)"), &defs).unwrap());
        let three = expand(&p("Step[3](x)"), &defs).unwrap();
        assert!(three.is_core());
        assert_eq!(three.free_vars(), vec!["x"]);
        assert!(matches!(
            expand(&p("Step[0](x)"), &defs),
            Err(ExpandError::Def(DefError::ParameterOutOfRange { .. }))
        ));
        assert!(matches!(
            expand(&p("Step[k](x)"), &defs),
            Err(ExpandError::UnboundParameter(_))
        ));
    }

    #[test]
    fn runaway_recursion_is_reported() {
        let mut defs = DefTable::new();
        defs.load_str("t", "def Loop[k](x) := Loop[k-1](x) ;").unwrap();
        assert!(matches!(
            expand(&p("Loop[3](x)"), &defs),
            Err(ExpandError::Def(DefError::RecursionNotWellFounded(_)))
        ));
    }

    #[test]
    fn idempotent_on_core() {
        let e = expand(&p("min x ( exists z ( z < x ) )"), &DefTable::new()).unwrap();
        assert_eq!(expand(&e, &DefTable::new()).unwrap(), e);
    }
}
