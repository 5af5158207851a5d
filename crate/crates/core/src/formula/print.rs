//! Canonical concrete syntax. `parse(format(f))` reproduces `f` exactly.

use std::fmt;

use super::ast::{Formula, ParamExpr, Term};

impl fmt::Display for ParamExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParamExpr::Lit(n) => write!(f, "{n}"),
            ParamExpr::Var(v, 0) => write!(f, "{v}"),
            ParamExpr::Var(v, k) if *k > 0 => write!(f, "{v}+{k}"),
            ParamExpr::Var(v, k) => write!(f, "{v}-{}", -k),
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(v) => f.write_str(v),
            Term::Const(c) => write!(f, "@{c}"),
            Term::Meet(a, b) => write_binary_term(f, a, "^", b, |t| matches!(t, Term::Meet(..))),
            Term::Join(a, b) => write_binary_term(f, a, "v", b, |t| matches!(t, Term::Join(..))),
        }
    }
}

// Left-associative; a child of the other operator is always parenthesized.
fn write_binary_term(
    f: &mut fmt::Formatter<'_>,
    a: &Term,
    op: &str,
    b: &Term,
    same: impl Fn(&Term) -> bool,
) -> fmt::Result {
    let compound = |t: &Term| matches!(t, Term::Meet(..) | Term::Join(..));
    if compound(a) && !same(a) {
        write!(f, "({a})")?;
    } else {
        write!(f, "{a}")?;
    }
    write!(f, " {op} ")?;
    if compound(b) {
        write!(f, "({b})")
    } else {
        write!(f, "{b}")
    }
}

const IFF: u8 = 0;
const IMPLIES: u8 = 1;
const OR: u8 = 2;
const AND: u8 = 3;
const UNARY: u8 = 4;

fn level(f: &Formula) -> u8 {
    match f {
        Formula::Iff(..) => IFF,
        Formula::Implies(..) => IMPLIES,
        Formula::Or(..) => OR,
        Formula::And(..) => AND,
        _ => UNARY,
    }
}

struct Prec<'a>(&'a Formula, u8);

impl fmt::Display for Prec<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if level(self.0) < self.1 {
            write!(f, "({})", self.0)
        } else {
            write!(f, "{}", self.0)
        }
    }
}

fn write_vars(f: &mut fmt::Formatter<'_>, vars: &[String]) -> fmt::Result {
    f.write_str(&vars.join(", "))
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::Eq(a, b) => write!(f, "{a} = {b}"),
            Formula::Leq(a, b) => write!(f, "{a} <= {b}"),
            Formula::Lt(a, b) => write!(f, "{a} < {b}"),
            Formula::Neq(a, b) => write!(f, "{a} != {b}"),
            Formula::Not(inner) => match **inner {
                Formula::Not(..)
                | Formula::Call { .. }
                | Formula::Forall(..)
                | Formula::Exists(..)
                | Formula::Min(..)
                | Formula::Max(..) => write!(f, "!{inner}"),
                _ => write!(f, "!({inner})"),
            },
            Formula::And(a, b) => write!(f, "{} & {}", Prec(a, AND), Prec(b, UNARY)),
            Formula::Or(a, b) => write!(f, "{} or {}", Prec(a, OR), Prec(b, AND)),
            // right-associative, but nested implications are spelled out
            Formula::Implies(a, b) => write!(f, "{} -> {}", Prec(a, OR), Prec(b, OR)),
            Formula::Iff(a, b) => write!(f, "{} <-> {}", Prec(a, IFF), Prec(b, IMPLIES)),
            Formula::Forall(vs, body) => {
                f.write_str("forall ")?;
                write_vars(f, vs)?;
                write!(f, " ( {body} )")
            }
            Formula::Exists(vs, body) => {
                f.write_str("exists ")?;
                write_vars(f, vs)?;
                write!(f, " ( {body} )")
            }
            Formula::Min(v, body) => write!(f, "min {v} ( {body} )"),
            Formula::Max(v, body) => write!(f, "max {v} ( {body} )"),
            Formula::Call { name, params, args } => {
                f.write_str(name)?;
                if !params.is_empty() {
                    let ps: Vec<String> = params.iter().map(|p| p.to_string()).collect();
                    write!(f, "[{}]", ps.join(","))?;
                }
                let ts: Vec<String> = args.iter().map(|t| t.to_string()).collect();
                write!(f, "({})", ts.join(", "))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(n: &str) -> Term {
        Term::var(n)
    }

    #[test]
    fn prints_basic_forms() {
        assert_eq!(Formula::Eq(v("x"), v("x")).to_string(), "x = x");
        let f = Formula::implies(
            Formula::Leq(v("a"), v("b")),
            Formula::implies(Formula::Leq(v("b"), v("c")), Formula::Leq(v("a"), v("c"))),
        );
        assert_eq!(f.to_string(), "a <= b -> (b <= c -> a <= c)");
        let g = Formula::and(
            Formula::or(Formula::Eq(v("a"), v("b")), Formula::Eq(v("b"), v("c"))),
            Formula::not(Formula::Eq(v("a"), v("c"))),
        );
        assert_eq!(g.to_string(), "(a = b or b = c) & !(a = c)");
    }

    #[test]
    fn prints_terms_with_explicit_grouping() {
        let t = Term::meet(Term::join(v("x"), v("y")), Term::meet(v("y"), Term::Const("T".into())));
        assert_eq!(t.to_string(), "(x v y) ^ (y ^ @T)");
    }

    #[test]
    fn prints_calls_and_params() {
        let f = Formula::Call {
            name: "N".into(),
            params: vec![ParamExpr::Var("k".into(), -1), ParamExpr::Lit(3)],
            args: vec![v("y")],
        };
        assert_eq!(f.to_string(), "N[k-1,3](y)");
        assert_eq!(Formula::not(f).to_string(), "!N[k-1,3](y)");
    }
}
