//! Recursive-descent parser for formulas and definition files.
//!
//! Connective precedence, loosest first: `<->` (left), `->` (right), `or`,
//! `&`, prefix `!`. In terms `^` binds tighter than `v`; both associate to
//! the left. `>=` and `>` are read as flipped `<=` and `<`.

use thiserror::Error;

use super::ast::{Formula, ParamExpr, Term};
use super::defs::{DefError, DefTable, Definition, ParamSpec};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("SyntaxError at {line}:{col}: expected {expected}")]
    Syntax {
        line: usize,
        col: usize,
        expected: String,
    },
    #[error("UnknownDefinition: {0}")]
    UnknownDefinition(String),
    #[error("ArityMismatch: {name} takes {expected} argument(s), found {found}")]
    ArityMismatch {
        name: String,
        expected: usize,
        found: usize,
    },
    #[error("ParamArityMismatch: {name} has no definition with {found} parameter(s)")]
    ParamArityMismatch { name: String, found: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(i64),
    Const(String),
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    Semi,
    Meet,
    Eq,
    Neq,
    Le,
    Lt,
    Ge,
    Gt,
    And,
    Bang,
    Arrow,
    DArrow,
    Define,
    Plus,
    Minus,
    Eof,
}

#[derive(Debug, Clone)]
struct Spanned {
    tok: Tok,
    line: usize,
    col: usize,
}

fn is_ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_' || c == '\''
}

fn lex(text: &str) -> Result<Vec<Spanned>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0usize, 1usize, 1usize);
    while i < chars.len() {
        let c = chars[i];
        let (tl, tc) = (line, col);
        let mut advance = |n: usize, i: &mut usize| {
            *i += n;
            col += n;
        };
        if c == '\n' {
            i += 1;
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            advance(1, &mut i);
            continue;
        }
        if c == '#' {
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
            }
            continue;
        }
        let peek = |k: usize| chars.get(i + k).copied();
        let tok = if is_ident_char(c) || c == '@' {
            let start = if c == '@' { i + 1 } else { i };
            let mut j = start;
            loop {
                while j < chars.len() && is_ident_char(chars[j]) {
                    j += 1;
                }
                // hyphenated names such as `LZ-and-RZ`; never swallows `->`
                if j < chars.len()
                    && chars[j] == '-'
                    && j > start
                    && chars.get(j + 1).is_some_and(|&d| is_ident_char(d))
                {
                    j += 1;
                    continue;
                }
                break;
            }
            let word: String = chars[start..j].iter().collect();
            let n = j - i;
            advance(n, &mut i);
            if c == '@' {
                if word.is_empty() {
                    return Err(ParseError::Syntax {
                        line: tl,
                        col: tc,
                        expected: "label name after `@`".into(),
                    });
                }
                Tok::Const(word)
            } else if word.chars().all(|d| d.is_ascii_digit()) {
                Tok::Int(word.parse().map_err(|_| ParseError::Syntax {
                    line: tl,
                    col: tc,
                    expected: "integer that fits in 64 bits".into(),
                })?)
            } else {
                Tok::Ident(word)
            }
        } else {
            let (tok, n) = match (c, peek(1), peek(2)) {
                ('<', Some('-'), Some('>')) => (Tok::DArrow, 3),
                ('<', Some('='), _) => (Tok::Le, 2),
                ('<', _, _) => (Tok::Lt, 1),
                ('>', Some('='), _) => (Tok::Ge, 2),
                ('>', _, _) => (Tok::Gt, 1),
                ('-', Some('>'), _) => (Tok::Arrow, 2),
                ('-', _, _) => (Tok::Minus, 1),
                ('!', Some('='), _) => (Tok::Neq, 2),
                ('!', _, _) => (Tok::Bang, 1),
                (':', Some('='), _) => (Tok::Define, 2),
                ('=', _, _) => (Tok::Eq, 1),
                ('(', _, _) => (Tok::LParen, 1),
                (')', _, _) => (Tok::RParen, 1),
                ('[', _, _) => (Tok::LBracket, 1),
                (']', _, _) => (Tok::RBracket, 1),
                (',', _, _) => (Tok::Comma, 1),
                (';', _, _) => (Tok::Semi, 1),
                ('^', _, _) => (Tok::Meet, 1),
                ('&', _, _) => (Tok::And, 1),
                ('+', _, _) => (Tok::Plus, 1),
                _ => {
                    return Err(ParseError::Syntax {
                        line: tl,
                        col: tc,
                        expected: format!("a token, found `{c}`"),
                    })
                }
            };
            advance(n, &mut i);
            tok
        };
        out.push(Spanned { tok, line: tl, col: tc });
    }
    out.push(Spanned { tok: Tok::Eof, line, col });
    Ok(out)
}

const KEYWORDS: &[&str] = &["v", "or", "forall", "exists", "min", "max", "def"];

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
    /// Farthest error seen, reported when every alternative fails.
    farthest: Option<(usize, ParseError)>,
}

type PResult<T> = Result<T, ParseError>;

impl Parser {
    fn new(text: &str) -> PResult<Self> {
        Ok(Parser {
            toks: lex(text)?,
            pos: 0,
            farthest: None,
        })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn peek_at(&self, k: usize) -> &Tok {
        &self.toks[(self.pos + k).min(self.toks.len() - 1)].tok
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].tok.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error(&mut self, expected: impl Into<String>) -> ParseError {
        let s = &self.toks[self.pos];
        let err = ParseError::Syntax {
            line: s.line,
            col: s.col,
            expected: expected.into(),
        };
        match &self.farthest {
            Some((p, _)) if *p > self.pos => {}
            _ => self.farthest = Some((self.pos, err.clone())),
        }
        err
    }

    fn best_error(&mut self, fallback: ParseError) -> ParseError {
        match self.farthest.take() {
            Some((_, e)) => e,
            None => fallback,
        }
    }

    fn expect(&mut self, tok: Tok, what: &str) -> PResult<()> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            Err(self.error(what))
        }
    }

    fn is_keyword(&self, kw: &str) -> bool {
        matches!(self.peek(), Tok::Ident(w) if w == kw)
    }

    fn ident(&mut self, what: &str) -> PResult<String> {
        match self.peek().clone() {
            Tok::Ident(w) if !KEYWORDS.contains(&w.as_str()) => {
                self.bump();
                Ok(w)
            }
            _ => Err(self.error(what)),
        }
    }

    fn variable(&mut self) -> PResult<String> {
        let name = self.ident("a variable name")?;
        if name.contains('-') {
            self.pos -= 1;
            return Err(self.error("a variable name without `-`"));
        }
        Ok(name)
    }

    fn formula(&mut self) -> PResult<Formula> {
        let mut lhs = self.implication()?;
        while *self.peek() == Tok::DArrow {
            self.bump();
            let rhs = self.implication()?;
            lhs = Formula::iff(lhs, rhs);
        }
        Ok(lhs)
    }

    fn implication(&mut self) -> PResult<Formula> {
        let lhs = self.disjunction()?;
        if *self.peek() == Tok::Arrow {
            self.bump();
            let rhs = self.implication()?;
            return Ok(Formula::implies(lhs, rhs));
        }
        Ok(lhs)
    }

    fn disjunction(&mut self) -> PResult<Formula> {
        let mut lhs = self.conjunction()?;
        while self.is_keyword("or") {
            self.bump();
            let rhs = self.conjunction()?;
            lhs = Formula::or(lhs, rhs);
        }
        Ok(lhs)
    }

    fn conjunction(&mut self) -> PResult<Formula> {
        let mut lhs = self.unary()?;
        while *self.peek() == Tok::And {
            self.bump();
            let rhs = self.unary()?;
            lhs = Formula::and(lhs, rhs);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> PResult<Formula> {
        if *self.peek() == Tok::Bang {
            self.bump();
            return Ok(Formula::not(self.unary()?));
        }
        self.primary()
    }

    fn var_list(&mut self) -> PResult<Vec<String>> {
        let mut vars = vec![self.variable()?];
        while *self.peek() == Tok::Comma {
            self.bump();
            vars.push(self.variable()?);
        }
        Ok(vars)
    }

    fn paren_body(&mut self) -> PResult<Formula> {
        self.expect(Tok::LParen, "`(`")?;
        let body = self.formula()?;
        self.expect(Tok::RParen, "`)`")?;
        Ok(body)
    }

    fn starts_comparison_tail(&self) -> bool {
        matches!(
            self.peek(),
            Tok::Eq | Tok::Neq | Tok::Le | Tok::Lt | Tok::Ge | Tok::Gt | Tok::Meet
        ) || matches!(self.peek(), Tok::Ident(w) if w == "v")
    }

    fn primary(&mut self) -> PResult<Formula> {
        match self.peek().clone() {
            Tok::Ident(w) if w == "forall" || w == "exists" => {
                self.bump();
                let vars = self.var_list()?;
                let body = self.paren_body()?;
                Ok(if w == "forall" {
                    Formula::Forall(vars, Box::new(body))
                } else {
                    Formula::Exists(vars, Box::new(body))
                })
            }
            Tok::Ident(w) if w == "min" || w == "max" => {
                self.bump();
                let var = self.variable()?;
                let body = self.paren_body()?;
                Ok(if w == "min" {
                    Formula::Min(var, Box::new(body))
                } else {
                    Formula::Max(var, Box::new(body))
                })
            }
            Tok::LParen => {
                let save = self.pos;
                if let Ok(f) = self.paren_body() {
                    if !self.starts_comparison_tail() {
                        return Ok(f);
                    }
                }
                self.pos = save;
                self.comparison()
            }
            Tok::Ident(w)
                if !KEYWORDS.contains(&w.as_str())
                    && matches!(self.peek_at(1), Tok::LParen | Tok::LBracket) =>
            {
                self.call()
            }
            _ => self.comparison(),
        }
    }

    fn call(&mut self) -> PResult<Formula> {
        let name = self.ident("a definition name")?;
        let mut params = Vec::new();
        if *self.peek() == Tok::LBracket {
            self.bump();
            params.push(self.param_expr()?);
            while *self.peek() == Tok::Comma {
                self.bump();
                params.push(self.param_expr()?);
            }
            self.expect(Tok::RBracket, "`]`")?;
        }
        self.expect(Tok::LParen, "`(`")?;
        let mut args = Vec::new();
        if *self.peek() != Tok::RParen {
            args.push(self.term()?);
            while *self.peek() == Tok::Comma {
                self.bump();
                args.push(self.term()?);
            }
        }
        self.expect(Tok::RParen, "`)` or `,`")?;
        Ok(Formula::Call { name, params, args })
    }

    fn signed_int(&mut self) -> PResult<i64> {
        let neg = if *self.peek() == Tok::Minus {
            self.bump();
            true
        } else {
            false
        };
        match self.bump() {
            Tok::Int(n) => Ok(if neg { -n } else { n }),
            _ => {
                self.pos -= 1;
                Err(self.error("an integer"))
            }
        }
    }

    fn param_expr(&mut self) -> PResult<ParamExpr> {
        match self.peek().clone() {
            Tok::Int(_) | Tok::Minus => Ok(ParamExpr::Lit(self.signed_int()?)),
            Tok::Ident(w) => {
                self.bump();
                // `k-1` lexes as one hyphenated word
                if let Some((base, off)) = w.split_once('-') {
                    let valid_base = base.chars().next().is_some_and(|c| c.is_ascii_alphabetic())
                        && !base.contains('\'');
                    return match off.parse::<i64>() {
                        Ok(k) if valid_base => Ok(ParamExpr::Var(base.to_string(), -k)),
                        _ => {
                            self.pos -= 1;
                            Err(self.error("a parameter expression such as `k`, `k-1` or `k+1`"))
                        }
                    };
                }
                match self.peek() {
                    Tok::Plus => {
                        self.bump();
                        let k = self.signed_int()?;
                        Ok(ParamExpr::Var(w, k))
                    }
                    Tok::Minus => {
                        self.bump();
                        let k = self.signed_int()?;
                        Ok(ParamExpr::Var(w, -k))
                    }
                    _ => Ok(ParamExpr::Var(w, 0)),
                }
            }
            _ => Err(self.error("a parameter expression")),
        }
    }

    fn comparison(&mut self) -> PResult<Formula> {
        let lhs = self.term()?;
        let op = self.bump();
        let build: fn(Term, Term) -> Formula = match op {
            Tok::Eq => Formula::Eq,
            Tok::Neq => Formula::Neq,
            Tok::Le => Formula::Leq,
            Tok::Lt => Formula::Lt,
            Tok::Ge => |a, b| Formula::Leq(b, a),
            Tok::Gt => |a, b| Formula::Lt(b, a),
            _ => {
                self.pos -= 1;
                return Err(self.error("a comparison (`=`, `!=`, `<=`, `<`, `>=`, `>`)"));
            }
        };
        let rhs = self.term()?;
        Ok(build(lhs, rhs))
    }

    fn term(&mut self) -> PResult<Term> {
        let mut lhs = self.meet_term()?;
        while self.is_keyword("v") {
            self.bump();
            let rhs = self.meet_term()?;
            lhs = Term::join(lhs, rhs);
        }
        Ok(lhs)
    }

    fn meet_term(&mut self) -> PResult<Term> {
        let mut lhs = self.atom_term()?;
        while *self.peek() == Tok::Meet {
            self.bump();
            let rhs = self.atom_term()?;
            lhs = Term::meet(lhs, rhs);
        }
        Ok(lhs)
    }

    fn atom_term(&mut self) -> PResult<Term> {
        match self.peek().clone() {
            Tok::Const(c) => {
                self.bump();
                Ok(Term::Const(c))
            }
            Tok::LParen => {
                self.bump();
                let t = self.term()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(t)
            }
            Tok::Ident(_) => Ok(Term::Var(self.variable()?)),
            _ => Err(self.error("a term")),
        }
    }

    fn finish(&mut self) -> PResult<()> {
        if *self.peek() == Tok::Eof {
            Ok(())
        } else {
            Err(self.error("end of input"))
        }
    }

    fn param_spec(&mut self) -> PResult<ParamSpec> {
        match self.peek().clone() {
            Tok::Int(_) | Tok::Minus => Ok(ParamSpec::Exact(self.signed_int()?)),
            Tok::Ident(_) => {
                let name = self.variable()?;
                if *self.peek() == Tok::Ge {
                    self.bump();
                    let min = self.signed_int()?;
                    Ok(ParamSpec::Var { name, min: Some(min) })
                } else {
                    Ok(ParamSpec::Var { name, min: None })
                }
            }
            _ => Err(self.error("a parameter (`3`, `k` or `k>=2`)")),
        }
    }

    fn definition(&mut self) -> PResult<Definition> {
        let line = self.toks[self.pos].line;
        if !self.is_keyword("def") {
            return Err(self.error("`def`"));
        }
        self.bump();
        let name = self.ident("a definition name")?;
        let mut params = Vec::new();
        if *self.peek() == Tok::LBracket {
            self.bump();
            params.push(self.param_spec()?);
            while *self.peek() == Tok::Comma {
                self.bump();
                params.push(self.param_spec()?);
            }
            self.expect(Tok::RBracket, "`]`")?;
        }
        self.expect(Tok::LParen, "`(`")?;
        let args = if *self.peek() == Tok::RParen {
            Vec::new()
        } else {
            self.var_list()?
        };
        self.expect(Tok::RParen, "`)`")?;
        self.expect(Tok::Define, "`:=`")?;
        let body = self.formula()?;
        self.expect(Tok::Semi, "`;`")?;
        Ok(Definition {
            name,
            params,
            args,
            body,
            line,
        })
    }
}

/// Parse formula text without resolving calls.
pub fn parse_formula(text: &str) -> Result<Formula, ParseError> {
    let mut p = Parser::new(text)?;
    let result = p.formula().and_then(|f| p.finish().map(|_| f));
    result.map_err(|e| p.best_error(e))
}

/// Parse formula text and check every call against `defs`.
pub fn parse(text: &str, defs: &DefTable) -> Result<Formula, ParseError> {
    let f = parse_formula(text)?;
    check_calls(&f, defs)?;
    Ok(f)
}

pub(crate) fn check_calls(f: &Formula, defs: &DefTable) -> Result<(), ParseError> {
    for (name, params, arity) in f.calls() {
        let Some(family) = defs.family(name, params.len()) else {
            if defs.has_name(name) {
                return Err(ParseError::ParamArityMismatch {
                    name: name.to_string(),
                    found: params.len(),
                });
            }
            return Err(ParseError::UnknownDefinition(name.to_string()));
        };
        let expected = family.arity();
        if expected != arity {
            return Err(ParseError::ArityMismatch {
                name: name.to_string(),
                expected,
                found: arity,
            });
        }
    }
    Ok(())
}

/// Parse the definition-file format: `def Name[params](args) := formula ;`.
pub fn parse_definitions(text: &str) -> Result<Vec<Definition>, DefError> {
    let mut p = Parser::new(text).map_err(DefError::Parse)?;
    let mut out = Vec::new();
    while *p.peek() != Tok::Eof {
        match p.definition() {
            Ok(d) => out.push(d),
            Err(e) => return Err(DefError::Parse(p.best_error(e))),
        }
        p.farthest = None;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(n: &str) -> Term {
        Term::var(n)
    }

    #[test]
    fn parses_reflexivity() {
        let f = parse_formula("x = x").unwrap();
        assert_eq!(f, Formula::Eq(v("x"), v("x")));
        assert_eq!(f.free_vars(), vec!["x"]);
    }

    #[test]
    fn parses_atom_formula() {
        let f = parse_formula("exists y ( forall z ( y <= z ) & min x ( x != y ) )").unwrap();
        let expected = Formula::exists(
            &["y"],
            Formula::and(
                Formula::forall(&["z"], Formula::Leq(v("y"), v("z"))),
                Formula::min("x", Formula::Neq(v("x"), v("y"))),
            ),
        );
        assert_eq!(f, expected);
        assert_eq!(f.free_vars(), vec!["x"]);
    }

    #[test]
    fn parses_median_identity() {
        let f = parse_formula(
            "forall y, z ( (x v y) ^ (y v z) ^ (z v x) = (x ^ y) v (y ^ z) v (z ^ x) )",
        )
        .unwrap();
        let lhs = Term::meet(
            Term::meet(Term::join(v("x"), v("y")), Term::join(v("y"), v("z"))),
            Term::join(v("z"), v("x")),
        );
        let rhs = Term::join(
            Term::join(Term::meet(v("x"), v("y")), Term::meet(v("y"), v("z"))),
            Term::meet(v("z"), v("x")),
        );
        assert_eq!(f, Formula::forall(&["y", "z"], Formula::Eq(lhs, rhs)));
    }

    #[test]
    fn precedence_and_associativity() {
        let f = parse_formula("a <= b & b <= c or c = a -> a = a -> b = b <-> c = c").unwrap();
        let expected = Formula::iff(
            Formula::implies(
                Formula::or(
                    Formula::and(Formula::Leq(v("a"), v("b")), Formula::Leq(v("b"), v("c"))),
                    Formula::Eq(v("c"), v("a")),
                ),
                Formula::implies(Formula::Eq(v("a"), v("a")), Formula::Eq(v("b"), v("b"))),
            ),
            Formula::Eq(v("c"), v("c")),
        );
        assert_eq!(f, expected);
        assert_eq!(parse_formula("x ^ y v z = z").unwrap(),
            Formula::Eq(Term::join(Term::meet(v("x"), v("y")), v("z")), v("z")));
    }

    #[test]
    fn flipped_relations_normalize() {
        assert_eq!(parse_formula("x >= y").unwrap(), Formula::Leq(v("y"), v("x")));
        assert_eq!(parse_formula("x > y").unwrap(), Formula::Lt(v("y"), v("x")));
    }

    #[test]
    fn parenthesized_terms_and_formulas() {
        assert_eq!(
            parse_formula("(x v y) = y").unwrap(),
            Formula::Eq(Term::join(v("x"), v("y")), v("y"))
        );
        assert_eq!(parse_formula("((x = y))").unwrap(), Formula::Eq(v("x"), v("y")));
        assert_eq!(parse_formula("!(x = y)").unwrap(), Formula::not(Formula::Eq(v("x"), v("y"))));
        assert_eq!(parse_formula("!x = y").unwrap(), Formula::not(Formula::Eq(v("x"), v("y"))));
    }

    #[test]
    fn calls_with_params_and_hyphenated_names() {
        let f = parse_formula("LZ-and-RZ(y) & N[k-1](x) & Deg[k+1](x) & 0-red(z) & ZM'(x)").unwrap();
        let calls = f.calls();
        assert_eq!(calls.len(), 5);
        assert_eq!(calls[0].0, "LZ-and-RZ");
        assert_eq!(calls[1].1, &[ParamExpr::Var("k".into(), -1)]);
        assert_eq!(calls[2].1, &[ParamExpr::Var("k".into(), 1)]);
        assert_eq!(calls[3].0, "0-red");
        assert_eq!(calls[4].0, "ZM'");
        let g = parse_formula("x->y = y").unwrap_err();
        assert!(matches!(g, ParseError::Syntax { .. }));
        let h = parse_formula("x <= y->y = y").unwrap();
        assert!(matches!(h, Formula::Implies(..)));
    }

    #[test]
    fn constants() {
        assert_eq!(
            parse_formula("x < @Nomega").unwrap(),
            Formula::Lt(v("x"), Term::Const("Nomega".into()))
        );
    }

    #[test]
    fn syntax_errors_carry_positions() {
        match parse_formula("forall y ( x <= )").unwrap_err() {
            ParseError::Syntax { line, col, .. } => assert_eq!((line, col), (1, 17)),
            e => panic!("{e:?}"),
        }
        match parse_formula("x = x\n& y").unwrap_err() {
            ParseError::Syntax { line, .. } => assert_eq!(line, 2),
            e => panic!("{e:?}"),
        }
        assert!(parse_formula("x = x )").is_err());
        assert!(parse_formula("forall v ( v = v )").is_err());
    }

    #[test]
    fn definitions() {
        let defs = parse_definitions(
            "# comment\ndef N[k>=3](x) := min x ( exists y ( N[k-1](y) & y < x ) ) ;\n\
             def Nil-part(x, y) := y <= x ;\ndef C[0](x) := x = x;",
        )
        .unwrap();
        assert_eq!(defs.len(), 3);
        assert_eq!(defs[0].params, vec![ParamSpec::Var { name: "k".into(), min: Some(3) }]);
        assert_eq!(defs[1].args, vec!["x", "y"]);
        assert_eq!(defs[2].params, vec![ParamSpec::Exact(0)]);
        assert_eq!(defs[2].line, 4);
        assert!(parse_definitions("def A(x) := x = x").is_err());
    }
}
