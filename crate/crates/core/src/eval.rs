//! Model checking of formulas over finite lattices.
//!
//! Formulas are compiled to a flat program over variable slots. Subformulas
//! that contain quantifiers are memoized on the values of their free slots,
//! and every definition instance reached through a call is tabulated once
//! per evaluator as a relation over the carrier.

use std::collections::{BTreeMap, HashMap};
use std::rc::Rc;
use std::str::FromStr;

use thiserror::Error;

use crate::formula::{DefError, DefTable, Formula, ParamExpr, Term};
use crate::lattice::Lattice;
use crate::subset::Subset;

/// Variable assignment by element index.
pub type Env = BTreeMap<String, usize>;

const MEMO_LIMIT: usize = 1 << 22;
const RELATION_LIMIT: usize = 1 << 24;
const MAX_SLOTS: usize = 128;
const MAX_CALL_DEPTH: usize = 256;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("UnboundVariable: {0}")]
    UnboundVariable(String),
    #[error("UnknownConstant: @{0}")]
    UnknownConstant(String),
    #[error("WrongFreeVariableCount: expected 1, found {0}")]
    WrongFreeVariableCount(usize),
    #[error("UnboundParameter: {0}")]
    UnboundParameter(String),
    #[error("TooLarge: {0}")]
    TooLarge(String),
    #[error(transparent)]
    Def(#[from] DefError),
}

/// Truth table of a formula over tuples of elements, first variable fastest.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relation {
    arity: usize,
    n: usize,
    bits: Vec<bool>,
}

impl Relation {
    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn get(&self, tuple: &[usize]) -> bool {
        self.bits[self.offset(tuple)]
    }

    fn offset(&self, tuple: &[usize]) -> usize {
        tuple.iter().rev().fold(0, |acc, &v| acc * self.n + v)
    }

    /// Satisfying tuples in table order.
    pub fn tuples(&self) -> impl Iterator<Item = Vec<usize>> + '_ {
        let (n, k) = (self.n, self.arity);
        (0..self.bits.len()).filter(|&i| self.bits[i]).map(move |mut i| {
            let mut t = Vec::with_capacity(k);
            for _ in 0..k {
                t.push(i % n);
                i /= n;
            }
            t
        })
    }
}

#[derive(Debug, Clone, Copy)]
enum TermCode {
    Slot(u16),
    Elem(u32),
    Meet(u32, u32),
    Join(u32, u32),
}

#[derive(Debug)]
enum Op {
    Eq(u32, u32),
    Leq(u32, u32),
    Lt(u32, u32),
    Neq(u32, u32),
    Not(u32),
    And(u32, u32),
    Or(u32, u32),
    Implies(u32, u32),
    Iff(u32, u32),
    Forall(Vec<u16>, u32),
    Exists(Vec<u16>, u32),
    Min(u16, u32),
    Max(u16, u32),
    Call(Rc<Relation>, Vec<u32>),
}

#[derive(Debug)]
struct Node {
    op: Op,
    free: u128,
    heavy: bool,
    memo_slots: Option<Vec<u16>>,
}

#[derive(Debug, Default)]
struct Program {
    nodes: Vec<Node>,
    terms: Vec<TermCode>,
    root: u32,
    slots: usize,
}

fn term_slots(terms: &[TermCode], t: u32) -> u128 {
    match terms[t as usize] {
        TermCode::Slot(s) => 1u128 << s,
        TermCode::Elem(_) => 0,
        TermCode::Meet(a, b) | TermCode::Join(a, b) => term_slots(terms, a) | term_slots(terms, b),
    }
}

/// Evaluates formulas over one lattice against one definition table.
pub struct Evaluator<'a> {
    lattice: &'a Lattice,
    defs: &'a DefTable,
    relations: HashMap<(String, Vec<i64>), Rc<Relation>>,
    active: Vec<(String, Vec<i64>)>,
    below: Rc<Vec<Vec<u32>>>,
    above: Rc<Vec<Vec<u32>>>,
}

struct Compiler<'e, 'a> {
    ev: &'e mut Evaluator<'a>,
    prog: Program,
    scope: Vec<(String, u16)>,
    params: &'e BTreeMap<String, i64>,
}

impl Compiler<'_, '_> {
    fn slot_of(&self, v: &str) -> Result<u16, EvalError> {
        self.scope
            .iter()
            .rev()
            .find(|(name, _)| name == v)
            .map(|(_, s)| *s)
            .ok_or_else(|| EvalError::UnboundVariable(v.to_string()))
    }

    fn term(&mut self, t: &Term) -> Result<u32, EvalError> {
        let code = match t {
            Term::Var(v) => TermCode::Slot(self.slot_of(v)?),
            Term::Const(c) => TermCode::Elem(
                self.ev
                    .lattice
                    .resolve(c)
                    .ok_or_else(|| EvalError::UnknownConstant(c.clone()))? as u32,
            ),
            Term::Meet(a, b) => {
                let (a, b) = (self.term(a)?, self.term(b)?);
                TermCode::Meet(a, b)
            }
            Term::Join(a, b) => {
                let (a, b) = (self.term(a)?, self.term(b)?);
                TermCode::Join(a, b)
            }
        };
        self.prog.terms.push(code);
        Ok(self.prog.terms.len() as u32 - 1)
    }

    fn push(&mut self, op: Op, free: u128, heavy: bool) -> u32 {
        self.prog.nodes.push(Node {
            op,
            free,
            heavy,
            memo_slots: None,
        });
        self.prog.nodes.len() as u32 - 1
    }

    fn node(&self, id: u32) -> &Node {
        &self.prog.nodes[id as usize]
    }

    fn bind(&mut self, vars: &[String]) -> Result<Vec<u16>, EvalError> {
        let mut slots = Vec::with_capacity(vars.len());
        for v in vars {
            let s = self.scope.len();
            if s >= MAX_SLOTS {
                return Err(EvalError::TooLarge("quantifier nesting".into()));
            }
            self.prog.slots = self.prog.slots.max(s + 1);
            self.scope.push((v.clone(), s as u16));
            slots.push(s as u16);
        }
        Ok(slots)
    }

    fn formula(&mut self, f: &Formula) -> Result<u32, EvalError> {
        let cmp = |c: &mut Self, a: &Term, b: &Term| -> Result<(u32, u32, u128), EvalError> {
            let (a, b) = (c.term(a)?, c.term(b)?);
            let free = term_slots(&c.prog.terms, a) | term_slots(&c.prog.terms, b);
            Ok((a, b, free))
        };
        let id = match f {
            Formula::Eq(a, b) => {
                let (a, b, fr) = cmp(self, a, b)?;
                self.push(Op::Eq(a, b), fr, false)
            }
            Formula::Leq(a, b) => {
                let (a, b, fr) = cmp(self, a, b)?;
                self.push(Op::Leq(a, b), fr, false)
            }
            Formula::Lt(a, b) => {
                let (a, b, fr) = cmp(self, a, b)?;
                self.push(Op::Lt(a, b), fr, false)
            }
            Formula::Neq(a, b) => {
                let (a, b, fr) = cmp(self, a, b)?;
                self.push(Op::Neq(a, b), fr, false)
            }
            Formula::Not(g) => {
                let g = self.formula(g)?;
                let (fr, h) = (self.node(g).free, self.node(g).heavy);
                self.push(Op::Not(g), fr, h)
            }
            Formula::And(a, b)
            | Formula::Or(a, b)
            | Formula::Implies(a, b)
            | Formula::Iff(a, b) => {
                let (a, b) = (self.formula(a)?, self.formula(b)?);
                let fr = self.node(a).free | self.node(b).free;
                let h = self.node(a).heavy || self.node(b).heavy;
                let op = match f {
                    Formula::And(..) => Op::And(a, b),
                    Formula::Or(..) => Op::Or(a, b),
                    Formula::Implies(..) => Op::Implies(a, b),
                    _ => Op::Iff(a, b),
                };
                self.push(op, fr, h)
            }
            Formula::Forall(vs, body) | Formula::Exists(vs, body) => {
                let depth = self.scope.len();
                let slots = self.bind(vs)?;
                let body = self.formula(body);
                self.scope.truncate(depth);
                let body = body?;
                let mut fr = self.node(body).free;
                for s in &slots {
                    fr &= !(1u128 << s);
                }
                let op = if matches!(f, Formula::Forall(..)) {
                    Op::Forall(slots, body)
                } else {
                    Op::Exists(slots, body)
                };
                self.push(op, fr, true)
            }
            Formula::Min(x, body) | Formula::Max(x, body) => {
                let slot = self.slot_of(x)?;
                let body = self.formula(body)?;
                let fr = self.node(body).free | (1u128 << slot);
                let op = if matches!(f, Formula::Min(..)) {
                    Op::Min(slot, body)
                } else {
                    Op::Max(slot, body)
                };
                self.push(op, fr, true)
            }
            Formula::Call { name, params, args } => {
                let values = params
                    .iter()
                    .map(|p| match p {
                        ParamExpr::Lit(n) => Ok(*n),
                        ParamExpr::Var(v, off) => self
                            .params
                            .get(v)
                            .map(|n| n + off)
                            .ok_or_else(|| EvalError::UnboundParameter(v.clone())),
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                let rel = self.ev.instance(name, &values)?;
                if rel.arity != args.len() {
                    return Err(DefError::Parse(crate::formula::ParseError::ArityMismatch {
                        name: name.clone(),
                        expected: rel.arity,
                        found: args.len(),
                    })
                    .into());
                }
                let mut ts = Vec::with_capacity(args.len());
                let mut fr = 0;
                for a in args {
                    let t = self.term(a)?;
                    fr |= term_slots(&self.prog.terms, t);
                    ts.push(t);
                }
                self.push(Op::Call(rel, ts), fr, false)
            }
        };
        Ok(id)
    }
}

struct Machine<'p> {
    prog: &'p Program,
    lattice: &'p Lattice,
    below: &'p [Vec<u32>],
    above: &'p [Vec<u32>],
    memo: Vec<Vec<u8>>,
    n: usize,
}

impl<'p> Machine<'p> {
    fn new(prog: &'p Program, lattice: &'p Lattice, below: &'p [Vec<u32>], above: &'p [Vec<u32>]) -> Self {
        Machine {
            prog,
            lattice,
            below,
            above,
            memo: (0..prog.nodes.len()).map(|_| Vec::new()).collect(),
            n: lattice.len(),
        }
    }

    fn term(&self, t: u32, env: &[u32]) -> usize {
        match self.prog.terms[t as usize] {
            TermCode::Slot(s) => env[s as usize] as usize,
            TermCode::Elem(e) => e as usize,
            TermCode::Meet(a, b) => self.lattice.meet(self.term(a, env), self.term(b, env)),
            TermCode::Join(a, b) => self.lattice.join(self.term(a, env), self.term(b, env)),
        }
    }

    fn eval(&mut self, id: u32, env: &mut [u32]) -> bool {
        let node = &self.prog.nodes[id as usize];
        let Some(slots) = &node.memo_slots else {
            return self.step(id, env);
        };
        let key = slots
            .iter()
            .rev()
            .fold(0usize, |acc, &s| acc * self.n + env[s as usize] as usize);
        let table = &mut self.memo[id as usize];
        if table.is_empty() {
            *table = vec![0u8; self.n.pow(slots.len() as u32)];
        }
        match table[key] {
            1 => false,
            2 => true,
            _ => {
                let v = self.step(id, env);
                self.memo[id as usize][key] = 1 + v as u8;
                v
            }
        }
    }

    fn step(&mut self, id: u32, env: &mut [u32]) -> bool {
        let prog = self.prog;
        match &prog.nodes[id as usize].op {
            Op::Eq(a, b) => self.term(*a, env) == self.term(*b, env),
            Op::Leq(a, b) => self.lattice.leq(self.term(*a, env), self.term(*b, env)),
            Op::Lt(a, b) => self.lattice.lt(self.term(*a, env), self.term(*b, env)),
            Op::Neq(a, b) => self.term(*a, env) != self.term(*b, env),
            Op::Not(g) => !self.eval(*g, env),
            Op::And(a, b) => self.eval(*a, env) && self.eval(*b, env),
            Op::Or(a, b) => self.eval(*a, env) || self.eval(*b, env),
            Op::Implies(a, b) => !self.eval(*a, env) || self.eval(*b, env),
            Op::Iff(a, b) => self.eval(*a, env) == self.eval(*b, env),
            Op::Forall(slots, body) => self.quantify(slots, *body, env, false),
            Op::Exists(slots, body) => self.quantify(slots, *body, env, true),
            Op::Min(x, body) | Op::Max(x, body) => {
                if !self.eval(*body, env) {
                    return false;
                }
                let x = *x as usize;
                let saved = env[x];
                let others = if matches!(prog.nodes[id as usize].op, Op::Min(..)) {
                    &self.below[saved as usize]
                } else {
                    &self.above[saved as usize]
                };
                let mut ok = true;
                for &y in others {
                    env[x] = y;
                    if self.eval(*body, env) {
                        ok = false;
                        break;
                    }
                }
                env[x] = saved;
                ok
            }
            Op::Call(rel, args) => {
                let mut off = 0;
                for &t in args.iter().rev() {
                    off = off * self.n + self.term(t, env);
                }
                rel.bits[off]
            }
        }
    }

    // `any` selects existential semantics.
    fn quantify(&mut self, slots: &[u16], body: u32, env: &mut [u32], any: bool) -> bool {
        let n = self.n as u32;
        for &s in slots {
            env[s as usize] = 0;
        }
        loop {
            if self.eval(body, env) == any {
                return any;
            }
            let mut i = 0;
            loop {
                if i == slots.len() {
                    return !any;
                }
                let s = slots[i] as usize;
                env[s] += 1;
                if env[s] < n {
                    break;
                }
                env[s] = 0;
                i += 1;
            }
        }
    }
}

fn strict_neighbours(l: &Lattice, below: bool) -> Vec<Vec<u32>> {
    (0..l.len())
        .map(|a| {
            (0..l.len())
                .filter(|&b| if below { l.lt(b, a) } else { l.lt(a, b) })
                .map(|b| b as u32)
                .collect()
        })
        .collect()
}

impl<'a> Evaluator<'a> {
    pub fn new(lattice: &'a Lattice, defs: &'a DefTable) -> Self {
        Evaluator {
            lattice,
            defs,
            relations: HashMap::new(),
            active: Vec::new(),
            below: Rc::new(strict_neighbours(lattice, true)),
            above: Rc::new(strict_neighbours(lattice, false)),
        }
    }

    pub fn lattice(&self) -> &'a Lattice {
        self.lattice
    }

    pub fn defs(&self) -> &'a DefTable {
        self.defs
    }

    fn compile(
        &mut self,
        f: &Formula,
        free: &[String],
        params: &BTreeMap<String, i64>,
    ) -> Result<Program, EvalError> {
        let mut c = Compiler {
            ev: self,
            prog: Program::default(),
            scope: Vec::new(),
            params,
        };
        c.bind(free)?;
        c.prog.slots = c.prog.slots.max(free.len());
        let root = c.formula(f)?;
        let mut prog = c.prog;
        prog.root = root;
        let n = self.lattice.len();
        for node in &mut prog.nodes {
            let k = node.free.count_ones() as usize;
            if node.heavy && k <= 3 && n.checked_pow(k as u32).is_some_and(|s| s <= MEMO_LIMIT) {
                node.memo_slots = Some((0..MAX_SLOTS as u16).filter(|s| node.free >> s & 1 == 1).collect());
            }
        }
        Ok(prog)
    }

    /// Truth table of `f` over assignments to `vars` (each ranging over the carrier).
    pub fn relation(&mut self, f: &Formula, vars: &[String]) -> Result<Relation, EvalError> {
        self.relation_with(f, vars, &BTreeMap::new())
    }

    fn relation_with(
        &mut self,
        f: &Formula,
        vars: &[String],
        params: &BTreeMap<String, i64>,
    ) -> Result<Relation, EvalError> {
        let n = self.lattice.len();
        let size = n
            .checked_pow(vars.len() as u32)
            .filter(|&s| s <= RELATION_LIMIT)
            .ok_or_else(|| EvalError::TooLarge(format!("relation of arity {}", vars.len())))?;
        let prog = self.compile(f, vars, params)?;
        let (below, above) = (self.below.clone(), self.above.clone());
        let mut m = Machine::new(&prog, self.lattice, &below, &above);
        let mut env = vec![0u32; prog.slots.max(1)];
        let mut bits = Vec::with_capacity(size);
        for mut i in 0..size {
            for slot in env.iter_mut().take(vars.len()) {
                *slot = (i % n) as u32;
                i /= n;
            }
            bits.push(m.eval(prog.root, &mut env));
        }
        Ok(Relation {
            arity: vars.len(),
            n,
            bits,
        })
    }

    /// The tabulated relation of one concrete definition instance.
    pub fn instance(&mut self, name: &str, values: &[i64]) -> Result<Rc<Relation>, EvalError> {
        let key = (name.to_string(), values.to_vec());
        if let Some(r) = self.relations.get(&key) {
            return Ok(r.clone());
        }
        if self.active.contains(&key) || self.active.len() >= MAX_CALL_DEPTH {
            return Err(DefError::RecursionNotWellFounded(name.to_string()).into());
        }
        let def = self.defs.resolve(name, values)?;
        let bindings = def.bind(values);
        self.active.push(key.clone());
        let rel = self.relation_with(&def.body, &def.args, &bindings);
        self.active.pop();
        let rel = Rc::new(rel?);
        self.relations.insert(key, rel.clone());
        Ok(rel)
    }

    /// Truth of `f` under `env`; every free variable of `f` must be assigned.
    pub fn eval(&mut self, f: &Formula, env: &Env) -> Result<bool, EvalError> {
        let free = f.free_vars();
        let mut values = Vec::with_capacity(free.len());
        for v in &free {
            let e = *env.get(v).ok_or_else(|| EvalError::UnboundVariable(v.clone()))?;
            if e >= self.lattice.len() {
                return Err(EvalError::UnboundVariable(v.clone()));
            }
            values.push(e as u32);
        }
        let prog = self.compile(f, &free, &BTreeMap::new())?;
        let (below, above) = (self.below.clone(), self.above.clone());
        let mut m = Machine::new(&prog, self.lattice, &below, &above);
        let mut slots = vec![0u32; prog.slots.max(1)];
        slots[..values.len()].copy_from_slice(&values);
        Ok(m.eval(prog.root, &mut slots))
    }

    /// The set defined by a formula with exactly one free variable.
    pub fn defined_set(&mut self, f: &Formula) -> Result<Subset, EvalError> {
        let free = f.free_vars();
        if free.len() != 1 {
            return Err(EvalError::WrongFreeVariableCount(free.len()));
        }
        let rel = self.relation(f, &free)?;
        Ok(Subset::from_indices(
            self.lattice.len(),
            (0..self.lattice.len()).filter(|&e| rel.bits[e]),
        ))
    }

    /// Defined set of a one-argument definition instance.
    pub fn defined_set_of(&mut self, name: &str, values: &[i64]) -> Result<Subset, EvalError> {
        let rel = self.instance(name, values)?;
        if rel.arity != 1 {
            return Err(EvalError::WrongFreeVariableCount(rel.arity));
        }
        Ok(Subset::from_indices(
            self.lattice.len(),
            (0..self.lattice.len()).filter(|&e| rel.bits[e]),
        ))
    }
}

/// Truth of a definition-free formula.
pub fn eval(lattice: &Lattice, f: &Formula, env: &Env) -> Result<bool, EvalError> {
    let defs = DefTable::new();
    Evaluator::new(lattice, &defs).eval(f, env)
}

/// Set defined by a definition-free formula with one free variable.
pub fn defined_set(lattice: &Lattice, f: &Formula) -> Result<Subset, EvalError> {
    let defs = DefTable::new();
    Evaluator::new(lattice, &defs).defined_set(f)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PropertyKind {
    Atom,
    Coatom,
    Neutral,
    Distributive,
    LowerModular,
    ChainDownset,
}

impl PropertyKind {
    pub const ALL: [PropertyKind; 6] = [
        PropertyKind::Atom,
        PropertyKind::Coatom,
        PropertyKind::Neutral,
        PropertyKind::Distributive,
        PropertyKind::LowerModular,
        PropertyKind::ChainDownset,
    ];

    pub fn name(self) -> &'static str {
        match self {
            PropertyKind::Atom => "Atom",
            PropertyKind::Coatom => "Coatom",
            PropertyKind::Neutral => "Neutral",
            PropertyKind::Distributive => "Distributive",
            PropertyKind::LowerModular => "LowerModular",
            PropertyKind::ChainDownset => "ChainDownset",
        }
    }
}

impl FromStr for PropertyKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        PropertyKind::ALL
            .into_iter()
            .find(|p| p.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| format!("unknown property {s}"))
    }
}

/// Direct check of an element property from the order and operation tables.
pub fn element_property(l: &Lattice, e: usize, p: PropertyKind) -> bool {
    let n = l.len();
    let all = || (0..n).flat_map(move |y| (0..n).map(move |z| (y, z)));
    match p {
        PropertyKind::Atom => e != l.bottom() && !(0..n).any(|y| l.lt(l.bottom(), y) && l.lt(y, e)),
        PropertyKind::Coatom => e != l.top() && !(0..n).any(|y| l.lt(e, y) && l.lt(y, l.top())),
        PropertyKind::Neutral => all().all(|(y, z)| {
            let lhs = l.meet(l.meet(l.join(e, y), l.join(y, z)), l.join(z, e));
            let rhs = l.join(l.join(l.meet(e, y), l.meet(y, z)), l.meet(z, e));
            lhs == rhs
        }),
        PropertyKind::Distributive => {
            all().all(|(y, z)| l.join(e, l.meet(y, z)) == l.meet(l.join(e, y), l.join(e, z)))
        }
        PropertyKind::LowerModular => all()
            .filter(|&(y, _)| l.leq(e, y))
            .all(|(y, z)| l.join(e, l.meet(y, z)) == l.meet(y, l.join(e, z))),
        PropertyKind::ChainDownset => {
            let below: Vec<usize> = (0..n).filter(|&y| l.leq(y, e)).collect();
            below
                .iter()
                .all(|&y| below.iter().all(|&z| l.leq(y, z) || l.leq(z, y)))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse_formula;
    use crate::lattice::build_from_covers;

    fn m3() -> Lattice {
        build_from_covers(
            &["0", "a", "b", "c", "1"],
            &[("0", "a"), ("0", "b"), ("0", "c"), ("a", "1"), ("b", "1"), ("c", "1")],
        )
        .unwrap()
    }

    fn chain(n: usize) -> Lattice {
        let ids: Vec<String> = (0..n).map(|i| format!("c{i}")).collect();
        let covers: Vec<(String, String)> =
            (1..n).map(|i| (ids[i - 1].clone(), ids[i].clone())).collect();
        build_from_covers(&ids, &covers).unwrap()
    }

    const NEUT: &str =
        "forall y, z ( (x v y) ^ (y v z) ^ (z v x) = (x ^ y) v (y ^ z) v (z ^ x) )";

    #[test]
    fn neutral_in_m3() {
        let l = m3();
        let f = parse_formula(NEUT).unwrap();
        let s = defined_set(&l, &f).unwrap();
        assert_eq!(s.to_vec(), vec![0, 4]);
        let env = Env::from([("x".to_string(), 1)]);
        assert!(!eval(&l, &f, &env).unwrap());
        for e in 0..5 {
            assert_eq!(s.contains(e), element_property(&l, e, PropertyKind::Neutral));
        }
    }

    #[test]
    fn chains_are_neutral_and_min_picks_bottom() {
        let l = chain(5);
        let f = parse_formula(NEUT).unwrap();
        assert_eq!(defined_set(&l, &f).unwrap().count(), 5);
        let m = parse_formula("min x ( x = x )").unwrap();
        assert_eq!(defined_set(&l, &m).unwrap().to_vec(), vec![0]);
        let m = parse_formula("max x ( x = x )").unwrap();
        assert_eq!(defined_set(&l, &m).unwrap().to_vec(), vec![4]);
    }

    #[test]
    fn atoms_formula() {
        let l = m3();
        let f = parse_formula("exists y ( forall z ( y <= z ) & min x ( x != y ) )").unwrap();
        assert_eq!(defined_set(&l, &f).unwrap().to_vec(), vec![1, 2, 3]);
    }

    #[test]
    fn errors() {
        let l = m3();
        let f = parse_formula("x <= y").unwrap();
        assert_eq!(
            eval(&l, &f, &Env::from([("x".to_string(), 0)])),
            Err(EvalError::UnboundVariable("y".into()))
        );
        assert_eq!(defined_set(&l, &f), Err(EvalError::WrongFreeVariableCount(2)));
        let g = parse_formula("x = @nowhere").unwrap();
        assert_eq!(defined_set(&l, &g), Err(EvalError::UnknownConstant("nowhere".into())));
        let h = parse_formula("x = @a").unwrap();
        assert_eq!(defined_set(&l, &h).unwrap().to_vec(), vec![1]);
    }

    #[test]
    fn calls_use_tabulated_relations() {
        let mut defs = DefTable::new();
        defs.load_str(
            "t",
            "def Bot(x) := forall y ( x <= y ) ;\n\
             def Up[1](x) := Bot(x) ;\n\
             def Up[k>=2](x) := min x ( exists y ( Up[k-1](y) & y < x ) ) ;\n\
             def Below(x, y) := x < y ;",
        )
        .unwrap();
        let l = chain(6);
        let mut ev = Evaluator::new(&l, &defs);
        for k in 1..=6 {
            assert_eq!(ev.defined_set_of("Up", &[k]).unwrap().to_vec(), vec![k as usize - 1]);
        }
        assert!(ev.defined_set_of("Up", &[7]).unwrap().is_empty());
        let f = parse_formula("exists y ( Below(x, y) & Up[3](y) )").unwrap();
        assert_eq!(ev.defined_set(&f).unwrap().to_vec(), vec![0, 1]);
        let rel = ev.instance("Below", &[]).unwrap();
        assert_eq!(rel.tuples().count(), 15);
    }

    #[test]
    fn shadowing_and_sentences() {
        let l = m3();
        let f = parse_formula("exists x ( x = x ) & forall x ( exists x ( x <= x ) )").unwrap();
        assert!(eval(&l, &f, &Env::new()).unwrap());
        let g = parse_formula("x = x & exists x ( forall y ( x <= y ) & !(x = x) )").unwrap();
        assert!(!eval(&l, &g, &Env::from([("x".to_string(), 2)])).unwrap());
    }
}
