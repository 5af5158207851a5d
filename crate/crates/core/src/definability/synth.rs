//! Bottom-up enumerative synthesis of defining formulas.
//!
//! Core formulas over a small variable pool are enumerated by size. Each one
//! is represented by its truth table over every assignment of the pool, and
//! only the first formula with a given table is kept. A formula whose table
//! depends on `x` alone defines a subset; a match against a target is
//! rebuilt as syntax and re-checked with the evaluator before it is reported.
//!
//! Size counts connectives, comparisons, quantified variables and term
//! operators; variables are free. `forall y ( x <= y )` has size 2.

use std::collections::{BTreeMap, HashMap};

use crate::eval::defined_set;
use crate::formula::{substitute, Formula, Term};
use crate::lattice::Lattice;
use crate::subset::Subset;

use super::automorphism::{orbit_partition, OrbitPartition};

const VAR_NAMES: [&str; 4] = ["x", "y", "z", "w"];

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SynthResult {
    Found(Formula),
    Inconclusive,
}

impl SynthResult {
    pub fn formula(&self) -> Option<&Formula> {
        match self {
            SynthResult::Found(f) => Some(f),
            SynthResult::Inconclusive => None,
        }
    }
}

#[derive(Debug, Clone)]
pub struct SynthConfig {
    /// Largest formula size tried.
    pub budget: usize,
    /// Deepest quantifier nesting.
    pub max_depth: usize,
    /// Variable pool size, `x` included; lowered automatically for large lattices.
    pub variables: usize,
    /// Upper bound on assignments per truth table.
    pub max_assignments: usize,
    /// Upper bound on distinct formulas kept.
    pub max_formulas: usize,
}

impl Default for SynthConfig {
    fn default() -> Self {
        SynthConfig {
            budget: 9,
            max_depth: 3,
            variables: 4,
            max_assignments: 1 << 17,
            max_formulas: 3_000_000,
        }
    }
}

impl SynthConfig {
    pub fn with_budget(budget: usize) -> Self {
        SynthConfig {
            budget,
            ..Self::default()
        }
    }
}

/// Search for a formula defining `s`, up to the given size.
pub fn synthesize(l: &Lattice, s: &Subset, budget: usize) -> SynthResult {
    synthesize_many(l, std::slice::from_ref(s), &SynthConfig::with_budget(budget))
        .pop()
        .unwrap_or(SynthResult::Inconclusive)
}

/// One search shared by several targets; results are in target order.
pub fn synthesize_many(l: &Lattice, targets: &[Subset], config: &SynthConfig) -> Vec<SynthResult> {
    let orbits = orbit_partition(l);
    synthesize_with_orbits(l, targets, config, &orbits)
}

pub fn synthesize_with_orbits(
    l: &Lattice,
    targets: &[Subset],
    config: &SynthConfig,
    orbits: &OrbitPartition,
) -> Vec<SynthResult> {
    let mut results = vec![SynthResult::Inconclusive; targets.len()];
    let mut wanted: HashMap<Vec<u64>, Vec<usize>> = HashMap::new();
    for (i, t) in targets.iter().enumerate() {
        if t.universe() != l.len() || !orbits.is_union_of_blocks(t) {
            continue;
        }
        let x = Term::var("x");
        let trivial = if t.count() == l.len() {
            Some(Formula::Eq(x.clone(), x))
        } else if t.is_empty() {
            Some(Formula::not(Formula::Eq(x.clone(), x)))
        } else {
            None
        };
        match trivial {
            Some(f) if config.budget >= f.size() => results[i] = SynthResult::Found(f),
            Some(_) => {}
            None => wanted.entry(subset_key(t)).or_default().push(i),
        }
    }
    if wanted.is_empty() {
        return results;
    }
    // Small pools are cheap and usually enough; widen only for what is left.
    for vars in 1..=config.variables.clamp(1, VAR_NAMES.len()) {
        if wanted.is_empty() {
            break;
        }
        let narrowed = SynthConfig {
            variables: vars,
            ..config.clone()
        };
        let Some(mut search) = Enumerator::new(l, &narrowed) else {
            break;
        };
        if search.vars < vars {
            break;
        }
        search.run(&mut wanted, &mut results, targets);
    }
    results
}

fn subset_key(s: &Subset) -> Vec<u64> {
    let mut key = vec![0u64; s.universe().div_ceil(64)];
    for i in s.iter() {
        key[i / 64] |= 1 << (i % 64);
    }
    key
}

#[derive(Debug, Clone, Copy)]
enum TNode {
    Var(u8),
    Meet(u32, u32),
    Join(u32, u32),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Bin {
    And,
    Or,
    Implies,
    Iff,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Cmp {
    Eq,
    Neq,
    Leq,
    Lt,
}

impl Cmp {
    const ALL: [Cmp; 4] = [Cmp::Eq, Cmp::Neq, Cmp::Leq, Cmp::Lt];

    fn symmetric(self) -> bool {
        matches!(self, Cmp::Eq | Cmp::Neq)
    }
}

#[derive(Debug, Clone, Copy)]
enum FNode {
    Cmp(Cmp, u32, u32),
    Not(u32),
    Bin(Bin, u32, u32),
    Forall(u8, u32),
    Exists(u8, u32),
}

struct FEntry {
    node: FNode,
    dep: u8,
    depth: u8,
}

/// Open-addressed set of fixed-width tables stored in one arena.
struct TableSet<T: Copy + Eq + std::hash::Hash> {
    width: usize,
    data: Vec<T>,
    slots: Vec<u32>,
    count: usize,
}

impl<T: Copy + Eq + std::hash::Hash> TableSet<T> {
    fn new(width: usize) -> Self {
        TableSet {
            width,
            data: Vec::new(),
            slots: vec![u32::MAX; 1024],
            count: 0,
        }
    }

    fn get(&self, id: u32) -> &[T] {
        let s = id as usize * self.width;
        &self.data[s..s + self.width]
    }

    fn hash(table: &[T]) -> usize {
        use std::hash::{Hash, Hasher};
        let mut h = Fnv(0xcbf2_9ce4_8422_2325);
        table.hash(&mut h);
        h.finish() as usize
    }

    /// Insert unless present; returns the new id.
    fn insert(&mut self, table: &[T]) -> Option<u32> {
        if (self.count + 1) * 2 > self.slots.len() {
            self.grow();
        }
        let mask = self.slots.len() - 1;
        let mut i = Self::hash(table) & mask;
        loop {
            let slot = self.slots[i];
            if slot == u32::MAX {
                let id = self.count as u32;
                self.data.extend_from_slice(table);
                self.slots[i] = id;
                self.count += 1;
                return Some(id);
            }
            if self.get(slot) == table {
                return None;
            }
            i = (i + 1) & mask;
        }
    }

    fn grow(&mut self) {
        let mut slots = vec![u32::MAX; self.slots.len() * 2];
        let mask = slots.len() - 1;
        for id in 0..self.count as u32 {
            let mut i = Self::hash(self.get(id)) & mask;
            while slots[i] != u32::MAX {
                i = (i + 1) & mask;
            }
            slots[i] = id;
        }
        self.slots = slots;
    }
}

/// FNV-1a; deterministic across runs.
struct Fnv(u64);

impl std::hash::Hasher for Fnv {
    fn finish(&self) -> u64 {
        self.0 ^ (self.0 >> 31)
    }

    fn write(&mut self, bytes: &[u8]) {
        for &b in bytes {
            self.0 ^= b as u64;
            self.0 = self.0.wrapping_mul(0x0100_0000_01b3);
        }
    }

    fn write_u64(&mut self, v: u64) {
        self.0 ^= v;
        self.0 = self.0.wrapping_mul(0x0100_0000_01b3).rotate_left(29);
    }

    fn write_u16(&mut self, v: u16) {
        self.write_u64(v as u64);
    }
}

struct Enumerator<'a> {
    l: &'a Lattice,
    config: SynthConfig,
    n: usize,
    vars: usize,
    size: usize,
    words: usize,
    leq: Vec<bool>,
    terms: TableSet<u16>,
    tnodes: Vec<TNode>,
    term_levels: Vec<Vec<u32>>,
    formulas: TableSet<u64>,
    fentries: Vec<FEntry>,
    levels: Vec<Vec<u32>>,
    /// `stride[v]` is the assignment-index weight of variable `v`.
    stride: Vec<usize>,
}

impl<'a> Enumerator<'a> {
    fn new(l: &'a Lattice, config: &SynthConfig) -> Option<Self> {
        let n = l.len();
        let mut vars = config.variables.clamp(1, VAR_NAMES.len());
        while vars > 1 && n.checked_pow(vars as u32).is_none_or(|s| s > config.max_assignments) {
            vars -= 1;
        }
        let size = n.checked_pow(vars as u32)?;
        if size > config.max_assignments {
            return None;
        }
        let stride = (0..vars).map(|v| n.pow(v as u32)).collect();
        let mut leq = vec![false; n * n];
        for a in 0..n {
            for b in 0..n {
                leq[a * n + b] = l.leq(a, b);
            }
        }
        Some(Enumerator {
            l,
            config: config.clone(),
            n,
            vars,
            size,
            words: size.div_ceil(64),
            leq,
            terms: TableSet::new(size),
            tnodes: Vec::new(),
            term_levels: Vec::new(),
            formulas: TableSet::new(size.div_ceil(64)),
            fentries: Vec::new(),
            levels: vec![Vec::new()],
            stride,
        })
    }

    fn add_term(&mut self, level: usize, node: TNode, table: &[u16]) {
        if let Some(id) = self.terms.insert(table) {
            debug_assert_eq!(id as usize, self.tnodes.len());
            self.tnodes.push(node);
            self.term_levels[level].push(id);
        }
    }

    fn build_terms(&mut self, level: usize) {
        while self.term_levels.len() <= level {
            let s = self.term_levels.len();
            self.term_levels.push(Vec::new());
            let mut buf = vec![0u16; self.size];
            if s == 0 {
                for v in 0..self.vars {
                    for (i, slot) in buf.iter_mut().enumerate() {
                        *slot = ((i / self.stride[v]) % self.n) as u16;
                    }
                    self.add_term(0, TNode::Var(v as u8), &buf);
                }
                continue;
            }
            for s1 in 0..s {
                let s2 = s - 1 - s1;
                if s1 > s2 {
                    break;
                }
                let (la, lb) = (self.term_levels[s1].clone(), self.term_levels[s2].clone());
                for (ia, &a) in la.iter().enumerate() {
                    let start = if s1 == s2 { ia + 1 } else { 0 };
                    for &b in &lb[start.min(lb.len())..] {
                        for meet in [true, false] {
                            {
                                let (ta, tb) = (self.terms.get(a), self.terms.get(b));
                                for i in 0..self.size {
                                    let (p, q) = (ta[i] as usize, tb[i] as usize);
                                    buf[i] = if meet { self.l.meet(p, q) } else { self.l.join(p, q) } as u16;
                                }
                            }
                            let node = if meet { TNode::Meet(a, b) } else { TNode::Join(a, b) };
                            self.add_term(s, node, &buf);
                        }
                    }
                }
            }
        }
    }

    /// Variables the table actually depends on.
    fn dependence(&self, table: &[u64]) -> u8 {
        let bit = |i: usize| table[i / 64] >> (i % 64) & 1 == 1;
        let mut dep = 0u8;
        for v in 0..self.vars {
            let st = self.stride[v];
            let depends = (0..self.size).any(|i| {
                let val = (i / st) % self.n;
                val + 1 < self.n && bit(i) != bit(i + st)
            });
            if depends {
                dep |= 1 << v;
            }
        }
        dep
    }

    fn tnode_formula(&self, id: u32) -> Term {
        match self.tnodes[id as usize] {
            TNode::Var(v) => Term::var(VAR_NAMES[v as usize]),
            TNode::Meet(a, b) => Term::meet(self.tnode_formula(a), self.tnode_formula(b)),
            TNode::Join(a, b) => Term::join(self.tnode_formula(a), self.tnode_formula(b)),
        }
    }

    fn formula(&self, id: u32) -> Formula {
        match self.fentries[id as usize].node {
            FNode::Cmp(op, a, b) => {
                let (a, b) = (self.tnode_formula(a), self.tnode_formula(b));
                match op {
                    Cmp::Eq => Formula::Eq(a, b),
                    Cmp::Neq => Formula::Neq(a, b),
                    Cmp::Leq => Formula::Leq(a, b),
                    Cmp::Lt => Formula::Lt(a, b),
                }
            }
            FNode::Not(g) => Formula::not(self.formula(g)),
            FNode::Bin(op, a, b) => {
                let (a, b) = (self.formula(a), self.formula(b));
                match op {
                    Bin::And => Formula::and(a, b),
                    Bin::Or => Formula::or(a, b),
                    Bin::Implies => Formula::implies(a, b),
                    Bin::Iff => Formula::iff(a, b),
                }
            }
            FNode::Forall(v, g) => Formula::forall(&[VAR_NAMES[v as usize]], self.formula(g)),
            FNode::Exists(v, g) => Formula::exists(&[VAR_NAMES[v as usize]], self.formula(g)),
        }
    }

    fn run(
        &mut self,
        wanted: &mut HashMap<Vec<u64>, Vec<usize>>,
        results: &mut [SynthResult],
        targets: &[Subset],
    ) {
        let mut buf = vec![0u64; self.words];
        let tail = if self.size.is_multiple_of(64) { u64::MAX } else { (1u64 << (self.size % 64)) - 1 };
        for s in 1..=self.config.budget {
            if wanted.is_empty() || self.fentries.len() >= self.config.max_formulas {
                break;
            }
            self.levels.push(Vec::new());
            let mut fresh: Vec<(FNode, Vec<u64>, u8)> = Vec::new();
            // comparisons
            self.build_terms(s - 1);
            for s1 in 0..s {
                let s2 = s - 1 - s1;
                let (la, lb) = (self.term_levels[s1].clone(), self.term_levels[s2].clone());
                for (ia, &a) in la.iter().enumerate() {
                    for (ib, &b) in lb.iter().enumerate() {
                        for op in Cmp::ALL {
                            if op.symmetric() && (s1 > s2 || (s1 == s2 && ib < ia)) {
                                continue;
                            }
                            buf.fill(0);
                            let (ta, tb) = (self.terms.get(a), self.terms.get(b));
                            for i in 0..self.size {
                                let (p, q) = (ta[i] as usize, tb[i] as usize);
                                let v = match op {
                                    Cmp::Eq => p == q,
                                    Cmp::Neq => p != q,
                                    Cmp::Leq => self.leq[p * self.n + q],
                                    Cmp::Lt => p != q && self.leq[p * self.n + q],
                                };
                                buf[i / 64] |= (v as u64) << (i % 64);
                            }
                            let node = FNode::Cmp(op, a, b);
                            fresh.push((node, buf.clone(), 0));
                        }
                    }
                }
                self.commit(s, &mut fresh, wanted, results, targets);
            }
            // negation
            for k in 0..self.levels[s - 1].len() {
                let g = self.levels[s - 1][k];
                if matches!(self.fentries[g as usize].node, FNode::Not(_)) {
                    continue;
                }
                let t = self.formulas.get(g);
                for (w, o) in buf.iter_mut().zip(t) {
                    *w = !o;
                }
                buf[self.words - 1] &= tail;
                fresh.push((FNode::Not(g), buf.clone(), self.fentries[g as usize].depth));
                self.commit(s, &mut fresh, wanted, results, targets);
            }
            // binary connectives
            for s1 in 1..s.saturating_sub(1) {
                let s2 = s - 1 - s1;
                let (la, lb) = (self.levels[s1].clone(), self.levels[s2].clone());
                for (ia, &a) in la.iter().enumerate() {
                    for (ib, &b) in lb.iter().enumerate() {
                        let ordered = s1 < s2 || (s1 == s2 && ia < ib);
                        let depth = self.fentries[a as usize].depth.max(self.fentries[b as usize].depth);
                        for op in [Bin::And, Bin::Or, Bin::Iff, Bin::Implies] {
                            if op != Bin::Implies && !ordered {
                                continue;
                            }
                            if op == Bin::Implies && a == b {
                                continue;
                            }
                            {
                                let (ta, tb) = (self.formulas.get(a), self.formulas.get(b));
                                for i in 0..self.words {
                                    buf[i] = match op {
                                        Bin::And => ta[i] & tb[i],
                                        Bin::Or => ta[i] | tb[i],
                                        Bin::Iff => !(ta[i] ^ tb[i]),
                                        Bin::Implies => !ta[i] | tb[i],
                                    };
                                }
                            }
                            buf[self.words - 1] &= tail;
                            fresh.push((FNode::Bin(op, a, b), buf.clone(), depth));
                        }
                    }
                    if fresh.len() > 4096 {
                        self.commit(s, &mut fresh, wanted, results, targets);
                    }
                }
                self.commit(s, &mut fresh, wanted, results, targets);
            }
            // quantifiers
            for k in 0..self.levels[s - 1].len() {
                let g = self.levels[s - 1][k];
                let FEntry { dep, depth, .. } = self.fentries[g as usize];
                if depth as usize >= self.config.max_depth {
                    continue;
                }
                for v in 0..self.vars {
                    if dep >> v & 1 == 0 {
                        continue;
                    }
                    let st = self.stride[v];
                    for all in [true, false] {
                        buf.fill(0);
                        let t = self.formulas.get(g);
                        let bit = |i: usize| t[i / 64] >> (i % 64) & 1 == 1;
                        for i in 0..self.size {
                            let base = i - ((i / st) % self.n) * st;
                            let mut acc = all;
                            for k in 0..self.n {
                                if bit(base + k * st) != all {
                                    acc = !all;
                                    break;
                                }
                            }
                            buf[i / 64] |= (acc as u64) << (i % 64);
                        }
                        let node = if all { FNode::Forall(v as u8, g) } else { FNode::Exists(v as u8, g) };
                        fresh.push((node, buf.clone(), depth + 1));
                    }
                }
                self.commit(s, &mut fresh, wanted, results, targets);
            }
        }
    }

    fn commit(
        &mut self,
        s: usize,
        fresh: &mut Vec<(FNode, Vec<u64>, u8)>,
        wanted: &mut HashMap<Vec<u64>, Vec<usize>>,
        results: &mut [SynthResult],
        targets: &[Subset],
    ) {
        for (node, table, depth) in fresh.drain(..) {
            if self.fentries.len() >= self.config.max_formulas {
                return;
            }
            let Some(id) = self.formulas.insert(&table) else {
                continue;
            };
            let dep = self.dependence(&table);
            self.fentries.push(FEntry { node, dep, depth });
            self.levels[s].push(id);
            if dep != 1 || wanted.is_empty() {
                continue;
            }
            let mut key = vec![0u64; self.n.div_ceil(64)];
            for e in 0..self.n {
                if table[e / 64] >> (e % 64) & 1 == 1 {
                    key[e / 64] |= 1 << (e % 64);
                }
            }
            let Some(idx) = wanted.get(&key).cloned() else {
                continue;
            };
            let f = self.finish(id);
            let Some(first) = idx.first() else { continue };
            if defined_set(self.l, &f).ok().as_ref() == Some(&targets[*first]) {
                for i in idx {
                    results[i] = SynthResult::Found(f.clone());
                }
                wanted.remove(&key);
            }
        }
    }

    /// Rebuild a formula and rename stray free variables to `x`.
    fn finish(&self, id: u32) -> Formula {
        let f = self.formula(id);
        let map: BTreeMap<String, Term> = f
            .free_vars()
            .into_iter()
            .filter(|v| v != "x")
            .map(|v| (v, Term::var("x")))
            .collect();
        substitute(&f, &map)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{fixture, FixtureSpec};

    #[test]
    fn finds_bottom_of_m3() {
        let l = fixture(&FixtureSpec::M3).unwrap();
        let s = Subset::from_indices(5, [0]);
        let f = synthesize(&l, &s, 9).formula().cloned().unwrap();
        assert_eq!(f.size(), 2);
        assert_eq!(defined_set(&l, &f).unwrap(), s);
    }

    #[test]
    fn middle_of_a_three_chain() {
        let l = fixture(&FixtureSpec::Chain(3)).unwrap();
        let s = Subset::from_indices(3, [1]);
        let f = synthesize(&l, &s, 9).formula().cloned().unwrap();
        assert_eq!(defined_set(&l, &f).unwrap(), s);
    }

    #[test]
    fn orbit_breaking_targets_are_inconclusive() {
        let l = fixture(&FixtureSpec::M3).unwrap();
        assert_eq!(synthesize(&l, &Subset::from_indices(5, [1]), 9), SynthResult::Inconclusive);
    }

    #[test]
    fn trivial_targets() {
        let l = fixture(&FixtureSpec::N5).unwrap();
        let all = synthesize(&l, &Subset::full(5), 1);
        assert_eq!(all.formula().unwrap().to_string(), "x = x");
        assert!(synthesize(&l, &Subset::empty(5), 2).formula().is_some());
        assert_eq!(synthesize(&l, &Subset::empty(5), 1), SynthResult::Inconclusive);
    }
}
