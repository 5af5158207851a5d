//! Finite bounded lattices presented by their cover relation.
//!
//! A [`Lattice`] is immutable once built. Construction computes the order as
//! the reflexive-transitive closure of the supplied covers, then fills the
//! meet and join tables by scanning common bounds and rejects any pair that
//! lacks a unique greatest lower or least upper bound.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use thiserror::Error;

use crate::subset::Subset;

/// Largest carrier accepted by [`build_from_covers`].
pub const MAX_ELEMENTS: usize = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundFailure {
    NoLeastUpperBound,
    NoGreatestLowerBound,
}

impl fmt::Display for BoundFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BoundFailure::NoLeastUpperBound => f.write_str("no-least-upper-bound"),
            BoundFailure::NoGreatestLowerBound => f.write_str("no-greatest-lower-bound"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("CycleDetected: {}", .0.join(" < "))]
    CycleDetected(Vec<String>),
    #[error("NotALattice: ({}, {}) {reason}", .pair.0, .pair.1)]
    NotALattice {
        pair: (String, String),
        reason: BoundFailure,
    },
    #[error("DuplicateElement: {0}")]
    DuplicateElement(String),
    #[error("MissingBound: bottom {}, top {}", if *.bottom { "missing" } else { "present" }, if *.top { "missing" } else { "present" })]
    MissingBound { bottom: bool, top: bool },
    #[error("UnknownElement: {0}")]
    UnknownElement(String),
    #[error("DuplicateLabel: {0}")]
    DuplicateLabel(String),
    #[error("ElementAlreadyLabeled: {0}")]
    ElementAlreadyLabeled(String),
    #[error("TooLarge: {0} elements exceeds the limit of {MAX_ELEMENTS}")]
    TooLarge(usize),
    #[error("NotComparable: {0} is not below {1}")]
    NotComparable(String, String),
}

/// A finite bounded lattice over indices `0..len()`.
#[derive(Clone, PartialEq, Eq)]
pub struct Lattice {
    name: String,
    ids: Vec<String>,
    index: HashMap<String, usize>,
    /// `up[a]` holds every `b` with `a <= b`.
    up: Vec<Subset>,
    /// `down[a]` holds every `b` with `b <= a`.
    down: Vec<Subset>,
    lower_covers: Vec<Vec<usize>>,
    upper_covers: Vec<Vec<usize>>,
    meet: Vec<u32>,
    join: Vec<u32>,
    bottom: usize,
    top: usize,
    labels: BTreeMap<String, usize>,
}

impl fmt::Debug for Lattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Lattice")
            .field("name", &self.name)
            .field("elements", &self.ids)
            .field("covers", &self.cover_pairs())
            .field("labels", &self.labels)
            .finish()
    }
}

/// Build a lattice from declared elements and cover pairs `(lower, upper)`.
///
/// Pairs need not be true covers; the order is their reflexive-transitive
/// closure and the stored Hasse diagram is recomputed from it.
pub fn build_from_covers<S: AsRef<str>>(
    elements: &[S],
    covers: &[(S, S)],
) -> Result<Lattice, LatticeError> {
    let n = elements.len();
    if n > MAX_ELEMENTS {
        return Err(LatticeError::TooLarge(n));
    }
    let mut index = HashMap::with_capacity(n);
    let mut ids = Vec::with_capacity(n);
    for (i, e) in elements.iter().enumerate() {
        let e = e.as_ref().to_string();
        if index.insert(e.clone(), i).is_some() {
            return Err(LatticeError::DuplicateElement(e));
        }
        ids.push(e);
    }
    let lookup = |s: &str| {
        index
            .get(s)
            .copied()
            .ok_or_else(|| LatticeError::UnknownElement(s.to_string()))
    };
    let mut succ = vec![Vec::new(); n];
    for (lo, hi) in covers {
        let (lo, hi) = (lookup(lo.as_ref())?, lookup(hi.as_ref())?);
        if lo == hi {
            return Err(LatticeError::CycleDetected(vec![
                ids[lo].clone(),
                ids[lo].clone(),
            ]));
        }
        if !succ[lo].contains(&hi) {
            succ[lo].push(hi);
        }
    }
    let order = topological_order(&succ).map_err(|cycle| {
        LatticeError::CycleDetected(cycle.into_iter().map(|i| ids[i].clone()).collect())
    })?;

    let mut up = vec![Subset::empty(n); n];
    for &a in order.iter().rev() {
        let mut set = Subset::empty(n);
        set.insert(a);
        for &b in &succ[a] {
            set.union_with(&up[b]);
        }
        up[a] = set;
    }
    let mut down = vec![Subset::empty(n); n];
    for (a, row) in up.iter().enumerate() {
        for b in row.iter() {
            down[b].insert(a);
        }
    }
    // position in a linear extension
    let mut rank = vec![0usize; n];
    for (pos, &a) in order.iter().enumerate() {
        rank[a] = pos;
    }

    let mut meet = vec![0u32; n * n];
    let mut join = vec![0u32; n * n];
    for i in 0..n {
        meet[i * n + i] = i as u32;
        join[i * n + i] = i as u32;
        for j in i + 1..n {
            let fail = |reason| LatticeError::NotALattice {
                pair: (ids[i].clone(), ids[j].clone()),
                reason,
            };
            let mut ub = up[i].clone();
            ub.intersect_with(&up[j]);
            let lub = ub
                .iter()
                .min_by_key(|&c| rank[c])
                .filter(|&c| ub.is_subset_of(&up[c]))
                .ok_or_else(|| fail(BoundFailure::NoLeastUpperBound))?;
            let mut lb = down[i].clone();
            lb.intersect_with(&down[j]);
            let glb = lb
                .iter()
                .max_by_key(|&c| rank[c])
                .filter(|&c| lb.is_subset_of(&down[c]))
                .ok_or_else(|| fail(BoundFailure::NoGreatestLowerBound))?;
            join[i * n + j] = lub as u32;
            join[j * n + i] = lub as u32;
            meet[i * n + j] = glb as u32;
            meet[j * n + i] = glb as u32;
        }
    }

    let bottom = (0..n).find(|&a| up[a].count() == n);
    let top = (0..n).find(|&a| down[a].count() == n);
    let (bottom, top) = match (bottom, top) {
        (Some(b), Some(t)) => (b, t),
        (b, t) => {
            return Err(LatticeError::MissingBound {
                bottom: b.is_none(),
                top: t.is_none(),
            })
        }
    };

    let mut upper_covers = vec![Vec::new(); n];
    let mut lower_covers = vec![Vec::new(); n];
    for a in 0..n {
        let mut strict: Vec<usize> = up[a].iter().filter(|&b| b != a).collect();
        strict.sort_by_key(|&b| rank[b]);
        let mut minimal: Vec<usize> = Vec::new();
        for b in strict {
            if !minimal.iter().any(|&c| up[c].contains(b)) {
                minimal.push(b);
            }
        }
        minimal.sort_unstable();
        for &b in &minimal {
            lower_covers[b].push(a);
        }
        upper_covers[a] = minimal;
    }

    Ok(Lattice {
        name: String::from("lattice"),
        ids,
        index,
        up,
        down,
        lower_covers,
        upper_covers,
        meet,
        join,
        bottom,
        top,
        labels: BTreeMap::new(),
    })
}

/// Kahn's algorithm; on failure returns one directed cycle as a closed path.
fn topological_order(succ: &[Vec<usize>]) -> Result<Vec<usize>, Vec<usize>> {
    let n = succ.len();
    let mut indeg = vec![0usize; n];
    for outs in succ {
        for &b in outs {
            indeg[b] += 1;
        }
    }
    let mut stack: Vec<usize> = (0..n).rev().filter(|&a| indeg[a] == 0).collect();
    let mut order = Vec::with_capacity(n);
    while let Some(a) = stack.pop() {
        order.push(a);
        for &b in succ[a].iter().rev() {
            indeg[b] -= 1;
            if indeg[b] == 0 {
                stack.push(b);
            }
        }
    }
    if order.len() == n {
        return Ok(order);
    }
    // Every leftover node has a leftover predecessor; walk backwards until a repeat.
    let leftover: Vec<bool> = indeg.iter().map(|&d| d > 0).collect();
    let mut pred = vec![usize::MAX; n];
    for a in 0..n {
        if leftover[a] {
            for &b in &succ[a] {
                if leftover[b] && pred[b] == usize::MAX {
                    pred[b] = a;
                }
            }
        }
    }
    let start = (0..n).find(|&a| leftover[a]).expect("leftover node");
    let mut seen = vec![usize::MAX; n];
    let mut walk = Vec::new();
    let mut cur = start;
    while seen[cur] == usize::MAX {
        seen[cur] = walk.len();
        walk.push(cur);
        cur = pred[cur];
    }
    let mut cycle: Vec<usize> = walk[seen[cur]..].to_vec();
    cycle.reverse();
    cycle.push(cycle[0]);
    Err(cycle)
}

impl Lattice {
    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    /// Attach a label to an element. Labels are injective.
    pub fn with_label(mut self, label: &str, id: &str) -> Result<Self, LatticeError> {
        let idx = self
            .index_of(id)
            .ok_or_else(|| LatticeError::UnknownElement(id.to_string()))?;
        if self.labels.contains_key(label) {
            return Err(LatticeError::DuplicateLabel(label.to_string()));
        }
        if self.labels.values().any(|&v| v == idx) {
            return Err(LatticeError::ElementAlreadyLabeled(id.to_string()));
        }
        self.labels.insert(label.to_string(), idx);
        Ok(self)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn id(&self, i: usize) -> &str {
        &self.ids[i]
    }

    pub fn ids(&self) -> &[String] {
        &self.ids
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.index.get(id).copied()
    }

    pub fn labels(&self) -> &BTreeMap<String, usize> {
        &self.labels
    }

    pub fn label_index(&self, label: &str) -> Option<usize> {
        self.labels.get(label).copied()
    }

    /// The label attached to element `i`, if any.
    pub fn label_of(&self, i: usize) -> Option<&str> {
        self.labels
            .iter()
            .find(|(_, &v)| v == i)
            .map(|(k, _)| k.as_str())
    }

    /// Resolve a name as a label first, then as an element id.
    pub fn resolve(&self, name: &str) -> Option<usize> {
        self.label_index(name).or_else(|| self.index_of(name))
    }

    /// Display name of an element: its label when it has one, else its id.
    pub fn display(&self, i: usize) -> &str {
        self.label_of(i).unwrap_or(&self.ids[i])
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn top(&self) -> usize {
        self.top
    }

    #[inline]
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.up[a].contains(b)
    }

    #[inline]
    pub fn lt(&self, a: usize, b: usize) -> bool {
        a != b && self.leq(a, b)
    }

    #[inline]
    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.meet[a * self.len() + b] as usize
    }

    #[inline]
    pub fn join(&self, a: usize, b: usize) -> usize {
        self.join[a * self.len() + b] as usize
    }

    pub fn lower_covers(&self, a: usize) -> &[usize] {
        &self.lower_covers[a]
    }

    pub fn upper_covers(&self, a: usize) -> &[usize] {
        &self.upper_covers[a]
    }

    pub fn covers(&self, lo: usize, hi: usize) -> bool {
        self.upper_covers[lo].binary_search(&hi).is_ok()
    }

    /// Hasse diagram edges `(lower, upper)`, sorted by index.
    pub fn cover_pairs(&self) -> Vec<(usize, usize)> {
        let mut pairs: Vec<(usize, usize)> = (0..self.len())
            .flat_map(|a| self.upper_covers[a].iter().map(move |&b| (a, b)))
            .collect();
        pairs.sort_unstable();
        pairs
    }

    pub fn atoms(&self) -> Subset {
        Subset::from_indices(self.len(), self.upper_covers[self.bottom].iter().copied())
    }

    pub fn coatoms(&self) -> Subset {
        Subset::from_indices(self.len(), self.lower_covers[self.top].iter().copied())
    }

    pub fn downset(&self, a: usize) -> Subset {
        self.down[a].clone()
    }

    pub fn upset(&self, a: usize) -> Subset {
        self.up[a].clone()
    }

    /// True iff every two members of `s` are comparable.
    pub fn is_chain(&self, s: &Subset) -> bool {
        let members = s.to_vec();
        members.iter().enumerate().all(|(k, &a)| {
            members[k + 1..]
                .iter()
                .all(|&b| self.leq(a, b) || self.leq(b, a))
        })
    }

    /// Length of the longest chain from the bottom to `a`.
    pub fn height(&self, a: usize) -> usize {
        let mut h = vec![usize::MAX; self.len()];
        self.height_into(a, &mut h)
    }

    /// Heights of all elements (longest chain from the bottom).
    pub fn heights(&self) -> Vec<usize> {
        let mut h = vec![usize::MAX; self.len()];
        for a in 0..self.len() {
            self.height_into(a, &mut h);
        }
        h
    }

    fn height_into(&self, a: usize, memo: &mut [usize]) -> usize {
        if memo[a] != usize::MAX {
            return memo[a];
        }
        let v = self.lower_covers[a]
            .iter()
            .map(|&c| self.height_into(c, memo) + 1)
            .max()
            .unwrap_or(0);
        memo[a] = v;
        v
    }

    /// Order-dual lattice: same ids and labels, order reversed.
    pub fn dual(&self) -> Lattice {
        let n = self.len();
        let mut meet = vec![0u32; n * n];
        let mut join = vec![0u32; n * n];
        meet.copy_from_slice(&self.join);
        join.copy_from_slice(&self.meet);
        Lattice {
            name: self.name.clone(),
            ids: self.ids.clone(),
            index: self.index.clone(),
            up: self.down.clone(),
            down: self.up.clone(),
            lower_covers: self.upper_covers.clone(),
            upper_covers: self.lower_covers.clone(),
            meet,
            join,
            bottom: self.top,
            top: self.bottom,
            labels: self.labels.clone(),
        }
    }

    /// The interval `[a, b]` as a lattice in its own right.
    pub fn interval(&self, a: usize, b: usize) -> Result<Lattice, LatticeError> {
        if !self.leq(a, b) {
            return Err(LatticeError::NotComparable(
                self.ids[a].clone(),
                self.ids[b].clone(),
            ));
        }
        let mut members = self.up[a].clone();
        members.intersect_with(&self.down[b]);
        self.sublattice_on(&members)
    }

    /// Induced order on `members`, revalidated as a lattice.
    pub fn sublattice_on(&self, members: &Subset) -> Result<Lattice, LatticeError> {
        let keep = members.to_vec();
        let elements: Vec<&str> = keep.iter().map(|&i| self.ids[i].as_str()).collect();
        let mut covers = Vec::new();
        for &x in &keep {
            for &y in &keep {
                if self.lt(x, y) {
                    covers.push((self.ids[x].as_str(), self.ids[y].as_str()));
                }
            }
        }
        let mut out = build_from_covers(&elements, &covers)?.with_name(self.name.clone());
        for (label, &idx) in &self.labels {
            if members.contains(idx) {
                out = out.with_label(label, &self.ids[idx])?;
            }
        }
        Ok(out)
    }

    /// Exhaustive check of the lattice axioms against the stored tables.
    pub fn validate(&self) -> Result<(), String> {
        let n = self.len();
        for a in 0..n {
            if !self.leq(self.bottom, a) || !self.leq(a, self.top) {
                return Err(format!("{} is outside [bottom, top]", self.ids[a]));
            }
            for b in 0..n {
                let m = self.meet(a, b);
                let j = self.join(a, b);
                if !(self.leq(m, a) && self.leq(m, b) && self.leq(a, j) && self.leq(b, j)) {
                    return Err(format!("bounds of ({}, {})", self.ids[a], self.ids[b]));
                }
                if m != self.meet(b, a) || j != self.join(b, a) {
                    return Err(format!("commutativity at ({}, {})", self.ids[a], self.ids[b]));
                }
                if self.meet(a, self.join(a, b)) != a || self.join(a, self.meet(a, b)) != a {
                    return Err(format!("absorption at ({}, {})", self.ids[a], self.ids[b]));
                }
                for c in 0..n {
                    if self.leq(c, a) && self.leq(c, b) && !self.leq(c, m) {
                        return Err(format!("meet of ({}, {}) not greatest", self.ids[a], self.ids[b]));
                    }
                    if self.leq(a, c) && self.leq(b, c) && !self.leq(j, c) {
                        return Err(format!("join of ({}, {}) not least", self.ids[a], self.ids[b]));
                    }
                }
            }
            if self.meet(a, a) != a || self.join(a, a) != a {
                return Err(format!("idempotency at {}", self.ids[a]));
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m3() -> Lattice {
        build_from_covers(
            &["0", "a", "b", "c", "1"],
            &[("0", "a"), ("0", "b"), ("0", "c"), ("a", "1"), ("b", "1"), ("c", "1")],
        )
        .unwrap()
    }

    #[test]
    fn singleton() {
        let l = build_from_covers::<&str>(&["t"], &[]).unwrap();
        assert_eq!(l.bottom(), 0);
        assert_eq!(l.top(), 0);
        assert!(l.atoms().is_empty());
        assert!(l.is_chain(&l.downset(0)));
    }

    #[test]
    fn m3_bounds() {
        let l = m3();
        let (a, b) = (l.index_of("a").unwrap(), l.index_of("b").unwrap());
        assert_eq!(l.id(l.meet(a, b)), "0");
        assert_eq!(l.id(l.join(a, b)), "1");
        assert_eq!(l.atoms().to_vec(), vec![1, 2, 3]);
        assert!(!l.is_chain(&Subset::from_indices(5, [a, b])));
        l.validate().unwrap();
    }

    #[test]
    fn crown_is_not_a_lattice() {
        let err = build_from_covers(
            &["p", "q", "r", "s"],
            &[("p", "r"), ("p", "s"), ("q", "r"), ("q", "s")],
        )
        .unwrap_err();
        assert_eq!(
            err,
            LatticeError::NotALattice {
                pair: ("p".into(), "q".into()),
                reason: BoundFailure::NoLeastUpperBound
            }
        );
    }

    #[test]
    fn cycles_report_a_path() {
        let err = build_from_covers(&["a", "b", "c"], &[("a", "b"), ("b", "c"), ("c", "a")])
            .unwrap_err();
        match err {
            LatticeError::CycleDetected(path) => {
                assert_eq!(path.len(), 4);
                assert_eq!(path.first(), path.last());
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(
            build_from_covers(&["a"], &[("a", "a")]),
            Err(LatticeError::CycleDetected(_))
        ));
    }

    #[test]
    fn construction_errors() {
        assert_eq!(
            build_from_covers::<&str>(&["a", "a"], &[]).unwrap_err(),
            LatticeError::DuplicateElement("a".into())
        );
        assert_eq!(
            build_from_covers(&["a"], &[("a", "zz")]).unwrap_err(),
            LatticeError::UnknownElement("zz".into())
        );
        assert_eq!(
            build_from_covers::<&str>(&[], &[]).unwrap_err(),
            LatticeError::MissingBound { bottom: true, top: true }
        );
        // two minimal elements with a common top: the meet check fails first
        assert!(matches!(
            build_from_covers(&["a", "b", "t"], &[("a", "t"), ("b", "t")]),
            Err(LatticeError::NotALattice { reason: BoundFailure::NoGreatestLowerBound, .. })
        ));
    }

    #[test]
    fn redundant_pairs_are_closed_and_reduced() {
        let l = build_from_covers(&["0", "m", "1"], &[("0", "m"), ("m", "1"), ("0", "1")]).unwrap();
        assert_eq!(l.cover_pairs(), vec![(0, 1), (1, 2)]);
        assert_eq!(l.height(2), 2);
    }

    #[test]
    fn labels_are_injective() {
        let l = m3().with_label("A", "a").unwrap();
        assert_eq!(l.resolve("A"), Some(1));
        assert_eq!(l.resolve("b"), Some(2));
        assert!(matches!(l.clone().with_label("A", "b"), Err(LatticeError::DuplicateLabel(_))));
        assert!(matches!(l.with_label("B", "a"), Err(LatticeError::ElementAlreadyLabeled(_))));
    }

    #[test]
    fn dual_is_an_involution() {
        let l = m3().with_label("A", "a").unwrap();
        let d = l.dual();
        assert_eq!(d.bottom(), l.top());
        assert_eq!(d.atoms(), l.coatoms());
        assert_eq!(d.dual(), l);
        d.validate().unwrap();
    }

    #[test]
    fn intervals() {
        let l = m3();
        let iv = l.interval(1, 4).unwrap();
        assert_eq!(iv.ids(), &["a".to_string(), "1".to_string()]);
        assert!(l.interval(1, 2).is_err());
    }
}
