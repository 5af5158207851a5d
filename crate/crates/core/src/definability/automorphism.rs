//! Lattice automorphisms and isomorphisms.
//!
//! Elements are first colored by iterated refinement of order invariants.
//! A map is then built by backtracking over the join-irreducible elements,
//! propagating every choice through meets and joins; since join-irreducibles
//! generate the lattice, each consistent leaf is a total map, accepted once it
//! is seen to carry covers onto covers. The group itself is described by a
//! stabilizer chain over a base of join-irreducibles.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use crate::lattice::Lattice;
use crate::subset::Subset;

/// Groups up to this order are listed element by element.
pub const DEFAULT_GROUP_CAP: u128 = 10_000;

const NONE: u32 = u32::MAX;

/// A permutation of element indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Automorphism(Vec<usize>);

impl Automorphism {
    pub fn identity(n: usize) -> Self {
        Automorphism((0..n).collect())
    }

    pub fn from_images(images: Vec<usize>) -> Self {
        Automorphism(images)
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    pub fn apply(&self, i: usize) -> usize {
        self.0[i]
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &j)| i == j)
    }

    /// `self` after `other`.
    pub fn compose(&self, other: &Automorphism) -> Automorphism {
        Automorphism(other.0.iter().map(|&i| self.0[i]).collect())
    }

    pub fn inverse(&self) -> Automorphism {
        let mut inv = vec![0; self.0.len()];
        for (i, &j) in self.0.iter().enumerate() {
            inv[j] = i;
        }
        Automorphism(inv)
    }

    pub fn image_of(&self, s: &Subset) -> Subset {
        Subset::from_indices(s.universe(), s.iter().map(|i| self.0[i]))
    }

    /// Non-trivial cycles, each starting at its smallest point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.0.len()];
        let mut out = Vec::new();
        for start in 0..self.0.len() {
            if seen[start] || self.0[start] == start {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut i = self.0[start];
            while i != start {
                seen[i] = true;
                cycle.push(i);
                i = self.0[i];
            }
            out.push(cycle);
        }
        out
    }

    /// Cycle notation over element ids, e.g. `(LZ,RZ)(LRB,RRB)`; `()` for the identity.
    pub fn cycle_string(&self, l: &Lattice) -> String {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return "()".into();
        }
        cycles
            .iter()
            .map(|c| format!("({})", c.iter().map(|&i| l.id(i)).collect::<Vec<_>>().join(",")))
            .collect()
    }

    /// True when the permutation preserves the order in both directions.
    pub fn is_automorphism_of(&self, l: &Lattice) -> bool {
        let n = l.len();
        if self.0.len() != n || Subset::from_indices(n, self.0.iter().copied()).count() != n {
            return false;
        }
        (0..n).all(|a| (0..n).all(|b| l.leq(a, b) == l.leq(self.0[a], self.0[b])))
    }
}

impl fmt::Display for Automorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("()");
        }
        for c in cycles {
            let parts: Vec<String> = c.iter().map(|i| i.to_string()).collect();
            write!(f, "({})", parts.join(","))?;
        }
        Ok(())
    }
}

/// The automorphism group of a lattice.
#[derive(Debug, Clone)]
pub struct AutomorphismGroup {
    pub order: u128,
    pub generators: Vec<Automorphism>,
    /// Every element, sorted, when the order is within the cap.
    pub elements: Option<Vec<Automorphism>>,
}

impl AutomorphismGroup {
    /// Set when only generators are available.
    pub fn truncated(&self) -> bool {
        self.elements.is_none()
    }
}

/// Orbits of the automorphism group on elements.
#[derive(Debug, Clone)]
pub struct OrbitPartition {
    pub blocks: Vec<Subset>,
    pub block_of: Vec<usize>,
    pub generators: Vec<Automorphism>,
}

impl OrbitPartition {
    /// True when `s` is a union of orbits.
    pub fn is_union_of_blocks(&self, s: &Subset) -> bool {
        s.iter().all(|i| self.blocks[self.block_of[i]].is_subset_of(s))
    }
}

/// Invariant coloring of the disjoint union of two lattices.
fn refine(a: &Lattice, b: &Lattice) -> (Vec<u32>, Vec<u32>) {
    fn base(l: &Lattice) -> Vec<Vec<usize>> {
        let n = l.len();
        let mut up_height = vec![0usize; n];
        let order = {
            let mut o: Vec<usize> = (0..n).collect();
            o.sort_by_key(|&i| std::cmp::Reverse(l.upset(i).count()));
            o
        };
        // elements with larger upsets are lower; process from the top down
        for &i in order.iter().rev() {
            up_height[i] = l.upper_covers(i).iter().map(|&j| up_height[j] + 1).max().unwrap_or(0);
        }
        let heights = l.heights();
        (0..n)
            .map(|i| {
                vec![
                    heights[i],
                    up_height[i],
                    l.lower_covers(i).len(),
                    l.upper_covers(i).len(),
                    l.downset(i).count(),
                    l.upset(i).count(),
                ]
            })
            .collect()
    }
    let lattices = [a, b];
    let mut colors: Vec<Vec<u32>> = Vec::new();
    {
        let keys: Vec<Vec<Vec<usize>>> = lattices.iter().map(|l| base(l)).collect();
        let ids: BTreeMap<&Vec<usize>, u32> = keys
            .iter()
            .flatten()
            .collect::<BTreeSet<_>>()
            .into_iter()
            .enumerate()
            .map(|(i, k)| (k, i as u32))
            .collect();
        for k in &keys {
            colors.push(k.iter().map(|x| ids[x]).collect());
        }
    }
    let mut classes = colors.iter().flatten().collect::<BTreeSet<_>>().len();
    loop {
        let keys: Vec<Vec<(u32, Vec<u32>, Vec<u32>)>> = lattices
            .iter()
            .zip(&colors)
            .map(|(l, c)| {
                (0..l.len())
                    .map(|i| {
                        let mut lo: Vec<u32> = l.lower_covers(i).iter().map(|&j| c[j]).collect();
                        let mut hi: Vec<u32> = l.upper_covers(i).iter().map(|&j| c[j]).collect();
                        lo.sort_unstable();
                        hi.sort_unstable();
                        (c[i], lo, hi)
                    })
                    .collect()
            })
            .collect();
        let ids: BTreeMap<&(u32, Vec<u32>, Vec<u32>), u32> = keys
            .iter()
            .flatten()
            .collect::<BTreeSet<_>>()
            .into_iter()
            .enumerate()
            .map(|(i, k)| (k, i as u32))
            .collect();
        colors = keys.iter().map(|ks| ks.iter().map(|k| ids[k]).collect()).collect();
        if ids.len() == classes {
            break;
        }
        classes = ids.len();
    }
    let cb = colors.pop().unwrap_or_default();
    let ca = colors.pop().unwrap_or_default();
    (ca, cb)
}

fn join_irreducibles(l: &Lattice) -> Vec<usize> {
    (0..l.len()).filter(|&i| l.lower_covers(i).len() == 1).collect()
}

struct Search<'a> {
    a: &'a Lattice,
    b: &'a Lattice,
    ca: Vec<u32>,
    cb: Vec<u32>,
    /// Join-irreducibles of `a` in branching order.
    order: Vec<usize>,
    map: Vec<u32>,
    inv: Vec<u32>,
    trail: Vec<usize>,
    nodes: u64,
}

impl<'a> Search<'a> {
    fn new(a: &'a Lattice, b: &'a Lattice) -> Self {
        let (ca, cb) = refine(a, b);
        let mut class_size: BTreeMap<u32, usize> = BTreeMap::new();
        for &c in &ca {
            *class_size.entry(c).or_default() += 1;
        }
        let mut order = join_irreducibles(a);
        order.sort_by_key(|&i| (class_size[&ca[i]], i));
        Search {
            a,
            b,
            ca,
            cb,
            order,
            map: vec![NONE; a.len()],
            inv: vec![NONE; b.len()],
            trail: Vec::new(),
            nodes: 0,
        }
    }

    fn colors_match(&self) -> bool {
        let mut x = self.ca.clone();
        let mut y = self.cb.clone();
        x.sort_unstable();
        y.sort_unstable();
        x == y
    }

    /// Assign `x -> y` and everything forced by meets and joins with earlier
    /// assignments. On failure the trail still holds partial work; callers undo.
    fn assign(&mut self, x: usize, y: usize) -> bool {
        let mut queue = VecDeque::from([(x, y)]);
        while let Some((x, y)) = queue.pop_front() {
            let cur = self.map[x];
            if cur != NONE {
                if cur as usize != y {
                    return false;
                }
                continue;
            }
            if self.inv[y] != NONE || self.ca[x] != self.cb[y] {
                return false;
            }
            self.map[x] = y as u32;
            self.inv[y] = x as u32;
            for k in 0..self.trail.len() {
                let z = self.trail[k];
                let w = self.map[z] as usize;
                queue.push_back((self.a.join(x, z), self.b.join(y, w)));
                queue.push_back((self.a.meet(x, z), self.b.meet(y, w)));
            }
            self.trail.push(x);
        }
        true
    }

    fn undo(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let x = self.trail.pop().unwrap();
            self.inv[self.map[x] as usize] = NONE;
            self.map[x] = NONE;
        }
    }

    fn complete(&self) -> Option<Vec<usize>> {
        if self.map.contains(&NONE) {
            return None;
        }
        let ok = self.a.cover_pairs().iter().all(|&(lo, hi)| {
            self.b.covers(self.map[lo] as usize, self.map[hi] as usize)
        });
        ok.then(|| self.map.iter().map(|&m| m as usize).collect())
    }

    /// Depth-first extension; `visit` returns true to stop.
    fn extend(&mut self, visit: &mut dyn FnMut(Vec<usize>) -> bool) -> bool {
        self.nodes += 1;
        let Some(&x) = self.order.iter().find(|&&x| self.map[x] == NONE) else {
            return match self.complete() {
                Some(m) => visit(m),
                None => false,
            };
        };
        let candidates: Vec<usize> = (0..self.b.len())
            .filter(|&y| self.inv[y] == NONE && self.cb[y] == self.ca[x])
            .collect();
        for y in candidates {
            let mark = self.trail.len();
            if self.assign(x, y) && self.extend(visit) {
                return true;
            }
            self.undo(mark);
        }
        false
    }

    /// Fix bottom and top, plus any element alone in its color on both sides.
    fn seed(&mut self) -> bool {
        let mut by_color: BTreeMap<u32, (Vec<usize>, Vec<usize>)> = BTreeMap::new();
        for (i, &c) in self.ca.iter().enumerate() {
            by_color.entry(c).or_default().0.push(i);
        }
        for (i, &c) in self.cb.iter().enumerate() {
            by_color.entry(c).or_default().1.push(i);
        }
        let forced: Vec<(usize, usize)> = by_color
            .values()
            .filter(|(xs, ys)| xs.len() == 1 && ys.len() == 1)
            .map(|(xs, ys)| (xs[0], ys[0]))
            .collect();
        self.assign(self.a.bottom(), self.b.bottom())
            && self.assign(self.a.top(), self.b.top())
            && forced.into_iter().all(|(x, y)| self.assign(x, y))
    }
}

/// An isomorphism from `a` onto `b`, as the image of each index of `a`.
pub fn find_isomorphism(a: &Lattice, b: &Lattice) -> Option<Vec<usize>> {
    if a.len() != b.len() || a.cover_pairs().len() != b.cover_pairs().len() {
        return None;
    }
    let mut s = Search::new(a, b);
    if !s.colors_match() || !s.seed() {
        return None;
    }
    let mut found = None;
    s.extend(&mut |m| {
        found = Some(m);
        true
    });
    found
}

fn orbit_of(point: usize, gens: &[Automorphism]) -> BTreeSet<usize> {
    let mut orbit = BTreeSet::from([point]);
    let mut queue = vec![point];
    while let Some(p) = queue.pop() {
        for g in gens {
            let q = g.apply(p);
            if orbit.insert(q) {
                queue.push(q);
            }
        }
    }
    orbit
}

/// Sublattice generated by a set of elements, grown incrementally.
struct Closure<'a> {
    l: &'a Lattice,
    members: Vec<usize>,
    has: Vec<bool>,
}

impl<'a> Closure<'a> {
    fn new(l: &'a Lattice) -> Self {
        Closure {
            l,
            members: Vec::new(),
            has: vec![false; l.len()],
        }
    }

    fn add(&mut self, x: usize) {
        let mut queue = vec![x];
        while let Some(x) = queue.pop() {
            if self.has[x] {
                continue;
            }
            self.has[x] = true;
            for k in 0..self.members.len() {
                let z = self.members[k];
                queue.push(self.l.join(x, z));
                queue.push(self.l.meet(x, z));
            }
            self.members.push(x);
        }
    }

    fn full(&self) -> bool {
        self.members.len() == self.l.len()
    }
}

/// Automorphism group with the default listing cap.
pub fn automorphism_group(l: &Lattice) -> AutomorphismGroup {
    automorphism_group_with_cap(l, DEFAULT_GROUP_CAP)
}

pub fn automorphism_group_with_cap(l: &Lattice, cap: u128) -> AutomorphismGroup {
    let n = l.len();
    let mut s = Search::new(l, l);
    let seeded = s.seed();
    debug_assert!(seeded);
    let fixed_mark = s.trail.len();
    let mut closure = Closure::new(l);
    for &x in &s.trail {
        closure.add(x);
    }
    // base points: join-irreducibles not already forced, in branching order
    let mut base = Vec::new();
    for &x in &s.order {
        if closure.full() {
            break;
        }
        if !closure.has[x] {
            base.push(x);
            closure.add(x);
        }
    }
    s.undo(fixed_mark);

    let mut generators: Vec<Automorphism> = Vec::new();
    let mut order: u128 = 1;
    for level in (0..base.len()).rev() {
        let point = base[level];
        let mut orbit = orbit_of(point, &generators);
        let candidates: Vec<usize> = (0..n)
            .filter(|&c| c != point && s.ca[c] == s.ca[point])
            .collect();
        for c in candidates {
            if orbit.contains(&c) {
                continue;
            }
            let mark = s.trail.len();
            let mut found = None;
            let ok = base[..level].iter().all(|&p| s.assign(p, p)) && s.assign(point, c);
            if ok {
                s.extend(&mut |m| {
                    found = Some(m);
                    true
                });
            }
            s.undo(mark);
            if let Some(m) = found {
                generators.push(Automorphism(m));
                orbit = orbit_of(point, &generators);
            }
        }
        order = order.saturating_mul(orbit.len() as u128);
    }
    s.undo(0);

    let elements = (order <= cap).then(|| {
        let id = Automorphism::identity(n);
        let mut seen = BTreeSet::from([id.clone()]);
        let mut queue = vec![id];
        while let Some(g) = queue.pop() {
            for h in &generators {
                let gh = h.compose(&g);
                if seen.insert(gh.clone()) {
                    queue.push(gh);
                }
            }
        }
        seen.into_iter().collect::<Vec<_>>()
    });
    AutomorphismGroup {
        order,
        generators,
        elements,
    }
}

/// Orbits of the automorphism group, blocks ordered by least element.
pub fn orbit_partition(l: &Lattice) -> OrbitPartition {
    orbits_from_generators(l.len(), automorphism_group(l).generators)
}

pub fn orbits_from_generators(n: usize, generators: Vec<Automorphism>) -> OrbitPartition {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut i: usize) -> usize {
        while p[i] != i {
            p[i] = p[p[i]];
            i = p[i];
        }
        i
    }
    for g in &generators {
        for i in 0..n {
            let (a, b) = (find(&mut parent, i), find(&mut parent, g.apply(i)));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let mut block_of = vec![usize::MAX; n];
    let mut blocks: Vec<Subset> = Vec::new();
    for i in 0..n {
        let r = find(&mut parent, i);
        if block_of[r] == usize::MAX {
            block_of[r] = blocks.len();
            blocks.push(Subset::empty(n));
        }
        block_of[i] = block_of[r];
        blocks[block_of[i]].insert(i);
    }
    OrbitPartition {
        blocks,
        block_of,
        generators,
    }
}
