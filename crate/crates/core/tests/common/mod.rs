//! Seeded generators and brute-force oracles shared by the integration tests.
#![allow(dead_code)]

use latfo::formula::{Formula, Term};
use latfo::lattice::{build_from_covers, Lattice};
use latfo::subset::Subset;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A random lattice with at most `max` elements: a random intersection-closed
/// family of subsets of a small ground set, ordered by inclusion.
pub fn random_lattice(rng: &mut impl Rng, max: usize) -> Lattice {
    loop {
        let ground = rng.gen_range(2..=4u32);
        let full = (1u32 << ground) - 1;
        let mut family = vec![full];
        for _ in 0..rng.gen_range(0..=6) {
            family.push(rng.gen_range(0..=full));
        }
        family.sort_unstable();
        family.dedup();
        // close under intersection
        let mut i = 0;
        while i < family.len() {
            for j in 0..i {
                let m = family[i] & family[j];
                if !family.contains(&m) {
                    family.push(m);
                }
            }
            i += 1;
        }
        if family.len() > max {
            continue;
        }
        family.sort_by_key(|s| (s.count_ones(), *s));
        let ids: Vec<String> = (0..family.len()).map(|k| format!("e{k}")).collect();
        let mut covers = Vec::new();
        for (a, &sa) in family.iter().enumerate() {
            for (b, &sb) in family.iter().enumerate() {
                if a != b && sa & sb == sa {
                    covers.push((ids[a].clone(), ids[b].clone()));
                }
            }
        }
        return build_from_covers(&ids, &covers).expect("closure systems are lattices");
    }
}

const POOL: [&str; 3] = ["x", "y", "z"];

fn random_term(rng: &mut impl Rng, ops: usize) -> Term {
    if ops == 0 {
        return Term::var(POOL.choose(rng).unwrap());
    }
    let left = rng.gen_range(0..ops);
    let (a, b) = (random_term(rng, left), random_term(rng, ops - 1 - left));
    if rng.gen_bool(0.5) {
        Term::meet(a, b)
    } else {
        Term::join(a, b)
    }
}

/// A random surface formula of exactly `size` (by `Formula::size`), possibly
/// with `min`/`max`, `<` and `!=`, over the variables x, y, z.
pub fn random_formula(rng: &mut impl Rng, size: usize) -> Formula {
    let size = size.max(1);
    let choice = if size == 1 { 0 } else { rng.gen_range(0..6) };
    match choice {
        0 => {
            let ops = size - 1;
            let left = rng.gen_range(0..=ops);
            let (a, b) = (random_term(rng, left), random_term(rng, ops - left));
            match rng.gen_range(0..4) {
                0 => Formula::Eq(a, b),
                1 => Formula::Leq(a, b),
                2 => Formula::Lt(a, b),
                _ => Formula::Neq(a, b),
            }
        }
        1 => Formula::not(random_formula(rng, size - 1)),
        2 if size >= 3 => {
            let left = rng.gen_range(1..size - 1);
            let (a, b) = (random_formula(rng, left), random_formula(rng, size - 1 - left));
            match rng.gen_range(0..4) {
                0 => Formula::and(a, b),
                1 => Formula::or(a, b),
                2 => Formula::implies(a, b),
                _ => Formula::iff(a, b),
            }
        }
        3 | 4 => {
            let v = POOL.choose(rng).unwrap();
            let body = random_formula(rng, size - 1);
            if choice == 3 {
                Formula::forall(&[v], body)
            } else {
                Formula::exists(&[v], body)
            }
        }
        _ => {
            let v = POOL.choose(rng).unwrap();
            let body = random_formula(rng, size - 1);
            if rng.gen_bool(0.5) {
                Formula::min(v, body)
            } else {
                Formula::max(v, body)
            }
        }
    }
}

/// A random formula of size at most `max_size` whose only free variable is `x`.
pub fn random_unary_formula(rng: &mut impl Rng, max_size: usize) -> Formula {
    loop {
        let size = rng.gen_range(1..=max_size);
        let mut f = random_formula(rng, size);
        for v in f.free_vars() {
            if v != "x" {
                f = if rng.gen_bool(0.5) {
                    Formula::forall(&[&v], f)
                } else {
                    Formula::exists(&[&v], f)
                };
            }
        }
        if f.free_vars() == ["x"] && f.size() <= max_size {
            return f;
        }
    }
}

/// Every automorphism, by trying all permutations that fix bottom and top.
pub fn brute_automorphisms(l: &Lattice) -> Vec<Vec<usize>> {
    let n = l.len();
    let mut out = Vec::new();
    let mut perm: Vec<usize> = Vec::new();
    let mut used = vec![false; n];
    fn go(l: &Lattice, perm: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        let k = perm.len();
        if k == l.len() {
            out.push(perm.clone());
            return;
        }
        for t in 0..l.len() {
            if used[t] {
                continue;
            }
            let consistent = (0..k).all(|a| l.leq(a, k) == l.leq(perm[a], t) && l.leq(k, a) == l.leq(t, perm[a]));
            if consistent {
                used[t] = true;
                perm.push(t);
                go(l, perm, used, out);
                perm.pop();
                used[t] = false;
            }
        }
    }
    go(l, &mut perm, &mut used, &mut out);
    out
}

/// Orbit of each element under the brute-force group, as the least member.
pub fn brute_orbit_ids(l: &Lattice) -> Vec<usize> {
    let autos = brute_automorphisms(l);
    (0..l.len()).map(|e| autos.iter().map(|g| g[e]).min().unwrap()).collect()
}

pub fn is_orbit_union(orbit_ids: &[usize], s: &Subset) -> bool {
    (0..orbit_ids.len()).all(|e| s.contains(e) == s.contains(orbit_ids[e]))
}

/// Minimal members of `s` in the order of `l`.
pub fn minimal(l: &Lattice, s: &Subset) -> Subset {
    Subset::from_indices(l.len(), s.iter().filter(|&e| !s.iter().any(|d| l.lt(d, e))))
}

pub fn maximal(l: &Lattice, s: &Subset) -> Subset {
    Subset::from_indices(l.len(), s.iter().filter(|&e| !s.iter().any(|d| l.lt(e, d))))
}

/// Number of set partitions of an `n`-set, by counting restricted growth strings.
pub fn count_set_partitions(n: usize) -> usize {
    fn go(pos: usize, n: usize, max: usize) -> usize {
        if pos == n {
            return 1;
        }
        (0..=max + 1).map(|v| go(pos + 1, n, max.max(v))).sum()
    }
    if n == 0 {
        1
    } else {
        go(1, n, 0)
    }
}
