//! Definability of subsets: automorphism obstructions and synthesized witnesses.

pub mod automorphism;
pub mod chain;
pub mod synth;

pub use automorphism::{
    automorphism_group, automorphism_group_with_cap, find_isomorphism, orbit_partition,
    orbits_from_generators, Automorphism, AutomorphismGroup, OrbitPartition, DEFAULT_GROUP_CAP,
};
pub use chain::chain_element_formula;
pub use synth::{synthesize, synthesize_many, synthesize_with_orbits, SynthConfig, SynthResult};

use crate::lattice::Lattice;
use crate::subset::Subset;

/// Outcome of the automorphism test for a subset.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    /// Every automorphism fixes the set, so on a finite lattice it is definable.
    Definable,
    /// This automorphism moves the set.
    NotDefinable(Automorphism),
}

impl Verdict {
    pub fn is_definable(&self) -> bool {
        matches!(self, Verdict::Definable)
    }
}

/// Definable iff the set is a union of automorphism orbits.
pub fn is_definable(l: &Lattice, s: &Subset) -> Verdict {
    let orbits = orbit_partition(l);
    verdict_with(&orbits, s)
}

pub fn verdict_with(orbits: &OrbitPartition, s: &Subset) -> Verdict {
    for g in &orbits.generators {
        if &g.image_of(s) != s {
            return Verdict::NotDefinable(g.clone());
        }
    }
    Verdict::Definable
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{fixture, FixtureSpec};

    #[test]
    fn m3_atoms() {
        let l = fixture(&FixtureSpec::M3).unwrap();
        assert!(is_definable(&l, &Subset::from_indices(5, [1, 2, 3])).is_definable());
        match is_definable(&l, &Subset::from_indices(5, [1])) {
            Verdict::NotDefinable(g) => assert_ne!(g.apply(1), 1),
            v => panic!("{v:?}"),
        }
    }
}
