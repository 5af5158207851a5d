mod common;

use latfo::catalog::{fixture, FixtureSpec};
use latfo::definability::{
    automorphism_group, find_isomorphism, is_definable, orbit_partition, synthesize, SynthResult, Verdict,
};
use latfo::eval::defined_set;
use latfo::subset::Subset;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn group_matches_brute_force(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let l = common::random_lattice(&mut rng, 8);
        let brute = common::brute_automorphisms(&l);
        let group = automorphism_group(&l);
        prop_assert_eq!(group.order, brute.len() as u128);
        let mut listed: Vec<Vec<usize>> =
            group.elements.unwrap().iter().map(|g| g.images().to_vec()).collect();
        listed.sort();
        let mut brute = brute;
        brute.sort();
        prop_assert_eq!(listed, brute);
    }

    #[test]
    fn generators_preserve_meet_and_join(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let l = common::random_lattice(&mut rng, 8);
        for g in orbit_partition(&l).generators {
            for a in 0..l.len() {
                for b in 0..l.len() {
                    prop_assert_eq!(g.apply(l.meet(a, b)), l.meet(g.apply(a), g.apply(b)));
                    prop_assert_eq!(g.apply(l.join(a, b)), l.join(g.apply(a), g.apply(b)));
                }
            }
        }
    }

    #[test]
    fn verdicts_and_synthesis_are_sound(seed in any::<u64>(), mask in any::<u8>()) {
        let mut rng = common::rng(seed);
        let l = common::random_lattice(&mut rng, 6);
        let s = Subset::from_indices(l.len(), (0..l.len()).filter(|i| mask >> i & 1 == 1));
        let orbit_ids = common::brute_orbit_ids(&l);
        let verdict = is_definable(&l, &s);
        prop_assert_eq!(verdict.is_definable(), common::is_orbit_union(&orbit_ids, &s));
        if let Verdict::NotDefinable(g) = &verdict {
            prop_assert!(g.is_automorphism_of(&l));
            prop_assert!(g.image_of(&s) != s);
        }
        match synthesize(&l, &s, 5) {
            SynthResult::Found(f) => {
                prop_assert!(verdict.is_definable());
                prop_assert!(f.size() <= 5);
                prop_assert_eq!(defined_set(&l, &f).unwrap(), s);
            }
            SynthResult::Inconclusive => {}
        }
    }
}

#[test]
fn isomorphism_search_agrees_with_brute_force() {
    let mut rng = common::rng(3);
    for _ in 0..100 {
        let a = common::random_lattice(&mut rng, 7);
        let b = common::random_lattice(&mut rng, 7);
        let iso = find_isomorphism(&a, &b);
        if let Some(f) = &iso {
            for x in 0..a.len() {
                for y in 0..a.len() {
                    assert_eq!(a.leq(x, y), b.leq(f[x], f[y]));
                }
            }
        }
        // a lattice is always isomorphic to a relabelled copy of itself
        let d = a.dual().dual();
        assert!(find_isomorphism(&a, &d).is_some());
    }
}

#[test]
fn capped_groups_still_give_orbits() {
    let l = fixture(&FixtureSpec::Partition(5)).unwrap();
    let g = automorphism_group(&l);
    assert_eq!(g.order, 120);
    let orbits = orbit_partition(&l);
    // partitions of a 5-set up to relabelling: one orbit per integer partition of 5
    assert_eq!(orbits.blocks.len(), 7);
    let b = fixture(&FixtureSpec::Boolean(8)).unwrap();
    let g = automorphism_group(&b);
    assert_eq!(g.order, 40320);
    assert!(g.truncated());
    assert_eq!(orbit_partition(&b).blocks.len(), 9);
}
