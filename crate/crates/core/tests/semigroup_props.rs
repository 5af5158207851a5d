mod common;

use latfo::lattice::Lattice;
use latfo::semigroup::{
    concept_lattice, incidence_context, named_semigroup, p3, parse_semigroup, satisfies, write_semigroup, Identity,
    Semigroup, Word,
};
use proptest::prelude::*;

fn named_battery() -> Vec<Semigroup> {
    let mut out = vec![named_semigroup("sl2", None).unwrap(), p3()];
    for n in 1..=4 {
        for name in ["lz", "rz", "z", "null"] {
            out.push(named_semigroup(name, Some(n)).unwrap());
        }
    }
    for m in 0..=4 {
        out.push(named_semigroup("c_monoid", Some(m)).unwrap());
    }
    out.push(p3().product(&named_semigroup("z", Some(2)).unwrap()));
    out
}

fn identity_battery() -> Vec<Identity> {
    [
        "xy = yx", "x^2 = x", "xy = x", "xy = y", "xy = 0", "x^2 = 0", "xy = x^2y", "xy = xy^2", "x^2y^2 = y^2x^2",
        "xyx = xy", "xyx = yx", "xyz = xzy", "xyz = yxz", "xyzt = xzyt", "x^3 = x", "x^2 = x^3", "x^2y = y",
        "xyx = 0", "x^2y = xy^2",
    ]
    .iter()
    .map(|s| s.parse().unwrap())
    .collect()
}

#[test]
fn duality_of_satisfaction() {
    for s in named_battery() {
        let d = s.dual();
        assert_eq!(d.dual(), s);
        for id in identity_battery() {
            assert_eq!(satisfies(&s, &id).unwrap(), satisfies(&d, &id.dual()).unwrap(), "{} {id}", s.name());
        }
    }
}

#[test]
fn cyclic_groups_satisfy_their_exponent() {
    for n in 1..=8 {
        let z = named_semigroup("z", Some(n)).unwrap();
        assert!(satisfies(&z, &Identity::eq(&format!("x^{n}y"), "y")).unwrap(), "z{n}");
        if n > 1 {
            assert!(!satisfies(&z, &Identity::eq(&format!("x^{}y", n - 1), "y")).unwrap(), "z{n}");
        }
    }
}

#[test]
fn table_files_round_trip() {
    for s in named_battery() {
        assert_eq!(parse_semigroup(&write_semigroup(&s)).unwrap(), s);
    }
}

fn assert_lattice_bound(l: &Lattice, objects: usize, attributes: usize) {
    l.validate().unwrap();
    assert!(l.len() <= (1usize << objects.min(attributes)) + 2);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn word_syntax_round_trips(letters in prop::collection::vec(0u8..4, 1..12)) {
        let w = Word::new(letters.iter().map(|b| b"xyzt"[*b as usize]).collect::<Vec<u8>>()).unwrap();
        prop_assert_eq!(w.to_string().parse::<Word>().unwrap(), w);
    }

    #[test]
    fn concept_lattices_validate(
        objs in prop::collection::vec(0usize..22, 1..7),
        attrs in prop::collection::vec(0usize..19, 1..7),
    ) {
        let semigroups = named_battery();
        let identities = identity_battery();
        let objects: Vec<Semigroup> = objs.iter().map(|&i| semigroups[i].clone()).collect();
        let attributes: Vec<Identity> = attrs.iter().map(|&j| identities[j].clone()).collect();
        let ctx = incidence_context(&objects, &attributes).unwrap();
        let l = concept_lattice(&ctx).unwrap();
        assert_lattice_bound(&l, objects.len(), attributes.len());
        // every concept is closed: extent' = intent and intent' = extent
        for c in ctx.concepts() {
            for (i, row) in ctx.incidence.iter().enumerate() {
                let has_all = c.intent.iter().all(|&j| row[j]);
                prop_assert_eq!(has_all, c.extent.contains(&i));
            }
            for j in 0..attributes.len() {
                let shared = c.extent.iter().all(|&i| ctx.incidence[i][j]);
                prop_assert_eq!(shared, c.intent.contains(&j));
            }
        }
    }
}
