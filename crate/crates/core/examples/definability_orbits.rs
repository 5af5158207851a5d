//! Automorphisms, orbits, and the orbit test for definability.

use latfo::catalog::{fixture, FixtureSpec};
use latfo::definability::{automorphism_group, is_definable, orbit_partition, Verdict};
use latfo::subset::Subset;

fn main() {
    let l = fixture(&FixtureSpec::Fig2Bands).unwrap();
    let group = automorphism_group(&l);
    println!("group order {}", group.order);
    for block in orbit_partition(&l).blocks {
        let names: Vec<&str> = block.iter().map(|i| l.display(i)).collect();
        println!("orbit {}", names.join(" "));
    }

    for members in [&["LZ"][..], &["LZ", "RZ"]] {
        let s = Subset::from_indices(l.len(), members.iter().map(|m| l.resolve(m).unwrap()));
        match is_definable(&l, &s) {
            Verdict::Definable => println!("{members:?} may be definable"),
            Verdict::NotDefinable(g) => println!("{members:?} moved by {}", g.cycle_string(&l)),
        }
    }
}
