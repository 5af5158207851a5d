//! Tabulate element properties next to the orbit of each element.

use latfo::catalog::{fixture, FixtureSpec};
use latfo::definability::orbit_partition;
use latfo::eval::{element_property, PropertyKind};

fn main() {
    let l = fixture(&FixtureSpec::Partition(4)).unwrap();
    let orbits = orbit_partition(&l);
    let kinds = [PropertyKind::Atom, PropertyKind::Neutral, PropertyKind::Distributive, PropertyKind::LowerModular];
    for e in 0..l.len() {
        let orbit = orbits.blocks.iter().position(|b| b.contains(e)).unwrap();
        let flags: Vec<&str> = kinds.iter().map(|&k| if element_property(&l, e, k) { "1" } else { "0" }).collect();
        println!("{:8} orbit {orbit} {}", l.id(e), flags.join(" "));
    }
}
