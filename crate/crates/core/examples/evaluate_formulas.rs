//! Parse formulas and list the elements they define.

use latfo::catalog::{fixture, FixtureSpec};
use latfo::eval::defined_set;
use latfo::formula::parse_formula;
use latfo::lattice::Lattice;

fn show(l: &Lattice, text: &str) {
    let f = parse_formula(text).unwrap();
    let s = defined_set(l, &f).unwrap();
    println!("{text}\n  {} of {}", s.count(), l.len());
}

fn main() {
    let p4 = fixture(&FixtureSpec::Partition(4)).unwrap();
    show(&p4, "exists y ( y < x & forall z ( z < x -> z <= y ) )");
    show(&p4, "min x ( exists y ( y < x ) )");
    show(&p4, "max x ( exists y ( y < x ) & exists y ( x < y ) )");

    // constants refer to labels (or ids) with `@`
    let bands = fixture(&FixtureSpec::Fig2Bands).unwrap();
    show(&bands, "x < @I & !(x <= @LRB)");
}
