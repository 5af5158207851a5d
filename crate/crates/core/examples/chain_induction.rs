//! Name each member of a definable chain by induction.

use latfo::catalog::{fixture, FixtureSpec};
use latfo::definability::chain_element_formula;
use latfo::eval::defined_set;
use latfo::formula::parse_formula;

fn main() {
    let l = fixture(&FixtureSpec::Chain(5)).unwrap();
    let phi = parse_formula("x = x").unwrap();
    for n in 1..=5 {
        let f = chain_element_formula(&phi, n);
        let s = defined_set(&l, &f).unwrap();
        println!("{n}: {} (size {})", l.id(s.iter().next().unwrap()), f.size());
    }
    println!("{}", chain_element_formula(&phi, 3));
}
